"""Shared table utilities: codecs, closures, and vectorized exhaustive checks."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import TableIncomplete
from .report import Report


def as_table(raw, shape: tuple[int, ...], name: str, size: int) -> np.ndarray:
    """Validate a total operation table with values in range(size).

    Tables are stored as int16 whenever indices fit (they always do under the
    default cap); gathers on them are memory-bound, so the narrow dtype pays.
    """
    dtype = np.int16 if size <= 32767 else np.int32
    arr = np.asarray(raw)
    if arr.shape != shape:
        raise TableIncomplete(f"{name}: expected shape {shape}, got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= size):
        raise TableIncomplete(f"{name}: entries must lie in range({size})")
    arr = arr.astype(dtype, copy=True)
    arr.setflags(write=False)
    return arr


class MixedRadix:
    """Bijection between tuples with per-slot radices and flat indices.

    Slot 0 is the most significant digit, so lexicographic tuple order matches
    index order.
    """

    def __init__(self, radices: Sequence[int]):
        self.radices = tuple(int(r) for r in radices)
        if any(r <= 0 for r in self.radices):
            raise ValueError("radices must be positive")
        strides = []
        acc = 1
        for r in reversed(self.radices):
            strides.append(acc)
            acc *= r
        self.strides = tuple(reversed(strides))
        self.size = acc

    def encode(self, digits: Sequence[int]) -> int:
        return int(sum(d * s for d, s in zip(digits, self.strides)))

    def decode(self, index: int) -> tuple[int, ...]:
        out = []
        for s, r in zip(self.strides, self.radices):
            out.append((index // s) % r)
        return tuple(out)

    def decode_all(self) -> list[np.ndarray]:
        """Digit arrays of every index; result[k][i] is digit k of index i."""
        idx = np.arange(self.size, dtype=np.int64)
        return [(idx // s) % r for s, r in zip(self.strides, self.radices)]

    def encode_arrays(self, digit_arrays: Sequence[np.ndarray]) -> np.ndarray:
        acc = np.zeros_like(np.asarray(digit_arrays[0], dtype=np.int64))
        for d, s in zip(digit_arrays, self.strides):
            acc = acc + np.asarray(d, dtype=np.int64) * s
        return acc


def additive_generators(add: np.ndarray, zero: int) -> list[int]:
    """Greedy generating set of the abelian group given by an add table."""
    n = add.shape[0]
    in_span = np.zeros(n, dtype=bool)
    in_span[zero] = True
    span = np.array([zero], dtype=np.int64)
    gens: list[int] = []
    while span.size < n:
        x = int(np.argmin(in_span))  # first element outside the span
        gens.append(x)
        multiples = [zero]
        cur = x
        steps = 0
        while cur != zero:
            multiples.append(cur)
            cur = int(add[cur, x])
            steps += 1
            if steps > n:
                raise ValueError("add table does not define a finite group")
        span = np.unique(add[np.ix_(span, np.array(multiples, dtype=np.int64))])
        in_span[:] = False
        in_span[span] = True
    return gens


class AbelianAssembly:
    """Coordinate system for a finite abelian group given by its add table.

    Greedy independent generators g_1..g_k with orders d_i and the enumeration
    psi: indices in mixed radix (d_k,...,d_1) -> elements, psi a bijection.
    `edges` are the assembly triples (x, y, x+y) that reach every element once;
    checking a map's additivity on the edges plus the within-cyclic pairs is
    equivalent to checking it on all pairs.
    """

    def __init__(self, gens, orders, psi, edges, cyclic_pairs):
        self.gens = gens
        self.orders = orders            # orders[i] belongs to gens[i]
        self.psi = psi                  # (n,) element of each coordinate index
        self.edges = edges              # (x, y, z) arrays with x+y = z
        self.cyclic_pairs = cyclic_pairs


def abelian_assembly(add: np.ndarray, zero: int) -> AbelianAssembly | None:
    """Build coordinates for (carrier, add); None if greedy generators come out
    dependent (callers then fall back to the generic quadratic checks)."""
    n = add.shape[0]
    in_span = np.zeros(n, dtype=bool)
    in_span[zero] = True
    psi = np.array([zero], dtype=np.int64)
    gens: list[int] = []
    orders: list[int] = []
    ex, ey, ez = [np.array([], dtype=np.int64)] * 3
    cyc_x, cyc_y, cyc_z = [np.array([], dtype=np.int64)] * 3
    while psi.size < n:
        x = int(np.argmin(in_span))
        multiples = [zero]
        cur = x
        while cur != zero:
            multiples.append(cur)
            cur = int(add[cur, x])
            if len(multiples) > n:
                return None  # not a group under add; let the axioms report it
        m = np.array(multiples, dtype=np.int64)
        block = add[np.ix_(m, psi)]
        flat = block.ravel()
        if np.unique(flat).size != flat.size:
            return None  # dependent generator
        # edges with a zero part are trivial given f(0)=0 (covered by cyclic pairs)
        ex = np.concatenate([ex, np.repeat(psi[None, :], m.size - 1, axis=0).ravel()])
        ey = np.concatenate([ey, np.repeat(m[1:], psi.size)])
        ez = np.concatenate([ez, block[1:].ravel()])
        grid = add[np.ix_(m, m)]
        gx, gy = np.meshgrid(m, m, indexing="ij")
        cyc_x = np.concatenate([cyc_x, gx.ravel()])
        cyc_y = np.concatenate([cyc_y, gy.ravel()])
        cyc_z = np.concatenate([cyc_z, grid.ravel()])
        gens.append(x)
        orders.append(int(m.size))
        psi = flat
        in_span[:] = False
        in_span[psi] = True
    return AbelianAssembly(gens, orders, psi, (ex, ey, ez), (cyc_x, cyc_y, cyc_z))


def check_add_against_reference(add: np.ndarray, asm: AbelianAssembly, report: Report, check: str) -> None:
    """Compare the add table with the product of cyclic groups it enumerates.

    Equality proves associativity and commutativity outright.
    """
    n = add.shape[0]
    idx = np.arange(n, dtype=add.dtype)
    if all(d == 2 for d in asm.orders):
        # elementary 2-group: mixed-radix addition is bitwise xor of indices
        ref = idx[:, None] ^ idx[None, :]
    else:
        radices = list(reversed(asm.orders))
        codec = MixedRadix(radices)
        digits = codec.decode_all()
        ref = np.zeros((n, n), dtype=np.int32)
        for d, r, stride in zip(digits, radices, codec.strides):
            d32 = d.astype(np.int32)
            ref += ((d32[:, None] + d32[None, :]) % r) * np.int32(stride)
    identity_enum = np.array_equal(asm.psi, idx)
    got = add if identity_enum else add[np.ix_(asm.psi, asm.psi)]
    want = ref if identity_enum else asm.psi[ref]
    if not np.array_equal(got, want):
        u, v = np.argwhere(got != want)[0]
        report.add(check, (int(asm.psi[u]), int(asm.psi[v])), "add table is not the product of its cyclic coordinates")


def check_biadditive_via_assembly(
    op: np.ndarray,
    add_out: np.ndarray,
    asm: AbelianAssembly,
    report: Report,
    check_left: str,
    check_right: str,
) -> None:
    """Exact bi-additivity of `op` using assembly edges and cyclic pairs.

    For each fixed first argument, additivity in the second follows from
    additivity on the edge triples and on pairs within each cyclic factor; the
    first-argument side is symmetric.
    """
    for (x, y, z), tag in ((asm.edges, "edge"), (asm.cyclic_pairs, "cyclic")):
        lhs = op[:, z]
        rhs = add_out[op[:, x], op[:, y]]
        if not np.array_equal(lhs, rhs):
            a, e = map(int, np.argwhere(lhs != rhs)[0])
            report.add(check_left, (a, int(x[e]), int(y[e])), f"{tag} additivity fails")
            return
        lhs = op[z, :]
        rhs = add_out[op[x, :], op[y, :]]
        if not np.array_equal(lhs, rhs):
            e, a = map(int, np.argwhere(lhs != rhs)[0])
            report.add(check_right, (int(x[e]), int(y[e]), a), f"{tag} additivity fails")
            return


def closure_under_add(add: np.ndarray, zero: int, seed: Iterable[int]) -> frozenset[int]:
    """Smallest subset containing seed and zero, closed under the add table."""
    members = {zero} | set(int(s) for s in seed)
    frontier = list(members)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(members):
                c = int(add[a, b])
                if c not in members:
                    members.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(members)


def check_light_associativity(
    op: np.ndarray, gens: Sequence[int], report: Report, check: str, commutative: bool = False
) -> None:
    """Light's test: with S generating, (a·s)·c = a·(s·c) for all a,c and s in S
    implies full associativity.

    With `commutative` (already verified by the caller) both sides reduce to
    row gathers: (a·s)·c = a·(s·c) for all a,c iff op[op[:,s],:] is symmetric.
    """
    for s in gens:
        if commutative:
            left = op[op[:, s], :]
            if not np.array_equal(left, left.T):
                a, c = map(int, np.argwhere(left != left.T)[0])
                report.add(check, (a, int(s), c), "associativity fails")
                return
        else:
            left = op[op[:, s], :]
            right = op[:, op[s, :]]
            if not np.array_equal(left, right):
                a, c = map(int, np.argwhere(left != right)[0])
                report.add(check, (a, int(s), c), "associativity fails")
                return


def check_full_associativity(op: np.ndarray, report: Report, check: str) -> None:
    n = op.shape[0]
    for a in range(n):
        left = op[op[a, :], :]
        right = op[a, op]
        if not np.array_equal(left, right):
            b, c = map(int, np.argwhere(left != right)[0])
            report.add(check, (a, int(b), int(c)), "associativity fails")
            return


def check_map_additive(
    f: np.ndarray, add_src: np.ndarray, add_dst: np.ndarray, report: Report, check: str
) -> None:
    """f(a+b) = f(a)+f(b) over every pair, vectorized."""
    lhs = f[add_src]
    rhs = add_dst[np.ix_(f, f)]
    if not np.array_equal(lhs, rhs):
        a, b = map(int, np.argwhere(lhs != rhs)[0])
        report.add(check, (a, b), "additivity fails")


def check_map_multiplicative(
    f: np.ndarray, mul_src: np.ndarray, mul_dst: np.ndarray, report: Report, check: str
) -> None:
    """f(ab) = f(a)f(b) over every pair, vectorized."""
    lhs = f[mul_src]
    rhs = mul_dst[np.ix_(f, f)]
    if not np.array_equal(lhs, rhs):
        a, b = map(int, np.argwhere(lhs != rhs)[0])
        report.add(check, (a, b), "multiplicativity fails")


def check_bijective(f: np.ndarray, target_size: int, report: Report, check: str) -> None:
    if len(set(int(x) for x in f)) != len(f) or len(f) != target_size:
        report.add(check, (), f"map is not a bijection onto range({target_size})")


def first_diff(a: np.ndarray, b: np.ndarray) -> tuple[int, ...] | None:
    """Index of the first mismatch between two equally-shaped arrays, or None."""
    if np.array_equal(a, b):
        return None
    return tuple(int(x) for x in np.argwhere(a != b)[0])
