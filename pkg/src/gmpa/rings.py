"""Finite unital rings with dense integer elements and exact table arithmetic.

Elements of a ring of size n are the integers 0..n-1; every operation is a
table lookup. Rings are verified once at build time and immutable afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _config
from ._tables import (
    MixedRadix,
    abelian_assembly,
    additive_generators,
    as_table,
    check_add_against_reference,
    check_biadditive_via_assembly,
    check_bijective,
    check_full_associativity,
    check_light_associativity,
    check_map_additive,
    check_map_multiplicative,
    closure_under_add,
)
from .errors import CarrierTooLarge, RingAxiomError, TableIncomplete
from .report import Report


class FiniteRing:
    """Finite unital associative ring given by total add/mul tables."""

    def __init__(
        self,
        add,
        mul,
        one: int,
        label: str = "R",
        names: Sequence[str] | None = None,
        check: bool = True,
    ):
        add = np.asarray(add, dtype=np.int32)
        n = add.shape[0]
        if n > _config.element_cap():
            raise CarrierTooLarge(f"{label}: carrier {n} exceeds cap {_config.element_cap()}")
        self.size = n
        self.add_table = as_table(add, (n, n), f"{label}.add", n)
        self.mul_table = as_table(np.asarray(mul, dtype=np.int32), (n, n), f"{label}.mul", n)
        if not 0 <= one < n:
            raise TableIncomplete(f"{label}: one={one} outside carrier")
        self.one = int(one)
        self.label = label
        self.names = list(names) if names is not None else None
        self.zero = self._find_zero()
        self.neg_table = self._derive_neg()
        if check:
            report = verify_ring(self)
            if not report.ok():
                raise RingAxiomError(report)

    def _find_zero(self) -> int:
        idx = np.arange(self.size, dtype=np.int32)
        for z in range(self.size):
            if np.array_equal(self.add_table[z], idx):
                return z
        raise TableIncomplete(f"{self.label}: add table has no identity element")

    def _derive_neg(self) -> np.ndarray:
        neg = np.full(self.size, -1, dtype=np.int32)
        rows, cols = np.nonzero(self.add_table == self.zero)
        neg[rows] = cols
        if (neg < 0).any():
            raise TableIncomplete(f"{self.label}: some element has no additive inverse")
        neg.setflags(write=False)
        return neg

    # scalar operations
    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def sum(self, items: Iterable[int]) -> int:
        acc = self.zero
        for x in items:
            acc = int(self.add_table[acc, x])
        return acc

    def elements(self) -> range:
        return range(self.size)

    def name_of(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def __repr__(self) -> str:
        return f"FiniteRing({self.label}, size={self.size})"


def verify_ring(ring: FiniteRing) -> Report:
    """Exhaustively check the unital associative ring axioms.

    Below the triple-enumeration cap every axiom is checked on all tuples.
    Above it the checks switch to exact reductions: the add table is compared
    against the product-of-cyclics it enumerates (which settles associativity
    and commutativity), bi-additivity is checked on assembly edges and cyclic
    pairs, and multiplicative associativity on generator triples. These are
    equivalent to the all-tuples checks, not relaxations.
    """
    report = Report(subject=ring.label)
    n = ring.size
    add, mul = ring.add_table, ring.mul_table
    idx = np.arange(n, dtype=np.int32)

    if not np.array_equal(add[ring.zero], idx):
        report.add("add-identity", (ring.zero,), "zero is not an additive identity")
    if not np.array_equal(add, add.T):
        a, b = map(int, np.argwhere(add != add.T)[0])
        report.add("add-commutativity", (a, b))
    if not np.array_equal(add[idx, ring.neg_table], np.full(n, ring.zero)):
        a = int(np.argwhere(add[idx, ring.neg_table] != ring.zero)[0][0])
        report.add("add-inverse", (a,))

    if not np.array_equal(mul[ring.one], idx) or not np.array_equal(mul[:, ring.one], idx):
        bad = np.argwhere(mul[ring.one] != idx)
        w = int(bad[0][0]) if bad.size else int(np.argwhere(mul[:, ring.one] != idx)[0][0])
        report.add("mul-identity", (ring.one, w), "identity violated")

    if n <= _config.EXHAUSTIVE_TRIPLE_CAP:
        check_full_associativity(add, report, "add-associativity")
        for a in range(n):
            lhs = mul[a][add]
            rhs = add[np.ix_(mul[a], mul[a])]
            if not np.array_equal(lhs, rhs):
                b, c = map(int, np.argwhere(lhs != rhs)[0])
                report.add("mul-left-distributivity", (a, b, c))
                break
        for a in range(n):
            lhs = mul[:, a][add]
            rhs = add[np.ix_(mul[:, a], mul[:, a])]
            if not np.array_equal(lhs, rhs):
                b, c = map(int, np.argwhere(lhs != rhs)[0])
                report.add("mul-right-distributivity", (b, c, a))
                break
        check_full_associativity(mul, report, "mul-associativity")
        return report

    if not report.ok():
        return report
    asm = abelian_assembly(add, ring.zero)
    if asm is None:
        _verify_large_generic(ring, report)
        return report
    check_add_against_reference(add, asm, report, "add-associativity")
    if not report.ok():
        return report
    check_biadditive_via_assembly(
        mul, add, asm, report, "mul-left-distributivity", "mul-right-distributivity"
    )
    if report.ok():
        for a in asm.gens:
            for b in asm.gens:
                for c in asm.gens:
                    if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                        report.add("mul-associativity", (a, b, c))
                        return report
    return report


def _verify_large_generic(ring: FiniteRing, report: Report) -> None:
    """Generator-quantified fallback for carriers whose greedy generators come
    out dependent; same guarantees, quadratic per generator."""
    add, mul = ring.add_table, ring.mul_table
    gens = additive_generators(add, ring.zero)
    check_light_associativity(add, gens, report, "add-associativity", commutative=True)
    if not report.ok():
        return
    for s in gens:
        lhs = mul[:, add[:, s]]
        rhs = add[mul, mul[:, [s]]]
        if not np.array_equal(lhs, rhs):
            a, b = map(int, np.argwhere(lhs != rhs)[0])
            report.add("mul-left-distributivity", (a, b, int(s)))
            return
        lhs = mul[add[:, s], :]
        rhs = add[mul, mul[[s], :]]
        if not np.array_equal(lhs, rhs):
            a, b = map(int, np.argwhere(lhs != rhs)[0])
            report.add("mul-right-distributivity", (a, int(s), b))
            return
    for a in gens:
        for b in gens:
            for c in gens:
                if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                    report.add("mul-associativity", (a, b, c))
                    return


def ring_from_tables(add, mul, one: int, label: str = "R", names: Sequence[str] | None = None) -> FiniteRing:
    """Build and verify a ring; raises RingAxiomError with witnesses on failure."""
    return FiniteRing(add, mul, one, label=label, names=names)


def zn(n: int) -> FiniteRing:
    """The ring of integers modulo n."""
    if n <= 0:
        raise ValueError("modulus must be positive")
    idx = np.arange(n)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    return FiniteRing(add, mul, one=1 % n, label=f"Z{n}", names=[str(i) for i in range(n)])


class ProductRing(FiniteRing):
    """Componentwise direct product; keeps the factor codec and unit idempotents."""

    def __init__(self, factors: Sequence[FiniteRing], label: str | None = None):
        if not factors:
            raise ValueError("direct product needs at least one factor")
        self.factors = list(factors)
        self.codec = MixedRadix([f.size for f in factors])
        if self.codec.size > _config.element_cap():
            raise CarrierTooLarge(f"product carrier {self.codec.size} exceeds cap")
        digits = self.codec.decode_all()
        add = np.zeros((self.codec.size,) * 2, dtype=np.int32)
        mul = np.zeros_like(add)
        for f, d, stride in zip(factors, digits, self.codec.strides):
            add += f.add_table[np.ix_(d, d)].astype(np.int32) * stride
            mul += f.mul_table[np.ix_(d, d)].astype(np.int32) * stride
        one = self.codec.encode([f.one for f in factors])
        label = label or "x".join(f.label for f in factors)
        names = None
        if self.codec.size <= 4096:
            names = [
                "(" + ",".join(f.name_of(d) for f, d in zip(factors, self.codec.decode(i))) + ")"
                for i in range(self.codec.size)
            ]
        super().__init__(add, mul, one, label=label, names=names)

    def component_unit(self, j: int) -> int:
        """The idempotent with the identity in slot j and zero elsewhere."""
        digits = [f.zero for f in self.factors]
        digits[j] = self.factors[j].one
        return self.codec.encode(digits)

    def embed(self, j: int, a: int) -> int:
        digits = [f.zero for f in self.factors]
        digits[j] = a
        return self.codec.encode(digits)


def direct_product(factors: Sequence[FiniteRing], label: str | None = None) -> ProductRing:
    """Componentwise ring structure on the cartesian product of the factors."""
    return ProductRing(factors, label=label)


@dataclass(frozen=True)
class Ideal:
    """Two-sided ideal, stored as its full element set."""

    ring: FiniteRing
    elements: frozenset[int]

    def __post_init__(self):
        report = verify_ideal(self.ring, self.elements)
        if not report.ok():
            raise RingAxiomError(report)

    def __contains__(self, a: int) -> bool:
        return a in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def sorted(self) -> list[int]:
        return sorted(self.elements)


def verify_ideal(ring: FiniteRing, elements: frozenset[int] | set[int]) -> Report:
    """Check closure under add/neg, zero membership, and two-sided absorption."""
    report = Report(subject=f"ideal of {ring.label}")
    mem = np.array(sorted(elements), dtype=np.int32)
    if mem.size == 0 or ring.zero not in elements:
        report.add("ideal-zero", (), "zero missing")
        return report
    mask = np.zeros(ring.size, dtype=bool)
    mask[mem] = True
    if not mask[ring.add_table[np.ix_(mem, mem)]].all():
        bad = np.argwhere(~mask[ring.add_table[np.ix_(mem, mem)]])[0]
        report.add("ideal-add-closure", (int(mem[bad[0]]), int(mem[bad[1]])))
    if not mask[ring.neg_table[mem]].all():
        a = int(mem[np.argwhere(~mask[ring.neg_table[mem]])[0][0]])
        report.add("ideal-neg-closure", (a,))
    left = ring.mul_table[:, mem]
    if not mask[left].all():
        r, j = np.argwhere(~mask[left])[0]
        report.add("ideal-left-absorb", (int(r), int(mem[j])))
    right = ring.mul_table[mem, :]
    if not mask[right].all():
        j, r = np.argwhere(~mask[right])[0]
        report.add("ideal-right-absorb", (int(mem[j]), int(r)))
    return report


def ideal_generated_by(ring: FiniteRing, seed: Iterable[int]) -> Ideal:
    """Smallest two-sided ideal containing seed, by closure iteration."""
    members = set(int(s) for s in seed) | {ring.zero}
    while True:
        mem = np.array(sorted(members), dtype=np.int32)
        cand: set[int] = set()
        cand.update(np.unique(ring.mul_table[:, mem]).tolist())
        cand.update(np.unique(ring.mul_table[mem, :]).tolist())
        cand.update(np.unique(ring.add_table[np.ix_(mem, mem)]).tolist())
        cand.update(ring.neg_table[mem].tolist())
        if cand <= members:
            return Ideal(ring, frozenset(members))
        members |= cand


def ideal_sum(ring: FiniteRing, left: frozenset[int], right: frozenset[int]) -> frozenset[int]:
    return closure_under_add(ring.add_table, ring.zero, left | right)


def ideal_product(ring: FiniteRing, left: frozenset[int], right: frozenset[int]) -> frozenset[int]:
    """Additive closure of the set of pairwise products."""
    a = np.array(sorted(left), dtype=np.int32)
    b = np.array(sorted(right), dtype=np.int32)
    prods = np.unique(ring.mul_table[np.ix_(a, b)]).tolist()
    return closure_under_add(ring.add_table, ring.zero, prods)


def all_ideals(ring: FiniteRing) -> list[frozenset[int]]:
    """Every two-sided ideal, as sums of principal ideals. Small carriers only."""
    principals = {ideal_generated_by(ring, {a}).elements for a in ring.elements()}
    found = set(principals)
    frontier = list(principals)
    while frontier:
        nxt = []
        for cur in frontier:
            for p in principals:
                s = ideal_sum(ring, cur, p)
                if s not in found:
                    found.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class Subring:
    """Subset closed under the ambient operations, with its own identity."""

    ring: FiniteRing
    elements: frozenset[int]

    def __contains__(self, a: int) -> bool:
        return a in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def sorted(self) -> list[int]:
        return sorted(self.elements)


def center(ring: FiniteRing) -> Subring:
    """Elements commuting with the whole carrier."""
    mask = (ring.mul_table == ring.mul_table.T).all(axis=1)
    return Subring(ring, frozenset(int(a) for a in np.nonzero(mask)[0]))


def is_central_idempotent(ring: FiniteRing, e: int) -> bool:
    if not 0 <= e < ring.size:
        raise TableIncomplete(f"element {e} outside carrier")
    if ring.mul(e, e) != e:
        return False
    return bool(np.array_equal(ring.mul_table[e], ring.mul_table[:, e]))


def central_idempotents(ring: FiniteRing) -> list[int]:
    return [e for e in ring.elements() if is_central_idempotent(ring, e)]


def principal_from_central_idempotent(ring: FiniteRing, e: int) -> Ideal:
    """The ideal ring·e for a central idempotent e; e is its identity."""
    if not is_central_idempotent(ring, e):
        raise TableIncomplete(f"{e} is not a central idempotent of {ring.label}")
    return Ideal(ring, frozenset(np.unique(ring.mul_table[:, e]).tolist()))


def unit_of_ideal(ring: FiniteRing, elements: frozenset[int]) -> int | None:
    """Multiplicative identity of the ideal viewed as a ring, if one exists."""
    mem = np.array(sorted(elements), dtype=np.int32)
    for u in mem:
        if np.array_equal(ring.mul_table[np.ix_([u], mem)][0], mem) and np.array_equal(
            ring.mul_table[np.ix_(mem, [u])][:, 0], mem
        ):
            return int(u)
    return None


def extract_ring(ring: FiniteRing, elements: Iterable[int], one: int, label: str | None = None) -> tuple[FiniteRing, list[int]]:
    """Reindex a multiplicatively closed unital subset as a standalone ring.

    Returns the new ring and the embedding list (new index -> ambient element).
    """
    embed = sorted(set(int(a) for a in elements))
    pos = {a: i for i, a in enumerate(embed)}
    if one not in pos:
        raise TableIncomplete("identity not in the subset")
    mem = np.array(embed, dtype=np.int32)
    lookup = np.full(ring.size, -1, dtype=np.int32)
    lookup[mem] = np.arange(len(embed), dtype=np.int32)
    sub_add = lookup[ring.add_table[np.ix_(mem, mem)]]
    sub_mul = lookup[ring.mul_table[np.ix_(mem, mem)]]
    if (sub_add < 0).any() or (sub_mul < 0).any():
        raise TableIncomplete("subset is not closed under the ambient operations")
    names = [ring.name_of(a) for a in embed] if ring.names else None
    sub = FiniteRing(sub_add, sub_mul, pos[one], label=label or f"{ring.label}|{len(embed)}", names=names)
    return sub, embed


@dataclass(frozen=True)
class RingMorphism:
    """Total map between ring carriers; verified additive and multiplicative."""

    source: FiniteRing
    target: FiniteRing
    mapping: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.mapping, dtype=np.int32)


def verify_morphism(
    phi: RingMorphism, require_bijective: bool = False, require_unital: bool = True
) -> Report:
    report = Report(subject=f"{phi.source.label}->{phi.target.label}")
    f = phi.as_array()
    if f.shape != (phi.source.size,):
        raise TableIncomplete("morphism table must be total on the source carrier")
    if f.size and (f.min() < 0 or f.max() >= phi.target.size):
        raise TableIncomplete("morphism values outside the target carrier")
    check_map_additive(f, phi.source.add_table, phi.target.add_table, report, "morphism-additive")
    check_map_multiplicative(f, phi.source.mul_table, phi.target.mul_table, report, "morphism-multiplicative")
    if require_unital and phi(phi.source.one) != phi.target.one:
        report.add("morphism-unital", (phi.source.one,), "identity not preserved")
    if require_bijective:
        check_bijective(f, phi.target.size, report, "morphism-bijective")
    return report


def subsets_closed_as_ideals(ring: FiniteRing) -> list[frozenset[int]]:
    """Brute-force oracle: every subset passing the ideal test. Tiny carriers only."""
    if ring.size > 16:
        raise CarrierTooLarge("subset enumeration oracle is limited to carriers <= 16")
    out = []
    carrier = list(ring.elements())
    for r in range(ring.size + 1):
        for combo in combinations(carrier, r):
            s = frozenset(combo)
            if ring.zero in s and verify_ideal(ring, s).ok():
                out.append(s)
    return out
