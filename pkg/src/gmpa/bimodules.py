"""Finite bimodules, submodule products, and balanced bilinear product maps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _config
from ._tables import additive_generators, as_table, check_full_associativity, check_light_associativity, closure_under_add
from .errors import AmbientMismatch, RingAxiomError, TableIncomplete
from .report import Report
from .rings import FiniteRing


class Bimodule:
    """Finite (left_ring, right_ring)-bimodule with table-based actions."""

    def __init__(
        self,
        left_ring: FiniteRing,
        right_ring: FiniteRing,
        add,
        lact,
        ract,
        label: str = "M",
        names: Sequence[str] | None = None,
        check: bool = True,
    ):
        add = np.asarray(add, dtype=np.int32)
        m = add.shape[0]
        self.size = m
        self.left_ring = left_ring
        self.right_ring = right_ring
        self.add_table = as_table(add, (m, m), f"{label}.add", m)
        self.lact_table = as_table(np.asarray(lact, dtype=np.int32), (left_ring.size, m), f"{label}.lact", m)
        self.ract_table = as_table(np.asarray(ract, dtype=np.int32), (m, right_ring.size), f"{label}.ract", m)
        self.label = label
        self.names = list(names) if names is not None else None
        self.zero = self._find_zero()
        self.neg_table = self._derive_neg()
        if check:
            report = verify_bimodule(self)
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

    def add(self, x: int, y: int) -> int:
        return int(self.add_table[x, y])

    def neg(self, x: int) -> int:
        return int(self.neg_table[x])

    def lmul(self, a: int, x: int) -> int:
        return int(self.lact_table[a, x])

    def rmul(self, x: int, b: int) -> int:
        return int(self.ract_table[x, b])

    def sum(self, items: Iterable[int]) -> int:
        acc = self.zero
        for x in items:
            acc = int(self.add_table[acc, x])
        return acc

    def elements(self) -> range:
        return range(self.size)

    def name_of(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def __repr__(self) -> str:
        return f"Bimodule({self.label}, {self.left_ring.label}|{self.right_ring.label}, size={self.size})"


def _check_pairwise(report: Report, check: str, lhs: np.ndarray, rhs: np.ndarray, prefix: tuple = ()) -> bool:
    if np.array_equal(lhs, rhs):
        return True
    w = tuple(int(v) for v in np.argwhere(lhs != rhs)[0])
    report.add(check, prefix + w)
    return False


def verify_bimodule(mod: Bimodule) -> Report:
    """Exhaustive bimodule axioms: abelian carrier, unit laws, bi-additivity,
    associativity of both actions and their compatibility."""
    report = Report(subject=mod.label)
    add = mod.add_table
    idx = np.arange(mod.size, dtype=np.int32)
    if not np.array_equal(add, add.T):
        a, b = map(int, np.argwhere(add != add.T)[0])
        report.add("add-commutativity", (a, b))
    if mod.size <= _config.EXHAUSTIVE_TRIPLE_CAP:
        check_full_associativity(add, report, "add-associativity")
    else:
        check_light_associativity(add, additive_generators(add, mod.zero), report, "add-associativity")
    if not report.ok():
        return report

    L, R = mod.left_ring, mod.right_ring
    lact, ract = mod.lact_table, mod.ract_table
    if not np.array_equal(lact[L.one], idx):
        x = int(np.argwhere(lact[L.one] != idx)[0][0])
        report.add("unit axiom", (x,), "1*m != m")
    if not np.array_equal(ract[:, R.one], idx):
        x = int(np.argwhere(ract[:, R.one] != idx)[0][0])
        report.add("unit axiom", (x,), "m*1 != m")

    # bi-additivity of both actions
    for a in L.elements():
        if not _check_pairwise(report, "lact-additive", lact[a][add], add[np.ix_(lact[a], lact[a])], (a,)):
            break
    for x in mod.elements():
        row = lact[:, x]
        if not _check_pairwise(report, "lact-add-in-ring", row[L.add_table], add[np.ix_(row, row)], (x,)):
            break
    for b in R.elements():
        col = ract[:, b]
        if not _check_pairwise(report, "ract-additive", col[add], add[np.ix_(col, col)], (b,)):
            break
    for x in mod.elements():
        row = ract[x]
        if not _check_pairwise(report, "ract-add-in-ring", row[R.add_table], add[np.ix_(row, row)], (x,)):
            break

    # (ab)m = a(bm)
    for a in L.elements():
        if not _check_pairwise(report, "lact-associative", lact[L.mul_table[a]], lact[a][lact], (a,)):
            break
    # m(ab) = (ma)b
    for x in mod.elements():
        if not _check_pairwise(report, "ract-associative", ract[x][R.mul_table], ract[ract[x]], (x,)):
            break
    # (am)b = a(mb)
    for a in L.elements():
        if not _check_pairwise(report, "actions-compatible", ract[lact[a]], lact[a][ract], (a,)):
            break
    return report


def regular_bimodule(ring: FiniteRing) -> Bimodule:
    """The ring as a bimodule over itself (diagonal blocks)."""
    return Bimodule(
        ring,
        ring,
        ring.add_table,
        ring.mul_table,
        ring.mul_table,
        label=f"{ring.label}-reg",
        names=list(ring.names) if ring.names else None,
        check=False,  # ring axioms already verified at ring build time
    )


def ideal_as_bimodule(
    ring: FiniteRing,
    elements: Iterable[int],
    label: str | None = None,
    left_ring: FiniteRing | None = None,
    right_ring: FiniteRing | None = None,
    left_embed: Sequence[int] | None = None,
    right_embed: Sequence[int] | None = None,
) -> tuple[Bimodule, list[int]]:
    """An ideal of `ring` as a bimodule; actions are ambient multiplication.

    Optionally the acting rings are reindexed subrings of `ring`, given with
    their embeddings. Returns the bimodule and the carrier embedding.
    """
    embed = sorted(set(int(a) for a in elements))
    mem = np.array(embed, dtype=np.int32)
    lookup = np.full(ring.size, -1, dtype=np.int32)
    lookup[mem] = np.arange(len(embed), dtype=np.int32)
    add = lookup[ring.add_table[np.ix_(mem, mem)]]
    if (add < 0).any():
        raise TableIncomplete("subset not additively closed")
    lring = left_ring or ring
    rring = right_ring or ring
    lemb = np.asarray(left_embed if left_embed is not None else range(ring.size), dtype=np.int32)
    remb = np.asarray(right_embed if right_embed is not None else range(ring.size), dtype=np.int32)
    lact = lookup[ring.mul_table[np.ix_(lemb, mem)]]
    ract = lookup[ring.mul_table[np.ix_(mem, remb)]]
    if (lact < 0).any() or (ract < 0).any():
        raise TableIncomplete("subset not closed under the ring actions")
    names = [ring.name_of(a) for a in embed] if ring.names else None
    mod = Bimodule(lring, rring, add, lact, ract, label=label or f"{ring.label}-sub", names=names)
    return mod, embed


@dataclass(frozen=True)
class Submodule:
    """Subset of a bimodule closed under addition and both ring actions."""

    module: Bimodule
    elements: frozenset[int]

    def __post_init__(self):
        report = verify_submodule(self.module, self.elements)
        if not report.ok():
            raise RingAxiomError(report)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def sorted(self) -> list[int]:
        return sorted(self.elements)


def verify_submodule(mod: Bimodule, elements: frozenset[int] | set[int]) -> Report:
    report = Report(subject=f"submodule of {mod.label}")
    if mod.zero not in elements:
        report.add("submodule-zero", ())
        return report
    mem = np.array(sorted(elements), dtype=np.int32)
    mask = np.zeros(mod.size, dtype=bool)
    mask[mem] = True
    if not mask[mod.add_table[np.ix_(mem, mem)]].all():
        i, j = np.argwhere(~mask[mod.add_table[np.ix_(mem, mem)]])[0]
        report.add("submodule-add-closure", (int(mem[i]), int(mem[j])))
    if not mask[mod.lact_table[:, mem]].all():
        a, j = np.argwhere(~mask[mod.lact_table[:, mem]])[0]
        report.add("submodule-left-closure", (int(a), int(mem[j])))
    if not mask[mod.ract_table[mem, :]].all():
        j, b = np.argwhere(~mask[mod.ract_table[mem, :]])[0]
        report.add("submodule-right-closure", (int(mem[j]), int(b)))
    return report


def left_product(ideal_elements: Iterable[int], mod: Bimodule, within: Iterable[int] | None = None) -> Submodule:
    """Additive closure of {a*m : a in the ideal, m in the module (or subset)}."""
    a = np.array(sorted(set(int(x) for x in ideal_elements)), dtype=np.int32)
    m = np.array(sorted(set(within)) if within is not None else range(mod.size), dtype=np.int32)
    prods = np.unique(mod.lact_table[np.ix_(a, m)]).tolist() if a.size and m.size else []
    return Submodule(mod, closure_under_add(mod.add_table, mod.zero, prods))


def right_product(mod: Bimodule, ideal_elements: Iterable[int], within: Iterable[int] | None = None) -> Submodule:
    """Additive closure of {m*b : m in the module (or subset), b in the ideal}."""
    b = np.array(sorted(set(int(x) for x in ideal_elements)), dtype=np.int32)
    m = np.array(sorted(set(within)) if within is not None else range(mod.size), dtype=np.int32)
    prods = np.unique(mod.ract_table[np.ix_(m, b)]).tolist() if b.size and m.size else []
    return Submodule(mod, closure_under_add(mod.add_table, mod.zero, prods))


def sum_submodules(s: Submodule, t: Submodule) -> Submodule:
    if s.module is not t.module:
        raise AmbientMismatch(f"{s.module.label} vs {t.module.label}")
    mod = s.module
    return Submodule(mod, closure_under_add(mod.add_table, mod.zero, s.elements | t.elements))


class BalancedProduct:
    """Bilinear product map left x right -> out, balanced over the middle ring."""

    def __init__(self, left: Bimodule, right: Bimodule, out: Bimodule, table, check: bool = True):
        if left.right_ring is not right.left_ring:
            raise AmbientMismatch("middle rings differ")
        if left.left_ring is not out.left_ring or right.right_ring is not out.right_ring:
            raise AmbientMismatch("outer rings differ")
        self.left = left
        self.right = right
        self.out = out
        self.table = as_table(
            np.asarray(table, dtype=np.int32), (left.size, right.size), "balanced.map", out.size
        )
        if check:
            report = verify_balanced(self)
            if not report.ok():
                raise RingAxiomError(report)

    def __call__(self, x: int, y: int) -> int:
        return int(self.table[x, y])


def verify_balanced(theta: BalancedProduct) -> Report:
    """Bi-additivity, balance over the middle ring, and outer linearity."""
    report = Report(subject=f"theta[{theta.left.label}x{theta.right.label}->{theta.out.label}]")
    t = theta.table
    left, right, out = theta.left, theta.right, theta.out
    for x in left.elements():
        if not _check_pairwise(report, "additive-right-slot", t[x][right.add_table], out.add_table[np.ix_(t[x], t[x])], (x,)):
            break
    for y in right.elements():
        col = t[:, y]
        if not _check_pairwise(report, "additive-left-slot", col[left.add_table], out.add_table[np.ix_(col, col)], (y,)):
            break
    # balance: map(m*r, m') = map(m, r*m') for r in the middle ring
    for r in left.right_ring.elements():
        if not _check_pairwise(report, "balance", t[left.ract_table[:, r], :], t[:, right.lact_table[r, :]], (r,)):
            break
    # outer linearity
    for a in left.left_ring.elements():
        if not _check_pairwise(report, "left-linear", t[left.lact_table[a], :], out.lact_table[a][t], (a,)):
            break
    for b in right.right_ring.elements():
        if not _check_pairwise(report, "right-linear", t[:, right.ract_table[:, b]], out.ract_table[:, b][t], (b,)):
            break
    return report


def product_of_submodules(theta: BalancedProduct, s: Iterable[int], t: Iterable[int]) -> frozenset[int]:
    """Additive closure of the image of S x T under the product map."""
    a = np.array(sorted(set(int(x) for x in s)), dtype=np.int32)
    b = np.array(sorted(set(int(x) for x in t)), dtype=np.int32)
    if a.size == 0 or b.size == 0:
        return frozenset({theta.out.zero})
    prods = np.unique(theta.table[np.ix_(a, b)]).tolist()
    return closure_under_add(theta.out.add_table, theta.out.zero, prods)
