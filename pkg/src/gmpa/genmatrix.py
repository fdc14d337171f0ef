"""Generalized matrix rings: n-by-n arrays of rings/bimodules with balanced
products, blockwise arithmetic, diagonal ideal families, and symmetry criteria.

Elements are tuples of block indices in row-major block order. The full
product-carrier ring is materialized (and audited with the plain ring
verifier) only when it fits the element cap; every check also has an exact
blockwise form, which is what large instances rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _config
from ._tables import MixedRadix
from .bimodules import (
    BalancedProduct,
    Bimodule,
    Submodule,
    left_product,
    product_of_submodules,
    regular_bimodule,
    right_product,
    sum_submodules,
)
from .errors import (
    AssociativityViolation,
    BlockMismatch,
    CarrierTooLarge,
    ClosureViolation,
    NotSymmetric,
    RingAxiomError,
    ShapeMismatch,
)
from .report import Report
from .rings import FiniteRing, RingMorphism, center, verify_ideal

BlockKey = tuple[int, int]
TripleKey = tuple[int, int, int]


class GenMatrixRing:
    """Square array of rings (diagonal) and bimodules (off-diagonal)."""

    def __init__(
        self,
        rings: Sequence[FiniteRing],
        modules: dict[BlockKey, Bimodule],
        products: dict[TripleKey, BalancedProduct],
        label: str = "R",
    ):
        self.n = len(rings)
        self.rings = list(rings)
        self.modules = dict(modules)
        self.products = dict(products)
        self.label = label
        self.block_keys: list[BlockKey] = [(i, j) for i in range(self.n) for j in range(self.n)]
        self.codec = MixedRadix([self.modules[k].size for k in self.block_keys])
        self._ring_view: FiniteRing | None = None
        self._view_codec: MixedRadix | None = None

    # --- blockwise arithmetic -------------------------------------------------
    def slot(self, i: int, j: int) -> int:
        return i * self.n + j

    def block(self, key: BlockKey) -> Bimodule:
        return self.modules[key]

    def product_table(self, i: int, j: int, k: int) -> np.ndarray:
        return self.products[(i, j, k)].table

    def zero_tuple(self) -> tuple[int, ...]:
        return tuple(self.modules[k].zero for k in self.block_keys)

    def one_tuple(self) -> tuple[int, ...]:
        out = []
        for i, j in self.block_keys:
            out.append(self.rings[i].one if i == j else self.modules[(i, j)].zero)
        return tuple(out)

    def diag_tuple(self, entries: Sequence[int]) -> tuple[int, ...]:
        out = []
        for i, j in self.block_keys:
            out.append(entries[i] if i == j else self.modules[(i, j)].zero)
        return tuple(out)

    def single_block_tuple(self, i: int, j: int, value: int) -> tuple[int, ...]:
        out = list(self.zero_tuple())
        out[self.slot(i, j)] = value
        return tuple(out)

    def add_tuples(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            int(self.modules[k].add_table[x, y]) for k, x, y in zip(self.block_keys, a, b)
        )

    def neg_tuple(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(self.modules[k].neg_table[x]) for k, x in zip(self.block_keys, a))

    def mul_tuples(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        n = self.n
        out = []
        for i in range(n):
            for k in range(n):
                mod = self.modules[(i, k)]
                acc = mod.zero
                for j in range(n):
                    term = self.product_table(i, j, k)[a[self.slot(i, j)], b[self.slot(j, k)]]
                    acc = int(mod.add_table[acc, term])
                out.append(acc)
        return tuple(out)

    def carrier_size(self) -> int:
        return self.codec.size

    def iter_tuples(self) -> Iterable[tuple[int, ...]]:
        for idx in range(self.codec.size):
            yield self.codec.decode(idx)

    def format_tuple(self, t: Sequence[int]) -> str:
        rows = []
        for i in range(self.n):
            rows.append(
                ",".join(self.modules[(i, j)].name_of(t[self.slot(i, j)]) for j in range(self.n))
            )
        return "[" + ";".join(rows) + "]"

    # --- materialized view ----------------------------------------------------
    def can_materialize(self) -> bool:
        return self.codec.size <= _config.element_cap()

    def as_finite_ring(self) -> FiniteRing:
        """Product-carrier FiniteRing view; element ids are codec indices."""
        if self._ring_view is not None:
            return self._ring_view
        if not self.can_materialize():
            raise CarrierTooLarge(
                f"{self.label}: carrier {self.codec.size} exceeds the element cap"
            )
        if self.n == 1:
            self._ring_view = self.rings[0]
            return self._ring_view
        digits = self.codec.decode_all()
        size = self.codec.size
        acc_dtype = np.int16 if size <= 32767 else np.int32
        add = np.zeros((size, size), dtype=acc_dtype)
        for key, d, stride in zip(self.block_keys, digits, self.codec.strides):
            add += self.modules[key].add_table[np.ix_(d, d)].astype(acc_dtype) * acc_dtype(stride)
        mul = np.zeros((size, size), dtype=acc_dtype)
        for i in range(self.n):
            for k in range(self.n):
                mod = self.modules[(i, k)]
                acc = None
                for j in range(self.n):
                    da = digits[self.slot(i, j)]
                    db = digits[self.slot(j, k)]
                    term = self.product_table(i, j, k)[np.ix_(da, db)]
                    acc = term if acc is None else mod.add_table[acc, term]
                mul += acc.astype(acc_dtype) * acc_dtype(self.codec.strides[self.slot(i, k)])
        one = self.codec.encode(self.one_tuple())
        names = None
        if size <= 1024:
            names = [self.format_tuple(self.codec.decode(i)) for i in range(size)]
        self._ring_view = FiniteRing(add, mul, one, label=self.label, names=names)
        return self._ring_view

    def tuple_to_id(self, t: Sequence[int]) -> int:
        return self.codec.encode(t)

    def id_to_tuple(self, idx: int) -> tuple[int, ...]:
        return self.codec.decode(idx)

    def subset_ids(self, blocks: dict[BlockKey, frozenset[int]]) -> frozenset[int]:
        """Flat ids of the product set of per-block subsets (small carriers)."""
        ids = np.array([0], dtype=np.int64)
        for key, stride in zip(self.block_keys, self.codec.strides):
            vals = np.array(sorted(blocks[key]), dtype=np.int64) * stride
            ids = (ids[:, None] + vals[None, :]).ravel()
        return frozenset(int(x) for x in ids)

    def __repr__(self) -> str:
        return f"GenMatrixRing({self.label}, n={self.n}, carrier={self.codec.size})"


def build_genmatrix(
    rings: Sequence[FiniteRing],
    modules: dict[BlockKey, Bimodule] | None = None,
    products: dict[TripleKey, np.ndarray] | None = None,
    label: str = "R",
) -> GenMatrixRing:
    """Assemble and audit a generalized matrix ring.

    `modules` holds the off-diagonal bimodules (diagonal blocks are the rings
    as bimodules over themselves). `products` holds tables for the triples
    (i,j,k) with i != j and j != k; products with a repeated adjacent index are
    derived from the bimodule actions. Fails loudly on any violation of the
    block associativity relation.
    """
    n = len(rings)
    modules = dict(modules or {})
    products = dict(products or {})
    full_modules: dict[BlockKey, Bimodule] = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                full_modules[(i, j)] = regular_bimodule(rings[i])
            else:
                if (i, j) not in modules:
                    raise ShapeMismatch(f"missing module for block {(i, j)}")
                mod = modules[(i, j)]
                if mod.left_ring is not rings[i] or mod.right_ring is not rings[j]:
                    raise ShapeMismatch(f"block {(i, j)} has mismatched acting rings")
                full_modules[(i, j)] = mod

    full_products: dict[TripleKey, BalancedProduct] = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left, right, out = full_modules[(i, j)], full_modules[(j, k)], full_modules[(i, k)]
                if i == j and j == k:
                    table = rings[i].mul_table
                elif i == j:
                    table = right.lact_table
                elif j == k:
                    table = left.ract_table
                else:
                    if (i, j, k) not in products:
                        raise ShapeMismatch(f"missing product table for {(i, j, k)}")
                    table = products[(i, j, k)]
                full_products[(i, j, k)] = BalancedProduct(left, right, out, table)

    # associativity relation across all block quadruples
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    t_ijk = full_products[(i, j, k)].table
                    t_ikl = full_products[(i, k, l)].table
                    t_jkl = full_products[(j, k, l)].table
                    t_ijl = full_products[(i, j, l)].table
                    for a in range(full_modules[(i, j)].size):
                        lhs = t_ikl[t_ijk[a], :]
                        rhs = t_ijl[a, t_jkl]
                        if not np.array_equal(lhs, rhs):
                            b, c = map(int, np.argwhere(lhs != rhs)[0])
                            raise AssociativityViolation(
                                f"(i,j,k,l)={(i, j, k, l)}, elements {(a, b, c)}"
                            )

    built = GenMatrixRing(rings, full_modules, full_products, label=label)
    if built.can_materialize() and built.n > 1:
        built.as_finite_ring()  # FiniteRing construction re-runs the ring axioms
    return built


@dataclass(frozen=True)
class IdealFamily:
    """One ideal of each diagonal ring."""

    parent: GenMatrixRing
    ideals: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.ideals) != self.parent.n:
            raise ShapeMismatch("need exactly one ideal per diagonal ring")
        for ring, ideal in zip(self.parent.rings, self.ideals):
            report = verify_ideal(ring, ideal)
            if not report.ok():
                raise RingAxiomError(report)


def ideal_family(parent: GenMatrixRing, ideals: Sequence[Iterable[int]]) -> IdealFamily:
    return IdealFamily(parent, tuple(frozenset(int(x) for x in s) for s in ideals))


@dataclass
class GMIdealCandidate:
    """Block array I_jk = I_j*M_jk + M_jk*I_k, not yet verified to be an ideal."""

    parent: GenMatrixRing
    blocks: dict[BlockKey, frozenset[int]]

    def block_sizes(self) -> dict[BlockKey, int]:
        return {k: len(v) for k, v in self.blocks.items()}

    def element_count(self) -> int:
        count = 1
        for v in self.blocks.values():
            count *= len(v)
        return count

    def contains_tuple(self, t: Sequence[int]) -> bool:
        return all(t[self.parent.slot(i, j)] in self.blocks[(i, j)] for i, j in self.parent.block_keys)


@dataclass
class GMIdeal(GMIdealCandidate):
    """Ideal of the parent with product-of-blocks element set (closure verified)."""


def ideal_family_blocks(parent: GenMatrixRing, family: IdealFamily) -> GMIdealCandidate:
    """Candidate blocks I_j*M_jk + M_jk*I_k for the diagonal family."""
    blocks: dict[BlockKey, frozenset[int]] = {}
    for j in range(parent.n):
        for k in range(parent.n):
            mod = parent.modules[(j, k)]
            s = sum_submodules(
                left_product(family.ideals[j], mod),
                right_product(mod, family.ideals[k]),
            )
            blocks[(j, k)] = s.elements
    for j in range(parent.n):
        if blocks[(j, j)] != family.ideals[j]:
            raise BlockMismatch(
                f"diagonal block {(j, j)}: candidate differs from I_{j} in a unital ring"
            )
    return GMIdealCandidate(parent, blocks)


def is_symmetric(parent: GenMatrixRing, family: IdealFamily) -> bool:
    """I_i*M_ij = M_ij*I_j as subsets, for every block."""
    for i in range(parent.n):
        for j in range(parent.n):
            mod = parent.modules[(i, j)]
            if left_product(family.ideals[i], mod).elements != right_product(mod, family.ideals[j]).elements:
                return False
    return True


def _one_sided_conditions(parent: GenMatrixRing, family: IdealFamily) -> tuple[bool, bool]:
    """(M_ij I_j M_jk <= M_ik I_k for all triples, ... <= I_i M_ik for all triples)."""
    into_right = True
    into_left = True
    for i in range(parent.n):
        for j in range(parent.n):
            mid = right_product(parent.modules[(i, j)], family.ideals[j]).elements
            for k in range(parent.n):
                triple = product_of_submodules(
                    parent.products[(i, j, k)], mid, range(parent.modules[(j, k)].size)
                )
                if not triple <= right_product(parent.modules[(i, k)], family.ideals[k]).elements:
                    into_right = False
                if not triple <= left_product(family.ideals[i], parent.modules[(i, k)]).elements:
                    into_left = False
    return into_right, into_left


def check_symmetry_equivalence(parent: GenMatrixRing, family: IdealFamily) -> Report:
    """Both sides of the symmetry criterion, with a bug-signal on disagreement.

    (i) the family is symmetric; (ii) M_ij I_j M_jk lands in M_ik I_k and in
    I_i M_ik for every triple. The two computed truth values are recorded in
    the report subject; a mismatch would falsify this implementation, not the
    criterion, and is reported as a violation.
    """
    sym = is_symmetric(parent, family)
    into_right, into_left = _one_sided_conditions(parent, family)
    cond_ii = into_right and into_left
    report = Report(subject=f"symmetry-equivalence[{parent.label}] (i)={sym} (ii)={cond_ii}")
    if sym != cond_ii:
        report.add(
            "equivalence-mismatch",
            (sym, cond_ii),
            "symmetry and triple-product conditions disagree (implementation bug)",
        )
    return report


def promote_to_ideal(parent: GenMatrixRing, family: IdealFamily) -> GMIdeal:
    """Verified ideal with blocks I_j*M_jk + M_jk*I_k.

    Requires the symmetry hypothesis (or one of the one-sided triple-product
    hypotheses). Closure under two-sided multiplication is re-checked
    independently, blockwise over all single-block multipliers; a failure is an
    implementation bug, not an input error.
    """
    sym = is_symmetric(parent, family)
    if not sym:
        into_right, into_left = _one_sided_conditions(parent, family)
        if not (into_right or into_left):
            raise NotSymmetric(f"{parent.label}: family satisfies no ideal hypothesis")
    candidate = ideal_family_blocks(parent, family)
    report = closure_report(candidate)
    if not report.ok():
        raise ClosureViolation(report.summary())
    return GMIdeal(parent, candidate.blocks)


def closure_report(candidate: GMIdealCandidate) -> Report:
    """Exact closure audit of a block array under two-sided multiplication.

    Blockwise over single-block multipliers, which is equivalent to closure
    under all of R by bi-additivity of the matrix product; additionally runs
    the flat two-sided check on the materialized carrier when it fits the cap.
    """
    parent = candidate.parent
    report = Report(subject=f"ideal-closure[{parent.label}]")
    for i in range(parent.n):
        for j in range(parent.n):
            for k in range(parent.n):
                theta = parent.products[(i, j, k)]
                got = product_of_submodules(
                    theta, range(parent.modules[(i, j)].size), candidate.blocks[(j, k)]
                )
                if not got <= candidate.blocks[(i, k)]:
                    report.add("left-closure", (i, j, k), "M_ij * I_jk escapes I_ik")
                got = product_of_submodules(
                    theta, candidate.blocks[(i, j)], range(parent.modules[(j, k)].size)
                )
                if not got <= candidate.blocks[(i, k)]:
                    report.add("right-closure", (i, j, k), "I_ij * M_jk escapes I_ik")
    if parent.can_materialize() and parent.n > 1 and report.ok():
        view = parent.as_finite_ring()
        ids = np.array(sorted(parent.subset_ids(candidate.blocks)), dtype=np.int64)
        mask = np.zeros(view.size, dtype=bool)
        mask[ids] = True
        if not mask[view.mul_table[:, ids]].all() or not mask[view.mul_table[ids, :]].all():
            report.add("flat-closure", (), "materialized closure check failed")
    return report


@dataclass
class CenterBlocks:
    """Center of a generalized matrix ring, computed blockwise."""

    tuples: list[tuple[int, ...]]
    contained_in_diagonal: bool
    equals_diagonal_of_centers: bool
    report: Report = field(default_factory=Report)


def center_blocks(parent: GenMatrixRing) -> CenterBlocks:
    """Center via commutation with single-block elements (exact by
    bi-additivity); asserts containment in the diagonal with central entries
    and reports whether equality with that diagonal holds on this instance."""
    n = parent.n
    report = Report(subject=f"center[{parent.label}]")

    # allowed values for off-diagonal blocks of a central element
    allowed_off: dict[BlockKey, set[int]] = {}
    for q in range(n):
        for j in range(n):
            if q == j:
                continue
            vals = set(parent.modules[(q, j)].elements())
            for p in range(n):
                table = parent.products[(p, q, j)].table  # theta(m, v), m in M_pq
                zero = parent.modules[(p, j)].zero
                vals = {v for v in vals if (table[:, v] == zero).all()}
            for k in range(n):
                table = parent.products[(q, j, k)].table  # theta(v, m), m in M_jk
                zero = parent.modules[(q, k)].zero
                vals = {v for v in vals if (table[v, :] == zero).all()}
            allowed_off[(q, j)] = vals

    centers = [sorted(center(r).elements) for r in parent.rings]

    # diagonal entries must satisfy m * a_qq = a_pp * m for all m in M_pq
    def compatible(p: int, q: int, ap: int, aq: int) -> bool:
        mod = parent.modules[(p, q)]
        return bool(np.array_equal(mod.ract_table[:, aq], mod.lact_table[ap, :]))

    diag_choices: list[list[int]] = [[]]
    for q in range(n):
        nxt = []
        for partial in diag_choices:
            for aq in centers[q]:
                if all(compatible(p, q, partial[p], aq) and compatible(q, p, aq, partial[p]) for p in range(q)):
                    nxt.append(partial + [aq])
        diag_choices = nxt

    off_keys = [(i, j) for i in range(n) for j in range(n) if i != j]
    off_sets = [sorted(allowed_off[k]) for k in off_keys]

    tuples: list[tuple[int, ...]] = []

    def off_combos(idx: int, current: dict[BlockKey, int]):
        if idx == len(off_keys):
            yield dict(current)
            return
        for v in off_sets[idx]:
            current[off_keys[idx]] = v
            yield from off_combos(idx + 1, current)

    for diag in diag_choices:
        for off in off_combos(0, {}):
            t = []
            for i, j in parent.block_keys:
                t.append(diag[i] if i == j else off[(i, j)])
            tuples.append(tuple(t))

    contained = all(
        all(t[parent.slot(i, j)] == parent.modules[(i, j)].zero for i in range(n) for j in range(n) if i != j)
        for t in tuples
    )
    full_diag_count = 1
    for c in centers:
        full_diag_count *= len(c)
    equals_diag = contained and len(tuples) == full_diag_count
    if not contained:
        report.add("center-off-diagonal", (), "central element with nonzero off-diagonal block")

    if parent.can_materialize() and parent.n > 1:
        view = parent.as_finite_ring()
        mask = (view.mul_table == view.mul_table.T).all(axis=1)
        direct = {int(a) for a in np.nonzero(mask)[0]}
        blockwise = {parent.tuple_to_id(t) for t in tuples}
        if direct != blockwise:
            report.add("center-blockwise-vs-direct", (), "blockwise center disagrees with exhaustive center")
    return CenterBlocks(tuples, contained, equals_diag, report)


def corner_embed(parent: GenMatrixRing, k: int) -> RingMorphism:
    """The (non-unital for n>1) embedding of R_k at block (k,k)."""
    view = parent.as_finite_ring()
    ring = parent.rings[k]
    mapping = tuple(
        parent.tuple_to_id(parent.single_block_tuple(k, k, a)) for a in ring.elements()
    )
    return RingMorphism(ring, view, mapping)
