"""Generalized matrix ring construction, ideal families, symmetry, center."""

import numpy as np
import pytest

from gmpa.bimodules import ideal_as_bimodule, regular_bimodule
from gmpa.errors import AssociativityViolation, NotSymmetric
from gmpa.genmatrix import (
    build_genmatrix,
    center_blocks,
    check_symmetry_equivalence,
    closure_report,
    corner_embed,
    ideal_family,
    ideal_family_blocks,
    is_symmetric,
    promote_to_ideal,
)
from gmpa.rings import direct_product, ideal_generated_by, verify_morphism, verify_ring, zn


def full_matrix_ring(k, n, label=None):
    mods = {(i, j): regular_bimodule(k) for i in range(n) for j in range(n) if i != j}
    prods = {
        (i, j, l): k.mul_table
        for i in range(n)
        for j in range(n)
        for l in range(n)
        if i != j and j != l
    }
    return build_genmatrix([k] * n, mods, prods, label=label or f"M{n}({k.label})")


def sec62_shape(b, e1):
    """(B, Be1; Be1, B) with multiplication of B, as in the 2-by-2 example."""
    k1 = sorted(ideal_generated_by(b, {e1}).elements)
    mod, embed = ideal_as_bimodule(b, k1, label="K1")
    emb = np.array(embed)
    table = b.mul_table[np.ix_(emb, emb)]
    prods = {(0, 1, 0): table, (1, 0, 1): table}
    return build_genmatrix([b, b], {(0, 1): mod, (1, 0): mod}, prods, label="R62"), mod, embed


@pytest.fixture(scope="module")
def m2z2():
    return full_matrix_ring(zn(2), 2)


@pytest.fixture(scope="module")
def r62():
    b = direct_product([zn(2)] * 4)
    e = [b.component_unit(j) for j in range(4)]
    e1 = b.add(e[0], e[1])
    ring, mod, embed = sec62_shape(b, e1)
    return b, ring, mod, embed


def test_n1_returns_ring_itself():
    k = zn(2)
    r = build_genmatrix([k])
    assert r.as_finite_ring() is k


def test_full_2x2_matrix_ring(m2z2):
    assert m2z2.carrier_size() == 16
    view = m2z2.as_finite_ring()
    assert verify_ring(view).ok()
    # noncommutative: E01 * E10 != E10 * E01
    a = m2z2.tuple_to_id(m2z2.single_block_tuple(0, 1, 1))
    b = m2z2.tuple_to_id(m2z2.single_block_tuple(1, 0, 1))
    assert view.mul(a, b) != view.mul(b, a)


def test_associativity_violation_detected():
    k = zn(2)
    mods = {(i, j): regular_bimodule(k) for i in range(2) for j in range(2) if i != j}
    bad = np.array(k.mul_table)
    bad[1, 1] = 0  # breaks (m01*m10)*m01 = m01*(m10*m01)
    prods = {(0, 1, 0): bad, (1, 0, 1): k.mul_table}
    with pytest.raises(AssociativityViolation):
        build_genmatrix([k, k], mods, prods)


def test_sec62_shape_builds(r62):
    b, ring, mod, embed = r62
    assert ring.carrier_size() == 16 * 4 * 4 * 16
    assert ring.can_materialize()
    assert verify_ring(ring.as_finite_ring()).ok()


def test_ideal_family_blocks_trivial(m2z2):
    zero_family = ideal_family(m2z2, [{0}, {0}])
    cand = ideal_family_blocks(m2z2, zero_family)
    assert all(v == {0} for v in cand.blocks.values())
    full_family = ideal_family(m2z2, [set(range(2)), set(range(2))])
    cand = ideal_family_blocks(m2z2, full_family)
    assert all(len(v) == 2 for v in cand.blocks.values())


def test_symmetry_trivial_families(m2z2):
    assert is_symmetric(m2z2, ideal_family(m2z2, [{0}, {0}]))
    assert is_symmetric(m2z2, ideal_family(m2z2, [{0, 1}, {0, 1}]))
    # mixed family on the full matrix ring is not symmetric
    assert not is_symmetric(m2z2, ideal_family(m2z2, [{0, 1}, {0}]))


def test_symmetry_equivalence_holds(m2z2):
    for ideals in ([{0}, {0}], [{0, 1}, {0, 1}], [{0, 1}, {0}], [{0}, {0, 1}]):
        fam = ideal_family(m2z2, ideals)
        assert check_symmetry_equivalence(m2z2, fam).ok()


def test_sec62_family_symmetric_and_promotes(r62):
    b, ring, mod, embed = r62
    e = [b.component_unit(j) for j in range(4)]
    e2 = b.add(e[1], e[2])
    k2 = ideal_generated_by(b, {e2}).elements
    fam = ideal_family(ring, [k2, k2])
    assert is_symmetric(ring, fam)
    assert check_symmetry_equivalence(ring, fam).ok()
    ideal = promote_to_ideal(ring, fam)
    # off-diagonal blocks are K1K2 = B*e1e2 expressed in K1 coordinates
    e1 = b.add(e[0], e[1])
    e1e2 = b.mul(e1, e2)
    expect = {list(embed).index(x) for x in ideal_generated_by(b, {e1e2}).elements}
    assert ideal.blocks[(0, 1)] == expect
    assert ideal.blocks[(0, 0)] == k2


def test_promote_rejects_asymmetric(m2z2):
    fam = ideal_family(m2z2, [{0, 1}, {0}])
    with pytest.raises(NotSymmetric):
        promote_to_ideal(m2z2, fam)


def test_promoted_ideal_matches_generated_oracle(r62):
    b, ring, mod, embed = r62
    e = [b.component_unit(j) for j in range(4)]
    e2 = b.add(e[1], e[2])
    k2 = ideal_generated_by(b, {e2}).elements
    fam = ideal_family(ring, [k2, k2])
    ideal = promote_to_ideal(ring, fam)
    view = ring.as_finite_ring()
    corner_ids = set()
    for j, ideal_j in enumerate(fam.ideals):
        for a in ideal_j:
            corner_ids.add(ring.tuple_to_id(ring.single_block_tuple(j, j, a)))
    oracle = ideal_generated_by(view, corner_ids).elements
    assert ring.subset_ids(ideal.blocks) == oracle


def test_center_of_full_matrix_ring(m2z2):
    info = center_blocks(m2z2)
    assert info.report.ok()
    assert info.contained_in_diagonal
    # scalar diagonals only
    assert sorted(info.tuples) == [
        (0, 0, 0, 0),
        (1, 0, 0, 1),
    ]
    assert not info.equals_diagonal_of_centers  # Z(Z2)^2 has 4 diagonals, only 2 central


def test_center_sec62(r62):
    b, ring, mod, embed = r62
    info = center_blocks(ring)
    assert info.report.ok()
    assert info.contained_in_diagonal


def test_corner_embed(m2z2):
    iota0 = corner_embed(m2z2, 0)
    iota1 = corner_embed(m2z2, 1)
    rep = verify_morphism(iota0, require_unital=False)
    assert rep.ok()
    view = m2z2.as_finite_ring()
    assert iota0(0) == view.zero
    assert view.mul(iota0(1), iota1(1)) == view.zero


def test_closure_report_flags_non_ideal(m2z2):
    from gmpa.genmatrix import GMIdealCandidate

    bad = GMIdealCandidate(m2z2, {(0, 0): frozenset({0, 1}), (0, 1): frozenset({0}),
                                  (1, 0): frozenset({0}), (1, 1): frozenset({0})})
    assert not closure_report(bad).ok()
