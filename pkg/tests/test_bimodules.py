"""Bimodule axioms, submodule products, and balanced-map verification."""

import numpy as np
import pytest

from gmpa.bimodules import (
    BalancedProduct,
    Bimodule,
    ideal_as_bimodule,
    left_product,
    product_of_submodules,
    regular_bimodule,
    right_product,
    sum_submodules,
    verify_balanced,
    verify_bimodule,
)
from gmpa.errors import AmbientMismatch
from gmpa.rings import direct_product, ideal_generated_by, zn


def test_regular_bimodule_verifies():
    m = regular_bimodule(zn(2))
    assert verify_bimodule(m).ok()
    m6 = regular_bimodule(zn(6))
    assert verify_bimodule(m6).ok()


def test_diagonal_action_bimodule():
    # Z2^2 as a (Z2, Z2^2)-bimodule: left action is diagonal scalar action
    k = zn(2)
    b = direct_product([k, k])
    # left action a*m = (a*m1, a*m2), i.e. multiplication by diag(a,a)
    diag = [b.codec.encode([a, a]) for a in range(2)]
    lact = np.array([[b.mul(diag[a], m) for m in range(4)] for a in range(2)])
    m = Bimodule(k, b, b.add_table, lact, b.mul_table, label="Z2^2-diag")
    assert verify_bimodule(m).ok()


def test_unit_axiom_violation_named():
    k = zn(2)
    m = regular_bimodule(k)
    lact = np.array(m.lact_table)
    lact[1, 1] = 0  # 1*m != m
    bad = Bimodule(k, k, m.add_table, lact, m.ract_table, check=False)
    report = verify_bimodule(bad)
    assert "unit axiom" in report.checks_failed()


def test_left_product_zero_and_full():
    b = direct_product([zn(2)] * 4)
    m = regular_bimodule(b)
    zero = left_product([b.zero], m)
    assert zero.elements == {b.zero}
    full = left_product(range(b.size), m)
    assert len(full) == b.size


def test_left_product_of_unital_ring_is_module():
    b = direct_product([zn(2), zn(2)])
    m = regular_bimodule(b)
    assert len(left_product(range(b.size), m)) == b.size
    assert len(right_product(m, range(b.size))) == b.size


def test_sum_submodules_idempotent_and_zero():
    b = direct_product([zn(2)] * 4)
    m = regular_bimodule(b)
    e1 = ideal_generated_by(b, {b.component_unit(0)}).elements
    s = left_product(e1, m)
    zero = left_product([b.zero], m)
    assert sum_submodules(s, zero).elements == s.elements
    assert sum_submodules(s, s).elements == s.elements


def test_sum_submodules_ambient_mismatch():
    m1 = regular_bimodule(zn(2))
    m2 = regular_bimodule(zn(2))
    s1 = left_product([0], m1)
    s2 = left_product([0], m2)
    with pytest.raises(AmbientMismatch):
        sum_submodules(s1, s2)


def test_balanced_product_ring_multiplication():
    r = zn(4)
    m = regular_bimodule(r)
    theta = BalancedProduct(m, m, m, r.mul_table)
    assert verify_balanced(theta).ok()


def test_balanced_violation_reported():
    r = zn(4)
    m = regular_bimodule(r)
    table = np.array(r.mul_table)
    table[2, 3] = r.add(int(table[2, 3]), 2)
    bad = BalancedProduct(m, m, m, table, check=False)
    report = verify_balanced(bad)
    assert not report.ok()


def test_ideal_as_bimodule_and_products():
    # section 6.2 model at k=Z2, n=4, r=2: K1K2 = B*e1e2 has |k| elements
    b = direct_product([zn(2)] * 4)
    e = [b.component_unit(j) for j in range(4)]
    e1 = b.add(e[0], e[1])
    e2 = b.add(e[1], e[2])
    k1 = ideal_generated_by(b, {e1}).elements
    k2 = ideal_generated_by(b, {e2}).elements
    m = regular_bimodule(b)
    prod = left_product(k2, m, within=k1)
    e1e2 = b.mul(e1, e2)
    assert prod.elements == ideal_generated_by(b, {e1e2}).elements
    assert len(prod) == 2


def test_product_of_submodules():
    r = zn(4)
    m = regular_bimodule(r)
    theta = BalancedProduct(m, m, m, r.mul_table)
    two = ideal_generated_by(r, {2}).elements
    assert product_of_submodules(theta, two, two) == frozenset({0})
