"""Tower field construction and arithmetic."""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from lrsc.gf import (BaseField, TowerField, is_prime_power, make_tower,
                     smallest_prime_power_at_least)

from conftest import naive_tower_add, naive_tower_mul


def test_prime_power_detection():
    assert is_prime_power(3) == (3, 1)
    assert is_prime_power(4) == (2, 2)
    assert is_prime_power(81) == (3, 4)
    assert is_prime_power(6) is None
    assert is_prime_power(1) is None
    assert smallest_prime_power_at_least(6) == 7
    assert smallest_prime_power_at_least(2) == 2


def test_tower_shapes():
    t = make_tower(3, 2)
    assert (t.levels, t.order) == (1, 3)
    t = make_tower(4, 3)
    assert (t.levels, t.order) == (2, 16)
    assert [t.level_order(j) for j in range(3)] == [4, 4, 16]
    t = make_tower(3, 4)
    assert (t.levels, t.order) == (3, 81)
    assert [t.level_order(j) for j in range(4)] == [3, 3, 9, 81]


def test_tower_rejects_bad_orders():
    with pytest.raises(ValueError):
        make_tower(6, 2)
    with pytest.raises(ValueError):
        make_tower(3, 1)


def test_gf3_arithmetic():
    f = make_tower(3, 2)
    assert f.mul(2, 2) == 1
    assert f.add(2, 2) == 1
    assert f.neg(1) == 2
    assert f.inv(2) == 2
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_gf9_generator_square():
    # level-2 quadratic over GF(3) is t^2 + 1, so the adjoined root squares to -1
    f = make_tower(3, 3)
    assert f.quads[2] == (0, 1)
    assert f.mul(3, 3) == 2


def test_gf16_generator_square_reduces_by_quadratic():
    # chosen quadratic is t^2 + w*t + 1 over GF(4), so beta^2 = w*beta + 1,
    # which is digits (1, 2) = 9 in the int encoding
    f = make_tower(4, 3)
    assert f.quads[2] == (2, 1)
    assert f.mul(4, 4) == 9


def test_gf16_mul_table_against_polynomial_oracle():
    f = make_tower(4, 3)
    for x in range(16):
        for y in range(16):
            assert f.mul(x, y) == naive_tower_mul(f, x, y)
            assert f.add(x, y) == naive_tower_add(f, x, y)


@pytest.mark.parametrize("q,a", [(3, 4), (5, 3), (7, 4)])
def test_mul_against_naive_oracle_sampled(q, a):
    f = make_tower(q, a)
    rng = random.Random(2024)
    for _ in range(250):
        x = rng.randrange(f.order)
        y = rng.randrange(f.order)
        assert f.mul(x, y) == naive_tower_mul(f, x, y)
        assert f.add(x, y) == naive_tower_add(f, x, y)


@pytest.mark.parametrize("q,a", [(3, 3), (4, 3), (5, 4)])
def test_field_axioms_exhaustive_or_sampled(q, a):
    f = make_tower(q, a)
    rng = random.Random(1)
    triples = (
        itertools.product(range(f.order), repeat=3)
        if f.order <= 16
        else ((rng.randrange(f.order), rng.randrange(f.order), rng.randrange(f.order))
              for _ in range(400))
    )
    for x, y, z in triples:
        assert f.mul(x, y) == f.mul(y, x)
        assert f.add(x, y) == f.add(y, x)
        assert f.mul(x, f.mul(y, z)) == f.mul(f.mul(x, y), z)
        assert f.add(x, f.add(y, z)) == f.add(f.add(x, y), z)
        assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))


@pytest.mark.parametrize("q,a", [(4, 3), (3, 4)])
def test_inverses(q, a):
    f = make_tower(q, a)
    for x in range(1, f.order):
        assert f.mul(x, f.inv(x)) == 1
        assert f.add(x, f.neg(x)) == 0


def test_level_scalars():
    f = make_tower(4, 3)
    assert f.level_scalar(0) == 1
    assert f.level_scalar(1) == 1
    alpha = f.level_scalar(2)
    assert alpha == 4
    assert not f.in_subfield(alpha, 1)
    assert f.in_subfield(alpha, 2)

    f = make_tower(3, 4)
    a3 = f.level_scalar(3)
    coeffs = f.element_coeffs(a3)
    assert any(c for c in coeffs[2:])
    assert not f.in_subfield(a3, 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
@pytest.mark.parametrize("a", [2, 3])
def test_subfield_agrees_with_frobenius_exhaustive(q, a):
    f = make_tower(q, a)
    for x in range(f.order):
        for j in range(1, f.levels + 1):
            assert f.in_subfield(x, j) == f.frobenius_fixed(x, j)


def test_subfield_agrees_with_frobenius_sampled_large():
    f = make_tower(3, 4)
    rng = random.Random(5)
    for x in list(range(f.order))[:81]:
        for j in range(1, f.levels + 1):
            assert f.in_subfield(x, j) == f.frobenius_fixed(x, j)
    f = make_tower(7, 4)
    for _ in range(200):
        x = rng.randrange(f.order)
        for j in range(1, f.levels + 1):
            assert f.in_subfield(x, j) == f.frobenius_fixed(x, j)


def test_subfield_closure_and_cyclic_structure():
    # each level's subset must be closed under multiplication and contain an
    # element of full multiplicative order; with the Frobenius fixed-point
    # test this pins the subset as the unique field of that size
    f = make_tower(3, 4)
    for j in range(1, f.levels + 1):
        size = f.level_order(j)
        for x in range(size):
            for y in range(x, size):
                assert f.mul(x, y) < size
        orders = set()
        for x in range(1, size):
            o = 1
            cur = x
            while cur != 1:
                cur = f.mul(cur, x)
                o += 1
            orders.add(o)
        assert max(orders) == size - 1


def test_embedded_base_arithmetic_matches_base():
    f = make_tower(4, 3)
    b = f.base
    for x in range(4):
        for y in range(4):
            assert f.mul(x, y) == b.mul(x, y)
            assert f.add(x, y) == b.add(x, y)


def test_determinism():
    f1 = make_tower(4, 3)
    f2 = make_tower(4, 3)
    assert f1.base.poly == f2.base.poly
    assert f1.quads == f2.quads
    assert all(f1.mul(x, y) == f2.mul(x, y) for x in range(16) for y in range(16))
    g1 = make_tower(3, 4)
    g2 = make_tower(3, 4)
    assert g1.quads == g2.quads
    assert g1.level_scalar(3) == g2.level_scalar(3)


def test_element_text_format():
    f = make_tower(3, 4)
    assert f.format_element(11) == "[2,0,1,0]"
    assert f.parse_element("[2,0,1,0]") == 11
    for x in (0, 1, 5, 80):
        assert f.parse_element(f.format_element(x)) == x
    with pytest.raises(ValueError):
        f.parse_element("[3,0,1,0]")
    with pytest.raises(ValueError):
        f.parse_element("[1,0]")
    with pytest.raises(ValueError):
        f.parse_element("2,0,1,0")

    g = make_tower(4, 3)   # GF(p) coefficients, not GF(q): dim 2 over GF(4) -> 4 bits
    assert len(g.element_coeffs(9)) == 4
    assert g.parse_element(g.format_element(9)) == 9


def test_base_field_irreducibles():
    # smallest by constant-first lexicographic order on the coefficients
    assert BaseField(4).poly == (1, 1, 1)
    assert BaseField(8).poly == (1, 0, 1, 1)       # t^3 + t^2 + 1
    assert BaseField(9).poly == (1, 0, 1)          # t^2 + 1
    assert BaseField(16).poly == (1, 0, 0, 1, 1)   # t^4 + t^3 + 1


def test_large_tower_without_log_tables():
    # above the table limit the slow recursive path must still be exact
    f = TowerField(BaseField(5), 4)   # order 5^8 = 390625
    assert f.order == 390625
    assert f._log is None
    rng = random.Random(14)
    for _ in range(25):
        x, y = rng.randrange(f.order), rng.randrange(f.order)
        assert f.mul(x, y) == naive_tower_mul(f, x, y)
        if x:
            assert f.mul(x, f.inv(x)) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80))
def test_hypothesis_ring_axioms_gf81(x, y, z):
    f = make_tower(3, 4)
    assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
    assert f.sub(f.add(x, y), y) == x


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2400), st.integers(0, 4))
def test_hypothesis_pow_matches_repeated_mul(x, e):
    f = make_tower(7, 4)
    acc = 1
    for _ in range(e):
        acc = f.mul(acc, x)
    assert f.pow(x, e) == acc
