from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from singerlat.ffield import (
    DivisionByZero,
    NotPrimePower,
    factor_prime_power,
    field_arith,
    make_field,
    multiplicative_order,
    primitive_element,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


@pytest.mark.parametrize("q,expected", [(2, (2, 1)), (9, (3, 2)), (64, (2, 6)), (49, (7, 2))])
def test_factor_prime_power(q, expected):
    assert factor_prime_power(q) == expected


@pytest.mark.parametrize("q", [0, 1, 6, 12, 100])
def test_non_prime_powers_rejected(q):
    with pytest.raises(NotPrimePower):
        make_field(q)


def test_gf4_modulus_and_table():
    F = make_field(4)
    assert F.modulus == (1, 1, 1)
    # alpha^2 = alpha + 1 with alpha coded as 2
    assert F.mul(2, 2) == 3
    assert F.mul(2, 3) == 1


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_exhaustive(q):
    F = make_field(q)
    els = range(q)
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", ORDERS)
def test_primitive_element_generates(q):
    F = make_field(q)
    g = primitive_element(F)
    assert multiplicative_order(g) == q - 1
    assert len({F.power(g.code, k) for k in range(q - 1)}) == q - 1


def test_zero_has_no_inverse():
    F = make_field(5)
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(DivisionByZero):
        multiplicative_order(F.zero)


def test_frobenius_is_additive_in_characteristic_two():
    F = make_field(8)
    for a, b in itertools.product(range(8), repeat=2):
        assert F.mul(F.add(a, b), F.add(a, b)) == F.add(F.mul(a, a), F.mul(b, b))


@given(st.sampled_from(ORDERS), st.data())
def test_distributivity(q, data):
    F = make_field(q)
    a, b, c = (F.element(data.draw(st.integers(0, q - 1))) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert field_arith("add", a, b) == a + b
    assert field_arith("neg", a) + a == F.zero


@given(st.sampled_from([3, 4, 9, 16]), st.data())
def test_prime_subfield_closed(q, data):
    F = make_field(q)
    p = F.characteristic
    sub = [c for c in range(q) if F.is_subfield_element(c, p)]
    assert len(sub) == p
    a, b = data.draw(st.sampled_from(sub)), data.draw(st.sampled_from(sub))
    assert F.add(a, b) in sub and F.mul(a, b) in sub
