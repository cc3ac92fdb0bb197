from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from singerlat.snf import determinant, invariants_by_minors, matmul, smith_normal_form


def matrices(max_rows=5, max_cols=5, lo=-9, hi=9):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_identity_and_zero():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).invariants == (1, 1, 1)
    assert smith_normal_form([[0, 0], [0, 0]]).invariants == ()


def test_two_by_two_example():
    # gcd of entries 2, gcd of 2x2 minors |-8| = 8
    assert smith_normal_form([[2, 4], [6, 8]]).invariants == (2, 4)
    assert invariants_by_minors([[2, 4], [6, 8]]) == (2, 4)


def test_blowup_is_exact():
    big = [[10**30 + 1, 3], [7, 10**29]]
    inv = smith_normal_form(big).invariants
    assert inv[0] * inv[1] == abs(determinant(big))


def _is_unimodular(m):
    return abs(determinant(m)) == 1


def _check_form(m, form):
    inv = form.invariants
    assert all(d > 0 for d in inv)
    assert all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1))
    assert matmul(matmul(form.left, m), form.right) == form.diagonal
    assert _is_unimodular(form.left) and _is_unimodular(form.right)
    for i, row in enumerate(form.diagonal):
        for j, x in enumerate(row):
            assert x == (inv[i] if i == j and i < len(inv) else 0)


@given(matrices())
@settings(max_examples=300, deadline=None)
def test_snf_matches_minor_oracle(m):
    form = smith_normal_form(m, transforms=True)
    assert form.invariants == invariants_by_minors(m)
    _check_form(m, form)


def test_all_small_sign_patterns_exhaustively():
    # every 2x2 matrix over a coarse grid of [-9, 9]
    grid = [-9, -4, -1, 0, 1, 3, 6, 9]
    for a, b, c, d in itertools.product(grid, repeat=4):
        m = [[a, b], [c, d]]
        assert smith_normal_form(m).invariants == invariants_by_minors(m)


@pytest.mark.parametrize("m", [[[5]], [[0, 3]], [[4], [6]], [[2, 0, 0], [0, 3, 0], [0, 0, 5]]])
def test_small_cases(m):
    assert smith_normal_form(m).invariants == invariants_by_minors(m)
