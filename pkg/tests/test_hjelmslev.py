from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from singerlat.geometry import verify_generalized_ngon
from singerlat.hjelmslev import (
    HjelmslevPlane,
    InvalidM,
    adjacency,
    base_plane,
    choose_m,
    cmsz_counts,
    first_four_arc,
    general_adjacency,
    induced_structure,
    iota,
    psi,
    qp_discrimination,
    splitting_report,
    substructure_closure,
)
from singerlat.singer import OrderedDifferenceSet

D7 = OrderedDifferenceSet(7, (0, 1, 3))
D13 = OrderedDifferenceSet(13, (0, 1, 3, 9))
H2 = HjelmslevPlane.from_difference_set(D7)
H3 = HjelmslevPlane.from_difference_set(D13)


def _plane(ds_of, q):
    return HjelmslevPlane.from_difference_set(ds_of(q))


def test_sizes_and_coordinates():
    assert len(H2.points) == len(H2.lines) == 28
    assert all(-x % 7 not in D7.as_set for _, x in H2.points)
    assert all(x not in D7.as_set for _, x in H2.lines)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_point_count(ds_of, q):
    h = _plane(ds_of, q)
    assert len(h.points) == q * q * (q * q + q + 1)


def test_explicit_adjacency_example():
    # (0, 1) against (0, 2): k1 - j1 = 0 in Delta; sets {2,1,6}, {6,5,3}, {0,6,4} share 6
    assert adjacency(H2, (0, 1), (0, 2))
    assert not adjacency(H2, (0, 1), (2, 2))


def test_choose_m_examples():
    assert choose_m(D7.as_set, 7) == 2
    assert choose_m(D13.as_set, 13) == 2
    with pytest.raises(InvalidM):
        iota(H2, 0, "point", 1)


def test_psi_fibres():
    fibre = [p for p in H3.points if psi(H3, p) == 5]
    assert len(fibre) == 9
    assert psi(H3, (5, 2)) == 5


@pytest.mark.parametrize("q", [2, 3, 4])
def test_cmsz(ds_of, q):
    rep = cmsz_counts(_plane(ds_of, q), jobs=2)
    assert rep.passed and rep.data["counts"] == (1, q)


def test_cmsz_detects_flipped_bit():
    h = HjelmslevPlane.from_difference_set(D7)
    a = h.incidence.copy()
    a[0, 0] ^= 1
    h.__dict__["incidence"] = a
    assert not cmsz_counts(h).passed


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_splitting(ds_of, q):
    rep = splitting_report(_plane(ds_of, q))
    assert rep.passed


def test_splitting_q2_exhaustive_by_hand():
    m = choose_m(D7.as_set, 7)
    for j, k in itertools.product(range(7), repeat=2):
        assert ((k - j) % 7 in D7.as_set) == adjacency(H2, iota(H2, j, "point", m), iota(H2, k, "line", m))


def test_base_plane_is_a_plane():
    assert verify_generalized_ngon(base_plane(H3), 3).passed


def test_closure_small_cases():
    P, L = substructure_closure(H2, [(0, 1)])
    assert P == {(0, 1)} and not L
    P, L = substructure_closure(H2, [(0, 1), (1, 1)])
    assert (0, 1) in P and (1, 1) in P and len(L) >= 1


@pytest.mark.parametrize("h,size", [(H2, 7), (H3, 13)])
def test_four_arc_closure_is_image_of_iota(h, size):
    m = choose_m(h.delta, h.n)
    seeds = [iota(h, j, "point", m) for j in first_four_arc(h)]
    P, L = substructure_closure(h, seeds)
    assert len(P) == len(L) == size
    assert P == {iota(h, j, "point", m) for j in range(h.n)}
    assert verify_generalized_ngon(induced_structure(h, P, L), 3).passed


def test_q4_closure_is_a_fano_subplane(ds_of):
    # four points in general position generate a plane over the prime field
    rep = qp_discrimination(_plane(ds_of, 4))
    assert rep["closure has order (p,p)"].passed
    assert rep.data["closure_points"] == 7


def test_first_four_arcs(ds_of):
    assert first_four_arc(_plane(ds_of, 2)) == (0, 1, 2, 5)
    assert first_four_arc(_plane(ds_of, 4)) == (0, 1, 2, 3)


@pytest.mark.parametrize("q", [2, 3])
def test_discrimination_prime(ds_of, q):
    rep = qp_discrimination(_plane(ds_of, q))
    assert rep.passed
    assert "incompatible with Q_p" in rep.data["conclusion"]


@st.composite
def closure_inputs(draw):
    pts = draw(st.lists(st.sampled_from(H2.points), min_size=1, max_size=4, unique=True))
    return pts


@given(closure_inputs())
@settings(max_examples=40, deadline=None)
def test_closure_idempotent_and_monotone(seeds):
    P, L = substructure_closure(H2, seeds)
    assert substructure_closure(H2, P, L) == (P, L)
    assert substructure_closure(H2, seeds, schedule="rounds") == (P, L)
    P2, L2 = substructure_closure(H2, seeds[:-1]) if len(seeds) > 1 else (frozenset(), frozenset())
    assert P2 <= P and L2 <= L


@given(st.integers(0, 12), st.sampled_from(H3.points), st.sampled_from(H3.lines))
@settings(max_examples=200, deadline=None)
def test_adjacency_translation_invariant(c, p, l):
    shifted_p, shifted_l = ((p[0] + c) % 13, p[1]), ((l[0] + c) % 13, l[1])
    assert adjacency(H3, p, l) == adjacency(H3, shifted_p, shifted_l)


def test_general_criterion_agrees_when_aligned(ds_of):
    for q in (2, 3):
        h = _plane(ds_of, q)
        for p, l in itertools.product(h.points[:40], h.lines):
            assert general_adjacency(h, p, l) == adjacency(h, p, l)


def test_misaligned_orderings_use_general_criterion():
    d1 = D7.reordered((0, 2, 1))
    h = HjelmslevPlane.from_ordered(d1, D7, D7)
    assert not h.aligned
    assert cmsz_counts(h).passed
    assert np.array_equal(h.incidence[0], [general_adjacency(h, h.points[0], l) for l in h.lines])


def test_unequal_sets_rejected():
    other = OrderedDifferenceSet(7, (0, 2, 3))
    with pytest.raises(ValueError):
        HjelmslevPlane.from_ordered(D7, other, D7)
