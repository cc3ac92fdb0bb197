from __future__ import annotations

import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from singerlat.cog import a2_scwol, c2_one_panel_scwol, c2_two_panel_scwol
from singerlat.groups import Presentation, gen_power
from singerlat.homology import (
    abelian_group,
    a2_homology_report,
    c2_h1_check,
    difference_matrix,
    h1_of_presentation,
    invariant_factors,
    is_perfect,
    kernel_mod_n,
    rational_betti_from_quotient,
    same_group,
    search_perfect_orderings,
)
from singerlat.lattices import a2_cyclic_lattice, c2_one_panel_lattice, c2_two_panel_lattice
from singerlat.scwol import point
from singerlat.singer import OrderedDifferenceSet, line_labels

D7 = OrderedDifferenceSet(7, (0, 1, 3))
D13 = OrderedDifferenceSet(13, (0, 1, 3, 9))


def hom_count(p: Presentation, k: int) -> int:
    """|Hom(G, Z/k)| by trying every assignment of generators."""
    m = p.exponent_matrix()
    return sum(1 for x in itertools.product(range(k), repeat=len(p.generators))
               if all(sum(a * b for a, b in zip(row, x)) % k == 0 for row in m))


def hom_count_of(g, k: int) -> int:
    out = k ** g.free_rank
    for d in g.torsion:
        out *= gcd(d, k)
    return out


def test_invariant_factors():
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([4, 2, 3]) == (2, 12)
    assert invariant_factors([]) == ()
    assert str(abelian_group(0, [7, 7])) == "Z/7 x Z/7"


def test_gamma_examples():
    assert same_group(h1_of_presentation(a2_cyclic_lattice(2, D7, D7, D7).presentation), abelian_group(0, [7, 7]))
    d1 = D7.reordered((0, 2, 1))
    assert same_group(h1_of_presentation(a2_cyclic_lattice(2, d1, D7, D7).presentation), abelian_group(0, [7]))
    assert same_group(h1_of_presentation(a2_cyclic_lattice(3, D13, D13, D13).presentation),
                      abelian_group(0, [13, 13]))


def test_free_group_not_perfect():
    p = Presentation(("a",), ())
    assert h1_of_presentation(p) == abelian_group(1)
    assert not is_perfect(p)


def test_kernel_examples():
    assert same_group(kernel_mod_n([[0, 0, 0]], 7), abelian_group(0, [7, 7, 7]))
    assert same_group(kernel_mod_n(difference_matrix([D7] * 3), 7), abelian_group(0, [7, 7]))
    assert same_group(kernel_mod_n(difference_matrix([D13] * 3), 13, "exhaustive"), abelian_group(0, [13, 13]))


@given(st.lists(st.lists(st.integers(0, 20), min_size=3, max_size=3), min_size=1, max_size=4),
       st.sampled_from([6, 7, 12, 13, 21]))
@settings(max_examples=60, deadline=None)
def test_kernel_methods_agree(d, n):
    assert same_group(kernel_mod_n(d, n, "exhaustive"), kernel_mod_n(d, n, "snf"))


def _orderings(d, count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        out = []
        for _ in range(3):
            tail = list(range(1, len(d)))
            rng.shuffle(tail)
            out.append(d.reordered([0] + tail))
        yield out


@pytest.mark.parametrize("q", [2, 3, 4])
def test_h1_is_kernel_of_difference_matrix(ds_of, q):
    for dss in _orderings(ds_of(q), 4, q):
        h1 = h1_of_presentation(a2_cyclic_lattice(q, *dss).presentation)
        assert same_group(h1, kernel_mod_n(difference_matrix(dss), q * q + q + 1))
        assert h1.free_rank == 0 and all((q * q + q + 1) % t == 0 for t in h1.torsion)


def test_a2_report():
    rep = a2_homology_report(2, [D7] * 3)
    assert rep.passed
    assert rep["H2"].status == "paper-asserted"


@pytest.mark.parametrize("q,expected", [(3, [3] * 4), (5, [5] * 4)])
def test_one_panel_h1_against_hom_counts(q, expected):
    labs = line_labels(q)
    p = c2_one_panel_lattice(q, labs, labs[::-1]).presentation
    h1 = h1_of_presentation(p)
    assert same_group(h1, abelian_group(0, expected))
    for k in (q, q * q):
        assert hom_count(p, k) == hom_count_of(h1, k)


def test_one_panel_q4_elementary_abelian():
    labs = line_labels(4)
    p = c2_one_panel_lattice(4, labs, labs).presentation
    h1 = h1_of_presentation(p)
    assert same_group(h1, abelian_group(0, [2] * 12))
    assert c2_h1_check(4, c2_one_panel_lattice(4, labs, labs)).passed


def test_two_panel_h1_against_hom_counts():
    labs = line_labels(3)
    p = c2_two_panel_lattice(3, labs, labs).presentation
    h1 = h1_of_presentation(p)
    assert same_group(h1, abelian_group(0, [3, 15]))
    for k in (3, 5, 9, 15):
        assert hom_count(p, k) == hom_count_of(h1, k)


def test_betti_numbers():
    assert rational_betti_from_quotient(a2_scwol(2)) == (1, 0, 2)
    assert rational_betti_from_quotient(a2_scwol(3)) == (1, 0, 3)
    assert rational_betti_from_quotient(c2_one_panel_scwol(3)) == (1, 0, 0)
    assert rational_betti_from_quotient(c2_two_panel_scwol(3)) == (1, 0, 0)
    assert rational_betti_from_quotient(point()) == (1,)


def test_perfect_search_q5(ds_of):
    found = search_perfect_orderings(5, ds_of(5))
    assert found is not None
    assert [d.entries for d in found] == [(0, 14, 19, 21, 27, 30), (0, 14, 19, 21, 30, 27), (0, 14, 19, 27, 21, 30)]
    assert is_perfect(a2_cyclic_lattice(5, *found).presentation)
    assert same_group(kernel_mod_n(difference_matrix(found), 31), abelian_group(0))


def test_perfect_search_limit(ds_of):
    # q=2 has only Z/7 quotients: no ordering is perfect
    assert search_perfect_orderings(2, ds_of(2)) is None


def test_power_relator_only():
    p = Presentation(("s",), (gen_power("s", 12),))
    assert h1_of_presentation(p) == abelian_group(0, [12])
