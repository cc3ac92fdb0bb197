from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from singerlat.geometry import (
    Disconnected,
    IncidenceError,
    IncidenceStructure,
    complete_bipartite,
    graph_metrics,
    incidence_graph,
    order_of,
    verify_generalized_ngon,
)


def _nx_metrics(i: IncidenceStructure):
    g = nx.Graph()
    g.add_nodes_from(range(i.n_points + i.n_lines))
    g.add_edges_from((p, i.n_points + l) for p, l in i.flags)
    cycles = nx.minimum_cycle_basis(g)
    girth = min((len(c) for c in cycles), default=None)
    return nx.diameter(g), girth


def test_fano_plane(plane_of):
    i = plane_of(2).structure
    assert graph_metrics(incidence_graph(i)) == (3, 6)
    assert order_of(i) == (2, 2)
    assert verify_generalized_ngon(i, 3).passed


def test_complete_bipartite_is_digon():
    k = complete_bipartite(3)
    assert verify_generalized_ngon(k, 2).passed
    assert order_of(k) == (2, 2)


def test_disconnected_is_reported():
    i = IncidenceStructure.from_flags(2, 2, [(0, 0), (1, 1)])
    with pytest.raises(Disconnected):
        graph_metrics(incidence_graph(i))
    assert not verify_generalized_ngon(i, 3).passed


def test_tree_has_no_girth():
    i = IncidenceStructure.from_flags(2, 1, [(0, 0), (1, 0)])
    assert graph_metrics(incidence_graph(i)) == (2, None)


def test_flag_out_of_range():
    with pytest.raises(IncidenceError):
        IncidenceStructure.from_flags(1, 1, [(0, 3)])


def test_text_roundtrip(plane_of):
    i = plane_of(3).structure
    assert IncidenceStructure.from_text(i.to_text()) == i


def test_dual_of_plane_is_plane(plane_of):
    assert verify_generalized_ngon(plane_of(3).structure.dual(), 3).passed


@pytest.mark.parametrize("q", [2, 3, 4])
def test_plane_metrics_match_networkx(plane_of, q):
    i = plane_of(q).structure
    assert graph_metrics(incidence_graph(i)) == _nx_metrics(i)


def test_quadrangle_metrics_match_networkx(quadrangle_of):
    i = quadrangle_of(3).slanted
    assert graph_metrics(incidence_graph(i)) == _nx_metrics(i)


@st.composite
def connected_incidences(draw):
    n, m = draw(st.integers(1, 6)), draw(st.integers(1, 6))
    flags = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, m - 1)), min_size=1))
    return IncidenceStructure.from_flags(n, m, flags)


@given(connected_incidences())
@settings(max_examples=150, deadline=None)
def test_random_metrics_match_networkx(i):
    g = nx.Graph()
    g.add_nodes_from(range(i.n_points + i.n_lines))
    g.add_edges_from((p, i.n_points + l) for p, l in i.flags)
    if not nx.is_connected(g):
        with pytest.raises(Disconnected):
            graph_metrics(incidence_graph(i))
        return
    assert graph_metrics(incidence_graph(i)) == _nx_metrics(i)
