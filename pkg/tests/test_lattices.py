from __future__ import annotations

import pytest

from singerlat.groups import gen_power, parse_word, word
from singerlat.lattices import (
    BuildingGraphTemplate,
    LatticeSpec,
    SizeMismatch,
    UnnormalizedDifferenceSet,
    a2_cyclic_lattice,
    a2_general_lattice,
    building_graph_template,
    c2_one_panel_lattice,
    c2_two_panel_lattice,
    singer_presentation,
)
from singerlat.singer import OrderedDifferenceSet, UnsupportedOrder, line_labels

D7 = OrderedDifferenceSet(7, (0, 1, 3))
D13 = OrderedDifferenceSet(13, (0, 1, 3, 9))


def test_gamma2_relators():
    p = a2_cyclic_lattice(2, D7, D7, D7).presentation
    assert p.generators == ("s1", "s2", "s3")
    assert p.relators[3] == parse_word("s1 s2 s3")
    assert p.relators[4] == parse_word("s1^3 s2^3 s3^3")
    assert p.relators[:3] == tuple(gen_power(f"s{a}", 7) for a in (1, 2, 3))


def test_gamma3_relators():
    p = a2_cyclic_lattice(3, D13, D13, D13).presentation
    assert [p.relators[k] for k in (3, 4, 5)] == [parse_word(f"s1^{e} s2^{e} s3^{e}") for e in (1, 3, 9)]
    assert len(p.relators) == 3 + 3


def test_unnormalized_rejected():
    with pytest.raises(UnnormalizedDifferenceSet):
        a2_cyclic_lattice(2, OrderedDifferenceSet(7, (1, 0, 3)), D7, D7)


def test_wrong_modulus_rejected():
    with pytest.raises(ValueError):
        a2_cyclic_lattice(3, D7, D7, D7)


def test_general_builder_specialises_to_cyclic():
    groups = [singer_like(f"s{a}") for a in (1, 2, 3)]
    ds = [[gen_power(f"s{a}", x) for x in D7.entries] for a in (1, 2, 3)]
    spec = a2_general_lattice(groups, *ds)
    assert spec.presentation.relators == a2_cyclic_lattice(2, D7, D7, D7).presentation.relators
    assert len(spec.presentation.relators) == 5


def singer_like(name):
    from singerlat.groups import Presentation
    return Presentation((name,), (gen_power(name, 7),))


def test_general_builder_errors():
    groups = [singer_like(f"s{a}") for a in (1, 2, 3)]
    ds = [[gen_power(f"s{a}", x) for x in D7.entries] for a in (1, 2, 3)]
    with pytest.raises(SizeMismatch):
        a2_general_lattice(groups, ds[0][:2], ds[1], ds[2])
    shifted = [gen_power("s1", 1)] + ds[0][1:]
    with pytest.raises(ValueError):
        a2_general_lattice(groups, shifted, ds[1], ds[2])


def test_two_panel_q3_shape():
    labs = line_labels(3)
    p = c2_two_panel_lattice(3, labs, labs).presentation
    assert p.generators == ("x", "y", "x'", "y'", "c")
    assert gen_power("c", 5) in p.relators
    # 5 + 5 group relators, c^5, one conjugation relator per j
    assert len(p.relators) == 5 + 5 + 1 + 5


def test_two_panel_q4_generator_count():
    labs = line_labels(4)
    p = c2_two_panel_lattice(4, labs, labs).presentation
    assert len(p.generators) == 13


def test_one_panel_q3_shape():
    labs = line_labels(3)
    p = c2_one_panel_lattice(3, labs, labs[::-1]).presentation
    assert p.generators == ("x", "y", "x'", "y'")
    assert len(p.relators) - 2 * len(singer_presentation(3).relators) == 5


@pytest.mark.parametrize("q", [2, 9, 6])
def test_c2_unsupported_orders(q):
    with pytest.raises((UnsupportedOrder, ValueError)):
        c2_two_panel_lattice(q, ["0"], ["0"])


def test_c2_requires_bijection():
    labs = line_labels(3)
    with pytest.raises(ValueError):
        c2_one_panel_lattice(3, labs[:-1] + labs[:1], labs)


def test_invalid_convention():
    labs = line_labels(3)
    with pytest.raises(ValueError):
        c2_two_panel_lattice(3, labs, labs, convention="other")


def test_unknown_family():
    with pytest.raises(ValueError):
        LatticeSpec("B3", 2, {}, singer_like("s"))


def test_templates():
    t = building_graph_template(a2_cyclic_lattice(2, D7, D7, D7))
    assert sorted(t.vertex_classes) == ["S1", "S2", "S3"] and len(t.edge_rules) == 3
    labs = line_labels(3)
    t2 = building_graph_template(c2_two_panel_lattice(3, labs, labs))
    assert sorted(t2.vertex_classes) == ["C", "S", "S'"]
    assert t2.vertex_classes["C"] == [word(("c", 1))]
    t3 = building_graph_template(c2_one_panel_lattice(3, labs, labs))
    assert len(t3.vertex_classes) == 2 + 5
    for t_ in (t, t2, t3):
        assert BuildingGraphTemplate.from_json(t_.to_json()) == t_


def test_template_rejects_unknown_class():
    with pytest.raises(ValueError):
        BuildingGraphTemplate({"A": []}, [("A", "B")])


def test_spec_text_names_family():
    text = a2_cyclic_lattice(2, D7, D7, D7).to_text()
    assert text.startswith("family = A2_cyclic")
    assert "s1 s2 s3" in text
