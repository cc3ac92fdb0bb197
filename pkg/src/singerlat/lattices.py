"""Direct presentations of the Ã₂ and C̃₂ lattices and their building-graph templates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .ffield import factor_prime_power
from .groups import Presentation, Word, commutator, free_reduce, gen_power, inverse
from .singer import (
    OrderedDifferenceSet,
    UnsupportedOrder,
    heisenberg_word_for,
    line_labels,
    singer_generator_names,
    singer_relators,
)

FAMILIES = ("A2_general", "A2_cyclic", "C2_two_panel", "C2_one_panel")


class UnnormalizedDifferenceSet(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


@dataclass
class LatticeSpec:
    family: str
    q: int
    inputs: dict
    presentation: Presentation
    instantiates: str = ""

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def to_text(self) -> str:
        head = [f"family = {self.family}", f"q = {self.q}", f"instantiates = {self.instantiates}"]
        return "\n".join(head) + "\n" + self.presentation.to_text()


def _check_modulus(q: int, dss) -> int:
    n = q * q + q + 1
    for d in dss:
        if d.modulus != n:
            raise ValueError(f"difference set modulus {d.modulus} != q^2+q+1 = {n}")
        if len(d) != q + 1:
            raise SizeMismatch(f"need q+1 = {q + 1} entries, got {len(d)}")
    return n


def a2_cyclic_lattice(q: int, ds1: OrderedDifferenceSet, ds2: OrderedDifferenceSet,
                      ds3: OrderedDifferenceSet) -> LatticeSpec:
    """<s1, s2, s3 | s_a^n, s1^d1(j) s2^d2(j) s3^d3(j) for j >= 1>."""
    dss = (ds1, ds2, ds3)
    n = _check_modulus(q, dss)
    for d in dss:
        if d[0] != 0:
            raise UnnormalizedDifferenceSet(f"first entry is {d[0]}, expected 0")
    names = ("s1", "s2", "s3")
    rels: list[Word] = [gen_power(s, n) for s in names]
    for j in range(1, q + 1):
        rels.append(sum((gen_power(s, d[j]) for s, d in zip(names, dss)), ()))
    return LatticeSpec("A2_cyclic", q, {"differences": [list(d.entries) for d in dss]},
                       Presentation(names, tuple(rels)), "panel-regular Ã₂ lattice, cyclic Singer groups")


def a2_general_lattice(groups: list[Presentation], d1: list[Word], d2: list[Word], d3: list[Word]) -> LatticeSpec:
    """Free product of three Singer group presentations modulo d1(j) d2(j) d3(j) for j >= 1."""
    if len(groups) != 3:
        raise ValueError("need three Singer group presentations")
    ds = (d1, d2, d3)
    sizes = {len(d) for d in ds}
    if len(sizes) != 1:
        raise SizeMismatch(f"ordered sets have sizes {[len(d) for d in ds]}")
    size = sizes.pop()
    q = size - 1
    for G, d in zip(groups, ds):
        if free_reduce(d[0]):
            raise ValueError("d(0) must be the identity")
        for w in d:
            if any(g not in G.generators for g, _ in w):
                raise ValueError("word uses generators outside its group")
    gens = tuple(g for G in groups for g in G.generators)
    rels = [r for G in groups for r in G.relators]
    for j in range(1, size):
        rels.append(d1[j] + d2[j] + d3[j])
    return LatticeSpec("A2_general", q, {"d": [[list(w) for w in d] for d in ds]},
                       Presentation(gens, tuple(rels)), "panel-regular Ã₂ lattice, general Singer groups")


def _c2_checks(q: int, lam, lam2) -> tuple[list[str], list[str]]:
    p, e = factor_prime_power(q)
    if q % 2 == 1 and e != 1:
        raise UnsupportedOrder("odd non-prime q has no finite Heisenberg presentation here")
    if q == 2:
        raise UnsupportedOrder("slanted symplectic quadrangles need q > 2")
    labels = sorted(line_labels(q))
    lam, lam2 = list(lam), list(lam2)
    for l in (lam, lam2):
        if sorted(l) != labels:
            raise ValueError(f"{l} is not a bijection onto the line representatives")
    return lam, lam2


def singer_presentation(q: int, prime: str = "") -> Presentation:
    return Presentation(tuple(singer_generator_names(q, prime)), tuple(singer_relators(q, prime)))


def c2_two_panel_lattice(q: int, lam, lam2, convention: str = "extracted") -> LatticeSpec:
    """S * S' * <c> modulo c^(q+2) and one conjugation relator per stabiliser generator.

    ``convention="extracted"`` gives c^j s' c^-j = s, the form obtained from
    the complex of groups with the twist c^j on w<-e<-f_j;
    ``convention="printed"`` gives c^j s c^-j = s'.  The two differ by c -> c^-1.
    """
    if convention not in ("extracted", "printed"):
        raise ValueError("convention is 'extracted' or 'printed'")
    lam, lam2 = _c2_checks(q, lam, lam2)
    S, S2 = singer_presentation(q), singer_presentation(q, "'")
    gens = S.generators + S2.generators + ("c",)
    rels = list(S.relators) + list(S2.relators) + [gen_power("c", q + 2)]
    for j in range(q + 2):
        cj = gen_power("c", j)
        for s, s2 in zip(heisenberg_word_for(q, lam[j]), heisenberg_word_for(q, lam2[j], "'")):
            if convention == "extracted":
                rels.append(cj + s2 + inverse(cj) + inverse(s))
            else:
                rels.append(cj + s + inverse(cj) + inverse(s2))
    return LatticeSpec("C2_two_panel", q, {"lambda": lam, "lambda'": lam2, "convention": convention},
                       Presentation(gens, tuple(free_reduce(r) for r in rels)),
                       "C̃₂ lattice, panel-regular on two panel types")


def c2_one_panel_lattice(q: int, lam, lam2) -> LatticeSpec:
    """S * S' modulo [s, s'] for each j and each pair of stabiliser generators."""
    lam, lam2 = _c2_checks(q, lam, lam2)
    S, S2 = singer_presentation(q), singer_presentation(q, "'")
    rels = list(S.relators) + list(S2.relators)
    for j in range(q + 2):
        for s in heisenberg_word_for(q, lam[j]):
            for s2 in heisenberg_word_for(q, lam2[j], "'"):
                rels.append(commutator(s, s2))
    return LatticeSpec("C2_one_panel", q, {"lambda": lam, "lambda'": lam2},
                       Presentation(S.generators + S2.generators, tuple(free_reduce(r) for r in rels)),
                       "C̃₂ lattice, panel-regular on one panel type")


# -- building graph templates ---------------------------------------------------------

@dataclass
class BuildingGraphTemplate:
    """Vertex classes are coset spaces Gamma/H (H named by its generators);
    every edge rule (A, B) stands for the edges (gA, gB), g in Gamma."""

    vertex_classes: dict = field(default_factory=dict)  # class name -> generator words of H
    edge_rules: list = field(default_factory=list)       # (class, class)

    def __post_init__(self):
        for a, b in self.edge_rules:
            if a not in self.vertex_classes or b not in self.vertex_classes:
                raise ValueError(f"edge rule ({a}, {b}) uses an undeclared class")

    def to_json(self) -> str:
        return json.dumps({
            "vertex_classes": {k: [[list(l) for l in w] for w in v] for k, v in self.vertex_classes.items()},
            "edge_rules": [list(r) for r in self.edge_rules],
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> BuildingGraphTemplate:
        d = json.loads(text)
        vc = {k: [tuple((g, e) for g, e in w) for w in v] for k, v in d["vertex_classes"].items()}
        return cls(vc, [tuple(r) for r in d["edge_rules"]])

    def __eq__(self, other):
        if not isinstance(other, BuildingGraphTemplate):
            return NotImplemented
        return (self.vertex_classes == other.vertex_classes
                and sorted(self.edge_rules) == sorted(other.edge_rules))


def building_graph_template(spec: LatticeSpec) -> BuildingGraphTemplate:
    q = spec.q
    if spec.family in ("A2_cyclic", "A2_general"):
        if spec.family == "A2_cyclic":
            groups = [[((s, 1),)] for s in ("s1", "s2", "s3")]
        else:
            gens = spec.presentation.generators
            # the three groups are consecutive blocks of equal size in the general builder
            k = len(gens) // 3
            groups = [[((g, 1),) for g in gens[i * k:(i + 1) * k]] for i in range(3)]
        vc = {f"S{i + 1}": g for i, g in enumerate(groups)}
        return BuildingGraphTemplate(vc, [("S1", "S2"), ("S2", "S3"), ("S3", "S1")])
    S = [((g, 1),) for g in singer_generator_names(q)]
    S2 = [((g, 1),) for g in singer_generator_names(q, "'")]
    if spec.family == "C2_two_panel":
        vc = {"S": S, "S'": S2, "C": [(("c", 1),)]}
        return BuildingGraphTemplate(vc, [("S", "S'"), ("S", "C"), ("S'", "C")])
    vc = {"S": S, "S'": S2}
    rules = [("S", "S'")]
    lam, lam2 = spec.inputs["lambda"], spec.inputs["lambda'"]
    for j in range(q + 2):
        vc[f"V{j}"] = heisenberg_word_for(q, lam[j]) + heisenberg_word_for(q, lam2[j], "'")
        rules += [("S", f"V{j}"), ("S'", f"V{j}")]
    return BuildingGraphTemplate(vc, rules)
