"""Complexes of groups over scwols, their fundamental groups and local developments."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .groups import (
    FiniteGroup,
    GroupHom,
    Presentation,
    Word,
    cyclic_group,
    direct_product,
    free_reduce,
    gen_power,
    inverse,
    occurrences,
    substitute,
    cyclic_reduce,
)
from .reports import VerificationReport
from .scwol import Scwol, join, point
from .singer import (
    OrderedDifferenceSet,
    SymplecticQuadrangleBundle,
    heisenberg_word_for,
    line_labels,
    mat_mul,
    singer_group,
)


class NotASpanningTree(ValueError):
    pass


class ModulusMismatch(ValueError):
    pass


class OrderMismatch(ValueError):
    pass


@dataclass(eq=False)
class ComplexOfGroups:
    """Vertex groups, monomorphisms (generator images as words) and twists (words).

    Generator names must be distinct across vertex groups.  ``protected``
    names the generators that presentation normalisation must keep.
    """

    scwol: Scwol
    groups: dict
    morphisms: dict = field(default_factory=dict)   # edge -> {source gen: word in target gens}
    twists: dict = field(default_factory=dict)      # (a, b) -> word in G_{t(a)}; absent = 1
    protected: tuple = ()
    name: str = ""
    annotations: dict = field(default_factory=dict)

    def __post_init__(self):
        owner = {}
        for v in self.scwol.vertices:
            g = self.groups.get(v)
            if g is None:
                raise ValueError(f"no group for vertex {v!r}")
            for n in g.generators:
                if n in owner:
                    raise ValueError(f"generator {n!r} used by two vertex groups")
                owner[n] = v
        self.owner = owner
        for a in self.scwol.edges:
            src = self.groups[self.scwol.source[a]]
            if src.generators and a not in self.morphisms:
                raise ValueError(f"edge {a!r} has a nontrivial source group but no monomorphism")
        for pair in self.twists:
            if pair not in self.scwol.composition:
                raise ValueError(f"twist given for non-composable pair {pair!r}")

    def group(self, v) -> FiniteGroup:
        return self.groups[v]

    @cached_property
    def _homs(self) -> dict:
        out = {}
        for a in self.scwol.edges:
            s, t = self.scwol.source[a], self.scwol.target[a]
            out[a] = GroupHom(self.groups[s], self.groups[t], self.morphisms.get(a, {}))
        return out

    def hom(self, a) -> GroupHom:
        return self._homs[a]

    def twist_word(self, a, b) -> Word:
        return self.twists.get((a, b), ())

    def twist(self, a, b) -> int:
        return self.groups[self.scwol.target[a]].evaluate(self.twist_word(a, b))

    def verify(self) -> VerificationReport:
        rep = VerificationReport(f"complex of groups {self.name}".strip())
        inj = hom = True
        for a in self.scwol.edges:
            h = self.hom(a)
            hom &= h.is_homomorphism()
            inj &= h.is_injective()
        rep.add("monomorphisms are homomorphisms", hom, "complex of groups definition")
        rep.add("monomorphisms injective", inj, "complex of groups definition")
        rep.add("vertex group relators hold", all(g.check_relators() for g in self.groups.values()),
                "vertex group presentations")
        # Ad(g_ab) psi_ab = psi_a psi_b on every element
        compat = True
        S = self.scwol
        for (a, b), ab in S.composition.items():
            G = self.groups[S.target[a]]
            g = self.twist(a, b)
            gi = G.inv(g)
            for x in range(self.groups[S.source[b]].order):
                lhs = G.op(G.op(g, self.hom(ab)(x)), gi)
                if lhs != self.hom(a)(self.hom(b)(x)):
                    compat = False
        rep.add("twist compatibility", compat, "compatibility with composition")
        cocycle = True
        for (a, b), ab in S.composition.items():
            for c in S.in_edges(S.source[b]):
                bc = S.composition[(b, c)]
                G = self.groups[S.target[a]]
                lhs = G.op(self.hom(a)(self.twist(b, c)), self.twist(a, bc))
                rhs = G.op(self.twist(a, b), self.twist(ab, c))
                cocycle &= lhs == rhs
        rep.add("cocycle condition", cocycle, "compatibility on composable triples")
        return rep


# -- fundamental group -------------------------------------------------------------

def k_name(a) -> str:
    return "k[" + "".join(str(a).split()) + "]"


def check_spanning_tree(s: Scwol, tree: Iterable) -> frozenset:
    tree = frozenset(tree)
    if not tree <= set(s.edges):
        raise NotASpanningTree("tree contains unknown edges")
    if len(tree) != len(s.vertices) - 1:
        raise NotASpanningTree(f"tree has {len(tree)} edges, need {len(s.vertices) - 1}")
    parent = {v: v for v in s.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a in tree:
        x, y = find(s.source[a]), find(s.target[a])
        if x == y:
            raise NotASpanningTree("tree contains a cycle")
        parent[x] = y
    return tree


def raw_fundamental_group_relators(c: ComplexOfGroups, tree) -> tuple[list[str], list[Word], list]:
    """Generators, relators and relator origins exactly as in the definition.

    The origin of a relator is ``("group", v)``, ``("twist", (a, b))`` or
    ``("edge", a)`` for the conjugation relator k_a s k_a^-1 = psi_a(s).
    """
    S = c.scwol
    tree = check_spanning_tree(S, tree)
    gens = [n for v in S.vertices for n in c.groups[v].generators]
    gens += [k_name(a) for a in S.edges if a not in tree]

    def k(a) -> Word:
        return () if a in tree else ((k_name(a), 1),)

    rels: list[Word] = []
    origin: list = []
    for v in S.vertices:
        for r in c.groups[v].relators:
            rels.append(r)
            origin.append(("group", v))
    for (a, b), ab in S.composition.items():
        rels.append(k(a) + k(b) + inverse(k(ab)) + inverse(c.twist_word(a, b)))
        origin.append(("twist", (a, b)))
    for a in S.edges:
        for s, img in sorted(c.morphisms.get(a, {}).items()):
            rels.append(k(a) + ((s, 1),) + inverse(k(a)) + inverse(img))
            origin.append(("edge", a))
    return gens, [free_reduce(r) for r in rels], origin


def _solve_for(r: Word, g: str) -> Word:
    """Given r containing g exactly once, return w with g = w."""
    i = next(t for t, (n, _) in enumerate(r) if n == g)
    e = r[i][1]
    rest = r[i + 1:] + r[:i]  # g^e * rest = 1 after rotation
    return free_reduce(inverse(rest) if e > 0 else rest)


class _Tietze:
    """Relators with origins under generator elimination."""

    def __init__(self, gens, rels, origin):
        self.gens = list(gens)
        self.order = {g: i for i, g in enumerate(self.gens)}
        self.rels = []
        self.origin = []
        for r, o in zip(rels, origin):
            r = cyclic_reduce(r)
            if r:
                self.rels.append(r)
                self.origin.append(o)

    def eliminate(self, g: str, w: Word, ri: int) -> None:
        self.rels.pop(ri)
        self.origin.pop(ri)
        rels, origin = [], []
        for r, o in zip(self.rels, self.origin):
            r = cyclic_reduce(substitute(r, g, w))
            if r:
                rels.append(r)
                origin.append(o)
        self.rels, self.origin = rels, origin
        self.gens.remove(g)

    def greedy(self, eliminable: set[str]) -> None:
        """Repeatedly eliminate the generator with the shortest replacement.

        Ties: k-generators first, then generator order, then relator order.
        """
        while True:
            best = None
            for ri, r in enumerate(self.rels):
                for g in sorted({n for n, _ in r if n in eliminable and n in self.order}, key=self.order.__getitem__):
                    if g not in self.gens or occurrences(r, g) != 1:
                        continue
                    w = _solve_for(r, g)
                    key = (len(w), 0 if g.startswith("k[") else 1, self.order[g], ri)
                    if best is None or key < best[0]:
                        best = (key, g, ri, w)
            if best is None:
                return
            _, g, ri, w = best
            self.eliminate(g, w, ri)

    def groupwise(self, names: list[str], edges: list) -> bool:
        """Eliminate all of ``names`` through the conjugation relators of one edge.

        The edge with the shortest total replacement wins (ties: edge order).
        """
        names = [g for g in names if g in self.gens]
        if not names:
            return False
        own = set(names)
        best = None
        for pos, a in enumerate(edges):
            picks = {}
            for ri, (r, o) in enumerate(zip(self.rels, self.origin)):
                if o != ("edge", a):
                    continue
                inside = [n for n, _ in r if n in own]
                if len(inside) == 1 and inside[0] not in picks:
                    picks[inside[0]] = ri
            if set(picks) != own:
                continue
            total = sum(len(self.rels[ri]) for ri in picks.values())
            if best is None or (total, pos) < best[0]:
                best = ((total, pos), picks)
        if best is None:
            return False
        picks = best[1]
        repl = {g: (self.rels[ri], g) for g, ri in picks.items()}
        for g in names:
            r, _ = repl[g]
            ri = self.rels.index(r)
            self.eliminate(g, _solve_for(r, g), ri)
        return True


def _drop_local(gens, rels, kept_groups) -> Presentation:
    kept = list(kept_groups)
    defining = set()
    for G in kept:
        defining |= {cyclic_reduce(r) for r in G.relators}
    out = []
    for r in rels:
        names = {n for n, _ in r}
        home = next((G for G in kept if names <= set(G.generators)), None)
        if home is not None and r not in defining and home.evaluate(r) == 0:
            continue
        out.append(r)
    return Presentation(tuple(gens), tuple(out)).canonical()


def normalize_presentation(gens: list[str], rels: list[Word], eliminable: set[str],
                           kept_groups: Iterable[FiniteGroup] = ()) -> Presentation:
    """Greedy Tietze elimination, then drop relators that are trivial in one kept group."""
    t = _Tietze(gens, rels, [None] * len(rels))
    t.greedy(set(eliminable))
    return _drop_local(t.gens, t.rels, kept_groups)


def fundamental_group_presentation(c: ComplexOfGroups, tree) -> Presentation:
    """Presentation of the fundamental group, simplified to a canonical form.

    k-generators are eliminated first, then each unprotected vertex group as a
    whole through one outgoing edge, then whatever remains greedily.  Finally
    relators that hold in a single protected vertex group (other than its own
    defining relators) are dropped and the relator set is canonicalised.
    """
    gens, rels, origin = raw_fundamental_group_relators(c, tree)
    t = _Tietze(gens, rels, origin)
    t.greedy({g for g in gens if g.startswith("k[")})
    protected = set(c.protected)
    S = c.scwol
    for v in S.vertices:
        names = [n for n in c.groups[v].generators if n not in protected]
        if names:
            t.groupwise(names, S.out_edges(v))
    t.greedy({g for g in t.gens if g not in protected})
    kept = [G for G in c.groups.values() if G.generators and set(G.generators) <= protected]
    return _drop_local(t.gens, t.rels, kept)


# -- links and local developments ------------------------------------------------------

def upper_link(c: ComplexOfGroups, v) -> Scwol:
    """Vertices (coset of psi_a(G_i(a)), a) with t(a) = v; edges (coset of psi_ab, a, b)."""
    S = c.scwol
    G = c.groups[v]
    incoming = S.in_edges(v)
    cosets = {}
    where = {}
    for a in incoming:
        H = c.hom(a).image()
        cs = G.left_cosets(H)
        cosets[a] = cs
        where[a] = {x: k for k, coset in enumerate(cs) for x in coset}
    V = [("U", a, k) for a in incoming for k in range(len(cosets[a]))]
    E = []
    for a in incoming:
        for b in S.in_edges(S.source[a]):
            ab = S.composition[(a, b)]
            gi = G.inv(c.twist(a, b))
            for k, coset in enumerate(cosets[ab]):
                targets = {where[a][G.op(g, gi)] for g in coset}
                if len(targets) != 1:
                    raise ValueError("terminal coset not well defined; twist compatibility fails")
                E.append((("U", a, b, k), ("U", ab, k), ("U", a, targets.pop())))
    return Scwol.build(V, E)


def lower_link(s: Scwol, v) -> Scwol:
    """Vertices: edges leaving v; edges: composable (a, b) with i(b) = v, from b to ab."""
    out = s.out_edges(v)
    V = [("D", a) for a in out]
    E = []
    for b in out:
        for a in s.out_edges(s.target[b]):
            E.append((("D", a, b), ("D", b), ("D", s.composition[(a, b)])))
    return Scwol.build(V, E)


def local_development(c: ComplexOfGroups, v) -> Scwol:
    """Upper link, then the vertex, then the lower link, joined in that order."""
    up = upper_link(c, v)
    low = lower_link(c.scwol, v)
    return join(join(up, point(("v", v)), ("U", "V")), low, ("X", "L"))


def upper_link_size(c: ComplexOfGroups, v) -> int:
    G = c.groups[v]
    return sum(G.order // len(c.hom(a).image()) for a in c.scwol.in_edges(v))


# -- builders --------------------------------------------------------------------

def _edge(t, s) -> str:
    return f"{t}<-{s}"


def a2_scwol(q: int) -> Scwol:
    J = range(q + 1)
    V = ["v1", "v2", "v3", "e1", "e2", "e3"] + [f"f{j}" for j in J]
    E, comp = [], {}
    for al in (1, 2, 3):
        for be in (1, 2, 3):
            if al != be:
                E.append((_edge(f"v{al}", f"e{be}"), f"e{be}", f"v{al}"))
    for j in J:
        for al in (1, 2, 3):
            E.append((_edge(f"v{al}", f"f{j}"), f"f{j}", f"v{al}"))
        for be in (1, 2, 3):
            E.append((_edge(f"e{be}", f"f{j}"), f"f{j}", f"e{be}"))
        for al in (1, 2, 3):
            for be in (1, 2, 3):
                if al != be:
                    comp[(_edge(f"v{al}", f"e{be}"), _edge(f"e{be}", f"f{j}"))] = _edge(f"v{al}", f"f{j}")
    return Scwol.build(V, E, comp)


def a2_tree(q: int) -> frozenset:
    t = {"v1<-e2", "v1<-e3", "v2<-e3", "v2<-e1", "v3<-e1"}
    t |= {f"e3<-f{j}" for j in range(q + 1)}
    return frozenset(t)


def build_a2_complex(q: int, ds1: OrderedDifferenceSet, ds2: OrderedDifferenceSet,
                     ds3: OrderedDifferenceSet) -> ComplexOfGroups:
    n = q * q + q + 1
    dss = (ds1, ds2, ds3)
    for d in dss:
        if d.modulus != n:
            raise ModulusMismatch(f"difference set modulus {d.modulus} != {n}")
        if len(d) != q + 1:
            raise ValueError("difference sets need q+1 entries")
    S = a2_scwol(q)
    groups = {v: FiniteGroup([()], lambda a, b: (), {}, (), "1") for v in S.vertices}
    for al in (1, 2, 3):
        groups[f"v{al}"] = cyclic_group(n, f"s{al}", f"S{al}")
    twists = {}
    for j in range(q + 1):
        for al in (1, 2, 3):
            for be in (1, 2, 3):
                if al != be and (be - al) % 3 == 2:
                    twists[(_edge(f"v{al}", f"e{be}"), _edge(f"e{be}", f"f{j}"))] = gen_power(
                        f"s{al}", -dss[al - 1][j])
    return ComplexOfGroups(S, groups, {}, twists, ("s1", "s2", "s3"), f"A2 q={q}",
                           {"angles": "pi/3 at v1, v2, v3"})


def _check_lambda(q: int, lam) -> list[str]:
    lam = list(lam)
    if sorted(lam) != sorted(line_labels(q)):
        raise ValueError(f"{lam} is not a bijection onto the line representatives")
    return lam


def stabilizer_group(b: SymplecticQuadrangleBundle, label: str, names: list[str], prime: str = "",
                     E: FiniteGroup | None = None) -> FiniteGroup:
    """The stabiliser of a representative line as an abstract group on ``names``.

    ``E`` is the Singer group of ``b`` with generator suffix ``prime``; built if omitted.
    """
    F = b.field
    E = singer_group(b, prime) if E is None else E
    words = heisenberg_word_for(b.q, label, prime)
    if len(words) != len(names):
        raise ValueError("wrong number of generator names")
    mats = {n: E.elements[E.evaluate(w)] for n, w in zip(names, words)}
    G = FiniteGroup.generated(mats, lambda A, B: mat_mul(F, A, B), E.elements[0])
    if b.q % 2 == 1:
        rels = [gen_power(names[0], b.q)]
    else:
        rels = [gen_power(n, 2) for n in names]
        rels += [((x, 1), (y, 1), (x, -1), (y, -1)) for i, x in enumerate(names) for y in names[i + 1:]]
    G.relators = tuple(rels)
    G.name = f"Stab{prime}{label}"
    return G


def _stab_names(q: int, stem: str) -> list[str]:
    if q % 2 == 1:
        return [stem]
    e = q.bit_length() - 1
    return [f"{stem}_{k}" for k in range(e)]


def c2_two_panel_scwol(q: int) -> Scwol:
    J = range(q + 2)
    V = ["v", "v'", "w", "e", "e'"] + [f"e{j}" for j in J] + [f"f{j}" for j in J]
    E = [("w<-e", "e", "w"), ("w<-e'", "e'", "w"), ("v<-e", "e", "v"), ("v'<-e'", "e'", "v'")]
    comp = {}
    for j in J:
        f, ej = f"f{j}", f"e{j}"
        E += [(_edge("v", ej), ej, "v"), (_edge("v'", ej), ej, "v'")]
        E += [(_edge(x, f), f, x) for x in ("v", "v'", "w", "e", "e'", ej)]
        comp[("w<-e", _edge("e", f))] = _edge("w", f)
        comp[("w<-e'", _edge("e'", f))] = _edge("w", f)
        comp[("v<-e", _edge("e", f))] = _edge("v", f)
        comp[("v'<-e'", _edge("e'", f))] = _edge("v'", f)
        comp[(_edge("v", ej), _edge(ej, f))] = _edge("v", f)
        comp[(_edge("v'", ej), _edge(ej, f))] = _edge("v'", f)
    return Scwol.build(V, E, comp)


def c2_two_panel_tree(q: int) -> frozenset:
    t = {"w<-e", "w<-e'", "v<-e", "v'<-e'"}
    for j in range(q + 2):
        t |= {f"w<-f{j}", f"e{j}<-f{j}"}
    return frozenset(t)


def _check_bundles(q, b1, b2):
    if b1.q != q or b2.q != q:
        raise OrderMismatch("bundles must have order q")


def build_c2_two_panel_complex(q: int, bundle: SymplecticQuadrangleBundle, bundle2: SymplecticQuadrangleBundle,
                               lam, lam2) -> ComplexOfGroups:
    _check_bundles(q, bundle, bundle2)
    lam, lam2 = _check_lambda(q, lam), _check_lambda(q, lam2)
    S = c2_two_panel_scwol(q)
    trivial = lambda: FiniteGroup([()], lambda a, b: (), {}, (), "1")  # noqa: E731
    groups = {v: trivial() for v in S.vertices}
    groups["v"] = singer_group(bundle, "")
    groups["v'"] = singer_group(bundle2, "'")
    groups["w"] = cyclic_group(q + 2, "c", "C")
    morph, twists = {}, {}
    for j in range(q + 2):
        names = _stab_names(q, f"u{j}")
        groups[f"e{j}"] = stabilizer_group(bundle, lam[j], names, "", groups["v"])
        morph[_edge("v", f"e{j}")] = dict(zip(names, heisenberg_word_for(q, lam[j], "")))
        morph[_edge("v'", f"e{j}")] = dict(zip(names, heisenberg_word_for(q, lam2[j], "'")))
        twists[("w<-e", _edge("e", f"f{j}"))] = gen_power("c", j)
    prot = tuple(groups["v"].generators) + tuple(groups["v'"].generators) + ("c",)
    return ComplexOfGroups(S, groups, morph, twists, prot, f"C2 two-panel q={q}",
                           {"angles": "pi/4 at v, v'; pi/2 at w", "lambda": lam, "lambda'": lam2})


def c2_one_panel_scwol(q: int) -> Scwol:
    J = range(q + 2)
    V = ["v", "v'", "e"] + [f"v{j}" for j in J] + [f"e{j}" for j in J] + [f"e'{j}" for j in J]
    V += [f"f{j}" for j in J]
    E = [("v<-e", "e", "v"), ("v'<-e", "e", "v'")]
    comp = {}
    for j in J:
        vj, ej, epj, f = f"v{j}", f"e{j}", f"e'{j}", f"f{j}"
        E += [(_edge("v", ej), ej, "v"), (_edge(vj, ej), ej, vj)]
        E += [(_edge("v'", epj), epj, "v'"), (_edge(vj, epj), epj, vj)]
        E += [(_edge(x, f), f, x) for x in ("v", "v'", vj, "e", ej, epj)]
        comp[("v<-e", _edge("e", f))] = _edge("v", f)
        comp[("v'<-e", _edge("e", f))] = _edge("v'", f)
        comp[(_edge("v", ej), _edge(ej, f))] = _edge("v", f)
        comp[(_edge(vj, ej), _edge(ej, f))] = _edge(vj, f)
        comp[(_edge("v'", epj), _edge(epj, f))] = _edge("v'", f)
        comp[(_edge(vj, epj), _edge(epj, f))] = _edge(vj, f)
    return Scwol.build(V, E, comp)


def c2_one_panel_tree(q: int) -> frozenset:
    t = {"v<-e", "v'<-e"}
    for j in range(q + 2):
        t |= {f"e<-f{j}", f"v{j}<-f{j}", f"e{j}<-f{j}", f"e'{j}<-f{j}"}
    return frozenset(t)


def build_c2_one_panel_complex(q: int, bundle: SymplecticQuadrangleBundle, bundle2: SymplecticQuadrangleBundle,
                               lam, lam2) -> ComplexOfGroups:
    _check_bundles(q, bundle, bundle2)
    lam, lam2 = _check_lambda(q, lam), _check_lambda(q, lam2)
    S = c2_one_panel_scwol(q)
    trivial = lambda: FiniteGroup([()], lambda a, b: (), {}, (), "1")  # noqa: E731
    groups = {v: trivial() for v in S.vertices}
    groups["v"] = singer_group(bundle, "")
    groups["v'"] = singer_group(bundle2, "'")
    morph = {}
    for j in range(q + 2):
        un, upn = _stab_names(q, f"u{j}"), _stab_names(q, f"u'{j}")
        an, bn = _stab_names(q, f"a{j}"), _stab_names(q, f"b{j}")
        E, E2 = groups["v"], groups["v'"]
        groups[f"e{j}"] = stabilizer_group(bundle, lam[j], un, "", E)
        groups[f"e'{j}"] = stabilizer_group(bundle2, lam2[j], upn, "'", E2)
        groups[f"v{j}"] = direct_product(stabilizer_group(bundle, lam[j], an, "", E),
                                         stabilizer_group(bundle2, lam2[j], bn, "'", E2), f"V{j}")
        morph[_edge("v", f"e{j}")] = dict(zip(un, heisenberg_word_for(q, lam[j], "")))
        morph[_edge(f"v{j}", f"e{j}")] = {u: ((a, 1),) for u, a in zip(un, an)}
        morph[_edge("v'", f"e'{j}")] = dict(zip(upn, heisenberg_word_for(q, lam2[j], "'")))
        morph[_edge(f"v{j}", f"e'{j}")] = {u: ((b, 1),) for u, b in zip(upn, bn)}
    prot = tuple(groups["v"].generators) + tuple(groups["v'"].generators)
    return ComplexOfGroups(S, groups, morph, {}, prot, f"C2 one-panel q={q}",
                           {"angles": "pi/4 at v, v'; pi/2 at v_j", "lambda": lam, "lambda'": lam2})
