"""Small categories without loops.

Edges point from ``source`` (the initial vertex) to ``target`` (the terminal vertex); an arrow written
``x <- y`` has source y and target x.  Vertices and edges are arbitrary
hashable labels.  A k-simplex of the geometric realisation is a chain
(a_1, ..., a_k) of composable edges, i.e. source(a_j) == target(a_{j+1}).
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Hashable

from .snf import smith_normal_form


class ScwolError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Scwol:
    vertices: tuple
    edges: tuple
    source: dict
    target: dict
    composition: dict = field(default_factory=dict)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ScwolError("duplicate vertices")
        if len(set(self.edges)) != len(self.edges):
            raise ScwolError("duplicate edges")
        if vs & set(self.edges):
            raise ScwolError("vertex and edge labels overlap")
        for a in self.edges:
            if self.source[a] not in vs or self.target[a] not in vs:
                raise ScwolError(f"edge {a!r} has an unknown endpoint")
            if self.source[a] == self.target[a]:
                raise ScwolError(f"edge {a!r} is a loop")
        for a, b in self.composable_pairs:
            ab = self.composition.get((a, b))
            if ab is None:
                raise ScwolError(f"composable pair {(a, b)!r} has no composite")
            if self.source[ab] != self.source[b] or self.target[ab] != self.target[a]:
                raise ScwolError(f"composite of {(a, b)!r} has wrong endpoints")
        for (a, b) in self.composition:
            if self.source[a] != self.target[b]:
                raise ScwolError(f"composition given for non-composable {(a, b)!r}")
        for (a, b), (b2, c) in product(self.composition, self.composition):
            if b == b2:
                if self.composition[(self.composition[(a, b)], c)] != self.composition[(a, self.composition[(b, c)])]:
                    raise ScwolError("composition is not associative")

    @classmethod
    def build(cls, vertices, edges, composition=None) -> Scwol:
        """``edges`` is an iterable of (label, source, target)."""
        edges = list(edges)
        return cls(
            tuple(vertices),
            tuple(e for e, _, _ in edges),
            {e: s for e, s, _ in edges},
            {e: t for e, _, t in edges},
            dict(composition or {}),
        )

    @cached_property
    def _in(self):
        d = defaultdict(list)
        for a in self.edges:
            d[self.target[a]].append(a)
        return d

    @cached_property
    def _out(self):
        d = defaultdict(list)
        for a in self.edges:
            d[self.source[a]].append(a)
        return d

    def in_edges(self, v) -> list:
        return self._in.get(v, [])

    def out_edges(self, v) -> list:
        return self._out.get(v, [])

    @cached_property
    def composable_pairs(self) -> list[tuple]:
        return [(a, b) for b in self.edges for a in self.out_edges(self.target[b])]

    def chains(self, k: int) -> list[tuple]:
        """All k-chains of composable edges (the k-simplices)."""
        if k == 0:
            return [(v,) for v in self.vertices]
        out = [(a,) for a in self.edges]
        for _ in range(k - 1):
            out = [c + (b,) for c in out for b in self.in_edges(self.source[c[-1]])]
        return out

    @property
    def dimension(self) -> int:
        k = 0
        while self.chains(k + 1):
            k += 1
        return k

    def __repr__(self):
        return f"Scwol(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def to_text(self) -> str:
        """Edge list plus composition table, labels rendered with repr()."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        eidx = {a: i for i, a in enumerate(self.edges)}
        lines = [f"vertices {len(self.vertices)} edges {len(self.edges)}"]
        lines += [f"edge {eidx[a]} {idx[self.source[a]]} {idx[self.target[a]]}" for a in self.edges]
        lines += [
            f"compose {eidx[a]} {eidx[b]} {eidx[ab]}"
            for (a, b), ab in sorted(self.composition.items(), key=lambda kv: (eidx[kv[0][0]], eidx[kv[0][1]]))
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Scwol:
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        head = rows[0]
        if head[0] != "vertices" or head[2] != "edges":
            raise ScwolError("bad scwol header")
        nv = int(head[1])
        edges, comp = [], {}
        for r in rows[1:]:
            if r[0] == "edge":
                edges.append((int(r[1]), int(r[2]), int(r[3])))
            elif r[0] == "compose":
                comp[(f"a{r[1]}", f"a{r[2]}")] = f"a{r[3]}"
            else:
                raise ScwolError(f"unknown record {r[0]!r}")
        return cls.build(range(nv), [(f"a{e}", s, t) for e, s, t in edges], comp)


def point(v: Hashable = "*") -> Scwol:
    return Scwol.build([v], [])


def join(x: Scwol, y: Scwol, tag=("L", "R")) -> Scwol:
    """Join with every cross edge running from a vertex of x to a vertex of y.

    Labels are wrapped as (tag, label) so both factors stay disjoint; cross
    edges are ("J", u, w).  The realisation is the simplicial join.
    """
    lt, rt = tag
    V = [(lt, v) for v in x.vertices] + [(rt, v) for v in y.vertices]
    E = [((lt, a), (lt, x.source[a]), (lt, x.target[a])) for a in x.edges]
    E += [((rt, a), (rt, y.source[a]), (rt, y.target[a])) for a in y.edges]
    E += [(("J", u, w), (lt, u), (rt, w)) for u in x.vertices for w in y.vertices]
    comp = {((lt, a), (lt, b)): (lt, ab) for (a, b), ab in x.composition.items()}
    comp.update({((rt, a), (rt, b)): (rt, ab) for (a, b), ab in y.composition.items()})
    for u in x.vertices:
        for w in y.vertices:
            for a in y.out_edges(w):
                comp[((rt, a), ("J", u, w))] = ("J", u, y.target[a])
            for b in x.in_edges(u):
                comp[(("J", u, w), (lt, b))] = ("J", x.source[b], w)
    return Scwol.build(V, E, comp)


def cone(x: Scwol, apex: Hashable = "apex") -> Scwol:
    """Cone with apex as a sink: every vertex of x gets an edge to the apex."""
    return join(x, point(apex))


def relabel(x: Scwol) -> Scwol:
    """Same scwol with vertices 0..n-1 and edges ('a', k); useful for printing."""
    vi = {v: i for i, v in enumerate(x.vertices)}
    ei = {a: ("a", k) for k, a in enumerate(x.edges)}
    return Scwol.build(
        range(len(vi)),
        [(ei[a], vi[x.source[a]], vi[x.target[a]]) for a in x.edges],
        {(ei[a], ei[b]): ei[ab] for (a, b), ab in x.composition.items()},
    )


# -- isomorphism --------------------------------------------------------------

@dataclass
class ScwolIsomorphism:
    vertex_map: dict
    edge_map: dict


def _refine(x: Scwol, y: Scwol, cx: dict | None = None, cy: dict | None = None):
    """Colour refinement run on both scwols with a shared palette."""
    def init(s):
        return {v: (len(s.in_edges(v)), len(s.out_edges(v))) for v in s.vertices}

    cx = init(x) if cx is None else cx
    cy = init(y) if cy is None else cy
    n_colours = len(set(cx.values()) | set(cy.values()))
    while True:
        def sig(s, c):
            return {
                v: (c[v],
                    tuple(sorted(c[s.source[a]] for a in s.in_edges(v))),
                    tuple(sorted(c[s.target[a]] for a in s.out_edges(v))))
                for v in s.vertices
            }
        sx, sy = sig(x, cx), sig(y, cy)
        palette = {s: i for i, s in enumerate(sorted(set(sx.values()) | set(sy.values()), key=repr))}
        nx_, ny_ = {v: palette[s] for v, s in sx.items()}, {v: palette[s] for v, s in sy.items()}
        k = len(palette)
        if k == n_colours:
            return nx_, ny_
        cx, cy, n_colours = nx_, ny_, k


def _edge_map(x: Scwol, y: Scwol, fwd: dict) -> dict | None:
    groups_x, groups_y = defaultdict(list), defaultdict(list)
    for a in x.edges:
        groups_x[(fwd[x.source[a]], fwd[x.target[a]])].append(a)
    for b in y.edges:
        groups_y[(y.source[b], y.target[b])].append(b)
    if {k: len(v) for k, v in groups_x.items()} != {k: len(v) for k, v in groups_y.items()}:
        return None
    keys = list(groups_x)
    options = [permutations(groups_y[k]) for k in keys]
    for choice in product(*options):
        em = {}
        for k, perm in zip(keys, choice):
            em.update(zip(groups_x[k], perm))
        if all(em[ab] == y.composition.get((em[a], em[b])) for (a, b), ab in x.composition.items()):
            return em
    return None


def scwol_iso(x: Scwol, y: Scwol) -> ScwolIsomorphism | None:
    """Search for an isomorphism x -> y commuting with source, target and composition.

    Individualisation-refinement: colour refinement on both sides, then
    branch on the smallest non-singleton colour class, individualising one
    vertex of x against each candidate of y and refining again.
    """
    if len(x.vertices) != len(y.vertices) or len(x.edges) != len(y.edges):
        return None
    if len(x.composition) != len(y.composition):
        return None

    def search(cx, cy):
        cx, cy = _refine(x, y, cx, cy)
        if Counter(cx.values()) != Counter(cy.values()):
            return None
        classes = defaultdict(list)
        for v, c in cx.items():
            classes[c].append(v)
        open_ = [c for c, vs in classes.items() if len(vs) > 1]
        if not open_:
            back = {c: w for w, c in cy.items()}
            fwd = {v: back[c] for v, c in cx.items()}
            em = _edge_map(x, y, fwd)
            return None if em is None else (fwd, em)
        c = min(open_, key=lambda k: (len(classes[k]), k))
        v = min(classes[c], key=repr)
        fresh = max(max(cx.values()), max(cy.values())) + 1
        for w in sorted((w for w, k in cy.items() if k == c), key=repr):
            found = search({**cx, v: fresh}, {**cy, w: fresh})
            if found is not None:
                return found
        return None

    found = search(None, None)
    if found is None:
        return None
    return ScwolIsomorphism(*found)


# -- homology -----------------------------------------------------------------

def boundary_matrix(s: Scwol, k: int) -> list[list[int]]:
    """Matrix of the boundary map C_k -> C_{k-1}; rows index (k-1)-chains.

    The face dropping vertex j of a chain is: drop the first edge (j=0), drop
    the last edge (j=k), or compose the two edges meeting at vertex j.
    """
    rows = s.chains(k - 1)
    ridx = {c: i for i, c in enumerate(rows)}
    cols = s.chains(k)
    M = [[0] * len(cols) for _ in rows]
    for j, c in enumerate(cols):
        if k == 1:
            (a,) = c
            M[ridx[(s.source[a],)]][j] += 1
            M[ridx[(s.target[a],)]][j] -= 1
            continue
        for pos in range(k + 1):
            if pos == 0:
                face = c[1:]
            elif pos == k:
                face = c[:-1]
            else:
                face = c[: pos - 1] + (s.composition[(c[pos - 1], c[pos])],) + c[pos + 1:]
            M[ridx[face]][j] += (-1) ** pos
    return M


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = ([f"Z^{self.free_rank}"] if self.free_rank > 1 else ["Z"] * self.free_rank)
        parts += [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) or "0"


def scwol_homology(s: Scwol, max_degree: int | None = None) -> list[HomologyGroup]:
    """Integral homology H_0..H_d of the realisation."""
    d = s.dimension if max_degree is None else max_degree
    sizes = [len(s.chains(k)) for k in range(d + 2)]
    forms = [None] + [smith_normal_form(boundary_matrix(s, k)) for k in range(1, d + 2)]
    out = []
    for k in range(d + 1):
        rank_out = forms[k].rank if k >= 1 else 0
        inv_in = forms[k + 1].invariants if sizes[k + 1] and sizes[k] else ()
        free = sizes[k] - rank_out - len(inv_in)
        out.append(HomologyGroup(free, tuple(x for x in inv_in if x > 1)))
    return out
