"""Incidence structures and generalised polygons."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .reports import VerificationReport
from .scwol import Scwol


class Disconnected(ValueError):
    pass


class IncidenceError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class IncidenceStructure:
    """Points 0..n-1, lines 0..m-1 and a set of flags (point, line).

    ``point_labels`` / ``line_labels`` optionally carry the mathematical
    objects behind the indices.
    """

    n_points: int
    n_lines: int
    flags: frozenset
    point_labels: tuple = field(default=(), compare=False)
    line_labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        for p, l in self.flags:
            if not (0 <= p < self.n_points and 0 <= l < self.n_lines):
                raise IncidenceError(f"flag {(p, l)} out of range")
        if self.point_labels and len(self.point_labels) != self.n_points:
            raise IncidenceError("wrong number of point labels")
        if self.line_labels and len(self.line_labels) != self.n_lines:
            raise IncidenceError("wrong number of line labels")

    @classmethod
    def from_flags(cls, n_points: int, n_lines: int, flags, point_labels=(), line_labels=()) -> IncidenceStructure:
        flags = list(flags)
        fs = frozenset(flags)
        if len(fs) != len(flags):
            raise IncidenceError("duplicate flags")
        return cls(n_points, n_lines, fs, tuple(point_labels), tuple(line_labels))

    @classmethod
    def from_lines(cls, points, lines) -> IncidenceStructure:
        """Build from explicit point labels and lines given as collections of point labels."""
        points = list(points)
        pidx = {p: i for i, p in enumerate(points)}
        lines = [frozenset(l) for l in lines]
        flags = [(pidx[p], j) for j, l in enumerate(lines) for p in sorted(l, key=pidx.__getitem__)]
        return cls.from_flags(len(points), len(lines), flags, points, lines)

    def __eq__(self, other):
        if not isinstance(other, IncidenceStructure):
            return NotImplemented
        return (self.n_points, self.n_lines, self.flags) == (other.n_points, other.n_lines, other.flags)

    def __hash__(self):
        return hash((self.n_points, self.n_lines, self.flags))

    @cached_property
    def points_on(self) -> list[list[int]]:
        out = [[] for _ in range(self.n_lines)]
        for p, l in sorted(self.flags):
            out[l].append(p)
        return out

    @cached_property
    def lines_through(self) -> list[list[int]]:
        out = [[] for _ in range(self.n_points)]
        for p, l in sorted(self.flags, key=lambda f: (f[1], f[0])):
            out[p].append(l)
        return out

    def incident(self, p: int, l: int) -> bool:
        return (p, l) in self.flags

    def dual(self) -> IncidenceStructure:
        return IncidenceStructure(self.n_lines, self.n_points, frozenset((l, p) for p, l in self.flags),
                                  self.line_labels, self.point_labels)

    def to_text(self) -> str:
        lines = [f"points {self.n_points} lines {self.n_lines}"]
        lines += [f"flag {p} {l}" for p, l in sorted(self.flags)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> IncidenceStructure:
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if len(rows[0]) != 4 or rows[0][0] != "points" or rows[0][2] != "lines":
            raise IncidenceError("bad header")
        flags = []
        for r in rows[1:]:
            if len(r) != 3 or r[0] != "flag":
                raise IncidenceError(f"bad record {' '.join(r)!r}")
            flags.append((int(r[1]), int(r[2])))
        return cls.from_flags(int(rows[0][1]), int(rows[0][3]), flags)


@dataclass(frozen=True)
class BipartiteGraph:
    """Vertices 0..n_left-1 are points, n_left.. are lines."""

    n_left: int
    n_right: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.n_left <= v < self.n_left + self.n_right):
                raise ValueError(f"edge {(u, v)} does not join the two sides")

    @property
    def n_vertices(self) -> int:
        return self.n_left + self.n_right

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def incidence_graph(i: IncidenceStructure) -> BipartiteGraph:
    return BipartiteGraph(i.n_points, i.n_lines, tuple((p, i.n_points + l) for p, l in sorted(i.flags)))


def complete_bipartite(k: int, m: int | None = None) -> IncidenceStructure:
    """Every point on every line: the generalised 2-gon."""
    m = k if m is None else m
    return IncidenceStructure.from_flags(k, m, [(p, l) for p in range(k) for l in range(m)])


def _bfs(adj, s):
    dist = [-1] * len(adj)
    parent = [-1] * len(adj)
    dist[s] = 0
    queue = deque([s])
    shortest = None
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
            elif w != parent[u]:
                c = dist[u] + dist[w] + 1
                if shortest is None or c < shortest:
                    shortest = c
    return dist, shortest


def graph_metrics(g: BipartiteGraph) -> tuple[int, int | None]:
    """(diameter, girth) by BFS from every vertex; girth is None for a forest."""
    adj = g.adjacency
    if g.n_vertices == 0:
        return 0, None
    diameter, girth = 0, None
    for s in range(g.n_vertices):
        dist, cyc = _bfs(adj, s)
        if min(dist) < 0:
            raise Disconnected("incidence graph is disconnected")
        diameter = max(diameter, max(dist))
        if cyc is not None and (girth is None or cyc < girth):
            girth = cyc
    if girth is not None:
        assert girth % 2 == 0, "bipartite graph with an odd cycle"
    return diameter, girth


def order_of(i: IncidenceStructure) -> tuple[int, int] | None:
    """(s, t) when every line has s+1 points and every point lies on t+1 lines."""
    line_sizes = {len(x) for x in i.points_on}
    point_degrees = {len(x) for x in i.lines_through}
    if len(line_sizes) != 1 or len(point_degrees) != 1:
        return None
    return line_sizes.pop() - 1, point_degrees.pop() - 1


def verify_generalized_ngon(i: IncidenceStructure, n: int) -> VerificationReport:
    if n < 2:
        raise ValueError("n must be at least 2")
    rep = VerificationReport(f"generalised {n}-gon")
    try:
        diameter, girth = graph_metrics(incidence_graph(i))
    except Disconnected:
        rep.add("connected", False, "generalised polygon definition")
        return rep
    rep.data.update(points=i.n_points, lines=i.n_lines, flags=len(i.flags), diameter=diameter, girth=girth)
    rep.add("diameter", diameter == n, "generalised polygon definition", expected=n, found=diameter)
    rep.add("girth", girth == 2 * n, "generalised polygon definition", expected=2 * n, found=girth)
    order = order_of(i)
    rep.data["order"] = order
    degrees = [len(x) for x in i.points_on] + [len(x) for x in i.lines_through]
    rep.data["thick"] = bool(degrees) and min(degrees) >= 3
    if rep.passed and order is not None:
        s, t = order
        rep.add("flag count", len(i.flags) == i.n_points * (t + 1) == i.n_lines * (s + 1),
                "double counting", flags=len(i.flags))
    return rep


def scwol_of_incidence(i: IncidenceStructure) -> Scwol:
    """Flag scwol: vertices points, lines and flags; edges point<-flag and line<-flag."""
    V = [("p", p) for p in range(i.n_points)] + [("l", l) for l in range(i.n_lines)]
    V += [("f", p, l) for p, l in sorted(i.flags)]
    E = []
    for p, l in sorted(i.flags):
        E.append((("pf", p, l), ("f", p, l), ("p", p)))
        E.append((("lf", p, l), ("f", p, l), ("l", l)))
    return Scwol.build(V, E)
