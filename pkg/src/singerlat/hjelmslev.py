"""Level-2 Hjelmslev planes around a vertex of a cyclic Ã₂ building.

Everything is written additively in exponents: the point s1 s3 v2 with
s1 = sigma1^j1, s3 = sigma3^j3 is the pair (j1, j3), the line t1 t2 v3 is
(k1, k2).  Points need j3 not in -Delta and lines k2 not in Delta.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .ffield import factor_prime_power
from .geometry import IncidenceStructure, verify_generalized_ngon
from .reports import VerificationReport
from .singer import OrderedDifferenceSet


class NoAdmissibleM(ValueError):
    pass


class InvalidM(ValueError):
    pass


class NoQuadrangleFound(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HjelmslevPlane:
    n: int
    delta: frozenset
    ordered: tuple = ()   # optional ordered sets (d1, d2, d3) for the general criterion

    def __post_init__(self):
        q = len(self.delta) - 1
        if q < 2 or q * q + q + 1 != self.n:
            raise ValueError("difference set size does not match the modulus")

    @classmethod
    def from_difference_set(cls, d: OrderedDifferenceSet) -> HjelmslevPlane:
        return cls(d.modulus, d.as_set, (tuple(d.entries),) * 3)

    @classmethod
    def from_ordered(cls, d1: OrderedDifferenceSet, d2: OrderedDifferenceSet,
                     d3: OrderedDifferenceSet) -> HjelmslevPlane:
        if not d1.as_set == d2.as_set == d3.as_set:
            raise ValueError("the plane is only modelled for equal unordered difference sets")
        return cls(d1.modulus, d1.as_set, tuple(tuple(d.entries) for d in (d1, d2, d3)))

    @property
    def q(self) -> int:
        return len(self.delta) - 1

    @cached_property
    def neg_delta(self) -> frozenset:
        return frozenset((-d) % self.n for d in self.delta)

    @cached_property
    def points(self) -> list[tuple[int, int]]:
        return [(j1, j3) for j1 in range(self.n) for j3 in range(self.n) if j3 not in self.neg_delta]

    @cached_property
    def lines(self) -> list[tuple[int, int]]:
        return [(k1, k2) for k1 in range(self.n) for k2 in range(self.n) if k2 not in self.delta]

    @cached_property
    def point_index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def line_index(self) -> dict:
        return {l: i for i, l in enumerate(self.lines)}

    def _shift(self, c: int) -> set[int]:
        return {(c - d) % self.n for d in self.delta}

    @property
    def aligned(self) -> bool:
        """True when the three orderings coincide; the explicit formula needs this."""
        return not self.ordered or len(set(self.ordered)) == 1

    def adjacent(self, p, l) -> bool:
        return adjacency(self, p, l) if self.aligned else general_adjacency(self, p, l)

    @cached_property
    def incidence(self) -> np.ndarray:
        """Boolean matrix, rows points, columns lines."""
        a = np.zeros((len(self.points), len(self.lines)), dtype=np.int64)
        test = adjacency if self.aligned else general_adjacency
        for i, p in enumerate(self.points):
            for k, l in enumerate(self.lines):
                if test(self, p, l):
                    a[i, k] = 1
        return a

    def to_incidence_structure(self) -> IncidenceStructure:
        a = self.incidence
        flags = [(int(i), int(k)) for i, k in zip(*np.nonzero(a))]
        return IncidenceStructure.from_flags(len(self.points), len(self.lines), flags,
                                             tuple(self.points), tuple(self.lines))


def adjacency(h: HjelmslevPlane, p, l) -> bool:
    """k1 - j1 in Delta, and (k2 - Delta), (-j3 - Delta), (k1 - j1 - Delta) share an element."""
    (j1, j3), (k1, k2) = p, l
    n = h.n
    diff = (k1 - j1) % n
    if diff not in h.delta:
        return False
    return bool(h._shift(k2) & h._shift(-j3) & h._shift(diff))


def general_adjacency(h: HjelmslevPlane, p, l) -> bool:
    """The two-condition criterion over ordered difference sets d1, d2, d3.

    (C1) k1 - j1 = d1(j) for some j.  (C2) some n in (k2 - D2) and in
    (d2(j) - D2) with d2(j) - n = d2(i), such that -j3 - d3(j) + d3(i) lies in D3.
    """
    if not h.ordered:
        raise ValueError("plane carries no ordered difference sets")
    d1, d2, d3 = h.ordered
    n = h.n
    (j1, j3), (k1, k2) = p, l
    diff = (k1 - j1) % n
    if diff not in d1:
        return False
    j = d1.index(diff)
    D2, D3 = set(d2), set(d3)
    for m in {(k2 - d) % n for d in D2} & {(d2[j] - d) % n for d in D2}:
        i = d2.index((d2[j] - m) % n)
        if (-j3 - d3[j] + d3[i]) % n in D3:
            return True
    return False


def psi(h: HjelmslevPlane, x) -> int:
    """Projection to the link of v1: first coordinate of a point or a line."""
    return x[0] % h.n


def choose_m(delta, n: int) -> int:
    bad = {d % n for d in delta} | {(-d) % n for d in delta}
    for m in range(n):
        if m not in bad:
            return m
    raise NoAdmissibleM(f"every residue mod {n} lies in Delta or -Delta")


def iota(h: HjelmslevPlane, x: int, kind: str, m: int) -> tuple[int, int]:
    """Splitting of psi: point j -> (j, -m), line k -> (k, m)."""
    if m % h.n in h.delta or (-m) % h.n in h.delta:
        raise InvalidM(f"m={m} lies in Delta or -Delta")
    if kind == "point":
        return x % h.n, (-m) % h.n
    if kind == "line":
        return x % h.n, m % h.n
    raise ValueError("kind is 'point' or 'line'")


def base_incident(h: HjelmslevPlane, j: int, k: int) -> bool:
    return (k - j) % h.n in h.delta


def base_plane(h: HjelmslevPlane) -> IncidenceStructure:
    n = h.n
    return IncidenceStructure.from_flags(n, n, [(j, k) for j in range(n) for k in range(n) if base_incident(h, j, k)])


def cmsz_counts(h: HjelmslevPlane, jobs: int = 1) -> VerificationReport:
    """Common neighbours of point pairs and of line pairs against the psi pattern (1 or q)."""
    rep = VerificationReport(f"CMSZ counts q={h.q}")
    a = h.incidence
    q = h.q
    for kind, m, elems in (("points", a, h.points), ("lines", a.T, h.lines)):
        proj = np.array([e[0] for e in elems])
        same = proj[:, None] == proj[None, :]
        expected = np.where(same, q, 1)
        rows = np.array_split(np.arange(len(elems)), max(1, jobs))

        def block(idx):
            common = m[idx] @ m.T
            bad = []
            for r, i in enumerate(idx):
                row = common[r]
                diff = np.nonzero(row != expected[i])[0]
                bad.extend((int(i), int(k), int(row[k])) for k in diff if k != i)
            return bad

        if jobs > 1:
            with ThreadPoolExecutor(jobs) as pool:
                violations = [v for part in pool.map(block, rows) for v in part]
        else:
            violations = [v for idx in rows for v in block(idx)]
        rep.add(f"{kind}: common neighbours", not violations, "CMSZ common-neighbour counts",
                violations=len(violations), example=violations[:3])
    rep.data.update(points=len(h.points), lines=len(h.lines), counts=(1, q))
    return rep


def _common(h: HjelmslevPlane, kind: str, x: int, y: int) -> list[int]:
    a = h.incidence
    if kind == "points":
        return list(np.nonzero(a[x] & a[y])[0])
    return list(np.nonzero(a[:, x] & a[:, y])[0])


def substructure_closure(h: HjelmslevPlane, seed_points, seed_lines=(), schedule: str = "sequential"):
    """Smallest substructure containing the seeds, as (point set, line set) of coordinate pairs.

    ``sequential`` adds each forced element as soon as it is found;
    ``rounds`` collects everything forced by the current sets, then adds it.
    """
    P = {h.point_index[tuple(p)] for p in seed_points}
    L = {h.line_index[tuple(l)] for l in seed_lines}
    pts, lns = h.points, h.lines
    if schedule == "sequential":
        changed = True
        while changed:
            changed = False
            for x, y in combinations(sorted(P), 2):
                if pts[x][0] != pts[y][0]:
                    (l,) = _common(h, "points", x, y)
                    if l not in L:
                        L.add(l)
                        changed = True
            for x, y in combinations(sorted(L), 2):
                if lns[x][0] != lns[y][0]:
                    (p,) = _common(h, "lines", x, y)
                    if p not in P:
                        P.add(p)
                        changed = True
    elif schedule == "rounds":
        while True:
            newL = {_common(h, "points", x, y)[0] for x, y in combinations(sorted(P, reverse=True), 2)
                    if pts[x][0] != pts[y][0]}
            newP = {_common(h, "lines", x, y)[0] for x, y in combinations(sorted(L, reverse=True), 2)
                    if lns[x][0] != lns[y][0]}
            if newL <= L and newP <= P:
                break
            L |= newL
            P |= newP
    else:
        raise ValueError("schedule is 'sequential' or 'rounds'")
    return frozenset(pts[i] for i in P), frozenset(lns[i] for i in L)


def first_four_arc(h: HjelmslevPlane) -> tuple[int, ...]:
    """Lexicographically first four base points with no three collinear."""
    n = h.n
    lines = [frozenset(j for j in range(n) if base_incident(h, j, k)) for k in range(n)]
    for quad in combinations(range(n), 4):
        if all(not any(set(tri) <= l for l in lines) for tri in combinations(quad, 3)):
            return quad
    raise NoQuadrangleFound("no four points in general position")


def induced_structure(h: HjelmslevPlane, P, L) -> IncidenceStructure:
    P, L = sorted(P), sorted(L)
    flags = [(i, k) for i, p in enumerate(P) for k, l in enumerate(L) if h.adjacent(p, l)]
    return IncidenceStructure.from_flags(len(P), len(L), flags, tuple(P), tuple(L))


def splitting_report(h: HjelmslevPlane, m: int | None = None) -> VerificationReport:
    m = choose_m(h.delta, h.n) if m is None else m
    rep = VerificationReport(f"splitting q={h.q}", data={"m": m})
    n = h.n
    ok_psi = all(psi(h, iota(h, x, kind, m)) == x for x in range(n) for kind in ("point", "line"))
    rep.add("psi after iota is the identity", ok_psi, "splitting of the projection")
    bad = [(j, k) for j in range(n) for k in range(n)
           if base_incident(h, j, k) != h.adjacent(iota(h, j, "point", m), iota(h, k, "line", m))]
    rep.add("iota preserves incidence", not bad, "splitting of the projection", violations=bad[:5])
    return rep


def qp_discrimination(h: HjelmslevPlane) -> VerificationReport:
    q = h.q
    rep = VerificationReport(f"Q_p discrimination q={q}")
    m = choose_m(h.delta, h.n)
    arc = first_four_arc(h)
    seeds = [iota(h, j, "point", m) for j in arc]
    P, L = substructure_closure(h, seeds)
    P2, L2 = substructure_closure(h, seeds, schedule="rounds")
    rep.data.update(m=m, four_arc=list(arc), closure_points=len(P), closure_lines=len(L))
    rep.add("closure independent of schedule", (P, L) == (P2, L2), "substructure definition")
    images_p = {iota(h, j, "point", m) for j in range(h.n)}
    images_l = {iota(h, k, "line", m) for k in range(h.n)}
    rep.data["inside_image_of_iota"] = P <= images_p and L <= images_l
    p, e = factor_prime_power(q)
    if e == 1:
        rep.add("closure is the image of iota", P == images_p and L == images_l, "splitting of the projection")
    plane = verify_generalized_ngon(induced_structure(h, P, L), 3)
    rep.extend(plane, "closure.")
    # four points in general position generate a plane over the prime field
    rep.add("closure has order (p,p)", plane.data.get("order") == (p, p), "projective plane of order p",
            order=plane.data.get("order"), p=p)
    rep.add("closure is proper", len(P) < len(h.points), "generated substructure is not everything",
            points=len(P), total=len(h.points))
    if e == 1:
        rep.data["conclusion"] = ("the four-point substructure is a projective plane of order q, "
                                  "incompatible with Q_p" if rep.passed else "inconclusive")
    else:
        rep.data["conclusion"] = "q is not prime; the characterisation by residue field order p does not apply"
    return rep
