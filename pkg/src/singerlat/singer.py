"""Singer polygons: cyclic projective planes and slanted symplectic quadrangles."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Callable, Iterable

from .ffield import MAX_ORDER, FieldSpec, factor_prime_power, make_field
from .geometry import IncidenceStructure, verify_generalized_ngon
from .groups import FiniteGroup, commutator, gen_power, word
from .reports import VerificationReport


class NotIncident(ValueError):
    pass


class UnsupportedOrder(ValueError):
    pass


class NotARepresentative(KeyError):
    pass


def _check_cap(q: int) -> None:
    factor_prime_power(q)
    if q > MAX_ORDER:
        raise UnsupportedOrder(f"q={q} exceeds the configured cap {MAX_ORDER}")


# -- difference sets --------------------------------------------------------------

@dataclass(frozen=True)
class OrderedDifferenceSet:
    modulus: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        ent = tuple(e % self.modulus for e in self.entries)
        if len(set(ent)) != len(ent):
            raise ValueError("entries must be distinct residues")
        object.__setattr__(self, "entries", ent)

    @property
    def normalized(self) -> bool:
        return bool(self.entries) and self.entries[0] == 0

    @property
    def as_set(self) -> frozenset[int]:
        return frozenset(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, j: int) -> int:
        return self.entries[j]

    def index(self, value: int) -> int:
        return self.entries.index(value % self.modulus)

    def reordered(self, perm: Iterable[int]) -> OrderedDifferenceSet:
        """Entries permuted: new[j] = old[perm[j]]."""
        perm = list(perm)
        if sorted(perm) != list(range(len(self.entries))):
            raise ValueError("not a permutation")
        return OrderedDifferenceSet(self.modulus, tuple(self.entries[i] for i in perm))

    def translate(self, t: int) -> OrderedDifferenceSet:
        return OrderedDifferenceSet(self.modulus, tuple(e + t for e in self.entries))

    def sorted_normal_form(self) -> OrderedDifferenceSet:
        """Translate so the first entry is 0, then sort ascending (0 stays first)."""
        shifted = self.translate(-self.entries[0])
        return OrderedDifferenceSet(self.modulus, tuple(sorted(shifted.entries)))


def verify_planar_difference_set(d: OrderedDifferenceSet) -> VerificationReport:
    n = d.modulus
    counts = [0] * n
    for a in d.entries:
        for b in d.entries:
            if a != b:
                counts[(a - b) % n] += 1
    bad = [r for r in range(1, n) if counts[r] != 1]
    rep = VerificationReport("planar difference set", data={"modulus": n, "entries": list(d.entries)})
    rep.add("unique differences", not bad, "difference set definition", violations=bad[:10])
    return rep


def equivalent_difference_sets(a: Iterable[int], b: Iterable[int], n: int) -> tuple[int, int] | None:
    """(m, t) with m*a + t == b as sets mod n and gcd(m, n) == 1, else None."""
    a, b = frozenset(x % n for x in a), frozenset(x % n for x in b)
    for m in range(1, n + 1):
        if gcd(m, n) != 1:
            continue
        ma = {(m * x) % n for x in a}
        for t in range(n):
            if {(x + t) % n for x in ma} == b:
                return m % n, t
    return None


# -- regular actions --------------------------------------------------------------

def verify_regular_action(elements: list, action: Callable, domain: Iterable) -> VerificationReport:
    domain = list(domain)
    dset = set(domain)
    rep = VerificationReport("regular action", data={"group_order": len(elements), "domain_size": len(domain)})
    rep.add("order equals domain size", len(elements) == len(domain), "regular action definition")
    if not domain:
        return rep
    images = {}
    for x in domain:
        row = [action(g, x) for g in elements]
        if not set(row) <= dset:
            rep.add("action closed on domain", False, "regular action definition", point=repr(x))
            return rep
        images[x] = row
    orbit = set(images[domain[0]])
    rep.add("transitive", orbit == dset, "regular action definition", orbit_size=len(orbit))
    free = all(len(set(row)) == len(row) for row in images.values())
    rep.add("free", free, "regular action definition")
    return rep


# -- classical plane ----------------------------------------------------------------

@dataclass
class SingerPlane:
    q: int
    structure: IncidenceStructure
    cycle: tuple[int, ...]          # permutation of points
    line_cycle: tuple[int, ...]     # induced permutation of lines
    big_field: FieldSpec
    primitive: int                  # code of the primitive element of GF(q^3)
    report: VerificationReport = field(default_factory=lambda: VerificationReport("plane"))

    @property
    def n(self) -> int:
        return self.q * self.q + self.q + 1

    def canonical_flag(self) -> tuple[int, int]:
        """First point of the first line."""
        return self.structure.points_on[0][0], 0

    def cycle_power(self, k: int) -> list[int]:
        perm = list(range(self.n))
        for _ in range(k % self.n):
            perm = [self.cycle[p] for p in perm]
        return perm

    def metadata(self) -> dict:
        return {
            "q": self.q,
            "modulus": list(self.big_field.modulus),
            "primitive_element": self.primitive,
        }


def classical_plane(q: int) -> SingerPlane:
    """PG(2, q) modelled on GF(q^3): points are cosets of GF(q)^x, lines kernels of trace forms."""
    _check_cap(q)
    big = make_field(q**3)
    exp, log = big._exp_log
    omega = exp[1]
    n = q * q + q + 1
    order = q**3 - 1

    def frob(c: int) -> int:
        return big.power(c, q)

    def trace(c: int) -> int:
        c1 = frob(c)
        return big.add(big.add(c, c1), frob(c1))

    # point i is the coset of omega^i; its codes are omega^(i + n*k)
    cosets = [tuple(sorted(exp[(i + n * k) % order] for k in range(q - 1))) for i in range(n)]
    coset_index = {}
    for i, cs in enumerate(cosets):
        for c in cs:
            coset_index[c] = i

    zero_trace = [trace(exp[k]) == 0 for k in range(order)]
    lines: dict[frozenset, int] = {}
    for k in range(order):
        # kernel of x -> Tr(omega^k x) on the point set
        ker = frozenset(i for i in range(n) if zero_trace[(k + i) % order])
        if ker not in lines:
            lines[ker] = len(lines)
        if len(lines) == n:
            break
    line_list = list(lines)
    structure = IncidenceStructure.from_flags(
        n, len(line_list), [(p, j) for j, l in enumerate(line_list) for p in sorted(l)],
        tuple(cosets), tuple(tuple(sorted(l)) for l in line_list))

    cycle = tuple(coset_index[big.mul(cosets[i][0], omega)] for i in range(n))
    line_cycle = tuple(lines[frozenset(cycle[p] for p in l)] for l in line_list)

    plane = SingerPlane(q, structure, cycle, line_cycle, big, omega,
                        VerificationReport(f"classical plane q={q}"))
    rep = plane.report
    ngon = verify_generalized_ngon(structure, 3)
    rep.extend(ngon, "plane.")
    rep.add("order (q,q)", ngon.data.get("order") == (q, q), "classical projective plane", order=ngon.data.get("order"))

    powers = [tuple(plane.cycle_power(k)) for k in range(n)]
    rep.add("cycle order n", plane.cycle_power(n) == list(range(n)) and len(set(powers)) == n,
            "Singer cycle")
    pts = verify_regular_action(powers, lambda g, x: g[x], range(n))
    rep.extend(pts, "points.")
    line_powers = []
    perm = list(range(n))
    for _ in range(n):
        line_powers.append(tuple(perm))
        perm = [line_cycle[l] for l in perm]
    lns = verify_regular_action(line_powers, lambda g, x: g[x], range(n))
    rep.extend(lns, "lines.")
    return plane


def extract_difference_set(p: SingerPlane, base_point: int | None = None,
                           base_line: int | None = None) -> OrderedDifferenceSet:
    """Residues d with base_point on sigma^d(base_line), sorted ascending."""
    if base_point is None or base_line is None:
        base_point, base_line = p.canonical_flag()
    if not p.structure.incident(base_point, base_line):
        raise NotIncident(f"point {base_point} is not on line {base_line}")
    n = p.n
    out, l = [], base_line
    for d in range(n):
        if p.structure.incident(base_point, l):
            out.append(d)
        l = p.line_cycle[l]
    ds = OrderedDifferenceSet(n, tuple(out))
    return ds


# -- symplectic quadrangles -----------------------------------------------------------

Vector = tuple[int, int, int, int]
Matrix = tuple[int, ...]  # 16 codes, row major


def mat_mul(F: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    out = []
    for i in range(4):
        for j in range(4):
            s = 0
            for k in range(4):
                a, b = A[4 * i + k], B[4 * k + j]
                if a and b:
                    s = F.add(s, F.mul(a, b))
            out.append(s)
    return tuple(out)


def mat_apply(F: FieldSpec, A: Matrix, v: Vector) -> Vector:
    out = []
    for i in range(4):
        s = 0
        for k in range(4):
            a, b = A[4 * i + k], v[k]
            if a and b:
                s = F.add(s, F.mul(a, b))
        out.append(s)
    return tuple(out)


IDENTITY: Matrix = (1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1)


def x_matrix(F: FieldSpec, a: int) -> Matrix:
    return (1, a, 0, 0, 0, 1, 0, 0, 0, 0, 1, F.neg(a), 0, 0, 0, 1)


def y_matrix(F: FieldSpec, b: int) -> Matrix:
    return (1, 0, b, 0, 0, 1, 0, b, 0, 0, 1, 0, 0, 0, 0, 1)


def z_matrix(F: FieldSpec, c: int) -> Matrix:
    return (1, 0, 0, c, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1)


def stabilizer_matrix(F: FieldSpec, a: int, b: int, f: int) -> Matrix:
    fa, fb = F.mul(f, a), F.mul(f, b)
    return (1, fa, fb, 0, 0, 1, 0, fb, 0, 0, 1, F.neg(fa), 0, 0, 0, 1)


def symplectic_form(F: FieldSpec, u: Vector, v: Vector) -> int:
    """h(u,v) = u0 v3 - u3 v0 + u1 v2 - u2 v1 in the basis e_-2, e_-1, e_1, e_2."""
    m = F.mul
    s = F.sub(m(u[0], v[3]), m(u[3], v[0]))
    return F.add(s, F.sub(m(u[1], v[2]), m(u[2], v[1])))


def normalize(F: FieldSpec, v: Vector) -> Vector:
    """Scale so the last nonzero coordinate is 1."""
    for c in reversed(v):
        if c:
            inv = F.inv(c)
            return tuple(F.mul(x, inv) for x in v)
    raise ValueError("zero vector")


def line_label(a: int, b: int) -> str:
    return f"[{a}:{b}]"


L0 = "0"


def line_labels(q: int) -> list[str]:
    """Default enumeration of lines through p1: [1:0], [1:1], ..., [1:q-1], [0:1], 0."""
    return [line_label(1, b) for b in range(q)] + [line_label(0, 1), L0]


def parse_line_label(label: str) -> tuple[int, int] | None:
    if label == L0:
        return None
    a, b = label.strip("[]").split(":")
    return int(a), int(b)


@dataclass
class SymplecticQuadrangleBundle:
    q: int
    field: FieldSpec
    ambient: IncidenceStructure
    slanted: IncidenceStructure
    group_E: tuple[Matrix, ...]
    p0: Vector
    p1: Vector
    line_representatives: dict[str, int]          # label -> line index in slanted
    stabilizers: dict[str, tuple[Matrix, ...]]     # label -> matrices (formula family)
    report: VerificationReport

    @property
    def points(self) -> tuple[Vector, ...]:
        return self.slanted.point_labels

    def point_index(self, v: Vector) -> int:
        return self._pidx[normalize(self.field, v)]

    def __post_init__(self):
        self._pidx = {v: i for i, v in enumerate(self.slanted.point_labels)}

    def act(self, g: Matrix, point: int) -> int:
        return self.point_index(mat_apply(self.field, g, self.points[point]))

    def line_image(self, g: Matrix, line: int) -> frozenset[int]:
        return frozenset(self.act(g, p) for p in self.slanted.points_on[line])

    def brute_force_stabilizer(self, line: int) -> tuple[Matrix, ...]:
        pts = frozenset(self.slanted.points_on[line])
        return tuple(g for g in self.group_E if self.line_image(g, line) == pts)


def _perp_closure(F, points, p, r):
    """{p, r}^perp-perp computed literally from the perp sets (perp includes the point)."""
    common = [s for s in points if symplectic_form(F, s, p) == 0 and symplectic_form(F, s, r) == 0]
    return frozenset(t for t in points if all(symplectic_form(F, t, s) == 0 for s in common))


def slanted_quadrangle(q: int) -> SymplecticQuadrangleBundle:
    if q <= 2:
        raise UnsupportedOrder("slanted symplectic quadrangles need q > 2")
    _check_cap(q)
    F = make_field(q)
    h = lambda u, v: symplectic_form(F, u, v)  # noqa: E731

    all_vecs = [v for v in product(range(q), repeat=4) if any(v)]
    w_points = sorted({normalize(F, v) for v in all_vecs}, key=lambda v: (v[3], v[2], v[1], v[0]))
    w_index = {v: i for i, v in enumerate(w_points)}

    def span_points(u: Vector, v: Vector) -> frozenset[Vector]:
        out = set()
        for s, t in product(range(q), repeat=2):
            if s or t:
                vec = tuple(F.add(F.mul(s, a), F.mul(t, b)) for a, b in zip(u, v))
                out.add(normalize(F, vec))
        return frozenset(out)

    w_lines: dict[frozenset, int] = {}
    for p in w_points:
        for r in w_points:
            if r != p and h(p, r) == 0:
                ln = span_points(p, r)
                if ln not in w_lines:
                    w_lines[ln] = len(w_lines)
    ambient = IncidenceStructure.from_lines(w_points, list(w_lines))

    p0: Vector = (1, 0, 0, 0)
    p1: Vector = (0, 0, 0, 1)
    slanted_pts = [v for v in w_points if h(p0, v) != 0]
    sset = set(slanted_pts)
    s_lines: list[frozenset] = []
    seen = set()
    for ln in w_lines:
        if p0 not in ln:
            kept = frozenset(v for v in ln if v in sset)
            if kept not in seen:
                seen.add(kept)
                s_lines.append(kept)
    for r in slanted_pts:
        hyp = _perp_closure(F, w_points, p0, r) - {p0}
        if hyp not in seen:
            seen.add(hyp)
            s_lines.append(hyp)
    slanted = IncidenceStructure.from_lines(slanted_pts, s_lines)
    line_of = {ln: j for j, ln in enumerate(s_lines)}

    # Singer group E generated by all x(a), y(b), z(c)
    gens = {}
    for c in range(1, q):
        gens[f"x{c}"] = x_matrix(F, c)
        gens[f"y{c}"] = y_matrix(F, c)
        gens[f"z{c}"] = z_matrix(F, c)
    E = FiniteGroup.generated(gens, lambda A, B: mat_mul(F, A, B), IDENTITY, name="E")
    group_E = tuple(E.elements)

    # line representatives through p1
    reps: dict[str, int] = {}
    for lab in line_labels(q):
        ab = parse_line_label(lab)
        if ab is None:
            pts = frozenset((t, 0, 0, 1) for t in range(q))
        else:
            # the line through p1 fixed by the stabiliser formula below: p1 + F(0, b, -a, 0)
            a, b = ab
            pts = frozenset((0, F.mul(t, b), F.neg(F.mul(t, a)), 1) for t in range(q))
        reps[lab] = line_of.get(pts, -1)

    stabs = {}
    for lab in line_labels(q):
        ab = parse_line_label(lab)
        if ab is None:
            stabs[lab] = tuple(z_matrix(F, f) for f in range(q))
        else:
            stabs[lab] = tuple(stabilizer_matrix(F, ab[0], ab[1], f) for f in range(q))

    bundle = SymplecticQuadrangleBundle(q, F, ambient, slanted, group_E, p0, p1, reps, stabs,
                                        VerificationReport(f"slanted quadrangle q={q}"))
    _verify_bundle(bundle)
    return bundle


def _verify_bundle(b: SymplecticQuadrangleBundle) -> None:
    q, F, rep = b.q, b.field, b.report
    amb = verify_generalized_ngon(b.ambient, 4)
    rep.extend(amb, "ambient.")
    rep.add("ambient order (q,q)", amb.data.get("order") == (q, q), "symplectic quadrangle", order=amb.data.get("order"))
    ng = verify_generalized_ngon(b.slanted, 4)
    rep.extend(ng, "slanted.")
    rep.add("slanted order (q-1,q+1)", ng.data.get("order") == (q - 1, q + 1),
            "Singer quadrangle of order (q-1,q+1)", order=ng.data.get("order"))
    rep.add("point count q^3", b.slanted.n_points == q**3, "slanted quadrangle points", points=b.slanted.n_points)
    rep.add("line count q^2(q+2)", b.slanted.n_lines == q * q * (q + 2), "slanted quadrangle lines",
            lines=b.slanted.n_lines)
    rep.add("points are (x,y,z,1)", all(v[3] == 1 for v in b.points), "points not collinear with p0")
    rep.add("|E| = q^3", len(b.group_E) == q**3, "Singer group E", order=len(b.group_E))
    preserves = all(
        symplectic_form(F, mat_apply(F, g, u), mat_apply(F, g, v)) == symplectic_form(F, u, v)
        for g in (x_matrix(F, 1), y_matrix(F, 1), z_matrix(F, 1))
        for u in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
        for v in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    )
    rep.add("E preserves h", preserves, "symplectic group")
    reg = verify_regular_action(list(b.group_E), lambda g, x: b.act(g, x), range(b.slanted.n_points))
    rep.extend(reg, "E.")
    if q % 2 == 0:
        rep.add("E elementary abelian", _elementary_abelian(F, b.group_E), "E isomorphic to F_q^3")
    else:
        x, y = x_matrix(F, 1), y_matrix(F, 1)
        comm = _mat_commutator(F, x, y)
        rep.add("[x,y] = z(2)", comm == z_matrix(F, F.from_int(2)), "Heisenberg commutator")

    p1_idx = b.point_index(b.p1)
    through = set(b.slanted.lines_through[p1_idx])
    found = set(b.line_representatives.values())
    rep.add("representatives are the lines through p1", -1 not in found and found == through,
            "line representatives through p1", count=len(through))
    # E acts regularly on lines? representatives must hit every orbit exactly once
    orbits = set()
    for j in found:
        if j < 0:
            continue
        orbits.add(frozenset(_line_index(b, b.line_image(g, j)) for g in b.group_E))
    covers = sum(len(o) for o in orbits) == b.slanted.n_lines and len(orbits) == q + 2
    rep.add("representatives cover line orbits", covers, "line representatives")

    all_match = True
    for lab, j in b.line_representatives.items():
        if j < 0:
            all_match = False
            continue
        brute = set(b.brute_force_stabilizer(j))
        formula = set(b.stabilizers[lab])
        if brute != formula or len(brute) != q:
            all_match = False
    rep.add("stabilisers match brute force", all_match, "line stabiliser family")
    for lab, j in b.line_representatives.items():
        if j < 0:
            continue
        if q % 2 == 1 and q == F.characteristic:
            gen = cyclic_stabilizer_generator(F, lab)
            cyc = _cyclic_closure(F, gen)
            rep.add(f"stabiliser {lab} cyclic generator", cyc == set(b.stabilizers[lab]),
                    "stabiliser generator x^a y^b z^(-ab/2)")
        elif q % 2 == 0:
            span = _span_closure(F, even_stabilizer_basis(F, lab))
            rep.add(f"stabiliser {lab} F2 span", span == set(b.stabilizers[lab]), "stabiliser as F_q-subspace")


def _line_index(b: SymplecticQuadrangleBundle, pts: frozenset[int]) -> int:
    if not hasattr(b, "_lidx"):
        b._lidx = {frozenset(p): j for j, p in enumerate(b.slanted.points_on)}
    return b._lidx[pts]


def _mat_inverse_unipotent(F, A: Matrix) -> Matrix:
    # E is unipotent of exponent dividing p*q; invert by repeated multiplication
    x, prev = A, IDENTITY
    while x != IDENTITY:
        prev = x
        x = mat_mul(F, x, A)
    return prev


def _mat_commutator(F, A: Matrix, B: Matrix) -> Matrix:
    Ai, Bi = _mat_inverse_unipotent(F, A), _mat_inverse_unipotent(F, B)
    return mat_mul(F, mat_mul(F, mat_mul(F, A, B), Ai), Bi)


def _elementary_abelian(F, elems) -> bool:
    gens = [x_matrix(F, c) for c in range(1, F.order)] + [y_matrix(F, c) for c in range(1, F.order)]
    gens += [z_matrix(F, c) for c in range(1, F.order)]
    comm = all(mat_mul(F, a, b) == mat_mul(F, b, a) for a in gens for b in gens)
    return comm and all(mat_mul(F, g, g) == IDENTITY for g in elems)


def _cyclic_closure(F, g: Matrix) -> set[Matrix]:
    out, x = {IDENTITY}, g
    while x != IDENTITY:
        out.add(x)
        x = mat_mul(F, x, g)
    return out


def _span_closure(F, gens) -> set[Matrix]:
    out = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul(F, x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def half_exponent(q: int, a: int, b: int) -> int:
    """m in [0, q) with 2m = -ab mod q, i.e. the exponent -ab/2 of z."""
    return (-a * b * pow(2, -1, q)) % q


def cyclic_stabilizer_generator(F: FieldSpec, label: str) -> Matrix:
    """x^a y^b z^(-ab/2) for odd prime q, z for l0; z means z(2)."""
    q = F.order
    z = z_matrix(F, F.from_int(2))
    ab = parse_line_label(label)
    if ab is None:
        return z
    a, b = ab
    g = IDENTITY
    for M, k in ((x_matrix(F, 1), a), (y_matrix(F, 1), b), (z, half_exponent(q, a, b))):
        for _ in range(k):
            g = mat_mul(F, g, M)
    return g


def even_stabilizer_basis(F: FieldSpec, label: str) -> list[Matrix]:
    """x(fa) y(fb) z(f^2 ab) (or z(f)) for f running over the power basis of F_q over F_2.

    The z(f^2 ab) factor cancels the corner entry of x(fa) y(fb); without it the
    span is not a line stabiliser once q > 2.
    """
    basis = [F.characteristic**k for k in range(F.degree)]
    ab = parse_line_label(label)
    if ab is None:
        return [z_matrix(F, f) for f in basis]
    a, b = ab
    out = []
    for f in basis:
        fa, fb = F.mul(f, a), F.mul(f, b)
        out.append(mat_mul(F, mat_mul(F, x_matrix(F, fa), y_matrix(F, fb)), z_matrix(F, F.mul(fa, fb))))
    return out


def line_stabilizer(b: SymplecticQuadrangleBundle, line) -> tuple[Matrix, ...]:
    """Stabiliser of a representative line (label or slanted line index)."""
    if isinstance(line, str):
        if line not in b.line_representatives:
            raise NotARepresentative(line)
        label = line
    else:
        inv = {j: lab for lab, j in b.line_representatives.items()}
        if line not in inv:
            raise NotARepresentative(line)
        label = inv[line]
    return b.stabilizers[label]


# -- abstract presentations of E -------------------------------------------------------

def singer_generator_names(q: int, prime: str = "") -> list[str]:
    p, e = factor_prime_power(q)
    if q % 2 == 1:
        return [f"x{prime}", f"y{prime}"]
    return [f"{s}{k}{prime}" for s in "xyz" for k in range(e)]


def singer_relators(q: int, prime: str = "") -> list:
    """Relators of E on its named generators (odd prime q, or even q)."""
    p, e = factor_prime_power(q)
    if q % 2 == 1:
        if e != 1:
            raise UnsupportedOrder("no finite presentation used for odd non-prime q")
        x, y = ((f"x{prime}", 1),), ((f"y{prime}", 1),)
        z = commutator(x, y)
        return [gen_power(x[0][0], q), gen_power(y[0][0], q), z * q, commutator(x, z), commutator(y, z)]
    names = singer_generator_names(q, prime)
    rels = [gen_power(n, 2) for n in names]
    rels += [commutator(((a, 1),), ((b, 1),)) for i, a in enumerate(names) for b in names[i + 1:]]
    return rels


def singer_group(b: SymplecticQuadrangleBundle, prime: str = "") -> FiniteGroup:
    """E as a FiniteGroup over the named generators used in presentations."""
    F, q = b.field, b.q
    if q % 2 == 1:
        gens = {f"x{prime}": x_matrix(F, 1), f"y{prime}": y_matrix(F, 1)}
    else:
        gens = {}
        basis = [F.characteristic**k for k in range(F.degree)]
        for s, mk in (("x", x_matrix), ("y", y_matrix), ("z", z_matrix)):
            for k, f in enumerate(basis):
                gens[f"{s}{k}{prime}"] = mk(F, f)
    G = FiniteGroup.generated(gens, lambda A, B: mat_mul(F, A, B), IDENTITY,
                              singer_relators(q, prime), name=f"E{prime}")
    return G


def heisenberg_word_for(q: int, label: str, prime: str = "") -> list:
    """Generator words of the stabiliser of a representative line.

    Odd prime q: one word x^a y^b z^m with 2m = -ab (z = [x, y]); l0 gives z.
    Even q: one word per power-basis element f, the element x(fa) y(fb) z(f^2 ab)
    written in the basis generators; l0 gives the z generators.
    """
    p, e = factor_prime_power(q)
    x, y = f"x{prime}", f"y{prime}"
    ab = parse_line_label(label)
    if q % 2 == 1:
        if e != 1:
            raise UnsupportedOrder("odd non-prime q")
        z = commutator(((x, 1),), ((y, 1),))
        if ab is None:
            return [z]
        a, bb = ab
        return [word((x, a), (y, bb)) + z * half_exponent(q, a, bb)]
    F = make_field(q)
    basis = [p**k for k in range(e)]
    if ab is None:
        return [((f"z{k}{prime}", 1),) for k in range(e)]
    a, bb = ab
    out = []
    for f in basis:
        fa, fb = F.mul(f, a), F.mul(f, bb)
        w = ()
        for s, c in (("x", fa), ("y", fb), ("z", F.mul(fa, fb))):
            w += tuple((f"{s}{i}{prime}", 1) for i, bit in enumerate(F.coeffs(c)) if bit)
        out.append(w)
    return out
