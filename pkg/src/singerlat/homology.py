"""Abelianisations, kernels over Z/n and rational homology of quotient scwols."""

from __future__ import annotations

from collections import Counter
from itertools import permutations, product
from math import gcd

from .ffield import factor_prime_power
from .groups import Presentation
from .lattices import LatticeSpec, a2_cyclic_lattice
from .reports import VerificationReport
from .scwol import HomologyGroup, Scwol, scwol_homology
from .singer import OrderedDifferenceSet
from .snf import smith_normal_form

AbelianGroupDescription = HomologyGroup

EXHAUSTIVE_LIMIT = 10**6


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def elementary_divisors(torsion) -> Counter:
    """Multiset of prime powers of a finite abelian group given by any cyclic factors."""
    out = Counter()
    for d in torsion:
        for p in _prime_factors(d):
            k = 1
            while d % (p * k) == 0:
                k *= p
            out[k] += 1
    return out


def invariant_factors(torsion) -> tuple[int, ...]:
    """Cyclic factors rewritten as a divisibility chain d1 | d2 | ... with every d > 1."""
    by_prime: dict[int, list[int]] = {}
    for pk, mult in elementary_divisors(torsion).items():
        p = _prime_factors(pk)[0]
        by_prime.setdefault(p, []).extend([pk] * mult)
    length = max((len(v) for v in by_prime.values()), default=0)
    chain = [1] * length
    for powers in by_prime.values():
        powers.sort()
        for i, pk in enumerate(powers):
            chain[length - len(powers) + i] *= pk
    return tuple(chain)


def abelian_group(free_rank: int, torsion=()) -> HomologyGroup:
    return HomologyGroup(free_rank, invariant_factors(torsion))


def same_group(a: HomologyGroup, b: HomologyGroup) -> bool:
    return a.free_rank == b.free_rank and invariant_factors(a.torsion) == invariant_factors(b.torsion)


def h1_of_presentation(p: Presentation) -> HomologyGroup:
    """Cokernel of the exponent-sum matrix (rows relators, columns generators)."""
    m = p.exponent_matrix()
    if not m:
        return HomologyGroup(len(p.generators), ())
    snf = smith_normal_form(m)
    return abelian_group(len(p.generators) - snf.rank, [d for d in snf.invariants if d > 1])


def is_perfect(p: Presentation) -> bool:
    h = h1_of_presentation(p)
    return h.free_rank == 0 and not h.torsion


def difference_matrix(dss) -> list[list[int]]:
    """Rows (d1(j), d2(j), d3(j)) for j = 1..q; the j = 0 row is zero and omitted."""
    return [[d[j] for d in dss] for j in range(1, len(dss[0]))]


def _kernel_exhaustive(d, n: int) -> HomologyGroup:
    cols = len(d[0]) if d else 0
    ker = [x for x in product(range(n), repeat=cols)
           if all(sum(a * b for a, b in zip(row, x)) % n == 0 for row in d)]
    # for each prime p | n: |K[p^k]| = p^(sum min(a_i, k)), so successive ratios count factors
    torsion = []
    for p in _prime_factors(n):
        counts = []
        pk = 1
        while True:
            c = sum(1 for x in ker if all((pk * v) % n == 0 for v in x))
            counts.append(c)
            if len(counts) > 1 and counts[-1] == counts[-2]:
                break
            pk *= p
        # number of factors of order >= p^k
        ge = []
        for k in range(1, len(counts)):
            r, ratio = 0, counts[k] // counts[k - 1]
            while ratio > 1:
                ratio //= p
                r += 1
            ge.append(r)
        for k, r in enumerate(ge, start=1):
            nxt = ge[k] if k < len(ge) else 0
            torsion += [p**k] * (r - nxt)
    return abelian_group(0, torsion)


def _kernel_snf(d, n: int) -> HomologyGroup:
    cols = len(d[0]) if d else 0
    diag = list(smith_normal_form(d).invariants) if d else []
    diag += [0] * (cols - len(diag))
    return abelian_group(0, [gcd(x, n) for x in diag if gcd(x, n) > 1])


def kernel_mod_n(d, n: int, method: str = "auto") -> HomologyGroup:
    """Isomorphism type of {x in (Z/n)^cols : d x = 0}."""
    d = [[x % n for x in row] for row in d]
    cols = len(d[0]) if d else 0
    if method == "auto":
        method = "exhaustive" if n**cols <= EXHAUSTIVE_LIMIT else "snf"
    if method == "exhaustive":
        return _kernel_exhaustive(d, n)
    if method == "snf":
        return _kernel_snf(d, n)
    raise ValueError("method is auto, exhaustive or snf")


def rational_betti_from_quotient(s: Scwol) -> tuple[int, ...]:
    return tuple(h.free_rank for h in scwol_homology(s))


def a2_homology_report(q: int, dss: list[OrderedDifferenceSet]) -> VerificationReport:
    spec = a2_cyclic_lattice(q, *dss)
    n = q * q + q + 1
    h1 = h1_of_presentation(spec.presentation)
    ker = kernel_mod_n(difference_matrix(dss), n)
    rep = VerificationReport(f"Ã₂ homology q={q}", data={"H1": str(h1), "ker_D": str(ker)})
    rep.add("H1 is isomorphic to ker D", same_group(h1, ker), "abelianisation equals kernel of the difference matrix")
    rep.add("H1 torsion divides n", all(n % t == 0 for t in h1.torsion) and h1.free_rank == 0,
            "abelianisation is a quotient of (Z/n)^3")
    rep.asserted("H2", "stated formula", value=f"Z^{q}")
    rep.asserted("H_odd>=3", "stated formula", value=f"(Z/{n})^3")
    rep.data["perfect"] = is_perfect(spec.presentation)
    return rep


def c2_h1_check(q: int, spec: LatticeSpec) -> VerificationReport:
    """Compare H1 of a one-panel C̃₂ lattice with (Z/q)^6, read as (F_q, +)^6."""
    p, e = factor_prime_power(q)
    h1 = h1_of_presentation(spec.presentation)
    expected = abelian_group(0, [p] * (6 * e))
    rep = VerificationReport(f"C̃₂ one-panel H1 q={q}", data={"H1": str(h1), "expected": str(expected)})
    rep.add("H1 equals (Z/q)^6", same_group(h1, expected), "stated abelianisation of the one-panel lattice")
    rep.asserted("H2", "stated formula", value="H2(S) + H2(S')")
    return rep


def search_perfect_orderings(q: int, d: OrderedDifferenceSet, limit: int | None = None):
    """Lexicographically first (d1, d2, d3) reorderings of d (0 kept first) giving a perfect lattice."""
    tails = list(permutations(range(1, q + 1)))
    d1 = d
    tried = 0
    for t2 in tails:
        for t3 in tails:
            tried += 1
            if limit is not None and tried > limit:
                return None
            d2, d3 = d.reordered((0,) + t2), d.reordered((0,) + t3)
            if is_perfect(a2_cyclic_lattice(q, d1, d2, d3).presentation):
                return d1, d2, d3
    return None
