"""Exact arithmetic in GF(p^e).

Elements are stored as coefficient tuples in the power basis of a root of the
modulus polynomial.  Internally every element also has an integer code
``sum(c_i * p**i)``; the code order is the "coefficient-lexicographic" order
used whenever a deterministic choice is needed (modulus, primitive element).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

MAX_ORDER = 64  # largest user-facing q for planes/quadrangles

_TABLE_LIMIT = 1 << 12


class NotPrimePower(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with p**e == q, or raise NotPrimePower."""
    if not isinstance(q, int) or q < 2:
        raise NotPrimePower(f"{q!r} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, e


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


# -- polynomials over Z/p, coefficient lists low-to-high -----------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    lead_inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    e = len(m) - 1
    for d in range(1, e // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _polymod(m, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e with the smallest code; returned low-to-high incl. leading 1."""
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        m = low + [1]
        if e == 1 or _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int
    degree: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if len(self.modulus) != self.degree + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of the stated degree")
        if any(not 0 <= c < self.characteristic for c in self.modulus):
            raise ValueError("modulus coefficients out of range")

    @property
    def order(self) -> int:
        return self.characteristic**self.degree

    def __repr__(self):
        return f"GF({self.order})"

    # integer-coded arithmetic ------------------------------------------------

    def coeffs(self, code: int) -> tuple[int, ...]:
        p = self.characteristic
        return tuple((code // p**i) % p for i in range(self.degree))

    def code(self, coeffs) -> int:
        p = self.characteristic
        return sum((c % p) * p**i for i, c in enumerate(coeffs))

    def _add_slow(self, a: int, b: int) -> int:
        p = self.characteristic
        if p == 2:
            return a ^ b
        if self.degree == 1:
            return (a + b) % p
        out, w = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def _neg_slow(self, a: int) -> int:
        p = self.characteristic
        out, w = 0, 1
        while a:
            out += ((-(a % p)) % p) * w
            a //= p
            w *= p
        return out

    def _mul_slow(self, a: int, b: int) -> int:
        p = self.characteristic
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.code(_polymod(prod, list(self.modulus), p))

    @cached_property
    def _add_table(self):
        q = self.order
        if q > _TABLE_LIMIT:
            return None
        return [[self._add_slow(a, b) for b in range(q)] for a in range(q)]

    @cached_property
    def _neg_table(self):
        return [self._neg_slow(a) for a in range(self.order)]

    @cached_property
    def _primitive_code(self) -> int:
        q = self.order
        if q == 2:
            return 1
        n = q - 1
        primes = [r for r in range(2, n + 1) if n % r == 0 and is_prime(r)]
        for g in range(2, q):
            if all(self._pow_slow(g, n // r) != 1 for r in primes):
                return g
        raise AssertionError("no primitive element")  # unreachable

    def _pow_slow(self, a: int, k: int) -> int:
        out = 1
        while k:
            if k & 1:
                out = self._mul_slow(out, a)
            a = self._mul_slow(a, a)
            k >>= 1
        return out

    @cached_property
    def _exp_log(self):
        # exhaustive: the powers of the primitive element must hit every nonzero element once
        q, g = self.order, self._primitive_code
        exp = [1] * (q - 1)
        for k in range(1, q - 1):
            exp[k] = self._mul_slow(exp[k - 1], g)
        log = [None] * q
        for k, x in enumerate(exp):
            if log[x] is not None:
                raise AssertionError("primitive element has order < q-1")
            log[x] = k
        if any(log[x] is None for x in range(1, q)):
            raise AssertionError("primitive element does not generate")
        return exp, log

    def add(self, a: int, b: int) -> int:
        t = self._add_table
        return t[a][b] if t is not None else self._add_slow(a, b)

    def neg(self, a: int) -> int:
        return self._neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        exp, log = self._exp_log
        return exp[(log[a] + log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        exp, log = self._exp_log
        return exp[-log[a] % (self.order - 1)]

    def power(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if k == 0 else 0
        exp, log = self._exp_log
        return exp[log[a] * k % (self.order - 1)]

    def from_int(self, n: int) -> int:
        """Code of the image of the integer n under Z -> GF(q)."""
        return n % self.characteristic

    # element-level API --------------------------------------------------------

    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, int):
            if not 0 <= value < self.order:
                raise ValueError(f"code {value} out of range for {self!r}")
            return FieldElement(self, self.coeffs(value))
        return FieldElement(self, tuple(value))

    def elements(self) -> list[FieldElement]:
        return [self.element(i) for i in range(self.order)]

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    def is_subfield_element(self, a: int, r: int) -> bool:
        """True iff a lies in the subfield of order r (a**r == a)."""
        return self.power(a, r) == a if a else True


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    coefficients: tuple[int, ...]

    def __post_init__(self):
        f = self.field
        if len(self.coefficients) != f.degree:
            raise ValueError("wrong number of coefficients")
        if any(not 0 <= c < f.characteristic for c in self.coefficients):
            raise ValueError("coefficient out of range")

    @property
    def code(self) -> int:
        return self.field.code(self.coefficients)

    def _other(self, other) -> int:
        if isinstance(other, int):
            return self.field.from_int(other)
        if other.field != self.field:
            raise ValueError("elements of different fields")
        return other.code

    def _wrap(self, code: int) -> FieldElement:
        return self.field.element(code)

    def __add__(self, other):
        return self._wrap(self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.code, self._other(other)))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.code))

    def __truediv__(self, other):
        return self * self._wrap(self.field.inv(self._other(other)))

    def __pow__(self, k: int):
        return self._wrap(self.field.power(self.code, k))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else (f"{c}" if i == 0 else f"{c}*{mono}"))
        return " + ".join(reversed(terms)) or "0"


def make_field(q: int) -> FieldSpec:
    """GF(q) with the smallest-code irreducible modulus.

    >>> make_field(4).modulus
    (1, 1, 1)
    """
    p, e = factor_prime_power(q)
    return FieldSpec(p, e, smallest_irreducible(p, e))


def field_arith(op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


def primitive_element(f: FieldSpec) -> FieldElement:
    f._exp_log  # forces the exhaustive order check
    return f.element(f._primitive_code)


def multiplicative_order(a: FieldElement) -> int:
    f = a.field
    if not a:
        raise DivisionByZero("zero has no multiplicative order")
    x, k = a.code, 1
    while x != 1:
        x = f._mul_slow(x, a.code)
        k += 1
    return k
