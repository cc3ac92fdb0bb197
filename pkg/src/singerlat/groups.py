"""Words, finite presentations and small finite groups.

A word is a tuple of letters ``(name, +1 | -1)``.  Relators are stored as
words; ``canonical_relator`` picks a representative of the class of a word
under free/cyclic reduction, rotation and inversion so relator sets can be
compared literally.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

Letter = tuple[str, int]
Word = tuple[Letter, ...]


class PresentationError(ValueError):
    pass


# -- words --------------------------------------------------------------------

def gen_power(name: str, k: int) -> Word:
    s = 1 if k >= 0 else -1
    return ((name, s),) * abs(k)


def word(*parts) -> Word:
    """Concatenate parts; a part is a Word, a generator name, or (name, exponent)."""
    out: list[Letter] = []
    for p in parts:
        if isinstance(p, str):
            out.append((p, 1))
        elif p and isinstance(p[0], str):
            out.extend(gen_power(p[0], p[1]))
        else:
            out.extend(p)
    return tuple(out)


def inverse(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def free_reduce(w: Iterable[Letter]) -> Word:
    stack: list[Letter] = []
    for g, e in w:
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


def cyclic_reduce(w: Word) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i][0] == w[j - 1][0] and w[i][1] == -w[j - 1][1]:
        i += 1
        j -= 1
    return w[i:j]


def canonical_relator(w: Word) -> Word:
    """Least rotation of the cyclically reduced word or its inverse."""
    w = cyclic_reduce(w)
    if not w:
        return ()
    candidates = []
    for v in (w, inverse(w)):
        candidates.extend(v[k:] + v[:k] for k in range(len(v)))
    return min(candidates, key=lambda v: tuple((g, -e) for g, e in v))


def commutator(u: Word, v: Word) -> Word:
    return u + v + inverse(u) + inverse(v)


def substitute(w: Word, name: str, replacement: Word) -> Word:
    out: list[Letter] = []
    inv = inverse(replacement)
    for g, e in w:
        if g == name:
            out.extend(replacement if e > 0 else inv)
        else:
            out.append((g, e))
    return free_reduce(out)


def exponent_sum(w: Word, name: str) -> int:
    return sum(e for g, e in w if g == name)


def occurrences(w: Word, name: str) -> int:
    return sum(1 for g, _ in w if g == name)


def format_word(w: Word) -> str:
    """Runs of one letter are written as powers: ``x^3 y^-1``; the empty word is ``1``."""
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        g, e = w[i]
        k = (j - i) * e
        parts.append(g if k == 1 else f"{g}^{k}")
        i = j
    return " ".join(parts) or "1"


def parse_word(text: str) -> Word:
    out: list[Letter] = []
    for tok in text.split():
        if tok == "1":
            continue
        name, caret, exp = tok.partition("^")
        if not name or (caret and not exp):
            raise PresentationError(f"bad token {tok!r}")
        try:
            k = int(exp) if exp else 1
        except ValueError:
            raise PresentationError(f"bad exponent in {tok!r}") from None
        out.extend(gen_power(name, k))
    return tuple(out)


# -- presentations --------------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise PresentationError("duplicate generator names")
        for g in self.generators:
            if not g or any(ch.isspace() for ch in g) or "^" in g or g == "1":
                raise PresentationError(f"bad generator name {g!r}")
        for r in self.relators:
            for g, e in r:
                if g not in gens:
                    raise PresentationError(f"relator uses undeclared generator {g!r}")
                if e not in (1, -1):
                    raise PresentationError("letters carry exponent +1 or -1")

    def canonical(self) -> Presentation:
        rels = sorted({canonical_relator(r) for r in self.relators} - {()})
        return Presentation(self.generators, tuple(rels))

    @property
    def relator_set(self) -> frozenset:
        return frozenset(self.canonical().relators)

    def same_as(self, other: Presentation) -> bool:
        return set(self.generators) == set(other.generators) and self.relator_set == other.relator_set

    def exponent_matrix(self) -> list[list[int]]:
        """Rows are relators, columns generators, entries exponent sums."""
        return [[exponent_sum(r, g) for g in self.generators] for r in self.relators]

    def to_text(self) -> str:
        lines = ["generators: " + " ".join(self.generators)]
        lines += [format_word(r) for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Presentation:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("generators:"):
            raise PresentationError("missing generators line")
        gens = tuple(lines[0][len("generators:"):].split())
        return cls(gens, tuple(parse_word(ln) for ln in lines[1:]))

    def free_product(self, other: Presentation) -> Presentation:
        return Presentation(self.generators + other.generators, self.relators + other.relators)


# -- finite groups ----------------------------------------------------------------

class FiniteGroup:
    """A finite group given by elements, a multiplication and named generators.

    Elements are addressed by index; index 0 is the identity.  The table is
    filled lazily.  ``relators`` records a presentation on the generator
    names that the caller asserts; ``check_relators`` evaluates them.
    """

    def __init__(self, elements: list, mul: Callable, generators: dict[str, int],
                 relators: Iterable[Word] = (), name: str = ""):
        self.elements = list(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate group elements")
        self._mul = mul
        self._table: dict[tuple[int, int], int] = {}
        self.generators = dict(generators)
        self.relators = tuple(relators)
        self.name = name
        self._inv: list[int] | None = None
        self._words: list[Word] | None = None

    @classmethod
    def generated(cls, gens: dict[str, Hashable], mul: Callable, identity: Hashable,
                  relators: Iterable[Word] = (), name: str = "", limit: int = 100_000) -> FiniteGroup:
        """Closure of ``gens`` under right multiplication (breadth first)."""
        elements = [identity]
        seen = {identity}
        queue = deque([identity])
        gvals = list(gens.values())
        while queue:
            x = queue.popleft()
            for g in gvals:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    queue.append(y)
                    if len(elements) > limit:
                        raise ValueError("group closure exceeded size limit")
        idx = {x: i for i, x in enumerate(elements)}
        return cls(elements, mul, {n: idx[g] for n, g in gens.items()}, relators, name)

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def op(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._table.get(key)
        if r is None:
            r = self.index[self._mul(self.elements[i], self.elements[j])]
            self._table[key] = r
        return r

    def inv(self, i: int) -> int:
        if self._inv is None:
            out = [-1] * self.order
            out[0] = 0
            for a in range(1, self.order):
                if out[a] >= 0:
                    continue
                # walk the cyclic subgroup of a: a^k inverts a^(m-k)
                powers = [0, a]
                while powers[-1] != 0:
                    powers.append(self.op(powers[-1], a))
                m = len(powers) - 1
                for k in range(1, m):
                    out[powers[k]] = powers[m - k]
            self._inv = out
        return self._inv[i]

    def evaluate(self, w: Word, images: dict[str, int] | None = None) -> int:
        images = self.generators if images is None else images
        x = 0
        for g, e in w:
            y = images[g]
            x = self.op(x, y if e > 0 else self.inv(y))
        return x

    def word_of(self, i: int) -> Word:
        """A shortest positive word in the generators representing element i."""
        if self._words is None:
            words: list[Word | None] = [None] * self.order
            words[0] = ()
            queue = deque([0])
            gens = sorted(self.generators.items())
            while queue:
                x = queue.popleft()
                for n, g in gens:
                    y = self.op(x, g)
                    if words[y] is None:
                        words[y] = words[x] + ((n, 1),)
                        queue.append(y)
            if any(w is None for w in words):
                raise ValueError("generators do not generate the group")
            self._words = words
        return self._words[i]

    def check_relators(self) -> bool:
        return all(self.evaluate(r) == 0 for r in self.relators)

    @property
    def presentation(self) -> Presentation:
        return Presentation(tuple(self.generators), self.relators)

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.op(x, i)
            k += 1
        return k

    def is_abelian(self) -> bool:
        gs = list(self.generators.values())
        return all(self.op(a, b) == self.op(b, a) for a in gs for b in gs)

    def subgroup(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(gens)
        out = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.op(x, g)
                if y not in out:
                    out.add(y)
                    queue.append(y)
        return frozenset(out)

    def left_coset(self, g: int, sub: frozenset[int]) -> frozenset[int]:
        return frozenset(self.op(g, h) for h in sub)

    def left_cosets(self, sub: frozenset[int]) -> list[frozenset[int]]:
        """Left cosets gH in order of their smallest element."""
        seen: set[int] = set()
        out = []
        for g in range(self.order):
            if g not in seen:
                c = self.left_coset(g, sub)
                seen |= c
                out.append(c)
        return out


def trivial_group(name: str = "1") -> FiniteGroup:
    return FiniteGroup([()], lambda a, b: (), {}, (), name)


def cyclic_group(n: int, gen: str, name: str = "") -> FiniteGroup:
    return FiniteGroup(list(range(n)), lambda a, b: (a + b) % n, {gen: 1 % n} if n > 1 else {gen: 0},
                       [gen_power(gen, n)], name or f"Z/{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str = "") -> FiniteGroup:
    """Generators of both factors; relators of both plus commutators across."""
    elements = [(a, b) for a in g.elements for b in h.elements]
    # keep the identity first
    elements.remove((g.elements[0], h.elements[0]))
    elements.insert(0, (g.elements[0], h.elements[0]))

    def mul(x, y):
        return (g._mul(x[0], y[0]), h._mul(x[1], y[1]))

    idx = {x: i for i, x in enumerate(elements)}
    gens = {n: idx[(g.elements[i], h.elements[0])] for n, i in g.generators.items()}
    gens.update({n: idx[(g.elements[0], h.elements[i])] for n, i in h.generators.items()})
    rels = list(g.relators) + list(h.relators)
    rels += [commutator(((a, 1),), ((b, 1),)) for a in g.generators for b in h.generators]
    return FiniteGroup(elements, mul, gens, rels, name or f"{g.name}x{h.name}")


@dataclass
class GroupHom:
    """Homomorphism given on generators by words in the target's generators."""

    source: FiniteGroup
    target: FiniteGroup
    images: dict[str, Word] = field(default_factory=dict)

    def __post_init__(self):
        missing = set(self.source.generators) - set(self.images)
        if missing:
            raise ValueError(f"no image for generators {sorted(missing)}")
        self._gen_img = {n: self.target.evaluate(w) for n, w in self.images.items()}
        self._map = [self.target.evaluate(self.source.word_of(i), self._gen_img)
                     for i in range(self.source.order)]

    def __call__(self, i: int) -> int:
        return self._map[i]

    def image(self) -> frozenset[int]:
        return frozenset(self._map)

    def is_homomorphism(self) -> bool:
        s, t, m = self.source, self.target, self._map
        return all(m[s.op(a, b)] == t.op(m[a], m[b]) for a in range(s.order) for b in range(s.order))

    def is_injective(self) -> bool:
        return len(set(self._map)) == self.source.order
