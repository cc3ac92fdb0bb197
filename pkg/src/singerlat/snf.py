"""Smith normal form over the integers (arbitrary precision)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    k = len(b)
    n = len(b[0]) if b else 0
    return [[sum(row[t] * b[t][j] for t in range(k)) for j in range(n)] for row in a]


@dataclass
class SmithForm:
    invariants: tuple[int, ...]   # nonzero diagonal entries d1 | d2 | ...
    diagonal: list[list[int]]     # full m x n matrix S
    left: list[list[int]] | None = None
    right: list[list[int]] | None = None

    @property
    def rank(self) -> int:
        return len(self.invariants)


def smith_normal_form(matrix, transforms: bool = False) -> SmithForm:
    """Diagonalise an integer matrix by unimodular row/column operations.

    With ``transforms`` the returned L and R satisfy L @ M @ R == S.
    """
    A = [[int(x) for x in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    L = identity(m) if transforms else None
    R = identity(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if L is not None:
            L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if R is not None:
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        if c:
            A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
            if L is not None:
                L[dst] = [x + c * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        if c:
            for row in A:
                row[dst] += c * row[src]
            if R is not None:
                for row in R:
                    row[dst] += c * row[src]

    for t in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                add_col(j, t, -(A[t][j] // p))
            rest = [(abs(A[i][t]), i, "r") for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), j, "c") for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, k, kind = min(rest)
                swap_rows(t, k) if kind == "r" else swap_cols(t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if L is not None:
                L[t] = [-x for x in L[t]]

    inv = tuple(A[i][i] for i in range(min(m, n)) if A[i][i])
    return SmithForm(inv, A, L, R)


def determinant(M) -> int:
    """Bareiss fraction-free elimination."""
    A = [[int(x) for x in row] for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return 0
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def invariants_by_minors(M) -> tuple[int, ...]:
    """Invariant factors as ratios of gcds of k x k minors (slow oracle)."""
    m = len(M)
    n = len(M[0]) if m else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, determinant([[M[r][c] for c in cols] for r in rows]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)
