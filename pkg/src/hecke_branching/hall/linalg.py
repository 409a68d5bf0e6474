"""Small dense linear algebra over F_p (``p`` a prime) or Q (``p=None``).

Matrices are lists of rows.  Everything is exact; sizes here are tiny, so
plain Python beats the overhead of a general-purpose package.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Sequence

Matrix = list[list[int]]


def _inv(x, p):
    return pow(x, -1, p) if p else 1 / Fraction(x)


def rref(rows: Sequence[Sequence], ncols: int, p: int | None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[x % p for x in r] if p else [Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _inv(m[r][c], p)
        m[r] = [(x * inv) % p for x in m[r]] if p else [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                if p:
                    m[k] = [(a - f * b) % p for a, b in zip(m[k], m[r])]
                else:
                    m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], p: int | None) -> int:
    """Rank without building the reduced form (forward elimination only)."""
    if not rows:
        return 0
    ncols = len(rows[0])
    if p is None:
        return len(rref(rows, ncols, None)[1])
    m = [[x % p for x in r] for r in rows]
    r = 0
    for c in range(ncols):
        piv = None
        for k in range(r, len(m)):
            if m[k][c]:
                piv = k
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], -1, p)
        for k in range(r + 1, len(m)):
            f = m[k][c]
            if f:
                f = f * inv % p
                m[k] = [(a - f * b) % p for a, b in zip(m[k], row)]
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows: Sequence[Sequence], ncols: int, p: int | None) -> list[list]:
    """Basis of ``{x : A x = 0}``."""
    red, pivots = rref(rows, ncols, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(red, pivots):
            x[pc] = (-row[f]) % p if p else -row[f]
        basis.append(x)
    return basis


def matmul(a: Matrix, b: Matrix, p: int | None, inner: int | None = None) -> Matrix:
    """``a @ b``; ``inner`` is needed when ``a`` has no rows to know the shape of ``b``."""
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = [sum(row[k] * b[k][j] for k in range(len(row))) for j in range(cols)]
        out.append([x % p for x in new] if p else new)
    return out


def transpose(a: Matrix, ncols: int) -> Matrix:
    return [[a[r][c] for r in range(len(a))] for c in range(ncols)]


def echelon_subspaces(n: int, k: int, p: int) -> Iterator[list[tuple[int, ...]]]:
    """All ``k``-dimensional subspaces of F_p^n, one reduced echelon basis each."""
    if k == 0:
        yield []
        return
    for pivots in combinations(range(n), k):
        free_slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for values in product(range(p), repeat=len(free_slots)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(free_slots, values):
                rows[r][c] = x
            yield [tuple(r) for r in rows]


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for j in range(k):
        num *= q ** (n - j) - 1
        den *= q ** (j + 1) - 1
    return num // den


def complement_positions(basis: Sequence[Sequence[int]], n: int, p: int) -> list[int]:
    """Coordinates whose standard vectors complete the span of ``basis`` to F_p^n."""
    _, pivots = rref(basis, n, p) if basis else ([], [])
    return [c for c in range(n) if c not in pivots]


def subspaces_containing(basis: Sequence[Sequence[int]], n: int, k: int, p: int) -> Iterator[list[list[int]]]:
    """All ``k``-dimensional subspaces of F_p^n containing the span of ``basis``."""
    red, pivots = rref(basis, n, p) if basis else ([], [])
    w = len(red)
    if k < w:
        return
    free = [c for c in range(n) if c not in pivots]
    for sub in echelon_subspaces(len(free), k - w, p):
        extra = []
        for row in sub:
            vec = [0] * n
            for pos, x in zip(free, row):
                vec[pos] = x
            extra.append(vec)
        yield red + extra
