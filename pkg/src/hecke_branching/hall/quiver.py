"""Nilpotent representations of the cyclic quiver with e vertices.

Vertex ``i`` carries ``F^{dims[i]}`` and the arrow ``i -> i+1`` is a
``dims[i+1] x dims[i]`` matrix.  Isomorphism classes are detected by the
rank table ``r(i, k) = rank(X^k : V_i -> V_{i+k})``, a complete invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..multiseg import DomainError, Multisegment, weight
from .linalg import Matrix, nullspace, rank


@dataclass(frozen=True)
class QuiverRep:
    e: int
    dims: tuple[int, ...]
    arrows: tuple[tuple[tuple[int, ...], ...], ...]
    p: int | None = None

    def __post_init__(self) -> None:
        if len(self.dims) != self.e or len(self.arrows) != self.e:
            raise DomainError("a representation needs one space and one arrow per residue")
        for i, a in enumerate(self.arrows):
            rows, cols = self.dims[(i + 1) % self.e], self.dims[i]
            if len(a) != rows or any(len(r) != cols for r in a):
                raise DomainError(f"arrow {i} -> {(i + 1) % self.e} must be {rows} x {cols}")
        if not self.is_nilpotent():
            raise DomainError("representation is not nilpotent")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def arrow(self, i: int) -> Matrix:
        return [list(r) for r in self.arrows[i % self.e]]

    def apply(self, i: int, vec) -> list[int]:
        """Image of a vector of ``V_i`` under the arrow ``i -> i+1``."""
        a = self.arrows[i % self.e]
        out = [sum(x * y for x, y in zip(row, vec)) for row in a]
        return [x % self.p for x in out] if self.p else out

    def composite(self, i: int, k: int) -> list[list[int]]:
        """Images under ``X^k`` of the standard basis of ``V_i``, as vectors of ``V_{i+k}``."""
        d = self.dims[i % self.e]
        cols = [[int(r == c) for r in range(d)] for c in range(d)]
        for step in range(k):
            cols = [self.apply(i + step, v) for v in cols]
        return cols

    def is_nilpotent(self) -> bool:
        n = self.total_dim
        return all(not any(any(v) for v in self.composite(i, n)) for i in range(self.e))


def build_rep(psi: Multisegment, p: int | None = None) -> QuiverRep:
    """Direct sum of the uniserial representations of the segments of ``psi``."""
    e = psi.e
    dims = weight(psi)
    arrows = [[[0] * dims[i] for _ in range(dims[(i + 1) % e])] for i in range(e)]
    nxt = [0] * e
    for seg in psi.segments():
        prev = None
        for k in range(seg.length):
            res = (seg.head + k) % e
            idx = nxt[res]
            nxt[res] += 1
            if prev is not None:
                arrows[prev[0]][idx][prev[1]] = 1
            prev = (res, idx)
    return QuiverRep(e, dims, tuple(tuple(tuple(r) for r in a) for a in arrows), p)


def rank_invariants(x: QuiverRep) -> tuple[tuple[int, ...], ...]:
    """``table[i][k] = r(i, k)`` for ``0 <= k <= total_dim``."""
    n = x.total_dim
    table = []
    for i in range(x.e):
        row = [x.dims[i]]
        cols = x.composite(i, 0)
        for k in range(1, n + 1):
            cols = [x.apply(i + k - 1, v) for v in cols]
            row.append(rank(cols, x.p))
        table.append(tuple(row))
    return tuple(table)


def classify_from_ranks(e: int, table) -> Multisegment:
    return _classify_cached(e, tuple(tuple(row) for row in table))


@lru_cache(maxsize=1 << 16)
def _classify_cached(e: int, table: tuple) -> Multisegment:
    """The multisegment with the given rank table.

    ``N(i, m) = r(i, m) - r(i, m+1)`` counts basis vectors at residue ``i``
    sitting ``m`` steps before the end of their segment, so segments with tail
    ``t`` and length ``>= L`` number ``N(t-L+1, L-1)``.
    """

    def r(i: int, k: int) -> int:
        row = table[i % e]
        return row[k] if k < len(row) else 0

    def n(i: int, m: int) -> int:
        return r(i, m) - r(i, m + 1)

    top = max(len(row) for row in table)
    counts = {}
    for length in range(1, top + 1):
        for tail in range(e):
            mult = n(tail - length + 1, length - 1) - n(tail - length, length)
            if mult < 0:
                raise DomainError("inconsistent rank table (input is not nilpotent)")
            if mult:
                counts[(length, (tail - length + 1) % e)] = mult
    return Multisegment.from_counts(e, counts)


def classify(x: QuiverRep) -> Multisegment:
    psi = classify_from_ranks(x.e, rank_invariants(x))
    if weight(psi) != tuple(x.dims):
        raise DomainError("inconsistent rank table (input is not nilpotent)")
    return psi


def delta_matrix(m: QuiverRep, n: QuiverRep) -> tuple[Matrix, int, int]:
    """The map ``h -> (X^N_i h_i - h_{i+1} X^M_i)_i`` from graded maps to arrow-shaped maps.

    Returns (matrix, number of source coordinates, number of target coordinates).
    Its kernel is Hom(M, N) and its cokernel is Ext^1(M, N).
    """
    e = m.e
    src: dict[tuple[int, int, int], int] = {}
    for i in range(e):
        for r in range(n.dims[i]):
            for c in range(m.dims[i]):
                src[(i, r, c)] = len(src)
    rows: Matrix = []
    for i in range(e):
        j = (i + 1) % e
        xn, xm = n.arrows[i], m.arrows[i]
        for r in range(n.dims[j]):
            for c in range(m.dims[i]):
                row = [0] * len(src)
                for s in range(n.dims[i]):
                    if xn[r][s]:
                        row[src[(i, s, c)]] += xn[r][s]
                for s in range(m.dims[j]):
                    if xm[s][c]:
                        row[src[(j, r, s)]] -= xm[s][c]
                rows.append(row)
    return rows, len(src), len(rows)


def hom_dim(m: QuiverRep, n: QuiverRep) -> int:
    rows, nsrc, _ = delta_matrix(m, n)
    if not rows:
        return nsrc
    return len(nullspace(rows, nsrc, m.p))


@lru_cache(maxsize=None)
def end_dim(psi: Multisegment) -> int:
    x = build_rep(psi)
    return hom_dim(x, x)


def dim_orbit(psi: Multisegment) -> int:
    """``sum dims_i^2 - dim End(M_psi)``, computed over Q."""
    return sum(d * d for d in weight(psi)) - end_dim(psi)


def gl_order(n: int, q: int) -> int:
    out = 1
    for k in range(n):
        out *= q**n - q**k
    return out


def aut_order(psi: Multisegment, q: int) -> int:
    """``|Aut M_psi|`` over F_q: the radical of End has codimension ``sum n_j^2``."""
    mults = [m for _, m in psi.items]
    out = q ** (end_dim(psi) - sum(m * m for m in mults))
    for m in mults:
        out *= gl_order(m, q)
    return out
