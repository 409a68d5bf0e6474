"""Hall numbers over prime fields and Hall polynomials by interpolation.

Two independent counting routes are provided:

* ``subspace``: enumerate the graded subspaces of ``M_psi`` stable under the
  arrows and classify each submodule and quotient by rank tables.  One pass
  yields the counts for every pair of types at a given dimension vector.
* ``riedtmann``: enumerate Ext^1(M, N) and classify the middle terms, then
  ``F^L_{M,N} = |Ext^1(M,N)_L| |Aut L| / (|Aut M| |Aut N| |Hom(M,N)|)``.

Hall polynomials are interpolated from either route over small primes.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Callable, Iterable

from ..multiseg import DomainError, Multisegment, multisegments_of_weight, weight
from .linalg import echelon_subspaces, gaussian_binomial, rank, rref, subspaces_containing
from .quiver import QuiverRep, aut_order, build_rep, classify_from_ranks, delta_matrix

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MAX_TOTAL_DIM = 6


class HallInterpolationError(RuntimeError):
    """Raised when the interpolant does not stabilize within the prime budget."""


@dataclass(frozen=True)
class HallPolynomial:
    """Integer polynomial in q; ``coeffs[k]`` multiplies ``q**k``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    def __call__(self, q):
        return sum(c * q**k for k, c in enumerate(self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            parts.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
        return " + ".join(parts)


def m_form(a: Iterable[int], b: Iterable[int]) -> int:
    """``sum_i a_i b_{i+1} + a_i b_i`` with indices mod e."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise DomainError("dimension vectors of different lengths")
    e = len(a)
    return sum(a[i] * b[(i + 1) % e] + a[i] * b[i] for i in range(e))


def _check_size(*psis: Multisegment) -> None:
    total = sum(psi.size for psi in psis)
    if total > MAX_TOTAL_DIM:
        raise DomainError(f"total dimension {total} exceeds the enumeration limit {MAX_TOTAL_DIM}")


def _check_prime(p: int) -> None:
    if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
        raise DomainError(f"{p} is not a prime")


# ---------------------------------------------------------------------------
# direct subspace enumeration


def _stable_subspaces(x: QuiverRep, sub_dims: tuple[int, ...]) -> Iterable[list[list[list[int]]]]:
    """Graded subspaces with the given dimension vector that are closed under the arrows."""
    e, p, dims = x.e, x.p, x.dims
    start = min(range(e), key=lambda i: (gaussian_binomial(dims[i], sub_dims[i], p), i))
    chosen: list = [None] * e

    def rec(step: int):
        j = (start + step) % e
        if step == 0:
            candidates = echelon_subspaces(dims[j], sub_dims[j], p)
        else:
            image = [x.apply(j - 1, v) for v in chosen[(j - 1) % e]]
            image = [v for v in image if any(v)]
            candidates = subspaces_containing(image, dims[j], sub_dims[j], p)
        for cand in candidates:
            chosen[j] = [list(v) for v in cand]
            if step == e - 1:
                back = [x.apply(j, v) for v in chosen[j]]
                first = chosen[start]
                if rank(first + back, p) == sub_dims[start]:
                    yield list(chosen)
            else:
                yield from rec(step + 1)

    yield from rec(0)


@lru_cache(maxsize=None)
def hall_census(psi: Multisegment, sub_dims: tuple[int, ...], p: int) -> dict:
    """``{(quotient type, sub type): count}`` over submodules of ``M_psi`` with the given dimensions."""
    _check_size(psi)
    e = psi.e
    x = build_rep(psi, p)
    dims = x.dims
    if any(s < 0 or s > d for s, d in zip(sub_dims, dims)):
        return {}
    top = psi.max_length
    full = {(i, k): [v for v in x.composite(i, k) if any(v)] for i in range(e) for k in range(top + 1)}
    out: Counter = Counter()
    for sub in _stable_subspaces(x, sub_dims):
        r_sub, r_quo = [], []
        for i in range(e):
            row_s, row_q = [sub_dims[i]], [dims[i] - sub_dims[i]]
            cols = sub[i]
            for k in range(1, top + 1):
                tgt = (i + k) % e
                if cols:
                    cols = [v for v in (x.apply(i + k - 1, v) for v in cols) if any(v)]
                row_s.append(rank(cols, p) if cols else 0)
                img = full[(i, k)]
                row_q.append(rank(img + sub[tgt], p) - sub_dims[tgt] if img else 0)
            r_sub.append(row_s)
            r_quo.append(row_q)
        out[(classify_from_ranks(e, r_quo), classify_from_ranks(e, r_sub))] += 1
    return dict(out)


def hall_number(psi: Multisegment, phi1: Multisegment, phi2: Multisegment, p: int) -> int:
    """Submodules ``U`` of ``M_psi`` over F_p with ``U ~ M_phi2`` and ``M_psi / U ~ M_phi1``."""
    _check_prime(p)
    if not psi.e == phi1.e == phi2.e:
        raise DomainError("multisegments over different e")
    d, d1, d2 = weight(psi), weight(phi1), weight(phi2)
    if any(a != b + c for a, b, c in zip(d, d1, d2)):
        return 0
    return hall_census(psi, d2, p).get((phi1, phi2), 0)


# ---------------------------------------------------------------------------
# counting through extensions


def ext_dim(phi1: Multisegment, phi2: Multisegment, p: int = 2) -> int:
    m, n = build_rep(phi1, p), build_rep(phi2, p)
    rows, nsrc, ntgt = delta_matrix(m, n)
    cols = [[rows[r][c] for r in range(ntgt)] for c in range(nsrc)]
    return ntgt - (rank(cols, p) if cols else 0)


@lru_cache(maxsize=None)
def riedtmann_census(phi1: Multisegment, phi2: Multisegment, p: int) -> dict:
    """``{L: F^L_{phi1, phi2}(p)}`` with ``phi1`` the quotient and ``phi2`` the submodule."""
    _check_size(phi1, phi2)
    e = phi1.e
    m, n = build_rep(phi1, p), build_rep(phi2, p)
    rows, nsrc, ntgt = delta_matrix(m, n)
    cols = [[rows[r][c] for r in range(ntgt)] for c in range(nsrc)]
    _, pivots = rref(cols, ntgt, p) if cols else ([], [])
    hom = nsrc - len(pivots)
    free = [c for c in range(ntgt) if c not in pivots]
    # coordinates of z_i[r][c] in the target of delta, in the same order as delta_matrix
    layout = []
    for i in range(e):
        j = (i + 1) % e
        for r in range(n.dims[j]):
            for c in range(m.dims[i]):
                layout.append((i, r, c))
    dims = tuple(n.dims[i] + m.dims[i] for i in range(e))
    top = phi1.max_length + phi2.max_length
    counts: Counter = Counter()
    for values in product(range(p), repeat=len(free)):
        z = [[[0] * m.dims[i] for _ in range(n.dims[(i + 1) % e])] for i in range(e)]
        for coord, val in zip(free, values):
            i, r, c = layout[coord]
            z[i][r][c] = val
        arrows = []
        for i in range(e):
            j = (i + 1) % e
            a = [list(n.arrows[i][r]) + z[i][r] for r in range(n.dims[j])]
            a += [[0] * n.dims[i] + list(m.arrows[i][r]) for r in range(m.dims[j])]
            arrows.append(a)
        table = []
        for i in range(e):
            cols_i = [[int(r == c) for r in range(dims[i])] for c in range(dims[i])]
            row = [dims[i]]
            for k in range(1, top + 1):
                a = arrows[(i + k - 1) % e]
                cols_i = [[sum(x * y for x, y in zip(ar, v)) % p for ar in a] for v in cols_i]
                row.append(rank(cols_i, p))
            table.append(row)
        counts[classify_from_ranks(e, table)] += 1
    denom = aut_order(phi1, p) * aut_order(phi2, p) * p**hom
    out = {}
    for psi, cnt in counts.items():
        num = cnt * aut_order(psi, p)
        if num % denom:
            raise AssertionError(f"non-integral extension count for {psi} at p={p}")
        out[psi] = num // denom
    return out


# ---------------------------------------------------------------------------
# interpolation


def interpolate(points: list[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (ascending) of the polynomial of degree < len(points) through the points."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for j, (xj, yj) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for k, (xk, _) in enumerate(points):
            if k == j:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xk * basis[t + 1]
            denom *= xj - xk
        for t in range(n):
            coeffs[t] += yj * basis[t] / denom
    return coeffs


def _evaluate(coeffs: list[Fraction], x: int) -> Fraction:
    return sum((c * x**k for k, c in enumerate(coeffs)), Fraction(0))


def adaptive_interpolation(
    evaluate: Callable[[int], dict], budget: int = len(PRIMES)
) -> tuple[dict, tuple[int, ...]]:
    """Fit every key of ``evaluate(p)`` through primes until two extra primes confirm the fit.

    Returns ``({key: HallPolynomial}, primes used)``.
    """
    primes = PRIMES[:budget]
    values: list[dict] = []
    for m in range(1, len(primes) + 1):
        values.append(evaluate(primes[m - 1]))
        if m < 3:
            continue
        keys = set().union(*values)
        polys = {}
        stable = True
        for key in keys:
            pts = [(primes[t], values[t].get(key, 0)) for t in range(m)]
            coeffs = interpolate(pts[:-2])
            if any(_evaluate(coeffs, x) != y for x, y in pts[-2:]) or any(c.denominator != 1 for c in coeffs):
                stable = False
                break
            polys[key] = HallPolynomial(tuple(int(c) for c in coeffs))
        if stable:
            return {k: v for k, v in polys.items() if v}, primes[:m]
    raise HallInterpolationError(f"Hall polynomial did not stabilize within {len(primes)} primes")


# ---------------------------------------------------------------------------
# structure constants with an optional on-disk cache

_cache_dir: Path | None = None


def set_cache_dir(path: str | os.PathLike | None) -> None:
    """Memoize structure constants as JSON files under ``path`` (``None`` disables)."""
    global _cache_dir
    _cache_dir = None if path is None else Path(path)
    if _cache_dir is not None:
        _cache_dir.mkdir(parents=True, exist_ok=True)


def _cache_key(phi1: Multisegment, phi2: Multisegment, method: str) -> str:
    blob = json.dumps([phi1.e, phi1.to_json(), phi2.to_json(), method], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _choose_method(phi1: Multisegment, phi2: Multisegment) -> str:
    q = 7
    ext_cost = q ** ext_dim(phi1, phi2)
    d = tuple(a + b for a, b in zip(weight(phi1), weight(phi2)))
    d2 = weight(phi2)
    sub_cost = 0
    for psi in multisegments_of_weight(phi1.e, d):
        cost = 1
        for n, k in zip(d, d2):
            cost *= gaussian_binomial(n, k, q)
        sub_cost += cost
    return "riedtmann" if ext_cost <= sub_cost else "subspace"


@lru_cache(maxsize=None)
def structure_constants(
    phi1: Multisegment, phi2: Multisegment, method: str = "auto"
) -> tuple[dict, tuple[int, ...]]:
    """``{psi: F^psi_{phi1, phi2}}`` as Hall polynomials, with the primes used to fit them."""
    if phi1.e != phi2.e:
        raise DomainError("multisegments over different e")
    if method == "auto":
        method = _choose_method(phi1, phi2)
    if method not in ("riedtmann", "subspace"):
        raise DomainError(f"unknown counting method {method!r}")
    path = None
    if _cache_dir is not None:
        path = _cache_dir / f"{_cache_key(phi1, phi2, method)}.json"
        if path.exists():
            data = json.loads(path.read_text())
            polys = {
                Multisegment.from_json(item["mseg"]): HallPolynomial(tuple(item["poly"])) for item in data["terms"]
            }
            return polys, tuple(data["primes"])
    _check_size(phi1, phi2)
    if method == "riedtmann":
        evaluate = lambda p: riedtmann_census(phi1, phi2, p)  # noqa: E731
    else:
        d = tuple(a + b for a, b in zip(weight(phi1), weight(phi2)))
        d2 = weight(phi2)
        targets = multisegments_of_weight(phi1.e, d)

        def evaluate(p: int) -> dict:
            return {psi: hall_census(psi, d2, p).get((phi1, phi2), 0) for psi in targets}

    polys, primes = adaptive_interpolation(evaluate)
    if path is not None:
        terms = [{"mseg": k.to_json(), "poly": v.to_json()} for k, v in sorted(polys.items(), key=lambda t: t[0].sort_key())]
        path.write_text(json.dumps({"primes": list(primes), "terms": terms}, sort_keys=True))
    return polys, primes


def hall_polynomial(
    psi: Multisegment, phi1: Multisegment, phi2: Multisegment, method: str = "riedtmann"
) -> HallPolynomial:
    if not psi.e == phi1.e == phi2.e:
        raise DomainError("multisegments over different e")
    if any(a != b + c for a, b, c in zip(weight(psi), weight(phi1), weight(phi2))):
        return HallPolynomial()
    polys, _ = structure_constants(phi1, phi2, method)
    return polys.get(psi, HallPolynomial())
