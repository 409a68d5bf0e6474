"""The Hall algebra of nilpotent cyclic-quiver representations in PBW coordinates.

Elements are stored in the basis ``E_psi = v^{dim O_psi} u_psi``.  Products are
computed in the ``u`` basis with
``u_{phi1} u_{phi2} = v^{m(dim phi1, dim phi2)} sum_psi F^psi_{phi1,phi2}(v^-2) u_psi``
and ``f_i = u_{[i;1]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from ..multiseg import DomainError, Multisegment, aperiodic_multisegments, rho, weight
from .counting import m_form, structure_constants
from .laurent import ONE, LaurentPoly, qfactorial
from .linalg import nullspace, rank, rref
from .quiver import dim_orbit


class PBWVector:
    """A finitely supported map multisegment -> Laurent polynomial (coefficients of ``E_psi``)."""

    __slots__ = ("e", "_terms")

    def __init__(self, e: int, terms: Mapping[Multisegment, LaurentPoly] | None = None) -> None:
        self.e = e
        clean = {}
        for psi, c in (terms or {}).items():
            if psi.e != e:
                raise DomainError("PBW term over a different e")
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(c)
            if c:
                clean[psi] = c
        self._terms = dict(sorted(clean.items(), key=lambda t: t[0].sort_key()))

    @classmethod
    def basis(cls, psi: Multisegment) -> "PBWVector":
        return cls(psi.e, {psi: ONE})

    @classmethod
    def one(cls, e: int) -> "PBWVector":
        return cls.basis(Multisegment.empty(e))

    @classmethod
    def from_u(cls, e: int, coeffs: Mapping[Multisegment, LaurentPoly]) -> "PBWVector":
        return cls(e, {psi: c.shift(-dim_orbit(psi)) for psi, c in coeffs.items()})

    def to_u(self) -> dict[Multisegment, LaurentPoly]:
        return {psi: c.shift(dim_orbit(psi)) for psi, c in self._terms.items()}

    def items(self):
        return self._terms.items()

    def coeff(self, psi: Multisegment) -> LaurentPoly:
        return self._terms.get(psi, LaurentPoly())

    def support(self) -> list[Multisegment]:
        return list(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PBWVector):
            return NotImplemented
        return self.e == other.e and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.e, tuple(self._terms.items())))

    def __add__(self, other: "PBWVector") -> "PBWVector":
        out = dict(self._terms)
        for psi, c in other._terms.items():
            out[psi] = out.get(psi, LaurentPoly()) + c
        return PBWVector(self.e, out)

    def __neg__(self) -> "PBWVector":
        return PBWVector(self.e, {psi: -c for psi, c in self._terms.items()})

    def __sub__(self, other: "PBWVector") -> "PBWVector":
        return self + (-other)

    def scale(self, c: LaurentPoly | int | Fraction) -> "PBWVector":
        return PBWVector(self.e, {psi: x * c for psi, x in self._terms.items()})

    def __mul__(self, other: "PBWVector") -> "PBWVector":
        return hall_product(self, other)

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "terms": [{"mseg": psi.to_json(), "coeff": c.to_json()} for psi, c in self._terms.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping) -> "PBWVector":
        if not isinstance(data, Mapping):
            raise DomainError("PBW vector JSON must be an object")
        e = data.get("e")
        if not isinstance(e, int) or isinstance(e, bool):
            raise DomainError("field 'e' must be an integer")
        terms = data.get("terms")
        if not isinstance(terms, list):
            raise DomainError("field 'terms' must be a list")
        out: dict = {}
        for k, t in enumerate(terms):
            if not isinstance(t, Mapping) or "mseg" not in t or "coeff" not in t:
                raise DomainError(f"field 'terms[{k}]' must have 'mseg' and 'coeff'")
            try:
                psi = Multisegment.from_json(t["mseg"], e)
            except DomainError as exc:
                raise DomainError(f"field 'terms[{k}].mseg': {exc}") from None
            c = LaurentPoly.from_json(t["coeff"], f"terms[{k}].coeff")
            out[psi] = out.get(psi, LaurentPoly()) + c
        return cls(e, out)

    def render(self, convention: str = "head") -> str:
        if not self._terms:
            return "0"
        parts = []
        for psi, c in self._terms.items():
            label = "E_" + psi.render(convention)
            if c == ONE:
                parts.append(label)
            elif len(c.terms) == 1 and next(iter(c.terms.values())) == 1:
                parts.append(f"{c}{label}")
            else:
                parts.append(f"({c}){label}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"PBWVector({self.render()})"


@lru_cache(maxsize=None)
def u_product(phi1: Multisegment, phi2: Multisegment) -> dict[Multisegment, LaurentPoly]:
    """``u_{phi1} u_{phi2}`` in the ``u`` basis."""
    polys, _ = structure_constants(phi1, phi2)
    shift = m_form(weight(phi1), weight(phi2))
    return {psi: LaurentPoly({-2 * k + shift: c for k, c in enumerate(f.coeffs)}) for psi, f in polys.items()}


def hall_product(x: PBWVector, y: PBWVector) -> PBWVector:
    if x.e != y.e:
        raise DomainError("cannot multiply elements over different e")
    out: dict[Multisegment, LaurentPoly] = {}
    xu, yu = x.to_u(), y.to_u()
    for a, ca in xu.items():
        for b, cb in yu.items():
            c = ca * cb
            for psi, f in u_product(a, b).items():
                out[psi] = out.get(psi, LaurentPoly()) + c * f
    return PBWVector.from_u(x.e, out)


def generator(e: int, i: int) -> PBWVector:
    """``f_i = u_{[i;1]} = E_{[i;1]}``."""
    return PBWVector.basis(Multisegment.from_heads(e, [(i, 1)]))


Word = tuple[tuple[int, int], ...]


@lru_cache(maxsize=None)
def _divided_power(e: int, i: int, n: int) -> PBWVector:
    gen = generator(e, i)
    acc = PBWVector.one(e)
    for _ in range(n):
        acc = hall_product(acc, gen)
    den = qfactorial(n)
    try:
        return PBWVector(e, {psi: c.exact_div(den) for psi, c in acc.items()})
    except ArithmeticError as exc:
        raise AssertionError(f"divided power f_{i}^({n}) is not exact: {exc}") from None


@lru_cache(maxsize=None)
def _monomial(e: int, word: Word) -> PBWVector:
    acc = PBWVector.one(e)
    for i, n in word:
        acc = hall_product(acc, _divided_power(e, i % e, n))
    return acc


def monomial_to_pbw(e: int, word: Iterable[tuple[int, int] | int]) -> PBWVector:
    """``f_{i1}^{(n1)} f_{i2}^{(n2)} ...``; bare integers mean ``n = 1``."""
    norm = tuple((w, 1) if isinstance(w, int) else (int(w[0]) % e, int(w[1])) for w in word)
    for i, n in norm:
        if n < 1:
            raise DomainError(f"divided power exponent must be positive, got {n}")
    return _monomial(e, norm)


def rho_on_hall(x: PBWVector) -> PBWVector:
    return PBWVector(x.e, {rho(psi): c for psi, c in x.items()})


# ---------------------------------------------------------------------------
# canonical basis


class CanonicalBasisError(RuntimeError):
    """The canonical-basis system is infeasible, ambiguous or non-integral within the caps."""


def divided_power_words(e: int, alpha: Sequence[int], cap: int | None = None) -> list[Word]:
    """Words ``((i1, n1), ...)`` of weight ``alpha`` with no two adjacent equal residues."""
    alpha = tuple(alpha)
    out: list[Word] = []

    def rec(rem: list[int], prev: int | None, acc: list) -> None:
        if not any(rem):
            out.append(tuple(acc))
            if cap is not None and len(out) > cap:
                raise CanonicalBasisError(f"more than {cap} words of weight {alpha}; raise the cap")
            return
        for i in range(e):
            if i == prev:
                continue
            for n in range(1, rem[i] + 1):
                rem[i] -= n
                acc.append((i, n))
                rec(rem, i, acc)
                acc.pop()
                rem[i] += n

    rec(list(alpha), None, [])
    return out


@dataclass(frozen=True)
class CanonicalElement:
    label: Multisegment
    pbw: PBWVector
    words: dict  # Word -> symmetric LaurentPoly


def _sym(k: int) -> LaurentPoly:
    return ONE if k == 0 else LaurentPoly({k: 1, -k: 1})


def _solve_one(psi: Multisegment, words: list[Word], monos: list[PBWVector], max_k: int) -> CanonicalElement:
    e = psi.e
    support = sorted({phi for m in monos for phi in m.support()} | {psi}, key=Multisegment.sort_key)
    for k_deg in range(max_k + 1):
        variables = [(w, k) for w in range(len(words)) for k in range(k_deg + 1)]
        contrib = [{} for _ in variables]  # (phi, exponent) -> coefficient
        for idx, (w, k) in enumerate(variables):
            for phi, c in monos[w].items():
                for t, x in (c * _sym(k)).items():
                    contrib[idx][(phi, t)] = x
        lo = min((t for d in contrib for (_, t) in d), default=0)
        hi = max((t for d in contrib for (_, t) in d), default=0)
        eqs: list[tuple[tuple, int]] = []
        for phi in support:
            if phi == psi:
                for t in range(min(lo, 0), max(hi, 0) + 1):
                    eqs.append(((phi, t), int(t == 0)))
            else:
                for t in range(lo, 1):
                    eqs.append(((phi, t), 0))
        n = len(variables)
        aug = [[d.get(key, 0) for d in contrib] + [rhs] for key, rhs in eqs]
        red, pivots = rref(aug, n + 1, None)
        if n in pivots:
            continue
        sol = [Fraction(0)] * n
        for row, pc in zip(red, pivots):
            sol[pc] = row[n]
        coeffs = {}
        for (w, k), a in zip(variables, sol):
            if a:
                coeffs[words[w]] = coeffs.get(words[w], LaurentPoly()) + _sym(k) * a
        g = PBWVector(e, {})
        for w, c in coeffs.items():
            g = g + monos[words.index(w)].scale(c)
        mat = [[d.get(key, 0) for d in contrib] for key, _ in eqs]
        for vec in nullspace(mat, n, None) if mat else []:
            delta = PBWVector(e, {})
            for (w, k), a in zip(variables, vec):
                if a:
                    delta = delta + monos[w].scale(_sym(k) * a)
            if delta:
                raise CanonicalBasisError(f"canonical element for {psi} is not unique at degree {k_deg}")
        for phi, c in g.items():
            if not c.is_integral():
                raise CanonicalBasisError(f"non-integral PBW coefficient {c} in the canonical element of {psi}")
        _check_triangular(psi, g)
        return CanonicalElement(psi, g, coeffs)
    raise CanonicalBasisError(f"no canonical element for {psi} with coefficient degree <= {max_k}")


def _check_triangular(psi: Multisegment, g: PBWVector) -> None:
    for phi, c in g.items():
        if phi == psi:
            if c != ONE:
                raise CanonicalBasisError(f"leading coefficient of the canonical element of {psi} is {c}")
        elif c.low < 1:
            raise CanonicalBasisError(f"coefficient {c} at {phi} is not in v Z[v]")


def is_triangular(psi: Multisegment, g: PBWVector) -> bool:
    try:
        _check_triangular(psi, g)
    except CanonicalBasisError:
        return False
    return g.coeff(psi) == ONE


def solve_canonical_basis(e: int, alpha: Sequence[int], word_cap: int = 2000) -> dict[Multisegment, CanonicalElement]:
    alpha = tuple(alpha)
    if len(alpha) != e or any(a < 0 for a in alpha):
        raise DomainError(f"weight {alpha} is not a nonnegative vector of length {e}")
    words = divided_power_words(e, alpha, word_cap)
    monos = [monomial_to_pbw(e, w) for w in words]
    labels = [psi for psi in aperiodic_multisegments(e, sum(alpha)) if weight(psi) == alpha]
    max_k = 2 * sum(alpha) + 2
    return {psi: _solve_one(psi, words, monos, max_k) for psi in labels}


def canonical_basis(e: int, alpha: Sequence[int], word_cap: int = 2000) -> dict[Multisegment, PBWVector]:
    """``{psi: G_v(psi)}`` for the aperiodic multisegments of weight ``alpha``."""
    return {psi: el.pbw for psi, el in solve_canonical_basis(e, alpha, word_cap).items()}


def monomial_rank(e: int, alpha: Sequence[int], at: int = 2, word_cap: int = 2000) -> int:
    """Rank of the word -> PBW coefficient matrix specialized at ``v = at`` (a lower bound for the generic rank)."""
    words = divided_power_words(e, tuple(alpha), word_cap)
    monos = [monomial_to_pbw(e, w) for w in words]
    support = sorted({phi for m in monos for phi in m.support()}, key=Multisegment.sort_key)
    rows = [[Fraction(m.coeff(phi)(at)) for phi in support] for m in monos]
    return rank(rows, None) if rows and support else 0


# ---------------------------------------------------------------------------
# decomposition rows


def decomposition_row(psi: Multisegment, word_cap: int = 2000) -> dict[Multisegment, int]:
    """``G_{v=1}`` of the tail label ``psi`` in the ``u`` basis, labels in the tail convention."""
    from ..multiseg import is_aperiodic

    if not is_aperiodic(psi):
        raise DomainError(f"multisegment {psi} is not aperiodic")
    head = rho(psi)
    g = canonical_basis(psi.e, weight(head), word_cap)[head]
    out = {}
    for phi, c in rho_on_hall(g).to_u().items():
        val = c(1)
        if not isinstance(val, int) or val < 0:
            raise AssertionError(f"decomposition number {val} at {phi} is not a nonnegative integer")
        if val:
            out[phi] = val
    return dict(sorted(out.items(), key=lambda t: t[0].sort_key()))
