"""Laurent polynomials in ``v`` with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """An immutable finitely supported map exponent -> coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Number] | None = None) -> None:
        clean = {}
        for k, c in (terms or {}).items():
            if c:
                clean[int(k)] = _norm(c)
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Number) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, c: Number = 1) -> "LaurentPoly":
        return cls({exp: c})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Number], low: int = 0) -> "LaurentPoly":
        return cls({low + k: c for k, c in enumerate(coeffs)})

    # -- access ---------------------------------------------------------------

    @property
    def terms(self) -> dict[int, Number]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp: int) -> Number:
        return self._terms.get(exp, 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def low(self) -> int:
        return min(self._terms) if self._terms else 0

    @property
    def high(self) -> int:
        return max(self._terms) if self._terms else 0

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def is_symmetric(self) -> bool:
        return self == self.bar()

    # -- arithmetic -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other: "LaurentPoly | Number") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly | Number") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: Number) -> "LaurentPoly":
        return LaurentPoly.const(other) - self

    def __mul__(self, other: "LaurentPoly | Number") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({k: c * other for k, c in self._terms.items()})
        out: dict[int, Number] = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The involution ``v -> v^{-1}``."""
        return LaurentPoly({-k: c for k, c in self._terms.items()})

    def subs_power(self, m: int) -> "LaurentPoly":
        """Substitute ``v -> v**m``."""
        return LaurentPoly({k * m: c for k, c in self._terms.items()})

    def __call__(self, x: Number) -> Number:
        x = Fraction(x)
        return _norm(sum((c * x**k for k, c in self._terms.items()), Fraction(0)))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient by ``other``; raises ``ArithmeticError`` unless the division is exact."""
        if not other:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self:
            return LaurentPoly()
        num = [Fraction(self.coeff(k)) for k in range(self.low, self.high + 1)]
        den = [Fraction(other.coeff(k)) for k in range(other.low, other.high + 1)]
        if len(den) > len(num):
            raise ArithmeticError(f"{self} is not divisible by {other}")
        quot = [Fraction(0)] * (len(num) - len(den) + 1)
        for k in range(len(quot) - 1, -1, -1):
            q = num[k + len(den) - 1] / den[-1]
            quot[k] = q
            if q:
                for j, d in enumerate(den):
                    num[k + j] -= q * d
        if any(num):
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return LaurentPoly.from_coeffs(quot, self.low - other.low)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict[str, int]:
        if not self.is_integral():
            raise ValueError(f"non-integral coefficients in {self}")
        return {str(k): c for k, c in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int], where: str = "coeff") -> "LaurentPoly":
        from ..multiseg import DomainError

        if not isinstance(data, Mapping):
            raise DomainError(f"field '{where}' must be an object mapping exponents to integers")
        out = {}
        for k, c in data.items():
            try:
                exp = int(k)
            except (TypeError, ValueError):
                raise DomainError(f"field '{where}' has a non-integer exponent {k!r}") from None
            if not isinstance(c, int) or isinstance(c, bool):
                raise DomainError(f"field '{where}.{k}' must be an integer")
            out[exp] = c
        return cls(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({self._terms})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items(), reverse=True):
            mono = "" if k == 0 else ("v" if k == 1 else f"v^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}" if not mono else f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


V = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def qint(n: int) -> LaurentPoly:
    """``[n] = (v^n - v^-n) / (v - v^-1)``."""
    return LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)})


def qfactorial(n: int) -> LaurentPoly:
    out = ONE
    for k in range(2, n + 1):
        out = out * qint(k)
    return out
