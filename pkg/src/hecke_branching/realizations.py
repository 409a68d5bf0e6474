"""Realizations of highest weight crystals and their comparison with B(infinity).

Every realization exposes the same small surface (``empty``, ``f``, ``e``,
``e_mod``) so crystal isomorphisms can be computed by path transport: record
an e-path down to the empty object, then replay it with f in the target.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Sequence

from . import multiseg as ms
from .multipartition import (
    MultiPartition,
    Multicharge,
    multipartitions,
    tilde_e_fock,
    tilde_f_fock,
)
from .multiseg import AffineWeight, Convention, DomainError, Multisegment

# Kleshchev conventions: "plain" transposes and keeps residues, "negated"
# transposes and negates residues.  Only "negated" reproduces the level-one
# worked example ((2) = f2 f1 of the empty partition for charge 1); see
# ``calibrate_kleshchev``.
KLESHCHEV_CONVENTIONS = ("plain", "negated")
KLESHCHEV_CONVENTION = "negated"


# ---------------------------------------------------------------------------
# multicharges


def in_V_l(v: Multicharge) -> bool:
    c = v.charges
    return all(c[k] <= c[k + 1] for k in range(len(c) - 1)) and c[-1] < c[0] + v.e


def normalized_charge(e: int, residues: Iterable[int]) -> Multicharge:
    """A multicharge in V_l with the given residues (hence the same Lambda)."""
    return Multicharge(e, tuple(sorted(r % e for r in residues)))


def tau(v: Multicharge) -> Multicharge:
    c = v.charges
    return Multicharge(v.e, c[1:] + (c[0] + v.e,))


def asymptotic_charge(e: int, residues: Sequence[int], n_bound: int) -> Multicharge:
    """Charges with the given residues and consecutive gaps of at least ``n_bound + e``."""
    w = [residues[0] % e]
    for r in residues[1:]:
        base = w[-1] + n_bound + e
        w.append(base + (r - base) % e)
    return Multicharge(e, tuple(w))


# ---------------------------------------------------------------------------
# FLOTW l-partitions


def is_flotw(lam: MultiPartition, v: Multicharge) -> bool:
    if not in_V_l(v):
        raise DomainError(f"multicharge {v.charges} is not in V_l for e={v.e}")
    if lam.level != v.level:
        raise DomainError(f"{lam.level}-partition used with a level-{v.level} multicharge")
    l, e, c = v.level, v.e, v.charges
    for k in range(l):
        nxt = (k + 1) % l
        shift = c[nxt] - c[k] if k < l - 1 else e + c[0] - c[l - 1]
        rows = max(len(lam.components[k]), len(lam.components[nxt])) + 1
        for j in range(1, rows + 1):
            if lam.part(k, j) < lam.part(nxt, j + shift):
                return False
    ends: dict[int, set[int]] = {}
    for k, comp in enumerate(lam.components):
        for j, part in enumerate(comp, start=1):
            ends.setdefault(part, set()).add((part - j + c[k]) % e)
    return all(len(s) < e for s in ends.values())


def enumerate_flotw(v: Multicharge, n: int) -> list[MultiPartition]:
    return [lam for lam in multipartitions(v.level, n) if is_flotw(lam, v)]


# ---------------------------------------------------------------------------
# realizations


class Realization:
    """Common surface of the crystals handled by path transport."""

    e: int

    def empty(self) -> Hashable:
        raise NotImplementedError

    def f(self, x: Any, i: int) -> Any:
        raise NotImplementedError

    def e_op(self, x: Any, i: int) -> Any:
        raise NotImplementedError

    def highest_weight(self) -> AffineWeight | None:
        """Lambda for B(Lambda) realizations, ``None`` for B(infinity)."""
        return None

    def size(self, x: Any) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class FockRealization(Realization):
    """The Fock crystal of a multicharge; ``flotw`` additionally requires ``v`` in V_l."""

    v: Multicharge
    kind: str = "uglov"

    def __post_init__(self) -> None:
        if self.kind not in ("uglov", "flotw"):
            raise DomainError(f"unknown Fock realization kind {self.kind!r}")
        if self.kind == "flotw" and not in_V_l(self.v):
            raise DomainError(f"FLOTW realization needs a multicharge in V_l, got {self.v.charges}")

    @property
    def e(self) -> int:  # type: ignore[override]
        return self.v.e

    def empty(self) -> MultiPartition:
        return MultiPartition.empty(self.v.level)

    def f(self, x: MultiPartition, i: int) -> MultiPartition | None:
        return tilde_f_fock(x, i, self.v)

    def e_op(self, x: MultiPartition, i: int) -> MultiPartition | None:
        return tilde_e_fock(x, i, self.v)

    def highest_weight(self) -> AffineWeight:
        return self.v.highest_weight()

    def size(self, x: MultiPartition) -> int:
        return x.rank

    def tag(self) -> str:
        return f"{self.kind}:" + ",".join(map(str, self.v.charges))


@dataclass(frozen=True)
class KleshchevRealization(Realization):
    """Kleshchev l-partitions, realized through transposition into an asymptotic Fock crystal.

    The charge of the auxiliary crystal is rebuilt for every call with a gap
    exceeding the rank involved, which is enough for the node order between
    components to be the tensor product order.
    """

    e: int
    residues: tuple[int, ...]
    convention: str = KLESHCHEV_CONVENTION

    def __post_init__(self) -> None:
        if self.convention not in KLESHCHEV_CONVENTIONS:
            raise DomainError(f"unknown Kleshchev convention {self.convention!r}")
        if not self.residues:
            raise DomainError("a Kleshchev realization needs at least one residue")
        object.__setattr__(self, "residues", tuple(r % self.e for r in self.residues))

    def _sign(self) -> int:
        return -1 if self.convention == "negated" else 1

    def auxiliary_charge(self, n_bound: int) -> Multicharge:
        s = self._sign()
        return asymptotic_charge(self.e, [s * r for r in self.residues], n_bound)

    def empty(self) -> MultiPartition:
        return MultiPartition.empty(len(self.residues))

    def f(self, x: MultiPartition, i: int) -> MultiPartition | None:
        w = self.auxiliary_charge(x.rank + 1)
        out = tilde_f_fock(x.transpose(), self._sign() * i, w)
        return None if out is None else out.transpose()

    def e_op(self, x: MultiPartition, i: int) -> MultiPartition | None:
        w = self.auxiliary_charge(x.rank + 1)
        out = tilde_e_fock(x.transpose(), self._sign() * i, w)
        return None if out is None else out.transpose()

    def highest_weight(self) -> AffineWeight:
        return Multicharge(self.e, self.residues).highest_weight()

    def size(self, x: MultiPartition) -> int:
        return x.rank

    def tag(self) -> str:
        return "kleshchev:" + ",".join(map(str, self.residues))


@dataclass(frozen=True)
class MultisegmentRealization(Realization):
    """B(infinity) on aperiodic multisegments, head or tail convention."""

    e: int
    convention: Convention = Convention.TAIL

    def __post_init__(self) -> None:
        object.__setattr__(self, "convention", Convention.parse(self.convention))

    def empty(self) -> Multisegment:
        return Multisegment.empty(self.e)

    def f(self, x: Multisegment, i: int) -> Multisegment:
        return ms.tilde_f(x, i, self.convention)

    def e_op(self, x: Multisegment, i: int) -> Multisegment | None:
        return ms.tilde_e(x, i, self.convention)

    def size(self, x: Multisegment) -> int:
        return x.size

    def tag(self) -> str:
        return f"mseg:{self.convention.value}"


def parse_realization(text: str, e: int) -> Realization:
    """Parse ``flotw:v0,v1``, ``uglov:...``, ``kleshchev:...`` or ``mseg:tail|head``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "mseg":
        return MultisegmentRealization(e, Convention.parse(rest.strip() or "tail"))
    try:
        charges = tuple(int(x) for x in rest.split(",") if x.strip())
    except ValueError:
        raise DomainError(f"cannot parse charges in realization {text!r}") from None
    if not charges:
        raise DomainError(f"realization {text!r} has no charges")
    if kind in ("flotw", "uglov"):
        return FockRealization(Multicharge(e, charges), kind)
    if kind == "kleshchev":
        return KleshchevRealization(e, charges)
    raise DomainError(f"unknown realization kind {kind!r}")


# ---------------------------------------------------------------------------
# paths


def extract_path(x: Any, crystal: Realization, rng: random.Random | None = None) -> list[int] | None:
    """An f-path from the empty object to ``x``, or ``None`` when ``x`` is not connected to it.

    Greedy descent uses the first residue (ascending) with a nonzero e;
    passing ``rng`` picks uniformly among the available residues instead.
    """
    record: list[int] = []
    while True:
        options = []
        for i in range(crystal.e):
            y = crystal.e_op(x, i)
            if y is not None:
                options.append((i, y))
                if rng is None:
                    break
        if not options:
            break
        i, x = options[0] if rng is None else rng.choice(options)
        record.append(i)
    if x != crystal.empty():
        return None
    return record[::-1]


def replay(path: Iterable[int], crystal: Realization) -> Any:
    x = crystal.empty()
    for i in path:
        x = crystal.f(x, i)
        if x is None:
            return None
    return x


def transport(x: Any, src: Realization, dst: Realization, rng: random.Random | None = None) -> Any:
    """Image of ``x`` under the crystal morphism fixing the empty object, or ``None``."""
    if src == dst:
        return x
    hw_src, hw_dst = src.highest_weight(), dst.highest_weight()
    if hw_src is not None and hw_dst is not None and hw_src != hw_dst:
        raise DomainError("realizations have different highest weights")
    path = extract_path(x, src, rng)
    if path is None:
        raise DomainError(f"{x} is not in the highest weight component of {src}")
    y = replay(path, dst)
    if y is None and hw_src is not None and hw_dst is not None:
        raise AssertionError("path replay died between two realizations of the same B(Lambda)")
    return y


def reachable(crystal: Realization, depth: int) -> list[set]:
    """Layers of the connected component of the empty object, by rank, up to ``depth``."""
    layers = [{crystal.empty()}]
    for _ in range(depth):
        nxt = set()
        for x in layers[-1]:
            for i in range(crystal.e):
                y = crystal.f(x, i)
                if y is not None:
                    nxt.add(y)
        layers.append(nxt)
    return layers


def tau_shift(lam: MultiPartition, v: Multicharge) -> tuple[MultiPartition, Multicharge]:
    comps = lam.components
    return MultiPartition(comps[1:] + comps[:1]), tau(v)


# ---------------------------------------------------------------------------
# the embedding into B(infinity)


def f_v_embed(lam: MultiPartition, v: Multicharge) -> Multisegment:
    """One segment ``[1 - j + v_c; lambda_j^(c)]`` per nonzero part."""
    if not is_flotw(lam, v):
        raise DomainError(f"{lam} is not a FLOTW multipartition for charges {v.charges}")
    segs = []
    for c, comp in enumerate(lam.components):
        for j, part in enumerate(comp, start=1):
            segs.append((1 - j + v.charges[c], part))
    return Multisegment.from_heads(v.e, segs)


def f_v_inverse(psi: Multisegment, v: Multicharge) -> MultiPartition | None:
    """The FLOTW l-partition mapped to ``psi`` by ``f_v_embed``, if ``psi`` lies in the image."""
    if not in_V_l(v):
        raise DomainError(f"multicharge {v.charges} is not in V_l for e={v.e}")
    if psi.e != v.e:
        raise DomainError("multisegment and multicharge have different e")
    path = extract_path(psi, MultisegmentRealization(psi.e, Convention.TAIL))
    if path is None:
        return None
    lam = replay(path, FockRealization(v, "flotw"))
    if lam is None or f_v_embed(lam, v) != psi:
        return None
    return lam


def in_b_ap(psi: Multisegment, v: Multicharge) -> bool:
    """Whether ``psi`` is in the image of B(Lambda) for Lambda given by the residues of ``v``."""
    if not ms.is_aperiodic(psi):
        raise DomainError(f"multisegment {psi} is not aperiodic")
    return f_v_inverse(psi, normalized_charge(v.e, v.residues)) is not None


# ---------------------------------------------------------------------------
# Kleshchev l-partitions


def is_kleshchev(
    lam: MultiPartition,
    residues: Sequence[int],
    e: int,
    n_bound: int | None = None,
    convention: str = KLESHCHEV_CONVENTION,
) -> bool:
    if len(residues) != lam.level:
        raise DomainError(f"{lam.level}-partition used with {len(residues)} residues")
    if n_bound is None:
        n_bound = lam.rank
    if lam.rank > n_bound:
        raise DomainError(f"rank {lam.rank} exceeds n_bound {n_bound}")
    kr = KleshchevRealization(e, tuple(residues), convention)
    aux = FockRealization(kr.auxiliary_charge(n_bound))
    return extract_path(lam.transpose(), aux) is not None


def calibrate_kleshchev() -> list[str]:
    """Conventions reproducing the level-one example with e = 3.

    Required: (2) = f2 f1 (empty) for residue 1, and (1,1) = f1 f2 (empty) for residue 2.
    """
    passing = []
    for conv in KLESHCHEV_CONVENTIONS:
        one = KleshchevRealization(3, (1,), conv)
        two = KleshchevRealization(3, (2,), conv)
        if replay([1, 2], one) == MultiPartition.of((2,)) and replay([2, 1], two) == MultiPartition.of((1, 1)):
            passing.append(conv)
    return passing
