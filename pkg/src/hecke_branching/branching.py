"""Modular branching at the level of labels, label translation, crystal graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from . import multiseg as ms
from .multipartition import MultiPartition, Multicharge
from .multiseg import Convention, DomainError, Multisegment
from .realizations import (
    FockRealization,
    KleshchevRealization,
    MultisegmentRealization,
    Realization,
    extract_path,
    f_v_embed,
    f_v_inverse,
    normalized_charge,
    reachable,
    transport,
)


def branching_socle(psi: Multisegment, i: int) -> Multisegment | None:
    """Label of the socle of the i-restriction of ``D_psi``; ``None`` when the restriction vanishes."""
    return ms.tilde_e(psi, i, Convention.TAIL)


def restriction_profile(psi: Multisegment) -> dict[int, Multisegment | None]:
    return {i: branching_socle(psi, i) for i in range(psi.e)}


# ---------------------------------------------------------------------------
# labels


@dataclass(frozen=True)
class SimpleLabel:
    """``D_psi`` (kind ``mseg``), ``D~^lambda`` for a multicharge (``uglov``) or ``D^lambda`` (``kleshchev``)."""

    kind: str
    e: int
    mseg: Multisegment | None = None
    lam: MultiPartition | None = None
    charges: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "mseg":
            if self.mseg is None or not ms.is_aperiodic(self.mseg):
                raise DomainError("a multisegment label must be aperiodic")
        elif self.kind in ("uglov", "kleshchev"):
            if self.lam is None or len(self.charges) != self.lam.level:
                raise DomainError("a multipartition label needs one charge per component")
            if extract_path(self.lam, self.realization()) is None:
                raise DomainError(f"{self.lam} is not in the highest weight crystal of {self.realization()}")
        else:
            raise DomainError(f"unknown label kind {self.kind!r}")

    @classmethod
    def of_mseg(cls, psi: Multisegment) -> "SimpleLabel":
        return cls("mseg", psi.e, mseg=psi)

    @classmethod
    def of_uglov(cls, lam: MultiPartition, v: Multicharge) -> "SimpleLabel":
        return cls("uglov", v.e, lam=lam, charges=v.charges)

    @classmethod
    def of_kleshchev(cls, lam: MultiPartition, e: int, residues: tuple[int, ...]) -> "SimpleLabel":
        return cls("kleshchev", e, lam=lam, charges=tuple(r % e for r in residues))

    def realization(self) -> Realization:
        if self.kind == "mseg":
            return MultisegmentRealization(self.e, Convention.TAIL)
        if self.kind == "uglov":
            return FockRealization(Multicharge(self.e, self.charges))
        return KleshchevRealization(self.e, self.charges)

    def element(self) -> Any:
        return self.mseg if self.kind == "mseg" else self.lam

    def __str__(self) -> str:
        if self.kind == "mseg":
            return "D_" + self.mseg.render(Convention.TAIL)
        prefix = "D~^" if self.kind == "uglov" else "D^"
        return f"{prefix}{self.lam}[{','.join(map(str, self.charges))}]"

    def to_json(self) -> dict:
        if self.kind == "mseg":
            return {"kind": "mseg", "mseg": self.mseg.to_json()}
        return {"kind": self.kind, "e": self.e, "charges": list(self.charges), "lam": self.lam.to_json()}


def label_translate(label: SimpleLabel, target: Realization) -> SimpleLabel:
    """Relabel a simple module in another parametrization of the same module category."""
    src = label.realization()
    if target == src:
        return label
    if isinstance(target, MultisegmentRealization):
        if label.kind == "mseg":
            return label
        base = normalized_charge(label.e, label.charges)
        lam = transport(label.lam, src, FockRealization(base, "flotw"))
        return SimpleLabel.of_mseg(f_v_embed(lam, base))
    if isinstance(target, FockRealization):
        kind, e, charges = "uglov", target.v.e, target.v.charges
    elif isinstance(target, KleshchevRealization):
        kind, e, charges = "kleshchev", target.e, target.residues
    else:
        raise DomainError(f"cannot translate to {target}")
    if e != label.e:
        raise DomainError("labels over different e")
    if label.kind == "mseg":
        base = normalized_charge(e, charges)
        lam = f_v_inverse(label.mseg, base)
        if lam is None:
            raise DomainError(f"{label} is not a module over this cyclotomic quotient")
        image = transport(lam, FockRealization(base, "flotw"), target)
    else:
        image = transport(label.lam, src, target)
    if kind == "uglov":
        return SimpleLabel.of_uglov(image, target.v)
    return SimpleLabel.of_kleshchev(image, e, charges)


# ---------------------------------------------------------------------------
# crystal graphs


def serialize(x: Any) -> str:
    return json.dumps(x.to_json(), sort_keys=True)


def _rank(x: Any) -> int:
    return x.size if isinstance(x, Multisegment) else x.rank


@dataclass(frozen=True)
class CrystalGraph:
    vertices: tuple
    edges: tuple[tuple[int, int, int], ...]

    def to_json(self) -> dict:
        return {"vertices": [v.to_json() for v in self.vertices], "edges": [list(t) for t in self.edges]}

    def label(self, k: int, convention: Convention | str = Convention.TAIL) -> str:
        v = self.vertices[k]
        return v.render(convention) if isinstance(v, Multisegment) else str(v)

    def to_dot(self, convention: Convention | str = Convention.TAIL, name: str = "crystal") -> str:
        lines = [f"digraph {name} {{"]
        for k in range(len(self.vertices)):
            lines.append(f"  v{k} [label={json.dumps(self.label(k, convention), ensure_ascii=False)}];")
        for src, i, dst in self.edges:
            lines.append(f'  v{src} -> v{dst} [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def crystal_graph(realization: Realization, depth: int) -> CrystalGraph:
    """Closure of the empty object under every f_i, up to the given rank."""
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    layers = reachable(realization, depth)
    verts = sorted({x for layer in layers for x in layer}, key=lambda x: (_rank(x), serialize(x)))
    index = {x: k for k, x in enumerate(verts)}
    edges = []
    for x in verts:
        if _rank(x) >= depth:
            continue
        for i in range(realization.e):
            y = realization.f(x, i)
            if y is not None:
                edges.append((index[x], i, index[y]))
    return CrystalGraph(tuple(verts), tuple(sorted(edges)))
