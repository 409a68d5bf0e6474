"""l-partitions and the level-l Fock space crystal attached to a multicharge."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .multiseg import AffineWeight, DomainError


@dataclass(frozen=True)
class Multicharge:
    e: int
    charges: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.e, int) or self.e < 2:
            raise DomainError(f"e must be an integer >= 2, got {self.e!r}")
        if len(self.charges) == 0:
            raise DomainError("a multicharge needs at least one component")
        object.__setattr__(self, "charges", tuple(int(c) for c in self.charges))

    @property
    def level(self) -> int:
        return len(self.charges)

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(c % self.e for c in self.charges)

    def highest_weight(self) -> AffineWeight:
        level = [0] * self.e
        for r in self.residues:
            level[r] += 1
        return AffineWeight(self.e, tuple(level), (0,) * self.e)

    def to_json(self) -> dict:
        return {"e": self.e, "charges": list(self.charges)}

    @classmethod
    def from_json(cls, data: Mapping) -> "Multicharge":
        if not isinstance(data, Mapping):
            raise DomainError("multicharge JSON must be an object")
        e = data.get("e")
        if not isinstance(e, int) or isinstance(e, bool):
            raise DomainError("field 'e' must be an integer")
        charges = data.get("charges")
        if not isinstance(charges, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in charges):
            raise DomainError("field 'charges' must be a list of integers")
        return cls(e, tuple(charges))


def _clean_partition(parts: Iterable[int]) -> tuple[int, ...]:
    parts = tuple(int(p) for p in parts)
    if any(p < 0 for p in parts):
        raise DomainError(f"partition {parts} has a negative part")
    parts = tuple(p for p in parts if p > 0)
    if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
        raise DomainError(f"partition {parts} is not weakly decreasing")
    return parts


@dataclass(frozen=True)
class MultiPartition:
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(_clean_partition(c) for c in self.components))

    @classmethod
    def of(cls, *components: Sequence[int]) -> "MultiPartition":
        return cls(tuple(tuple(c) for c in components))

    @classmethod
    def empty(cls, level: int) -> "MultiPartition":
        return cls(((),) * level)

    @property
    def level(self) -> int:
        return len(self.components)

    @property
    def rank(self) -> int:
        return sum(sum(c) for c in self.components)

    def part(self, c: int, j: int) -> int:
        """``lambda_j^{(c)}`` with 1-based row index ``j``; zero past the end."""
        comp = self.components[c]
        return comp[j - 1] if 1 <= j <= len(comp) else 0

    def nodes(self) -> Iterator["Node"]:
        for c, comp in enumerate(self.components):
            for a, row in enumerate(comp, start=1):
                for b in range(1, row + 1):
                    yield Node(a, b, c)

    def with_row(self, c: int, a: int, delta: int) -> "MultiPartition":
        comps = [list(x) for x in self.components]
        row = comps[c]
        if a == len(row) + 1:
            row.append(0)
        row[a - 1] += delta
        return MultiPartition(tuple(tuple(x) for x in comps))

    def transpose(self) -> "MultiPartition":
        """Component-wise conjugate partition."""
        return MultiPartition(tuple(conjugate(c) for c in self.components))

    def __str__(self) -> str:
        def one(p: tuple[int, ...]) -> str:
            return "(" + ",".join(map(str, p)) + ")" if p else "∅"

        if self.level == 1:
            return one(self.components[0])
        return "(" + ",".join(one(p) for p in self.components) + ")"

    def sort_key(self) -> tuple:
        return (self.rank, self.components)

    def to_json(self) -> dict:
        return {"components": [list(c) for c in self.components]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPartition":
        if not isinstance(data, Mapping):
            raise DomainError("multipartition JSON must be an object")
        comps = data.get("components")
        if not isinstance(comps, list) or not comps:
            raise DomainError("field 'components' must be a non-empty list")
        for k, comp in enumerate(comps):
            if not isinstance(comp, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in comp):
                raise DomainError(f"field 'components[{k}]' must be a list of integers")
        return cls(tuple(tuple(c) for c in comps))


def conjugate(parts: Sequence[int]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


class Node(NamedTuple):
    """Row ``a``, column ``b`` of component ``c`` (rows and columns 1-based)."""

    a: int
    b: int
    c: int


def content(node: Node, v: Multicharge) -> int:
    return node.b - node.a + v.charges[node.c]


def residue(node: Node, v: Multicharge) -> int:
    return content(node, v) % v.e


def _order_key(node: Node, v: Multicharge) -> tuple[int, int]:
    # increasing content, ties broken by larger component first
    return (content(node, v), -node.c)


def precedes(g1: Node, g2: Node, v: Multicharge) -> bool:
    if residue(g1, v) != residue(g2, v):
        raise DomainError(f"nodes {g1} and {g2} have different residues")
    return _order_key(g1, v) < _order_key(g2, v)


def addable_nodes(lam: MultiPartition) -> list[Node]:
    out = []
    for c, comp in enumerate(lam.components):
        for a in range(1, len(comp) + 2):
            row = lam.part(c, a)
            if a == 1 or lam.part(c, a - 1) > row:
                out.append(Node(a, row + 1, c))
    return out


def removable_nodes(lam: MultiPartition) -> list[Node]:
    out = []
    for c, comp in enumerate(lam.components):
        for a, row in enumerate(comp, start=1):
            if lam.part(c, a + 1) < row:
                out.append(Node(a, row, c))
    return out


def signature_word(lam: MultiPartition, i: int, v: Multicharge) -> list[tuple[Node, str]]:
    """Addable (``"A"``) and removable (``"R"``) i-nodes sorted increasingly by the node order."""
    _check_level(lam, v)
    i %= v.e
    word = [(n, "A") for n in addable_nodes(lam) if residue(n, v) == i]
    word += [(n, "R") for n in removable_nodes(lam) if residue(n, v) == i]
    word.sort(key=lambda t: _order_key(t[0], v))
    return word


def ra_reduce(word: Sequence) -> list:
    """Cancel adjacent (R, A) pairs until none remain; the survivors read A...A R...R.

    Entries may be bare ``"A"``/``"R"`` tags or ``(node, tag)`` pairs.
    """
    out: list = []
    for item in word:
        tag = item if isinstance(item, str) else item[1]
        prev = out[-1] if out else None
        prev_tag = None if prev is None else (prev if isinstance(prev, str) else prev[1])
        if tag == "A" and prev_tag == "R":
            out.pop()
        else:
            out.append(item)
    return out


def _check_level(lam: MultiPartition, v: Multicharge) -> None:
    if lam.level != v.level:
        raise DomainError(f"{lam.level}-partition used with a level-{v.level} multicharge")


def tilde_e_fock(lam: MultiPartition, i: int, v: Multicharge) -> MultiPartition | None:
    reduced = ra_reduce(signature_word(lam, i, v))
    for node, tag in reduced:
        if tag == "R":
            return lam.with_row(node.c, node.a, -1)
    return None


def tilde_f_fock(lam: MultiPartition, i: int, v: Multicharge) -> MultiPartition | None:
    reduced = ra_reduce(signature_word(lam, i, v))
    for node, tag in reversed(reduced):
        if tag == "A":
            return lam.with_row(node.c, node.a, +1)
    return None


def residue_counts(lam: MultiPartition, v: Multicharge) -> tuple[int, ...]:
    counts = [0] * v.e
    for node in lam.nodes():
        counts[residue(node, v)] += 1
    return tuple(counts)


def wt_fock(lam: MultiPartition, v: Multicharge) -> AffineWeight:
    _check_level(lam, v)
    hw = v.highest_weight()
    return AffineWeight(v.e, hw.level, tuple(-n for n in residue_counts(lam, v)))


def epsilon_fock(lam: MultiPartition, i: int, v: Multicharge) -> int:
    return sum(1 for _, tag in ra_reduce(signature_word(lam, i, v)) if tag == "R")


def phi_fock(lam: MultiPartition, i: int, v: Multicharge) -> int:
    return sum(1 for _, tag in ra_reduce(signature_word(lam, i, v)) if tag == "A")


# ---------------------------------------------------------------------------
# enumeration


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def multipartitions(level: int, n: int) -> Iterator[MultiPartition]:
    def rec(k: int, remaining: int) -> Iterator[tuple]:
        if k == level - 1:
            for p in partitions(remaining):
                yield (p,)
            return
        for m in range(remaining, -1, -1):
            for p in partitions(m):
                for rest in rec(k + 1, remaining - m):
                    yield (p,) + rest

    for comps in rec(0, n):
        yield MultiPartition(comps)
