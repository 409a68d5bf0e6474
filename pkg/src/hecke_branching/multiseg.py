"""Multisegments over Z/eZ and the two crystal structures on aperiodic ones.

A segment is stored by its head residue and its length; the tail residue is
always derived.  Two renderings are supported: ``[i;l]`` (head ``i``) and
``(l;i]`` (tail ``i``).  Both name the same run of residues
``head, head+1, ..., head+l-1``.

The *head* crystal adds/extends segments on the left and reads
``S_{l,i} = sum_{k>=l} (m[i+1;k] - m[i;k])``.  The *tail* crystal extends on
the right and reads ``S_{l,i} = sum_{k>=l} (m(k;i-1] - m(k;i])``.  ``rho``
intertwines them with ``i -> -i``.
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class DomainError(ValueError):
    """Raised when an operation is applied outside of its domain."""


class Convention(str, enum.Enum):
    HEAD = "head"
    TAIL = "tail"

    @classmethod
    def parse(cls, value: "Convention | str") -> "Convention":
        if isinstance(value, Convention):
            return value
        try:
            return cls(value)
        except ValueError:
            raise DomainError(f"unknown convention {value!r}; expected 'head' or 'tail'") from None


def _check_e(e: int) -> int:
    if not isinstance(e, int) or e < 2:
        raise DomainError(f"e must be an integer >= 2, got {e!r}")
    return e


@dataclass(frozen=True, order=True)
class Segment:
    head: int
    length: int

    def tail(self, e: int) -> int:
        return (self.head + self.length - 1) % e

    def residues(self, e: int) -> list[int]:
        return [(self.head + k) % e for k in range(self.length)]

    def head_str(self) -> str:
        return f"[{self.head};{self.length}]"

    def tail_str(self, e: int) -> str:
        return f"({self.length};{self.tail(e)}]"


@dataclass(frozen=True)
class Multisegment:
    """A finite multiset of segments over Z/eZ.

    ``items`` holds ``((length, head), multiplicity)`` pairs sorted by
    ``(length, head)``; equality and hashing are multiset equality.
    """

    e: int
    items: tuple[tuple[tuple[int, int], int], ...] = ()

    def __post_init__(self) -> None:
        _check_e(self.e)
        for (length, head), mult in self.items:
            if length < 1 or mult < 1 or not 0 <= head < self.e:
                raise DomainError(f"invalid multisegment entry {(length, head)!r} x{mult}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_counts(cls, e: int, counts: Mapping[tuple[int, int], int]) -> "Multisegment":
        """Build from a ``(length, head) -> multiplicity`` mapping."""
        _check_e(e)
        merged: Counter = Counter()
        for (length, head), mult in counts.items():
            if mult < 0:
                raise DomainError("negative multiplicity")
            if mult:
                merged[(int(length), int(head) % e)] += mult
        return cls(e, tuple(sorted(merged.items())))

    @classmethod
    def from_heads(cls, e: int, segments: Iterable[tuple[int, int]]) -> "Multisegment":
        """Build from ``(head, length)`` pairs, i.e. ``[head;length]``."""
        return cls.from_counts(e, Counter((l, h % e) for h, l in segments))

    @classmethod
    def from_tails(cls, e: int, segments: Iterable[tuple[int, int]]) -> "Multisegment":
        """Build from ``(length, tail)`` pairs, i.e. ``(length;tail]``."""
        return cls.from_counts(e, Counter((l, (t - l + 1) % e) for l, t in segments))

    @classmethod
    def empty(cls, e: int) -> "Multisegment":
        return cls(e)

    # -- accessors --------------------------------------------------------

    def mult(self, head: int, length: int) -> int:
        key = (length, head % self.e)
        for k, m in self.items:
            if k == key:
                return m
        return 0

    def mult_tail(self, length: int, tail: int) -> int:
        return self.mult(tail - length + 1, length)

    def segments(self) -> Iterator[Segment]:
        """All segments, repeated according to multiplicity, in canonical order."""
        for (length, head), m in self.items:
            for _ in range(m):
                yield Segment(head, length)

    def __iter__(self) -> Iterator[Segment]:
        return self.segments()

    def __len__(self) -> int:
        return sum(m for _, m in self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    @property
    def size(self) -> int:
        """Total number of nodes (sum of lengths)."""
        return sum(l * m for (l, _), m in self.items)

    @property
    def max_length(self) -> int:
        return max((l for (l, _), _ in self.items), default=0)

    def counter(self) -> Counter:
        return Counter({k: m for k, m in self.items})

    def add(self, head: int, length: int, count: int = 1) -> "Multisegment":
        c = self.counter()
        c[(length, head % self.e)] += count
        if c[(length, head % self.e)] < 0:
            raise DomainError(f"segment [{head % self.e};{length}] not present")
        return Multisegment.from_counts(self.e, +c)

    def remove(self, head: int, length: int, count: int = 1) -> "Multisegment":
        return self.add(head, length, -count)

    def __add__(self, other: "Multisegment") -> "Multisegment":
        if other.e != self.e:
            raise DomainError("cannot combine multisegments with different e")
        return Multisegment.from_counts(self.e, self.counter() + other.counter())

    # -- rendering ----------------------------------------------------------

    def render(self, convention: Convention | str = Convention.HEAD) -> str:
        convention = Convention.parse(convention)
        if convention is Convention.HEAD:
            parts = [s.head_str() for s in self.segments()]
        else:
            parts = [s.tail_str(self.e) for s in self.segments()]
        return "{" + ",".join(parts) + "}"

    def __str__(self) -> str:
        return self.render(Convention.HEAD)

    def sort_key(self) -> tuple:
        return (self.size, self.items)

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "segments": [{"head": h, "len": l, "mult": m} for (l, h), m in self.items],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping, e: int | None = None) -> "Multisegment":
        if not isinstance(data, Mapping):
            raise DomainError("multisegment JSON must be an object")
        if "e" in data:
            e_val = data["e"]
            if not isinstance(e_val, int) or isinstance(e_val, bool):
                raise DomainError("field 'e' must be an integer")
            if e is not None and e_val != e:
                raise DomainError(f"field 'e' is {e_val} but {e} was expected")
            e = e_val
        if e is None:
            raise DomainError("field 'e' is missing")
        segs = data.get("segments")
        if not isinstance(segs, list):
            raise DomainError("field 'segments' must be a list")
        counts: Counter = Counter()
        for k, seg in enumerate(segs):
            if not isinstance(seg, Mapping):
                raise DomainError(f"field 'segments[{k}]' must be an object")
            for name in ("head", "len"):
                val = seg.get(name)
                if not isinstance(val, int) or isinstance(val, bool):
                    raise DomainError(f"field 'segments[{k}].{name}' must be an integer")
            mult = seg.get("mult", 1)
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
                raise DomainError(f"field 'segments[{k}].mult' must be a positive integer")
            if seg["len"] < 1:
                raise DomainError(f"field 'segments[{k}].len' must be positive")
            counts[(seg["len"], seg["head"] % e)] += mult
        return cls.from_counts(e, counts)


# ---------------------------------------------------------------------------
# basic statistics


def weight(psi: Multisegment) -> tuple[int, ...]:
    """Dimension vector: number of nodes of each residue."""
    counts = [0] * psi.e
    for (length, head), m in psi.items:
        for k in range(length):
            counts[(head + k) % psi.e] += m
    return tuple(counts)


def is_aperiodic(psi: Multisegment, e: int | None = None) -> bool:
    e = psi.e if e is None else e
    by_length: dict[int, set[int]] = {}
    for (length, head), _ in psi.items:
        by_length.setdefault(length, set()).add(head % e)
    return all(len(heads) < e for heads in by_length.values())


def rho(psi: Multisegment) -> Multisegment:
    """Relabel ``[i;l]`` as ``(l;-i]``; an involution."""
    e = psi.e
    return Multisegment.from_counts(e, {(l, (-h - l + 1) % e): m for (l, h), m in psi.items})


def cartan_entry(e: int, i: int, j: int) -> int:
    """Entry ``<alpha_j, alpha_i^vee>`` of the affine Cartan matrix of type A_{e-1}^(1)."""
    i, j = i % e, j % e
    if i == j:
        return 2
    if e == 2:
        return -2
    if (i - j) % e in (1, e - 1):
        return -1
    return 0


@dataclass(frozen=True)
class AffineWeight:
    """``sum level[i] Lambda_i + sum root[i] alpha_i``."""

    e: int
    level: tuple[int, ...]
    root: tuple[int, ...]

    def pairing(self, i: int) -> int:
        """Value on the simple coroot ``alpha_i^vee``."""
        i %= self.e
        return self.level[i] + sum(c * cartan_entry(self.e, i, j) for j, c in enumerate(self.root))

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(
            self.e,
            tuple(a + b for a, b in zip(self.level, other.level)),
            tuple(a + b for a, b in zip(self.root, other.root)),
        )

    @classmethod
    def fundamental(cls, e: int, i: int) -> "AffineWeight":
        level = [0] * e
        level[i % e] = 1
        return cls(e, tuple(level), (0,) * e)

    @classmethod
    def from_dim(cls, e: int, counts: Iterable[int]) -> "AffineWeight":
        """The weight ``-sum counts_i alpha_i``."""
        return cls(e, (0,) * e, tuple(-c for c in counts))


def wt(psi: Multisegment) -> AffineWeight:
    return AffineWeight.from_dim(psi.e, weight(psi))


# ---------------------------------------------------------------------------
# crystal operators


def _segment_mult(psi: Multisegment, i: int, length: int, convention: Convention) -> tuple[int, int]:
    """(addable count, removable count) of i-nodes contributed by segments of this length."""
    e = psi.e
    if convention is Convention.HEAD:
        return psi.mult(i + 1, length), psi.mult(i, length)
    return psi.mult_tail(length, i - 1), psi.mult_tail(length, i)


def s_profile(psi: Multisegment, i: int, convention: Convention | str = Convention.TAIL) -> dict[int, int]:
    """``S_{l,i}`` for ``l = 1 .. max_length + 1``."""
    convention = Convention.parse(convention)
    top = psi.max_length + 1
    out: dict[int, int] = {}
    running = 0
    for l in range(top, 0, -1):
        add, rem = _segment_mult(psi, i, l, convention)
        running += add - rem
        out[l] = running
    return dict(sorted(out.items()))


def _require_aperiodic(psi: Multisegment) -> None:
    if not is_aperiodic(psi):
        raise DomainError(f"multisegment {psi} is not aperiodic")


def tilde_f(psi: Multisegment, i: int, convention: Convention | str = Convention.TAIL) -> Multisegment:
    convention = Convention.parse(convention)
    _require_aperiodic(psi)
    e = psi.e
    i %= e
    prof = s_profile(psi, i, convention)
    low = min(prof.values())
    l0 = min(l for l, s in prof.items() if s == low)
    if convention is Convention.HEAD:
        if l0 == 1:
            return psi.add(i, 1)
        return psi.remove(i + 1, l0 - 1).add(i, l0)
    # (l0-1; i-1] and (l0; i] share the head i - l0 + 1
    head = i - l0 + 1
    if l0 == 1:
        return psi.add(head, 1)
    return psi.remove(head, l0 - 1).add(head, l0)


def tilde_e(psi: Multisegment, i: int, convention: Convention | str = Convention.TAIL) -> Multisegment | None:
    convention = Convention.parse(convention)
    _require_aperiodic(psi)
    e = psi.e
    i %= e
    prof = s_profile(psi, i, convention)
    low = min(prof.values())
    if low == 0:
        return None
    l0 = max(l for l, s in prof.items() if s == low)
    if convention is Convention.HEAD:
        out = psi.remove(i, l0)
        return out if l0 == 1 else out.add(i + 1, l0 - 1)
    head = i - l0 + 1
    out = psi.remove(head, l0)
    return out if l0 == 1 else out.add(head, l0 - 1)


def epsilon(psi: Multisegment, i: int, convention: Convention | str = Convention.TAIL) -> int:
    _require_aperiodic(psi)
    return -min(s_profile(psi, i, convention).values())


def phi(psi: Multisegment, i: int, convention: Convention | str = Convention.TAIL) -> int:
    return epsilon(psi, i, convention) + wt(psi).pairing(i)


# ---------------------------------------------------------------------------
# enumeration


def segment_types(e: int, max_length: int) -> list[tuple[int, int]]:
    return [(l, h) for l in range(1, max_length + 1) for h in range(e)]


def multisegments_of_size(e: int, n: int) -> list[Multisegment]:
    """All multisegments with exactly ``n`` nodes, in canonical order."""
    types = segment_types(e, n)
    out: list[Multisegment] = []

    def rec(idx: int, remaining: int, acc: dict) -> None:
        if remaining == 0:
            out.append(Multisegment.from_counts(e, acc))
            return
        if idx == len(types):
            return
        length, head = types[idx]
        for m in range(remaining // length, -1, -1):
            if m:
                acc[(length, head)] = m
            rec(idx + 1, remaining - m * length, acc)
            acc.pop((length, head), None)

    rec(0, n, {})
    return sorted(out, key=Multisegment.sort_key)


def multisegments_of_weight(e: int, dims: tuple[int, ...]) -> list[Multisegment]:
    dims = tuple(dims)
    return [p for p in multisegments_of_size(e, sum(dims)) if weight(p) == dims]


def aperiodic_multisegments(e: int, n: int) -> list[Multisegment]:
    return [p for p in multisegments_of_size(e, n) if is_aperiodic(p)]
