"""Multisets and k-subsets over an explicit, ordered ground set.

Multisets are written multiplicatively: ``a^2b`` has two copies of ``a``
and one of ``b``; the empty multiset is ``1``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence


class GroundSetError(ValueError):
    pass


@dataclass(frozen=True)
class Multiset:
    """A finite multiset over ``ground``.

    ``items`` holds ``(atom, count)`` pairs with positive counts, in ground
    order, so equality is structural.
    """

    ground: tuple
    items: tuple = ()

    @classmethod
    def from_counts(cls, ground: Sequence[Hashable], counts: Mapping[Hashable, int]) -> "Multiset":
        ground = tuple(ground)
        gset = set(ground)
        for x, c in counts.items():
            if x not in gset:
                raise GroundSetError(f"atom {x!r} is not in the ground set")
            if c < 0:
                raise ValueError(f"negative multiplicity for {x!r}")
        items = tuple((x, counts[x]) for x in ground if counts.get(x, 0) > 0)
        return cls(ground, items)

    @classmethod
    def from_vector(cls, ground: Sequence[Hashable], vector: Sequence[int]) -> "Multiset":
        ground = tuple(ground)
        if len(vector) != len(ground):
            raise ValueError("count vector does not match the ground set")
        return cls(ground, tuple((x, c) for x, c in zip(ground, vector) if c > 0))

    @classmethod
    def one(cls, ground: Sequence[Hashable]) -> "Multiset":
        return cls(tuple(ground), ())

    @property
    def counts(self) -> dict:
        return dict(self.items)

    def __getitem__(self, atom) -> int:
        return degree(atom, self)

    def vector(self) -> tuple[int, ...]:
        c = self.counts
        return tuple(c.get(x, 0) for x in self.ground)

    def __len__(self) -> int:
        return sum(c for _, c in self.items)

    @property
    def support(self) -> frozenset:
        return frozenset(x for x, _ in self.items)

    def __mul__(self, other: "Multiset") -> "Multiset":
        return mul(self, other)

    def __truediv__(self, other: "Multiset") -> "Multiset":
        return divide(self, other)

    def __str__(self) -> str:
        return format_multiset(self)


@dataclass(frozen=True)
class KSubset:
    ground: tuple
    members: tuple

    def __post_init__(self):
        pos = {x: i for i, x in enumerate(self.ground)}
        for x in self.members:
            if x not in pos:
                raise GroundSetError(f"atom {x!r} is not in the ground set")
        ordered = tuple(sorted(set(self.members), key=pos.__getitem__))
        if ordered != self.members:
            object.__setattr__(self, "members", ordered)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __str__(self) -> str:
        return "{" + ",".join(str(x) for x in self.members) + "}"


def _check_ground(f: Multiset, g: Multiset) -> None:
    if f.ground != g.ground:
        raise GroundSetError("multisets live over different ground sets")


def mul(f: Multiset, g: Multiset) -> Multiset:
    _check_ground(f, g)
    return Multiset.from_vector(f.ground, [a + b for a, b in zip(f.vector(), g.vector())])


def divide(f: Multiset, g: Multiset) -> Multiset:
    """``f / g``; defined only when ``g`` divides ``f`` atom-wise."""
    _check_ground(f, g)
    fv, gv = f.vector(), g.vector()
    for x, a, b in zip(f.ground, fv, gv):
        if b > a:
            raise ValueError(f"{format_multiset(g)} does not divide {format_multiset(f)} (atom {x!r})")
    return Multiset.from_vector(f.ground, [a - b for a, b in zip(fv, gv)])


def degree(atom, f: Multiset) -> int:
    """Greatest ``s`` with ``atom^s`` dividing ``f``."""
    if atom not in f.ground:
        raise GroundSetError(f"atom {atom!r} is not in the ground set")
    for x, c in f.items:
        if x == atom:
            return c
    return 0


def power(ground: Sequence[Hashable], atom, s: int) -> Multiset:
    return Multiset.from_counts(ground, {atom: s} if s else {})


def _compositions(total: int, parts: int):
    # count vectors of length `parts` summing to `total`, lexicographically increasing
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_multisets(ground: Sequence[Hashable], k: int) -> list[Multiset]:
    """All ``k``-element multisets over ``ground`` in increasing count-vector order."""
    if k < 0:
        raise ValueError("multiset size must be nonnegative")
    ground = tuple(ground)
    return [Multiset.from_vector(ground, v) for v in _compositions(k, len(ground))]


def enumerate_subsets(ground: Sequence[Hashable], k: int) -> list[KSubset]:
    """All ``k``-subsets of ``ground`` in lexicographic order."""
    ground = tuple(ground)
    if not 0 <= k <= len(ground):
        raise ValueError(f"subset size {k} out of range for a {len(ground)}-element ground set")
    return [KSubset(ground, c) for c in itertools.combinations(ground, k)]


# -- text syntax -----------------------------------------------------------

def format_multiset(f: Multiset, sep: str = "") -> str:
    """``a^2b``-style text; ``sep=" "`` gives ``a^2 b``. Empty is ``1``."""
    if not f.items:
        return "1"
    return sep.join(f"{x}^{c}" if c > 1 else f"{x}" for x, c in f.items)


def parse_multiset(text: str, ground: Sequence[Hashable]) -> Multiset:
    """Parse ``a^2 b c`` or ``a^2bc``.

    Juxtaposed atoms must be single characters; whitespace-separated atoms
    may have longer names.
    """
    text = text.strip()
    if text == "1":
        return Multiset.one(ground)
    counts: dict[str, int] = {}
    for word in text.split():
        if any(len(str(x)) > 1 for x in ground):
            pieces = [word]
        else:
            pieces = re.findall(r"[^\^\d](?:\^\d+)?", word)
            if "".join(pieces) != word:
                raise ValueError(f"cannot parse multiset {text!r}")
        for piece in pieces:
            name, _, exp = piece.partition("^")
            if not name or (exp and not exp.isdigit()):
                raise ValueError(f"cannot parse multiset {text!r}")
            counts[name] = counts.get(name, 0) + (int(exp) if exp else 1)
    return Multiset.from_counts(ground, counts)
