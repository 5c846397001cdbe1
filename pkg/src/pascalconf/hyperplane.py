"""Hyperplanes of incidence structures and the pieces they cut out.

A hyperplane is a proper subspace that every line meets. Each line then
either lies inside it ("deep") or meets it in exactly one point, which is
recorded as the line's point at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import IncidenceStructure, ConfigurationType, configuration_type

DEFAULT_MAX_POINTS = 24


class HyperplaneError(ValueError):
    pass


class SearchTooLarge(ValueError):
    """An exhaustive search was refused by its size guard."""


def _mask(K: IncidenceStructure, H: Iterable) -> int:
    mask = 0
    for p in H:
        mask |= 1 << K.point_index(p)
    return mask


def _points_of(K: IncidenceStructure, mask: int) -> frozenset:
    return frozenset(p for i, p in enumerate(K.points) if mask >> i & 1)


def _is_subspace_mask(K: IncidenceStructure, mask: int) -> bool:
    for lm in K.line_masks:
        inside = lm & mask
        if inside != lm and inside & (inside - 1):
            return False
    return True


def _is_hyperplane_mask(K: IncidenceStructure, mask: int, allow_empty: bool = False) -> bool:
    full = (1 << K.num_points) - 1
    if mask == full:
        return False
    if mask == 0 and not allow_empty:
        return False
    for lm in K.line_masks:
        inside = lm & mask
        if not inside:
            return False
        if inside != lm and inside & (inside - 1):
            return False
    return True


def is_subspace(K: IncidenceStructure, H: Iterable) -> bool:
    """True iff every line through two distinct points of ``H`` lies in ``H``."""
    return _is_subspace_mask(K, _mask(K, H))


def is_hyperplane(K: IncidenceStructure, H: Iterable, allow_empty: bool = False) -> bool:
    """Proper subspace met by every line.

    The full point set is never a hyperplane. The empty set can only qualify
    when ``K`` has no lines, and only with ``allow_empty``.
    """
    return _is_hyperplane_mask(K, _mask(K, H), allow_empty)


def _require_subspace(K, mask):
    if not _is_subspace_mask(K, mask):
        raise HyperplaneError("point set is not a subspace")


def _require_hyperplane(K, mask):
    if not _is_hyperplane_mask(K, mask):
        raise HyperplaneError("point set is not a hyperplane")


def deep_lines(K: IncidenceStructure, H: Iterable) -> list:
    """Lines lying entirely inside the subspace ``H``, in line order."""
    mask = _mask(K, H)
    _require_subspace(K, mask)
    return [ln for ln, lm in zip(K.lines, K.line_masks) if lm & mask == lm]


def restriction(K: IncidenceStructure, H: Iterable) -> IncidenceStructure:
    """``H`` with its deep lines."""
    mask = _mask(K, H)
    _require_subspace(K, mask)
    return _restriction(K, mask)


def _restriction(K, mask):
    pts = [p for i, p in enumerate(K.points) if mask >> i & 1]
    lns, pairs = [], []
    for ln, lm, ps in zip(K.lines, K.line_masks, K.line_point_indices):
        if lm & mask == lm:
            lns.append(ln)
            pairs.extend((K.points[i], ln) for i in ps)
    return IncidenceStructure(pts, lns, pairs)


def reduct(K: IncidenceStructure, H: Iterable) -> IncidenceStructure:
    """Points off ``H`` with the non-deep lines, each minus its point in ``H``."""
    mask = _mask(K, H)
    _require_hyperplane(K, mask)
    return _reduct(K, mask)


def _reduct(K, mask):
    pts = [p for i, p in enumerate(K.points) if not mask >> i & 1]
    lns, pairs = [], []
    for ln, lm, ps in zip(K.lines, K.line_masks, K.line_point_indices):
        if lm & mask != lm:
            lns.append(ln)
            pairs.extend((K.points[i], ln) for i in ps if not mask >> i & 1)
    return IncidenceStructure(pts, lns, pairs)


def _infinity(K, mask) -> dict:
    inf = {}
    for ln, lm, ps in zip(K.lines, K.line_masks, K.line_point_indices):
        if lm & mask != lm:
            (i,) = [i for i in ps if mask >> i & 1]
            inf[ln] = K.points[i]
    return inf


def extract_infinity(K: IncidenceStructure, H: Iterable) -> dict:
    """Map each non-deep line to its unique point in the hyperplane ``H``."""
    mask = _mask(K, H)
    _require_hyperplane(K, mask)
    return _infinity(K, mask)


def hyperplane_is_configuration(K: IncidenceStructure, H: Iterable) -> ConfigurationType | None:
    mask = _mask(K, H)
    _require_hyperplane(K, mask)
    return configuration_type(_restriction(K, mask))


@dataclass(frozen=True)
class HyperplaneView:
    host: IncidenceStructure = field(repr=False)
    points: frozenset
    deep_lines: tuple
    infinity: dict = field(hash=False, compare=False)

    @classmethod
    def of(cls, K: IncidenceStructure, H: Iterable) -> "HyperplaneView":
        mask = _mask(K, H)
        _require_hyperplane(K, mask)
        return cls._from_mask(K, mask)

    @classmethod
    def _from_mask(cls, K, mask):
        deep = tuple(ln for ln, lm in zip(K.lines, K.line_masks) if lm & mask == lm)
        return cls(K, _points_of(K, mask), deep, _infinity(K, mask))

    @property
    def ordered_points(self) -> list:
        return [p for p in self.host.points if p in self.points]

    def restriction(self) -> IncidenceStructure:
        return restriction(self.host, self.points)

    def reduct(self) -> IncidenceStructure:
        return reduct(self.host, self.points)

    def configuration_type(self) -> ConfigurationType | None:
        return configuration_type(self.restriction())

    def __len__(self):
        return len(self.points)


def _sort_key(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


def hyperplane_masks(K: IncidenceStructure, allow_empty: bool = False) -> list[int]:
    """Depth-first search over points deciding in/out with propagation.

    Two chosen points on a line force the rest of the line in; a line whose
    points are all excluded but one forces that one in. Conflicts prune.
    """
    n = K.num_points
    line_pts = K.line_point_indices
    point_lns = K.point_line_indices
    line_masks = K.line_masks
    full = (1 << n) - 1
    found: list[int] = []

    def propagate(inset: int, outset: int, queue: list[int]):
        # queue holds points whose status just changed
        while queue:
            i = queue.pop()
            for j in point_lns[i]:
                lm = line_masks[j]
                ins = lm & inset
                outs = lm & outset
                if ins & (ins - 1):
                    if outs:
                        return None
                    rest = lm & ~inset
                    if rest:
                        inset |= rest
                        queue.extend(k for k in line_pts[j] if rest >> k & 1)
                elif not ins:
                    free = lm & ~outset
                    if not free:
                        return None
                    if free & (free - 1) == 0:
                        inset |= free
                        queue.append(free.bit_length() - 1)
        return inset, outset

    # lines with no points can never be met
    if any(lm == 0 for lm in line_masks):
        return []

    def dfs(i: int, inset: int, outset: int):
        while i < n and (inset | outset) >> i & 1:
            i += 1
        if i == n:
            if inset != full and (inset or allow_empty):
                found.append(inset)
            return
        bit = 1 << i
        r = propagate(inset | bit, outset, [i])
        if r is not None:
            dfs(i + 1, *r)
        r = propagate(inset, outset | bit, [i])
        if r is not None:
            dfs(i + 1, *r)

    start = propagate(0, 0, list(range(n)))
    if start is not None:
        dfs(0, *start)
    found.sort(key=lambda m: _sort_key(m, n))
    return found


def enumerate_hyperplanes(
    K: IncidenceStructure,
    max_points: int | None = DEFAULT_MAX_POINTS,
    allow_empty: bool = False,
) -> list[HyperplaneView]:
    """All hyperplanes of ``K`` in lexicographic order of point indices."""
    if max_points is not None and K.num_points > max_points:
        raise SearchTooLarge(
            f"{K.num_points} points exceeds the hyperplane search cap of {max_points}"
        )
    return [HyperplaneView._from_mask(K, m) for m in hyperplane_masks(K, allow_empty)]
