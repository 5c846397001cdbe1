"""Finite incidence structures and their configuration types."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Hashable, Iterable, Sequence


class IncidenceError(ValueError):
    """Raised for malformed incidence data or unknown identifiers."""


@dataclass(frozen=True)
class ConfigurationType:
    """Parameters of a (nu_rho beta_kappa)-configuration."""

    nu: int
    rho: int
    beta: int
    kappa: int

    def __str__(self) -> str:
        return f"({self.nu}_{self.rho} {self.beta}_{self.kappa})"

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.nu, self.rho, self.beta, self.kappa)

    def dual(self) -> "ConfigurationType":
        return ConfigurationType(self.beta, self.kappa, self.nu, self.rho)


@dataclass(frozen=True)
class BinomialSignature:
    """Signature (k, m) of the class of binomial configurations.

    Points have rank ``k`` and lines have size ``m``; there are
    ``C(n, k)`` points and ``C(n, m)`` lines where ``n = k + m - 1``.
    """

    k: int
    m: int

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise ValueError(f"binomial signature needs k, m >= 1, got ({self.k}, {self.m})")

    @property
    def n(self) -> int:
        return self.k + self.m - 1

    def configuration_type(self) -> ConfigurationType:
        n = self.n
        return ConfigurationType(comb(n, self.k), self.k, comb(n, self.m), self.m)

    def dual(self) -> "BinomialSignature":
        return BinomialSignature(self.m, self.k)

    def __str__(self) -> str:
        return f"k={self.k} m={self.m}"


class IncidenceStructure:
    """An immutable finite incidence structure <points, lines, incidence>.

    Identifiers are opaque hashables (strings for anything that goes through
    the file format). Point and line identifiers must not overlap. Lines are
    not identified with their point sets, so two lines may carry the same
    points.

    Internally points and lines are indexed in insertion order; every line
    keeps a bitmask of its points and both incidence fibers are cached.
    """

    __slots__ = (
        "_points",
        "_lines",
        "_pindex",
        "_lindex",
        "_line_pts",
        "_point_lns",
        "_line_mask",
        "_hash",
    )

    def __init__(
        self,
        points: Iterable[Hashable],
        lines: Iterable[Hashable],
        incidence: Iterable[tuple[Hashable, Hashable]],
    ):
        pts = tuple(points)
        lns = tuple(lines)
        pindex: dict = {}
        for p in pts:
            if p in pindex:
                raise IncidenceError(f"duplicate point identifier {p!r}")
            pindex[p] = len(pindex)
        lindex: dict = {}
        for ln in lns:
            if ln in lindex:
                raise IncidenceError(f"duplicate line identifier {ln!r}")
            if ln in pindex:
                raise IncidenceError(f"identifier {ln!r} used for both a point and a line")
            lindex[ln] = len(lindex)

        line_sets: list[set[int]] = [set() for _ in lns]
        for p, ln in incidence:
            if p not in pindex:
                raise IncidenceError(f"incidence references unknown point {p!r}")
            if ln not in lindex:
                raise IncidenceError(f"incidence references unknown line {ln!r}")
            line_sets[lindex[ln]].add(pindex[p])

        point_lns: list[list[int]] = [[] for _ in pts]
        for j, s in enumerate(line_sets):
            for i in s:
                point_lns[i].append(j)

        self._points = pts
        self._lines = lns
        self._pindex = pindex
        self._lindex = lindex
        self._line_pts = tuple(tuple(sorted(s)) for s in line_sets)
        self._point_lns = tuple(tuple(ls) for ls in point_lns)
        masks = []
        for s in line_sets:
            mask = 0
            for i in s:
                mask |= 1 << i
            masks.append(mask)
        self._line_mask = tuple(masks)
        self._hash = None

    @classmethod
    def _from_indices(cls, points, lines, line_pts) -> "IncidenceStructure":
        # trusted fast path: line_pts[j] lists point indices of line j
        pairs = ((points[i], lines[j]) for j, ps in enumerate(line_pts) for i in ps)
        return cls(points, lines, pairs)

    # -- basic accessors -------------------------------------------------

    @property
    def points(self) -> tuple:
        return self._points

    @property
    def lines(self) -> tuple:
        return self._lines

    @property
    def num_points(self) -> int:
        return len(self._points)

    @property
    def num_lines(self) -> int:
        return len(self._lines)

    @property
    def incidence(self) -> frozenset:
        return frozenset(
            (self._points[i], self._lines[j])
            for j, ps in enumerate(self._line_pts)
            for i in ps
        )

    @property
    def num_incidences(self) -> int:
        return sum(len(ps) for ps in self._line_pts)

    def point_index(self, p) -> int:
        try:
            return self._pindex[p]
        except KeyError:
            raise IncidenceError(f"unknown point {p!r}") from None

    def line_index(self, ln) -> int:
        try:
            return self._lindex[ln]
        except KeyError:
            raise IncidenceError(f"unknown line {ln!r}") from None

    def has_point(self, p) -> bool:
        return p in self._pindex

    def has_line(self, ln) -> bool:
        return ln in self._lindex

    def incident(self, p, ln) -> bool:
        return bool(self._line_mask[self.line_index(ln)] >> self.point_index(p) & 1)

    def lines_through(self, p) -> list:
        return [self._lines[j] for j in self._point_lns[self.point_index(p)]]

    def points_on(self, ln) -> list:
        return [self._points[i] for i in self._line_pts[self.line_index(ln)]]

    # index-level views used by the algorithms
    @property
    def line_point_indices(self) -> tuple[tuple[int, ...], ...]:
        return self._line_pts

    @property
    def point_line_indices(self) -> tuple[tuple[int, ...], ...]:
        return self._point_lns

    @property
    def line_masks(self) -> tuple[int, ...]:
        return self._line_mask

    # -- derived structures ----------------------------------------------

    def relabel(self, point_map=None, line_map=None) -> "IncidenceStructure":
        """Rename identifiers; either map may be a dict or a callable."""

        def as_fn(m):
            if m is None:
                return lambda x: x
            if callable(m):
                return m
            return m.__getitem__

        fp, fl = as_fn(point_map), as_fn(line_map)
        pts = tuple(fp(p) for p in self._points)
        lns = tuple(fl(ln) for ln in self._lines)
        return IncidenceStructure._from_indices(pts, lns, self._line_pts)

    def indexed(self) -> tuple[int, int, tuple[tuple[int, ...], ...]]:
        """Identifier-free shape: counts plus point indices of each line."""
        return (len(self._points), len(self._lines), self._line_pts)

    def __eq__(self, other):
        if not isinstance(other, IncidenceStructure):
            return NotImplemented
        return (
            self._points == other._points
            and self._lines == other._lines
            and self._line_pts == other._line_pts
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._points, self._lines, self._line_pts))
        return self._hash

    def __repr__(self):
        return f"<IncidenceStructure: {len(self._points)} points, {len(self._lines)} lines>"


def build(points: Sequence[Hashable], lines: Sequence[tuple[Hashable, Sequence[Hashable]]]) -> IncidenceStructure:
    """Build a structure from point ids and ``(line_id, [point ids])`` pairs.

    >>> K = build("abc", [("ab", "ab"), ("bc", "bc"), ("ca", "ca")])
    >>> K.num_points, K.num_lines
    (3, 3)
    """
    pairs = []
    for ln, members in lines:
        members = list(members)
        if len(set(members)) != len(members):
            raise IncidenceError(f"line {ln!r} lists a point twice")
        pairs.extend((p, ln) for p in members)
    return IncidenceStructure(points, [ln for ln, _ in lines], pairs)


def structurally_equal(K1: IncidenceStructure, K2: IncidenceStructure) -> bool:
    """Equality up to renaming identifiers while keeping their order."""
    return K1.indexed() == K2.indexed()


def point_rank(K: IncidenceStructure, p) -> int:
    return len(K.point_line_indices[K.point_index(p)])


def line_size(K: IncidenceStructure, ln) -> int:
    return len(K.line_point_indices[K.line_index(ln)])


def point_ranks(K: IncidenceStructure) -> list[int]:
    return [len(ls) for ls in K.point_line_indices]


def line_sizes(K: IncidenceStructure) -> list[int]:
    return [len(ps) for ps in K.line_point_indices]


def lines_through(K: IncidenceStructure, p) -> list:
    return K.lines_through(p)


def points_on(K: IncidenceStructure, ln) -> list:
    return K.points_on(ln)


def is_partial_linear_space(K: IncidenceStructure) -> bool:
    """True iff two distinct points share at most one line."""
    line_pts = K.line_point_indices
    point_lns = K.point_line_indices
    for j, ps in enumerate(line_pts):
        seen = set()
        for i in ps:
            for j2 in point_lns[i]:
                if j2 == j:
                    continue
                if j2 in seen:
                    return False
                seen.add(j2)
    return True


def configuration_type(K: IncidenceStructure) -> ConfigurationType | None:
    """The (nu, rho, beta, kappa) of ``K``, or None if it is not a configuration.

    Structures without lines get kappa = 0 and structures without points
    get rho = 0.
    """
    if not is_partial_linear_space(K):
        return None
    ranks = set(point_ranks(K))
    sizes = set(line_sizes(K))
    if len(ranks) > 1 or len(sizes) > 1:
        return None
    rho = ranks.pop() if ranks else 0
    kappa = sizes.pop() if sizes else 0
    return ConfigurationType(K.num_points, rho, K.num_lines, kappa)


def binomial_signature(t: ConfigurationType | None) -> BinomialSignature | None:
    """The signature (k, m) = (rho, kappa) when ``t`` is binomial, else None."""
    if t is None or t.rho < 1 or t.kappa < 1:
        return None
    n = t.rho + t.kappa - 1
    if t.nu == comb(n, t.rho) and t.beta == comb(n, t.kappa):
        return BinomialSignature(t.rho, t.kappa)
    return None


def signature_of(K: IncidenceStructure) -> BinomialSignature | None:
    return binomial_signature(configuration_type(K))


def dual(K: IncidenceStructure) -> IncidenceStructure:
    """Swap the roles of points and lines."""
    return IncidenceStructure._from_indices(K.lines, K.points, K.point_line_indices)
