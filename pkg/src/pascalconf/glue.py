"""Gluing a structure onto a hyperplane, and taking it apart again.

``glue(K1, K2, inf)`` attaches every line ``A`` of ``K1`` to the point
``inf[A]`` of ``K2``. The points of ``K2`` then form a hyperplane of the
result whose deep lines are exactly the lines of ``K2``; ``decompose`` runs
the construction backwards.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Mapping

from .core import (
    BinomialSignature,
    IncidenceStructure,
    binomial_signature,
    configuration_type,
    dual,
)
from .hyperplane import _infinity, _is_hyperplane_mask, _mask, _reduct, _restriction
from .iso import CANONICAL_MAX_SIZE, Isomorphism, canonical_form, verify_isomorphism

LEFT = "L."
RIGHT = "R."
DEFAULT_GLUING_CAP = 9


class GluingError(ValueError):
    pass


class DecompositionError(ValueError):
    """A premise of the decomposition theorem fails.

    ``reason`` is one of ``not-binomial``, ``not-hyperplane``,
    ``restriction-not-configuration``, ``reduct-not-binomial``.
    """

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class GluingMap:
    """A validated map from the lines of ``K1`` to the points of ``K2``."""

    source: tuple
    target: tuple
    mapping: dict = field(hash=False)
    bijective: bool = False

    def __getitem__(self, line):
        return self.mapping[line]

    def __len__(self):
        return len(self.mapping)

    def items(self):
        return ((ln, self.mapping[ln]) for ln in self.source)

    def inverse(self) -> dict:
        if not self.bijective:
            raise GluingError("only a bijective gluing map can be inverted")
        return {p: ln for ln, p in self.mapping.items()}


def validate_gluing(K1: IncidenceStructure, K2: IncidenceStructure, f: Mapping) -> GluingMap:
    """Check that concurrent lines of ``K1`` never share an image."""
    for ln in K1.lines:
        if ln not in f:
            raise GluingError(f"map is undefined on line {ln!r}")
    for ln, p in f.items():
        if not K1.has_line(ln):
            raise GluingError(f"{ln!r} is not a line of the first structure")
        if not K2.has_point(p):
            raise GluingError(f"{p!r} is not a point of the second structure")
    for x in K1.points:
        seen = {}
        for ln in K1.lines_through(x):
            img = f[ln]
            if img in seen:
                raise GluingError(
                    f"lines {seen[img]!r} and {ln!r} meet at {x!r} but both map to {img!r}"
                )
            seen[img] = ln
    mapping = {ln: f[ln] for ln in K1.lines}
    bijective = len(set(mapping.values())) == len(mapping) == K2.num_points
    return GluingMap(tuple(K1.lines), tuple(K2.points), mapping, bijective)


def _coerce(K1, K2, inf) -> GluingMap:
    if isinstance(inf, GluingMap):
        if inf.source != tuple(K1.lines) or inf.target != tuple(K2.points):
            return validate_gluing(K1, K2, inf.mapping)
        return inf
    return validate_gluing(K1, K2, inf)


def glue(
    K1: IncidenceStructure,
    K2: IncidenceStructure,
    inf: GluingMap | Mapping,
    namespace: bool = True,
) -> IncidenceStructure:
    """The structure on ``K1``'s and ``K2``'s elements joined along ``inf``.

    With ``namespace`` the identifiers of ``K1`` get an ``L.`` prefix and
    those of ``K2`` an ``R.`` prefix so the two never collide; otherwise the
    identifiers must already be disjoint.
    """
    inf = _coerce(K1, K2, inf)
    if namespace:
        l = lambda x: f"{LEFT}{x}"  # noqa: E731
        r = lambda x: f"{RIGHT}{x}"  # noqa: E731
    else:
        l = r = lambda x: x  # noqa: E731
    points = [l(p) for p in K1.points] + [r(p) for p in K2.points]
    lines = [l(ln) for ln in K1.lines] + [r(ln) for ln in K2.lines]
    pairs = [(l(p), l(ln)) for p, ln in K1.incidence]
    pairs += [(r(p), r(ln)) for p, ln in K2.incidence]
    pairs += [(r(p), l(ln)) for ln, p in inf.items()]
    return IncidenceStructure(points, lines, pairs)


def glued_hyperplane(K2: IncidenceStructure, namespace: bool = True) -> list:
    """The point ids of ``K2`` as they appear inside a glued structure."""
    return [f"{RIGHT}{p}" for p in K2.points] if namespace else list(K2.points)


@dataclass(frozen=True)
class Decomposition:
    """``reduct_part`` glued onto ``hyperplane_part`` along ``infinity``.

    ``witness`` maps the namespaced identifiers of
    ``glue(reduct_part, hyperplane_part, infinity)`` back to the original.
    """

    original: IncidenceStructure = field(repr=False)
    hyperplane: frozenset
    reduct_part: IncidenceStructure
    hyperplane_part: IncidenceStructure
    infinity: GluingMap = field(repr=False)
    witness: Isomorphism = field(repr=False)
    signature: BinomialSignature | None = None

    def recompose(self) -> IncidenceStructure:
        return glue(self.reduct_part, self.hyperplane_part, self.infinity)


def split(K: IncidenceStructure, H) -> Decomposition:
    """Cut ``K`` at any hyperplane ``H``, with no binomial premises."""
    mask = _mask(K, H)
    if not _is_hyperplane_mask(K, mask):
        raise DecompositionError("not-hyperplane", "point set is not a hyperplane")
    return _split(K, mask, None)


def _split(K, mask, sig) -> Decomposition:
    K1 = _reduct(K, mask)
    K2 = _restriction(K, mask)
    inf = validate_gluing(K1, K2, _infinity(K, mask))
    pm = {f"{LEFT}{p}": p for p in K1.points}
    pm.update({f"{RIGHT}{p}": p for p in K2.points})
    lm = {f"{LEFT}{ln}": ln for ln in K1.lines}
    lm.update({f"{RIGHT}{ln}": ln for ln in K2.lines})
    witness = Isomorphism(pm, lm)
    if not verify_isomorphism(glue(K1, K2, inf), K, witness):
        raise AssertionError("reassembled structure does not match the original")
    H = frozenset(K2.points)
    return Decomposition(K, H, K1, K2, inf, witness, sig)


def decompose(K: IncidenceStructure, H) -> Decomposition:
    """Split a binomial configuration at a hyperplane into its two binomial parts.

    All premises are checked: ``K`` binomial with signature (k, m), ``H`` a
    hyperplane, the restriction to ``H`` a configuration, and the reduct
    binomial. The parts then have signatures (k, m-1) and (k-1, m) and the
    gluing map is a bijection; both facts are re-checked.
    """
    sig = binomial_signature(configuration_type(K))
    if sig is None:
        raise DecompositionError("not-binomial", "structure is not a binomial configuration")
    mask = _mask(K, H)
    if not _is_hyperplane_mask(K, mask):
        raise DecompositionError("not-hyperplane", "point set is not a hyperplane")
    if configuration_type(_restriction(K, mask)) is None:
        raise DecompositionError(
            "restriction-not-configuration", "restriction to the hyperplane is not a configuration"
        )
    if binomial_signature(configuration_type(_reduct(K, mask))) is None:
        raise DecompositionError("reduct-not-binomial", "reduct is not a binomial configuration")

    d = _split(K, mask, sig)
    k, m, n = sig.k, sig.m, sig.n
    s1 = binomial_signature(configuration_type(d.reduct_part))
    s2 = binomial_signature(configuration_type(d.hyperplane_part))
    expect1 = (k, m - 1)
    expect2 = (k - 1, m)
    if s1 is None or (s1.k, s1.m) != expect1:
        raise AssertionError(f"reduct signature {s1} != {expect1}")
    # a part with k-1 = 0 or m-1 = 0 has no binomial signature; check counts instead
    if k > 1 and (s2 is None or (s2.k, s2.m) != expect2):
        raise AssertionError(f"hyperplane signature {s2} != {expect2}")
    if d.hyperplane_part.num_points != comb(n - 1, k - 1):
        raise AssertionError("hyperplane point count differs from C(n-1, k-1)")
    if d.hyperplane_part.num_lines != comb(n - 1, m):
        raise AssertionError("hyperplane line count differs from C(n-1, m)")
    if not d.infinity.bijective:
        raise AssertionError("gluing map of a binomial decomposition is not bijective")
    return d


def verify_duality(K1: IncidenceStructure, K2: IncidenceStructure, inf: GluingMap | Mapping) -> bool:
    """Check that dualising a glued structure swaps and dualises its parts.

    Compares ``dual(glue(K1, K2, inf))`` with
    ``glue(dual(K2), dual(K1), inverse of inf)`` after exchanging the
    ``L.``/``R.`` namespaces, as exact sets of incidences.
    """
    inf = _coerce(K1, K2, inf)
    if not inf.bijective:
        raise GluingError("duality needs a bijective gluing map")
    lhs = dual(glue(K1, K2, inf))
    rhs = glue(dual(K2), dual(K1), inf.inverse())

    def swap(x: str) -> str:
        if x.startswith(LEFT):
            return RIGHT + x[len(LEFT):]
        return LEFT + x[len(RIGHT):]

    renamed = rhs.relabel(swap, swap)
    return (
        set(renamed.points) == set(lhs.points)
        and set(renamed.lines) == set(lhs.lines)
        and renamed.incidence == lhs.incidence
    )


def enumerate_gluings(
    K1: IncidenceStructure, K2: IncidenceStructure, cap: int = DEFAULT_GLUING_CAP
) -> list[GluingMap]:
    """All valid bijections from lines of ``K1`` to points of ``K2``.

    Maps are generated in lexicographic order of the image tuple (images
    listed in ``K1``'s line order, points compared by ``K2``'s order).
    """
    b = K1.num_lines
    if b != K2.num_points:
        return []
    if b > cap:
        raise GluingError(f"{b}! candidate bijections exceeds the cap of {cap}! ")
    source, target = tuple(K1.lines), tuple(K2.points)
    out = []
    # a bijection never repeats an image, so every one of them is valid
    for perm in itertools.permutations(target):
        out.append(GluingMap(source, target, dict(zip(source, perm)), True))
    return out


@dataclass(frozen=True)
class GluingClass:
    representative: GluingMap
    size: int
    certificate: bytes = field(repr=False)
    members: tuple = field(default=(), repr=False)


def classify_gluings(
    K1: IncidenceStructure,
    K2: IncidenceStructure,
    cap: int = DEFAULT_GLUING_CAP,
    max_size: int | None = CANONICAL_MAX_SIZE,
) -> list[GluingClass]:
    """Group all valid bijections by the isomorphism type of the glued result.

    Classes come in certificate order; each representative is the first map
    of its class in enumeration order.
    """
    buckets: dict[bytes, list[GluingMap]] = {}
    for g in enumerate_gluings(K1, K2, cap):
        cert = canonical_form(glue(K1, K2, g), max_size).certificate
        buckets.setdefault(cert, []).append(g)
    return [
        GluingClass(buckets[c][0], len(buckets[c]), c, tuple(buckets[c]))
        for c in sorted(buckets)
    ]
