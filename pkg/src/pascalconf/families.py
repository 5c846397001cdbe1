"""Generators for the standard families of binomial configurations.

Grassmannian-type families live on the atoms ``1..n``; a subset used as a
point is written ``{1,3}`` and as a line ``[1,3]``. Veronesian families live
on the letters ``a, b, c, ...`` and use multiset text (``a^2b``, ``1`` for
the empty multiset). Identifiers therefore carry enough information to
evaluate the gluing maps directly.

Parameter conventions:

* ``grassmannian_G(k, m)`` has signature (k, m) on ``n = k + m - 1`` atoms;
* ``gras_space(n, k)`` (k-subsets vs (k+1)-subsets) has signature
  (n - k, k + 1);
* ``dcd(n, k)`` (k-subsets vs (k-1)-subsets, reverse inclusion) equals
  ``grassmannian_G(k, n - k + 1)`` up to complementing lines;
* ``veronesian(m, k)`` (k-multisets over m atoms) has signature (k, m);
* ``dual_veronesian(m, k)`` has signature (m, k).
"""

from __future__ import annotations

import itertools
import re
import string
from dataclasses import dataclass

from .core import IncidenceStructure, dual
from .glue import GluingMap, validate_gluing
from .hyperplane import _mask, _reduct, _restriction, _is_hyperplane_mask
from .multiset import (
    Multiset,
    degree,
    enumerate_multisets,
    format_multiset,
    parse_multiset,
    power,
)


class FamilyError(ValueError):
    pass


# -- identifiers -------------------------------------------------------------

def point_id(subset) -> str:
    return "{" + ",".join(str(x) for x in sorted(subset)) + "}"


def line_id(subset) -> str:
    return "[" + ",".join(str(x) for x in sorted(subset)) + "]"


def parse_subset_id(text: str) -> frozenset[int]:
    body = text[1:-1]
    return frozenset(int(x) for x in body.split(",")) if body else frozenset()


def letters(m: int) -> tuple[str, ...]:
    if m > len(string.ascii_lowercase):
        raise FamilyError("Veronesian families support at most 26 atoms")
    return tuple(string.ascii_lowercase[:m])


def _subsets(n: int, k: int):
    return [frozenset(c) for c in itertools.combinations(range(1, n + 1), k)]


def _require(cond: bool, msg: str):
    if not cond:
        raise FamilyError(msg)


# -- Grassmannian presentations -----------------------------------------------

def grassmannian_G(k: int, m: int) -> IncidenceStructure:
    """k-subsets vs m-subsets of ``k + m - 1`` atoms, incident when they share one atom."""
    _require(k >= 1 and m >= 1, f"G(k, m) needs k, m >= 1, got ({k}, {m})")
    n = k + m - 1
    pts = _subsets(n, k)
    lns = _subsets(n, m)
    pairs = [(point_id(a), line_id(A)) for A in lns for a in pts if len(a & A) == 1]
    return IncidenceStructure(map(point_id, pts), map(line_id, lns), pairs)


def gras_space(n: int, k: int) -> IncidenceStructure:
    """k-subsets vs (k+1)-subsets of ``n`` atoms under inclusion."""
    _require(1 <= k <= n - 1, f"GrasSpace(n, k) needs 1 <= k <= n-1, got ({n}, {k})")
    pts = _subsets(n, k)
    lns = _subsets(n, k + 1)
    pairs = [(point_id(A - {x}), line_id(A)) for A in lns for x in sorted(A)]
    return IncidenceStructure(map(point_id, pts), map(line_id, lns), pairs)


def dcd(n: int, k: int) -> IncidenceStructure:
    """k-subsets vs (k-1)-subsets of ``n`` atoms under reverse inclusion."""
    _require(1 <= k <= n, f"DCD(n, k) needs 1 <= k <= n, got ({n}, {k})")
    pts = _subsets(n, k)
    lns = _subsets(n, k - 1)
    pairs = [
        (point_id(B | {x}), line_id(B))
        for B in lns
        for x in range(1, n + 1)
        if x not in B
    ]
    return IncidenceStructure(map(point_id, pts), map(line_id, lns), pairs)


def complement_witness(k: int, m: int) -> tuple[dict, dict]:
    """Identifier maps taking ``grassmannian_G(k, m)`` onto ``dcd(k+m-1, k)``.

    Points are kept and every line is replaced by its complement.
    """
    n = k + m - 1
    atoms = frozenset(range(1, n + 1))
    pm = {point_id(a): point_id(a) for a in _subsets(n, k)}
    lm = {line_id(A): line_id(atoms - A) for A in _subsets(n, m)}
    return pm, lm


def complete_graph(n: int) -> IncidenceStructure:
    """K_n: vertices ``1..n`` and edges ``[i,j]``."""
    _require(n >= 2, f"K_n needs n >= 2, got {n}")
    pts = [str(i) for i in range(1, n + 1)]
    edges = list(itertools.combinations(range(1, n + 1), 2))
    pairs = [(str(x), line_id(e)) for e in edges for x in e]
    return IncidenceStructure(pts, [line_id(e) for e in edges], pairs)


def dual_complete_graph(n: int) -> IncidenceStructure:
    return dual(complete_graph(n))


def veblen() -> IncidenceStructure:
    """The Pasch-Veblen configuration: four lines in general position and their six meets."""
    lines = {
        "l1": ["A", "B", "C"],
        "l2": ["A", "D", "E"],
        "l3": ["B", "D", "F"],
        "l4": ["C", "E", "F"],
    }
    return IncidenceStructure("ABCDEF", lines, [(p, ln) for ln, ps in lines.items() for p in ps])


# -- Veronesians ---------------------------------------------------------------

def _ver_lines(ground, k):
    out = []
    for i in range(k):
        out.extend(enumerate_multisets(ground, i))
    return out


def veronesian(m: int, k: int) -> IncidenceStructure:
    """k-multisets over ``m`` atoms vs shorter multisets.

    A point ``f`` lies on a line ``e`` when ``f = e * x^(k - |e|)`` for an
    atom ``x``.
    """
    _require(m >= 1 and k >= 1, f"V(m, k) needs m, k >= 1, got ({m}, {k})")
    X = letters(m)
    pts = enumerate_multisets(X, k)
    lns = _ver_lines(X, k)
    pairs = []
    for e in lns:
        s = k - len(e)
        for x in X:
            pairs.append((format_multiset(e * power(X, x, s)), format_multiset(e)))
    return IncidenceStructure(
        [format_multiset(f) for f in pts], [format_multiset(e) for e in lns], pairs
    )


def dual_veronesian(m: int, k: int) -> IncidenceStructure:
    return dual(veronesian(m, k))


# -- canonical hyperplanes ------------------------------------------------------

def _checked(K, H, inf_fn):
    mask = _mask(K, H)
    if not _is_hyperplane_mask(K, mask):
        raise AssertionError("canonical point set is not a hyperplane")
    K1 = _reduct(K, mask)
    K2 = _restriction(K, mask)
    return frozenset(H), validate_gluing(K1, K2, {A: inf_fn(A) for A in K1.lines})


def grassmannian_hyperplane(n: int, k: int, i: int | None = None) -> tuple[frozenset, GluingMap]:
    """Hyperplane of ``gras_space(n, k)`` made of the k-subsets avoiding atom ``i``.

    The returned map sends a non-deep line ``A`` (which contains ``i``) to
    the point ``A - {i}``. ``i`` defaults to ``n``.
    """
    i = n if i is None else i
    if not 1 <= i <= n:
        raise FamilyError(f"atom {i} is not in 1..{n}")
    K = gras_space(n, k)
    H = [point_id(a) for a in _subsets(n, k) if i not in a]
    return _checked(K, H, lambda A: point_id(parse_subset_id(A) - {i}))


def veronesian_hyperplane(m: int, k: int, a: str | None = None) -> tuple[frozenset, GluingMap]:
    """Hyperplane of ``veronesian(m, k)`` made of the multisets containing ``a``.

    A line ``e`` avoiding ``a`` is sent to ``e * a^(k - |e|)``. ``a``
    defaults to the last atom.
    """
    X = letters(m)
    a = X[-1] if a is None else a
    if a not in X:
        raise FamilyError(f"atom {a!r} is not in the ground set {X}")
    K = veronesian(m, k)
    H = [format_multiset(f) for f in enumerate_multisets(X, k) if degree(a, f)]

    def inf(e_text):
        e = parse_multiset(e_text, X)
        return format_multiset(e * power(X, a, k - len(e)))

    return _checked(K, H, inf)


def dual_veronesian_hyperplane(m: int, k: int, a: str | None = None) -> tuple[frozenset, GluingMap]:
    """Hyperplane of ``dual_veronesian(m, k)``: the shorter multisets avoiding ``a``.

    A line ``f`` (a k-multiset containing ``a``) is sent to ``f / a^deg``
    where ``deg`` is the multiplicity of ``a`` in ``f``.
    """
    X = letters(m)
    a = X[-1] if a is None else a
    if a not in X:
        raise FamilyError(f"atom {a!r} is not in the ground set {X}")
    K = dual_veronesian(m, k)
    H = [format_multiset(e) for e in _ver_lines(X, k) if not degree(a, e)]

    def inf(f_text):
        f = parse_multiset(f_text, X)
        return format_multiset(f / power(X, a, degree(a, f)))

    return _checked(K, H, inf)


# -- maps between neighbouring family members ------------------------------------

def grassmannian_step_map(n: int, k: int) -> dict:
    """Gluing map from ``gras_space(n-1, k-1)`` lines to ``gras_space(n-1, k)`` points.

    Both are k-subsets of ``1..n-1``; the map keeps the subset. Gluing along
    it gives a copy of ``gras_space(n, k)``. When ``k == 1`` the first part
    is a single point on ``n - 1`` one-point lines, taken from
    ``grassmannian_G(n - 1, 1)``.
    """
    if k == 1:
        return {line_id({x}): point_id({x}) for x in range(1, n)}
    return {line_id(A): point_id(A) for A in _subsets(n - 1, k)}


def veronesian_step_map(m: int, k: int) -> dict:
    """Gluing map from ``veronesian(m-1, k)`` lines to ``veronesian(m, k-1)`` points.

    A line ``e`` goes to ``e * a^(k-1-|e|)`` with ``a`` the new last atom.
    """
    X = letters(m)
    a = X[-1]
    out = {}
    for e in _ver_lines(X[:-1], k):
        lifted = Multiset.from_counts(X, e.counts)
        out[format_multiset(e)] = format_multiset(lifted * power(X, a, k - 1 - len(e)))
    return out


def dual_veronesian_step_map(m: int, k: int) -> dict:
    """Gluing map from ``dual_veronesian(m, k-1)`` lines to ``dual_veronesian(m-1, k)`` points.

    A (k-1)-multiset ``g`` goes to ``g / a^deg``, ``a`` the last atom.
    """
    X = letters(m)
    a = X[-1]
    out = {}
    for g in enumerate_multisets(X, k - 1):
        out[format_multiset(g)] = format_multiset(g / power(X, a, degree(a, g)))
    return out


# -- family specs --------------------------------------------------------------

FAMILY_NAMES = (
    "grassmannian-G",
    "gras-space",
    "dcd",
    "veronesian",
    "dual-veronesian",
    "complete-graph",
    "dual-complete-graph",
    "veblen",
)

_PREFIX = {
    "G": ("grassmannian-G", 2),
    "GS": ("gras-space", 2),
    "DCD": ("dcd", 2),
    "V": ("veronesian", 2),
    "V*": ("dual-veronesian", 2),
    "K": ("complete-graph", 1),
    "K*": ("dual-complete-graph", 1),
}

_BUILDERS = {
    "grassmannian-G": grassmannian_G,
    "gras-space": gras_space,
    "dcd": dcd,
    "veronesian": veronesian,
    "dual-veronesian": dual_veronesian,
    "complete-graph": complete_graph,
    "dual-complete-graph": dual_complete_graph,
    "veblen": veblen,
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family not in _BUILDERS:
            raise FamilyError(f"unknown family {self.family!r}")

    def build(self) -> IncidenceStructure:
        return _BUILDERS[self.family](*self.params)

    def __str__(self) -> str:
        if self.family == "veblen":
            return "veblen"
        short = next(p for p, (name, _) in _PREFIX.items() if name == self.family)
        return f"{short}:{','.join(map(str, self.params))}"


_SPEC_RE = re.compile(r"^(G|GS|DCD|V\*?|K\*?):(\d+(?:,\d+)*)$")


def parse_family_spec(text: str) -> FamilySpec:
    """Parse ``G:k,m``, ``GS:n,k``, ``DCD:n,k``, ``V:m,k``, ``V*:m,k``, ``K:n``, ``K*:n`` or ``veblen``."""
    text = text.strip()
    if text == "veblen":
        return FamilySpec("veblen")
    match = _SPEC_RE.match(text)
    if not match:
        raise FamilyError(f"cannot parse family spec {text!r}")
    family, arity = _PREFIX[match.group(1)]
    params = tuple(int(x) for x in match.group(2).split(","))
    if len(params) != arity:
        raise FamilyError(f"{match.group(1)} takes {arity} parameter(s), got {len(params)}")
    return FamilySpec(family, params)
