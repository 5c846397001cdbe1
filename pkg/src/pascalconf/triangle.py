"""Pascal triangles of configurations.

A triangle is a matrix of structures indexed by ``(rank, size)``: the cell
``(r, s)`` holds a binomial configuration with signature (r, s), and every
cell with ``r, s >= 2`` is glued from its neighbours::

    cell(r, s) = cell(r, s - 1)  glued along inf[r, s]  onto  cell(r - 1, s)

The first row (``r == 1``) and column (``s == 1``) are the boundary.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Mapping

from .core import IncidenceStructure, BinomialSignature, binomial_signature, configuration_type
from .families import (
    dual_veronesian,
    dual_veronesian_hyperplane,
    dual_veronesian_step_map,
    gras_space,
    grassmannian_G,
    grassmannian_hyperplane,
    grassmannian_step_map,
    veronesian,
    veronesian_hyperplane,
    veronesian_step_map,
)
from .glue import RIGHT, GluingError, GluingMap, decompose, glue, glued_hyperplane, validate_gluing
from .hyperplane import deep_lines, is_hyperplane
from .iso import are_isomorphic

MAX_DEPTH = 6
FAMILIES = ("grassmannian", "veronesian", "dual-veronesian")

Cell = tuple[int, int]


class TriangleError(ValueError):
    pass


@dataclass
class ConfigTriangle:
    depth: int
    entries: dict[Cell, IncidenceStructure] = field(default_factory=dict)
    gluings: dict[Cell, GluingMap] = field(default_factory=dict)
    hyperplanes: dict[Cell, frozenset] = field(default_factory=dict)
    provenance: str = "custom"
    # cells where no valid gluing map could be found
    missing: dict[Cell, str] = field(default_factory=dict)

    def cells(self) -> list[Cell]:
        return sorted(self.entries)

    def __getitem__(self, cell: Cell) -> IncidenceStructure:
        return self.entries[cell]

    @property
    def complete(self) -> bool:
        return not self.missing and len(self.entries) == self.depth * self.depth


def is_boundary(cell: Cell) -> bool:
    return cell[0] == 1 or cell[1] == 1


def _check_depth(depth: int):
    if not 1 <= depth <= MAX_DEPTH:
        raise TriangleError(f"depth must be between 1 and {MAX_DEPTH}, got {depth}")


def family_cell(family: str, r: int, s: int) -> IncidenceStructure:
    """The family member with signature (r, s)."""
    if family == "grassmannian":
        return grassmannian_G(r, 1) if s == 1 else gras_space(r + s - 1, s - 1)
    if family == "veronesian":
        return veronesian(s, r)
    if family == "dual-veronesian":
        return dual_veronesian(r, s)
    raise TriangleError(f"unknown family {family!r}")


def family_step_map(family: str, r: int, s: int) -> dict:
    if family == "grassmannian":
        return grassmannian_step_map(r + s - 1, s - 1)
    if family == "veronesian":
        return veronesian_step_map(s, r)
    return dual_veronesian_step_map(r, s)


def family_hyperplane(family: str, r: int, s: int) -> frozenset:
    if family == "grassmannian":
        return grassmannian_hyperplane(r + s - 1, s - 1)[0]
    if family == "veronesian":
        return veronesian_hyperplane(s, r)[0]
    return dual_veronesian_hyperplane(r, s)[0]


def build_family_triangle(family: str, depth: int, verify: bool = True) -> ConfigTriangle:
    """Fill cells ``1..depth`` x ``1..depth`` with a family and its canonical maps."""
    _check_depth(depth)
    if family not in FAMILIES:
        raise TriangleError(f"unknown family {family!r}; choose from {FAMILIES}")
    t = ConfigTriangle(depth, provenance=family)
    for r in range(1, depth + 1):
        for s in range(1, depth + 1):
            t.entries[(r, s)] = family_cell(family, r, s)
    for r in range(2, depth + 1):
        for s in range(2, depth + 1):
            K1, K2 = t.entries[(r, s - 1)], t.entries[(r - 1, s)]
            t.gluings[(r, s)] = validate_gluing(K1, K2, family_step_map(family, r, s))
            t.hyperplanes[(r, s)] = family_hyperplane(family, r, s)
    if verify:
        report = verify_triangle(t)
        if not report.ok:
            raise AssertionError(f"family triangle failed verification: {report.failures()}")
    return t


# -- custom triangles ----------------------------------------------------------

Chooser = Callable[[Cell, IncidenceStructure, IncidenceStructure], "Mapping | None"]


def first_valid(cell, K1, K2):
    """Lines in order onto points in order; every bijection is valid."""
    if K1.num_lines != K2.num_points:
        return None
    return dict(zip(K1.lines, K2.points))


def seeded_random(seed: int) -> Chooser:
    rng = random.Random(seed)

    def choose(cell, K1, K2):
        if K1.num_lines != K2.num_points:
            return None
        pts = list(K2.points)
        rng.shuffle(pts)
        return dict(zip(K1.lines, pts))

    return choose


def explicit(maps: Mapping[Cell, Mapping]) -> Chooser:
    def choose(cell, K1, K2):
        return maps.get(cell)

    return choose


def compact_ids(K: IncidenceStructure) -> IncidenceStructure:
    """Rename points to ``p1, p2, ...`` and lines to ``l1, l2, ...`` keeping order."""
    pm = {p: f"p{i}" for i, p in enumerate(K.points, 1)}
    lm = {ln: f"l{j}" for j, ln in enumerate(K.lines, 1)}
    return K.relabel(pm, lm)


def trivial_cell(r: int, s: int) -> IncidenceStructure:
    """The unique member of B(1, s) (one line) or B(r, 1) (one point)."""
    if r != 1 and s != 1:
        raise TriangleError(f"cell {(r, s)} is not on the trivial boundary")
    return grassmannian_G(r, s)


def build_custom_triangle(
    boundary_row: list[IncidenceStructure],
    boundary_column: list[IncidenceStructure],
    chooser: Chooser | str = "first-valid",
    seed: int | None = None,
    at: int = 1,
    fixed: Mapping[Cell, IncidenceStructure] | None = None,
) -> ConfigTriangle:
    """Fill a triangle from boundary sequences, gluing each new cell from its neighbours.

    With ``at=1`` the lists give cells ``(1, s)`` and ``(r, 1)`` for
    ``1..depth``. With ``at=2`` they give ``(2, s)`` and ``(r, 2)`` for
    ``2..depth`` (e.g. dual complete graphs and complete graphs) and the
    trivial first row and column are filled in. The two lists must agree
    on their shared corner up to isomorphism; the row's copy is used.

    Glued cells get compact identifiers (``p1..``, ``l1..``), which is what
    explicit maps for later cells must refer to. A cell where the chooser
    yields nothing or an invalid map is recorded in ``missing``, as is every
    cell depending on it.

    Cells in ``fixed`` keep the supplied structure instead of the glued one;
    their gluing map is still chosen and recorded, and ``verify_triangle``
    then checks that it reproduces the supplied cell.
    """
    fixed = dict(fixed or {})
    if at not in (1, 2):
        raise TriangleError("boundary sequences start at row/column 1 or 2")
    if len(boundary_row) != len(boundary_column):
        raise TriangleError("boundary row and column must have the same length")
    depth = len(boundary_row) + at - 1
    _check_depth(depth)
    if chooser == "first-valid":
        chooser = first_valid
    elif chooser == "random-seeded":
        chooser = seeded_random(0 if seed is None else seed)
    elif isinstance(chooser, str):
        raise TriangleError(f"unknown gluing strategy {chooser!r}")

    t = ConfigTriangle(depth)
    if at == 2:
        for i in range(1, depth + 1):
            t.entries[(1, i)] = trivial_cell(1, i)
            t.entries[(i, 1)] = trivial_cell(i, 1)
    for s, K in enumerate(boundary_row, at):
        _expect_signature(K, (at, s), "boundary row")
        t.entries[(at, s)] = K
    for r, K in enumerate(boundary_column, at):
        _expect_signature(K, (r, at), "boundary column")
        if r == at:
            if not are_isomorphic(K, boundary_row[0]):
                raise TriangleError(f"boundary row and column disagree on cell {(at, at)}")
            continue
        t.entries[(r, at)] = K

    for total in range(2 * at + 2, 2 * depth + 1):
        for r in range(at + 1, depth + 1):
            s = total - r
            if not at + 1 <= s <= depth:
                continue
            left, up = (r, s - 1), (r - 1, s)
            if left not in t.entries or up not in t.entries:
                t.missing[(r, s)] = "a neighbour is missing"
                continue
            K1, K2 = t.entries[left], t.entries[up]
            raw = chooser((r, s), K1, K2)
            if raw is None:
                t.missing[(r, s)] = "no gluing map available"
                continue
            try:
                inf = validate_gluing(K1, K2, raw)
            except GluingError as exc:
                t.missing[(r, s)] = f"invalid gluing map: {exc}"
                continue
            t.gluings[(r, s)] = inf
            if (r, s) in fixed:
                t.entries[(r, s)] = fixed[(r, s)]
                continue
            glued = glue(K1, K2, inf)
            H = glued_hyperplane(K2)
            pm = {p: f"p{i}" for i, p in enumerate(glued.points, 1)}
            t.entries[(r, s)] = compact_ids(glued)
            t.hyperplanes[(r, s)] = frozenset(pm[p] for p in H)
    return t


def _expect_signature(K, cell, where):
    sig = binomial_signature(configuration_type(K))
    if sig is None or (sig.k, sig.m) != cell:
        raise TriangleError(
            f"{where} entry for cell {cell} has signature {sig}, expected k={cell[0]} m={cell[1]}"
        )


# -- verification --------------------------------------------------------------

@dataclass
class CellReport:
    cell: Cell
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


@dataclass
class TriangleReport:
    cells: dict[Cell, CellReport] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells.values())

    def failures(self) -> dict[Cell, list[str]]:
        return {
            cell: [name for name, passed in rep.checks.items() if not passed]
            for cell, rep in self.cells.items()
            if not rep.ok
        }


def verify_triangle(t: ConfigTriangle) -> TriangleReport:
    """Re-check every cell.

    Each cell must carry the binomial signature of its position. Each glued
    cell must additionally satisfy: its point count is the sum of its
    neighbours' (the numeric Pascal rule), the neighbours glued along the
    recorded map are isomorphic to it, the neighbours' points form a
    hyperplane of that glued structure whose deep lines are the second
    neighbour's lines, and the cell decomposes at its recorded hyperplane
    into parts isomorphic to the neighbours.
    """
    report = TriangleReport()
    for cell in t.cells():
        r, s = cell
        rep = CellReport(cell)
        K = t.entries[cell]
        sig = binomial_signature(configuration_type(K))
        rep.checks["signature"] = sig == BinomialSignature(r, s)
        n = r + s - 1
        rep.checks["point-count"] = K.num_points == comb(n, r)
        if not is_boundary(cell) and cell in t.gluings:
            K1, K2 = t.entries[(r, s - 1)], t.entries[(r - 1, s)]
            inf = t.gluings[cell]
            rep.checks["pascal-rule"] = K.num_points == K1.num_points + K2.num_points
            try:
                glued = glue(K1, K2, inf)
            except GluingError as exc:
                rep.checks["glue-isomorphic"] = False
                rep.notes.append(str(exc))
            else:
                rep.checks["glue-isomorphic"] = are_isomorphic(glued, K, max_size=None)
                H = glued_hyperplane(K2)
                rep.checks["hyperplane-law"] = is_hyperplane(glued, H) and set(
                    deep_lines(glued, H)
                ) == {f"{RIGHT}{ln}" for ln in K2.lines}
            H = t.hyperplanes.get(cell)
            if H is not None:
                try:
                    d = decompose(K, H)
                except ValueError as exc:
                    rep.checks["decomposition"] = False
                    rep.notes.append(str(exc))
                else:
                    rep.checks["decomposition"] = are_isomorphic(
                        d.reduct_part, K1, max_size=None
                    ) and are_isomorphic(d.hyperplane_part, K2, max_size=None)
        report.cells[cell] = rep
    return report
