"""Canonical forms and isomorphism tests for small incidence structures.

Everything works on the Levi graph (points and lines as the two colour
classes of a bipartite graph). Points are never exchanged with lines, so
self-duality has to be asked explicitly as ``are_isomorphic(K, dual(K))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import IncidenceStructure

CANONICAL_MAX_SIZE = 64
SEARCH_MAX_SIZE = 512


class SizeGuardError(ValueError):
    pass


def _levi(K: IncidenceStructure, offset: int = 0) -> list[list[int]]:
    nu = K.num_points
    adj: list[list[int]] = [[] for _ in range(nu + K.num_lines)]
    for j, ps in enumerate(K.line_point_indices):
        for i in ps:
            adj[i].append(nu + j + offset)
            adj[nu + j].append(i + offset)
    return adj


def _rank(keys: list) -> list[int]:
    order = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def refine(adj: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    """Colour refinement to the coarsest equitable partition below ``colors``.

    Colours are ranks of sorted signatures, so the result does not depend
    on vertex numbering.
    """
    ncolors = len(set(colors))
    while True:
        keys = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        new = _rank(keys)
        count = max(new, default=-1) + 1
        if count == ncolors:
            return new
        colors, ncolors = new, count


def _individualize(colors: list[int], v: int) -> list[int]:
    cv = colors[v]
    return _rank([(c, 0 if u == v else 1) if c == cv else (c, 0) for u, c in enumerate(colors)])


def _cells(colors: list[int]) -> dict[int, list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return cells


def _target_cell(colors: list[int]) -> list[int] | None:
    best = None
    for c, members in sorted(_cells(colors).items()):
        if len(members) > 1 and (best is None or len(members) < len(best)):
            best = members
    return best


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


@dataclass(frozen=True)
class CanonicalForm:
    """Certificate plus the relabelling that produced it.

    ``relabeling`` sends point ids to ``0..nu-1`` and line ids to
    ``0..beta-1`` (separately).
    """

    certificate: bytes
    relabeling: dict

    @property
    def hex(self) -> str:
        return self.certificate.hex()

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.certificate == other.certificate

    def __hash__(self):
        return hash(self.certificate)


def _encode(nu: int, beta: int, rows: tuple[int, ...]) -> bytes:
    width = (nu + 7) // 8
    out = bytearray(nu.to_bytes(4, "big") + beta.to_bytes(4, "big"))
    for r in rows:
        out += r.to_bytes(width, "big") if width else b""
    return bytes(out)


def canonical_form(K: IncidenceStructure, max_size: int | None = CANONICAL_MAX_SIZE) -> CanonicalForm:
    """Lexicographically least incidence matrix over the refinement search tree.

    Rows are lines, columns points, both in canonical order; the first point
    is the most significant bit of each row.
    """
    nu, beta = K.num_points, K.num_lines
    if max_size is not None and nu + beta > max_size:
        raise SizeGuardError(f"{nu + beta} elements exceeds the canonical-form cap of {max_size}")
    adj = _levi(K)
    n = nu + beta

    best: list = [None, None]  # certificate rows, vertex order
    autos: list[list[int]] = []

    def leaf_cert(colors):
        order = sorted(range(n), key=colors.__getitem__)
        pos = [0] * n
        for r, v in enumerate(order):
            pos[v] = r
        rows = []
        for v in order[nu:]:
            row = 0
            for u in adj[v]:
                row |= 1 << (nu - 1 - pos[u])
            rows.append(row)
        return tuple(rows), order

    def search(colors, path):
        colors = refine(adj, colors)
        cell = _target_cell(colors)
        if cell is None:
            rows, order = leaf_cert(colors)
            if best[0] is None or rows < best[0]:
                best[0], best[1] = rows, order
            elif rows == best[0]:
                perm = [0] * n
                for a, b in zip(best[1], order):
                    perm[a] = b
                autos.append(perm)
            return
        done: list[int] = []
        for v in cell:
            if done:
                uf = _UnionFind(n)
                for g in autos:
                    if all(g[p] == p for p in path):
                        for a in cell:
                            uf.union(a, g[a])
                rv = uf.find(v)
                if any(uf.find(d) == rv for d in done):
                    continue
            done.append(v)
            search(_individualize(colors, v), path + [v])

    search([0] * nu + [1] * beta, [])
    rows, order = best
    if order is None:  # empty structure
        order, rows = [], ()
    relabel = {}
    for r, v in enumerate(order):
        if v < nu:
            relabel[K.points[v]] = r
        else:
            relabel[K.lines[v - nu]] = r - nu
    return CanonicalForm(_encode(nu, beta, rows), relabel)


@dataclass(frozen=True)
class Isomorphism:
    point_map: dict
    line_map: dict


def verify_isomorphism(K1: IncidenceStructure, K2: IncidenceStructure, iso: Isomorphism) -> bool:
    """Check that ``iso`` is a bijection pair preserving incidence both ways."""
    pm, lm = iso.point_map, iso.line_map
    if set(pm) != set(K1.points) or set(pm.values()) != set(K2.points):
        return False
    if set(lm) != set(K1.lines) or set(lm.values()) != set(K2.lines):
        return False
    if len(K1.points) != len(K2.points) or len(K1.lines) != len(K2.lines):
        return False
    image = frozenset((pm[p], lm[ln]) for p, ln in K1.incidence)
    return image == K2.incidence


def find_isomorphism(
    K1: IncidenceStructure, K2: IncidenceStructure, max_size: int | None = SEARCH_MAX_SIZE
) -> Isomorphism | None:
    """Search for an isomorphism by refining both Levi graphs together."""
    n1 = K1.num_points + K1.num_lines
    if K1.num_points != K2.num_points or K1.num_lines != K2.num_lines:
        return None
    if max_size is not None and n1 > max_size:
        raise SizeGuardError(f"{n1} elements exceeds the isomorphism-search cap of {max_size}")
    if sorted(map(len, K1.line_point_indices)) != sorted(map(len, K2.line_point_indices)):
        return None
    if sorted(map(len, K1.point_line_indices)) != sorted(map(len, K2.point_line_indices)):
        return None

    adj = _levi(K1) + _levi(K2, offset=n1)
    nu = K1.num_points
    init = [0] * nu + [1] * K1.num_lines
    init = init + init

    def balanced(colors):
        left: dict[int, int] = {}
        for c in colors[:n1]:
            left[c] = left.get(c, 0) + 1
        right: dict[int, int] = {}
        for c in colors[n1:]:
            right[c] = right.get(c, 0) + 1
        return left == right

    def extract(colors):
        where = {}
        for v in range(n1):
            where[colors[v]] = v
        mapping = [0] * n1
        for w in range(n1, 2 * n1):
            mapping[where[colors[w]]] = w - n1
        pm = {K1.points[i]: K2.points[mapping[i]] for i in range(nu)}
        lm = {K1.lines[j]: K2.lines[mapping[nu + j] - nu] for j in range(K1.num_lines)}
        return Isomorphism(pm, lm)

    def search(colors):
        colors = refine(adj, colors)
        if not balanced(colors):
            return None
        cells = _cells(colors)
        target = None
        for c, members in sorted(cells.items()):
            if len(members) > 2 and (target is None or len(members) < len(target)):
                target = members
        if target is None:
            iso = extract(colors)
            return iso if verify_isomorphism(K1, K2, iso) else None
        v = target[0]
        for w in target:
            if w < n1:
                continue
            cv = colors[v]
            keyed = [
                (c, 0 if u in (v, w) else 1) if c == cv else (c, 0)
                for u, c in enumerate(colors)
            ]
            found = search(_rank(keyed))
            if found is not None:
                return found
        return None

    return search(init)


def are_isomorphic(
    K1: IncidenceStructure, K2: IncidenceStructure, max_size: int | None = SEARCH_MAX_SIZE
) -> bool:
    return find_isomorphism(K1, K2, max_size) is not None


def classify(
    structures: Sequence[IncidenceStructure], max_size: int | None = CANONICAL_MAX_SIZE
) -> list[list[int]]:
    """Partition indices of ``structures`` into isomorphism classes.

    Classes are ordered by certificate; members keep input order.
    """
    buckets: dict[bytes, list[int]] = {}
    for idx, K in enumerate(structures):
        buckets.setdefault(canonical_form(K, max_size).certificate, []).append(idx)
    return [buckets[c] for c in sorted(buckets)]
