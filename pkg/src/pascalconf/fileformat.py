"""Plain-text file formats read and written by the command line.

Structure file::

    config v1
    # comments run to end of line
    points: a b c
    line ab: a b
    line bc: b c

Gluing file: one ``<line-id> -> <point-id>`` per line, sorted by line id.

Triangle manifest: one ``<rank> <size> <structure-file> <gluing-file>`` per
cell, ``-`` marking an absent file; paths are relative to the manifest.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .core import IncidenceError, IncidenceStructure

HEADER = "config v1"
_ID = re.compile(r"^[^\s:#]+$")


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0]


def _tokens(text: str, lineno: int, col0: int):
    for m in re.finditer(r"\S+", text):
        yield m.group(), lineno, col0 + m.start() + 1


def _check_id(tok, lineno, col):
    if not _ID.match(tok):
        raise FormatError(f"invalid identifier {tok!r}", lineno, col)


def parse(text: str) -> IncidenceStructure:
    """Parse a structure file; errors carry 1-based line and column."""
    seen_header = False
    points: list[str] = []
    point_pos: dict[str, tuple[int, int]] = {}
    lines: list[tuple[str, list[str]]] = []
    line_pos: dict[str, tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        stripped = body.strip()
        if not seen_header:
            if stripped.split() != HEADER.split():
                raise FormatError(f"expected {HEADER!r}", lineno, indent + 1)
            seen_header = True
            continue
        if stripped.startswith("points:"):
            if lines:
                raise FormatError("point declarations must precede lines", lineno, indent + 1)
            start = indent + len("points:")
            for tok, ln, col in _tokens(body[start:], lineno, start):
                _check_id(tok, ln, col)
                if tok in point_pos:
                    raise FormatError(f"duplicate point {tok!r}", ln, col)
                point_pos[tok] = (ln, col)
                points.append(tok)
            continue
        m = re.match(r"line\s+([^\s:]+)\s*:", stripped)
        if m:
            lid = m.group(1)
            col = indent + m.start(1) + 1
            _check_id(lid, lineno, col)
            if lid in line_pos:
                raise FormatError(f"duplicate line {lid!r}", lineno, col)
            if lid in point_pos:
                raise FormatError(f"line id {lid!r} is already a point", lineno, col)
            line_pos[lid] = (lineno, col)
            start = indent + m.end()
            members = []
            for tok, ln, c in _tokens(body[start:], lineno, start):
                if tok not in point_pos:
                    raise FormatError(f"line {lid!r} names undeclared point {tok!r}", ln, c)
                if tok in members:
                    raise FormatError(f"line {lid!r} lists point {tok!r} twice", ln, c)
                members.append(tok)
            lines.append((lid, members))
            continue
        raise FormatError(f"unrecognised statement {stripped.split()[0]!r}", lineno, indent + 1)
    if not seen_header:
        raise FormatError(f"missing {HEADER!r} header", 1, 1)
    try:
        return IncidenceStructure(
            points, [lid for lid, _ in lines], [(p, lid) for lid, ms in lines for p in ms]
        )
    except IncidenceError as exc:
        raise FormatError(str(exc)) from None


def serialize(K: IncidenceStructure) -> str:
    """Canonical text: header, one ``points:`` line, lines in order."""
    for x in list(K.points) + list(K.lines):
        if not isinstance(x, str) or not _ID.match(x):
            raise FormatError(f"identifier {x!r} cannot be written to a structure file")
    out = [HEADER, "points: " + " ".join(K.points) if K.points else "points:"]
    for ln in K.lines:
        members = K.points_on(ln)
        out.append(f"line {ln}:" + ("" if not members else " " + " ".join(members)))
    return "\n".join(out) + "\n"


def load(path) -> IncidenceStructure:
    return parse(Path(path).read_text(encoding="utf-8"))


def save(K: IncidenceStructure, path) -> None:
    Path(path).write_text(serialize(K), encoding="utf-8")


# -- gluing maps ---------------------------------------------------------------

def parse_gluing(text: str) -> dict[str, str]:
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw).strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 3 or parts[1] != "->":
            raise FormatError("expected '<line-id> -> <point-id>'", lineno, 1)
        if parts[0] in mapping:
            raise FormatError(f"line {parts[0]!r} mapped twice", lineno, 1)
        mapping[parts[0]] = parts[2]
    return mapping


def serialize_gluing(mapping: Mapping) -> str:
    items = mapping.items() if not hasattr(mapping, "mapping") else mapping.mapping.items()
    return "".join(f"{ln} -> {p}\n" for ln, p in sorted(items))


# -- triangle manifests ------------------------------------------------------------

@dataclass(frozen=True)
class ManifestEntry:
    rank: int
    size: int
    structure: Path | None
    gluing: Path | None


def parse_manifest(text: str, base: Path | str = ".") -> list[ManifestEntry]:
    base = Path(base)
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw).strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 4:
            raise FormatError("expected '<rank> <size> <structure-file> <gluing-file>'", lineno, 1)
        try:
            r, s = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("cell indices must be integers", lineno, 1) from None
        sf = None if parts[2] == "-" else base / parts[2]
        gf = None if parts[3] == "-" else base / parts[3]
        entries.append(ManifestEntry(r, s, sf, gf))
    return entries


def serialize_manifest(entries: list[ManifestEntry]) -> str:
    def name(p):
        return "-" if p is None else str(p)

    return "".join(f"{e.rank} {e.size} {name(e.structure)} {name(e.gluing)}\n" for e in entries)
