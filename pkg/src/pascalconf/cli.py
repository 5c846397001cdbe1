"""Command-line front end.

Exit status: 0 on success, 1 when a predicate comes out negative (not a
configuration, not isomorphic, decomposition premises fail), 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from . import fileformat
from .core import (
    IncidenceStructure,
    binomial_signature,
    configuration_type,
    dual,
    is_partial_linear_space,
    point_ranks,
    line_sizes,
)
from .families import FamilyError, parse_family_spec
from .fileformat import FormatError, ManifestEntry
from .glue import (
    DecompositionError,
    GluingError,
    classify_gluings,
    decompose,
    glue,
    validate_gluing,
)
from .hyperplane import SearchTooLarge, enumerate_hyperplanes
from .iso import SizeGuardError, canonical_form, find_isomorphism
from .triangle import (
    FAMILIES,
    TriangleError,
    build_custom_triangle,
    build_family_triangle,
    explicit,
    first_valid,
    is_boundary,
    seeded_random,
    verify_triangle,
)

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> IncidenceStructure:
    try:
        return fileformat.parse(_read_text(path))
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _type_report(K: IncidenceStructure) -> dict:
    t = configuration_type(K)
    sig = binomial_signature(t)
    return {
        "points": K.num_points,
        "lines": K.num_lines,
        "configuration": t is not None,
        "type": None if t is None else list(t.astuple()),
        "binomial": None if sig is None else {"k": sig.k, "m": sig.m},
    }


def _type_line(K: IncidenceStructure) -> str:
    t = configuration_type(K)
    if t is None:
        return "not a configuration"
    sig = binomial_signature(t)
    return f"{t}, " + (f"binomial k={sig.k} m={sig.m}" if sig else "not binomial")


# -- subcommands ------------------------------------------------------------------

def cmd_gen(args) -> int:
    try:
        K = parse_family_spec(args.spec).build()
    except FamilyError as exc:
        raise UsageError(str(exc)) from None
    _emit(fileformat.serialize(K), args.output)
    return OK


def cmd_type(args) -> int:
    K = _load(args.file)
    if args.json:
        _json(_type_report(K))
    else:
        print(_type_line(K))
    return OK if configuration_type(K) is not None else NEGATIVE


def _pls_violation(K: IncidenceStructure):
    for i, a in enumerate(K.lines):
        pa = set(K.points_on(a))
        for b in K.lines[i + 1:]:
            common = sorted(pa.intersection(K.points_on(b)), key=K.point_index)
            if len(common) > 1:
                return common[:2], [a, b]
    return None


def cmd_verify(args) -> int:
    K = _load(args.file)
    pls = is_partial_linear_space(K)
    report = _type_report(K)
    report["partial_linear_space"] = pls
    report["point_ranks"] = {str(r): c for r, c in sorted(Counter(point_ranks(K)).items())}
    report["line_sizes"] = {str(s): c for s, c in sorted(Counter(line_sizes(K)).items())}
    violation = None if pls else _pls_violation(K)
    report["violation"] = None if violation is None else {
        "points": violation[0],
        "lines": violation[1],
    }
    if args.json:
        _json(report)
    else:
        print(f"points: {K.num_points}  lines: {K.num_lines}")
        if pls:
            print("partial linear space: yes")
        else:
            (x, y), (a, b) = violation
            print(f"partial linear space: no ({x} and {y} lie on both {a} and {b})")
        print("point ranks: " + ", ".join(f"{c}x{r}" for r, c in report["point_ranks"].items()))
        print("line sizes: " + ", ".join(f"{c}x{s}" for s, c in report["line_sizes"].items()))
        print("type: " + _type_line(K))
    return OK if report["configuration"] else NEGATIVE


def cmd_dual(args) -> int:
    _emit(fileformat.serialize(dual(_load(args.file))), args.output)
    return OK


def cmd_hyperplanes(args) -> int:
    K = _load(args.file)
    try:
        views = enumerate_hyperplanes(K, max_points=args.max_points)
    except SearchTooLarge as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for idx, h in enumerate(views):
        t = h.configuration_type()
        if args.require_configuration and t is None:
            continue
        rows.append({
            "index": idx,
            "points": h.ordered_points,
            "deep_lines": list(h.deep_lines),
            "type": None if t is None else list(t.astuple()),
        })
    if args.json:
        _json({"count": len(rows), "hyperplanes": rows})
    else:
        print(f"{len(rows)} hyperplanes")
        for row in rows:
            t = row["type"]
            desc = "not a configuration" if t is None else f"({t[0]}_{t[1]} {t[2]}_{t[3]})"
            print(f"[{row['index']}] {' '.join(row['points'])}  :: {desc}")
    return OK


def _hyperplane_arg(K, spec: str, max_points):
    spec = spec.strip()
    if spec.isdigit():
        views = enumerate_hyperplanes(K, max_points=max_points)
        idx = int(spec)
        if idx >= len(views):
            raise UsageError(f"hyperplane index {idx} out of range ({len(views)} hyperplanes)")
        return views[idx].ordered_points
    pts = spec.split()
    for p in pts:
        if not K.has_point(p):
            raise UsageError(f"unknown point {p!r} in --hyperplane")
    return pts


def cmd_decompose(args) -> int:
    K = _load(args.file)
    H = _hyperplane_arg(K, args.hyperplane, args.max_points)
    try:
        d = decompose(K, H)
    except DecompositionError as exc:
        if args.json:
            _json({"ok": False, "reason": exc.reason, "message": str(exc)})
        else:
            print(f"decomposition failed ({exc.reason}): {exc}")
        return NEGATIVE
    texts = {
        "reduct.cfg": fileformat.serialize(d.reduct_part),
        "hyperplane.cfg": fileformat.serialize(d.hyperplane_part),
        "map": fileformat.serialize_gluing(d.infinity),
    }
    if args.output:
        for suffix, text in texts.items():
            Path(f"{args.output}.{suffix}").write_text(text, encoding="utf-8")
    if args.json:
        _json({
            "ok": True,
            "reduct": _type_report(d.reduct_part),
            "hyperplane": _type_report(d.hyperplane_part),
            "bijective": d.infinity.bijective,
            "files": [f"{args.output}.{s}" for s in texts] if args.output else [],
        })
    elif args.output:
        print(f"reduct: {_type_line(d.reduct_part)}")
        print(f"hyperplane: {_type_line(d.hyperplane_part)}")
    else:
        sys.stdout.write("\n---\n".join(texts.values()))
    return OK


def cmd_compose(args) -> int:
    K1, K2 = _load(args.file1), _load(args.file2)
    try:
        mapping = fileformat.parse_gluing(_read_text(args.map))
        K = glue(K1, K2, validate_gluing(K1, K2, mapping))
    except (FormatError, GluingError) as exc:
        raise UsageError(str(exc)) from None
    _emit(fileformat.serialize(K), args.output)
    return OK


def cmd_iso(args) -> int:
    K1, K2 = _load(args.file1), _load(args.file2)
    try:
        iso = find_isomorphism(K1, K2, max_size=None)
    except SizeGuardError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        out = {"isomorphic": iso is not None}
        if args.witness and iso is not None:
            out["witness"] = {"points": iso.point_map, "lines": iso.line_map}
        _json(out)
    else:
        print("isomorphic" if iso else "not isomorphic")
        if args.witness and iso is not None:
            for p in K1.points:
                print(f"{p} -> {iso.point_map[p]}")
            for ln in K1.lines:
                print(f"{ln} -> {iso.line_map[ln]}")
    return OK if iso else NEGATIVE


def cmd_canon(args) -> int:
    K = _load(args.file)
    try:
        cf = canonical_form(K, max_size=args.max_size)
    except SizeGuardError as exc:
        raise UsageError(str(exc)) from None
    print(cf.hex)
    return OK


def cmd_classify_gluings(args) -> int:
    K1, K2 = _load(args.file1), _load(args.file2)
    try:
        classes = classify_gluings(K1, K2, cap=args.cap)
    except (GluingError, SizeGuardError) as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _json({
            "classes": len(classes),
            "total": sum(c.size for c in classes),
            "sizes": [c.size for c in classes],
            "representatives": [dict(c.representative.items()) for c in classes],
            "certificates": [c.certificate.hex() for c in classes],
        })
    else:
        print(f"{len(classes)} classes")
        for i, c in enumerate(classes):
            pairs = ", ".join(f"{a}->{b}" for a, b in c.representative.items())
            print(f"class {i}: {c.size} maps; representative {pairs}")
    return OK if classes else NEGATIVE


def _write_triangle(t, outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    entries = []
    for (r, s) in t.cells():
        sname = f"cell_{r}_{s}.cfg"
        fileformat.save(t.entries[(r, s)], outdir / sname)
        gname = None
        if (r, s) in t.gluings:
            gname = f"cell_{r}_{s}.map"
            (outdir / gname).write_text(fileformat.serialize_gluing(t.gluings[(r, s)]), encoding="utf-8")
        entries.append(ManifestEntry(r, s, Path(sname), None if gname is None else Path(gname)))
    (outdir / "manifest.txt").write_text(fileformat.serialize_manifest(entries), encoding="utf-8")


def _custom_from_manifest(path: str, strategy: str, seed: int | None):
    entries = fileformat.parse_manifest(_read_text(path), Path(path).parent)
    structures, maps = {}, {}
    for e in entries:
        if e.structure is not None:
            structures[(e.rank, e.size)] = _load(str(e.structure))
        if e.gluing is not None:
            maps[(e.rank, e.size)] = fileformat.parse_gluing(_read_text(str(e.gluing)))
    at = 1 if any(r == 1 or s == 1 for r, s in structures) else 2
    rows = sorted((s, K) for (r, s), K in structures.items() if r == at and s >= at)
    cols = sorted((r, K) for (r, s), K in structures.items() if s == at and r >= at)
    if not rows or [s for s, _ in rows] != list(range(at, at + len(rows))):
        raise UsageError(f"manifest must give every boundary cell ({at}, s)")
    if [r for r, _ in cols] != list(range(at, at + len(cols))):
        raise UsageError(f"manifest must give every boundary cell (r, {at})")
    fallback = seeded_random(seed or 0) if strategy == "random-seeded" else first_valid
    given = explicit(maps)

    def chooser(cell, K1, K2):
        m = given(cell, K1, K2)
        return m if m is not None else fallback(cell, K1, K2)

    fixed = {c: K for c, K in structures.items() if c[0] > at and c[1] > at}
    return build_custom_triangle(
        [K for _, K in rows], [K for _, K in cols], chooser, at=at, fixed=fixed
    )


def cmd_triangle(args) -> int:
    try:
        if args.custom:
            t = _custom_from_manifest(args.custom, args.strategy, args.seed)
        else:
            t = build_family_triangle(args.family, args.depth, verify=False)
    except TriangleError as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        _write_triangle(t, Path(args.output))
    report = verify_triangle(t) if args.verify else None
    cells = []
    for cell in t.cells():
        K = t.entries[cell]
        row = {"cell": list(cell), **_type_report(K)}
        if report is not None:
            rep = report.cells[cell]
            row["checks"] = rep.checks
            row["ok"] = rep.ok
        cells.append(row)
    missing = {f"{r},{s}": why for (r, s), why in sorted(t.missing.items())}
    if args.json:
        _json({
            "provenance": t.provenance,
            "depth": t.depth,
            "cells": cells,
            "missing": missing,
            "verified": None if report is None else report.ok,
        })
    else:
        for row in cells:
            r, s = row["cell"]
            tag = "boundary" if is_boundary((r, s)) else "glued"
            status = ""
            if report is not None:
                status = "  ok" if row["ok"] else "  FAILED " + ",".join(
                    k for k, v in row["checks"].items() if not v
                )
            print(f"({r},{s}) {tag:8s} {_type_line(t.entries[(r, s)])}{status}")
        for cell, why in missing.items():
            print(f"({cell}) missing: {why}")
        if report is not None:
            print("verification: " + ("passed" if report.ok else "FAILED"))
    if report is not None and not report.ok:
        return NEGATIVE
    return NEGATIVE if t.missing else OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pascalconf",
        description="Work with binomial point-line configurations from the shell.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="emit a family structure, e.g. GS:5,2 or V*:3,3")
    s.add_argument("spec")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("type", help="print the configuration type and binomial signature")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_type)

    s = sub.add_parser("verify", help="partial-linear-space and configuration diagnostics")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("dual", help="swap points and lines")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("hyperplanes", help="enumerate all hyperplanes")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--require-configuration", action="store_true",
                   help="keep only hyperplanes whose restriction is a configuration")
    s.add_argument("--max-points", type=int, default=24)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_hyperplanes)

    s = sub.add_parser("decompose", help="split at a hyperplane into two parts and a gluing map")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--hyperplane", required=True,
                   help="whitespace-separated point ids, or an index into `hyperplanes` output")
    s.add_argument("--max-points", type=int, default=24)
    s.add_argument("-o", "--output", help="prefix for .reduct.cfg, .hyperplane.cfg and .map")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("compose", help="glue file1 onto file2 along a gluing map")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--map", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("iso", help="test isomorphism (exit 0 if isomorphic)")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--witness", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("canon", help="print the canonical certificate in hex")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--max-size", type=int, default=64)
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("classify-gluings", help="isomorphism classes of all gluings")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--cap", type=int, default=9)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify_gluings)

    s = sub.add_parser("triangle", help="build a Pascal triangle of configurations")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--family", choices=FAMILIES)
    g.add_argument("--custom", metavar="MANIFEST")
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--strategy", choices=("first-valid", "random-seeded"), default="first-valid")
    s.add_argument("--seed", type=int)
    s.add_argument("--verify", action="store_true")
    s.add_argument("-o", "--output", metavar="DIR")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_triangle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
