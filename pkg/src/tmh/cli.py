"""Command-line front end: parse spec documents, run validations and
invariant computations, compose fiber sums, and emit reports.

Spec documents are JSON.  All numbers are exact: integers are written as
JSON ints and rationals as strings "p/q"; float literals are rejected so
no precision can silently leak in.  Reports are emitted as text or as
canonical JSON (sorted keys), and identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import dim4, genus, mac
from .charpair import CharacteristicPair, validate
from .errors import GenericityError, GeometryError, ScopeError, SpecParseError
from .exactlin import det_exact
from .polytope import (
    HalfSpace,
    SimplePolytope,
    build_polytope,
    build_with_holes,
    place_holes,
    polygon_from_vertices,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_SCOPE = 3


# ---------------------------------------------------------------------------
# document parsing


def _reject_float(text):
    raise SpecParseError(
        f"float literal {text!r} is not allowed; write rationals as \"p/q\"")


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SpecParseError(f"{where}: expected a number, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecParseError(f"{where}: bad rational {value!r}: {exc}") from exc
    raise SpecParseError(f"{where}: expected an integer or \"p/q\" string")


def _parse_int_vector(value, length: int, where: str) -> tuple[int, ...]:
    if not isinstance(value, list) or len(value) != length:
        raise SpecParseError(f"{where}: expected a list of {length} integers")
    out = []
    for i, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, int):
            raise SpecParseError(f"{where}[{i}]: expected an integer")
        out.append(x)
    return tuple(out)


def _parse_component(obj, dim: int, where: str, default_prefix: str):
    """Returns (SimplePolytope, facet labels in facet order)."""
    if not isinstance(obj, dict):
        raise SpecParseError(f"{where}: expected an object")
    if "halfspaces" in obj:
        halfspaces = obj["halfspaces"]
        if not isinstance(halfspaces, list) or not halfspaces:
            raise SpecParseError(f"{where}.halfspaces: expected a nonempty list")
        labels, hs = [], []
        for i, entry in enumerate(halfspaces):
            loc = f"{where}.halfspaces[{i}]"
            if not isinstance(entry, dict):
                raise SpecParseError(f"{loc}: expected an object")
            label = entry.get("label")
            if not isinstance(label, str) or not label:
                raise SpecParseError(f"{loc}.label: expected a nonempty string")
            normal = _parse_int_vector(entry.get("normal"), dim, f"{loc}.normal")
            offset = _parse_rational(entry.get("offset"), f"{loc}.offset")
            labels.append(label)
            hs.append(HalfSpace(normal, offset))
        try:
            poly = build_polytope(dim, hs)
        except GeometryError as exc:
            raise SpecParseError(f"{where}: {exc}") from exc
        return poly, labels
    if "vertices" in obj:
        if dim != 2:
            raise SpecParseError(f"{where}: vertex cycles are only supported "
                                 "in dimension 2")
        verts = obj["vertices"]
        if not isinstance(verts, list) or len(verts) < 3:
            raise SpecParseError(f"{where}.vertices: expected at least 3 points")
        points = []
        for i, p in enumerate(verts):
            if not isinstance(p, list) or len(p) != 2:
                raise SpecParseError(f"{where}.vertices[{i}]: expected a pair")
            points.append(tuple(
                _parse_rational(c, f"{where}.vertices[{i}][{j}]")
                for j, c in enumerate(p)))
        labels = obj.get("labels")
        if labels is None:
            labels = [f"{default_prefix}e{i + 1}" for i in range(len(points))]
        if (not isinstance(labels, list) or len(labels) != len(points)
                or not all(isinstance(x, str) and x for x in labels)):
            raise SpecParseError(
                f"{where}.labels: expected one label per vertex-cycle edge")
        try:
            poly = polygon_from_vertices(points)
        except GeometryError as exc:
            raise SpecParseError(f"{where}: {exc}") from exc
        return poly, list(labels)
    raise SpecParseError(f"{where}: needs either \"halfspaces\" or \"vertices\"")


@dataclass
class SpecDocument:
    name: str
    description: str
    dimension: int
    body: object                    # PolytopeWithHoles
    facet_labels: tuple[str, ...]   # global facet order
    lam_by_label: dict[str, tuple[int, ...]]
    nu: tuple[int, ...] | None

    def to_pair(self) -> CharacteristicPair:
        lam = {i: self.lam_by_label[label]
               for i, label in enumerate(self.facet_labels)}
        return CharacteristicPair(self.body, lam)

    def label_of_facet(self, gid: int) -> str:
        return self.facet_labels[gid]


def parse_spec_dict(doc, source: str = "<spec>") -> SpecDocument:
    if not isinstance(doc, dict):
        raise SpecParseError(f"{source}: top level must be an object")
    dim = doc.get("dimension")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 2:
        raise SpecParseError("dimension: expected an integer >= 2")
    meta = doc.get("metadata", {})
    if not isinstance(meta, dict):
        raise SpecParseError("metadata: expected an object")
    name = meta.get("name", source)
    description = meta.get("description", "")

    outer, labels = _parse_component(doc.get("outer"), dim, "outer", "")
    holes = []
    for k, hole_obj in enumerate(doc.get("holes", []) or []):
        hole, hole_labels = _parse_component(
            hole_obj, dim, f"holes[{k}]", f"h{k + 1}.")
        holes.append(hole)
        labels.extend(hole_labels)
    if len(set(labels)) != len(labels):
        dupes = sorted({x for x in labels if labels.count(x) > 1})
        raise SpecParseError(f"duplicate facet labels: {dupes}")
    try:
        body = build_with_holes(outer, holes)
    except GeometryError as exc:
        raise SpecParseError(f"holes: {exc}") from exc

    char = doc.get("characteristic")
    if not isinstance(char, dict):
        raise SpecParseError("characteristic: expected an object")
    if set(char) != set(labels):
        missing = sorted(set(labels) - set(char))
        extra = sorted(set(char) - set(labels))
        raise SpecParseError(
            f"characteristic: labels do not match facets "
            f"(missing {missing}, unknown {extra})")
    lam_by_label = {
        label: _parse_int_vector(vec, dim, f"characteristic[{label!r}]")
        for label, vec in char.items()}

    nu = doc.get("nu")
    if nu is not None:
        nu = _parse_int_vector(nu, dim, "nu")
    return SpecDocument(name, description, dim, body, tuple(labels), lam_by_label, nu)


def parse_spec(path: str) -> SpecDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecParseError(f"{path}: {exc}") from exc
    try:
        doc = json.loads(text, parse_float=_reject_float,
                         parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise SpecParseError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    return parse_spec_dict(doc, source=path)


# ---------------------------------------------------------------------------
# report assembly


def _fraction_str(x: Fraction) -> str:
    return str(Fraction(x))


def _generator_label(doc: SpecDocument, gen) -> str:
    kind, payload = gen
    if kind == "facet":
        return doc.label_of_facet(payload)
    return f"S{payload}"


def _intersection_section(doc: SpecDocument, pair) -> dict | None:
    if pair.body.hole_count > 1:
        return None
    data = dim4.intersection_form(pair)
    return {
        "generators": [_generator_label(doc, g) for g in data.generators],
        "matrix": [list(row) for row in data.matrix.entries],
        "one_three_pairing": data.one_three_pairing,
        "determinant": det_exact(data.matrix),
        "signature": dim4.signature_of_matrix(data.matrix),
    }


def build_report(doc: SpecDocument, nu=None) -> dict:
    pair = doc.to_pair()
    result = validate(pair)
    report = {
        "name": doc.name,
        "dimension": doc.dimension,
        "facet_count": pair.body.facet_count,
        "hole_count": pair.body.hole_count,
        "vertex_count": pair.body.vertex_count,
        "validation": {
            "ok": result.ok,
            "kind": result.kind,
            "facets": [doc.label_of_facet(f) for f in result.facets],
            "message": result.message,
        },
    }
    if not result.ok:
        return report

    from .charpair import all_signs, is_positive_omniorientation

    signs = all_signs(pair)
    report["vertex_signs"] = [
        {
            "vertex": gv.gid,
            "component": gv.component,
            "point": [_fraction_str(c) for c in gv.point],
            "sign": signs[gv.gid],
        }
        for gv in pair.body.global_vertices()
    ]
    report["positive_omniorientation"] = is_positive_omniorientation(pair)

    poly = genus.chi_y(pair, nu if nu is not None else doc.nu)
    report["chi_y"] = {
        "nu": list(poly.nu),
        "coefficients": list(poly.coefficients),
        "top_chern": poly.top_chern,
        "signature": poly.signature,
        "todd": poly.todd,
    }

    if doc.dimension == 2:
        profile = dim4.homology_groups(pair)
        c1sq, c2 = dim4.chern_numbers_dim4(pair)
        report["dim4"] = {
            "betti": list(profile.betti),
            "cell_counts": list(profile.cell_counts),
            "euler_characteristic": profile.m,
            "c1_squared": c1sq,
            "c2": c2,
            "intersection": _intersection_section(doc, pair),
        }

    flags = dim4.structure_flags(pair)
    report["structure_flags"] = {
        "invariant_almost_complex": flags.invariant_almost_complex,
        "invariant_symplectic": (
            "excluded" if flags.invariant_symplectic_excluded
            else "unobstructed by this tool"),
        "kahler": ("excluded" if flags.kahler_excluded
                   else "unobstructed by this tool"),
        "complex_excluded_by_bmy": flags.complex_excluded_by_bmy,
    }

    kdata = mac.kernel_data(pair)
    report["moment_angle"] = {
        "torus_rank": kdata.torus_rank,
        "kernel_basis_columns": [list(kdata.kernel_basis.col(j))
                                 for j in range(kdata.kernel_basis.cols)],
        "freeness": mac.freeness_check(pair),
    }
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _text_lines(value, key="", indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        if key:
            yield f"{pad}{key}:"
            indent += 1
            pad = "  " * indent
        for k in value:
            yield from _text_lines(value[k], k, indent)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        yield f"{pad}{key}:"
        for item in value:
            if isinstance(item, dict):
                flat = "  ".join(f"{k}={_scalar(v)}" for k, v in item.items())
                yield f"{pad}  - {flat}"
            else:
                yield f"{pad}  - {_scalar(item)}"
    else:
        yield f"{pad}{key}: {_scalar(value)}"


def _scalar(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(str(x) for x in value) + "]"
    if value is None:
        return "none"
    return str(value)


def render_text(report: dict) -> str:
    return "\n".join(_text_lines(report)).lstrip() + "\n"


# ---------------------------------------------------------------------------
# fiber sum composition


def _halfspace_json(poly: SimplePolytope, labels):
    return [{"label": label, "normal": list(h.normal),
             "offset": _fraction_str(h.offset)}
            for label, h in zip(labels, poly.halfspaces)]


def compose_fibersum(base: SpecDocument, pieces, scale=None) -> dict:
    """Place each quasitoric piece as a hole of the base and emit the
    composed spec document as a JSON-ready dict."""
    for i, piece in enumerate(pieces):
        if piece.body.hole_count != 0:
            raise ScopeError(f"piece {i + 1} has holes; fiber-sum pieces "
                             "must be quasitoric")
        if piece.dimension != base.dimension:
            raise ScopeError(f"piece {i + 1} dimension mismatch")
    placed = place_holes(base.body.outer,
                         [p.body.outer for p in pieces], scale=scale)
    new_holes = placed.holes

    outer_count = base.body.outer.facet_count
    labels = list(base.facet_labels)
    holes_json = []
    # keep the base's own holes first, then the new pieces
    for k, hole in enumerate(base.body.holes):
        lo = base.body.facet_offsets[k + 1]
        hole_labels = labels[lo:lo + hole.facet_count]
        holes_json.append({"halfspaces": _halfspace_json(hole, hole_labels)})
    char = {label: list(base.lam_by_label[label]) for label in base.facet_labels}
    for i, (piece, hole) in enumerate(zip(pieces, new_holes), start=1):
        prefix = f"p{i}."
        hole_labels = [prefix + lbl for lbl in piece.facet_labels]
        if set(hole_labels) & set(char):
            raise SpecParseError(f"piece {i} label prefix collides")
        holes_json.append({"halfspaces": _halfspace_json(hole, hole_labels)})
        for lbl, new_lbl in zip(piece.facet_labels, hole_labels):
            char[new_lbl] = list(piece.lam_by_label[lbl])

    name = base.name + "".join(f"+{p.name}" for p in pieces)
    full_body = build_with_holes(base.body.outer, list(base.body.holes) + list(new_holes))
    assert full_body.facet_count == len(char)
    return {
        "dimension": base.dimension,
        "metadata": {"name": name, "description": "fiber sum composition"},
        "outer": {"halfspaces": _halfspace_json(base.body.outer,
                                                labels[:outer_count])},
        "holes": holes_json,
        "characteristic": char,
    }


# ---------------------------------------------------------------------------
# command dispatch


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SpecParseError(f"argument error: {message}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="tmh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for cmd in ("validate", "invariants", "homology", "ring", "mac", "report"):
        p = sub.add_parser(cmd)
        p.add_argument("spec")
        if cmd == "invariants":
            p.add_argument("--nu", help="comma-separated integer direction")
        if cmd == "mac":
            p.add_argument("--point", help="comma-separated rational point")
        if cmd == "report":
            p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("fibersum")
    p.add_argument("base")
    p.add_argument("pieces", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--scale", help="explicit scale factor p/q for the pieces")
    return parser


def _validated_pair(doc: SpecDocument, out):
    pair = doc.to_pair()
    result = validate(pair)
    if not result.ok:
        facets = [doc.label_of_facet(f) for f in result.facets]
        print(f"validation failed ({result.kind}) at {facets}: {result.message}",
              file=out)
        return None
    return pair


def run(argv, out=None) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    out = out or sys.stdout
    try:
        args = _build_parser().parse_args(argv)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        if args.command == "fibersum":
            base = parse_spec(args.base)
            pieces = [parse_spec(p) for p in args.pieces]
            scale = Fraction(args.scale) if args.scale else None
            composed = compose_fibersum(base, pieces, scale=scale)
            payload = json.dumps(composed, sort_keys=True, indent=2) + "\n"
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(payload)
            print(f"wrote {args.output}", file=out)
            return EXIT_OK

        doc = parse_spec(args.spec)

        if args.command == "validate":
            pair = doc.to_pair()
            result = validate(pair)
            if result.ok:
                print(f"{doc.name}: valid characteristic pair "
                      f"(m={pair.body.facet_count}, s={pair.body.hole_count})",
                      file=out)
                return EXIT_OK
            facets = [doc.label_of_facet(f) for f in result.facets]
            print(f"{doc.name}: INVALID ({result.kind}) at {facets}: "
                  f"{result.message}", file=out)
            return EXIT_INVALID

        if args.command == "invariants":
            pair = _validated_pair(doc, out)
            if pair is None:
                return EXIT_INVALID
            nu = None
            if args.nu:
                nu = tuple(int(x) for x in args.nu.split(","))
            poly = genus.chi_y(pair, nu if nu is not None else doc.nu)
            print(f"chi_y coefficients: {list(poly.coefficients)}", file=out)
            print(f"nu: {list(poly.nu)}", file=out)
            print(f"top_chern: {poly.top_chern}", file=out)
            print(f"signature: {poly.signature}", file=out)
            print(f"todd: {poly.todd}", file=out)
            return EXIT_OK

        if args.command in ("homology", "ring"):
            if doc.dimension != 2:
                print(f"error: {args.command} needs dimension 2, "
                      f"got {doc.dimension}", file=sys.stderr)
                return EXIT_SCOPE
            pair = _validated_pair(doc, out)
            if pair is None:
                return EXIT_INVALID
            if args.command == "homology":
                profile = dim4.homology_groups(pair)
                print(f"betti: {list(profile.betti)}", file=out)
                print(f"cell_counts: {list(profile.cell_counts)}", file=out)
                print(f"euler_characteristic: {profile.m}", file=out)
                return EXIT_OK
            if pair.body.hole_count > 1:
                print("error: intersection products are only computed for "
                      "at most one hole", file=sys.stderr)
                return EXIT_SCOPE
            data = dim4.intersection_form(pair)
            print(f"generators: {[_generator_label(doc, g) for g in data.generators]}",
                  file=out)
            print("matrix:", file=out)
            for row in data.matrix.entries:
                print(f"  {list(row)}", file=out)
            print(f"one_three_pairing: {_scalar(data.one_three_pairing)}", file=out)
            print(f"determinant: {det_exact(data.matrix)}", file=out)
            print(f"signature: {dim4.signature_of_matrix(data.matrix)}", file=out)
            return EXIT_OK

        if args.command == "mac":
            pair = _validated_pair(doc, out)
            if pair is None:
                return EXIT_INVALID
            kdata = mac.kernel_data(pair)
            print(f"torus_rank: {kdata.torus_rank}", file=out)
            print(f"kernel_basis_columns: "
                  f"{[list(kdata.kernel_basis.col(j)) for j in range(kdata.kernel_basis.cols)]}",
                  file=out)
            print(f"freeness: {_scalar(mac.freeness_check(pair))}", file=out)
            if args.point:
                point = tuple(Fraction(x) for x in args.point.split(","))
                coords = mac.embedding_coordinates(pair, point)
                print("embedding:", file=out)
                for label, value in zip(doc.facet_labels, coords):
                    print(f"  {label}: {_fraction_str(value)}", file=out)
            return EXIT_OK

        if args.command == "report":
            nu = None
            report = build_report(doc, nu)
            if not report["validation"]["ok"]:
                print(render_text(report) if args.format == "text"
                      else render_json(report), end="", file=out)
                return EXIT_INVALID
            rendered = (render_text(report) if args.format == "text"
                        else render_json(report))
            print(rendered, end="", file=out)
            return EXIT_OK

        raise AssertionError(f"unhandled command {args.command}")

    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GenericityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ScopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except GeometryError as exc:
        # composition failures (placement, containment) are input problems
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
