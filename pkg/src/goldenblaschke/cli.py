"""Command-line interface: ``goldenblaschke <subcommand> ...``.

Complex numbers are written ``RE,IM``; unimodular points may also be given as
``@DEG`` meaning ``exp(i * DEG * pi / 180)``. Results go to stdout as JSON
(default) or plain text.
"""
from __future__ import annotations

import argparse
import cmath
import json
import math
import re
import sys
from typing import Sequence

from . import __version__
from .blaschke import (
    BlaschkeProduct,
    construct_identifying_product,
    evaluate,
    identification_residual,
    is_interspersed,
)
from .errors import GeometryError, NumericFailure
from .golden import (
    ALPHA,
    CHORD_THRESHOLD,
    golden_chords,
    golden_rectangle,
    golden_triangle,
)
from .numerics import TolerancePolicy
from .poncelet import (
    Chord,
    Ellipse,
    blaschke3_ellipse,
    degree4_ellipse,
    degree4_product_from_foci,
    inscribed_ellipse_foci,
    polygon_chords,
    steiner_foci,
    tangency_defect,
    verify_poncelet,
    golden_blaschke_ellipse,
)
from .render import (
    ChordElement,
    EllipseElement,
    Point,
    Polygon,
    SceneDescription,
    UnitCircle,
    figure_scene,
    render_svg,
)

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2
_NEG_POINT = re.compile(r"^-[\d.]+(e-?\d+)?,")


def parse_point(text: str) -> complex:
    text = text.strip()
    try:
        if text.startswith("@"):
            return cmath.exp(1j * math.radians(float(text[1:])))
        if "," in text:
            re_part, im_part = text.split(",")
            return complex(float(re_part), float(im_part))
        return complex(float(text), 0.0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse point {text!r}; use RE,IM or @DEG") from None


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _ellipse_json(e: Ellipse) -> dict:
    return {
        "focus1": _pair(e.focus1),
        "focus2": _pair(e.focus2),
        "dist_sum": e.dist_sum,
        "center": _pair(e.center),
        "semi_major": e.semi_major,
        "semi_minor": e.semi_minor,
        "axis_ratio": e.axis_ratio,
    }


def _product_json(B: BlaschkeProduct) -> dict:
    return {
        "degree": B.degree,
        "prefactor": _pair(B.prefactor),
        "zeros": [_pair(a) for a in B.zeros],
        "canonical": B.is_canonical,
    }


def _tol(args) -> TolerancePolicy:
    return TolerancePolicy(args.eps_root, args.eps_geom, args.eps_count, args.max_iter)


def _cmd_chords(args, tol):
    a = args.a
    chords = golden_chords(a, tol)
    d = abs(a)
    kind = "none" if not chords else ("diameter" if chords[0].is_diameter else "two")
    B = BlaschkeProduct.canonical([a])
    result = {
        "a": _pair(a),
        "modulus": d,
        "endpoint_ratio": (1 + d) / (1 - d),
        "threshold": CHORD_THRESHOLD,
        "alpha": ALPHA,
        "classification": kind,
        "boundary_band": tol.eps_count,
        "chords": [
            {
                "z1": _pair(ch.z1),
                "z2": _pair(ch.z2),
                "theta": ch.theta,
                "short_len": ch.short_len,
                "long_len": ch.long_len,
                "ratio": ch.ratio,
                "is_diameter": ch.is_diameter,
                "blaschke_gap": abs(evaluate(B, ch.z1) - evaluate(B, ch.z2)),
            }
            for ch in chords
        ],
    }
    scene = SceneDescription([UnitCircle(), Point(a, "a")])
    for ch in chords:
        scene.add(ChordElement(Chord(ch.z1, ch.z2), "dashed"))
    return result, scene


def _cmd_triangle(args, tol):
    t = golden_triangle(args.rotate)
    lateral, _, base = t.sides()
    result = {
        "rotation": args.rotate,
        "vertices": [_pair(v) for v in t.vertices],
        "apex": t.apex,
        "lateral": lateral,
        "base": base,
        "ratio": t.ratio,
    }
    return result, SceneDescription([UnitCircle(), Polygon(t.vertices, "dashed")])


def _cmd_rectangle(args, tol):
    r = golden_rectangle(args.rotate)
    result = {
        "rotation": args.rotate,
        "vertices": [_pair(v) for v in r.vertices],
        "x": r.x,
        "y": r.y,
        "ratio": r.ratio,
    }
    return result, SceneDescription([UnitCircle(), Polygon(r.vertices, "dashed")])


def _cmd_golden_ellipse(args, tol):
    e, B = golden_blaschke_ellipse()
    result = {"c": e.focus1.real, **_ellipse_json(e), "product": _product_json(B)}
    return result, SceneDescription([UnitCircle(), EllipseElement(e)])


def _cmd_steiner(args, tol):
    verts = args.vertices
    f1, f2 = steiner_foci(verts, tol)
    result = {"vertices": [_pair(v) for v in verts], "foci": [_pair(f1), _pair(f2)]}
    scene = SceneDescription([UnitCircle(), Polygon(tuple(verts), "dashed")])
    if f1 != f2 and f1 != 0 and f2 != 0:
        e = blaschke3_ellipse(f1, f2)
        result["ellipse"] = _ellipse_json(e)
        result["side_defects"] = [tangency_defect(c, e) for c in polygon_chords(verts)]
        scene.add(EllipseElement(e))
    return result, scene


def _default_seed(quad: Sequence[complex]) -> complex:
    z1, z2, z3, z4 = quad
    if abs(z1 + z3) < 1e-9 and abs(z2 + z4) < 1e-9:
        # rectangle: aim along the long side, 0.8 of the focal distance
        s12, s23 = z2 - z1, z3 - z2
        long_side, short_side = (s12, s23) if abs(s12) >= abs(s23) else (s23, s12)
        half_long, half_short = abs(long_side) / 2, abs(short_side) / 2
        return 0.8 * math.sqrt(max(half_long ** 2 - half_short ** 2, 0.0)) * long_side / abs(long_side)
    return 0.5 * sum(quad) / 4


def _cmd_inscribe(args, tol):
    quad = args.quad
    seed = args.seed if args.seed is not None else _default_seed(quad)
    sol = inscribed_ellipse_foci(quad, seed, tol)
    e = degree4_ellipse(sol.focus_a, sol.focus_b)
    result = {
        "quad": [_pair(z) for z in quad],
        "seed": _pair(seed),
        "focus_a": _pair(sol.focus_a),
        "focus_b": _pair(sol.focus_b),
        "residual": sol.residual,
        "ellipse": _ellipse_json(e),
        "side_defects": [tangency_defect(c, e) for c in polygon_chords(quad)],
    }
    return result, SceneDescription([UnitCircle(), Polygon(tuple(quad), "dashed"), EllipseElement(e)])


def _cmd_degree4(args, tol):
    a, b = args.foci
    e = degree4_ellipse(a, b)
    B = degree4_product_from_foci(a, b, tol)
    report = verify_poncelet(B, e, args.samples, tol)
    result = {
        "foci": [_pair(a), _pair(b)],
        "ellipse": _ellipse_json(e),
        "product": _product_json(B),
        "max_defect": report.max_defect,
        "samples": report.samples,
    }
    return result, SceneDescription([UnitCircle(), EllipseElement(e)])


def _cmd_identify(args, tol):
    Z, W = args.z, args.w
    interspersed = is_interspersed(Z, W, tol)
    B = construct_identifying_product(Z, W, tol)
    result = {
        "interspersed": interspersed,
        "product": _product_json(B),
        "identification_residual": identification_residual(B, Z, W),
        "value_on_z": _pair(evaluate(B, Z[0])),
        "value_on_w": _pair(evaluate(B, W[0])),
    }
    scene = SceneDescription([UnitCircle(), Polygon(tuple(Z), "dashed"), Polygon(tuple(W), "dashed")])
    if B.degree == 3:
        a1, a2 = B.free_zeros
        if a1 != 0 and a2 != 0 and a1 != a2:
            e = blaschke3_ellipse(a1, a2)
            result["ellipse"] = _ellipse_json(e)
            scene.add(EllipseElement(e))
    return result, scene


def _cmd_verify(args, tol):
    B = BlaschkeProduct.canonical(args.zeros)
    if args.ellipse_foci is not None:
        if args.dist_sum is None:
            raise GeometryError("--ellipse-foci needs --dist-sum")
        e = Ellipse(args.ellipse_foci[0], args.ellipse_foci[1], args.dist_sum)
    elif B.degree == 3:
        e = blaschke3_ellipse(*args.zeros)
    else:
        raise GeometryError("degree != 3 needs --ellipse-foci and --dist-sum")
    report = verify_poncelet(B, e, args.samples, tol)
    result = {
        "product": _product_json(B),
        "ellipse": _ellipse_json(e),
        "samples": report.samples,
        "chords_checked": report.chords_checked,
        "max_defect": report.max_defect,
        "passed": report.passed,
    }
    return result, SceneDescription([UnitCircle(), EllipseElement(e)])


def _cmd_render(args, tol):
    svg = render_svg(figure_scene(args.figure, tol), args.width, tol)
    if args.out in (None, "-"):
        return svg, None
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return {"figure": args.figure, "out": args.out, "bytes": len(svg.encode())}, None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("tolerances and output")
    g.add_argument("--eps-root", type=float, default=1e-12)
    g.add_argument("--eps-geom", type=float, default=1e-9)
    g.add_argument("--eps-count", type=float, default=1e-9)
    g.add_argument("--max-iter", type=int, default=200)
    g.add_argument("--format", choices=("json", "text"), default="json")
    g.add_argument("--svg", metavar="PATH", help="also write a drawing of the result")
    g.add_argument("--samples", type=int, default=100, help="lambda samples for sweeps")

    parser = argparse.ArgumentParser(
        prog="goldenblaschke",
        description="Golden-ratio constructions with finite Blaschke products.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chords", parents=[common], help="golden chords through a point")
    p.add_argument("--a", type=parse_point, required=True)
    p.set_defaults(func=_cmd_chords)

    for name, func, what in (("triangle", _cmd_triangle, "golden triangle"),
                             ("rectangle", _cmd_rectangle, "golden rectangle")):
        p = sub.add_parser(name, parents=[common], help=f"{what} inscribed in the circle")
        p.add_argument("--rotate", type=float, default=0.0, metavar="RAD")
        p.set_defaults(func=func)

    p = sub.add_parser("golden-ellipse", parents=[common], help="the golden Blaschke ellipse")
    p.set_defaults(func=_cmd_golden_ellipse)

    p = sub.add_parser("steiner", parents=[common], help="Steiner inellipse foci")
    p.add_argument("--vertices", type=parse_point, nargs=3, required=True)
    p.set_defaults(func=_cmd_steiner)

    p = sub.add_parser("inscribe", parents=[common], help="ellipse inscribed in a quadrilateral")
    p.add_argument("--quad", type=parse_point, nargs=4, required=True)
    p.add_argument("--seed", type=parse_point)
    p.set_defaults(func=_cmd_inscribe)

    p = sub.add_parser("degree4", parents=[common], help="degree-4 product from ellipse foci")
    p.add_argument("--foci", type=parse_point, nargs=2, required=True)
    p.set_defaults(func=_cmd_degree4)

    p = sub.add_parser("identify", parents=[common], help="product identifying two tuples")
    p.add_argument("--z", type=parse_point, nargs="+", required=True)
    p.add_argument("--w", type=parse_point, nargs="+", required=True)
    p.set_defaults(func=_cmd_identify)

    p = sub.add_parser("verify", parents=[common], help="Poncelet tangency sweep")
    p.add_argument("--zeros", type=parse_point, nargs="+", required=True,
                   help="zeros besides the one at the origin")
    p.add_argument("--ellipse-foci", type=parse_point, nargs=2)
    p.add_argument("--dist-sum", type=float)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("render", parents=[common], help="regenerate a figure as SVG")
    p.add_argument("--figure", type=int, choices=range(1, 7), required=True)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--width", type=int, default=512)
    p.set_defaults(func=_cmd_render)
    return parser


def _protect_negative(argv: Sequence[str]) -> list[str]:
    # "-0.5,0" would otherwise be read as an option flag
    return [" " + a if _NEG_POINT.match(a) else a for a in argv]


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    for key, value in payload.items():
        out.write(f"{key}: {json.dumps(value)}\n")


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negative(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        tol = _tol(args)
    except ValueError as exc:
        _emit({"error": "BadTolerance", "message": str(exc)}, args.format, out)
        return EXIT_USAGE
    try:
        result, scene = args.func(args, tol)
        if args.svg and scene is not None:
            with open(args.svg, "w", encoding="utf-8") as fh:
                fh.write(render_svg(scene, 512, tol))
    except NumericFailure as exc:
        _emit({"command": args.command, "error": exc.code, "message": str(exc),
               "tolerance": tol.as_dict()}, args.format, out)
        return EXIT_NUMERIC
    except (GeometryError, ValueError) as exc:
        code = getattr(exc, "code", "InvalidArgument")
        _emit({"command": args.command, "error": code, "message": str(exc),
               "tolerance": tol.as_dict()}, args.format, out)
        return EXIT_USAGE
    if isinstance(result, str):
        out.write(result)
        return EXIT_OK
    _emit({"command": args.command, "tolerance": tol.as_dict(), "result": result}, args.format, out)
    if args.command == "verify" and not result["passed"]:
        return EXIT_NUMERIC
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
