"""Deterministic SVG drawings of unit-disc scenes."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Union

from .blaschke import BlaschkeProduct, construct_identifying_product, preimages_on_circle
from .errors import GeometryError, ViewportOverflow
from .golden import golden_chords, golden_rectangle, golden_triangle, regular_polygon
from .numerics import DEFAULT_TOLERANCE, TolerancePolicy
from .poncelet import (
    Chord,
    Ellipse,
    blaschke3_ellipse,
    degree4_ellipse,
    inscribed_ellipse_foci,
    polygon_chords,
    steiner_foci,
)

VIEW = 1.1
DASH = "6,4"


@dataclass(frozen=True)
class UnitCircle:
    pass


@dataclass(frozen=True)
class Point:
    z: complex
    label: str = ""


@dataclass(frozen=True)
class ChordElement:
    chord: Chord
    style: str = "solid"


@dataclass(frozen=True)
class EllipseElement:
    ellipse: Ellipse
    style: str = "solid"


@dataclass(frozen=True)
class Polygon:
    points: tuple
    style: str = "dashed"


@dataclass(frozen=True)
class ChordFamily:
    product: BlaschkeProduct
    sample_count: int = 60
    style: str = "thin"


Element = Union[UnitCircle, Point, ChordElement, EllipseElement, Polygon, ChordFamily]


@dataclass
class SceneDescription:
    elements: list = field(default_factory=list)

    def add(self, element: Element) -> "SceneDescription":
        self.elements.append(element)
        return self


def _num(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


class _Canvas:
    def __init__(self, width: int):
        self.width = width
        self.scale = width / (2 * VIEW)
        self.lines: list[str] = []

    def xy(self, z: complex) -> tuple[str, str]:
        if abs(z.real) > VIEW or abs(z.imag) > VIEW:
            raise ViewportOverflow(f"{z!r} lies outside the viewport")
        return _num((z.real + VIEW) * self.scale), _num((VIEW - z.imag) * self.scale)

    @staticmethod
    def stroke(style: str) -> str:
        if style == "dashed":
            return f'fill="none" stroke="black" stroke-width="1.5" stroke-dasharray="{DASH}"'
        if style == "thin":
            return 'fill="none" stroke="#4060a0" stroke-width="0.4"'
        if style == "solid":
            return 'fill="none" stroke="black" stroke-width="1"'
        raise GeometryError(f"unknown style {style!r}")

    def line(self, p: complex, q: complex, style: str):
        (x1, y1), (x2, y2) = self.xy(p), self.xy(q)
        self.lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {self.stroke(style)}/>')


def _draw(canvas: _Canvas, el: Element, tol: TolerancePolicy) -> None:
    if isinstance(el, UnitCircle):
        cx, cy = canvas.xy(0j)
        r = _num(canvas.scale)
        canvas.lines.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" {canvas.stroke("solid")}/>')
    elif isinstance(el, Point):
        x, y = canvas.xy(el.z)
        fx, fy = float(x), float(y)
        d = 3.0
        canvas.lines.append(
            f'<path d="M {_num(fx - d)} {_num(fy)} H {_num(fx + d)} M {_num(fx)} {_num(fy - d)} '
            f'V {_num(fy + d)}" stroke="black" stroke-width="1"/>'
        )
        if el.label:
            canvas.lines.append(f'<text x="{_num(fx + 4)}" y="{_num(fy - 4)}" font-size="12">{el.label}</text>')
    elif isinstance(el, ChordElement):
        canvas.line(el.chord.p, el.chord.q, el.style)
    elif isinstance(el, EllipseElement):
        e = el.ellipse
        # the axis-aligned bounding box must fit the viewport
        rot = e.angle
        hw = math.hypot(e.semi_major * math.cos(rot), e.semi_minor * math.sin(rot))
        hh = math.hypot(e.semi_major * math.sin(rot), e.semi_minor * math.cos(rot))
        c = e.center
        for corner in (c + complex(hw, hh), c - complex(hw, hh)):
            canvas.xy(corner)
        cx, cy = canvas.xy(c)
        deg = _num(-math.degrees(rot))
        canvas.lines.append(
            f'<ellipse cx="{cx}" cy="{cy}" rx="{_num(e.semi_major * canvas.scale)}" '
            f'ry="{_num(e.semi_minor * canvas.scale)}" transform="rotate({deg} {cx} {cy})" '
            f'{canvas.stroke(el.style)}/>'
        )
    elif isinstance(el, Polygon):
        pts = " ".join(",".join(canvas.xy(complex(z))) for z in el.points)
        canvas.lines.append(f'<polygon points="{pts}" {canvas.stroke(el.style)}/>')
    elif isinstance(el, ChordFamily):
        canvas.lines.append('<g class="chord-family">')
        B = el.product
        for k in range(el.sample_count):
            lam = cmath.exp(2j * math.pi * k / el.sample_count)
            pts = preimages_on_circle(B, lam, tol)
            for ch in polygon_chords(pts, all_pairs=B.degree == 3):
                canvas.line(ch.p, ch.q, el.style)
        canvas.lines.append("</g>")
    else:
        raise GeometryError(f"unknown scene element {el!r}")


def render_svg(scene: SceneDescription, width_px: int = 512,
               tol: TolerancePolicy = DEFAULT_TOLERANCE) -> str:
    if width_px < 64:
        raise ValueError("width_px must be at least 64")
    canvas = _Canvas(width_px)
    for el in scene.elements:
        _draw(canvas, el, tol)
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width_px}" '
        f'height="{width_px}" viewBox="0 0 {width_px} {width_px}">\n'
        f'<rect x="0" y="0" width="{width_px}" height="{width_px}" fill="white"/>\n'
    )
    return head + "\n".join(canvas.lines) + "\n</svg>\n"


def plane_coordinates(px: float, py: float, width_px: int) -> complex:
    """Inverse of the plane-to-pixel map."""
    scale = width_px / (2 * VIEW)
    return complex(px / scale - VIEW, VIEW - py / scale)


FAMILY_SAMPLES = 48


def _two_polygon_figure(n: int, tol: TolerancePolicy) -> SceneDescription:
    Z = regular_polygon(n, 0.0)
    W = regular_polygon(n, math.pi / n)
    B = construct_identifying_product(Z, W, tol)
    return SceneDescription([
        UnitCircle(),
        ChordFamily(B, FAMILY_SAMPLES),
        Polygon(Z, "dashed"),
        Polygon(W, "dashed"),
    ])


def figure_scene(number: int, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> SceneDescription:
    """Scene for one of the six figures.

    1. golden chords through a = 1/2;
    2. Steiner inellipse of a golden triangle;
    3. ellipse of the product identifying two golden triangles;
    4. degree-4 ellipse inscribed in a golden rectangle;
    5, 6. chord families of products identifying two regular pentagons / decagons.
    """
    if number == 1:
        a = 0.5 + 0j
        scene = SceneDescription([UnitCircle(), Point(a, "a")])
        for ch in golden_chords(a, tol):
            scene.add(ChordElement(Chord(ch.z1, ch.z2), "dashed"))
        return scene
    if number == 2:
        t = golden_triangle(0.0)
        f1, f2 = steiner_foci(t.vertices, tol)
        return SceneDescription([
            UnitCircle(),
            Polygon(t.vertices, "dashed"),
            EllipseElement(blaschke3_ellipse(f1, f2)),
        ])
    if number == 3:
        t1, t2 = golden_triangle(0.0), golden_triangle(math.pi / 3)
        B = construct_identifying_product(t1.vertices, t2.vertices, tol)
        a1, a2 = B.free_zeros
        return SceneDescription([
            UnitCircle(),
            Polygon(t1.vertices, "dashed"),
            Polygon(t2.vertices, "dashed"),
            EllipseElement(blaschke3_ellipse(a1, a2)),
        ])
    if number == 4:
        r = golden_rectangle(0.0)
        sol = inscribed_ellipse_foci(r.vertices, 0.8 * math.sqrt(r.x ** 2 - r.y ** 2), tol)
        return SceneDescription([
            UnitCircle(),
            Polygon(r.vertices, "dashed"),
            EllipseElement(degree4_ellipse(sol.focus_a, sol.focus_b)),
        ])
    if number == 5:
        return _two_polygon_figure(5, tol)
    if number == 6:
        return _two_polygon_figure(10, tol)
    raise ValueError(f"no figure {number}; choose 1-6")

