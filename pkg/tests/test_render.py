import math
import re
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from goldenblaschke.errors import ViewportOverflow
from goldenblaschke.poncelet import Chord, Ellipse
from goldenblaschke.render import (
    ChordElement,
    EllipseElement,
    Point,
    Polygon,
    SceneDescription,
    UnitCircle,
    figure_scene,
    plane_coordinates,
    render_svg,
)

SVG = "{http://www.w3.org/2000/svg}"


def _census(svg):
    root = ET.fromstring(svg)
    tags = [el.tag.replace(SVG, "") for el in root.iter()]

    def dashed(tag):
        return sum(1 for el in root.iter(SVG + tag) if el.get("stroke-dasharray"))

    return {
        "circle": tags.count("circle"),
        "line": tags.count("line"),
        "polygon": tags.count("polygon"),
        "ellipse": tags.count("ellipse"),
        "dashed_line": dashed("line"),
        "dashed_polygon": dashed("polygon"),
    }


def test_unit_circle_only():
    svg = render_svg(SceneDescription([UnitCircle()]), 256)
    c = _census(svg)
    assert c["circle"] == 1 and c["line"] == 0 and c["ellipse"] == 0
    circle = ET.fromstring(svg).find(SVG + "circle")
    assert float(circle.get("cx")) == 128 and float(circle.get("r")) == pytest.approx(256 / 2.2)


def test_width_bound():
    with pytest.raises(ValueError):
        render_svg(SceneDescription([UnitCircle()]), 32)


def test_viewport_overflow():
    with pytest.raises(ViewportOverflow):
        render_svg(SceneDescription([Point(1.5 + 0j)]))


def test_ellipse_element_geometry():
    e = Ellipse(0.3 + 0.3j, -0.3 - 0.3j, 1.2)
    svg = render_svg(SceneDescription([EllipseElement(e)]), 220)
    el = ET.fromstring(svg).find(SVG + "ellipse")
    scale = 220 / 2.2
    assert float(el.get("rx")) == pytest.approx(0.6 * scale, abs=1e-6)
    assert float(el.get("ry")) == pytest.approx(e.semi_minor * scale, abs=1e-6)
    angle = float(re.match(r"rotate\(([-0-9.]+)", el.get("transform")).group(1))
    # y is flipped on screen, so the rotation sign flips too
    assert angle == pytest.approx(-math.degrees(math.atan2(-0.6, -0.6)), abs=1e-6)


def test_coordinates_round_trip():
    pts = [0.5 + 0.2j, -0.9 - 0.3j, 0.1j, 1.0 + 0j]
    scene = SceneDescription([
        Polygon(tuple(pts), "solid"),
        ChordElement(Chord(pts[0], pts[1]), "dashed"),
    ])
    width = 333
    root = ET.fromstring(render_svg(scene, width))
    poly = root.find(SVG + "polygon").get("points").split()
    for token, z in zip(poly, pts):
        px, py = map(float, token.split(","))
        assert abs(plane_coordinates(px, py, width) - z) < 1e-5
    line = root.find(SVG + "line")
    p = plane_coordinates(float(line.get("x1")), float(line.get("y1")), width)
    q = plane_coordinates(float(line.get("x2")), float(line.get("y2")), width)
    assert abs(p - pts[0]) < 1e-5 and abs(q - pts[1]) < 1e-5


EXPECTED = {
    1: dict(circle=1, line=2, dashed_line=2, polygon=0, ellipse=0),
    2: dict(circle=1, line=0, polygon=1, dashed_polygon=1, ellipse=1),
    3: dict(circle=1, line=0, polygon=2, dashed_polygon=2, ellipse=1),
    4: dict(circle=1, line=0, polygon=1, dashed_polygon=1, ellipse=1),
    5: dict(circle=1, line=48 * 5, dashed_line=0, polygon=2, dashed_polygon=2, ellipse=0),
    6: dict(circle=1, line=48 * 10, dashed_line=0, polygon=2, dashed_polygon=2, ellipse=0),
}


@pytest.mark.parametrize("n", sorted(EXPECTED))
def test_figure_census(n):
    svg = render_svg(figure_scene(n))
    census = _census(svg)
    for key, value in EXPECTED[n].items():
        assert census[key] == value, key


def test_figure_polygons_are_golden_shapes():
    root = ET.fromstring(render_svg(figure_scene(4), 220))
    pts = [plane_coordinates(*map(float, t.split(",")), 220)
           for t in root.find(SVG + "polygon").get("points").split()]
    sides = np.abs(np.diff(pts + pts[:1]))
    assert sides[0] / sides[1] == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-4)


@pytest.mark.parametrize("n", [1, 4, 6])
def test_byte_deterministic(n):
    assert render_svg(figure_scene(n)) == render_svg(figure_scene(n))


def test_byte_deterministic_across_processes():
    code = "from goldenblaschke.render import figure_scene, render_svg; print(render_svg(figure_scene(3)), end='')"
    outs = {subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                           check=True).stdout for _ in range(2)}
    assert len(outs) == 1
    assert outs.pop() == render_svg(figure_scene(3))


def test_unknown_figure():
    with pytest.raises(ValueError):
        figure_scene(7)
