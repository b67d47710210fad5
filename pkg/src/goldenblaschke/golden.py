"""Golden-ratio constants and constructions inscribed in the unit circle."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, NotOnSegment, ZeroCenter
from .numerics import DEFAULT_TOLERANCE, TolerancePolicy, as_point

ALPHA = (1 + math.sqrt(5)) / 2
ALPHA_SQ = ALPHA + 1
INV_ALPHA = ALPHA - 1
# |a| at which (1 + |a|) / (1 - |a|) equals ALPHA
CHORD_THRESHOLD = math.sqrt(5) - 2


@dataclass(frozen=True)
class GoldenConstants:
    alpha: float = ALPHA
    alpha_sq: float = ALPHA_SQ
    inv_alpha: float = INV_ALPHA
    chord_threshold: float = CHORD_THRESHOLD


@dataclass(frozen=True)
class ChordSolution:
    """Chord ``[z1, z2]`` through an interior point ``a``.

    ``z1`` is the near endpoint, ``z2`` the far one; ``theta`` is the signed
    angle from the ray ``[0, a]`` to the direction ``a -> z1``.
    """

    z1: complex
    z2: complex
    theta: float
    short_len: float
    long_len: float
    is_diameter: bool = False

    @property
    def ratio(self) -> float:
        return self.long_len / self.short_len


@dataclass(frozen=True)
class GoldenTriangle:
    vertices: tuple
    apex: int = 0

    def sides(self) -> tuple[float, float, float]:
        """(lateral, lateral, base) lengths."""
        v = self.vertices
        k = self.apex
        p, q = v[(k + 1) % 3], v[(k + 2) % 3]
        return abs(v[k] - p), abs(v[k] - q), abs(p - q)

    @property
    def ratio(self) -> float:
        lateral, _, base = self.sides()
        return lateral / base


@dataclass(frozen=True)
class GoldenRectangle:
    vertices: tuple
    x: float
    y: float

    @property
    def ratio(self) -> float:
        v = self.vertices
        return abs(v[0] - v[1]) / abs(v[1] - v[2])


def divides_in_golden_ratio(p, q, c, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    """Whether ``c`` splits the segment ``[p, q]`` with longer/shorter part = ALPHA."""
    p, q, c = as_point(p), as_point(q), as_point(c)
    d1, d2, total = abs(c - p), abs(c - q), abs(q - p)
    if total == 0 or d1 == 0 or d2 == 0 or abs(d1 + d2 - total) > tol.eps_geom:
        raise NotOnSegment(f"{c!r} is not strictly inside [{p!r}, {q!r}]")
    return abs(max(d1, d2) / min(d1, d2) - ALPHA) <= tol.eps_geom


def _chord_at(a: complex, theta: float) -> ChordSolution:
    d = abs(a)
    u = a / d * cmath.exp(1j * theta)
    c = d * math.cos(theta)
    s = math.sqrt(1 - (d * math.sin(theta)) ** 2)
    # the line a + t u meets the circle at t = -c +/- s
    near, far = s - c, s + c
    return ChordSolution(
        z1=a + near * u, z2=a - far * u, theta=theta, short_len=near, long_len=far
    )


def golden_chords(a, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> list[ChordSolution]:
    """Chords of the unit circle that ``a`` divides in the golden ratio.

    With ``r = (1 + |a|) / (1 - |a|)``: none when ``r < ALPHA``, only the
    diameter through ``a`` when ``r`` is within ``eps_count`` of ALPHA, and
    otherwise two chords at angles ``+theta`` and ``-theta`` to the ray
    ``[0, a]`` (positive angle first). Both parts follow from the secant
    property ``short * long = 1 - |a|**2`` and ``long - short = 2|a| cos(theta)``.
    """
    a = as_point(a)
    d = abs(a)
    if d == 0:
        raise ZeroCenter("a = 0: every chord through the centre has ratio 1")
    if d >= 1:
        raise ValueError(f"|a| = {d} is not inside the unit disc")
    r = (1 + d) / (1 - d)
    if r < ALPHA - tol.eps_count:
        return []
    if abs(r - ALPHA) <= tol.eps_count:
        u = a / d
        return [ChordSolution(z1=u, z2=-u, theta=0.0, short_len=1 - d, long_len=1 + d,
                              is_diameter=True)]
    short = math.sqrt((1 - d * d) / ALPHA)
    theta = math.acos(short * (ALPHA - 1) / (2 * d))
    chords = [_chord_at(a, theta), _chord_at(a, -theta)]
    for ch in chords:
        _check_eqn(a, ch, tol)
    return chords


def _check_eqn(a: complex, ch: ChordSolution, tol: TolerancePolicy) -> None:
    # (z2 - a)**2 = ALPHA**2 (z1 - a)**2, the squared form of the chord condition
    lhs = (ch.z2 - a) ** 2
    rhs = ALPHA_SQ * (ch.z1 - a) ** 2
    if abs(lhs - rhs) > 1e3 * tol.eps_geom * max(1.0, abs(lhs)):
        raise NonConvergence(f"chord fails the squared golden relation by {abs(lhs - rhs):g}")


def golden_chord_residual(a: complex, ch: ChordSolution) -> complex:
    """Residual of ``(z2 - a)**2 - ALPHA**2 (z1 - a)**2``."""
    return (ch.z2 - a) ** 2 - ALPHA_SQ * (ch.z1 - a) ** 2


def golden_triangle(rotation: float = 0.0) -> GoldenTriangle:
    """Golden triangle with apex ``exp(i rotation)``, base at ``Re = -ALPHA/2``."""
    x = ALPHA / 2
    y = math.sqrt(1 - x * x)
    u = cmath.exp(1j * rotation)
    return GoldenTriangle(vertices=(u, u * complex(-x, y), u * complex(-x, -y)), apex=0)


def golden_rectangle(rotation: float = 0.0) -> GoldenRectangle:
    y = 1 / math.sqrt(ALPHA + 2)
    x = ALPHA * y
    u = cmath.exp(1j * rotation)
    verts = tuple(u * complex(sx * x, sy * y) for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1)))
    return GoldenRectangle(vertices=verts, x=x, y=y)


def regular_polygon(n: int, rotation: float = 0.0) -> tuple:
    """Vertices of the regular ``n``-gon inscribed in the circle, first at ``exp(i rotation)``."""
    return tuple(complex(v) for v in np.exp(1j * (rotation + 2 * np.pi * np.arange(n) / n)))
