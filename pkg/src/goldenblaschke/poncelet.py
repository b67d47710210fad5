"""Ellipses inscribed in unit-circle polygons, viewed as Poncelet curves of Blaschke products."""
from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .blaschke import BlaschkeProduct, preimages_on_circle
from .errors import (
    DegenerateChord,
    DegenerateEllipse,
    DegenerateRadicand,
    DegenerateTriangle,
    FactorZeroOutsideDisc,
    FociOutsideDisc,
    GeometryError,
    NonConvergence,
    NotUnimodular,
    ZeroOrCoincidentFoci,
)
from .numerics import (
    DEFAULT_TOLERANCE,
    ComplexPolynomial,
    TolerancePolicy,
    as_point,
    poly_roots,
    reversed_conjugate,
)


@dataclass(frozen=True)
class Ellipse:
    """Locus ``|z - focus1| + |z - focus2| = dist_sum``."""

    focus1: complex
    focus2: complex
    dist_sum: float

    def __post_init__(self):
        if not self.dist_sum > abs(self.focus1 - self.focus2):
            raise DegenerateEllipse(
                f"dist_sum {self.dist_sum!r} <= focal distance {abs(self.focus1 - self.focus2)!r}"
            )

    @property
    def center(self) -> complex:
        return (self.focus1 + self.focus2) / 2

    @property
    def semi_major(self) -> float:
        return self.dist_sum / 2

    @property
    def semi_minor(self) -> float:
        return math.sqrt(self.dist_sum ** 2 / 4 - abs(self.focus1 - self.focus2) ** 2 / 4)

    @property
    def axis_ratio(self) -> float:
        return self.semi_major / self.semi_minor

    @property
    def angle(self) -> float:
        """Direction of the major axis; 0 for a circle."""
        d = self.focus2 - self.focus1
        return cmath.phase(d) if d != 0 else 0.0

    def point_at(self, t):
        """Parametric point ``center + e^{i angle} (A cos t + i B sin t)``."""
        rot = cmath.exp(1j * self.angle)
        return self.center + rot * (self.semi_major * np.cos(t) + 1j * self.semi_minor * np.sin(t))

    def rotated(self, phi: float) -> "Ellipse":
        u = cmath.exp(1j * phi)
        return Ellipse(u * self.focus1, u * self.focus2, self.dist_sum)


@dataclass(frozen=True)
class Chord:
    p: complex
    q: complex


@dataclass(frozen=True)
class InscribedEllipseSolution:
    focus_a: complex
    focus_b: complex
    residual: float


@dataclass(frozen=True)
class PonceletReport:
    max_defect: float
    samples: int
    chords_checked: int
    eps_geom: float

    @property
    def passed(self) -> bool:
        return self.max_defect <= self.eps_geom


def tangency_defect(c: Chord, e: Ellipse) -> float:
    """Signed ``|reflect(focus1) - focus2| - dist_sum`` for the line through the chord.

    Zero for a tangent line, negative when the line cuts the ellipse and
    positive when it misses.
    """
    p, q = as_point(c.p), as_point(c.q)
    d = q - p
    if abs(d) == 0:
        raise DegenerateChord("chord endpoints coincide")
    reflected = p + d / d.conjugate() * (e.focus1 - p).conjugate()
    return abs(reflected - e.focus2) - e.dist_sum


def is_tangent(c: Chord, e: Ellipse, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    return abs(tangency_defect(c, e)) <= tol.eps_geom


def polygon_chords(points: Sequence[complex], all_pairs: bool = False) -> list[Chord]:
    """Consecutive sides (cyclic), or every pair when ``all_pairs``."""
    n = len(points)
    if all_pairs:
        return [Chord(points[j], points[k]) for j in range(n) for k in range(j + 1, n)]
    return [Chord(points[k], points[(k + 1) % n]) for k in range(n)]


def blaschke3_ellipse(a1, a2) -> Ellipse:
    """Ellipse tangent to every preimage triangle of ``z (z-a1)(z-a2)/((1-conj(a1) z)(1-conj(a2) z))``."""
    a1, a2 = as_point(a1), as_point(a2)
    if a1 == 0 or a2 == 0 or a1 == a2:
        raise ZeroOrCoincidentFoci(f"need distinct nonzero foci, got {a1!r}, {a2!r}")
    if not (abs(a1) < 1 and abs(a2) < 1):
        raise GeometryError("foci must lie inside the unit disc")
    return Ellipse(a1, a2, abs(1 - a1.conjugate() * a2))


def verify_poncelet(
    B: BlaschkeProduct,
    e: Ellipse,
    sample_count: int = 100,
    tol: TolerancePolicy = DEFAULT_TOLERANCE,
) -> PonceletReport:
    """Max tangency defect over the preimage polygons of equally spaced ``lambda``.

    Degree 3 checks all three sides of each triangle; higher degrees check
    consecutive sides in argument order.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    if B.degree < 3:
        raise GeometryError("verify_poncelet needs degree >= 3")
    worst = 0.0
    checked = 0
    for k in range(sample_count):
        lam = cmath.exp(2j * math.pi * k / sample_count)
        pts = preimages_on_circle(B, lam, tol)
        for ch in polygon_chords(pts, all_pairs=B.degree == 3):
            worst = max(worst, abs(tangency_defect(ch, e)))
            checked += 1
    return PonceletReport(worst, sample_count, checked, tol.eps_geom)


def steiner_foci(t: Sequence, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> tuple[complex, complex]:
    """Foci ``g +/- sqrt(g**2 - e2/3)`` of the Steiner inellipse.

    ``g`` is the centroid and ``e2`` the second elementary symmetric function
    of the vertices.
    """
    z1, z2, z3 = (as_point(v) for v in t)
    for z in (z1, z2, z3):
        if abs(abs(z) - 1) > tol.eps_geom:
            raise NotUnimodular(f"vertex {z!r} is off the unit circle")
    area2 = ((z2 - z1).conjugate() * (z3 - z1)).imag
    if abs(area2) <= tol.eps_geom:
        raise DegenerateTriangle("vertices are collinear or coincident")
    g = (z1 + z2 + z3) / 3
    e2 = z1 * z2 + z1 * z3 + z2 * z3
    disc = g * g - e2 / 3
    # a discriminant within its own rounding error is a circle (double focus);
    # the square root would otherwise turn 1e-16 noise into 1e-8 focus splits
    m1, m2, m3 = abs(z1), abs(z2), abs(z3)
    scale = ((m1 + m2 + m3) / 3) ** 2 + (m1 * m2 + m1 * m3 + m2 * m3) / 3
    if abs(disc) <= 16 * sys.float_info.epsilon * scale:
        return g, g
    root = cmath.sqrt(disc)
    return g + root, g - root


def golden_blaschke_ellipse() -> tuple[Ellipse, BlaschkeProduct]:
    """The centred ellipse with axis ratio ALPHA whose string length is ``1 + c**2``."""
    s5 = math.sqrt(5)
    c = 0.5 * (-math.sqrt(2 * (s5 - 1)) + math.sqrt(2 * (s5 + 1)))
    e = Ellipse(complex(c), complex(-c), 1 + c * c)
    return e, BlaschkeProduct.canonical([c, -c])


def rotate_blaschke_ellipse(e: Ellipse, B: BlaschkeProduct, phi: float) -> tuple[Ellipse, BlaschkeProduct]:
    return e.rotated(phi), B.rotated(phi)


def fujimura_cubic(a: complex, quad: Sequence[complex]) -> complex:
    """Left side of the equation satisfied by a focus ``a`` of an ellipse inscribed in ``quad``."""
    z1, z2, z3, z4 = quad
    ab = a.conjugate()
    p = z2 * z4 - z1 * z3
    s = z4 - z3 + z2 - z1
    prod = z1 * z2 * z3 * z4
    quad_term = ((((-z2 + z1) * z3 - z1 * z2) * z4 + z1 * z2 * z3) * ab + p) * a * a
    lin_term = (
        prod * s * ab * ab
        - (z3 + z1) * (z4 + z2) * p * ab
        + z2 * z4 * (z4 + z2)
        - z1 * z3 * (z1 + z3)
    ) * a
    const_term = (
        prod * p * ab * ab
        - ((z2 ** 2 * z3 + z1 * z2 ** 2) * z4 ** 2 - z1 ** 2 * z3 ** 2 * z4 - z1 ** 2 * z2 * z3 ** 2) * ab
        + p * (z2 * z4 + z1 * z3)
    )
    return quad_term - lin_term + const_term


def _bilinear_coeffs(quad):
    z1, z2, z3, z4 = quad
    s = z4 - z3 + z2 - z1
    p = z2 * z4 - z1 * z3
    const = ((z2 - z1) * z3 + z1 * z2) * z4 - z1 * z2 * z3
    return s, p, const


def partner_focus(a: complex, quad: Sequence[complex]) -> complex:
    """Second focus from ``s a b - p (a + b) + const = 0``, which is linear in ``b``."""
    s, p, const = _bilinear_coeffs(quad)
    den = s * a - p
    if abs(den) < 1e-300:
        raise GeometryError("bilinear relation is singular at this focus")
    return (p * a - const) / den


def bilinear_residual(a: complex, b: complex, quad: Sequence[complex]) -> complex:
    s, p, const = _bilinear_coeffs(quad)
    return s * a * b - p * (a + b) + const


def _check_quad(quad, tol):
    pts = [as_point(z) for z in quad]
    if len(pts) != 4:
        raise GeometryError("a quadrilateral needs exactly four vertices")
    for z in pts:
        if abs(abs(z) - 1) > tol.eps_geom:
            raise NotUnimodular(f"vertex {z!r} is off the unit circle")
    args = [cmath.phase(z) % (2 * math.pi) for z in pts]
    # accept any cyclic relabelling of counter-clockwise order
    k = int(np.argmin(args))
    rolled = args[k:] + args[:k]
    if any(b <= a for a, b in zip(rolled, rolled[1:])):
        raise GeometryError("vertices must be distinct and in counter-clockwise order")
    return pts


_FOCI_RESTARTS = 8


def _gauss_newton(resid, x, tol):
    """Minimum-norm Gauss-Newton with step halving; returns (x, |residual|)."""
    r = resid(x)
    h = 1e-7
    for _ in range(tol.max_iter):
        if np.linalg.norm(r) < 1e-14:
            break
        J = np.column_stack([(resid(x + h * e) - resid(x - h * e)) / (2 * h) for e in np.eye(2)])
        step = np.linalg.lstsq(J, -r, rcond=1e-10)[0]
        lam = 1.0
        while lam > 1e-6:
            cand = x + lam * step
            rc = resid(cand)
            if np.linalg.norm(rc) < np.linalg.norm(r):
                break
            lam /= 2
        else:
            break
        x, r = cand, rc
    return x, float(np.linalg.norm(r))


def inscribed_ellipse_foci(
    quad: Sequence,
    seed=0j,
    tol: TolerancePolicy = DEFAULT_TOLERANCE,
) -> InscribedEllipseSolution:
    """Foci of an ellipse inscribed in a unit-circle quadrilateral.

    The first focus solves the complex cubic in ``a`` and ``conj(a)`` by
    damped Gauss-Newton (minimum-norm steps, since the solutions form a
    curve) from ``seed``; the second comes from the bilinear relation.
    """
    quad = _check_quad(quad, tol)
    seed = as_point(seed)

    def resid(v):
        f = fujimura_cubic(complex(v[0], v[1]), quad)
        return np.array([f.real, f.imag])

    best = None
    outside = None
    # symmetric seeds can sit on a zero-gradient axis, and some curve points
    # lie outside the disc: retry from deterministic offsets of growing size
    for k in range(_FOCI_RESTARTS):
        offset = 0.05 * k * cmath.exp(1j * (math.pi / 4 + 2.399963 * (k - 1)))
        start = seed + offset
        x, residual = _gauss_newton(resid, np.array([start.real, start.imag]), tol)
        if residual > tol.eps_geom:
            if best is None or residual < best:
                best = residual
            continue
        fa = complex(x[0], x[1])
        fb = partner_focus(fa, quad)
        if abs(fa) < 1 and abs(fb) < 1:
            break
        outside = (fa, fb)
    else:
        if outside is not None:
            raise FociOutsideDisc(f"foci {outside[0]!r}, {outside[1]!r} are not inside the disc")
        raise NonConvergence(f"focus equation residual {best:g} exceeds eps_geom")
    return InscribedEllipseSolution(fa, fb, residual)


def degree4_ellipse(a, b) -> Ellipse:
    a, b = as_point(a), as_point(b)
    if not (abs(a) < 1 and abs(b) < 1):
        raise GeometryError("foci must lie inside the unit disc")
    num = abs(a) ** 2 + abs(b) ** 2 - 2
    den = abs(a) ** 2 * abs(b) ** 2 - 1
    if den == 0 or num / den <= 0:
        raise DegenerateRadicand(f"radicand {num}/{den} is not positive")
    return Ellipse(a, b, abs(1 - a.conjugate() * b) * math.sqrt(num / den))


def composition_parameters(a, b) -> tuple[complex, complex]:
    """``(p, beta)`` with ``p = -ab`` and ``beta = (a + b - ab(conj a + conj b)) / (1 - |ab|**2)``."""
    a, b = as_point(a), as_point(b)
    p = -a * b
    beta = (a + b - a * b * (a.conjugate() + b.conjugate())) / (1 - abs(a * b) ** 2)
    return p, beta


def degree4_factor(a, b) -> tuple[ComplexPolynomial, ComplexPolynomial]:
    """Numerator ``z**2 + (conj(beta) p - beta) z - p`` and its reversed conjugate."""
    p, beta = composition_parameters(a, b)
    num = ComplexPolynomial([-p, beta.conjugate() * p - beta, 1])
    return num, reversed_conjugate(num, 2)


def degree4_product_from_foci(a, b, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> BlaschkeProduct:
    """Canonical degree-4 product whose Poncelet curve is ``degree4_ellipse(a, b)``."""
    a, b = as_point(a), as_point(b)
    if not (abs(a) < 1 and abs(b) < 1):
        raise GeometryError("foci must lie inside the unit disc")
    _, beta = composition_parameters(a, b)
    num, _ = degree4_factor(a, b)
    roots = poly_roots(num, tol)
    for z in [beta, *roots]:
        if not abs(z) < 1:
            raise FactorZeroOutsideDisc(f"factor zero {z!r} is not inside the disc")
    return BlaschkeProduct.canonical([beta, *roots])
