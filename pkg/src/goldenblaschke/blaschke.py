"""Finite Blaschke products on the unit disc."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    CoincidentPreimages,
    InvalidBlaschke,
    NonConvergence,
    NotInterspersed,
    NotUnimodular,
    PoleProximity,
    SizeMismatch,
)
from .numerics import (
    DEFAULT_TOLERANCE,
    ComplexPolynomial,
    TolerancePolicy,
    as_point,
    cluster_roots,
    poly_roots,
    principal_arg,
    reversed_conjugate,
    sort_by_argument,
)

_IDENTIFY_RESTARTS = 8
_RETRACT_RADIUS = 0.95
_INTERIOR_MARGIN = 1e-12


@dataclass(frozen=True)
class BlaschkeProduct:
    """``prefactor * prod (z - a) / (1 - conj(a) z)`` over ``zeros``."""

    zeros: tuple
    prefactor: complex = 1 + 0j

    def __init__(self, zeros: Sequence, prefactor: complex = 1 + 0j):
        zs = tuple(as_point(a) for a in zeros)
        beta = as_point(prefactor)
        if abs(abs(beta) - 1) > DEFAULT_TOLERANCE.eps_geom:
            raise InvalidBlaschke(f"prefactor {beta!r} is not unimodular")
        for a in zs:
            if not abs(a) < 1:
                raise InvalidBlaschke(f"zero {a!r} is not inside the open unit disc")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "prefactor", beta)

    @classmethod
    def canonical(cls, free_zeros: Sequence) -> "BlaschkeProduct":
        """Prefactor 1 with a zero at the origin plus ``free_zeros``."""
        return cls((0j, *free_zeros))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def is_canonical(self) -> bool:
        return self.prefactor == 1 and any(a == 0 for a in self.zeros)

    @property
    def free_zeros(self) -> tuple:
        """Zeros with one origin zero removed (canonical products only)."""
        zs = list(self.zeros)
        zs.remove(0j)
        return tuple(zs)

    def numerator(self) -> ComplexPolynomial:
        return ComplexPolynomial.from_roots(self.zeros).scale(self.prefactor)

    def denominator(self) -> ComplexPolynomial:
        return reversed_conjugate(ComplexPolynomial.from_roots(self.zeros), self.degree)

    def __call__(self, z):
        return evaluate(self, z)

    def rotated(self, phi: float) -> "BlaschkeProduct":
        """Zeros multiplied by ``exp(i phi)``; prefactor unchanged."""
        u = cmath.exp(1j * phi)
        return BlaschkeProduct([u * a for a in self.zeros], self.prefactor)


def evaluate(B: BlaschkeProduct, z, tol: TolerancePolicy = DEFAULT_TOLERANCE):
    """Value of ``B`` at a scalar or an array of points."""
    zarr = np.asarray(z, dtype=complex)
    out = np.full(zarr.shape, B.prefactor, dtype=complex)
    for a in B.zeros:
        den = 1 - a.conjugate() * zarr
        if np.any(np.abs(den) < tol.eps_geom):
            raise PoleProximity(f"point within {tol.eps_geom:g} of the pole 1/conj({a!r})")
        out = out * (zarr - a) / den
    return complex(out) if out.ndim == 0 else out


def preimages_on_circle(
    B: BlaschkeProduct, lam: complex, tol: TolerancePolicy = DEFAULT_TOLERANCE
) -> list[complex]:
    """The ``degree`` points of the unit circle mapped to ``lam``, sorted by argument.

    They are the roots of ``N(z) - lam * D(z)``, with ``N`` and ``D`` the
    numerator and denominator polynomials of ``B``.
    """
    lam = as_point(lam)
    if abs(abs(lam) - 1) > tol.eps_geom:
        raise NotUnimodular(f"|lambda| = {abs(lam)!r}")
    resolvent = B.numerator() - B.denominator().scale(lam)
    roots = poly_roots(resolvent, tol)
    if len(cluster_roots(roots, 10 * tol.eps_root)) < len(roots):
        raise CoincidentPreimages(f"preimages of {lam!r} are not distinct")
    # the roots lie on the circle in exact arithmetic
    return sort_by_argument(r / abs(r) for r in roots)


def _check_circle_points(points, tol):
    for p in points:
        if abs(abs(p) - 1) > tol.eps_geom:
            raise NotUnimodular(f"{p!r} is not on the unit circle")


def is_interspersed(Z: Sequence, W: Sequence, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    """True iff the points of ``Z`` and ``W`` alternate around the circle."""
    Z = [as_point(z) for z in Z]
    W = [as_point(w) for w in W]
    if len(Z) != len(W) or len(Z) < 2:
        raise SizeMismatch(f"need two tuples of equal size >= 2, got {len(Z)} and {len(W)}")
    _check_circle_points(Z + W, tol)
    tagged = sorted(
        [(cmath.phase(z) % (2 * math.pi), 0) for z in Z]
        + [(cmath.phase(w) % (2 * math.pi), 1) for w in W]
    )
    angles = [t for t, _ in tagged]
    if any(b - a <= 0 for a, b in zip(angles, angles[1:])):
        return False
    labels = [lab for _, lab in tagged]
    return all(labels[k] != labels[(k + 1) % len(labels)] for k in range(len(labels)))


def _wrap(t):
    """Wrap angles to (-pi, pi]."""
    return math.pi - np.mod(math.pi - t, 2 * math.pi)


def _split(x: np.ndarray) -> np.ndarray:
    m = len(x) // 2
    return x[:m] + 1j * x[m:]


def _join(c: np.ndarray) -> np.ndarray:
    return np.concatenate([c.real, c.imag])


def _identify_residual(x: np.ndarray, Z: np.ndarray, W: np.ndarray) -> np.ndarray:
    # x holds the low coefficients of the monic q(z) = prod (z - a_j) over the
    # free zeros; on the circle B(z) = z**(1-m) q(z) / conj(q(z)).
    q = np.append(_split(x), 1.0)
    m = len(q) - 1
    res = []
    for pts in (Z, W):
        phase = (1 - m) * np.angle(pts) + 2 * np.angle(np.polynomial.polynomial.polyval(pts, q))
        res.append(_wrap(np.diff(phase)))
    return np.concatenate(res)


def _zeros_of(x: np.ndarray) -> np.ndarray:
    return np.roots(np.append(_split(x), 1.0)[::-1])


def _retract(x: np.ndarray) -> np.ndarray:
    zeros = _zeros_of(x)
    r = np.abs(zeros)
    if np.all(r < 1):
        return x
    zeros = np.where(r >= 1, zeros / r * _RETRACT_RADIUS, zeros)
    return _join(np.poly(zeros)[::-1][:-1].astype(complex))


def _damped_newton(x, Z, W, tol, target):
    """Levenberg-Marquardt damped Newton on the square argument-gap system."""
    h = 1e-7
    res = _identify_residual(x, Z, W)
    cost = res @ res
    mu = 1e-6
    for _ in range(tol.max_iter):
        if np.max(np.abs(res)) < target:
            return x
        J = np.empty((len(res), len(x)))
        for k in range(len(x)):
            e = np.zeros_like(x)
            e[k] = h
            J[:, k] = (_identify_residual(x + e, Z, W) - _identify_residual(x - e, Z, W)) / (2 * h)
        JtJ = J.T @ J
        g = J.T @ res
        while True:
            step = np.linalg.solve(JtJ + mu * np.diag(np.diag(JtJ) + 1e-12), -g)
            cand = _retract(x + step)
            cres = _identify_residual(cand, Z, W)
            ccost = cres @ cres
            if ccost < cost:
                x, res, cost = cand, cres, ccost
                mu = max(mu / 10, 1e-15)
                break
            mu *= 10
            if mu > 1e12:
                return x if np.max(np.abs(res)) < target else None
    return x if np.max(np.abs(res)) < target else None


def _continuation(Za: np.ndarray, Wa: np.ndarray, tol: TolerancePolicy, target: float):
    """Track the solution from two regular polygons (where B = z**n) to the target.

    Interleaved angles are deformed linearly; both tuples stay interspersed
    along the whole path because convex combinations of increasing sequences
    are increasing.
    """
    n = len(Za)
    tagged = sorted(
        [(cmath.phase(z) % (2 * math.pi), 0) for z in Za]
        + [(cmath.phase(w) % (2 * math.pi), 1) for w in Wa]
    )
    angles = np.array([t for t, _ in tagged])
    labels = np.array([lab for _, lab in tagged])
    regular = angles[0] + np.pi * np.arange(2 * n) / n
    x = np.zeros(2 * (n - 1))
    t, dt = 0.0, 0.125
    while t < 1.0:
        if dt < 1e-4:
            return None
        t_next = min(1.0, t + dt)
        path = np.exp(1j * ((1 - t_next) * regular + t_next * angles))
        stage_target = target if t_next == 1.0 else 1e-8
        cand = _damped_newton(x.copy(), path[labels == 0], path[labels == 1], tol, stage_target)
        if cand is None or np.any(np.abs(_zeros_of(cand)) >= 1 - _INTERIOR_MARGIN):
            dt /= 2
            continue
        x, t = cand, t_next
        dt = min(2 * dt, 0.25)
    return x


def identification_residual(B: BlaschkeProduct, Z: Sequence, W: Sequence) -> float:
    """Largest ``|B(p) - B(q)|`` over pairs drawn from the same tuple."""
    worst = 0.0
    for pts in (Z, W):
        vals = evaluate(B, np.asarray(pts, dtype=complex))
        worst = max(worst, float(np.max(np.abs(vals[:, None] - vals[None, :]))))
    return worst


def construct_identifying_product(
    Z: Sequence, W: Sequence, tol: TolerancePolicy = DEFAULT_TOLERANCE
) -> BlaschkeProduct:
    """Canonical product of degree ``n`` that is constant on ``Z`` and on ``W``.

    One zero is pinned at the origin. The remaining ``n - 1`` zeros enter
    through the coefficients of their monic polynomial, which are found by
    damped Newton on the wrapped argument gaps between consecutive points of
    each tuple, with a finite-difference Jacobian. Working in coefficients
    keeps the Jacobian regular at clustered zeros (e.g. ``z**n`` for two
    regular polygons). Restarts place the zeros near ``0.3 * centroid`` with
    deterministic offsets of size 0.05; if every restart fails,
    the solution is tracked by continuation from two regular polygons.
    """
    Z = [as_point(z) for z in Z]
    W = [as_point(w) for w in W]
    if not is_interspersed(Z, W, tol):
        raise NotInterspersed("the two tuples do not alternate around the circle")
    n = len(Z)
    Za = np.array(sort_by_argument(Z))
    Wa = np.array(sort_by_argument(W))
    centre = 0.3 * (Za.sum() + Wa.sum()) / (2 * n)
    m = n - 1
    # an argument gap of g gives |B(p) - B(q)| = 2 sin(g/2), so target ~ eps_geom
    target = min(tol.eps_geom, 1e-10) * 0.1
    candidates = []
    for attempt in range(_IDENTIFY_RESTARTS):
        rng = np.random.default_rng(1000 + attempt)
        offsets = 0.05 * np.exp(2j * np.pi * rng.uniform(size=m))
        start = centre + offsets
        candidates.append(lambda s=start: _damped_newton(
            _join(np.poly(s)[::-1][:-1].astype(complex)), Za, Wa, tol, target))
    candidates.append(lambda: _continuation(Za, Wa, tol, target))
    for solve in candidates:
        x = solve()
        if x is None:
            continue
        zeros = _zeros_of(x)
        if np.any(np.abs(zeros) >= 1 - _INTERIOR_MARGIN):
            continue
        B = BlaschkeProduct.canonical(complex(a) for a in zeros)
        if identification_residual(B, Za, Wa) <= tol.eps_geom:
            return B
    raise NonConvergence(
        f"identify solver failed after {_IDENTIFY_RESTARTS} restarts and continuation"
    )
