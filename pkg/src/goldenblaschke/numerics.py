"""Complex polynomials, a simultaneous-iteration root finder and 1-D real solves.

Plane points are plain Python ``complex`` values throughout the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import brentq

from .errors import BracketInvalid, DegreeZero, GeometryError, NonConvergence

_RESTARTS = 3


@dataclass(frozen=True)
class TolerancePolicy:
    eps_root: float = 1e-12
    eps_geom: float = 1e-9
    eps_count: float = 1e-9
    max_iter: int = 200

    def __post_init__(self):
        for name in ("eps_root", "eps_geom", "eps_count"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f"max_iter must be a positive integer, got {self.max_iter!r}")

    def as_dict(self) -> dict:
        return {
            "eps_root": self.eps_root,
            "eps_geom": self.eps_geom,
            "eps_count": self.eps_count,
            "max_iter": self.max_iter,
        }


DEFAULT_TOLERANCE = TolerancePolicy()


def as_point(z) -> complex:
    """Coerce ``z`` to ``complex``, rejecting NaN and infinities."""
    w = complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise GeometryError(f"non-finite point {z!r}")
    return w


def principal_arg(z: complex) -> float:
    """Argument in (-pi, pi]."""
    t = math.atan2(z.imag, z.real)
    return math.pi if t == -math.pi else t


def sort_by_argument(points: Iterable[complex]) -> list[complex]:
    return sorted(points, key=lambda z: (principal_arg(z), abs(z)))


@dataclass(frozen=True)
class ComplexPolynomial:
    """Dense polynomial, coefficients in ascending degree.

    Trailing (highest-degree) zero coefficients are stripped on construction,
    so ``coeffs[-1]`` is nonzero unless the polynomial is identically zero.
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        cs = [as_point(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0j]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return poly_eval(self, z)

    def __mul__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return ComplexPolynomial(npoly.polymul(self.coeffs, other.coeffs))

    def __sub__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return ComplexPolynomial(npoly.polysub(self.coeffs, other.coeffs))

    def scale(self, s: complex) -> "ComplexPolynomial":
        return ComplexPolynomial(s * c for c in self.coeffs)

    def monic(self) -> "ComplexPolynomial":
        return self.scale(1 / self.coeffs[-1])

    @classmethod
    def from_roots(cls, roots: Sequence[complex]) -> "ComplexPolynomial":
        p = [1 + 0j]
        for r in roots:
            p = npoly.polymul(p, [-r, 1])
        return cls(p)


def _coerce_poly(p) -> ComplexPolynomial:
    return p if isinstance(p, ComplexPolynomial) else ComplexPolynomial(p)


def poly_eval(p, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    p = _coerce_poly(p)
    acc = np.zeros_like(np.asarray(z, dtype=complex))
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return complex(acc) if acc.ndim == 0 else acc


def reversed_conjugate(p, n: int) -> ComplexPolynomial:
    """Return q with ``q_k = conj(p_{n-k})``, i.e. ``z**n * conj(p(1/conj(z)))``."""
    p = _coerce_poly(p)
    if n < p.degree:
        raise GeometryError(f"n={n} is below the degree {p.degree}")
    padded = list(p.coeffs) + [0j] * (n - p.degree)
    return ComplexPolynomial(c.conjugate() for c in reversed(padded))


def _residual_ok(c: np.ndarray, roots: np.ndarray, eps: float) -> bool:
    n = len(c) - 1
    scale = np.max(np.abs(c))
    vals = np.abs(npoly.polyval(roots, c))
    bound = eps * scale * np.maximum(1.0, np.abs(roots)) ** n
    return bool(np.all(vals <= bound))


def _aberth(c: np.ndarray, z: np.ndarray, tol: TolerancePolicy) -> np.ndarray | None:
    """Iterate until each root's residual hits the rounding floor or its step stalls."""
    dc = npoly.polyder(c)
    absc = np.abs(c)
    u = np.finfo(float).eps
    n = len(z)
    eye = np.eye(n, dtype=bool)
    active = np.ones(n, dtype=bool)
    for _ in range(tol.max_iter):
        pv = npoly.polyval(z, c)
        floor = 8 * n * u * npoly.polyval(np.abs(z), absc)
        active &= np.abs(pv) > floor
        if not active.any():
            break
        dv = npoly.polyval(z, dc)
        with np.errstate(divide="ignore", invalid="ignore"):
            diff = z[:, None] - z[None, :]
            diff[eye] = 1.0
            inv = 1.0 / diff
            inv[eye] = 0.0
            ratio = pv / dv
            step = ratio / (1.0 - ratio * inv.sum(axis=1))
        step = np.where(np.isfinite(step) & active, step, 0.0)
        z = z - step
        if not np.all(np.isfinite(z)):
            return None
        active &= np.abs(step) > 4 * u * np.maximum(np.abs(z), 1e-300)
        if not active.any():
            break
    return z if _residual_ok(c, z, tol.eps_root) else None


def _newton_polish(c: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    dc = npoly.polyder(c)
    z = z.copy()
    for _ in range(steps):
        pv = npoly.polyval(z, c)
        dv = npoly.polyval(z, dc)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = z - pv / dv
        better = np.isfinite(cand) & (np.abs(npoly.polyval(cand, c)) < np.abs(pv))
        z = np.where(better, cand, z)
    return z


def _backward_error(c: np.ndarray, z: np.ndarray) -> float:
    rebuilt = c[-1] * npoly.polyfromroots(z)
    return float(np.max(np.abs(rebuilt - c)))


def _is_multiple_root(c: np.ndarray, a: complex, m: int) -> bool:
    """True if p(a), p'(a), ..., p^(m-1)(a) all vanish to rounding accuracy."""
    absc = np.abs(c)
    floor = 64 * np.finfo(float).eps
    for j in range(m):
        t = abs(npoly.polyval(a, npoly.polyder(c, j)))
        size = npoly.polyval(abs(a), npoly.polyder(absc, j))
        if t > floor * size:
            return False
    return True


def _multiple_root_centre(c: np.ndarray, pts: np.ndarray) -> complex | None:
    m = len(pts)
    centre = pts.mean()
    spread = float(np.max(np.abs(pts - centre)))
    # an m-fold root is a simple root of the (m-1)-th derivative
    d0 = npoly.polyder(c, m - 1)
    d1 = npoly.polyder(d0)
    for _ in range(8):
        dv = npoly.polyval(centre, d1)
        if dv == 0:
            break
        cand = centre - npoly.polyval(centre, d0) / dv
        if not abs(cand - pts.mean()) <= 2 * spread + 1e-300:
            break
        centre = cand
    return centre if _is_multiple_root(c, centre, m) else None


def _snap_multiple_roots(c: np.ndarray, z: np.ndarray, eps: float) -> np.ndarray:
    """Collapse clusters that approximate a multiple root onto that root.

    Simultaneous iteration resolves an m-fold root only to about eps**(1/m);
    a cluster is replaced by one refined centre when p and its first m-1
    derivatives vanish there, largest clusters first.  Roots left over are
    near a cluster are then polished on the deflated polynomial instead.
    """
    z = z.copy()
    frozen = np.zeros(len(z), dtype=bool)
    for i in range(len(z)):
        if frozen[i]:
            continue
        free = np.nonzero(~frozen)[0]
        near = free[np.argsort(np.abs(z[free] - z[i]), kind="stable")]
        near = near[np.abs(z[near] - z[i]) < 0.5 * max(1.0, abs(z[i]))]
        for m in range(len(near), 1, -1):
            centre = _multiple_root_centre(c, z[near[:m]])
            if centre is None:
                continue
            closest = np.argsort(np.abs(z - centre), kind="stable")[:m]
            if set(closest) == set(near[:m]):
                z[near[:m]] = centre
                frozen[near[:m]] = True
                break
    if frozen.any() and not frozen.all():
        quotient, _ = npoly.polydiv(c, npoly.polyfromroots(z[frozen]))
        centres = z[frozen]
        idx = [k for k in np.nonzero(~frozen)[0]
               if np.min(np.abs(centres - z[k])) < 0.5 * max(1.0, abs(z[k]))]
        if idx:
            for k, r in zip(idx, _newton_polish(quotient, z[idx])):
                if _residual_ok(c, np.array([r]), eps):
                    z[k] = r
    return z


def poly_roots(p, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> list[complex]:
    """All ``degree`` roots of ``p`` (with multiplicity), sorted by argument.

    Aberth-Ehrlich iteration seeded on a circle of radius
    ``1 + max|c_k| / |c_n|`` with a random phase, followed by a Newton polish
    and a collapse of numerically multiple roots.  Up to three restarts with fresh phases are tried before giving up.
    """
    p = _coerce_poly(p)
    if p.degree < 1:
        raise DegreeZero("constant polynomial has no roots")
    c = np.array(p.coeffs, dtype=complex)
    # exact zero roots are split off so the iteration never has to find them
    nzero = int(np.argmax(c != 0))
    c = c[nzero:]
    n = len(c) - 1
    roots = [0j] * nzero
    if n == 0:
        return sort_by_argument(roots)
    if n == 1:
        return sort_by_argument(roots + [complex(-c[0] / c[1])])

    radius = 1.0 + np.max(np.abs(c[:-1])) / abs(c[-1])
    for attempt in range(_RESTARTS + 1):
        rng = np.random.default_rng(attempt)
        phase = rng.uniform(0, 2 * np.pi)
        z0 = radius * np.exp(1j * (phase + 2 * np.pi * np.arange(n) / n + 0.4 / n))
        found = _aberth(c, z0, tol)
        if found is None:
            continue
        polished = _newton_polish(c, found)
        if _backward_error(c, polished) < _backward_error(c, found):
            found = polished
        found = _snap_multiple_roots(c, found, tol.eps_root)
        if _residual_ok(c, found, tol.eps_root):
            return sort_by_argument(roots + [complex(r) for r in found])
    raise NonConvergence(f"root finder failed for degree {n} after {_RESTARTS} restarts")


def cluster_roots(roots: Sequence[complex], radius: float) -> list[tuple[complex, int]]:
    """Merge roots closer than ``radius``; returns ``(mean, multiplicity)`` pairs."""
    groups: list[list[complex]] = []
    for r in roots:
        for g in groups:
            if any(abs(r - s) < radius for s in g):
                g.append(r)
                break
        else:
            groups.append([r])
    return [(sum(g) / len(g), len(g)) for g in groups]


def solve_real_1d(
    f: Callable[[float], float],
    bracket: tuple[float, float],
    tol: TolerancePolicy = DEFAULT_TOLERANCE,
) -> float:
    """Root of a continuous real function on a sign-changing bracket (Brent's method)."""
    lo, hi = map(float, bracket)
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise BracketInvalid(f"f({lo})={flo:g} and f({hi})={fhi:g} share a sign")
    x = brentq(f, min(lo, hi), max(lo, hi), xtol=1e-15, rtol=4 * np.finfo(float).eps,
               maxiter=max(tol.max_iter, 100))
    if abs(f(x)) > tol.eps_geom:
        raise NonConvergence(f"|f(x)|={abs(f(x)):g} exceeds eps_geom at x={x!r}")
    return x
