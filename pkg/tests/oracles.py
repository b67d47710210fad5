"""Independent reference computations used to freeze expected values.

None of these call into the code paths they check.
"""
import math

import numpy as np
from scipy.optimize import brentq

PHI = (1 + math.sqrt(5)) / 2


def second_intersection(z1, a):
    """Other point where the line from circle point ``z1`` through ``a`` meets the circle."""
    d = a - z1
    t = -2 * np.real(np.conj(z1) * d) / np.abs(d) ** 2
    return z1 + t * d


def chord_angle_sweep(a, samples=100_000):
    """Chord angles (relative to the ray [0, a]) at which ``a`` splits the chord in the golden ratio.

    Sweeps the near endpoint around the circle, brackets sign changes of
    ``|z2 - a| / |z1 - a| - PHI`` and refines each with Brent's method.
    """
    def f(psi):
        z1 = np.exp(1j * psi)
        z2 = second_intersection(z1, a)
        return np.abs(z2 - a) / np.abs(z1 - a) - PHI

    psi = np.linspace(-np.pi, np.pi, samples + 1)
    vals = f(psi)
    angles = []
    for k in np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]:
        root = brentq(f, psi[k], psi[k + 1], xtol=1e-15)
        z1 = np.exp(1j * root)
        theta = np.angle((z1 - a) / a)
        angles.append(float(theta))
    return sorted(angles, reverse=True)


def tangent_by_focal_distances(p, q, f1, f2, dist_sum):
    """Residual of the focal-distance tangency test.

    A line is tangent to an ellipse iff the product of the distances from the
    foci to the line equals the squared semi-minor axis, with both foci on the
    same side.
    """
    d = q - p
    n = d / abs(d)
    s1 = np.imag(np.conj(n) * (f1 - p))
    s2 = np.imag(np.conj(n) * (f2 - p))
    b2 = dist_sum ** 2 / 4 - abs(f1 - f2) ** 2 / 4
    return s1 * s2 - b2, s1 * s2 >= 0


def blaschke_direct(zeros, z):
    """Product of Blaschke factors, written out without polynomials."""
    out = 1 + 0j
    for a in zeros:
        out *= (z - a) / (1 - np.conj(a) * z)
    return out


def circle_preimages_brute(zeros, lam, samples=200_000):
    """Preimages of ``lam`` by scanning the argument of B along the circle."""
    t = np.linspace(0, 2 * np.pi, samples, endpoint=False)
    z = np.exp(1j * t)
    g = np.angle(blaschke_direct(zeros, z) / lam)
    hits = np.nonzero((np.sign(g[:-1]) != np.sign(g[1:])) & (np.abs(g[:-1] - g[1:]) < np.pi))[0]

    def h(s):
        return np.angle(blaschke_direct(zeros, np.exp(1j * s)) / lam)

    return sorted(np.exp(1j * brentq(h, t[k], t[k + 1], xtol=1e-14)) for k in hits)
