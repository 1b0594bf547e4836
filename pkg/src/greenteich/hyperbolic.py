"""Hyperbolic geometry of the unit disc and the upper half-plane.

All distances use the curvature -4 normalization

    d(x, y) = atanh(rho(x, y)) = (1/2) log((1 + rho) / (1 - rho)),

which is the unique scaling under which the Green function of the disc
equals log tanh of the distance.  Poles of Green functions are legitimate
values and are represented by ``-inf``, never by an exception.
"""

from __future__ import annotations

import cmath
import math

NEG_INF = float("-inf")

#: points closer than this are treated as coincident (pole detection)
COINCIDENCE_TOL = 1e-12

#: defining-norm values within this of 1 count as "on the boundary"
BOUNDARY_TOL = 1e-10


class DomainViolation(ValueError):
    """A point lies outside (or on the boundary of) its declared domain."""


def check_disc_point(z: complex, name: str = "point") -> complex:
    z = complex(z)
    if abs(z) >= 1.0 - BOUNDARY_TOL:
        raise DomainViolation(f"{name} = {z} is not strictly inside the unit disc")
    return z


def check_halfplane_point(z: complex, name: str = "point") -> complex:
    z = complex(z)
    if z.imag <= BOUNDARY_TOL:
        raise DomainViolation(f"{name} = {z} is not in the open upper half-plane")
    return z


def pseudo_hyperbolic_rho(x: complex, y: complex) -> float:
    """Pseudo-hyperbolic distance |(x - y) / (1 - conj(y) x)| on the disc."""
    x = check_disc_point(x, "x")
    y = check_disc_point(y, "y")
    if abs(x - y) < COINCIDENCE_TOL:
        return 0.0
    return abs((x - y) / (1.0 - y.conjugate() * x))


def disc_distance(x: complex, y: complex) -> float:
    """Hyperbolic distance atanh(rho(x, y)) on the unit disc."""
    return math.atanh(pseudo_hyperbolic_rho(x, y))


def green_disc(x: complex, y: complex) -> float:
    """Green function of the unit disc, log rho(x, y); -inf at the pole."""
    rho = pseudo_hyperbolic_rho(x, y)
    if rho == 0.0:
        return NEG_INF
    return math.log(rho)


def eq2_transform(d: float) -> float:
    """Map a hyperbolic distance d >= 0 to log tanh d.

    This is the transform turning the invariant distance into the Green
    function; it sends 0 to -inf and +inf to 0 from below.
    """
    if d < 0.0:
        raise ValueError(f"distance must be nonnegative, got {d}")
    if d == 0.0:
        return NEG_INF
    if math.isinf(d):
        return 0.0
    # log tanh d = log1p(-e^{-2d}) - log1p(e^{-2d}), stable for large d
    e = math.exp(-2.0 * d)
    return math.log1p(-e) - math.log1p(e)


def cayley(z: complex) -> complex:
    """Cayley transform (z - i) / (z + i), upper half-plane -> unit disc."""
    z = check_halfplane_point(z, "z")
    return (z - 1j) / (z + 1j)


def cayley_inverse(w: complex) -> complex:
    """Inverse Cayley transform i (1 + w) / (1 - w), disc -> half-plane."""
    w = check_disc_point(w, "w")
    return 1j * (1.0 + w) / (1.0 - w)


def halfplane_rho(z1: complex, z2: complex) -> float:
    """Pseudo-hyperbolic distance |(z1 - z2) / (z1 - conj(z2))| on U."""
    z1 = check_halfplane_point(z1, "z1")
    z2 = check_halfplane_point(z2, "z2")
    if abs(z1 - z2) < COINCIDENCE_TOL * max(1.0, abs(z1)):
        return 0.0
    return abs((z1 - z2) / (z1 - z2.conjugate()))


def halfplane_distance(z1: complex, z2: complex) -> float:
    """Hyperbolic distance on the upper half-plane (curvature -4)."""
    return math.atanh(halfplane_rho(z1, z2))


def green_halfplane(z1: complex, z2: complex) -> float:
    """Green function of the upper half-plane, log of halfplane_rho."""
    rho = halfplane_rho(z1, z2)
    if rho == 0.0:
        return NEG_INF
    return math.log(rho)


def disc_automorphism(a: complex, theta: float = 0.0):
    """Return the disc automorphism z -> e^{i theta} (z - a) / (1 - conj(a) z)."""
    a = check_disc_point(a, "a")
    phase = cmath.exp(1j * theta)

    def mobius(z: complex) -> complex:
        return phase * (z - a) / (1.0 - a.conjugate() * z)

    return mobius
