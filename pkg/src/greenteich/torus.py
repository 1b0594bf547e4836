"""Teichmueller space of the torus at desk scale.

A marked flat torus is the lattice <1, tau> with tau in the upper
half-plane.  Constant Beltrami coefficients are exactly the extremal ones
on tori, so the extremal dilatation k(x, y), the Teichmueller distance and
the Green function g = log k are all available in closed form, which makes
this the one genuine Teichmueller space where the distance/Green identity
can be verified exactly.

Convention: Beltrami coefficients are attached to maps w with
w_zbar = mu * w_z; the affine map realizing x -> y is z -> z + mu*zbar up
to complex-linear normalization.  The round-trip property
|extremal_beltrami(base, canonical_projection(mu, base))| = |mu| pins the
orientation bookkeeping and is asserted in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domains import banach_ball_green
from .hyperbolic import (
    COINCIDENCE_TOL,
    NEG_INF,
    check_halfplane_point,
    eq2_transform,
    green_halfplane,
)


def check_modulus(tau: complex, name: str = "tau") -> complex:
    return check_halfplane_point(tau, name)


def check_beltrami(mu: complex, name: str = "mu") -> complex:
    mu = complex(mu)
    if abs(mu) >= 1.0:
        raise ValueError(f"{name} = {mu} does not satisfy |mu| < 1")
    return mu


@dataclass(frozen=True)
class DistanceReport:
    """Extremal dilatation k, distance d = atanh k, Green value g = log k."""

    k: float
    d: float
    g: float
    witness_mu: complex

    def to_jsonable(self) -> dict:
        return {
            "k": self.k,
            "d": self.d,
            "g": self.g if math.isfinite(self.g) else "-inf",
            "witness_mu": [self.witness_mu.real, self.witness_mu.imag],
        }


def extremal_beltrami(x: complex, y: complex) -> complex:
    """Beltrami coefficient of the extremal (affine) map of marked tori.

    mu = (y - x) / (conj(x) - y), so |mu| = |y - x| / |y - conj(x)| < 1
    for moduli in the upper half-plane, and canonical_projection(mu, x)
    recovers y exactly (the affine map carries the marking of x to that
    of y).
    """
    x = check_modulus(x, "x")
    y = check_modulus(y, "y")
    if abs(y - x) < COINCIDENCE_TOL * max(1.0, abs(x)):
        return 0j
    return (y - x) / (x.conjugate() - y)


def teich_distance(x: complex, y: complex) -> DistanceReport:
    """Full distance report between marked tori: k, d = atanh k, g = log k."""
    mu = extremal_beltrami(x, y)
    k = abs(mu)
    if k == 0.0:
        return DistanceReport(k=0.0, d=0.0, g=NEG_INF, witness_mu=0j)
    return DistanceReport(k=k, d=math.atanh(k), g=math.log(k), witness_mu=mu)


def canonical_projection(mu: complex, base: complex) -> complex:
    """Push the base lattice forward by the affine map with coefficient mu.

    w(z) = z + mu * conj(z) carries <1, base> to <1+mu, base + mu*conj(base)>;
    renormalizing the first period to 1 gives the new modulus.
    """
    mu = check_beltrami(mu)
    base = check_modulus(base, "base")
    tau = (base + mu * base.conjugate()) / (1.0 + mu)
    if tau.imag <= 0:  # orientation flip cannot happen for |mu| < 1
        raise ValueError(f"projection produced a degenerate modulus {tau}")
    return tau


def lemma2_check(x: complex, base: complex, tol: float = 1e-12) -> dict:
    """Check that g(x, base) equals the Banach-ball Green value of the
    extremal Beltrami coefficient at the centered pole, i.e. that the
    fiber infimum over the Beltrami ball is attained at the extremal
    differential."""
    x = check_modulus(x, "x")
    base = check_modulus(base, "base")
    if abs(x - base) < COINCIDENCE_TOL * max(1.0, abs(base)):
        raise ValueError("x must differ from the base point")
    report = teich_distance(base, x)
    mu = extremal_beltrami(base, x)
    ball_value = banach_ball_green([mu], [0j], 1.0, "sup")
    discrepancy = abs(report.g - ball_value)
    return {
        "g_teich": report.g,
        "g_beltrami_ball": ball_value,
        "discrepancy": discrepancy,
        "pass": bool(discrepancy <= tol),
    }


def sample_moduli(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random moduli tau = a + bi, a uniform in [-2, 2], b log-uniform in
    [0.2, 5]; covers thick and thin parts without boundary degeneracy."""
    a = rng.uniform(-2.0, 2.0, size=n)
    b = np.exp(rng.uniform(math.log(0.2), math.log(5.0), size=n))
    return a + 1j * b


def eq2_identity_check(n_samples: int, seed: int = 0,
                       tol_transform: float = 1e-13,
                       tol_halfplane: float = 1e-12) -> dict:
    """Verify g = log k against the distance transform and against the
    half-plane Green function on random pairs of moduli.

    The transform comparison is an algebraic identity; the half-plane
    comparison is the nontrivial content: the extremal affine Beltrami
    coefficient realizes the pluricomplex Green function of the torus
    Teichmueller space.
    """
    if n_samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    t1 = sample_moduli(rng, n_samples)
    t2 = sample_moduli(rng, n_samples)
    worst_transform = 0.0
    worst_halfplane = 0.0
    rows = []
    for x, y in zip(t1, t2):
        rep = teich_distance(complex(x), complex(y))
        g_t = eq2_transform(rep.d)
        g_h = green_halfplane(complex(y), complex(x))
        dt = abs(rep.g - g_t) if math.isfinite(rep.g) else (
            0.0 if g_t == NEG_INF else float("inf"))
        dh = abs(rep.g - g_h) if math.isfinite(rep.g) else (
            0.0 if g_h == NEG_INF else float("inf"))
        worst_transform = max(worst_transform, dt)
        worst_halfplane = max(worst_halfplane, dh)
        rows.append({"tau1": [x.real, x.imag], "tau2": [y.real, y.imag],
                     "g": rep.g, "transform_discrepancy": dt,
                     "halfplane_discrepancy": dh})
    return {
        "n_samples": n_samples,
        "seed": seed,
        "max_transform_discrepancy": worst_transform,
        "max_halfplane_discrepancy": worst_halfplane,
        "samples": rows,
        "pass": bool(worst_transform <= tol_transform
                     and worst_halfplane <= tol_halfplane),
    }


def smoothness_probe(tau0: complex, direction: complex = 1.0,
                     h_ladder: tuple[float, ...] = (1e-2, 1e-3, 1e-4)) -> dict:
    """Finite-difference probe of the regularity of d(., tau0) along a
    direction.  Diagnostic only: on the torus the distance is smooth away
    from the diagonal, so this cannot exhibit the non-C^2 phenomenon of
    higher-dimensional spaces."""
    tau0 = check_modulus(tau0, "tau0")
    base = tau0 + 0.5j * tau0.imag  # probe point away from the diagonal
    rows = []
    for h in h_ladder:
        step = h * direction
        d0 = teich_distance(base, tau0).d
        dp = teich_distance(base + step, tau0).d
        dm = teich_distance(base - step, tau0).d
        rows.append({
            "h": h,
            "first_difference": (dp - dm) / (2 * h),
            "second_difference": (dp - 2 * d0 + dm) / (h * h),
        })
    return {"tau0": [tau0.real, tau0.imag], "probe": rows}
