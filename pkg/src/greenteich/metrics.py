"""Infinitesimal invariant metrics: Azukawa and Kobayashi-Royden.

The Azukawa value at (x, xi) is extracted from the logarithmic-pole
asymptotics of the Green function along a geometric ladder of step sizes
with Richardson extrapolation; the Kobayashi-Royden value comes from the
same admissible disc family as the Green-function search, maximizing the
derivative budget r with f(0) = x, f'(0) = r xi.  Their coincidence is the
content of the Theorem-2 check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .discsearch import (
    AnalyticDisc,
    NoAdmissibleDiscError,
    SearchConfig,
    minimize,
    minimize_disc_functional,
    mobius_forward,
    slice_discs,
    _best_slice_frame,
)
from .domains import ModelDomain, as_vector
from .hyperbolic import DomainViolation


@dataclass(frozen=True)
class LimitConfig:
    lambda0: float = 1e-2
    rungs: int = 6
    tol: float = 1e-3

    def to_jsonable(self) -> dict:
        return {"lambda0": self.lambda0, "rungs": self.rungs, "tol": self.tol}


@dataclass
class AzukawaResult:
    value: float
    ladder: list
    rate: float
    converged: bool
    green_source: str


@dataclass
class KobayashiResult:
    value: float
    witness: AnalyticDisc
    derivative_budget: float


def check_tangent(D: ModelDomain, base, direction):
    base = D.require_inside(base, "base")
    direction = as_vector(direction, D.dim)
    if float(np.max(np.abs(direction))) == 0.0:
        raise ValueError("tangent direction must be nonzero")
    return base, direction


def azukawa(D: ModelDomain, base, direction,
            cfg: LimitConfig = LimitConfig(),
            search_cfg: SearchConfig = SearchConfig()) -> AzukawaResult:
    """Azukawa metric as the small-step limit of exp(g(x + t*xi, x)) / t.

    Uses the closed-form Green oracle when the domain has one, otherwise
    the disc-functional estimate; the source is recorded for provenance.
    The limsup in the definition is realized as a limit along the ladder
    (it exists on the supported domains); Richardson extrapolation on the
    last three rungs removes the leading error terms.
    """
    base, direction = check_tangent(D, base, direction)
    scale = float(np.linalg.norm(direction))
    unit = direction / scale

    if D.has_green_oracle:
        source = "oracle"

        def green(p, q):
            return D.green(p, q)
    else:
        source = "estimator"

        def green(p, q):
            return minimize_disc_functional(D, p, q, search_cfg).estimate

    lambdas = [cfg.lambda0 * 2.0 ** (-k) for k in range(cfg.rungs)]
    for lam in lambdas:
        if not D.contains(base + lam * unit):
            raise DomainViolation(
                f"ladder point at step {lam} exits the domain; shrink lambda0")
    values = [math.exp(green(base + lam * unit, base)) / lam for lam in lambdas]

    if cfg.rungs >= 3:
        v1, v2, v3 = values[-3], values[-2], values[-1]
        r1, r2 = 2 * v2 - v1, 2 * v3 - v2
        extrapolated = (4 * r2 - r1) / 3.0
        d12, d23 = abs(v2 - v1), abs(v3 - v2)
        rate = math.log2(d12 / d23) if d23 > 0 and d12 > 0 else float("inf")
        converged = d23 <= cfg.tol
    else:
        extrapolated = values[-1]
        rate = float("nan")
        converged = True
    if not converged:
        warnings.warn(f"Azukawa ladder not converged: last increment {abs(values[-1]-values[-2])}")
    return AzukawaResult(value=scale * extrapolated, ladder=values, rate=rate,
                         converged=converged, green_source=source)


# -- Kobayashi-Royden ----------------------------------------------------------


def _max_feasible_budget(D: ModelDomain, x: np.ndarray, shapes: np.ndarray,
                         margin: float) -> float:
    """Largest r >= 0 with ||x + r u_k|| <= 1 - margin at all boundary samples
    u_k (rows of ``shapes``), for the domain's defining norm."""
    cap = 1.0 - margin
    if D.kind == "banach_ball":
        cen = np.asarray(D.center, dtype=complex)
        x = (x - cen) / D.radius
        shapes = shapes / D.radius
        coordwise = D.norm == "sup"
    else:
        coordwise = D.kind in ("disc", "polydisc")
    if coordwise:
        a = np.abs(shapes) ** 2
        b = np.real(shapes * np.conj(x))
        c = np.broadcast_to((np.abs(x) ** 2 - cap * cap)[None, :], shapes.shape)
    else:
        a = np.sum(np.abs(shapes) ** 2, axis=1)
        b = np.real(np.sum(shapes * np.conj(x), axis=1))
        c = np.full(a.shape, float(np.sum(np.abs(x) ** 2)) - cap * cap)
    a, b, c = np.ravel(a), np.ravel(b), np.ravel(c)
    mask = a > 1e-300
    disc = b[mask] ** 2 - a[mask] * c[mask]
    disc = np.maximum(disc, 0.0)
    r = (-b[mask] + np.sqrt(disc)) / a[mask]
    return float(np.min(r)) if r.size else float("inf")


def kobayashi_royden(D: ModelDomain, base, direction,
                     cfg: SearchConfig = SearchConfig()) -> KobayashiResult:
    """Kobayashi-Royden metric inf{1/r : f admissible, f(0)=x, f'(0)=r*xi}.

    The search runs over shape parameters (Moebius parameter a plus a
    polynomial perturbation); for each shape the largest feasible r is
    available in closed form, so the value is always a certified upper
    bound of the family infimum.  Deterministic for a fixed seed.
    """
    base, direction = check_tangent(D, base, direction)
    scale = float(np.linalg.norm(direction))
    unit = direction / scale
    n = D.dim

    theta_b = 2.0 * np.pi * np.arange(cfg.n_boundary_samples) / cfg.n_boundary_samples
    zeta_b = np.exp(1j * theta_b)

    def shape_profile(theta: np.ndarray, degree: int):
        """Boundary samples of u(w) where f = x + r u(m_a(zeta)),
        u(w) = (w-a) xi_hat/(1-|a|^2) + (w-a)^2 S(w)/r-normalized."""
        a = complex(theta[0], theta[1])
        if abs(a) >= 1.0 - 1e-9:
            return None, None
        w = mobius_forward(a, zeta_b)
        u = np.outer((w - a) / (1.0 - abs(a) ** 2), unit)
        if degree >= 2:
            s = theta[2:].reshape(degree - 1, 2, n)
            S = s[:, 0, :] + 1j * s[:, 1, :]
            sval = np.zeros((w.shape[0], n), dtype=complex)
            for row in S[::-1]:
                sval *= w[:, None]
                sval += row
            u = u + ((w - a) ** 2)[:, None] * sval
        return a, u

    def budget(theta: np.ndarray, degree: int) -> float:
        a, u = shape_profile(theta, degree)
        if a is None:
            return 0.0
        return _max_feasible_budget(D, base, u, cfg.margin)

    # seed: affine slice disc along the direction, maximizing R - |c|^2 / R
    discs = slice_discs(D, base, unit)

    def seed_quality(c: complex, R: float) -> float:
        return -(R - abs(c) ** 2 / R)

    try:
        c0, R0 = _best_slice_frame(discs, [0.0], seed_quality)
    except NoAdmissibleDiscError:
        raise
    a0 = -c0 / R0

    best_r, best_theta, best_degree = 0.0, None, 1
    degrees = list(range(1, cfg.max_degree + 1))
    starts_per_degree = max(1, cfg.n_starts // len(degrees))
    for degree in degrees:
        rng = np.random.default_rng((cfg.seed, degree, 1))
        npar = 2 + (2 * n * (degree - 1) if degree >= 2 else 0)
        theta0 = np.zeros(npar)
        theta0[0], theta0[1] = a0.real, a0.imag
        starts = [theta0]
        while len(starts) < starts_per_degree:
            starts.append(theta0 + rng.normal(0.0, 0.05, size=npar))
        for s in starts:
            res = minimize(lambda t: -budget(t, degree), s, method="Nelder-Mead",
                           options={"maxfev": cfg.maxfev,
                                    "xatol": 1e-11, "fatol": 1e-13})
            for cand in (s, res.x):
                r = budget(cand, degree)
                if r > best_r:
                    best_r, best_theta, best_degree = r, cand.copy(), degree

    if best_theta is None or best_r <= 0.0:
        raise NoAdmissibleDiscError("no admissible disc for the tangent vector")

    # materialize the witness polynomial P(w) = x + r u(w)
    a = complex(best_theta[0], best_theta[1])
    degree = best_degree
    # u as ascending polynomial coefficients in w
    lin = np.zeros((2, n), dtype=complex)
    lin[1] = unit / (1.0 - abs(a) ** 2)
    lin[0] = -a * unit / (1.0 - abs(a) ** 2)
    if degree >= 2:
        s = best_theta[2:].reshape(degree - 1, 2, n)
        S = s[:, 0, :] + 1j * s[:, 1, :]
        quad = np.zeros((degree + 1, n), dtype=complex)
        # (w - a)^2 S(w)
        conv = np.zeros((degree + 1, n), dtype=complex)
        conv[: degree - 1] = S
        shifted = np.zeros_like(conv)
        shifted[1:] = conv[:-1]
        conv2 = np.zeros_like(conv)
        conv2[1:] = shifted[:-1]
        quad = conv2 - 2 * a * shifted + (a * a) * conv
        u_coeffs = quad
        u_coeffs[:2] += lin
    else:
        u_coeffs = lin
    P = best_r * u_coeffs
    P[0] += base
    witness = AnalyticDisc(P, mobius=a)
    return KobayashiResult(value=scale / best_r, witness=witness,
                           derivative_budget=best_r)


def theorem2_check(D: ModelDomain, samples: list[tuple],
                   limit_cfg: LimitConfig = LimitConfig(),
                   search_cfg: SearchConfig = SearchConfig(),
                   tol: float = 5e-3) -> dict:
    """Compare the Azukawa and Kobayashi-Royden values on tangent samples.

    PASS iff the maximum discrepancy is within the combined tolerance,
    which is dominated by the optimization gap of the disc search.
    """
    if not samples:
        raise ValueError("need at least one tangent sample")
    rows = []
    worst = 0.0
    for base, direction in samples:
        az = azukawa(D, base, direction, limit_cfg, search_cfg)
        kr = kobayashi_royden(D, base, direction, search_cfg)
        gap = abs(az.value - kr.value)
        worst = max(worst, gap)
        rows.append({
            "base": [[z.real, z.imag] for z in as_vector(base, D.dim)],
            "direction": [[z.real, z.imag] for z in as_vector(direction, D.dim)],
            "azukawa": az.value,
            "kobayashi_royden": kr.value,
            "discrepancy": gap,
            "green_source": az.green_source,
        })
    return {
        "domain": D.describe(),
        "n_samples": len(samples),
        "max_discrepancy": worst,
        "tolerance": tol,
        "samples": rows,
        "pass": bool(worst <= tol),
    }
