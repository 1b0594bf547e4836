"""Analytic-disc functional: evaluation and minimization.

The functional of an analytic disc f through x, with pole target y, is

    upsilon_f(x, y) = sum_j k_j log|zeta_j|

over the preimages zeta_j of y in the unit disc, with multiplicities k_j.
Its infimum over admissible discs f : disc -> D with f(0) = x recovers the
pluricomplex Green function on the supported model domains, and every
admissible disc yields a certified upper bound.

Discs are vector polynomials P(w) precomposed with the Moebius
reparametrization w = (zeta + a)/(1 + conj(a) zeta).  The reparametrized
family contains the exact complex geodesics of the disc and the Euclidean
ball at polynomial degree 1, which is what makes oracle-level accuracy
reachable by a local search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import warnings

import numpy as np
from scipy.optimize import minimize as _sp_minimize

from .domains import ModelDomain, as_vector, hermitian_inner
from .hyperbolic import COINCIDENCE_TOL, NEG_INF


def minimize(*args, **kwargs):
    """Nelder-Mead wrapper silencing the RuntimeWarning that scipy's
    simplex emits when the rejection objective returns +inf (infeasible
    parameters are rejected by design, so the warning carries no signal)."""
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", category=RuntimeWarning,
                                module=r"scipy\.optimize.*")
        return _sp_minimize(*args, **kwargs)

RESIDUAL_TOL = 1e-9
ROOT_MERGE_TOL = 1e-7
BOUNDARY_ROOT_TOL = 1e-9


class DegenerateDiscError(ValueError):
    """The disc is constant and equal to the target: infinitely many preimages."""


class NoAdmissibleDiscError(RuntimeError):
    """No admissible disc through the requested points could be constructed."""


@dataclass(frozen=True)
class AnalyticDisc:
    """Holomorphic map disc -> C^n, f(zeta) = P(m_a(zeta)).

    ``coefficients`` are the ascending coefficients of the vector polynomial
    P, shape (degree+1, n).  ``mobius`` is the parameter a of the
    base-point-preserving reparametrization m_a(zeta) = (zeta+a)/(1+conj(a)zeta);
    a = 0 gives a plain polynomial disc.
    """

    coefficients: np.ndarray
    mobius: complex = 0j

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.coefficients, dtype=complex))
        object.__setattr__(self, "coefficients", c)
        if abs(self.mobius) >= 1.0:
            raise ValueError("Moebius parameter must lie in the open disc")

    @property
    def degree(self) -> int:
        return self.coefficients.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.coefficients.shape[1]

    @property
    def base_point(self) -> np.ndarray:
        """f(0) = P(a)."""
        return poly_eval(self.coefficients, np.array([self.mobius]))[0]

    def eval_poly(self, w) -> np.ndarray:
        return poly_eval(self.coefficients, np.asarray(w, dtype=complex))

    def __call__(self, zeta) -> np.ndarray:
        zeta = np.asarray(zeta, dtype=complex)
        return self.eval_poly(mobius_forward(self.mobius, zeta))

    def derivative_at_zero(self) -> np.ndarray:
        """f'(0) = P'(a) (1 - |a|^2)."""
        d = self.degree
        if d == 0:
            return np.zeros(self.dim, dtype=complex)
        dcoef = self.coefficients[1:] * np.arange(1, d + 1)[:, None]
        return poly_eval(dcoef, np.array([self.mobius]))[0] * (1 - abs(self.mobius) ** 2)

    def to_jsonable(self) -> dict:
        return {
            "coefficients": [[[z.real, z.imag] for z in row]
                             for row in self.coefficients],
            "mobius": [self.mobius.real, self.mobius.imag],
        }


def poly_eval(coeffs: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Horner evaluation; coeffs (d+1, n) ascending, w (m,) -> (m, n)."""
    out = np.broadcast_to(coeffs[-1], (w.shape[0], coeffs.shape[1])).copy()
    for row in coeffs[-2::-1]:
        out *= w[:, None]
        out += row
    return out


def mobius_forward(a: complex, zeta):
    """w = (zeta + a) / (1 + conj(a) zeta), a disc automorphism with 0 -> a."""
    return (zeta + a) / (1.0 + np.conj(a) * zeta)


def mobius_inverse(a: complex, w):
    """zeta = (w - a) / (1 - conj(a) w)."""
    return (w - a) / (1.0 - np.conj(a) * w)


# -- functional evaluation ----------------------------------------------------


def containment_check(f: AnalyticDisc, D: ModelDomain,
                      n_boundary_samples: int = 64,
                      margin: float = 1e-9) -> bool:
    """True iff the defining norm of f on the boundary circle stays <= 1 - margin.

    Boundary samples of f are P at Moebius-shifted unimodular points; by the
    maximum principle this certifies interior containment at the resolution
    of the sampling for the fixed polynomial degree.
    """
    if n_boundary_samples < 64:
        raise ValueError("need at least 64 boundary samples")
    theta = 2.0 * np.pi * np.arange(n_boundary_samples) / n_boundary_samples
    w = mobius_forward(f.mobius, np.exp(1j * theta))
    vals = f.eval_poly(w)
    return bool(np.max(D.defining_norms(vals)) <= 1.0 - margin)


def _component_root_order(coeffs1d: np.ndarray, w0: complex, scale: float) -> int:
    """Vanishing order of a scalar polynomial at w0 (0 if it does not vanish)."""
    c = coeffs1d.copy()
    order = 0
    while c.shape[0] > 0:
        val = 0j
        for ck in c[::-1]:
            val = val * w0 + ck
        if abs(val) > 1e-8 * max(scale, 1.0):
            return order
        order += 1
        if c.shape[0] == 1:
            break
        c = c[1:] * np.arange(1, c.shape[0])
    return order


def find_preimages(f: AnalyticDisc, y) -> list[tuple[complex, int]]:
    """All solutions of f(zeta) = y with |zeta| < 1, with multiplicities.

    Roots of the first nonconstant component are found from the companion
    matrix and filtered by the residual of the remaining components.  Roots
    within 1e-9 of the unit circle are discarded; roots closer than 1e-7 to
    each other are merged with multiplicities summed.
    """
    y = as_vector(y, f.dim)
    diff = f.coefficients.copy()
    diff[0] = diff[0] - y
    scale = float(np.max(np.abs(f.coefficients))) + float(np.max(np.abs(y)))

    nonconstant = [j for j in range(f.dim)
                   if f.degree >= 1 and np.max(np.abs(diff[1:, j])) > 1e-13 * scale]
    if not nonconstant:
        if float(np.max(np.abs(diff[0]))) <= RESIDUAL_TOL:
            raise DegenerateDiscError("constant disc equal to the target point")
        return []

    j0 = nonconstant[0]
    cj = diff[:, j0]
    # strip negligible leading coefficients before building the companion matrix
    top = cj.shape[0] - 1
    while top > 0 and abs(cj[top]) <= 1e-13 * scale:
        top -= 1
    if top == 0:
        return []
    roots_w = np.roots(cj[top::-1])

    zeta = mobius_inverse(f.mobius, roots_w)
    keep = np.abs(zeta) <= 1.0 - BOUNDARY_ROOT_TOL
    roots_w, zeta = roots_w[keep], zeta[keep]
    if roots_w.shape[0] == 0:
        return []
    residual = np.max(np.abs(f.eval_poly(roots_w) - y), axis=1)
    ok = residual <= RESIDUAL_TOL * max(1.0, scale)
    roots_w, zeta = roots_w[ok], zeta[ok]

    # merge clustered roots
    clusters: list[list[complex]] = []
    for z in sorted(zeta, key=lambda t: (round(t.real, 12), round(t.imag, 12))):
        for cl in clusters:
            if abs(z - cl[0]) < ROOT_MERGE_TOL:
                cl.append(z)
                break
        else:
            clusters.append([z])

    out: list[tuple[complex, int]] = []
    for cl in clusters:
        z0 = complex(np.mean(cl))
        w0 = complex(mobius_forward(f.mobius, np.array([z0]))[0])
        # true multiplicity = min vanishing order over the nonconstant components
        k = min(_component_root_order(diff[:, j], w0, scale) for j in nonconstant)
        out.append((z0, max(k, 1)))
    return out


def evaluate_upsilon(f: AnalyticDisc, x, y) -> float:
    """The disc functional sum k_j log|zeta_j|; 0 (non-informative) if no preimages."""
    x = as_vector(x, f.dim)
    if float(np.max(np.abs(f.base_point - x))) > 1e-8:
        raise ValueError("disc base point f(0) does not match x")
    pre = find_preimages(f, y)
    if not pre:
        return 0.0
    total = 0.0
    for zeta, k in pre:
        if abs(zeta) < COINCIDENCE_TOL:
            return NEG_INF
        total += k * math.log(abs(zeta))
    return total


# -- search configuration -----------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    max_degree: int = 4
    n_starts: int = 16
    n_boundary_samples: int = 64
    margin: float = 1e-9
    seed: int = 0
    tol: float = 1e-4
    maxfev: int = 250

    def to_jsonable(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "n_starts": self.n_starts,
            "n_boundary_samples": self.n_boundary_samples,
            "margin": self.margin,
            "seed": self.seed,
            "tol": self.tol,
            "maxfev": self.maxfev,
        }


@dataclass
class DiscSearchResult:
    estimate: float
    witness: AnalyticDisc
    informative: bool
    n_evaluations: int


# -- slice geometry (affine geodesic seeds) -----------------------------------


def slice_discs(D: ModelDomain, x: np.ndarray, v: np.ndarray) -> list[tuple[complex, float]]:
    """Discs (c_j, R_j) in the lambda-plane with {lambda: x + lambda v in D}
    equal to the intersection of |lambda - c_j| < R_j."""
    out = []
    if D.kind in ("disc", "polydisc"):
        for xj, vj in zip(x, v):
            if abs(vj) < 1e-15:
                continue
            out.append((-xj / vj, 1.0 / abs(vj)))
    elif D.kind == "ball":
        nv2 = float(np.real(hermitian_inner(v, v)))
        c = -hermitian_inner(x, v) / nv2
        R2 = (1.0 - float(np.real(hermitian_inner(x, x)))) / nv2 + abs(c) ** 2
        out.append((c, math.sqrt(R2)))
    elif D.kind == "banach_ball":
        cen = np.asarray(D.center, dtype=complex)
        xr, vr = (x - cen) / D.radius, v / D.radius
        if D.norm == "euclidean":
            nv2 = float(np.real(hermitian_inner(vr, vr)))
            c = -hermitian_inner(xr, vr) / nv2
            R2 = (1.0 - float(np.real(hermitian_inner(xr, xr)))) / nv2 + abs(c) ** 2
            out.append((c, math.sqrt(R2)))
        else:
            for xj, vj in zip(xr, vr):
                if abs(vj) < 1e-15:
                    continue
                out.append((-xj / vj, 1.0 / abs(vj)))
    else:  # pragma: no cover
        raise NotImplementedError(D.kind)
    if not out:
        raise NoAdmissibleDiscError("direction vector vanishes")
    return out


def _inscribed_radius(discs, c: complex) -> float:
    return min(R - abs(c - cj) for cj, R in discs)


def _best_slice_frame(discs, targets: list[complex], objective) -> tuple[complex, float]:
    """Pick a lambda-disc (c, R) inside all slice discs, containing the targets,
    minimizing ``objective(c, R)``.  Derivative-free polish over c."""

    def score(theta):
        c = complex(theta[0], theta[1])
        R = _inscribed_radius(discs, c)
        if R <= 0:
            return float("inf")
        if any(abs(t - c) >= R * (1 - 1e-12) for t in targets):
            return float("inf")
        return objective(c, R)

    seeds = [np.array([np.mean([t.real for t in targets]),
                       np.mean([t.imag for t in targets])])]
    seeds.append(np.array([discs[0][0].real, discs[0][0].imag]))
    best = None
    for s in seeds:
        res = minimize(score, s, method="Nelder-Mead",
                       options={"maxfev": 400, "xatol": 1e-12, "fatol": 1e-14})
        cand = (res.fun, complex(res.x[0], res.x[1]))
        if best is None or cand[0] < best[0]:
            best = cand
    if best is None or not math.isfinite(best[0]):
        raise NoAdmissibleDiscError(
            "no affine disc through the requested points fits inside the domain")
    c = best[1]
    return c, _inscribed_radius(discs, c)


# -- parameter packing for the Green-function search --------------------------


def _build_pair_disc(theta: np.ndarray, x: np.ndarray, y: np.ndarray,
                     degree: int) -> AnalyticDisc | None:
    """Disc f = x + (w - a) Q(w) in w = m_a(zeta), interpolating f at w* = y.

    theta = [Re a, Im a, Re w*, Im w*, S...] with S the free part of
    Q(w) = (y-x)/(w*-a) + (w - w*) S(w), deg S <= degree - 2.
    """
    a = complex(theta[0], theta[1])
    wstar = complex(theta[2], theta[3])
    if abs(a) >= 1.0 - 1e-9 or abs(wstar) >= 1.0 - BOUNDARY_ROOT_TOL:
        return None
    den = wstar - a
    if abs(den) < 1e-12:
        return None
    n = x.shape[0]
    q0 = (y - x) / den
    if degree >= 2:
        s = theta[4:].reshape(degree - 1, 2, n)
        S = s[:, 0, :] + 1j * s[:, 1, :]
        # Q = q0 + (w - wstar) S
        Q = np.zeros((degree, n), dtype=complex)
        Q[1:] += S
        Q[:-1] -= wstar * S
        Q[0] += q0
    else:
        Q = q0[None, :]
    # P = x + (w - a) Q
    P = np.zeros((Q.shape[0] + 1, n), dtype=complex)
    P[1:] += Q
    P[:-1] -= a * Q
    P[0] += x
    return AnalyticDisc(P, mobius=a)


def _n_params_pair(degree: int, n: int) -> int:
    return 4 + (2 * n * (degree - 1) if degree >= 2 else 0)


def _shrink_to_feasible(theta: np.ndarray, x, y, degree, D, cfg) -> np.ndarray | None:
    """Move w* away from a (shrinking the image toward x) until containment
    holds at the configured margin; bisect to the feasibility boundary."""

    def with_s(s: float) -> np.ndarray:
        t = theta.copy()
        a = complex(t[0], t[1])
        wstar = complex(t[2], t[3])
        w2 = a + (wstar - a) / (1.0 - s)
        t[2], t[3] = w2.real, w2.imag
        return t

    def feasible(s: float) -> bool:
        t = with_s(s)
        if abs(complex(t[2], t[3])) >= 1.0 - BOUNDARY_ROOT_TOL:
            return False
        f = _build_pair_disc(t, x, y, degree)
        return f is not None and containment_check(
            f, D, cfg.n_boundary_samples, cfg.margin)

    if feasible(0.0):
        return theta
    lo, hi = 0.0, 1e-9
    while hi < 0.9 and not feasible(hi):
        lo, hi = hi, hi * 8.0
    if hi >= 0.9:
        return None
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return with_s(hi)


def minimize_disc_functional(D: ModelDomain, x, y,
                             cfg: SearchConfig = SearchConfig()) -> DiscSearchResult:
    """Minimize the disc functional over the admissible family.

    Multi-start derivative-free local search seeded at the affine complex
    geodesic through x and y; the result is a certified upper bound of the
    Green function on the supported domains, with a deterministic outcome
    for a fixed seed.
    """
    x = D.require_inside(x, "x")
    y = D.require_inside(y, "y")
    if float(np.max(np.abs(x - y))) < COINCIDENCE_TOL:
        raise ValueError("x and y must be distinct (the pole value is -inf)")

    n = x.shape[0]
    evals = [0]

    def objective(theta: np.ndarray, degree: int) -> float:
        evals[0] += 1
        f = _build_pair_disc(theta, x, y, degree)
        if f is None:
            return float("inf")
        if not containment_check(f, D, cfg.n_boundary_samples, cfg.margin):
            return float("inf")
        val = evaluate_upsilon(f, x, y)
        if val == 0.0:
            return float("inf")  # lost the interpolation root: useless disc
        return val

    # affine geodesic seed in the lambda-plane
    discs = slice_discs(D, x, y - x)

    def seed_quality(c: complex, R: float) -> float:
        a, w = -c / R, (1.0 - c) / R
        r = abs((a - w) / (1.0 - np.conj(a) * w))
        return math.log(max(r, 1e-300))

    c0, R0 = _best_slice_frame(discs, [0.0, 1.0], seed_quality)
    a0, w0 = -c0 / R0, (1.0 - c0) / R0

    best_val, best_witness, best_key = float("inf"), None, None

    def consider(theta: np.ndarray, degree: int):
        nonlocal best_val, best_witness, best_key
        val = objective(theta, degree)
        if not math.isfinite(val) and val > 0:
            return
        f = _build_pair_disc(theta, x, y, degree)
        key = tuple(np.round(f.coefficients, 12).ravel().view(float))
        if val < best_val or (val == best_val and (best_key is None or key < best_key)):
            best_val, best_witness, best_key = val, f, key

    degrees = list(range(1, cfg.max_degree + 1))
    starts_per_degree = max(1, cfg.n_starts // len(degrees))
    for degree in degrees:
        rng = np.random.default_rng((cfg.seed, degree))
        npar = _n_params_pair(degree, n)
        theta0 = np.zeros(npar)
        theta0[0], theta0[1] = a0.real, a0.imag
        theta0[2], theta0[3] = w0.real, w0.imag
        theta_init = _shrink_to_feasible(theta0, x, y, degree, D, cfg)
        starts = []
        if theta_init is not None:
            starts.append(theta_init)
            consider(theta_init, degree)
        while len(starts) < starts_per_degree:
            base = theta_init if theta_init is not None else theta0
            cand = base + rng.normal(0.0, 0.05, size=npar)
            cand2 = _shrink_to_feasible(cand, x, y, degree, D, cfg)
            starts.append(cand2 if cand2 is not None else cand)
        for s in starts:
            res = minimize(objective, s, args=(degree,), method="Nelder-Mead",
                           options={"maxfev": cfg.maxfev,
                                    "xatol": 1e-11, "fatol": 1e-12})
            consider(res.x, degree)

    if best_witness is None:
        raise NoAdmissibleDiscError(
            "no admissible disc through the requested points was found")
    estimate = evaluate_upsilon(best_witness, x, y)
    return DiscSearchResult(estimate=estimate, witness=best_witness,
                            informative=estimate != 0.0,
                            n_evaluations=evals[0])
