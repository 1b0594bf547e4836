"""Hamilton-Krushkal extremality criterion and the certificate check.

The criterion pairs a Beltrami field mu against integrable holomorphic
trial densities phi:

    hk(mu) = sup_phi (1/2) |integral mu phi dz ^ dzbar| / ||phi||_1,

with the convention dz ^ dzbar = -2i dx dy, so that the constant pairing
on the torus evaluates exactly to |mu|.  Extremality holds iff hk equals
the sup norm of mu; truncated bases can only certify extremality, never
definitively refute it, so the negative verdict stays provisional.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from .discsearch import minimize

from .torus import canonical_projection, check_beltrami, check_modulus, teich_distance


class DegenerateBasisError(ValueError):
    """All basis elements have numerically vanishing L1 norm."""


# -- quadrature ----------------------------------------------------------------


@dataclass(frozen=True)
class Quadrature:
    """Midpoint quadrature: nodes (complex) and positive cell weights."""

    nodes: np.ndarray
    weights: np.ndarray
    domain: str  # "torus" | "disc"

    @property
    def area(self) -> float:
        return float(np.sum(self.weights))


def torus_quadrature(tau: complex = 1j, n1: int = 128, n2: int = 128) -> Quadrature:
    """Uniform midpoint grid on the fundamental parallelogram {s + t tau}."""
    tau = check_modulus(tau)
    if min(n1, n2) < 32:
        raise ValueError("quadrature grid resolution must be at least 32x32")
    s = (np.arange(n1) + 0.5) / n1
    t = (np.arange(n2) + 0.5) / n2
    S, T = np.meshgrid(s, t, indexing="ij")
    nodes = (S + T * tau).ravel()
    weights = np.full(nodes.shape, tau.imag / (n1 * n2))
    return Quadrature(nodes=nodes, weights=weights, domain="torus")


def disc_polar_quadrature(n_r: int = 128, n_theta: int = 128,
                          ratio: float = 0.95) -> Quadrature:
    """Polar midpoint grid on the unit disc with geometric radial refinement
    near the boundary, where integrability of the trial densities is delicate.
    Cell areas are exact, so constants integrate exactly."""
    if min(n_r, n_theta) < 32:
        raise ValueError("quadrature grid resolution must be at least 32x32")
    k = np.arange(n_r + 1)
    edges = (1.0 - ratio ** k) / (1.0 - ratio ** n_r)
    r_mid = 0.5 * (edges[:-1] + edges[1:])
    areas_r = 0.5 * (edges[1:] ** 2 - edges[:-1] ** 2) * (2 * np.pi / n_theta)
    theta = 2 * np.pi * (np.arange(n_theta) + 0.5) / n_theta
    R, TH = np.meshgrid(r_mid, theta, indexing="ij")
    nodes = (R * np.exp(1j * TH)).ravel()
    weights = np.repeat(areas_r, n_theta)
    return Quadrature(nodes=nodes, weights=weights, domain="disc")


# -- Beltrami fields and trial bases -------------------------------------------


@dataclass(frozen=True)
class BeltramiField:
    """Constant coefficient, or cell values sampled on a quadrature grid."""

    kind: str  # "constant" | "grid"
    constant: complex = 0j
    values: np.ndarray | None = None

    @classmethod
    def from_constant(cls, mu: complex) -> "BeltramiField":
        mu = complex(mu)
        if abs(mu) >= 1.0:
            raise ValueError("Beltrami coefficient must satisfy |mu| < 1")
        return cls(kind="constant", constant=mu)

    @classmethod
    def from_function(cls, fn, quad: Quadrature) -> "BeltramiField":
        vals = np.asarray([fn(z) for z in quad.nodes], dtype=complex)
        if float(np.max(np.abs(vals))) >= 1.0:
            raise ValueError("Beltrami field must have sup norm < 1")
        return cls(kind="grid", values=vals)

    @property
    def sup_norm(self) -> float:
        if self.kind == "constant":
            return abs(self.constant)
        return float(np.max(np.abs(self.values)))

    def sample(self, quad: Quadrature) -> np.ndarray:
        if self.kind == "constant":
            return np.full(quad.nodes.shape, self.constant)
        if self.values.shape != quad.nodes.shape:
            raise ValueError("grid field does not match the quadrature grid")
        return self.values


@dataclass(frozen=True)
class QuadDiffBasis:
    """Trial densities given by monomial coefficients on the reference domain."""

    elements: tuple
    domain: str  # "torus" | "disc"

    @classmethod
    def monomials(cls, degree: int, domain: str) -> "QuadDiffBasis":
        elems = tuple(tuple(0.0 if j != d else 1.0 for j in range(d + 1))
                      for d in range(degree + 1))
        return cls(elements=elems, domain=domain)

    def evaluate(self, nodes: np.ndarray) -> np.ndarray:
        rows = []
        for coeffs in self.elements:
            val = np.zeros(nodes.shape, dtype=complex)
            for c in coeffs[::-1]:
                val = val * nodes + c
            rows.append(val)
        return np.asarray(rows)


@dataclass
class ExtremalityReport:
    hk_value: float
    sup_norm: float
    verdict: str  # "extremal" | "not_extremal" | "inconclusive"
    achieving_coefficients: list
    note: str

    def to_jsonable(self) -> dict:
        return {
            "hk_value": self.hk_value,
            "sup_norm": self.sup_norm,
            "verdict": self.verdict,
            "achieving_coefficients": self.achieving_coefficients,
            "note": self.note,
        }


# -- the functional -----------------------------------------------------------


def hk_functional(mu: BeltramiField, basis: QuadDiffBasis, quad: Quadrature,
                  n_starts: int = 8, seed: int = 0,
                  maxfev: int = 2000) -> tuple[float, np.ndarray]:
    """Supremum of the pairing ratio over the span of the basis.

    Returns (value, achieving coefficient vector).  The ratio form makes the
    value invariant under scaling of the coefficients, avoiding the
    nonsmooth L1-sphere constraint; maximization is a seeded multi-start
    derivative-free search over the coefficient vector.
    """
    if not basis.elements:
        raise DegenerateBasisError("basis must be nonempty")
    if basis.domain != quad.domain:
        raise ValueError("basis and quadrature reference different domains")
    B = basis.evaluate(quad.nodes)          # (k, m)
    w = quad.weights
    l1 = np.abs(B) @ w
    if float(np.max(l1)) < 1e-12:
        raise DegenerateBasisError("all basis elements have vanishing L1 norm")
    m = mu.sample(quad)
    pairing = B @ (m * w)                   # (k,)

    def ratio(c: np.ndarray) -> float:
        num = abs(np.dot(c, pairing))
        den = float(np.abs(c @ B) @ w)
        return num / den if den > 1e-300 else 0.0

    k = len(basis.elements)
    if k == 1:
        c = np.ones(1, dtype=complex)
        return float(abs(pairing[0]) / l1[0]), c

    def objective(theta: np.ndarray) -> float:
        c = theta[:k] + 1j * theta[k:]
        nc = np.linalg.norm(c)
        if nc < 1e-12:
            return 0.0
        return -ratio(c / nc)

    rng = np.random.default_rng(seed)
    starts = []
    for j in range(k):
        e = np.zeros(2 * k)
        e[j] = 1.0
        starts.append(e)
    while len(starts) < max(n_starts, k):
        starts.append(rng.normal(0.0, 1.0, size=2 * k))

    best_val, best_c = 0.0, np.zeros(k, dtype=complex)
    best_c[0] = 1.0
    for s in starts:
        res = minimize(objective, s, method="Nelder-Mead",
                       options={"maxfev": maxfev, "xatol": 1e-10, "fatol": 1e-12})
        val = -res.fun
        if val > best_val:
            c = res.x[:k] + 1j * res.x[k:]
            best_val, best_c = val, c / np.linalg.norm(c)
    return float(best_val), best_c


def is_extremal(mu: BeltramiField, basis: QuadDiffBasis, quad: Quadrature,
                tol: float = 1e-6, gap_bound: float = 1e-2,
                n_starts: int = 8, seed: int = 0) -> ExtremalityReport:
    """Extremality verdict from the Hamilton-Krushkal value.

    ``extremal`` iff the value reaches the sup norm within tol;
    ``not_extremal`` (provisional: the basis is truncated) iff the value
    falls short by more than gap_bound; inconclusive otherwise.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    value, coeffs = hk_functional(mu, basis, quad, n_starts=n_starts, seed=seed)
    sup = mu.sup_norm
    if sup == 0.0 or value >= sup - tol:
        verdict = "extremal"
        note = "pairing value reaches the sup norm within tolerance"
    elif value < sup - gap_bound:
        verdict = "not_extremal"
        note = ("provisional: a truncated basis can certify extremality "
                "but never definitively refute it")
    else:
        verdict = "inconclusive"
        note = "pairing value within the configured gap bound of the sup norm"
    return ExtremalityReport(
        hk_value=value, sup_norm=sup, verdict=verdict,
        achieving_coefficients=[[z.real, z.imag] for z in np.atleast_1d(coeffs)],
        note=note)


def theorem3_certificate_check(mu0: complex, base: complex,
                               t_ladder: tuple[float, ...] = (0.1, 0.01, 0.001),
                               tol_ratio: float = 1e-10,
                               tol_norm: float = 1e-12) -> dict:
    """Check the plurisubharmonic extremality certificate on the torus.

    The certificate is f(x) = k(x, base), logarithmically plurisubharmonic
    with f(base) = 0.  Along the ray t -> projection(t * mu0/|mu0|) the
    ratio f/|t| must tend to 1 (on the torus it is 1 exactly at every rung),
    and f at the projection of mu0 itself must equal |mu0|.
    """
    mu0 = check_beltrami(mu0)
    base = check_modulus(base, "base")
    if abs(mu0) == 0.0:
        raise ValueError("mu0 must be nonzero")
    ladder = tuple(t_ladder)
    if not ladder or any(not (0.0 < t < 1.0) for t in ladder):
        raise ValueError("ladder values must lie in (0, 1)")
    if any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("ladder must be decreasing")

    nu = mu0 / abs(mu0)
    ratios = []
    for t in ladder:
        x = canonical_projection(t * nu, base)
        ratios.append(teich_distance(x, base).k / t)
    x_full = canonical_projection(mu0, base)
    f_full = teich_distance(x_full, base).k
    ratio_dev = max(abs(r - 1.0) for r in ratios)
    norm_dev = abs(f_full - abs(mu0))
    return {
        "ladder": list(ladder),
        "ratios": ratios,
        "max_ratio_deviation": ratio_dev,
        "f_at_mu0": f_full,
        "sup_norm": abs(mu0),
        "norm_deviation": norm_dev,
        "pass": bool(ratio_dev <= tol_ratio and norm_dev <= tol_norm),
    }


# -- canned fields for the CLI and tests ---------------------------------------


def torus_half_cell_field(k: float, quad: Quadrature) -> BeltramiField:
    """+k on the left half of the fundamental cell, -k on the right half."""
    vals = np.where(np.real(quad.nodes) % 1.0 < 0.5, k, -k).astype(complex)
    return BeltramiField(kind="grid", values=vals)


def disc_teichmueller_field(k: float, phi0_coeffs=(1.0,),
                            quad: Quadrature | None = None) -> BeltramiField:
    """Teichmueller-form field k * conj(phi0)/|phi0| for a monomial density."""
    if quad is None:
        quad = disc_polar_quadrature()
    coeffs = tuple(phi0_coeffs)

    def fn(z):
        val = 0j
        for c in coeffs[::-1]:
            val = val * z + c
        if abs(val) < 1e-300:
            return complex(k)
        return k * np.conj(val) / abs(val)

    return BeltramiField.from_function(fn, quad)


def disc_angular_field(k: float, winding: int = 4,
                       quad: Quadrature | None = None) -> BeltramiField:
    """Sign-alternating angular pattern k * e^{i * winding * theta}."""
    if quad is None:
        quad = disc_polar_quadrature()

    def fn(z):
        if abs(z) < 1e-300:
            return complex(k)
        return k * (z / abs(z)) ** winding

    return BeltramiField.from_function(fn, quad)
