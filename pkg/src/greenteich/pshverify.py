"""Verification harness for plurisubharmonicity and related properties.

Checks are numerical and sample-based: the sub-mean-value inequality on
complex lines, monotone non-increase of Green values under holomorphic
maps, and the boundary-limit behavior that makes a domain hyperconvex.
Negative controls are part of the contract: the harness must detect
violations, not merely confirm known truths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import ModelDomain, as_vector
from .hyperbolic import NEG_INF, DomainViolation

SUBMEAN_TOL = 1e-8


@dataclass(frozen=True)
class ScalarField:
    """An extended-real-valued function on a domain (-inf allowed)."""

    evaluator: object  # callable: ComplexVector -> float
    domain: ModelDomain | None = None
    name: str = "field"

    def __call__(self, x) -> float:
        return float(self.evaluator(x))


def submean_check(u: ScalarField, x, xi, r: float, n_samples: int = 64,
                  tol: float = SUBMEAN_TOL) -> dict:
    """Sub-mean-value inequality of u at x on the complex line through xi.

    lhs = u(x); rhs = average of u over n equispaced points x + r e^{i t} xi.
    Averages are taken in the extended reals: any -inf sample forces
    rhs = -inf, and the check then demands lhs = -inf as well.
    """
    x = as_vector(x)
    xi = as_vector(xi, x.shape[0])
    if u.domain is not None:
        for t in np.linspace(0.0, 2 * np.pi, 8, endpoint=False):
            if not u.domain.contains(x + r * np.exp(1j * t) * xi):
                raise DomainViolation("sampling disc exits the domain")
    lhs = u(x)
    samples = [u(x + r * np.exp(2j * np.pi * k / n_samples) * xi)
               for k in range(n_samples)]
    if any(s == NEG_INF for s in samples):
        rhs = NEG_INF
        ok = lhs == NEG_INF
    else:
        rhs = float(np.mean(samples))
        ok = lhs <= rhs + tol
    return {"lhs": lhs, "rhs": rhs, "pass": bool(ok)}


def contraction_check(green_source, green_target, h, sample_pairs,
                      tol: float = 1e-9) -> dict:
    """Verify g_target(h(x), h(y)) <= g_source(x, y) on sample pairs.

    This is the non-increase of the Green function under a holomorphic map
    h from the source into the target domain: the pullback of the target
    Green function competes in the source supremum, so the source value
    can only be larger.  Coincident pairs where both sides are -inf are
    skipped and reported.
    """
    worst = None
    skipped = 0
    failures = 0
    for x, y in sample_pairs:
        gs = green_source(x, y)
        gt = green_target(h(x), h(y))
        if gs == NEG_INF and gt == NEG_INF:
            skipped += 1
            continue
        gap = gs - gt
        if worst is None or gap < worst[0]:
            worst = (gap, x, y)
        if gap < -tol:
            failures += 1
    return {
        "n_pairs": len(sample_pairs),
        "skipped_degenerate": skipped,
        "failures": failures,
        "worst_gap": None if worst is None else worst[0],
        "worst_pair": None if worst is None else [str(worst[1]), str(worst[2])],
        "pass": bool(failures == 0),
    }


def hyperconvexity_probe(u: ScalarField, start, direction, n_steps: int = 32,
                         tail_tol: float = 0.05) -> dict:
    """Check u < 0 and monotone increase to 0 along a ray to the boundary.

    The ray is start + t * direction with t approaching the boundary
    geometrically; monotonicity is asserted on the sampled sequence only.
    """
    start = as_vector(start)
    direction = as_vector(direction, start.shape[0])
    if u.domain is not None:
        # boundary parameter: largest t with start + t*direction inside
        lo, hi = 0.0, 1.0
        while u.domain.contains(start + hi * direction) and hi < 1e6:
            hi *= 2.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if u.domain.contains(start + mid * direction):
                lo = mid
            else:
                hi = mid
        t_max = lo
    else:
        t_max = 1.0
    # geometric approach to the boundary
    fractions = 1.0 - 0.5 ** np.arange(1, n_steps + 1)
    ts = t_max * fractions
    values = [u(start + t * direction) for t in ts]
    negative = all(v < 0 for v in values)
    monotone = all(b >= a - 1e-13 for a, b in zip(values, values[1:]))
    tends_to_zero = values[-1] > -tail_tol
    return {
        "tail_values": values[-3:],
        "negative": bool(negative),
        "monotone": bool(monotone),
        "tends_to_zero": bool(tends_to_zero),
        "pass": bool(negative and monotone and tends_to_zero),
    }
