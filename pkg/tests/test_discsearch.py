"""Disc functional: containment, preimages, and the minimization search."""

import math

import numpy as np
import pytest

from greenteich.discsearch import (
    AnalyticDisc,
    DegenerateDiscError,
    SearchConfig,
    containment_check,
    evaluate_upsilon,
    find_preimages,
    minimize_disc_functional,
)
from greenteich.domains import unit_ball, unit_disc, unit_polydisc
from greenteich.hyperbolic import NEG_INF


def linear_disc(slope, dim=1):
    coeffs = np.zeros((2, dim), dtype=complex)
    coeffs[1, :] = slope
    return AnalyticDisc(coefficients=coeffs)


def test_containment_scaled_identity():
    assert containment_check(linear_disc(0.9), unit_disc(), 64, 1e-9)
    assert not containment_check(linear_disc(1.1), unit_disc(), 64, 1e-9)


def test_containment_diagonal_into_ball():
    # |f(zeta)| = 0.7 * sqrt(2) ~ 0.9899 on the boundary circle
    f = linear_disc(0.7, dim=2)
    assert containment_check(f, unit_ball(2), 64, 0.005)
    assert not containment_check(f, unit_ball(2), 64, 0.02)


def test_preimages_identity():
    roots = find_preimages(linear_disc(1.0), [0.5])
    assert len(roots) == 1
    zeta, mult = roots[0]
    assert zeta == pytest.approx(0.5, abs=1e-12)
    assert mult == 1


def square_disc():
    coeffs = np.zeros((3, 1), dtype=complex)
    coeffs[2, 0] = 1.0
    return AnalyticDisc(coefficients=coeffs)


def test_preimages_square():
    roots = sorted(find_preimages(square_disc(), [0.25]),
                   key=lambda r: r[0].real)
    assert len(roots) == 2
    assert roots[0][0] == pytest.approx(-0.5, abs=1e-10)
    assert roots[1][0] == pytest.approx(0.5, abs=1e-10)
    assert all(m == 1 for _, m in roots)


def test_preimages_double_root():
    roots = find_preimages(square_disc(), [0.0])
    assert len(roots) == 1
    zeta, mult = roots[0]
    assert abs(zeta) < 1e-8
    assert mult == 2


def test_degenerate_constant_disc():
    f = AnalyticDisc(coefficients=np.array([[0.3 + 0j]]))
    with pytest.raises(DegenerateDiscError):
        find_preimages(f, [0.3])


def test_upsilon_identity_disc():
    f = linear_disc(1.0)
    assert evaluate_upsilon(f, [0.0], [0.5]) == pytest.approx(math.log(0.5))
    # modulus matters, not the argument
    assert evaluate_upsilon(f, [0.0], [0.3 + 0.4j]) == pytest.approx(
        math.log(0.5), abs=1e-12)


def test_upsilon_multiplicity_two():
    assert evaluate_upsilon(square_disc(), [0.0], [0.25]) == pytest.approx(
        2 * math.log(0.5), abs=1e-12)


def test_upsilon_pole_on_disc():
    assert evaluate_upsilon(square_disc(), [0.0], [0.0]) == NEG_INF


def test_upsilon_empty_preimage_non_informative():
    # a disc that misses y contributes the empty-sum value 0
    f = linear_disc(0.1)
    assert evaluate_upsilon(f, [0.0], [0.5]) == 0.0


def test_minimize_on_disc_matches_oracle():
    D = unit_disc()
    out = minimize_disc_functional(D, [0.0], [0.5],
                                   SearchConfig(seed=0, n_starts=4,
                                                max_degree=2))
    assert out.estimate == pytest.approx(math.log(0.5), abs=1e-6)
    assert out.informative


def test_minimize_on_ball_matches_oracle():
    D = unit_ball(2)
    out = minimize_disc_functional(D, [0.0, 0.0], [0.5, 0.0],
                                   SearchConfig(seed=0, n_starts=4,
                                                max_degree=2))
    assert out.estimate == pytest.approx(math.log(0.5), abs=1e-4)


def test_minimize_on_polydisc_matches_oracle():
    D = unit_polydisc(2)
    out = minimize_disc_functional(D, [0.0, 0.0], [0.5, 0.25],
                                   SearchConfig(seed=0, n_starts=4,
                                                max_degree=2))
    assert out.estimate == pytest.approx(math.log(0.5), abs=1e-4)


def test_upper_bound_soundness():
    # every returned estimate sits above the oracle up to 1e-9
    rng = np.random.default_rng(5)
    D = unit_disc()
    for _ in range(5):
        x = [complex(*rng.uniform(-0.4, 0.4, 2))]
        y = [complex(*rng.uniform(-0.4, 0.4, 2))]
        if abs(x[0] - y[0]) < 0.05:
            continue
        out = minimize_disc_functional(D, x, y,
                                       SearchConfig(seed=1, n_starts=4,
                                                    max_degree=2))
        assert out.estimate >= D.green(x, y) - 1e-9


def test_degree_monotonicity():
    D = unit_ball(2)
    x, y = [0.1, 0.2j], [0.4, -0.1]
    estimates = []
    for deg in (1, 2, 3):
        out = minimize_disc_functional(
            D, x, y, SearchConfig(seed=2, n_starts=6, max_degree=deg))
        estimates.append(out.estimate)
    assert estimates[0] >= estimates[1] - 1e-12
    assert estimates[1] >= estimates[2] - 1e-12


def test_search_determinism():
    D = unit_ball(2)
    cfg = SearchConfig(seed=11, n_starts=4, max_degree=2)
    a = minimize_disc_functional(D, [0.1, 0.0], [0.3, 0.2j], cfg)
    b = minimize_disc_functional(D, [0.1, 0.0], [0.3, 0.2j], cfg)
    assert a.estimate == b.estimate
    assert np.array_equal(a.witness.coefficients, b.witness.coefficients)


def test_coincident_points_rejected():
    with pytest.raises(ValueError):
        minimize_disc_functional(unit_disc(), [0.2], [0.2])


def test_witness_base_point():
    out = minimize_disc_functional(unit_disc(), [0.1], [0.5],
                                   SearchConfig(seed=0, n_starts=4,
                                                max_degree=2))
    assert np.allclose(out.witness.base_point, [0.1], atol=1e-12)
