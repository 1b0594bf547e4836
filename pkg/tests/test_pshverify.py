"""Plurisubharmonicity checks: sub-mean values, contraction, exhaustion."""

import numpy as np
import pytest

from greenteich.domains import green_ball, unit_ball, unit_disc
from greenteich.hyperbolic import DomainViolation, NEG_INF, green_disc
from greenteich.pshverify import (
    ScalarField,
    contraction_check,
    hyperconvexity_probe,
    submean_check,
)


def disc_green_field(pole=0.0):
    return ScalarField(lambda z: green_disc(complex(z[0]), pole),
                       unit_disc(), name="green_disc")


def test_submean_harmonic_equality():
    # log|z - pole| is harmonic away from the pole: equality up to
    # quadrature error
    res = submean_check(disc_green_field(0.5), [0.0], [1.0], 0.2)
    assert res["pass"]
    assert abs(res["lhs"] - res["rhs"]) <= 1e-10


def test_submean_pole_at_center():
    res = submean_check(disc_green_field(0.0), [0.0], [1.0], 0.3)
    assert res["lhs"] == NEG_INF
    assert res["pass"]


def test_submean_rejects_exiting_circle():
    with pytest.raises(DomainViolation):
        submean_check(disc_green_field(), [0.9], [1.0], 0.3)


def test_submean_fails_for_superharmonic():
    # -|z|^2 is strictly superharmonic: the check must fail
    field = ScalarField(lambda z: -abs(complex(z[0])) ** 2, unit_disc())
    res = submean_check(field, [0.2], [1.0], 0.2)
    assert not res["pass"]


def test_submean_on_ball_slice():
    pole = np.array([0.1, 0.2j])
    field = ScalarField(lambda z: green_ball(z, pole), unit_ball(2))
    res = submean_check(field, [0.3, -0.1], [0.5, 0.5], 0.1)
    assert res["pass"]


def test_contraction_identity_map():
    pairs = [([0.1], [0.5]), ([0.3j], [-0.2])]
    res = contraction_check(
        lambda x, y: green_disc(complex(x[0]), complex(y[0])),
        lambda x, y: green_disc(complex(x[0]), complex(y[0])),
        lambda x: x, pairs)
    assert res["pass"]
    assert res["worst_gap"] == pytest.approx(0.0, abs=1e-15)


def test_contraction_square_map():
    # z -> z^2 is a genuine contraction: target value strictly below source
    rng = np.random.default_rng(2)
    pairs = []
    for _ in range(20):
        x = [complex(*rng.uniform(-0.5, 0.5, 2))]
        y = [complex(*rng.uniform(-0.5, 0.5, 2))]
        if abs(x[0] - y[0]) > 0.05:
            pairs.append((x, y))
    res = contraction_check(
        lambda x, y: green_disc(complex(x[0]), complex(y[0])),
        lambda x, y: green_disc(complex(x[0]), complex(y[0])),
        lambda x: np.array([x[0] ** 2]), pairs)
    assert res["pass"]
    assert res["worst_gap"] > 0.0


def test_hyperconvexity_probe_disc():
    res = hyperconvexity_probe(disc_green_field(0.0), [0.1], [0.8])
    assert res["pass"]
    assert res["negative"] and res["monotone"] and res["tends_to_zero"]


def test_hyperconvexity_probe_flags_constant():
    field = ScalarField(lambda z: -1.0, unit_disc())
    res = hyperconvexity_probe(field, [0.0], [0.9])
    assert not res["pass"]


def test_hyperconvexity_tail_approaches_zero():
    res = hyperconvexity_probe(disc_green_field(0.0), [0.2], [0.7])
    vals = res["tail_values"]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    assert vals[-1] > -0.05
