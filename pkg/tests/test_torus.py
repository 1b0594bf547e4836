"""Torus moduli: extremal dilatation, distance report, projection."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from greenteich.hyperbolic import NEG_INF
from greenteich.torus import (
    canonical_projection,
    eq2_identity_check,
    extremal_beltrami,
    lemma2_check,
    smoothness_probe,
    teich_distance,
)

moduli = st.builds(complex,
                   st.floats(min_value=-2.0, max_value=2.0),
                   st.floats(min_value=0.2, max_value=5.0))


def test_distance_i_to_2i():
    rep = teich_distance(1j, 2j)
    assert rep.k == pytest.approx(1 / 3, abs=1e-15)
    assert rep.d == pytest.approx(0.5 * math.log(2), abs=1e-15)
    assert rep.g == pytest.approx(math.log(1 / 3), abs=1e-14)


def test_distance_diagonal():
    rep = teich_distance(1j, 1j)
    assert rep.k == 0.0
    assert rep.d == 0.0
    assert rep.g == NEG_INF


def test_invalid_modulus_rejected():
    with pytest.raises(ValueError):
        teich_distance(1j, -1j)


@given(x=moduli, y=moduli)
@settings(max_examples=80, deadline=None)
def test_distance_symmetry(x, y):
    a, b = teich_distance(x, y), teich_distance(y, x)
    assert abs(a.k - b.k) <= 1e-14
    assert abs(a.d - b.d) <= 1e-14


@given(x=moduli, y=moduli, z=moduli)
@settings(max_examples=60, deadline=None)
def test_triangle_inequality(x, y, z):
    assert teich_distance(x, z).d <= \
        teich_distance(x, y).d + teich_distance(y, z).d + 1e-12


@given(x=moduli, y=moduli)
@settings(max_examples=60, deadline=None)
def test_projection_recovers_target(x, y):
    # the affine extremal coefficient projects back onto the target modulus
    mu = extremal_beltrami(x, y)
    assert canonical_projection(mu, x) == pytest.approx(y, abs=1e-10)


def test_beltrami_norm_is_dilatation():
    x, y = 1j, 0.7 + 2.3j
    mu = extremal_beltrami(x, y)
    assert abs(mu) == pytest.approx(teich_distance(x, y).k, abs=1e-15)


def test_lemma2_check_exact():
    rng = np.random.default_rng(3)
    for _ in range(10):
        x = complex(rng.uniform(-2, 2), rng.uniform(0.3, 4))
        base = complex(rng.uniform(-2, 2), rng.uniform(0.3, 4))
        res = lemma2_check(x, base)
        assert res["pass"], res


def test_eq2_identity_check_passes():
    res = eq2_identity_check(50, seed=1)
    assert res["pass"]
    assert res["max_transform_discrepancy"] <= 1e-13
    assert res["max_halfplane_discrepancy"] <= 1e-12


def test_smoothness_probe_shape():
    res = smoothness_probe(1j)
    assert len(res["probe"]) == 3
    for row in res["probe"]:
        assert math.isfinite(row["second_difference"])
