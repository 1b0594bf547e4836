"""Hamilton-Krushkal pairing, quadrature, and extremality verdicts."""

import math

import numpy as np
import pytest

from greenteich.extremality import (
    BeltramiField,
    DegenerateBasisError,
    QuadDiffBasis,
    disc_angular_field,
    disc_polar_quadrature,
    disc_teichmueller_field,
    hk_functional,
    is_extremal,
    theorem3_certificate_check,
    torus_half_cell_field,
    torus_quadrature,
)


def test_torus_quadrature_area():
    quad = torus_quadrature(1j)
    assert quad.area == pytest.approx(1.0, abs=1e-14)
    quad2 = torus_quadrature(0.5 + 2j)
    assert quad2.area == pytest.approx(2.0, abs=1e-13)


def test_disc_quadrature_exact_on_constants():
    quad = disc_polar_quadrature()
    assert quad.area == pytest.approx(math.pi, rel=1e-12)


def test_constant_pairing_is_modulus():
    quad = torus_quadrature()
    basis = QuadDiffBasis.monomials(0, "torus")
    for mu_val in (0.3, -0.25, 0.1 + 0.2j):
        mu = BeltramiField.from_constant(mu_val)
        value, _ = hk_functional(mu, basis, quad)
        assert value == pytest.approx(abs(mu_val), abs=1e-12)


def test_half_cell_field_pairs_to_zero_against_constants():
    quad = torus_quadrature()
    mu = torus_half_cell_field(0.3, quad)
    basis = QuadDiffBasis.monomials(0, "torus")
    value, _ = hk_functional(mu, basis, quad)
    assert value <= 0.5 * mu.sup_norm


def test_teichmueller_field_certified_extremal():
    quad = disc_polar_quadrature()
    mu = disc_teichmueller_field(0.4, quad=quad)
    basis = QuadDiffBasis.monomials(6, "disc")
    rep = is_extremal(mu, basis, quad)
    assert rep.verdict == "extremal"
    assert abs(rep.hk_value - 0.4) <= 1e-6


def test_angular_field_provisionally_not_extremal():
    quad = disc_polar_quadrature()
    mu = disc_angular_field(0.4, winding=4, quad=quad)
    basis = QuadDiffBasis.monomials(6, "disc")
    rep = is_extremal(mu, basis, quad)
    assert rep.verdict == "not_extremal"
    assert "provisional" in rep.note


def test_zero_field_trivially_extremal():
    quad = torus_quadrature()
    rep = is_extremal(BeltramiField.from_constant(0.0),
                      QuadDiffBasis.monomials(0, "torus"), quad)
    assert rep.verdict == "extremal"
    assert rep.hk_value == pytest.approx(0.0, abs=1e-15)


def test_pairing_bounded_by_sup_norm():
    # |L(mu, phi)| <= ||mu||_inf for unit-norm phi, so the sup is too
    quad = disc_polar_quadrature()
    rng = np.random.default_rng(4)
    for _ in range(3):
        vals = 0.5 * (rng.normal(size=quad.nodes.shape)
                      + 1j * rng.normal(size=quad.nodes.shape))
        vals = np.clip(np.abs(vals), 0, 0.9) * np.exp(1j * np.angle(vals))
        mu = BeltramiField(kind="grid", values=vals)
        value, _ = hk_functional(mu, QuadDiffBasis.monomials(3, "disc"),
                                 quad, n_starts=4)
        assert value <= mu.sup_norm + 1e-9


def test_empty_basis_rejected():
    quad = torus_quadrature()
    with pytest.raises(DegenerateBasisError):
        hk_functional(BeltramiField.from_constant(0.2),
                      QuadDiffBasis(elements=(), domain="torus"), quad)


def test_certificate_ladder_on_torus():
    res = theorem3_certificate_check(0.3, 1j)
    assert res["pass"], res
    assert res["max_ratio_deviation"] <= 1e-10
    assert res["norm_deviation"] <= 1e-12


def test_certificate_complex_coefficient():
    res = theorem3_certificate_check(0.2 - 0.1j, 0.5 + 1.5j)
    assert res["pass"], res
