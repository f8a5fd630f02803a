"""Horizontal curves: certificates, lengths, line integrals, generators."""

import math

import numpy as np
import pytest

from heisring import curves as cv
from heisring import modulus as md
from heisring.heis import dist, gauge
from heisring.profiles import BETA_HI, BETA_LO, catalog

RING = md.make_ring(catalog("koranyi_sphere", 1.0), 1.0, 2.0)
RING_B = md.make_ring(catalog("bubble_set", 1.0), 1.0, 2.0)


def test_cc_lift_unit_speed_and_length():
    for k in (-2.0, -0.5, 0.0, 1.0, 3.0):
        curve = cv.cc_lift(k, 1.0)
        assert curve.residual < 1e-12
        assert np.max(np.abs(np.abs(curve.dz) - 1.0)) < 1e-12
        assert cv.horizontal_length(curve) == pytest.approx(1.0, rel=1e-9)


def test_cc_lift_endpoint_on_cc_sphere_profile():
    prof = catalog("cc_sphere", 1.0)
    for k in (0.3, 1.5, -2.5):
        curve = cv.cc_lift(k, 1.0)
        z_end, t_end = curve.z[-1], curve.t[-1]
        f, _, _, g, _, _ = prof.eval(k)
        assert abs(z_end) == pytest.approx(f, rel=1e-10)
        assert t_end == pytest.approx(g, rel=1e-10, abs=1e-12)


def test_cc_lift_endpoint_at_cc_distance():
    # lifted arcs are geodesics up to a full turn, so the endpoint gauge
    # distance is bounded by the arc length
    from heisring.heis import HPoint
    for k in (0.5, 2.0):
        curve = cv.cc_lift(k, 1.0)
        p = HPoint(complex(curve.z[-1]), float(curve.t[-1]))
        assert gauge(p) <= 1.0 + 1e-12


def test_straight_lift_is_flat():
    curve = cv.cc_lift(0.0, 2.0, phi=0.7)
    assert np.max(np.abs(curve.t)) == 0.0
    assert cv.horizontal_length(curve) == pytest.approx(2.0)


# -- quasiradials --------------------------------------------------------------


def test_quasiradial_residual_and_endpoints():
    q = cv.quasiradial(RING, beta=2.2, phi0=0.4)
    assert q.residual < 1e-12
    inner, outer = q.endpoints
    assert md.membership(RING, inner) is md.Location.BOUNDARY
    assert md.membership(RING, outer) is md.Location.BOUNDARY
    assert gauge(inner) == pytest.approx(1.0, rel=1e-12)  # koranyi: |p*| = 1
    assert gauge(outer) == pytest.approx(2.0, rel=1e-12)


def test_quasiradial_unit_line_integral():
    rho = md.rho0_density(RING)
    for beta in np.linspace(BETA_LO + 0.1, BETA_HI - 0.1, 9):
        q = cv.quasiradial(RING, float(beta), 0.0)
        val, err = cv.line_integral(rho, q, with_error=True)
        assert val == pytest.approx(1.0, abs=1e-10)
        assert err < 1e-10


def test_quasiradial_rejects_band_edge():
    with pytest.raises(ValueError):
        cv.quasiradial(RING, BETA_LO, 0.0)


def test_quasiradial_family_shape():
    fam = cv.quasiradial_family(RING, n_beta=3, n_phi=4, n=32)
    assert len(fam) == 12
    assert all(c.residual < 1e-12 for c in fam)


# -- random curves -------------------------------------------------------------


def test_random_curve_reproducible():
    a = cv.random_horizontal_curve(RING_B, seed=42, n=128)
    b = cv.random_horizontal_curve(RING_B, seed=42, n=128)
    assert np.array_equal(a.z, b.z) and np.array_equal(a.t, b.t)
    c = cv.random_horizontal_curve(RING_B, seed=43, n=128)
    assert not np.allclose(a.z, c.z)


def test_random_curves_connect_boundaries():
    for seed in range(8):
        curve = cv.random_horizontal_curve(RING_B, seed=seed, n=128)
        assert curve.residual < 1e-10
        inner, outer = curve.endpoints
        r0 = float(md.boundary_ratio(RING_B, inner.z, inner.t))
        r1 = float(md.boundary_ratio(RING_B, outer.z, outer.t))
        assert r0 == pytest.approx(1.0, abs=1e-9)
        assert r1 == pytest.approx(2.0, abs=1e-9)
        # interior samples stay inside the closed ring
        mid = md.boundary_ratio(RING_B, curve.z[1:-1], curve.t[1:-1])
        assert np.all(mid > 1.0 - 1e-9) and np.all(mid < 2.0 + 1e-9)


def test_random_family_is_seed_indexed():
    fam = cv.random_family(RING, 3, seed0=7, n=64)
    solo = cv.random_horizontal_curve(RING, seed=8, n=64)
    assert np.array_equal(fam.curves[1].z, solo.z)


# -- measurements --------------------------------------------------------------


def test_length_of_ambient_circle_lift_matches_speed():
    curve = cv.cc_lift(1.0, 3.0)
    assert cv.horizontal_length(curve) == pytest.approx(3.0, rel=1e-9)


def test_line_integral_rejects_sloppy_curve():
    bad = cv.HorizontalCurve(
        tau=np.linspace(0, 1, 9), z=np.linspace(0, 1, 9) + 0j,
        t=np.linspace(0, 1, 9), dz=np.ones(9) + 0j, dt=np.ones(9),
        residual=1.0)
    with pytest.raises(cv.NotHorizontalError):
        cv.horizontal_length(bad)
    with pytest.raises(cv.NotHorizontalError):
        cv.line_integral(lambda z, t: np.ones_like(t), bad)


def test_line_integral_of_one_is_length():
    curve = cv.quasiradial(RING, 2.0, 0.0, n=512)
    ell = cv.horizontal_length(curve)
    val = cv.line_integral(lambda z, t: np.ones_like(np.asarray(t)), curve)
    assert val == pytest.approx(ell, rel=1e-12)


def test_export_csv(tmp_path):
    curve = cv.quasiradial(RING, 2.0, 0.0, n=16)
    path = curve.export_csv(str(tmp_path / "q.csv"))
    lines = open(path).read().splitlines()
    assert lines[0] == "tau,x,y,t,xi,beta,phi,residual"
    assert len(lines) == 18
    assert float(lines[1].split(",")[-1]) <= 1e-8
