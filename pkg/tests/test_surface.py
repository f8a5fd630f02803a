"""Surface patches: normals, area, foliation, mean curvature, mesh export."""

import math

import numpy as np
import pytest

from heisring import surface as sf
from heisring.heis import TangentVector, contact_eval
from heisring.profiles import BETA_HI, BETA_LO, catalog, koranyi_image
from heisring.surface import SurfacePatch

KORANYI = SurfacePatch(catalog("koranyi_sphere", 1.0))
BUBBLE = SurfacePatch(catalog("bubble_set", 1.0))
CC = SurfacePatch(catalog("cc_sphere", 1.0))

AREA_KORANYI_R1 = 15.05627423766275  # 2 pi * quad of sqrt(sin u) on (0, pi)


def interior_grid(patch, n=64, margin=0.05):
    lo, hi = patch.profile.domain
    return np.linspace(lo + margin * (hi - lo), hi - margin * (hi - lo), n)


def test_patch_eval_koranyi():
    p = sf.patch_eval(KORANYI, math.pi, 0.0)
    assert p.z == pytest.approx(1.0 + 0j)
    assert p.t == pytest.approx(0.0, abs=1e-12)


def test_scale_acts_as_dilation():
    big = SurfacePatch(catalog("bubble_set", 1.0), scale=2.0)
    small = sf.patch_eval(BUBBLE, 1.0, 0.7)
    scaled = sf.patch_eval(big, 1.0, 0.7)
    assert scaled.z == pytest.approx(2.0 * small.z)
    assert scaled.t == pytest.approx(4.0 * small.t)


def test_characteristic_locus_empty():
    for patch in (KORANYI, BUBBLE, CC):
        ss = interior_grid(patch, 256, margin=0.01)
        pp = 2 * math.pi * np.arange(64) / 64
        s2, p2 = np.meshgrid(ss, pp, indexing="ij")
        n1, n2 = sf.horizontal_normal_components(patch, s2.ravel(), p2.ravel())
        assert float(np.min(np.hypot(n1, n2))) > 0.0


def test_horizontal_normal_orthogonal_to_foliation():
    # the Legendrian flow direction is horizontal and tangent to the surface,
    # so N^h annihilates it
    for patch in (KORANYI, BUBBLE, CC):
        lo, hi = patch.profile.domain
        s0 = lo + 0.37 * (hi - lo)
        span = (s0 - 0.01 * (hi - lo), s0 + 0.01 * (hi - lo))
        curve = sf.flow_curve(patch, float(s0), 0.4, span, n=16)
        i = curve.tau.size // 2
        phi = float(np.angle(curve.z[i]))
        n1, n2 = sf.horizontal_normal_components(patch, float(curve.tau[i]), phi)
        dz = curve.dz[i]
        inner = float(n1) * dz.real + float(n2) * dz.imag
        scale = float(np.hypot(n1, n2)) * abs(dz)
        assert abs(inner) / scale < 1e-10


def test_induced_form_matches_contact_eval():
    # omega restricted to the surface: Im(dp*) ds - 2 Re(p*) dphi... evaluated
    # as contact_eval on pushed-forward basis vectors
    patch = CC
    img = koranyi_image(patch.profile)
    h = 1e-7
    for s in interior_grid(patch, 9):
        ps, dps, _ = img.all(float(s))
        for phi in (0.0, 1.1):
            a = sf.patch_eval(patch, float(s) + h, phi)
            b = sf.patch_eval(patch, float(s) - h, phi)
            v_s = TangentVector(sf.patch_eval(patch, float(s), phi),
                                (a.z - b.z).real / (2 * h),
                                (a.z - b.z).imag / (2 * h),
                                (a.t - b.t) / (2 * h))
            c = sf.patch_eval(patch, float(s), phi + h)
            d = sf.patch_eval(patch, float(s), phi - h)
            v_phi = TangentVector(v_s.base,
                                  (c.z - d.z).real / (2 * h),
                                  (c.z - d.z).imag / (2 * h),
                                  (c.t - d.t) / (2 * h))
            assert contact_eval(v_s) == pytest.approx(float(np.imag(dps)),
                                                      rel=1e-6, abs=1e-6)
            assert contact_eval(v_phi) == pytest.approx(-2.0 * float(np.real(ps)),
                                                        rel=1e-6, abs=1e-6)


# -- area ---------------------------------------------------------------------


def test_koranyi_area_oracle():
    assert sf.horizontal_area(KORANYI) == pytest.approx(AREA_KORANYI_R1, rel=1e-9)


def test_bubble_area_closed_form():
    # 2 pi int_0^{2pi} 2 sin(s/2) * |4 sin(s/2)| ds-type integral collapses
    # to 16 pi^2 for R = 1
    assert sf.horizontal_area(BUBBLE) == pytest.approx(16.0 * math.pi ** 2, rel=1e-9)


@pytest.mark.parametrize("R", [0.5, 2.0])
def test_area_scales_as_R_cubed(R):
    base = sf.horizontal_area(KORANYI)
    scaled = sf.horizontal_area(SurfacePatch(catalog("koranyi_sphere", R)))
    assert scaled == pytest.approx(R ** 3 * base, rel=1e-10)


def test_area_scale_parameter_matches_radius():
    a = sf.horizontal_area(SurfacePatch(catalog("koranyi_sphere", 1.0), scale=1.7))
    b = sf.horizontal_area(SurfacePatch(catalog("koranyi_sphere", 1.7)))
    assert a == pytest.approx(b, rel=1e-10)


# -- foliation ----------------------------------------------------------------


def test_flow_curves_are_horizontal():
    for patch in (KORANYI, BUBBLE, CC):
        lo, hi = patch.profile.domain
        s0 = 0.5 * (lo + hi)
        span = (lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo))
        curve = sf.flow_curve(patch, s0, 0.25, span, n=512)
        assert curve.residual < 1e-10


def test_flow_curve_stays_on_surface():
    patch = BUBBLE
    curve = sf.flow_curve(patch, 3.0, 0.0, (0.5, 5.5), n=256)
    f, _, _, g, _, _ = patch.profile.eval(curve.tau)
    assert np.max(np.abs(np.abs(curve.z) - f)) < 1e-12
    assert np.max(np.abs(curve.t - g)) < 1e-12


def test_flow_span_must_contain_anchor():
    with pytest.raises(ValueError):
        sf.flow_curve(BUBBLE, 0.2, 0.0, (1.0, 5.0))


# -- mean curvature -----------------------------------------------------------


def test_bubble_mean_curvature_constant():
    for R in (1.0, 2.0):
        patch = SurfacePatch(catalog("bubble_set", R))
        for s in interior_grid(patch, 17):
            assert sf.mean_curvature(patch, float(s)) == pytest.approx(1.0 / R,
                                                                       rel=1e-9)


def test_koranyi_mean_curvature_closed_form():
    # 3 sqrt(-cos beta) / R away from the equator
    for R in (1.0, 1.5):
        patch = SurfacePatch(catalog("koranyi_sphere", R))
        for beta in np.linspace(BETA_LO + 0.2, BETA_HI - 0.2, 13):
            if abs(beta - math.pi) < 0.05:
                continue  # fd = 0 there; covered by the indeterminate test
            want = 3.0 * math.sqrt(-math.cos(beta)) / R
            assert sf.mean_curvature(patch, float(beta)) == pytest.approx(
                want, rel=1e-8)


def test_koranyi_equator_recovered_from_one_sided_limits():
    # fd(pi) = 0, but both one-sided values approach 3/R
    assert sf.mean_curvature(KORANYI, math.pi) == pytest.approx(3.0, rel=1e-3)


def test_mean_curvature_matches_projected_curvature_oracle():
    # signed curvature of the planar projection of the flow curve, computed
    # by finite differences of an independently integrated flow
    for patch in (KORANYI, BUBBLE):
        lo, hi = patch.profile.domain
        for frac in (0.3, 0.62):
            s0 = lo + frac * (hi - lo)
            span = (s0 - 0.01 * (hi - lo), s0 + 0.01 * (hi - lo))
            curve = sf.flow_curve(patch, float(s0), 0.0, span, n=64)
            i = curve.tau.size // 2
            dz = curve.dz[i]
            h = curve.tau[1] - curve.tau[0]
            ddz = (curve.dz[i + 1] - curve.dz[i - 1]) / (2 * h)
            kappa = float(np.imag(np.conj(dz) * ddz) / np.abs(dz) ** 3)
            assert sf.mean_curvature(patch, float(s0)) == pytest.approx(
                kappa, rel=1e-4)


# -- mesh export --------------------------------------------------------------


def test_export_mesh(tmp_path):
    obj = tmp_path / "bubble.obj"
    obj_path, csv_path = sf.export_mesh(BUBBLE, str(obj), n_s=16, n_phi=8)
    lines = obj.read_text().splitlines()
    verts = [ln for ln in lines if ln.startswith("v ")]
    faces = [ln for ln in lines if ln.startswith("f ")]
    assert len(verts) == 16 * 8
    assert len(faces) == 2 * 15 * 8
    header = (tmp_path / "bubble_vertices.csv").read_text().splitlines()[0]
    assert header == "s,phi,x,y,t,Nh_norm,Hh"


def test_mesh_vertices_satisfy_surface_identity(tmp_path):
    # gauge / |p*(arg alpha)|^(1/2) = scale at every vertex
    from heisring import modulus as M
    from heisring.profiles import reparam_by_argument

    patch = SurfacePatch(catalog("bubble_set", 1.0), scale=2.0)
    obj = tmp_path / "scaled.obj"
    sf.export_mesh(patch, str(obj), n_s=12, n_phi=6)
    prof = reparam_by_argument(catalog("bubble_set", 1.0))
    ring = M.RevolutionRing(prof, 1.0, 3.0)
    for line in obj.read_text().splitlines():
        if not line.startswith("v "):
            continue
        _, x, y, t = line.split()
        ratio = float(M.boundary_ratio(ring, complex(float(x), float(y)),
                                       float(t)))
        assert ratio == pytest.approx(2.0, abs=1e-9)
