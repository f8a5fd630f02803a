"""Horizontal curves as first-class sampled values.

A curve is stored as dense arrays of ambient samples (z, t) with derivatives
and, when generated in revolution coordinates, the tilde samples
(xi, beta, phi) with their derivatives. Every constructor attaches a
horizontality residual certificate.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import integrate

from . import revcoords
from .profiles import BETA_HI, BETA_LO

DEFAULT_RESOLUTION = 1024


class NotHorizontalError(ValueError):
    """Residual certificate exceeds the allowed tolerance."""


def contact_residual(z, dz, dt) -> float:
    """max |omega(gamma')| / max(1, max |gamma'_h|) over the samples."""
    omega = dt + 2.0 * np.imag(np.conj(z) * dz)
    return float(np.max(np.abs(omega)) / max(1.0, float(np.max(np.abs(dz)))))


@dataclass(frozen=True)
class HorizontalCurve:
    tau: np.ndarray
    z: np.ndarray
    t: np.ndarray
    dz: np.ndarray
    dt: np.ndarray
    residual: float
    xi: Optional[np.ndarray] = None
    beta: Optional[np.ndarray] = None
    phi: Optional[np.ndarray] = None
    dxi: Optional[np.ndarray] = None
    dbeta: Optional[np.ndarray] = None
    dphi: Optional[np.ndarray] = None
    tol: float = 1e-8

    @classmethod
    def from_samples(cls, tau, z, t, dz, dt, tol: float = 1e-8, **tilde):
        res = contact_residual(np.asarray(z), np.asarray(dz), np.asarray(dt))
        return cls(np.asarray(tau, dtype=float), np.asarray(z, dtype=complex),
                   np.asarray(t, dtype=float), np.asarray(dz, dtype=complex),
                   np.asarray(dt, dtype=float), res, tol=tol, **tilde)

    @property
    def endpoints(self):
        from .heis import HPoint
        return (HPoint(complex(self.z[0]), float(self.t[0])),
                HPoint(complex(self.z[-1]), float(self.t[-1])))

    def export_csv(self, path: str) -> str:
        nan = np.full(self.tau.shape, math.nan)
        xi = self.xi if self.xi is not None else nan
        beta = self.beta if self.beta is not None else nan
        phi = self.phi if self.phi is not None else nan
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["tau", "x", "y", "t", "xi", "beta", "phi", "residual"])
            for i in range(self.tau.size):
                writer.writerow([
                    f"{self.tau[i]:.17g}", f"{self.z[i].real:.17g}",
                    f"{self.z[i].imag:.17g}", f"{self.t[i]:.17g}",
                    f"{xi[i]:.17g}", f"{beta[i]:.17g}", f"{phi[i]:.17g}",
                    f"{self.residual:.3e}",
                ])
        return path


def horizontal_length(curve: HorizontalCurve) -> float:
    """Composite quadrature of the horizontal speed over the sample grid."""
    if curve.residual > 1e-6:
        raise NotHorizontalError(
            f"curve residual {curve.residual:.3e} too large for length computation"
        )
    if curve.tau[0] == curve.tau[-1]:
        return 0.0
    return float(integrate.simpson(np.abs(curve.dz), x=curve.tau))


def line_integral(rho, curve: HorizontalCurve, with_error: bool = False):
    """Horizontal line integral of a density along a horizontal curve.

    ``rho`` is a vectorized callable rho(z, t) >= 0. Composite Simpson on the
    sample grid; the error estimate compares with half resolution.
    """
    if curve.residual > 1e-6:
        raise NotHorizontalError(
            f"curve residual {curve.residual:.3e} too large for line integral"
        )
    vals = np.asarray(rho(curve.z, curve.t), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise ArithmeticError("density is non-finite at a curve sample")
    integrand = vals * np.abs(curve.dz)
    if curve.tau[0] == curve.tau[-1]:
        return (0.0, 0.0) if with_error else 0.0
    full = float(integrate.simpson(integrand, x=curve.tau))
    if not with_error:
        return full
    half = float(integrate.simpson(integrand[::2], x=curve.tau[::2]))
    return full, abs(full - half) / 15.0


@dataclass(frozen=True)
class CurveFamily:
    descriptor: str
    curves: tuple = field(repr=False)
    ring: object = None

    def __len__(self):
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)


# -- generators -------------------------------------------------------------------


def _ambient_from_tilde(profile, tau, xi, beta, phi, dxi, dbeta, dphi, tol=1e-8):
    """Assemble a HorizontalCurve from tilde samples with analytic derivatives."""
    ps, dps = revcoords.pstar_pair(profile, beta)
    re = np.real(-ps)
    z = np.exp(xi + 1j * phi) * np.sqrt(re)
    t = np.exp(2.0 * xi) * np.imag(ps)
    dlog_re = np.real(-dps) * dbeta / re
    dz = z * (dxi + 1j * dphi + 0.5 * dlog_re)
    dt = 2.0 * dxi * t + np.exp(2.0 * xi) * np.imag(dps) * dbeta
    return HorizontalCurve.from_samples(
        tau, z, t, dz, dt, tol=tol,
        xi=xi, beta=beta, phi=phi, dxi=dxi, dbeta=dbeta, dphi=dphi,
    )


def quasiradial(ring, beta: float, phi0: float, n: int = DEFAULT_RESOLUTION) -> HorizontalCurve:
    """The horizontal curve xi -> Phi(xi, beta, phi0 + tan(beta) xi) across the ring."""
    if not (BETA_LO < beta < BETA_HI):
        raise ValueError(f"beta {beta} outside the open band")
    xi = np.linspace(math.log(ring.a), math.log(ring.b), n + 1)
    tb = math.tan(beta)
    beta_arr = np.full_like(xi, beta)
    phi = phi0 + tb * xi
    dxi = np.ones_like(xi)
    dbeta = np.zeros_like(xi)
    dphi = np.full_like(xi, tb)
    return _ambient_from_tilde(ring.profile, xi, xi, beta_arr, phi, dxi, dbeta, dphi,
                               tol=1e-12)


def quasiradial_family(ring, n_beta: int = 64, n_phi: int = 64,
                       n: int = 256) -> CurveFamily:
    """Quasiradials on a regular interior (beta, phi) grid."""
    betas = BETA_LO + (BETA_HI - BETA_LO) * (np.arange(1, n_beta + 1)) / (n_beta + 1)
    phis = 2.0 * math.pi * np.arange(n_phi) / n_phi
    curves = tuple(quasiradial(ring, float(b), float(p), n=n)
                   for b in betas for p in phis)
    return CurveFamily(f"quasiradial grid {n_beta}x{n_phi}", curves, ring)


def random_horizontal_curve(ring, seed: int, n: int = DEFAULT_RESOLUTION,
                            band_margin: float = 1e-3) -> HorizontalCurve:
    """A seeded random horizontal curve connecting the ring boundaries.

    xi(tau) is a smooth strictly increasing warp from log a to log b; beta(tau)
    is a low-order random Fourier path kept inside the safe band; phi comes
    from integrating the horizontality condition. The generator is a pure
    function of the seed (counter-based Philox stream), so families are
    reproducible and embarrassingly parallel.
    """
    rng = np.random.Generator(np.random.Philox(key=seed))
    n_modes = 4
    j = np.arange(1, n_modes + 1)

    # strictly increasing xi warp: m(0)=0, m(1)=1, m' >= 1 - amp > 0
    c_raw = rng.uniform(-1.0, 1.0, n_modes)
    amp = 0.8 * rng.uniform(0.2, 1.0)
    c = amp * c_raw / np.sum(np.abs(c_raw) * math.pi * j)
    la, lb = math.log(ring.a), math.log(ring.b)
    span = lb - la

    # beta path inside [pi/2 + margin, 3pi/2 - margin]
    center = math.pi + rng.uniform(-0.3, 0.3)
    d_raw = rng.uniform(-1.0, 1.0, n_modes)
    phase = rng.uniform(0.0, 2.0 * math.pi, n_modes)
    b_max = (math.pi / 2 - band_margin) - abs(center - math.pi) - 0.05
    d = b_max * rng.uniform(0.3, 1.0) * d_raw / np.sum(np.abs(d_raw))
    phi0 = rng.uniform(0.0, 2.0 * math.pi)

    def xi_of(tau):
        m = tau + np.sum(c[:, None] * np.sin(math.pi * np.outer(j, tau)), axis=0)
        dm = 1.0 + np.sum(c[:, None] * math.pi * j[:, None]
                          * np.cos(math.pi * np.outer(j, tau)), axis=0)
        return la + span * m, span * dm

    def beta_of(tau):
        arg = math.pi * np.outer(j, tau) + phase[:, None]
        b = center + np.sum(d[:, None] * np.sin(arg), axis=0)
        db = np.sum(d[:, None] * math.pi * j[:, None] * np.cos(arg), axis=0)
        return b, db

    # phase by cumulative Simpson on a 4x refined grid; the integrand is
    # smooth, so the composite error is far below the residual tolerance
    refine = 4
    tau_fine = np.linspace(0.0, 1.0, refine * n + 1)
    xi_f, dxi_f = xi_of(tau_fine)
    beta_f, dbeta_f = beta_of(tau_fine)
    dphi_f = np.asarray(
        revcoords.horizontality_rhs(ring.profile, beta_f, dxi_f, dbeta_f))
    phi_f = phi0 + integrate.cumulative_simpson(dphi_f, x=tau_fine, initial=0.0)

    sel = slice(None, None, refine)
    return _ambient_from_tilde(ring.profile, tau_fine[sel], xi_f[sel],
                               beta_f[sel], phi_f[sel], dxi_f[sel],
                               dbeta_f[sel], dphi_f[sel])


def random_family(ring, count: int, seed0: int = 0, n: int = 256) -> CurveFamily:
    curves = tuple(random_horizontal_curve(ring, seed0 + i, n=n) for i in range(count))
    return CurveFamily(f"random family n={count} seed0={seed0}", curves, ring)


def cc_lift(k: float, R: float, phi: float = 0.0,
            n: int = DEFAULT_RESOLUTION) -> HorizontalCurve:
    """Horizontal lift of the planar circle of curvature k, rotated by phi.

    For k = 0 the circle degenerates to a straight segment with t = 0.
    The curve runs over arclength s in [0, R] and is unit speed.
    """
    if not math.isfinite(k):
        raise ValueError("curvature parameter must be finite")
    s = np.linspace(0.0, R, n + 1)
    rot = complex(math.cos(phi), math.sin(phi))
    if k == 0.0:
        z = rot * (-1j) * s
        t = np.zeros_like(s)
        dz = np.full(s.shape, rot * (-1j))
        dt = np.zeros_like(s)
    else:
        z = rot * (1.0 - np.exp(1j * k * s)) / k
        t = (2.0 / k) * (np.sin(k * s) / k - s)
        dz = rot * (-1j) * np.exp(1j * k * s)
        dt = (2.0 / k) * (np.cos(k * s) - 1.0)
    return HorizontalCurve.from_samples(s, z, t, dz, dt, tol=1e-10)
