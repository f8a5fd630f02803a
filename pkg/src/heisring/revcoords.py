"""Revolution coordinates (xi, beta, phi) adapted to a surface of revolution.

The coordinate map is
    Phi(xi, beta, phi) = (e^(xi+i phi) Re^(1/2)(-p*(beta)), e^(2 xi) Im p*(beta))
for a profile parametrized by its Koranyi argument beta. The module provides
the forward and inverse maps, the Jacobian, the horizontality condition and
horizontal speed in these coordinates, and change-of-variables integration
over the ring box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .heis import HPoint
from .profiles import BETA_HI, BETA_LO, ProfileCurve, koranyi_image

EDGE_OFFSET = 1e-9  # quadrature/sampling keeps this distance from the band edges


@dataclass(frozen=True)
class RevPoint:
    xi: float
    beta: float
    phi: float


@dataclass(frozen=True)
class Box:
    xi_range: tuple[float, float]
    beta_range: tuple[float, float] = (BETA_LO, BETA_HI)
    phi_range: tuple[float, float] = (0.0, 2.0 * math.pi)

    def __post_init__(self):
        if not self.xi_range[0] < self.xi_range[1]:
            raise ValueError(f"empty xi range {self.xi_range}")


class IntegrationError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


def _require_by_argument(curve: ProfileCurve):
    if not curve.by_argument:
        raise ValueError(
            f"profile {curve.name!r} is not parametrized by argument; "
            "call reparam_by_argument first"
        )


def pstar_pair(curve: ProfileCurve, beta):
    """(p*(beta), dp*/dbeta) for a by-argument profile."""
    _require_by_argument(curve)
    return koranyi_image(curve).all(beta)[:2]


def phi_map_arrays(curve: ProfileCurve, xi, beta, phi):
    """Vectorized forward map; returns (z, t)."""
    ps, _ = pstar_pair(curve, beta)
    z = np.exp(xi + 1j * np.asarray(phi)) * np.sqrt(np.real(-ps))
    t = np.exp(2.0 * np.asarray(xi)) * np.imag(ps)
    return z, t


def phi_map(curve: ProfileCurve, q: RevPoint) -> HPoint:
    z, t = phi_map_arrays(curve, q.xi, q.beta, q.phi)
    return HPoint(complex(z), float(t))


def _arg_band(w):
    ang = np.angle(w)
    return np.where(ang > 0, ang, ang + 2.0 * math.pi)


def phi_inv_arrays(curve: ProfileCurve, z, t):
    """Vectorized inverse map; returns (xi, beta, phi). Requires z != 0."""
    _require_by_argument(curve)
    z = np.asarray(z, dtype=complex)
    t = np.asarray(t, dtype=float)
    if np.any(z == 0):
        raise ValueError("inverse revolution coordinates are undefined on the vertical axis")
    alpha = -np.abs(z) ** 2 + 1j * t
    beta = _arg_band(alpha)
    beta_c = np.clip(beta, BETA_LO + 1e-15, BETA_HI - 1e-15)
    ps, _ = pstar_pair(curve, beta_c)
    xi = 0.5 * np.log(np.abs(alpha) / np.abs(ps))
    phi = np.mod(np.angle(z), 2.0 * math.pi)
    return xi, beta, phi


def phi_inv(curve: ProfileCurve, p: HPoint) -> RevPoint:
    xi, beta, phi = phi_inv_arrays(curve, p.z, p.t)
    return RevPoint(float(xi), float(beta), float(phi))


def jacobian(curve: ProfileCurve, xi, beta):
    """Jacobian determinant e^(4 xi) |p*(beta)|^2 of the forward map."""
    ps, _ = pstar_pair(curve, beta)
    return np.exp(4.0 * np.asarray(xi)) * np.abs(ps) ** 2


def horizontality_residual(curve: ProfileCurve, beta, dxi, dbeta, dphi):
    """Max deviation from the horizontal-lift condition on derivative triples.

    A triple (dxi, dbeta, dphi) at band coordinate beta is horizontal when
    dphi = tan(beta) dxi + Im dp* / (2 Re p*) dbeta.
    """
    ps, dps = pstar_pair(curve, np.asarray(beta))
    rhs = np.tan(np.asarray(beta)) * np.asarray(dxi) + \
        np.imag(dps) / (2.0 * np.real(ps)) * np.asarray(dbeta)
    return float(np.max(np.abs(np.asarray(dphi) - rhs)))


def horizontality_rhs(curve: ProfileCurve, beta, dxi, dbeta):
    """dphi demanded by the horizontality condition."""
    ps, dps = pstar_pair(curve, np.asarray(beta))
    return np.tan(np.asarray(beta)) * np.asarray(dxi) + \
        np.imag(dps) / (2.0 * np.real(ps)) * np.asarray(dbeta)


def horizontal_speed(curve: ProfileCurve, xi, beta, dxi, dbeta):
    """Horizontal speed of a horizontal curve in revolution coordinates."""
    ps, dps = pstar_pair(curve, np.asarray(beta))
    re = np.real(-ps)
    if np.any(re <= 0):
        raise ValueError("horizontal speed undefined at the band edge (Re(-p*) = 0)")
    return np.exp(np.asarray(xi)) / np.sqrt(re) * \
        np.abs(ps * np.asarray(dxi) + 0.5 * dps * np.asarray(dbeta))


def contact_form_components(curve: ProfileCurve, xi, beta):
    """Coefficients (w_xi, w_beta, w_phi) of the contact form in revolution
    coordinates: omega = 2 e^(2xi) Im p* dxi + e^(2xi) Im dp* dbeta
    - 2 e^(2xi) Re p* dphi."""
    ps, dps = pstar_pair(curve, np.asarray(beta))
    e2 = np.exp(2.0 * np.asarray(xi))
    return 2.0 * e2 * np.imag(ps), e2 * np.imag(dps), -2.0 * e2 * np.real(ps)


def integrate_over_box(curve: ProfileCurve, f, box: Box, tol: float = 1e-9,
                       phi_independent: bool = False) -> float:
    """Integral of f(xi, beta, phi) against the coordinate Jacobian over ``box``.

    Nested 1-D adaptive quadrature (xi outer, beta middle); when the caller
    declares f independent of phi, the phi factor is integrated exactly.
    Band edges are avoided by a fixed offset; the integrand there carries a
    vanishing cos^2(beta)-type weight for all densities of interest.
    """
    _require_by_argument(curve)
    xi0, xi1 = box.xi_range
    b0, b1 = box.beta_range
    p0, p1 = box.phi_range
    b0 = max(b0, BETA_LO + EDGE_OFFSET)
    b1 = min(b1, BETA_HI - EDGE_OFFSET)

    def beta_integrand(beta, xi):
        jac = float(jacobian(curve, xi, beta))
        if phi_independent:
            return f(xi, beta, 0.5 * (p0 + p1)) * jac
        inner, _ = integrate.quad(lambda phi: f(xi, beta, phi), p0, p1,
                                  epsabs=0.0, epsrel=tol, limit=200)
        return inner * jac

    def xi_integrand(xi):
        val, _ = integrate.quad(beta_integrand, b0, b1, args=(xi,),
                                epsabs=0.0, epsrel=tol, limit=200)
        return val

    result, err = integrate.quad(xi_integrand, xi0, xi1,
                                 epsabs=0.0, epsrel=tol, limit=200)
    if phi_independent:
        result *= (p1 - p0)
        err *= (p1 - p0)
    if abs(err) > max(10.0 * tol * abs(result), 1e-13):
        raise IntegrationError(
            f"estimated quadrature error {err:.3e} above tolerance for result {result:.6e}"
        )
    return result
