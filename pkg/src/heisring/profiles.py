"""Profile curves (f(s), 0, g(s)), their Koranyi images and validators.

A profile curve generates a surface of revolution around the vertical axis.
Its Koranyi image p*(s) = -f(s)^2 + i g(s) drives all the horizontal geometry,
so evaluators return f, g together with first and second derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import autodiff as ad
from . import exprparse

BETA_LO = math.pi / 2
BETA_HI = 3 * math.pi / 2


class DomainError(ValueError):
    """Parameter outside the open domain of a profile curve."""


class EvaluationError(ArithmeticError):
    """Profile evaluator produced a non-finite value."""


class ValidationError(ValueError):
    """Profile fails one of the admissibility conditions."""


@dataclass(frozen=True)
class ProfileCurve:
    """A C^2 curve s -> (f(s), 0, g(s)) on an open interval.

    ``evaluator`` maps an ndarray of parameters to the six arrays
    (f, fd, fdd, g, gd, gdd). ``by_argument`` marks curves whose parameter is
    the Koranyi argument beta itself.
    """

    name: str
    domain: tuple[float, float]
    evaluator: Callable = field(repr=False)
    params: dict = field(default_factory=dict)
    by_argument: bool = False
    source: Optional["ProfileCurve"] = None

    def eval(self, s):
        s_arr = np.asarray(s, dtype=float)
        lo, hi = self.domain
        if np.any(s_arr <= lo) or np.any(s_arr >= hi):
            raise DomainError(
                f"parameter outside open domain ({lo}, {hi}) of profile {self.name!r}"
            )
        out = self.evaluator(s_arr)
        if not all(np.all(np.isfinite(a)) for a in out):
            raise EvaluationError(f"non-finite value evaluating profile {self.name!r}")
        if np.ndim(s) == 0:
            return tuple(float(a) for a in out)
        return out


def eval_profile(curve: ProfileCurve, s):
    """(f, g, fd, gd, fdd, gdd) at s; raises DomainError outside the domain."""
    f, fd, fdd, g, gd, gdd = curve.eval(s)
    return f, g, fd, gd, fdd, gdd


@dataclass(frozen=True)
class KoranyiImage:
    """The image p*(s) = -f^2 + i g of a profile curve with derivatives."""

    curve: ProfileCurve

    def value(self, s):
        f, fd, fdd, g, gd, gdd = self.curve.eval(s)
        return -f * f + 1j * g

    def deriv(self, s):
        f, fd, fdd, g, gd, gdd = self.curve.eval(s)
        return -2.0 * f * fd + 1j * gd

    def second(self, s):
        f, fd, fdd, g, gd, gdd = self.curve.eval(s)
        return -2.0 * (fd * fd + f * fdd) + 1j * gdd

    def all(self, s):
        """(p*, dp*, ddp*) in one evaluator call."""
        f, fd, fdd, g, gd, gdd = self.curve.eval(s)
        ps = -f * f + 1j * g
        dps = -2.0 * f * fd + 1j * gd
        ddps = -2.0 * (fd * fd + f * fdd) + 1j * gdd
        return ps, dps, ddps

    def r(self, s):
        return np.abs(self.value(s))

    def beta(self, s):
        """Argument of p* taken in (pi/2, 3pi/2)."""
        return _arg_band(self.value(s))

    def beta_dot(self, s):
        ps, dps, _ = self.all(s)
        return np.imag(np.conj(ps) * dps) / np.abs(ps) ** 2

    def beta_ddot(self, s):
        ps, dps, ddps = self.all(s)
        r2 = np.abs(ps) ** 2
        a = np.imag(np.conj(ps) * dps)
        da = np.imag(np.conj(ps) * ddps)
        dr2 = 2.0 * np.real(np.conj(ps) * dps)
        return da / r2 - a * dr2 / (r2 * r2)


def _arg_band(w):
    """arg into (pi/2, 3pi/2]; valid for Re w <= 0."""
    ang = np.angle(w)
    return np.where(ang > 0, ang, ang + 2.0 * math.pi)


def koranyi_image(curve: ProfileCurve) -> KoranyiImage:
    return KoranyiImage(curve)


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    witness: Optional[float] = None
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    a1: CheckResult
    a2: CheckResult
    beta_monotone: CheckResult
    min_f: float
    min_neg_gdot: float
    min_beta_dot: float
    grid_n: int

    @property
    def passed(self) -> bool:
        return self.a1.passed and self.a2.passed and self.beta_monotone.passed


def _one_sided_limit(curve: ProfileCurve, endpoint: float, sign: int, index: int):
    """Extrapolated endpoint limit of component ``index`` of the evaluator.

    Linear-in-offset extrapolation through the two smallest offsets; the
    conditions are stated as limits, not values.
    """
    lo, hi = curve.domain
    span = hi - lo
    offsets = np.array([1e-3, 1e-4, 1e-5]) * span
    svals = endpoint + sign * offsets
    vals = np.array([curve.eval(s)[index] for s in svals])
    h2, h3 = offsets[1], offsets[2]
    v2, v3 = vals[1], vals[2]
    return v3 + (v3 - v2) * h3 / (h2 - h3)


def endpoint_limit(curve: ProfileCurve, side: str, index: int) -> float:
    """Extrapolated one-sided limit of evaluator component ``index``.

    ``side`` is "lo" or "hi"; components are ordered (f, fd, fdd, g, gd, gdd).
    """
    lo, hi = curve.domain
    if side == "lo":
        return float(_one_sided_limit(curve, lo, +1, index))
    if side == "hi":
        return float(_one_sided_limit(curve, hi, -1, index))
    raise ValueError(f"side must be 'lo' or 'hi', got {side!r}")


def _refined_interior_touch(curve: ProfileCurve, grid, f, tol: float):
    """Parameter of a refined strict local minimum of f with value <= tol."""
    from scipy import optimize

    inner = np.flatnonzero((f[1:-1] < f[:-2]) & (f[1:-1] <= f[2:])) + 1
    for i in inner:
        res = optimize.minimize_scalar(
            lambda s: curve.eval(float(s))[0],
            bounds=(float(grid[i - 1]), float(grid[i + 1])), method="bounded",
            options={"xatol": 1e-12})
        if res.fun <= tol:
            return float(res.x)
    return None


def validate(curve: ProfileCurve, grid_n: int = 4096) -> ValidationReport:
    """Check positivity of f, downward heading of g and monotonicity of beta.

    Sampled certificate only: conditions are checked on ``grid_n`` interior
    points plus extrapolated one-sided endpoint limits. Failures are reported
    with a witness parameter, not raised.
    """
    if grid_n < 16:
        raise ValueError("grid_n must be at least 16")
    lo, hi = curve.domain
    grid = np.linspace(lo, hi, grid_n + 2)[1:-1]
    f, fd, fdd, g, gd, gdd = curve.eval(grid)
    img = koranyi_image(curve)
    bdot = img.beta_dot(grid)

    scale_f = max(1.0, float(np.max(np.abs(f))))
    scale_g = max(1.0, float(np.max(np.abs(g))))

    # (A1): f > 0 inside, f -> 0 at both endpoints. A tangency of f with zero
    # can slip between grid points, so strict interior local minima of the
    # sampled f are refined before judging.
    a1 = CheckResult(True)
    bad = np.flatnonzero(f <= 0.0)
    touch = _refined_interior_touch(curve, grid, f, 1e-9 * scale_f)
    if bad.size:
        a1 = CheckResult(False, float(grid[bad[0]]), "f <= 0 in the interior")
    elif touch is not None:
        a1 = CheckResult(False, touch, "f touches zero in the interior")
    else:
        fa = _one_sided_limit(curve, lo, +1, 0)
        fb = _one_sided_limit(curve, hi, -1, 0)
        if abs(fa) > 1e-2 * scale_f or abs(fb) > 1e-2 * scale_f:
            a1 = CheckResult(False, lo if abs(fa) > abs(fb) else hi,
                             "f does not vanish at an endpoint")

    # (A2): g strictly decreasing, g(lo+) > 0 > g(hi-).
    a2 = CheckResult(True)
    bad = np.flatnonzero(gd >= 0.0)
    if bad.size:
        a2 = CheckResult(False, float(grid[bad[0]]), "g is not decreasing")
    else:
        ga = _one_sided_limit(curve, lo, +1, 3)
        gb = _one_sided_limit(curve, hi, -1, 3)
        if not (ga > 0.0 and gb < 0.0):
            a2 = CheckResult(False, lo if ga <= 0 else hi,
                             "endpoint limits of g have the wrong signs")

    # beta strictly increasing.
    beta_mono = CheckResult(True)
    bad = np.flatnonzero(bdot <= 0.0)
    if bad.size:
        beta_mono = CheckResult(False, float(grid[bad[0]]),
                                "arg p* is not strictly increasing")

    return ValidationReport(
        a1=a1,
        a2=a2,
        beta_monotone=beta_mono,
        min_f=float(np.min(f)),
        min_neg_gdot=float(np.min(-gd)),
        min_beta_dot=float(np.min(bdot)),
        grid_n=grid_n,
    )


# -- reparametrization by argument ---------------------------------------------


class ReparamError(RuntimeError):
    """Numeric inversion of s -> beta(s) failed."""


def reparam_by_argument(curve: ProfileCurve, tol: float = 1e-12,
                        seed_n: int = 4096) -> ProfileCurve:
    """Reparametrize a validated profile by its Koranyi argument beta.

    The inverse s(beta) is found by Newton iterations seeded from a dense
    monotone sample of beta(s) (bracketing is guaranteed by monotonicity);
    derivatives come from the inverse-function rule.
    """
    if curve.by_argument:
        return curve
    img = koranyi_image(curve)
    lo, hi = curve.domain
    eps = 1e-12 * (hi - lo)
    s_grid = np.linspace(lo + eps, hi - eps, seed_n + 1)
    beta_grid = np.asarray(img.beta(s_grid))
    if np.any(np.diff(beta_grid) <= 0):
        raise ReparamError(f"beta(s) is not strictly increasing for {curve.name!r}")

    def invert(beta):
        beta = np.asarray(beta, dtype=float)
        s = np.interp(beta, beta_grid, s_grid)
        for _ in range(80):
            resid = img.beta(s) - beta
            if np.all(np.abs(resid) <= max(tol, 1e-15)):
                break
            step = resid / img.beta_dot(s)
            s = np.clip(s - step, lo + eps, hi - eps)
        else:
            raise ReparamError(f"inversion of beta(s) did not converge for {curve.name!r}")
        return s

    def evaluator(beta):
        s = invert(beta)
        f, fd, fdd, g, gd, gdd = curve.eval(s)
        bdot = img.beta_dot(s)
        bddot = img.beta_ddot(s)
        sp = 1.0 / bdot
        spp = -bddot / bdot ** 3
        return (
            f, fd * sp, fdd * sp * sp + fd * spp,
            g, gd * sp, gdd * sp * sp + gd * spp,
        )

    return ProfileCurve(
        name=f"{curve.name} (by argument)",
        domain=(BETA_LO, BETA_HI),
        evaluator=evaluator,
        params=dict(curve.params),
        by_argument=True,
        source=curve,
    )


# -- catalog -------------------------------------------------------------------


def _koranyi_sphere(R: float) -> ProfileCurve:
    def evaluator(beta):
        c = -np.cos(beta)
        sb = np.sin(beta)
        rc = np.sqrt(c)
        f = R * rc
        fd = R * sb / (2.0 * rc)
        fdd = R * (np.cos(beta) / (2.0 * rc) - sb * sb / (4.0 * c * rc))
        g = R * R * sb
        gd = R * R * np.cos(beta)
        gdd = -R * R * sb
        return f, fd, fdd, g, gd, gdd

    return ProfileCurve("koranyi_sphere", (BETA_LO, BETA_HI), evaluator,
                        params={"R": R}, by_argument=True)


def _bubble_set(R: float) -> ProfileCurve:
    def evaluator(s):
        f = 2.0 * R * np.sin(s / (2.0 * R))
        fd = np.cos(s / (2.0 * R))
        fdd = -np.sin(s / (2.0 * R)) / (2.0 * R)
        g = 2.0 * R * R * np.sin(s / R) - 2.0 * R * s + 2.0 * math.pi * R * R
        gd = 2.0 * R * np.cos(s / R) - 2.0 * R
        gdd = -2.0 * np.sin(s / R)
        return f, fd, fdd, g, gd, gdd

    return ProfileCurve("bubble_set", (0.0, 2.0 * math.pi * R), evaluator,
                        params={"R": R})


def _sinc_family(x):
    """S = sin(x)/x with S', S''; series near 0 to keep full precision."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 0.1
    xs = np.where(small, 1.0, x)  # avoid 0/0 in the closed forms
    x2 = x * x
    s_series = 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0
    s1_series = x * (-1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0 + x2 * x2 * x2 / 45360.0)
    s2_series = -1.0 / 3.0 + x2 / 10.0 - x2 * x2 / 168.0 + x2 * x2 * x2 / 6480.0
    sn, cn = np.sin(xs), np.cos(xs)
    s_closed = sn / xs
    s1_closed = cn / xs - sn / (xs * xs)
    s2_closed = -sn / xs - 2.0 * cn / (xs * xs) + 2.0 * sn / (xs * xs * xs)
    return (
        np.where(small, s_series, s_closed),
        np.where(small, s1_series, s1_closed),
        np.where(small, s2_series, s2_closed),
    )


def _gsin_family(y):
    """G = (sin(y) - y)/y^2 with G', G''; series near 0."""
    y = np.asarray(y, dtype=float)
    small = np.abs(y) < 0.1
    ys = np.where(small, 1.0, y)
    y2 = y * y
    g_series = y * (-1.0 / 6.0 + y2 / 120.0 - y2 * y2 / 5040.0 + y2 * y2 * y2 / 362880.0)
    g1_series = -1.0 / 6.0 + y2 / 40.0 - y2 * y2 / 1008.0 + y2 * y2 * y2 / 51840.0
    g2_series = y * (1.0 / 20.0 - y2 / 252.0 + y2 * y2 / 8640.0 - y2 * y2 * y2 / 554400.0)
    sn, cn = np.sin(ys), np.cos(ys)
    g_closed = (sn - ys) / (ys * ys)
    g1_closed = (cn - 1.0) / (ys * ys) - 2.0 * (sn - ys) / (ys ** 3)
    g2_closed = -sn / (ys * ys) - 4.0 * (cn - 1.0) / (ys ** 3) + 6.0 * (sn - ys) / (ys ** 4)
    return (
        np.where(small, g_series, g_closed),
        np.where(small, g1_series, g1_closed),
        np.where(small, g2_series, g2_closed),
    )


def _cc_sphere(R: float) -> ProfileCurve:
    def evaluator(k):
        s, s1, s2 = _sinc_family(k * R / 2.0)
        f = R * s
        fd = (R * R / 2.0) * s1
        fdd = (R ** 3 / 4.0) * s2
        g_, g1, g2 = _gsin_family(k * R)
        g = 2.0 * R * R * g_
        gd = 2.0 * R ** 3 * g1
        gdd = 2.0 * R ** 4 * g2
        return f, fd, fdd, g, gd, gdd

    return ProfileCurve("cc_sphere", (-2.0 * math.pi / R, 2.0 * math.pi / R),
                        evaluator, params={"R": R})


_CATALOG = {
    "koranyi_sphere": _koranyi_sphere,
    "bubble_set": _bubble_set,
    "cc_sphere": _cc_sphere,
}

CATALOG_NAMES = tuple(_CATALOG)


def catalog(name: str, R: float = 1.0) -> ProfileCurve:
    """Built-in profiles: Koranyi sphere, bubble set, CC sphere."""
    if name not in _CATALOG:
        raise ValueError(f"unknown catalog profile {name!r}; choose from {CATALOG_NAMES}")
    if not R > 0.0:
        raise ValueError(f"radius must be positive, got {R}")
    return _CATALOG[name](R)


# -- parsed profiles -----------------------------------------------------------


def parse_profile(text: str, name: str = "user profile") -> ProfileCurve:
    """Build a ProfileCurve from the plain-text profile language.

    Derivatives come from second-order dual numbers threaded through the
    parsed expressions.
    """
    f_ast, g_ast, domain, params = exprparse.parse_profile_source(text)

    def evaluator(s):
        env = dict(params)
        env["s"] = ad.Dual2.seed(s)
        fv = exprparse.evaluate(f_ast, env)
        gv = exprparse.evaluate(g_ast, env)
        if not isinstance(fv, ad.Dual2):
            fv = ad.Dual2(np.full_like(np.asarray(s, dtype=float), fv), 0.0, 0.0)
        if not isinstance(gv, ad.Dual2):
            gv = ad.Dual2(np.full_like(np.asarray(s, dtype=float), gv), 0.0, 0.0)
        zero = np.zeros_like(np.asarray(s, dtype=float))
        return (
            fv.val + zero, fv.d1 + zero, fv.d2 + zero,
            gv.val + zero, gv.d1 + zero, gv.d2 + zero,
        )

    return ProfileCurve(name, domain, evaluator,
                        params={k: v for k, v in params.items() if k != "pi"})
