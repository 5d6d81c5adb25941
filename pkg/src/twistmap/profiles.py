"""Smooth scalar profiles: slow-logarithmic ramps, plateau bumps, and
radial expansion profiles.

The slow ramp is the workhorse: a non-decreasing C-infinity transition
from 0 to 1 whose multiplicative increments are controlled,
phi((1+s)x) - phi(x) <= zeta*s for all s, x > 0.  It is built as a
clamped logarithm mollified by an even C-infinity bump, evaluated by
Gauss-Legendre quadrature and cached on a geometric grid with a monotone
cubic interpolant.  Outside the mollified window the exact values 0 and 1
are returned, so the endpoint values carry no quadrature error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import ConstructionError

__all__ = [
    "SlowRamp",
    "Profile",
    "make_slow_ramp",
    "make_decreasing_ramp",
    "make_plateau_bump",
    "make_expansion_profile",
    "smooth_step",
    "smooth_step_deriv",
]

_CHECK_SLACK = 1e-6  # absorbs quadrature/interpolation error in property checks
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(48)


def _exp_bump(u):
    """exp(-1/u) continued by 0 for u <= 0; building block of C-inf steps."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    pos = u > 1e-12
    out[pos] = np.exp(-1.0 / u[pos])
    return out


def _exp_bump_deriv(u):
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    pos = u > 1e-12
    out[pos] = np.exp(-1.0 / u[pos]) / u[pos] ** 2
    return out


def smooth_step(u):
    """C-infinity non-decreasing step: 0 for u <= 0, 1 for u >= 1."""
    u = np.asarray(u, dtype=float)
    b0 = _exp_bump(u)
    b1 = _exp_bump(1.0 - u)
    return b0 / (b0 + b1 + 1e-300)


def smooth_step_deriv(u):
    u = np.asarray(u, dtype=float)
    b0 = _exp_bump(u)
    b1 = _exp_bump(1.0 - u)
    d0 = _exp_bump_deriv(u)
    d1 = _exp_bump_deriv(1.0 - u)
    denom = (b0 + b1) ** 2 + 1e-300
    return (d0 * b1 + b0 * d1) / denom


# max of smooth_step_deriv, computed once on a fine grid (the function is
# symmetric about 1/2 where the max is attained)
_SMOOTH_STEP_DERIV_MAX = float(np.max(smooth_step_deriv(np.linspace(0.3, 0.7, 20001))))


def _mollifier(t, a):
    """Even C-infinity bump supported on (-a, a), unnormalized."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < a
    s = t[inside] / a
    out[inside] = np.exp(-1.0 / (1.0 - s * s))
    return out


@dataclass(frozen=True)
class SlowRamp:
    """Evaluable mollified slow-log ramp with its construction constants.

    ``increasing`` selects phi (0 -> 1) or its mirror 1 - phi, which is
    non-increasing with psi(x) - psi((1+s)x) <= zeta*s.
    """

    P: float
    Q: float
    zeta: float
    increasing: bool
    P1: float          # inner log endpoint (paper proof's P')
    Q1: float          # outer log endpoint (Q' = e^{1/zeta'} P')
    zeta1: float       # reduced slope constant (zeta' < zeta)
    a: float           # mollifier half-width
    _interp: PchipInterpolator = field(repr=False, compare=False)
    _dinterp: object = field(repr=False, compare=False)

    def _raw(self, x):
        """The unmollified clamped-log ramp (increasing orientation)."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        hi = x >= self.Q1
        mid = (x > self.P1) & ~hi
        out[hi] = 1.0
        out[mid] = self.zeta1 * np.log(x[mid] / self.P1)
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.zeros_like(x)
        lo, hi = self.P1 - self.a, self.Q1 + self.a
        above = x >= hi
        mid = (x > lo) & ~above
        out[above] = 1.0
        if mid.any():
            out[mid] = np.clip(self._interp(x[mid]), 0.0, 1.0)
        if not self.increasing:
            out = 1.0 - out
        return float(out[0]) if scalar else out

    def deriv(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.zeros_like(x)
        lo, hi = self.P1 - self.a, self.Q1 + self.a
        mid = (x > lo) & (x < hi)
        if mid.any():
            out[mid] = np.maximum(self._dinterp(x[mid]), 0.0)
        if not self.increasing:
            out = -out
        return float(out[0]) if scalar else out

    @property
    def sup_deriv(self) -> float:
        grid = np.asarray(self._interp.x)
        return float(np.max(np.abs(self._dinterp(grid))))

    def params(self) -> dict:
        return {"P": self.P, "Q": self.Q, "zeta": self.zeta,
                "increasing": self.increasing}


def _mollified_values(xs, ramp_raw, P1, Q1, a):
    """Convolution of the raw ramp against the normalized mollifier at xs.

    Integrates delta(t) * raw(x - t) over t in [-a, a], splitting at the
    raw ramp's kinks t = x - Q1 and t = x - P1 so every Gauss-Legendre
    panel sees a smooth integrand.
    """
    # normalization constant of the mollifier for this half-width
    nodes0 = 0.5 * a * (_GL_NODES + 1.0)  # on [0, a]
    w0 = 0.5 * a * _GL_WEIGHTS
    Z = 2.0 * float(np.sum(_mollifier(nodes0, a) * w0))

    xs = np.asarray(xs, dtype=float)
    vals = np.zeros_like(xs)
    for i, x in enumerate(xs):
        breaks = sorted({-a, a, *np.clip([x - Q1, x - P1], -a, a)})
        total = 0.0
        for lo, hi in zip(breaks[:-1], breaks[1:]):
            if hi - lo < 1e-300:
                continue
            t = 0.5 * (hi - lo) * _GL_NODES + 0.5 * (hi + lo)
            w = 0.5 * (hi - lo) * _GL_WEIGHTS
            total += float(np.sum(_mollifier(t, a) * ramp_raw(x - t) * w))
        vals[i] = total / Z
    return vals


def make_slow_ramp(P: float, Q: float, zeta: float, increasing: bool = True,
                   grid_size: int = 2001) -> SlowRamp:
    """Construct a slow-log ramp for the window [P, Q] and increment slope
    zeta.  Requires P < Q * exp(-1/zeta)."""
    if not (P > 0 and Q > P and zeta > 0):
        raise ConstructionError("need 0 < P < Q and zeta > 0", P=P, Q=Q, zeta=zeta)
    min_ratio = math.exp(1.0 / zeta)
    if not P < Q * math.exp(-1.0 / zeta):
        raise ConstructionError(
            f"slow ramp infeasible: requires Q/P > e^(1/zeta) = {min_ratio:.6g}, "
            f"got Q/P = {Q / P:.6g}",
            min_ratio=min_ratio, ratio=Q / P)

    # Reduced slope zeta' < zeta, still feasible for the window: the raw
    # ramp needs P < Q e^{-1/zeta'}, i.e. zeta' > 1/log(Q/P).
    zeta_floor = 1.0 / math.log(Q / P)
    zeta1 = zeta - min(zeta / 16.0, 0.5 * (zeta - zeta_floor))
    # P' geometric mean of P and the largest admissible value
    P1_max = Q * math.exp(-1.0 / zeta1)
    P1 = math.sqrt(P * P1_max)
    Q1 = math.exp(1.0 / zeta1) * P1
    a = 0.5 * min(Q - Q1, P1 - P, (zeta - zeta1) * P / (1.0 + zeta))
    if a <= 0:
        raise ConstructionError("mollifier width collapsed", P=P, Q=Q, zeta=zeta)

    def raw(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        hi = x >= Q1
        mid = (x > P1) & ~hi
        out[hi] = 1.0
        out[mid] = zeta1 * np.log(x[mid] / P1)
        return out

    lo, hi = P1 - a, Q1 + a
    # geometric grid (log-scale behavior) with a little linear padding
    grid = np.unique(np.concatenate([
        np.geomspace(lo, hi, grid_size),
        np.linspace(lo, lo + 4 * a, 65),
        np.linspace(hi - 4 * a, hi, 65),
    ]))
    vals = _mollified_values(grid, raw, P1, Q1, a)
    vals = np.clip(np.maximum.accumulate(vals), 0.0, 1.0)
    vals[0], vals[-1] = 0.0, 1.0
    interp = PchipInterpolator(grid, vals, extrapolate=False)
    ramp = SlowRamp(P=P, Q=Q, zeta=zeta, increasing=increasing,
                    P1=P1, Q1=Q1, zeta1=zeta1, a=a,
                    _interp=interp, _dinterp=interp.derivative())
    _verify_ramp(ramp)
    return ramp


def _verify_ramp(ramp: SlowRamp) -> None:
    """Construction-time property checks; failures abort construction."""
    if abs(ramp(ramp.P) - (0.0 if ramp.increasing else 1.0)) > 1e-15:
        raise ConstructionError("ramp endpoint at P is not exact")
    if abs(ramp(ramp.Q) - (1.0 if ramp.increasing else 0.0)) > 1e-15:
        raise ConstructionError("ramp endpoint at Q is not exact")
    grid = np.geomspace(ramp.P * 0.5, ramp.Q * 2.0, 4001)
    v = ramp(grid)
    dv = np.diff(v)
    if ramp.increasing and np.any(dv < -1e-12):
        raise ConstructionError("ramp not monotone non-decreasing")
    if not ramp.increasing and np.any(dv > 1e-12):
        raise ConstructionError("mirror ramp not monotone non-increasing")
    rng = np.random.default_rng(123457)
    x = np.exp(rng.uniform(np.log(ramp.P * 0.25), np.log(ramp.Q * 4.0), 4000))
    s = np.exp(rng.uniform(np.log(1e-6), np.log(50.0), 4000))
    if ramp.increasing:
        inc = ramp((1.0 + s) * x) - ramp(x)
    else:
        inc = ramp(x) - ramp((1.0 + s) * x)
    bad = inc - ramp.zeta * s
    if np.any(bad > _CHECK_SLACK):
        raise ConstructionError(
            f"slow-ramp increment property violated by {float(np.max(bad)):.3g}")


def make_decreasing_ramp(P: float, Q: float, zeta: float) -> SlowRamp:
    """Mirror ramp: 1 below P, 0 above Q, psi(x) - psi((1+s)x) <= zeta*s."""
    return make_slow_ramp(P, Q, zeta, increasing=False)


class Profile:
    """Scalar profile with evaluable value and derivative."""

    kind: str

    def __call__(self, r):  # pragma: no cover - interface
        raise NotImplementedError

    def deriv(self, r):  # pragma: no cover - interface
        raise NotImplementedError

    def params(self) -> dict:  # pragma: no cover - interface
        raise NotImplementedError


@dataclass(frozen=True)
class PlateauBump(Profile):
    """C-infinity non-increasing plateau: 1 on [0, P], 0 on [Q, inf)."""

    P: float
    Q: float
    kind: str = "plateau-bump"

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        u = (self.Q - r) / (self.Q - self.P)
        out = smooth_step(u)
        return float(out) if out.ndim == 0 else out

    def deriv(self, r):
        r = np.asarray(r, dtype=float)
        u = (self.Q - r) / (self.Q - self.P)
        out = -smooth_step_deriv(u) / (self.Q - self.P)
        return float(out) if out.ndim == 0 else out

    @property
    def sup_deriv(self) -> float:
        """sup |psi'|; for the smooth step this is attained mid-ramp."""
        return _SMOOTH_STEP_DERIV_MAX / (self.Q - self.P)

    def params(self) -> dict:
        return {"P": self.P, "Q": self.Q}


def make_plateau_bump(P: float, Q: float) -> PlateauBump:
    if not 0 < P < Q:
        raise ConstructionError("plateau bump needs 0 < P < Q", P=P, Q=Q)
    return PlateauBump(P=P, Q=Q)


@dataclass(frozen=True)
class ExpansionProfile(Profile):
    """C-infinity nu with nu = K on [0, s2], nu = 1 on [r3, inf) and
    r |-> nu(r) * r strictly increasing.

    Built in log-log coordinates: nu(r) = K^(1 - S(log r)) where S is the
    normalized running integral of a plateau window, so the slope of
    log(nu(r) r) stays strictly positive.
    """

    K: float
    s2: float
    r3: float
    kind: str = "expansion"
    _S: object = field(default=None, repr=False, compare=False)
    _dS: object = field(default=None, repr=False, compare=False)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        out = np.ones_like(r)
        if self.K == 1.0:
            return float(out[0]) if scalar else out
        low = r <= self.s2
        high = r >= self.r3
        mid = ~(low | high)
        out[low] = self.K
        if mid.any():
            S = np.clip(self._S(np.log(r[mid])), 0.0, 1.0)
            out[mid] = self.K ** (1.0 - S)
        return float(out[0]) if scalar else out

    def deriv(self, r):
        r = np.asarray(r, dtype=float)
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        out = np.zeros_like(r)
        if self.K != 1.0:
            mid = (r > self.s2) & (r < self.r3)
            if mid.any():
                u = np.log(r[mid])
                S = np.clip(self._S(u), 0.0, 1.0)
                dS = np.maximum(self._dS(u), 0.0)
                out[mid] = -(self.K ** (1.0 - S)) * math.log(self.K) * dS / r[mid]
        return float(out[0]) if scalar else out

    def params(self) -> dict:
        return {"K": self.K, "s2": self.s2, "r3": self.r3}


def make_expansion_profile(K: float, s2: float, r3: float) -> ExpansionProfile:
    """Expansion profile for Lemma-style radial stretches.  Feasible iff
    K * s2 < r3 (the stretched inner radius must clear the outer one)."""
    if not (K >= 1.0 and s2 > 0):
        raise ConstructionError("need K >= 1 and s2 > 0", K=K, s2=s2)
    if not K * s2 < r3:
        raise ConstructionError(
            f"expansion profile infeasible: K*s2 = {K * s2:.6g} must be < r3 = {r3:.6g}",
            K=K, s2=s2, r3=r3, min_r3=K * s2)
    if K == 1.0:
        return ExpansionProfile(K=1.0, s2=s2, r3=r3)

    u0, u1 = math.log(s2), math.log(r3)
    span = u1 - u0
    logK = math.log(K)
    delta = span - logK  # = log(r3 / (K s2)) > 0
    # plateau window beta on [0,1]: ramps of width eps at both ends; its
    # integral must exceed logK/span so the log-log slope stays positive
    eps = min(0.45, 0.5 * delta / span)
    m = max(4001, min(400001, int(80.0 / eps)))
    w = np.linspace(0.0, 1.0, m)
    beta = smooth_step(w / eps) * smooth_step((1.0 - w) / eps)
    cum = np.concatenate([[0.0], np.cumsum((beta[1:] + beta[:-1]) * 0.5 * np.diff(w))])
    total = cum[-1] * span
    if total <= logK:
        raise ConstructionError(
            "expansion profile window too tight for a smooth transition",
            K=K, s2=s2, r3=r3)
    S = PchipInterpolator(u0 + w * span, cum / cum[-1], extrapolate=False)
    prof = ExpansionProfile(K=K, s2=s2, r3=r3, _S=S, _dS=S.derivative())

    rr = np.geomspace(s2 * 0.9, r3 * 1.1, 10000)
    g = prof(rr) * rr
    if np.any(np.diff(g) <= 0):
        raise ConstructionError("r * nu(r) failed strict monotonicity on the grid",
                                K=K, s2=s2, r3=r3)
    return prof
