"""Angles, twists of finite relations and matrices, matrix norms, and the
ball angle bound.

All angles are radians in [0, pi]; degrees exist only at the CLI boundary.
The cosine fed to arccos is always clamped to [-1, 1] so near-parallel
vectors cannot produce NaN.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from ._sampling import rng_from, unit_sphere
from .errors import DomainError

__all__ = [
    "angle",
    "angle_many",
    "tw_finite",
    "op_norm",
    "matrix_twist",
    "in_N_theta",
    "NThetaReport",
    "ball_angle_bound",
]


def angle(v, w) -> float:
    """Angle between nonzero vectors v and w, in [0, pi]."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    nv = np.linalg.norm(v)
    nw = np.linalg.norm(w)
    if nv == 0.0 or nw == 0.0:
        raise DomainError("angle undefined for the zero vector")
    c = float(np.dot(v, w) / (nv * nw))
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def angle_many(V: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Row-wise angles between the rows of V and W. Zero rows raise."""
    V = np.asarray(V, dtype=float)
    W = np.asarray(W, dtype=float)
    nv = np.linalg.norm(V, axis=-1)
    nw = np.linalg.norm(W, axis=-1)
    if np.any(nv == 0.0) or np.any(nw == 0.0):
        raise DomainError("angle undefined for the zero vector")
    c = np.einsum("...i,...i->...", V, W) / (nv * nw)
    return np.arccos(np.clip(c, -1.0, 1.0))


def tw_finite(pairs: Sequence) -> float:
    """Twist of a finite relation: max over pairs of pairs (d0,e0),(d1,e1)
    with d0 != d1 and e0 != e1 of the angle between d1-d0 and e1-e0.

    The sup of the empty set is taken to be 0, so relations with at most
    one pair (and the identity relation) have twist 0.
    """
    pts = [(np.asarray(d, dtype=float), np.asarray(e, dtype=float)) for d, e in pairs]
    t = len(pts)
    if t <= 1:
        return 0.0
    D = np.stack([p[0] for p in pts])
    E = np.stack([p[1] for p in pts])
    i, j = np.triu_indices(t, k=1)
    dd = D[j] - D[i]
    ee = E[j] - E[i]
    ok = (np.linalg.norm(dd, axis=1) > 0) & (np.linalg.norm(ee, axis=1) > 0)
    if not ok.any():
        return 0.0
    return float(np.max(angle_many(dd[ok], ee[ok])))


def op_norm(Y) -> float:
    """Operator (spectral) norm: the largest singular value."""
    Y = np.asarray(Y, dtype=float)
    return float(np.linalg.norm(Y, 2))


def _sphere_angles(Y: np.ndarray, V: np.ndarray) -> np.ndarray:
    return angle_many(V, V @ Y.T)


def matrix_twist(Y, samples: int = 0, rng=None) -> float:
    """Estimate of sup over the unit sphere of the angle between v and Yv.

    Lower-bound estimator: quasi-uniform sphere seeds refined by local
    ascent (Nelder-Mead on a sphere chart); for n = 2 an additional dense
    sweep of the circle parameter.  `samples` = 0 picks 64*n seeds.
    """
    Y = np.asarray(Y, dtype=float)
    n = Y.shape[0]
    if Y.shape != (n, n):
        raise DomainError("matrix_twist requires a square matrix")
    if abs(np.linalg.det(Y)) < 1e-300:
        raise DomainError("matrix_twist undefined for singular matrices")
    rng = rng_from(rng)
    if n == 1:
        return 0.0 if Y[0, 0] > 0 else float(np.pi)

    best = 0.0
    if n == 2:
        phi = np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)
        V = np.stack([np.cos(phi), np.sin(phi)], axis=1)
        a = _sphere_angles(Y, V)
        k = int(np.argmax(a))
        best = float(a[k])
        # golden-section refinement around the best grid angle
        lo, hi = phi[k] - 2e-3, phi[k] + 2e-3
        for _ in range(60):
            m1 = lo + 0.381966011 * (hi - lo)
            m2 = hi - 0.381966011 * (hi - lo)
            v1 = _sphere_angles(Y, np.array([[np.cos(m1), np.sin(m1)]]))[0]
            v2 = _sphere_angles(Y, np.array([[np.cos(m2), np.sin(m2)]]))[0]
            if v1 < v2:
                lo = m1
            else:
                hi = m2
        mid = 0.5 * (lo + hi)
        best = max(best, float(_sphere_angles(Y, np.array([[np.cos(mid), np.sin(mid)]]))[0]))
        return best

    m = samples if samples > 0 else 64 * n
    V = unit_sphere(rng, m, n)
    a = _sphere_angles(Y, V)
    best = float(np.max(a))
    order = np.argsort(a)[::-1][:8]

    def neg_angle(x):
        nx = np.linalg.norm(x)
        if nx < 1e-12:
            return 0.0
        return -_sphere_angles(Y, (x / nx)[None, :])[0]

    for k in order:
        res = minimize(neg_angle, V[k], method="Nelder-Mead",
                       options={"maxiter": 200 * n, "xatol": 1e-10, "fatol": 1e-12})
        best = max(best, float(-res.fun))
    return min(best, float(np.pi))


@dataclass(frozen=True)
class NThetaReport:
    member: bool
    det: float
    twist: float
    det_margin: float      # det (must be > 0)
    twist_margin: float    # theta - twist (must be > 0)

    def __bool__(self) -> bool:
        return self.member


def in_N_theta(Y, theta: float, rng=None) -> NThetaReport:
    """Membership test for {A : det A > 0 and matrix twist < theta}."""
    Y = np.asarray(Y, dtype=float)
    det = float(np.linalg.det(Y))
    if det <= 0.0:
        return NThetaReport(False, det, float(np.pi), det, theta - np.pi)
    tw = matrix_twist(Y, rng=rng)
    return NThetaReport(tw < theta, det, tw, det, theta - tw)


def ball_angle_bound(T: float, r: float, s: float) -> float:
    """Upper bound pi*(r+s)/(2T) for the angle between the center-to-center
    direction and any surface-to-surface direction of two balls with radii
    r, s whose centers are T >= r+s apart."""
    if r < 0 or s < 0:
        raise DomainError("radii must be nonnegative")
    if r == 0.0 and s == 0.0:
        return 0.0
    if T < r + s:
        raise DomainError(f"ball bound needs T >= r+s (T={T}, r+s={r + s})")
    return float(np.pi * (r + s) / (2.0 * T))
