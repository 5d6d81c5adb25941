"""Seeded sampling helpers shared by the verification routines.

Everything takes an explicit ``numpy.random.Generator`` so that callers
control determinism; batch plans split a master seed with
``Generator.spawn`` when work is distributed.
"""

from __future__ import annotations

import numpy as np

DEFAULT_SEED = 0


def rng_from(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    if seed_or_rng is None:
        return np.random.default_rng(DEFAULT_SEED)
    return np.random.default_rng(seed_or_rng)


def unit_sphere(rng: np.random.Generator, m: int, n: int) -> np.ndarray:
    """m quasi-independent points on S^{n-1} (Gaussian normalization)."""
    v = rng.standard_normal((m, n))
    norms = np.linalg.norm(v, axis=1, keepdims=True)
    # resample the (measure-zero) degenerate rows
    bad = norms[:, 0] < 1e-300
    while bad.any():
        v[bad] = rng.standard_normal((int(bad.sum()), n))
        norms = np.linalg.norm(v, axis=1, keepdims=True)
        bad = norms[:, 0] < 1e-300
    return v / norms


def in_ball(rng: np.random.Generator, m: int, n: int, center, radius) -> np.ndarray:
    """m points uniform in the ball B(center, radius)."""
    u = unit_sphere(rng, m, n)
    r = radius * rng.random(m) ** (1.0 / n)
    return np.asarray(center, float) + u * r[:, None]


def log_shells(
    rng: np.random.Generator,
    m: int,
    n: int,
    center,
    r_inner: float,
    r_outer: float,
) -> np.ndarray:
    """m points with log-uniform radii in [r_inner, r_outer].

    Used when a map's modified region spans many orders of magnitude in
    radius (morph stages): uniform-in-volume sampling would starve the
    inner shells where all the geometry lives.
    """
    r_inner = max(r_inner, 1e-12 * r_outer)
    u = unit_sphere(rng, m, n)
    r = np.exp(rng.uniform(np.log(r_inner), np.log(r_outer), m))
    return np.asarray(center, float) + u * r[:, None]


def support_points(rng, m, n, center, radius, frac_log=0.5):
    """Mixed sampler over a support ball: part uniform, part log-radial."""
    m_log = int(m * frac_log)
    m_uni = m - m_log
    pts = [in_ball(rng, m_uni, n, center, radius)]
    if m_log:
        pts.append(log_shells(rng, m_log, n, center, radius * 1e-9, radius))
    return np.concatenate(pts, axis=0)
