"""Brute-force reference solvers for small dimension.

These exist to certify the main solvers: dense random sampling over the
sphere for the norm itself, and exhaustive grids over the scalar (mu on the
circle, xi in the plane) for the parallelism/orthogonality optimizations.
Global coverage comes from the grids and sampling; only the final local
polish shares machinery with the main path.  Everything is deterministic
given the config seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from ._ascent import maximize_on_sphere, random_unit_vectors
from .errors import DimensionTooLarge, ZeroDirection
from .seminorms import SolverConfig, _check_lambda, _golden_max, _sphere_max, _sphere_max_batch, al_norm
from .weights import Weight, check_dims, reduce

MAX_ORACLE_DIM = 4
XI_LADDER_RUNGS = 16
XI_LADDER_DECADES = 3.0
XI_ANGLES = 128
MU_GRID = 512


@dataclass(frozen=True)
class OracleConfig:
    n_samples: int = 200000
    rng_seed: int = 42
    polish_steps: int = 200

    def __post_init__(self):
        if self.n_samples < 1000:
            raise ValueError(f"n_samples must be >= 1000, got {self.n_samples}")


def _guard_dim(w: Weight) -> None:
    if w.n > MAX_ORACLE_DIM:
        raise DimensionTooLarge(f"oracles are capped at n <= {MAX_ORACLE_DIM}, got n = {w.n}")


def sphere_sample_max(w: Weight, lam: float, x, cfg: OracleConfig | None = None) -> float:
    """Estimate |x|_{a,lam} by dense uniform sampling of the unit sphere.

    The best sample is polished with the ascent rule (cfg.polish_steps cap).
    """
    lam = _check_lambda(lam)
    cfg = cfg or OracleConfig()
    _guard_dim(w)
    y = reduce(w, x)
    n = w.n
    rng = np.random.default_rng(cfg.rng_seed)
    samples = random_unit_vectors(rng, cfg.n_samples, n)
    yu = samples @ y.T
    g = np.einsum("bi,bi->b", samples.conj(), yu)
    f = lam * np.einsum("bi,bi->b", yu.conj(), yu).real + (1.0 - lam) * np.abs(g) ** 2
    best = int(np.argmax(f))
    res = maximize_on_sphere(y[None], samples[best][None, None, :], lam, cfg.polish_steps)
    return math.sqrt(max(float(res.f[0, 0]), float(f[best]), 0.0))


def _solver_cfg(cfg: OracleConfig) -> SolverConfig:
    return SolverConfig(rng_seed=cfg.rng_seed)


def grid_min_xi(w: Weight, lam: float, x, y, cfg: OracleConfig | None = None):
    """min over complex xi of |x + xi y|_{a,lam} by polar grid plus polish.

    Radii run on a geometric ladder inside [0, 4 |x| / |y|], angles on a
    uniform 128-point circle.  Returns (min value, argmin xi).
    """
    lam = _check_lambda(lam)
    cfg = cfg or OracleConfig()
    _guard_dim(w)
    x = check_dims(w, x, "x")
    y = check_dims(w, y, "y")
    scfg = _solver_cfg(cfg)

    ny = al_norm(w, lam, y, scfg).value
    if ny <= 1e-12:
        raise ZeroDirection(f"|y|_(a,lam) = {ny!r} is too small to search along")
    nx = al_norm(w, lam, x, scfg).value

    r_max = 4.0 * max(nx, 1e-30) / ny
    radii = r_max * np.power(10.0, -XI_LADDER_DECADES * np.arange(XI_LADDER_RUNGS) / (XI_LADDER_RUNGS - 1))
    angles = 2.0 * np.pi * np.arange(XI_ANGLES) / XI_ANGLES
    xi_grid = np.concatenate([[0.0 + 0.0j], (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()])

    yx = reduce(w, x)
    yy = reduce(w, y)
    stack = yx[None] + xi_grid[:, None, None] * yy[None]
    vals, _ = _sphere_max_batch(stack, lam, scfg)
    k = int(np.argmin(vals))

    warm_holder = [None]

    def fun(v) -> float:
        xi = v[0] + 1j * v[1]
        r = _sphere_max(yx + xi * yy, lam, scfg, light=True, warm=warm_holder[0])
        warm_holder[0] = r.u
        return math.sqrt(max(r.fmax, 0.0))

    xi0 = xi_grid[k]
    step = max(abs(xi0), r_max / 100.0) * 0.1
    simplex = np.array([
        [xi0.real, xi0.imag],
        [xi0.real + step, xi0.imag],
        [xi0.real, xi0.imag + step],
    ])
    nm = optimize.minimize(
        fun,
        np.array([xi0.real, xi0.imag]),
        method="Nelder-Mead",
        options={"initial_simplex": simplex, "xatol": 1e-9, "fatol": 1e-13, "maxfev": 600},
    )
    xi_nm = complex(nm.x[0], nm.x[1])

    candidates = [xi_nm, complex(xi_grid[k])]
    best_val, best_xi = math.inf, 0.0 + 0.0j
    for xi in candidates:
        val = al_norm(w, lam, x + xi * y, scfg).value
        if val < best_val:
            best_val, best_xi = val, xi
    return best_val, best_xi


def grid_max_mu(w: Weight, lam: float, x, y, cfg: OracleConfig | None = None):
    """max over unimodular mu of |x + mu y|_{a,lam} by exhaustive circle grid.

    Returns (max value, argmax mu).
    """
    lam = _check_lambda(lam)
    cfg = cfg or OracleConfig()
    _guard_dim(w)
    x = check_dims(w, x, "x")
    y = check_dims(w, y, "y")
    scfg = _solver_cfg(cfg)

    yx = reduce(w, x)
    yy = reduce(w, y)
    thetas = 2.0 * np.pi * np.arange(MU_GRID) / MU_GRID
    stack = yx[None] + np.exp(1j * thetas)[:, None, None] * yy[None]
    vals, _ = _sphere_max_batch(stack, lam, scfg)
    k = int(np.argmax(vals))

    warm_holder = [None]

    def fun(t: float) -> float:
        r = _sphere_max(yx + np.exp(1j * t) * yy, lam, scfg, light=True, warm=warm_holder[0])
        warm_holder[0] = r.u
        return math.sqrt(max(r.fmax, 0.0))

    delta = 2.0 * np.pi / MU_GRID
    t_ref, _, _ = _golden_max(fun, thetas[k] - delta, thetas[k] + delta, 1e-12)

    best_val, best_mu = -math.inf, 1.0 + 0.0j
    for t in (t_ref, float(thetas[k])):
        mu = complex(np.exp(1j * t))
        val = al_norm(w, lam, x + mu * y, scfg).value
        if val > best_val:
            best_val, best_mu = val, mu
    return best_val, best_mu
