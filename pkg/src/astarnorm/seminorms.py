"""Weighted seminorms with maximizing witness states.

For a weight ``a`` and ``lam`` in [0, 1] the interpolated norm is

    |x|_{a,lam}^2 = sup { lam * phi(x* a x) + (1 - lam) * |phi(a x)|^2 }

over states phi with phi(a) = 1.  After the similarity y = a^{1/2} x a^{-1/2}
this becomes the sphere maximization of f(u) = lam ||y u||^2 + (1-lam)|u* y u|^2,
so lam = 1 recovers the weighted operator norm (top singular value of y) and
lam = 0 the weighted numerical radius (numerical radius of y).

The general case has no closed form; ``al_norm`` runs a multistart projected
ascent whose seeds solve the lam = 1 and lam = 0 regimes exactly, so the
returned value is never below max(numerical radius, seed objectives) and
never above the operator norm (up to roundoff).  Multistart is heuristic;
the brute-force ``oracle`` module certifies it at small dimension in tests.
"""

from __future__ import annotations

import concurrent.futures
import math
import os
from dataclasses import dataclass

import numpy as np

from ._ascent import (
    maximize_on_sphere,
    random_unit_vectors,
    structured_starts,
    top_eigvec_stack,
)
from .errors import LambdaOutOfRange
from .linalg import dagger, herm_eig, phase_normalize
from .weights import StateWitness, Weight, check_dims, reduce, state_from_unit_vector

N_THETA_SEEDS = 8
SEED_SWEEP_ANGLES = 64
SEED_SWEEP_WIDTH = 1e-6
GOLDEN_EVALS_CAP = 300


@dataclass(frozen=True)
class SolverConfig:
    """Tunables of the multistart solver.

    random_starts: seeded random unit vectors added to the structured seeds.
    max_iter: ascent iteration cap per start.
    rng_seed: seed for the random-start generator (results are a pure
        function of inputs + seed).
    refine_tol: target interval width of golden-section refinements.
    """

    random_starts: int = 32
    max_iter: int = 500
    rng_seed: int = 0
    refine_tol: float = 1e-12


@dataclass(frozen=True)
class NormResult:
    """A seminorm value plus the state that attains it.

    The defining objective evaluated at ``witness`` reproduces ``value**2``;
    ``iterations``/``starts_used``/``converged`` record what the solver did.
    """

    value: float
    witness: StateWitness
    lam: float
    iterations: int
    starts_used: int
    converged: bool


@dataclass(frozen=True)
class RangeBoundary:
    """Inner polyline of the weighted numerical range.

    points[k] = phi_k(a x) for the state built from vectors[k], where
    vectors[k] is a top eigenvector of Re(e^{-i angles[k]} y).  The convex
    hull of ``points`` approximates the range from inside.
    """

    points: np.ndarray
    angles: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class _SphereMax:
    """Raw multistart output on a reduced matrix (all starts kept)."""

    fmax: float
    u: np.ndarray
    iterations: int
    starts_used: int
    converged: bool
    fs: np.ndarray
    us: np.ndarray


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRange(f"lambda must be in [0, 1], got {lam!r}")
    return lam


def _golden_max(fun, lo: float, hi: float, width: float):
    """Golden-section maximization on [lo, hi]; returns (x, f(x), evals)."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = fun(c), fun(d)
    evals = 2
    while hi - lo > width and evals < GOLDEN_EVALS_CAP:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = fun(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = fun(d)
        evals += 1
    if fc >= fd:
        return c, fc, evals
    return d, fd, evals


def _rotated_herm(y: np.ndarray, theta: float) -> np.ndarray:
    return 0.5 * (np.exp(1j * theta) * y + np.exp(-1j * theta) * dagger(y))


def _numrad_reduced(y: np.ndarray, n_angles: int, width: float):
    """Numerical radius of y: sweep lambda_max(Re(e^{i theta} y)) over a theta
    grid, then golden-refine around the best angle.

    Returns (value, attaining unit vector, number of refinement evaluations).
    """
    thetas = 2.0 * np.pi * np.arange(n_angles) / n_angles
    ph = np.exp(1j * thetas)
    hs = 0.5 * (ph[:, None, None] * y[None] + ph.conj()[:, None, None] * dagger(y)[None])
    grid_vals = np.linalg.eigvalsh(hs)[:, -1]
    k = int(np.argmax(grid_vals))
    delta = 2.0 * np.pi / n_angles

    def top_eval(t: float) -> float:
        return float(np.linalg.eigvalsh(_rotated_herm(y, t))[-1])

    t_ref, f_ref, evals = _golden_max(top_eval, thetas[k] - delta, thetas[k] + delta, width)
    if grid_vals[k] >= f_ref:
        t_best, f_best = float(thetas[k]), float(grid_vals[k])
    else:
        t_best, f_best = t_ref, f_ref
    eig = herm_eig(_rotated_herm(y, t_best))
    u = eig.eigenvectors[:, -1]
    return f_best, u, evals


def _threads_from_env() -> int:
    raw = os.environ.get("ASTAR_THREADS", "").strip()
    if not raw:
        return 0
    try:
        return max(0, int(raw))
    except ValueError:
        return 0


def _run_starts(y: np.ndarray, starts: np.ndarray, lam: float, max_iter: int, threads: int,
                op_norm_sq: np.ndarray):
    """Ascent over one matrix's start block, optionally split across threads.

    Columns are independent, so chunked execution is bit-identical to the
    serial path; results are merged in start order.
    """
    if threads <= 1 or starts.shape[0] < 2 * threads:
        return maximize_on_sphere(y[None], starts[None], lam, max_iter, op_norm_sq=op_norm_sq)
    chunks = np.array_split(np.arange(starts.shape[0]), threads)
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        futs = [
            pool.submit(maximize_on_sphere, y[None], starts[None, idx], lam, max_iter,
                        op_norm_sq=op_norm_sq)
            for idx in chunks
            if idx.size
        ]
        parts = [f.result() for f in futs]
    f = np.concatenate([p.f[0] for p in parts])[None]
    u = np.concatenate([p.u[0] for p in parts])[None]
    iters = np.concatenate([p.iterations[0] for p in parts])[None]
    conv = np.concatenate([p.converged[0] for p in parts])[None]
    from ._ascent import AscentResult

    return AscentResult(f=f, u=u, iterations=iters, converged=conv)


def _sphere_max(
    y: np.ndarray,
    lam: float,
    cfg: SolverConfig,
    light: bool = False,
    warm: np.ndarray | None = None,
) -> _SphereMax:
    """Multistart maximization of the sphere objective for one reduced matrix.

    The full profile seeds with the top right-singular vector, the numerical
    radius attaining vector, 8 rotated-Hermitian top eigenvectors and
    cfg.random_starts random vectors.  The light profile (used by sweeps and
    polish loops, where the caller supplies a warm start and re-checks the
    final answer with the full profile) drops the radius seed and most of
    the random block.
    """
    n = y.shape[0]
    seeded, op_norm_sq = structured_starts(y[None], N_THETA_SEEDS)
    blocks = [seeded[0]]
    if not light:
        _, u_rad, _ = _numrad_reduced(y, SEED_SWEEP_ANGLES, SEED_SWEEP_WIDTH)
        blocks.insert(1, u_rad[None, :])
    if warm is not None:
        blocks.append(np.asarray(warm, dtype=np.complex128).reshape(1, n))
    rng = np.random.default_rng(cfg.rng_seed)
    n_random = 2 if light else cfg.random_starts
    if n_random > 0:
        blocks.append(random_unit_vectors(rng, n_random, n))
    starts = np.concatenate(blocks, axis=0)

    threads = 0 if light else _threads_from_env()
    res = _run_starts(y, starts, lam, cfg.max_iter, threads, op_norm_sq)
    fs, us = res.f[0], res.u[0]
    best = int(np.argmax(fs))
    return _SphereMax(
        fmax=float(fs[best]),
        u=us[best],
        iterations=int(res.iterations[0][best]),
        starts_used=starts.shape[0],
        converged=bool(res.converged[0][best]),
        fs=fs,
        us=us,
    )


def _sphere_max_batch(ys: np.ndarray, lam: float, cfg: SolverConfig,
                      warm: np.ndarray | None = None):
    """Light-profile multistart over a stack of reduced matrices.

    ys: (M, n, n).  warm, when given, adds one extra start per matrix
    (shape (M, n)).  Returns (values (M,), vectors (M, n)) where values are
    already square-rooted norms.  Used by grid sweeps; callers re-solve the
    winning grid point with the full profile before reporting.
    """
    m_count, n, _ = ys.shape
    seeded, op_norm_sq = structured_starts(ys, N_THETA_SEEDS)
    blocks = [seeded]
    rng = np.random.default_rng(cfg.rng_seed)
    shared = random_unit_vectors(rng, 2, n)
    blocks.append(np.broadcast_to(shared[None], (m_count, 2, n)))
    if warm is not None:
        blocks.append(np.asarray(warm, dtype=np.complex128).reshape(m_count, 1, n))
    starts = np.concatenate(blocks, axis=1)
    res = maximize_on_sphere(ys, starts, lam, cfg.max_iter, op_norm_sq=op_norm_sq)
    best = np.argmax(res.f, axis=1)
    rows = np.arange(m_count)
    vals = np.sqrt(np.clip(res.f[rows, best], 0.0, None))
    return vals, res.u[rows, best]


def _result_from_vector(w: Weight, lam: float, value: float, u: np.ndarray,
                        iterations: int, starts_used: int, converged: bool) -> NormResult:
    witness = state_from_unit_vector(w, phase_normalize(u))
    return NormResult(
        value=float(value),
        witness=witness,
        lam=float(lam),
        iterations=iterations,
        starts_used=starts_used,
        converged=converged,
    )


def a_norm(w: Weight, x) -> NormResult:
    """The weighted operator norm |x|_a = top singular value of a^{1/2} x a^{-1/2}."""
    y = reduce(w, x)
    eig = herm_eig(dagger(y) @ y)
    val = math.sqrt(max(float(eig.eigenvalues[-1]), 0.0))
    return _result_from_vector(w, 1.0, val, eig.eigenvectors[:, -1], 0, 1, True)


def a_numradius(w: Weight, x, n_angles: int = 720) -> NormResult:
    """The weighted numerical radius, by angle sweep plus golden refinement.

    The refinement narrows the angle interval well below 1e-10, so the
    reported value matches |phi(a x)| at the returned witness to roundoff.
    """
    y = reduce(w, x)
    value, u, evals = _numrad_reduced(y, int(n_angles), 1e-12)
    return _result_from_vector(w, 0.0, max(value, 0.0), u, evals, int(n_angles), True)


def a_numrange_boundary(w: Weight, x, n_angles: int) -> RangeBoundary:
    """Boundary polyline of the weighted numerical range.

    For each support angle theta, the point phi(a x) of the state built from
    a top eigenvector of Re(e^{-i theta} y).  Requires n_angles >= 8.
    """
    n_angles = int(n_angles)
    if n_angles < 8:
        raise ValueError(f"n_angles must be >= 8, got {n_angles}")
    y = reduce(w, x)
    thetas = 2.0 * np.pi * np.arange(n_angles) / n_angles
    ph = np.exp(-1j * thetas)
    hs = 0.5 * (ph[:, None, None] * y[None] + ph.conj()[:, None, None] * dagger(y)[None])
    vecs = top_eigvec_stack(hs)
    vecs = np.stack([phase_normalize(v) for v in vecs])
    points = np.einsum("mi,ij,mj->m", vecs.conj(), y, vecs)
    return RangeBoundary(points=points, angles=thetas, vectors=vecs)


def al_norm(w: Weight, lam: float, x, cfg: SolverConfig | None = None) -> NormResult:
    """The interpolated weighted norm |x|_{a,lam} with its maximizing state.

    Multistart ascent on the unit sphere; `converged=False` flags that the
    best start ran into the iteration cap before reaching stationarity (the
    value is still returned).
    """
    lam = _check_lambda(lam)
    cfg = cfg or SolverConfig()
    y = reduce(w, x)
    r = _sphere_max(y, lam, cfg)
    value = math.sqrt(max(r.fmax, 0.0))
    return _result_from_vector(w, lam, value, r.u, r.iterations, r.starts_used, r.converged)


def al_norm_of_sum(w: Weight, lam: float, x, y, coeff: complex,
                   cfg: SolverConfig | None = None) -> NormResult:
    """|x + coeff * y|_{a,lam}; convenience entry point for the geometry module."""
    x = check_dims(w, x, "x")
    y = check_dims(w, y, "y")
    return al_norm(w, lam, x + complex(coeff) * y, cfg)
