"""Batched projected-gradient ascent on the unit sphere.

Maximizes f(u) = lam * ||y u||^2 + (1 - lam) * |u* y u|^2 over unit vectors
u, simultaneously for a stack of matrices and a set of starts per matrix.
This is the single hot loop of the package: sweeps over mu/theta/xi grids
stack their matrices here so the whole grid advances in one vectorized
iteration.

The ascent direction is the Wirtinger gradient of f,

    d = lam * y*(y u) + (1 - lam) * (conj(g) * y u + g * y* u),   g = u* y u,

followed by renormalization.  Steps use backtracking from a base step of
1 / (2 ||y||_F^2 + 1); a column stops when its gain drops below
gain_tol * (1 + f) or the iteration cap is hit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

GAIN_TOL = 1e-14
BACKTRACK_MAX = 60


@dataclass(frozen=True)
class AscentResult:
    f: np.ndarray          # (M, S) objective values at the final iterates
    u: np.ndarray          # (M, S, n) final unit vectors
    iterations: np.ndarray  # (M, S) iterations spent per column
    converged: np.ndarray  # (M, S) True when the gain criterion was met


def _evaluate(lam: float, yb: np.ndarray, u: np.ndarray):
    """f, y@u and g = u* y u for a batch of columns."""
    yu = (yb @ u[..., None])[..., 0]
    g = np.einsum("bi,bi->b", u.conj(), yu)
    f = lam * np.einsum("bi,bi->b", yu.conj(), yu).real + (1.0 - lam) * np.abs(g) ** 2
    return f, yu, g


def maximize_on_sphere(
    ys: np.ndarray,
    starts: np.ndarray,
    lam: float,
    max_iter: int = 500,
    gain_tol: float = GAIN_TOL,
    op_norm_sq: np.ndarray | None = None,
) -> AscentResult:
    """Run the ascent for a stack ``ys`` of shape (M, n, n) from ``starts`` (M, S, n).

    Start vectors must be unit length.  ``op_norm_sq``, when given, holds
    ||y||^2 (squared spectral norm) per matrix and sets the base step; the
    Frobenius bound is used otherwise.  Results are deterministic functions
    of the inputs; no RNG is consulted here.
    """
    m_count, s_count, n = starts.shape
    b = m_count * s_count
    yb = np.repeat(ys, s_count, axis=0)
    ybh = yb.conj().transpose(0, 2, 1)
    u = starts.reshape(b, n).astype(np.complex128, copy=True)

    if op_norm_sq is None:
        norm_sq = np.einsum("bij,bij->b", yb, yb.conj()).real
    else:
        norm_sq = np.repeat(np.asarray(op_norm_sq, dtype=np.float64), s_count)
    eta0 = 1.0 / (2.0 * norm_sq + 1.0)

    f, yu, g = _evaluate(lam, yb, u)
    active = np.ones(b, dtype=bool)
    converged = np.zeros(b, dtype=bool)
    iters = np.zeros(b, dtype=np.int64)

    for _ in range(max_iter):
        ia = np.flatnonzero(active)
        if ia.size == 0:
            break
        ua, ya, yha = u[ia], yb[ia], ybh[ia]
        yua, ga, fa = yu[ia], g[ia], f[ia]

        ysu = (yha @ yua[..., None])[..., 0]          # y* y u
        yhu = (yha @ ua[..., None])[..., 0]           # y* u
        d = lam * ysu + (1.0 - lam) * (ga.conj()[:, None] * yua + ga[:, None] * yhu)

        eta = eta0[ia].copy()
        pending = np.ones(ia.size, dtype=bool)
        unew, fnew = ua.copy(), fa.copy()
        yunew, gnew = yua.copy(), ga.copy()
        for _bt in range(BACKTRACK_MAX):
            ip = np.flatnonzero(pending)
            if ip.size == 0:
                break
            v = ua[ip] + eta[ip, None] * d[ip]
            vn = np.sqrt(np.einsum("bi,bi->b", v.conj(), v).real)
            v = v / np.maximum(vn, 1e-300)[:, None]
            fv, yuv, gv = _evaluate(lam, ya[ip], v)
            good = fv > fa[ip]
            if good.any():
                ig = ip[good]
                unew[ig], fnew[ig] = v[good], fv[good]
                yunew[ig], gnew[ig] = yuv[good], gv[good]
                pending[ig] = False
            eta[ip[~good]] *= 0.5

        gain = fnew - fa
        done = gain < gain_tol * (1.0 + np.abs(fnew))

        u[ia], f[ia] = unew, fnew
        yu[ia], g[ia] = yunew, gnew
        iters[ia] += 1
        converged[ia[done]] = True
        active[ia[done]] = False

    return AscentResult(
        f=f.reshape(m_count, s_count),
        u=u.reshape(m_count, s_count, n),
        iterations=iters.reshape(m_count, s_count),
        converged=converged.reshape(m_count, s_count),
    )


def top_eigvec_stack(hs: np.ndarray) -> np.ndarray:
    """Top eigenvectors for a stack of Hermitian matrices, shape (M, n, n) -> (M, n)."""
    _, v = np.linalg.eigh(hs)
    return v[..., -1]


def structured_starts(ys: np.ndarray, n_theta: int = 8):
    """Deterministic seed block per matrix: top right-singular vector of y
    plus top eigenvectors of Re(e^{i theta} y) on a uniform theta grid.

    Returns (starts (M, 1 + n_theta, n), op_norm_sq (M,)) where op_norm_sq
    is the squared spectral norm of each matrix (a byproduct of the
    singular-vector seed, reused for the ascent step size).
    """
    m_count, n, _ = ys.shape
    ysh = ys.conj().transpose(0, 2, 1)
    gram = ysh @ ys                                     # y* y, Hermitian psd
    gw, gv = np.linalg.eigh(gram)
    sv_seed = gv[..., -1][:, None, :]                   # (M, 1, n)
    op_norm_sq = np.clip(gw[:, -1], 0.0, None)
    thetas = 2.0 * np.pi * np.arange(n_theta) / n_theta
    ph = np.exp(1j * thetas)
    hs = 0.5 * (ph[None, :, None, None] * ys[:, None] + ph.conj()[None, :, None, None] * ysh[:, None])
    theta_seeds = top_eigvec_stack(hs.reshape(m_count * n_theta, n, n)).reshape(m_count, n_theta, n)
    return np.concatenate([sv_seed, theta_seeds], axis=1), op_norm_sq


def random_unit_vectors(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    """Uniformly distributed unit vectors from normalized complex Gaussians, (count, n)."""
    z = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return z / np.linalg.norm(z, axis=1, keepdims=True)
