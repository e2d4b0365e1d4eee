"""Dense complex Hermitian linear algebra for matrices up to 64 x 64.

Everything downstream (weights, seminorms, geometry) is built on the three
operations here: Hermitian eigendecomposition, positive-semidefinite square
root, and inversion of Hermitian positive matrices.  All functions are pure
and deterministic: identical input bits give identical output bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotHermitian, NotInvertible, NotPsd

MAX_DIM = 64

# Entries smaller than this are ignored when picking the pivot that fixes
# an eigenvector's (or witness vector's) global phase.
PHASE_FLOOR = 1e-12

HERMITIAN_RTOL = 1e-10
PSD_EIG_FLOOR = -1e-10


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def frob(m: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(m))


def as_square_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a square complex128 array with finite entries and n <= 64."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square 2-d array, got shape {arr.shape}")
    n = arr.shape[0]
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"{name} dimension must be in [1, {MAX_DIM}], got {n}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def is_hermitian(h: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    """True when ||h - h*||_F <= rtol * (1 + ||h||_F)."""
    return frob(h - dagger(h)) <= rtol * (1.0 + frob(h))


def phase_normalize(u: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase so its first entry above the floor is real positive."""
    idx = np.flatnonzero(np.abs(u) > PHASE_FLOOR)
    if idx.size == 0:
        return u.copy()
    piv = u[idx[0]]
    out = u * (piv.conjugate() / abs(piv))
    out[idx[0]] = abs(piv)
    return out


@dataclass(frozen=True)
class HermEig:
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues are real and ascending; eigenvectors is unitary with the
    k-th column belonging to eigenvalues[k].  Column phases are fixed so the
    first component above the phase floor is real positive, which makes
    witnesses reproducible across runs.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def herm_eig(h) -> HermEig:
    """Eigendecomposition of a Hermitian matrix.

    Raises NotHermitian when ||h - h*||_F > 1e-10 * (1 + ||h||_F) and
    NoConvergence if the underlying solver fails to converge.
    """
    h = as_square_matrix(h, "H")
    if not is_hermitian(h):
        raise NotHermitian(f"matrix is not Hermitian: ||H - H*||_F = {frob(h - dagger(h)):.3e}")
    try:
        w, v = np.linalg.eigh((h + dagger(h)) / 2.0)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    v = v.astype(np.complex128, copy=True)
    for k in range(v.shape[1]):
        v[:, k] = phase_normalize(v[:, k])
    return HermEig(eigenvalues=w, eigenvectors=v)


def psd_sqrt(p) -> np.ndarray:
    """Positive-semidefinite square root.

    Eigenvalues in (-1e-10, 0) are treated as rounding noise and clamped to
    zero; anything below -1e-10 raises NotPsd.
    """
    eig = herm_eig(p)
    if eig.eigenvalues[0] < PSD_EIG_FLOOR:
        raise NotPsd(f"matrix has eigenvalue {eig.eigenvalues[0]:.3e} < {PSD_EIG_FLOOR}")
    w = np.clip(eig.eigenvalues, 0.0, None)
    r = (eig.eigenvectors * np.sqrt(w)) @ dagger(eig.eigenvectors)
    return (r + dagger(r)) / 2.0


def herm_inverse(p, eps_pd: float = 1e-8) -> np.ndarray:
    """Inverse of a Hermitian positive-definite matrix.

    Raises NotInvertible when the smallest eigenvalue is <= eps_pd.
    """
    eig = herm_eig(p)
    if eig.eigenvalues[0] <= eps_pd:
        raise NotInvertible(
            f"matrix has eigenvalue {eig.eigenvalues[0]:.3e} <= eps_pd = {eps_pd:.3e}"
        )
    r = (eig.eigenvectors / eig.eigenvalues) @ dagger(eig.eigenvectors)
    return (r + dagger(r)) / 2.0
