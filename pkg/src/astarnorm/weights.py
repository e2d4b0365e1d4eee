"""Weight validation, the similarity reduction, adjoints and states.

A weight is a positive invertible matrix ``a``.  It induces the pairing
``<x, y>_a = y* a x``, the adjoint ``x# = a^{-1} x* a``, and the state set
``S_a = {phi >= 0 : phi(a) = 1}``.  Every seminorm downstream is computed
after the similarity ``x -> a^{1/2} x a^{-1/2}``, which turns weighted
suprema into optimizations over the ordinary unit sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotPositiveDefinite, NotUnitVector
from .linalg import (
    as_square_matrix,
    dagger,
    frob,
    herm_eig,
    herm_inverse,
    is_hermitian,
    psd_sqrt,
)
from .errors import NotHermitian

COND_WARN = 1e10


@dataclass(frozen=True)
class Weight:
    """A validated positive invertible weight with cached roots and inverses.

    Immutable after construction; safe to share between threads.
    """

    a: np.ndarray
    sqrt_a: np.ndarray
    inv_sqrt_a: np.ndarray
    inv_a: np.ndarray
    min_eig: float
    max_eig: float
    eps_pd: float
    warnings: tuple[str, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def cond(self) -> float:
        return self.max_eig / self.min_eig


@dataclass(frozen=True)
class StateWitness:
    """A rank-1 state phi(z) = Tr(h z) with phi(a) = 1.

    ``u`` is the standard-sphere unit vector the state was built from;
    ``h = a^{-1/2} (u u*) a^{-1/2}`` is its density.
    """

    h: np.ndarray
    u: np.ndarray
    trace_ha: float

    def expect(self, z: np.ndarray) -> complex:
        """Evaluate the state: phi(z) = Tr(h z)."""
        return complex(np.trace(self.h @ z))


def validate_weight(a, eps_pd: float = 1e-8) -> Weight:
    """Validate ``a`` as a weight and cache a^{1/2}, a^{-1/2}, a^{-1}.

    Raises NotHermitian or NotPositiveDefinite.  Condition numbers above
    1e10 are recorded as a warning on the Weight rather than rejected.
    """
    a = as_square_matrix(a, "a")
    if not is_hermitian(a):
        raise NotHermitian("weight must be Hermitian")
    eig = herm_eig(a)
    min_eig = float(eig.eigenvalues[0])
    max_eig = float(eig.eigenvalues[-1])
    if min_eig <= eps_pd:
        raise NotPositiveDefinite(
            f"weight must be positive and invertible: min eigenvalue {min_eig:.3e} <= {eps_pd:.3e}"
        )
    sqrt_a = psd_sqrt(a)
    inv_a = herm_inverse(a, eps_pd)
    inv_sqrt_a = herm_inverse(sqrt_a, math.sqrt(eps_pd))
    warns: tuple[str, ...] = ()
    if max_eig / min_eig > COND_WARN:
        warns = (f"weight condition number {max_eig / min_eig:.3e} exceeds {COND_WARN:.0e}",)
    return Weight(
        a=a,
        sqrt_a=sqrt_a,
        inv_sqrt_a=inv_sqrt_a,
        inv_a=inv_a,
        min_eig=min_eig,
        max_eig=max_eig,
        eps_pd=eps_pd,
        warnings=warns,
    )


def check_dims(w: Weight, x: np.ndarray, name: str = "x") -> np.ndarray:
    """Coerce ``x`` and require it to match the weight's dimension."""
    x = as_square_matrix(x, name)
    if x.shape[0] != w.n:
        raise DimensionMismatch(f"{name} is {x.shape[0]}x{x.shape[0]}, weight is {w.n}x{w.n}")
    return x


def reduce(w: Weight, x) -> np.ndarray:
    """Similarity reduction y = a^{1/2} x a^{-1/2}.

    The reduction is a (non-*) algebra homomorphism; weighted seminorms of
    x equal standard-sphere quantities of y.
    """
    x = check_dims(w, x)
    return w.sqrt_a @ x @ w.inv_sqrt_a


def a_adjoint(w: Weight, x) -> np.ndarray:
    """The a-adjoint x# = a^{-1} x* a, the unique solution of a x# = x* a."""
    x = check_dims(w, x)
    return w.inv_a @ dagger(x) @ w.a


def is_a_selfadjoint(w: Weight, x, tol: float = 1e-8) -> bool:
    """True when a x is Hermitian within tol, i.e. ||a x - x* a||_F <= tol (1 + ||a x||_F)."""
    x = check_dims(w, x)
    ax = w.a @ x
    return frob(ax - dagger(ax)) <= tol * (1.0 + frob(ax))


def is_a_positive(w: Weight, x, tol: float = 1e-8) -> bool:
    """True when a x is Hermitian within tol with min eigenvalue >= -tol."""
    x = check_dims(w, x)
    ax = w.a @ x
    if frob(ax - dagger(ax)) > tol * (1.0 + frob(ax)):
        return False
    evals = np.linalg.eigvalsh((ax + dagger(ax)) / 2.0)
    return bool(evals[0] >= -tol)


def state_from_unit_vector(w: Weight, u) -> StateWitness:
    """Build the state phi(z) = (a^{-1/2}u)* z (a^{-1/2}u) from a unit vector.

    The density h = a^{-1/2} (u u*) a^{-1/2} is rank 1, positive, and
    satisfies Tr(h a) = 1 exactly in exact arithmetic.
    """
    u = np.asarray(u, dtype=np.complex128).reshape(-1)
    if u.shape[0] != w.n:
        raise DimensionMismatch(f"vector has length {u.shape[0]}, weight is {w.n}x{w.n}")
    nrm = float(np.linalg.norm(u))
    if abs(nrm - 1.0) > 1e-10:
        raise NotUnitVector(f"||u||_2 = {nrm!r} is not 1 within 1e-10")
    ut = w.inv_sqrt_a @ u
    h = np.outer(ut, ut.conj())
    h = (h + dagger(h)) / 2.0
    trace_ha = float(np.trace(h @ w.a).real)
    return StateWitness(h=h, u=u.copy(), trace_ha=trace_ha)
