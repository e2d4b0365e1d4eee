"""Parallelism and Birkhoff-James orthogonality with certificates.

x is norm-parallel to y when some unimodular mu attains the triangle
equality |x + mu y| = |x| + |y|; x is orthogonal to y when no complex xi
can push |x + xi y| below |x|.  Both decisions are made after normalizing
the inputs to unit norm (decisions are homogeneity-invariant, so this makes
the tolerances scale-free); reported values (min_value, argmin_xi, mu,
certificate residuals) refer to the original inputs.

Positive decisions come with state-level evidence:

* parallelism: a state phi and mu with
  lam phi(x* a y) + (1-lam) conj(phi(a x)) phi(a y) = conj(mu) |x| |y|,
  phi attaining both |x| and |y| (three residuals in ``Certificate``);
* orthogonality: for every support angle theta, a norm-attaining state of x
  whose pairing with y has nonnegative real part after rotation by
  e^{i theta} (the ``theta_witnesses`` list).

The attaining-state set is approximated by the multistart maximizers within
1e-9 of the best objective; a failure to find a nonnegative witness at some
angle for a pair already deemed orthogonal is surfaced as a warning, not an
error.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import NotAPositive, NotParallel
from .linalg import dagger, herm_eig, phase_normalize
from .seminorms import (
    NormResult,
    SolverConfig,
    _check_lambda,
    _golden_max,
    _sphere_max,
    _sphere_max_batch,
    a_norm,
    a_numradius,
    al_norm,
)
from .weights import (
    StateWitness,
    Weight,
    a_adjoint,
    check_dims,
    is_a_positive,
    reduce,
    state_from_unit_vector,
)

ZERO_NORM = 1e-14
ATTAIN_GAP = 1e-9
CANDIDATE_DEDUP = 1e-6
THETA_GRID = 64


@dataclass(frozen=True)
class Certificate:
    """Residuals of the state-level parallelism equalities (all >= 0)."""

    residual_pairing: float
    residual_x: float
    residual_y: float

    def max_residual(self) -> float:
        return max(self.residual_pairing, self.residual_x, self.residual_y)


@dataclass(frozen=True)
class ParallelResult:
    """Outcome of a parallelism decision.

    ``defect`` is 2 - max_mu |x/|x| + mu y/|y|| of the unit-normalized pair
    (zero exactly at parallelism); the certificate is evaluated on the
    original inputs.
    """

    parallel: bool
    mu: complex
    defect: float
    witness: StateWitness | None
    cert: Certificate | None
    norm_x: float
    norm_y: float


@dataclass(frozen=True)
class ThetaWitness:
    """Best attaining state found for one support angle."""

    theta: float
    witness: StateWitness
    signed_real: float
    residual_x: float


@dataclass(frozen=True)
class OrthoResult:
    """Outcome of an orthogonality decision.

    ``defect`` is 1 - min_xi |x/|x| + xi y/|y|| of the normalized pair;
    ``min_value`` and ``argmin_xi`` are on the original scale.
    """

    orthogonal: bool
    min_value: float
    argmin_xi: complex
    theta_witnesses: list[ThetaWitness]
    defect: float
    norm_x: float


@dataclass(frozen=True)
class NormaloidReport:
    """The three equivalent predicates of the normaloid theorem, evaluated independently."""

    parallel_to_unit: bool
    normaloid: bool
    parallel_to_adjoint: bool
    agree: bool
    radius: float
    norm: float


def _pairing_terms(w: Weight, x: np.ndarray, y: np.ndarray, us: np.ndarray):
    """phi(x* a y), phi(a x), phi(a y) for the states of unit vectors ``us`` (C, n)."""
    yx = reduce(w, x)
    yy = reduce(w, y)
    yxu = us @ yx.T
    yyu = us @ yy.T
    p_cross = np.einsum("ci,ci->c", yxu.conj(), yyu)
    g_x = np.einsum("ci,ci->c", us.conj(), yxu)
    g_y = np.einsum("ci,ci->c", us.conj(), yyu)
    return p_cross, g_x, g_y


def _pairing(w: Weight, lam: float, x, y, witness: StateWitness) -> complex:
    """lam phi(x* a y) + (1 - lam) conj(phi(a x)) phi(a y) at one state."""
    p, gx, gy = _pairing_terms(w, x, y, witness.u[None, :])
    return complex(lam * p[0] + (1.0 - lam) * np.conj(gx[0]) * gy[0])


def _objective_at(w: Weight, lam: float, x, witness: StateWitness) -> float:
    """lam phi(x* a x) + (1 - lam) |phi(a x)|^2 at one state."""
    yx = reduce(w, x)
    yu = yx @ witness.u
    g = complex(np.vdot(witness.u, yu))
    return lam * float(np.vdot(yu, yu).real) + (1.0 - lam) * abs(g) ** 2


def make_certificate(w: Weight, lam: float, x, y, witness: StateWitness,
                     mu: complex, norm_x: float, norm_y: float) -> Certificate:
    """Residuals of the pairing equality and of norm attainment at ``witness``."""
    pairing = _pairing(w, lam, x, y, witness)
    return Certificate(
        residual_pairing=abs(pairing - np.conj(mu) * norm_x * norm_y),
        residual_x=abs(_objective_at(w, lam, x, witness) - norm_x**2),
        residual_y=abs(_objective_at(w, lam, y, witness) - norm_y**2),
    )


def is_parallel(w: Weight, lam: float, x, y, n_mu: int = 360,
                tol_decision: float = 1e-6, cfg: SolverConfig | None = None,
                tol_cert: float = 1e-5) -> ParallelResult:
    """Decide whether |x + mu y| = |x| + |y| for some unimodular mu.

    Sweeps mu over a uniform circle grid, golden-refines the best angle,
    re-solves the winner with the full seed profile, and extracts the
    maximizing state of |x + mu y| as the certificate witness.
    """
    lam = _check_lambda(lam)
    cfg = cfg or SolverConfig()
    x = check_dims(w, x, "x")
    y = check_dims(w, y, "y")

    rx = al_norm(w, lam, x, cfg)
    ry = al_norm(w, lam, y, cfg)
    nx, ny = rx.value, ry.value
    if nx <= ZERO_NORM or ny <= ZERO_NORM:
        # 0 is parallel to everything: |x + mu y| = |x| + 0.
        witness = ry.witness if nx <= ZERO_NORM and ny > ZERO_NORM else rx.witness
        cert = make_certificate(w, lam, x, y, witness, 1.0 + 0.0j, nx, ny)
        return ParallelResult(True, 1.0 + 0.0j, 0.0, witness, cert, nx, ny)

    xh = x / nx
    yh = y / ny
    yxr = reduce(w, xh)
    yyr = reduce(w, yh)

    thetas = 2.0 * np.pi * np.arange(int(n_mu)) / int(n_mu)
    stack = yxr[None] + np.exp(1j * thetas)[:, None, None] * yyr[None]
    vals, vecs = _sphere_max_batch(stack, lam, cfg)
    k = int(np.argmax(vals))

    warm_holder = [vecs[k]]

    def fun(t: float) -> float:
        r = _sphere_max(yxr + cmath.exp(1j * t) * yyr, lam, cfg, light=True, warm=warm_holder[0])
        warm_holder[0] = r.u
        return math.sqrt(max(r.fmax, 0.0))

    delta = 2.0 * np.pi / int(n_mu)
    t_ref, _, _ = _golden_max(fun, thetas[k] - delta, thetas[k] + delta, cfg.refine_tol)

    best: tuple[float, complex, NormResult] | None = None
    for t in (t_ref, float(thetas[k])):
        mu = cmath.exp(1j * t)
        r = al_norm(w, lam, xh + mu * yh, cfg)
        if best is None or r.value > best[0]:
            best = (r.value, mu, r)
    m_star, mu_star, r_star = best

    defect = 2.0 - m_star
    parallel = defect <= tol_decision
    witness = r_star.witness
    cert = make_certificate(w, lam, x, y, witness, mu_star, nx, ny)
    if parallel and cert.max_residual() > tol_cert * (1.0 + nx * ny):
        warnings.warn(
            f"parallel pair certificate residual {cert.max_residual():.3e} exceeds "
            f"{tol_cert:.1e} * (1 + |x||y|)",
            stacklevel=2,
        )
    return ParallelResult(parallel, mu_star, defect, witness, cert, nx, ny)


def is_vrad_parallel(w: Weight, x, y, n_mu: int = 360, tol_decision: float = 1e-6,
                     cfg: SolverConfig | None = None, tol_cert: float = 1e-5) -> ParallelResult:
    """Numerical-radius parallelism: the lam = 0 case of ``is_parallel``."""
    return is_parallel(w, 0.0, x, y, n_mu=n_mu, tol_decision=tol_decision,
                       cfg=cfg, tol_cert=tol_cert)


def _attaining_candidates(sm, fmax: float) -> np.ndarray:
    """Phase-normalized, deduplicated final vectors within ATTAIN_GAP of the max."""
    order = np.argsort(-sm.fs, kind="stable")
    kept: list[np.ndarray] = []
    for idx in order:
        if sm.fs[idx] < fmax - ATTAIN_GAP * (1.0 + abs(fmax)):
            break
        u = phase_normalize(sm.us[idx])
        if all(np.linalg.norm(u - v) > CANDIDATE_DEDUP for v in kept):
            kept.append(u)
    return np.stack(kept)


def _theta_witnesses(w: Weight, lam: float, x, y, cands: np.ndarray,
                     norm_x: float) -> list[ThetaWitness]:
    """Per support angle, the candidate state with the largest rotated pairing real part."""
    p_cross, g_x, g_y = _pairing_terms(w, x, y, cands)
    pairings = lam * p_cross + (1.0 - lam) * g_x.conj() * g_y
    yx = reduce(w, x)
    yxu = cands @ yx.T
    objectives = lam * np.einsum("ci,ci->c", yxu.conj(), yxu).real + (1.0 - lam) * np.abs(g_x) ** 2
    residuals = np.abs(objectives - norm_x**2)
    states = [state_from_unit_vector(w, u) for u in cands]

    out: list[ThetaWitness] = []
    for k in range(THETA_GRID):
        theta = 2.0 * np.pi * k / THETA_GRID
        signed = (np.exp(1j * theta) * pairings).real
        c = int(np.argmax(signed))
        out.append(ThetaWitness(theta=theta, witness=states[c],
                                signed_real=float(signed[c]), residual_x=float(residuals[c])))
    return out


def is_orthogonal(w: Weight, lam: float, x, y, tol_decision: float = 1e-6,
                  cfg: SolverConfig | None = None) -> OrthoResult:
    """Decide whether |x + xi y| >= |x| for every complex xi.

    The scalar objective is a norm of an affine map, hence convex in xi;
    it is minimized with a Nelder-Mead simplex from xi = 0 (each evaluation
    is itself a sphere maximization).  Support-angle witnesses are filled
    from the attaining states of |x| regardless of the decision.
    """
    lam = _check_lambda(lam)
    cfg = cfg or SolverConfig()
    x = check_dims(w, x, "x")
    y = check_dims(w, y, "y")

    rx = al_norm(w, lam, x, cfg)
    ry = al_norm(w, lam, y, cfg)
    nx, ny = rx.value, ry.value

    if nx <= ZERO_NORM:
        # |x| = 0 is a global minimum of every norm: orthogonal to everything.
        e1 = np.zeros(w.n, dtype=np.complex128)
        e1[0] = 1.0
        wit = state_from_unit_vector(w, e1)
        tw = [ThetaWitness(2.0 * np.pi * k / THETA_GRID, wit, 0.0, 0.0)
              for k in range(THETA_GRID)]
        return OrthoResult(True, 0.0, 0.0 + 0.0j, tw, 0.0, nx)

    sm_x = _sphere_max(reduce(w, x / nx), lam, cfg)
    cands = _attaining_candidates(sm_x, sm_x.fmax)
    tw = _theta_witnesses(w, lam, x, y, cands, nx)

    if ny <= ZERO_NORM:
        return OrthoResult(True, nx, 0.0 + 0.0j, tw, 0.0, nx)

    yxr = reduce(w, x / nx)
    yyr = reduce(w, y / ny)
    warm_holder = [None]

    def fun(v) -> float:
        zeta = v[0] + 1j * v[1]
        r = _sphere_max(yxr + zeta * yyr, lam, cfg, light=True, warm=warm_holder[0])
        warm_holder[0] = r.u
        return math.sqrt(max(r.fmax, 0.0))

    simplex = np.array([[0.0, 0.0], [0.5, 0.0], [0.0, 0.5]])
    nm = optimize.minimize(
        fun,
        np.zeros(2),
        method="Nelder-Mead",
        options={"initial_simplex": simplex, "xatol": 1e-9, "fatol": 1e-13, "maxfev": 600},
    )
    zeta_nm = complex(nm.x[0], nm.x[1])
    val_nm = al_norm(w, lam, (x / nx) + zeta_nm * (y / ny), cfg).value

    if val_nm < 1.0:
        m_min, zeta_star = val_nm, zeta_nm
    else:
        m_min, zeta_star = 1.0, 0.0 + 0.0j

    defect = 1.0 - m_min
    orthogonal = defect <= tol_decision
    if orthogonal:
        worst = min(t.signed_real for t in tw)
        if worst < -1e-5:
            warnings.warn(
                f"orthogonal pair: no attaining state with nonnegative rotated pairing at "
                f"some angle (worst signed real {worst:.3e})",
                stacklevel=2,
            )
    return OrthoResult(
        orthogonal=orthogonal,
        min_value=nx * m_min,
        argmin_xi=zeta_star * nx / ny,
        theta_witnesses=tw,
        defect=defect,
        norm_x=nx,
    )


def vrad_positive_orthogonality(w: Weight, x, y, tol: float = 1e-8):
    """Radius-orthogonality certificate for a-positive elements.

    Looks for a state with phi(a x) = v_a(x) and phi(a y) = 0.  Both reduced
    matrices are psd, so the radius-attaining states are exactly the unit
    vectors of the top eigenspace of the reduced x, and phi(a y) is linear
    in the density; the search is an exact small eigenproblem, no heuristics.
    Returns (found, witness-or-None).
    """
    x = check_dims(w, x, "x")
    y = check_dims(w, y, "y")
    if not is_a_positive(w, x, tol=max(tol, 1e-8)):
        raise NotAPositive("x is not a-positive")
    if not is_a_positive(w, y, tol=max(tol, 1e-8)):
        raise NotAPositive("y is not a-positive")

    ax_red = reduce(w, x)
    ay_red = reduce(w, y)
    ax_red = (ax_red + dagger(ax_red)) / 2.0
    ay_red = (ay_red + dagger(ay_red)) / 2.0

    eig = herm_eig(ax_red)
    v = float(eig.eigenvalues[-1])
    top = eig.eigenvalues >= v - 0.5 * tol
    q = eig.eigenvectors[:, top]

    proj = dagger(q) @ ay_red @ q
    peig = herm_eig(proj)
    beta = float(peig.eigenvalues[0])
    if abs(beta) > tol:
        return False, None
    u = phase_normalize(q @ peig.eigenvectors[:, 0])
    u = u / np.linalg.norm(u)
    return True, state_from_unit_vector(w, u)


def parallelism_implies_orthogonality_check(w: Weight, lam: float, x, y,
                                            cfg: SolverConfig | None = None,
                                            n_mu: int = 360,
                                            tol_decision: float = 1e-6):
    """Verify the two orthogonality relations that a parallel pair induces.

    With mu the parallelism phase, checks x orth (|y| x - mu |x| y) and
    y orth (|y| x - conj(mu) |x| y).  Raises NotParallel when the pair is
    not parallel.  Returns (both_hold, report dict with per-part defects).
    """
    pr = is_parallel(w, lam, x, y, n_mu=n_mu, tol_decision=tol_decision, cfg=cfg)
    if not pr.parallel:
        raise NotParallel(f"pair is not parallel (defect {pr.defect:.3e})")
    x = check_dims(w, x, "x")
    y = check_dims(w, y, "y")
    z1 = pr.norm_y * x - pr.mu * pr.norm_x * y
    z2 = pr.norm_y * x - np.conj(pr.mu) * pr.norm_x * y
    o1 = is_orthogonal(w, lam, x, z1, tol_decision=tol_decision, cfg=cfg)
    o2 = is_orthogonal(w, lam, y, z2, tol_decision=tol_decision, cfg=cfg)
    report = {
        "mu": pr.mu,
        "x_defect": o1.defect,
        "y_defect": o2.defect,
        "x_orthogonal": o1.orthogonal,
        "y_orthogonal": o2.orthogonal,
    }
    return o1.orthogonal and o2.orthogonal, report


def normaloid_equivalences(w: Weight, lam: float, x, tol: float = 1e-6,
                           cfg: SolverConfig | None = None, n_mu: int = 360) -> NormaloidReport:
    """Evaluate the three equivalent normaloid predicates independently.

    (1) x parallel to the unit, (2) radius equals norm, (3) x parallel to
    its a-adjoint.  The three booleans must agree; ``agree`` records it.
    """
    lam = _check_lambda(lam)
    x = check_dims(w, x, "x")
    eye = np.eye(w.n, dtype=np.complex128)
    p1 = is_parallel(w, lam, x, eye, n_mu=n_mu, cfg=cfg)
    radius = a_numradius(w, x).value
    norm = a_norm(w, x).value
    normaloid = abs(radius - norm) <= tol
    p3 = is_parallel(w, lam, x, a_adjoint(w, x), n_mu=n_mu, cfg=cfg)
    flags = (p1.parallel, normaloid, p3.parallel)
    return NormaloidReport(
        parallel_to_unit=p1.parallel,
        normaloid=normaloid,
        parallel_to_adjoint=p3.parallel,
        agree=len(set(flags)) == 1,
        radius=radius,
        norm=norm,
    )
