"""The acceptance suite behind `astarnorm verify-paper`.

Ten criteria: the worked 2x2 example with its exact interpolated values,
statistical inequality sweeps, the closed-form classical limit, oracle
agreement at small dimension, the normaloid equivalences, certificate and
witness quality on positive decisions, the parallelism-to-orthogonality
implication, and homogeneity/adjoint invariance of the decisions.

Every criterion is deterministic (fixed RNG seeds) and returns rows of
(expected, got, tol); `run_all` aggregates them for the CLI table and for
tests/test_acceptance.py.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    is_orthogonal,
    is_parallel,
    normaloid_equivalences,
    parallelism_implies_orthogonality_check,
)
from .oracle import OracleConfig, grid_max_mu, grid_min_xi, sphere_sample_max
from .seminorms import a_norm, a_numradius, al_norm
from .weights import Weight, a_adjoint, validate_weight

DEFAULT_SEED = 20260811


@dataclass(frozen=True)
class CheckRow:
    label: str
    expected: float
    got: float
    tol: float
    kind: str = "eq"  # eq: |got-expected|<=tol; le: got<=expected+tol; lt: got<expected

    @property
    def ok(self) -> bool:
        if self.kind == "eq":
            return abs(self.got - self.expected) <= self.tol
        if self.kind == "le":
            return self.got <= self.expected + self.tol
        if self.kind == "lt":
            return self.got < self.expected
        raise ValueError(f"unknown row kind {self.kind!r}")


@dataclass
class CriterionResult:
    index: int
    name: str
    rows: list[CheckRow] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)


def _tol(default: float, override: float | None) -> float:
    return default if override is None else override


# ---------------------------------------------------------------------------
# instance generators (deterministic)

def random_weight(rng: np.random.Generator, n: int) -> Weight:
    b = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    a = b @ b.conj().T + (0.3 + rng.uniform()) * np.eye(n)
    return validate_weight(a)


def random_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0 * n)


def random_a_selfadjoint(rng: np.random.Generator, w: Weight) -> np.ndarray:
    h = random_matrix(rng, w.n)
    h = (h + h.conj().T) / 2.0
    return w.inv_a @ h


def random_normaloid(rng: np.random.Generator, w: Weight) -> np.ndarray:
    """Pull a random normal matrix back through the weight: its reduced form is
    normal, so radius and norm coincide."""
    n = w.n
    z = random_matrix(rng, n)
    q, _ = np.linalg.qr(z)
    evals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    normal = (q * evals) @ q.conj().T
    return w.inv_sqrt_a @ normal @ w.sqrt_a


def random_non_normaloid(rng: np.random.Generator, w: Weight) -> np.ndarray:
    """Random element with a definite radius/norm gap (resampled until clear)."""
    while True:
        x = random_matrix(rng, w.n)
        nrm = a_norm(w, x).value
        rad = a_numradius(w, x).value
        if nrm > 0.1 and rad <= 0.98 * nrm:
            return x


def random_parallel_pair(rng: np.random.Generator, w: Weight, kind: int):
    """A pair that attains the triangle equality by construction."""
    if kind % 2 == 0:
        x = random_matrix(rng, w.n)
        c = 0.2 + rng.uniform()
        psi = 2.0 * np.pi * rng.uniform()
        return x, c * np.exp(1j * psi) * x
    x = random_normaloid(rng, w)
    return x, np.eye(w.n, dtype=np.complex128)


def random_orthogonal_pair(rng: np.random.Generator, w: Weight):
    """Unitary-conjugated coordinate pair pulled back through the weight.

    The reduced pair is U diag(1,0,..) U*, U diag(0,1,0,..) U*, which is
    orthogonal in the interpolated norm for every lam; pulling back through
    a^{-1/2} (.) a^{1/2} preserves that.
    """
    n = w.n
    z = random_matrix(rng, n)
    q, _ = np.linalg.qr(z)
    d1 = np.zeros(n)
    d1[0] = 1.0
    d2 = np.zeros(n)
    d2[1] = 1.0
    yx = (q * d1) @ q.conj().T
    yy = (q * d2) @ q.conj().T
    back = lambda m: w.inv_sqrt_a @ m @ w.sqrt_a
    return back(yx), back(yy)


# ---------------------------------------------------------------------------
# independent closed forms for the classical limit

def _det2(m: np.ndarray) -> complex:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def _det3(m: np.ndarray) -> complex:
    return (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def top_singular_2x2(m: np.ndarray) -> float:
    """Largest singular value of a 2x2 matrix from the characteristic polynomial."""
    t = float(np.sum(np.abs(m) ** 2))
    d = abs(_det2(m)) ** 2
    disc = max(t * t - 4.0 * d, 0.0)
    return math.sqrt(max((t + math.sqrt(disc)) / 2.0, 0.0))


def top_singular_3x3(m: np.ndarray) -> float:
    """Largest singular value of a 3x3 matrix via the trigonometric cubic formula."""
    h = m.conj().T @ m
    q = float(np.trace(h).real) / 3.0
    p2 = float(np.sum(np.abs(h - q * np.eye(3)) ** 2))
    p = math.sqrt(max(p2 / 6.0, 0.0))
    if p < 1e-300:
        return math.sqrt(max(q, 0.0))
    b = (h - q * np.eye(3)) / p
    r = float(_det3(b).real) / 2.0
    r = min(1.0, max(-1.0, r))
    phi = math.acos(r) / 3.0
    return math.sqrt(max(q + 2.0 * p * math.cos(phi), 0.0))


# ---------------------------------------------------------------------------
# criteria

def criterion_1(tol_override: float | None = None) -> CriterionResult:
    """Worked 2x2 example: exact interpolated values across lambda."""
    res = CriterionResult(1, "worked 2x2 example (a = diag(2,1), x = e12)")
    w = validate_weight(np.diag([2.0, 1.0]))
    x = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)

    v1 = al_norm(w, 1.0, x).value ** 2
    res.rows.append(CheckRow("lam=1: value^2 = 2", 2.0, v1, _tol(1e-8, tol_override)))
    for lam in (0.0, 0.1, 0.25, 0.5):
        got = al_norm(w, lam, x).value ** 2
        res.rows.append(CheckRow(f"lam={lam}: value^2 = 1/(2(1-lam))",
                                 1.0 / (2.0 * (1.0 - lam)), got, _tol(1e-6, tol_override)))
    for lam in (0.5, 0.6, 0.7, 0.9):
        got = al_norm(w, lam, x).value ** 2
        res.rows.append(CheckRow(f"lam={lam}: value^2 = 2*lam", 2.0 * lam, got,
                                 _tol(1e-6, tol_override)))
    for lam in (0.0, 0.1, 0.25, 0.5, 0.6, 0.7):
        got = al_norm(w, lam, x).value ** 2
        res.rows.append(CheckRow(f"lam={lam}: value^2 < 2", 2.0, got, 0.0, kind="lt"))
    return res


def criterion_2(tol_override: float | None = None) -> CriterionResult:
    """Sandwich inequalities on 200 random triples."""
    res = CriterionResult(2, "sandwich inequalities, 200 random (a, x, lam)")
    rng = np.random.default_rng(DEFAULT_SEED + 2)
    worst_lower = worst_upper = worst_half = -math.inf
    for i in range(200):
        n = (2, 3, 4)[i % 3]
        w = random_weight(rng, n)
        x = random_matrix(rng, n)
        lam = float(rng.uniform())
        rad = a_numradius(w, x).value
        nrm = a_norm(w, x).value
        mid = al_norm(w, lam, x).value
        worst_lower = max(worst_lower, rad - mid)
        worst_upper = max(worst_upper, mid - nrm)
        worst_half = max(worst_half, 0.5 * nrm - rad)
    t = _tol(1e-7, tol_override)
    res.rows.append(CheckRow("max(v_a - |x|_(a,lam))", 0.0, worst_lower, t, kind="le"))
    res.rows.append(CheckRow("max(|x|_(a,lam) - |x|_a)", 0.0, worst_upper, t, kind="le"))
    res.rows.append(CheckRow("max(|x|_a / 2 - v_a)", 0.0, worst_half, t, kind="le"))
    return res


def criterion_3(tol_override: float | None = None) -> CriterionResult:
    """Collapse of all three norms on a-selfadjoint elements."""
    res = CriterionResult(3, "a-selfadjoint collapse, 50 random elements")
    rng = np.random.default_rng(DEFAULT_SEED + 3)
    worst = -math.inf
    for i in range(50):
        n = (2, 3, 4)[i % 3]
        w = random_weight(rng, n)
        x = random_a_selfadjoint(rng, w)
        rad = a_numradius(w, x).value
        nrm = a_norm(w, x).value
        scale = 1.0 + nrm
        for lam in (0.0, 0.3, 0.7, 1.0):
            mid = al_norm(w, lam, x).value
            worst = max(worst, abs(rad - mid) / scale, abs(nrm - mid) / scale)
    res.rows.append(CheckRow("max scaled deviation across lam in {0,.3,.7,1}",
                             0.0, worst, _tol(1e-6, tol_override), kind="le"))
    return res


def criterion_4(tol_override: float | None = None) -> CriterionResult:
    """Adjoint symmetry and the product identity."""
    res = CriterionResult(4, "adjoint symmetry and |x x#| = |x|_a^2, 50 random (a, x)")
    rng = np.random.default_rng(DEFAULT_SEED + 4)
    worst_adj = worst_prod = -math.inf
    for i in range(50):
        n = (2, 3, 4)[i % 3]
        w = random_weight(rng, n)
        x = random_matrix(rng, n)
        lam = float(rng.uniform())
        xs = a_adjoint(w, x)
        worst_adj = max(worst_adj, abs(al_norm(w, lam, xs).value - al_norm(w, lam, x).value))
        nrm2 = a_norm(w, x).value ** 2
        prod = al_norm(w, lam, x @ xs).value
        worst_prod = max(worst_prod, abs(prod - nrm2) / (1.0 + nrm2))
    res.rows.append(CheckRow("max | |x#| - |x| |", 0.0, worst_adj,
                             _tol(1e-6, tol_override), kind="le"))
    res.rows.append(CheckRow("max scaled | |x x#| - |x|_a^2 |", 0.0, worst_prod,
                             _tol(1e-6, tol_override), kind="le"))
    return res


def criterion_5(tol_override: float | None = None) -> CriterionResult:
    """Oracle agreement: sampled norm values and grid decisions at n = 2, 3."""
    res = CriterionResult(5, "oracle equivalence, 100 instances at n=2 and 25 at n=3")
    rng = np.random.default_rng(DEFAULT_SEED + 5)
    ocfg = OracleConfig()
    worst_rel = -math.inf
    ortho_match = par_match = 0
    total = 0
    for n, count in ((2, 100), (3, 25)):
        for _ in range(count):
            total += 1
            w = random_weight(rng, n)
            x = random_matrix(rng, n)
            y = random_matrix(rng, n)
            lam = float(rng.uniform())

            val = al_norm(w, lam, x).value
            o_val = sphere_sample_max(w, lam, x, ocfg)
            worst_rel = max(worst_rel, abs(val - o_val) / max(val, 1e-12))

            nx = val
            ny = al_norm(w, lam, y).value
            xh, yh = x / nx, y / ny

            ortho = is_orthogonal(w, lam, x, y).orthogonal
            min_o, _ = grid_min_xi(w, lam, xh, yh, ocfg)
            if ortho == (1.0 - min_o <= 1e-6):
                ortho_match += 1

            par = is_parallel(w, lam, x, y).parallel
            max_o, _ = grid_max_mu(w, lam, xh, yh, ocfg)
            if par == (2.0 - max_o <= 1e-6):
                par_match += 1
    res.rows.append(CheckRow("max relative |al_norm - sphere_sample_max|", 0.0, worst_rel,
                             _tol(1e-6, tol_override), kind="le"))
    res.rows.append(CheckRow("orthogonality decisions agreeing with grid_min_xi",
                             float(total), float(ortho_match), _tol(0.0, tol_override)))
    res.rows.append(CheckRow("parallelism decisions agreeing with grid_max_mu",
                             float(total), float(par_match), _tol(0.0, tol_override)))
    return res


def criterion_6(tol_override: float | None = None) -> CriterionResult:
    """Classical limit a = I against closed-form singular values."""
    res = CriterionResult(6, "classical limit a = 1")
    rng = np.random.default_rng(DEFAULT_SEED + 6)
    worst2 = worst3 = -math.inf
    w2 = validate_weight(np.eye(2))
    w3 = validate_weight(np.eye(3))
    for _ in range(10):
        x2 = random_matrix(rng, 2)
        worst2 = max(worst2, abs(al_norm(w2, 1.0, x2).value - top_singular_2x2(x2)))
        x3 = random_matrix(rng, 3)
        worst3 = max(worst3, abs(al_norm(w3, 1.0, x3).value - top_singular_3x3(x3)))
    t = _tol(1e-8, tol_override)
    res.rows.append(CheckRow("max |al_norm(lam=1) - closed-form sigma_max|, 2x2",
                             0.0, worst2, t, kind="le"))
    res.rows.append(CheckRow("max |al_norm(lam=1) - closed-form sigma_max|, 3x3",
                             0.0, worst3, t, kind="le"))
    nilp = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
    res.rows.append(CheckRow("numerical radius of e12 at a = 1", 0.5,
                             a_numradius(w2, nilp).value, t))
    return res


def criterion_7(tol_override: float | None = None) -> CriterionResult:
    """Normaloid equivalence: the three predicates agree, in both directions."""
    res = CriterionResult(7, "normaloid equivalences, 20 + 20 elements at lam in {0.2, 0.8}")
    rng = np.random.default_rng(DEFAULT_SEED + 7)
    agree = direction = 0
    total = 0
    for i in range(20):
        n = (2, 3)[i % 2]
        w = random_weight(rng, n)
        for x, expect in ((random_normaloid(rng, w), True),
                          (random_non_normaloid(rng, w), False)):
            for lam in (0.2, 0.8):
                total += 1
                rep = normaloid_equivalences(w, lam, x)
                if rep.agree:
                    agree += 1
                if (rep.parallel_to_unit, rep.normaloid, rep.parallel_to_adjoint) == (expect,) * 3:
                    direction += 1
    res.rows.append(CheckRow("reports with all three predicates equal", float(total),
                             float(agree), _tol(0.0, tol_override)))
    res.rows.append(CheckRow("reports matching the constructed direction", float(total),
                             float(direction), _tol(0.0, tol_override)))
    return res


def criterion_8(tol_override: float | None = None) -> CriterionResult:
    """Certificate residuals on positive parallel decisions; support-angle
    witnesses on positive orthogonality decisions."""
    res = CriterionResult(8, "certificates and support-angle witnesses on positive decisions")
    rng = np.random.default_rng(DEFAULT_SEED + 8)

    par_pos = 0
    worst_cert = -math.inf
    for i in range(20):
        n = (2, 3)[i % 2]
        w = random_weight(rng, n)
        lam = float(rng.uniform())
        x, y = random_parallel_pair(rng, w, i)
        pr = is_parallel(w, lam, x, y)
        if pr.parallel:
            par_pos += 1
            worst_cert = max(worst_cert,
                             pr.cert.max_residual() / (1.0 + pr.norm_x * pr.norm_y))
    res.rows.append(CheckRow("constructed parallel pairs decided parallel", 20.0,
                             float(par_pos), _tol(0.0, tol_override)))
    res.rows.append(CheckRow("max scaled certificate residual", 0.0, worst_cert,
                             _tol(1e-5, tol_override), kind="le"))

    orth_pos = 0
    worst_res_x = -math.inf
    worst_signed = math.inf
    checked = 0
    for i in range(20):
        n = (2, 3)[i % 2]
        w = random_weight(rng, n)
        lam = float(rng.uniform())
        if i % 2 == 0:
            x, y = random_orthogonal_pair(rng, w)
        else:
            px, py = random_parallel_pair(rng, w, 1)
            pr = is_parallel(w, lam, px, py)
            x = px
            y = pr.norm_y * px - pr.mu * pr.norm_x * py
        orth = is_orthogonal(w, lam, x, y)
        if orth.orthogonal:
            orth_pos += 1
            checked += 1
            worst_res_x = max(worst_res_x, max(t.residual_x for t in orth.theta_witnesses))
            worst_signed = min(worst_signed, min(t.signed_real for t in orth.theta_witnesses))
    res.rows.append(CheckRow("constructed orthogonal pairs decided orthogonal", 20.0,
                             float(orth_pos), _tol(0.0, tol_override)))
    res.rows.append(CheckRow("max residual_x over 64-angle witnesses", 0.0, worst_res_x,
                             _tol(1e-5, tol_override), kind="le"))
    res.rows.append(CheckRow("max(-signed_real) over 64-angle witnesses", 0.0,
                             -worst_signed if checked else 0.0,
                             _tol(1e-5, tol_override), kind="le"))
    return res


def criterion_9(tol_override: float | None = None) -> CriterionResult:
    """Every parallel pair induces the two derived orthogonality relations."""
    res = CriterionResult(9, "parallelism implies orthogonality, 20 parallel pairs")
    rng = np.random.default_rng(DEFAULT_SEED + 9)
    ok_count = 0
    worst = -math.inf
    for i in range(20):
        n = (2, 3)[i % 2]
        w = random_weight(rng, n)
        lam = float(rng.uniform())
        x, y = random_parallel_pair(rng, w, i)
        ok, report = parallelism_implies_orthogonality_check(w, lam, x, y)
        if ok:
            ok_count += 1
        worst = max(worst, report["x_defect"], report["y_defect"])
    res.rows.append(CheckRow("pairs with both relations orthogonal", 20.0, float(ok_count),
                             _tol(0.0, tol_override)))
    res.rows.append(CheckRow("max orthogonality defect", 0.0, worst,
                             _tol(1e-5, tol_override), kind="le"))
    return res


def criterion_10(tol_override: float | None = None) -> CriterionResult:
    """Decisions invariant under scaling and under the a-adjoint map."""
    res = CriterionResult(10, "homogeneity and adjoint invariance, 50 instances")
    rng = np.random.default_rng(DEFAULT_SEED + 10)

    par_scale = par_adj = 0
    for i in range(25):
        n = (2, 3)[i % 2]
        w = random_weight(rng, n)
        lam = float(rng.uniform())
        if i % 5 == 0:
            x, y = random_parallel_pair(rng, w, i)
        else:
            x, y = random_matrix(rng, n), random_matrix(rng, n)
        base = is_parallel(w, lam, x, y).parallel
        alpha = float(rng.uniform(0.2, 2.0)) * (1 if rng.uniform() < 0.5 else -1)
        beta = float(rng.uniform(0.2, 2.0)) * (1 if rng.uniform() < 0.5 else -1)
        if is_parallel(w, lam, alpha * x, beta * y).parallel == base:
            par_scale += 1
        if is_parallel(w, lam, a_adjoint(w, x), a_adjoint(w, y)).parallel == base:
            par_adj += 1
    res.rows.append(CheckRow("parallelism invariant under real scaling", 25.0,
                             float(par_scale), _tol(0.0, tol_override)))
    res.rows.append(CheckRow("parallelism invariant under a-adjoint", 25.0,
                             float(par_adj), _tol(0.0, tol_override)))

    ort_scale = ort_adj = 0
    for i in range(25):
        n = (2, 3)[i % 2]
        w = random_weight(rng, n)
        lam = float(rng.uniform())
        if i % 5 == 0:
            x, y = random_orthogonal_pair(rng, w)
        else:
            x, y = random_matrix(rng, n), random_matrix(rng, n)
        base = is_orthogonal(w, lam, x, y).orthogonal
        alpha = (rng.standard_normal() + 1j * rng.standard_normal()) or 1.0
        beta = (rng.standard_normal() + 1j * rng.standard_normal()) or 1.0
        if is_orthogonal(w, lam, alpha * x, beta * y).orthogonal == base:
            ort_scale += 1
        if is_orthogonal(w, lam, a_adjoint(w, x), a_adjoint(w, y)).orthogonal == base:
            ort_adj += 1
    res.rows.append(CheckRow("orthogonality invariant under complex scaling", 25.0,
                             float(ort_scale), _tol(0.0, tol_override)))
    res.rows.append(CheckRow("orthogonality invariant under a-adjoint", 25.0,
                             float(ort_adj), _tol(0.0, tol_override)))
    return res


ALL_CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


def run_all(tol_override: float | None = None, progress=None) -> list[CriterionResult]:
    """Run every criterion; `progress`, when given, is called with each result."""
    results = []
    for fn in ALL_CRITERIA:
        t0 = time.perf_counter()
        res = fn(tol_override)
        res.seconds = time.perf_counter() - t0
        results.append(res)
        if progress is not None:
            progress(res)
    return results


def format_table(results: list[CriterionResult]) -> str:
    """Plain-text pass/fail table: one line per check row, grouped by criterion."""
    lines = []
    width = max(len(r.label) for res in results for r in res.rows) + 2
    header = f"{'check':<{width}}{'expected':>14}{'got':>22}{'tol':>10}  pass"
    for res in results:
        lines.append(f"criterion {res.index}: {res.name}  [{res.seconds:.1f}s]")
        lines.append(header)
        for r in res.rows:
            rel = {"eq": "=", "le": "<=", "lt": "<"}[r.kind]
            lines.append(
                f"{r.label:<{width}}{rel:>2}{r.expected:>12.6g}{r.got:>22.12g}"
                f"{r.tol:>10.1e}  {'ok' if r.ok else 'FAIL'}"
            )
        lines.append(f"criterion {res.index}: {'PASS' if res.passed else 'FAIL'}")
        lines.append("")
    n_pass = sum(1 for r in results if r.passed)
    lines.append(f"{n_pass}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
