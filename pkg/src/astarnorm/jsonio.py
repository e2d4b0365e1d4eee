"""Problem-file and result-envelope JSON schemas, plus the CSV export.

Matrix object: {"n": int, "data": [[re, im], ...]} with n*n row-major
entries.  Problem file: {"a": matrix, "x": matrix, "y": matrix (optional),
"lambda": float in [0, 1] (optional, default 1.0)}.  Floats are emitted via
Python's shortest round-trip repr, so envelopes parse back losslessly; the
CSV export uses 17 significant digits for the same reason.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .linalg import MAX_DIM
from .seminorms import NormResult
from .weights import StateWitness


def matrix_to_json(m: np.ndarray) -> dict:
    """Encode a square complex matrix as a matrix object."""
    m = np.asarray(m, dtype=np.complex128)
    n = m.shape[0]
    data = [[float(z.real), float(z.imag)] for z in m.ravel()]
    return {"n": n, "data": data}


def matrix_from_json(obj, name: str = "matrix") -> np.ndarray:
    """Decode and validate a matrix object."""
    if not isinstance(obj, dict):
        raise ParseError(f"{name}: expected an object, got {type(obj).__name__}")
    try:
        n = int(obj["n"])
        data = obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{name}: missing or malformed 'n'/'data'") from exc
    if not 1 <= n <= MAX_DIM:
        raise ParseError(f"{name}: n must be in [1, {MAX_DIM}], got {n}")
    if not isinstance(data, list) or len(data) != n * n:
        raise ParseError(f"{name}: data must hold n*n = {n * n} entries")
    flat = np.empty(n * n, dtype=np.complex128)
    for k, pair in enumerate(data):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ParseError(f"{name}: entry {k} is not a [re, im] pair")
        re, im = float(pair[0]), float(pair[1])
        if not (np.isfinite(re) and np.isfinite(im)):
            raise ParseError(f"{name}: entry {k} is not finite")
        flat[k] = complex(re, im)
    return flat.reshape(n, n)


def vector_to_json(u: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(u, dtype=np.complex128)]


def complex_to_json(z: complex) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


@dataclass(frozen=True)
class ProblemFile:
    a: np.ndarray
    x: np.ndarray
    y: np.ndarray | None
    lam: float


def problem_from_dict(obj: dict) -> ProblemFile:
    """Validate a parsed problem file."""
    if not isinstance(obj, dict):
        raise ParseError("problem file must be a JSON object")
    for key in ("a", "x"):
        if key not in obj:
            raise ParseError(f"problem file is missing '{key}'")
    a = matrix_from_json(obj["a"], "a")
    x = matrix_from_json(obj["x"], "x")
    y = matrix_from_json(obj["y"], "y") if obj.get("y") is not None else None
    lam = obj.get("lambda", 1.0)
    try:
        lam = float(lam)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"lambda must be a number, got {lam!r}") from exc
    if not np.isfinite(lam) or not 0.0 <= lam <= 1.0:
        raise ParseError(f"lambda must lie in [0, 1], got {lam!r}")
    if x.shape != a.shape:
        raise ParseError("x and a must have the same dimension")
    if y is not None and y.shape != a.shape:
        raise ParseError("y and a must have the same dimension")
    return ProblemFile(a=a, x=x, y=y, lam=lam)


def load_problem(path: str) -> ProblemFile:
    """Load and validate a problem file from disk."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    return problem_from_dict(obj)


def witness_to_json(sw: StateWitness) -> dict:
    return {
        "h": matrix_to_json(sw.h),
        "u": vector_to_json(sw.u),
        "trace_ha": float(sw.trace_ha),
    }


def diagnostics_to_json(res: NormResult, seed: int) -> dict:
    return {
        "starts_used": int(res.starts_used),
        "iterations": int(res.iterations),
        "converged": bool(res.converged),
        "seed": int(seed),
    }


def dump_envelope(env: dict) -> str:
    """Serialize an envelope with a stable layout (2-space indent, LF)."""
    return json.dumps(env, indent=2) + "\n"


_ENVELOPE_KEYS = {"command", "value", "values", "witness", "certificate", "diagnostics",
                  "orthogonal", "parallel", "mu", "argmin_xi", "defect", "trace_ha"}


def parse_envelope(text: str) -> dict:
    """Parse an envelope and check it matches the documented shape."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid envelope JSON: {exc}") from exc
    if not isinstance(obj, dict) or "command" not in obj:
        raise ParseError("envelope must be an object with a 'command' field")
    unknown = set(obj) - _ENVELOPE_KEYS
    if unknown:
        raise ParseError(f"envelope has unknown fields: {sorted(unknown)}")
    if "witness" in obj and obj["witness"] is not None:
        matrix_from_json(obj["witness"]["h"], "witness.h")
    return obj


def write_range_csv(fh, boundary) -> None:
    """Write the boundary polyline as `theta,re,im` rows, 17 significant digits, LF endings."""
    fh.write("theta,re,im\n")
    for theta, point in zip(boundary.angles, boundary.points):
        fh.write(f"{theta:.17g},{point.real:.17g},{point.imag:.17g}\n")
