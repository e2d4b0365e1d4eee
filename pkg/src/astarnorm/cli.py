"""Command-line front end.

Subcommands: norm, range, ortho, parallel, verify-paper.  Problems are read
from JSON problem files; results are printed as JSON envelopes on stdout.

Exit codes: 0 success, 1 verification failure, 2 input/parse error,
3 math-domain error (e.g. a weight that is not positive definite),
4 output I/O error.  Identical inputs and --seed produce byte-identical
stdout.
"""

from __future__ import annotations

import argparse
import sys

from . import acceptance, jsonio
from .errors import AstarNormError, ParseError
from .geometry import is_orthogonal, is_parallel
from .seminorms import SolverConfig, a_numrange_boundary, al_norm
from .weights import validate_weight

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_MATH = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="astarnorm",
                                description="Weighted norms, numerical ranges and their geometry.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, with_y=False):
        sp.add_argument("file", help="problem file (JSON)")
        sp.add_argument("--lambda", dest="lam", type=float, default=None,
                        help="override the problem file's lambda")
        sp.add_argument("--starts", type=int, default=None, help="random multistarts")
        sp.add_argument("--seed", type=int, default=None, help="RNG seed for the solver")
        if with_y:
            sp.add_argument("--tol", type=float, default=None, help="decision tolerance")

    sp = sub.add_parser("norm", help="compute |x|_(a,lambda) with its witness state")
    add_common(sp)

    sp = sub.add_parser("range", help="export the numerical-range boundary as CSV")
    sp.add_argument("file", help="problem file (JSON)")
    sp.add_argument("--angles", type=int, default=360, help="support angles (>= 8)")
    sp.add_argument("--out", required=True, help="CSV output path")

    sp = sub.add_parser("ortho", help="decide Birkhoff-James orthogonality of x and y")
    add_common(sp, with_y=True)

    sp = sub.add_parser("parallel", help="decide norm parallelism of x and y")
    add_common(sp, with_y=True)

    sp = sub.add_parser("verify-paper", help="run the acceptance suite and print a table")
    sp.add_argument("--report", default=None, help="also write the table to this path")
    sp.add_argument("--tol", type=float, default=None,
                    help="override every check tolerance (tightening may fail the run)")
    return p


def _solver_config(args) -> SolverConfig:
    kwargs = {}
    if getattr(args, "starts", None) is not None:
        kwargs["random_starts"] = max(0, args.starts)
    if getattr(args, "seed", None) is not None:
        kwargs["rng_seed"] = args.seed
    return SolverConfig(**kwargs)


def _effective_lambda(args, problem) -> float:
    if getattr(args, "lam", None) is None:
        return problem.lam
    lam = float(args.lam)
    if not 0.0 <= lam <= 1.0:
        raise ParseError(f"--lambda must lie in [0, 1], got {lam}")
    return lam


def _cmd_norm(args) -> int:
    problem = jsonio.load_problem(args.file)
    lam = _effective_lambda(args, problem)
    cfg = _solver_config(args)
    w = validate_weight(problem.a)
    res = al_norm(w, lam, problem.x, cfg)
    env = {
        "command": "norm",
        "value": res.value,
        "witness": jsonio.witness_to_json(res.witness),
        "diagnostics": jsonio.diagnostics_to_json(res, cfg.rng_seed),
    }
    sys.stdout.write(jsonio.dump_envelope(env))
    return EXIT_OK


def _cmd_range(args) -> int:
    problem = jsonio.load_problem(args.file)
    if args.angles < 8:
        raise ParseError(f"--angles must be >= 8, got {args.angles}")
    w = validate_weight(problem.a)
    boundary = a_numrange_boundary(w, problem.x, args.angles)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            jsonio.write_range_csv(fh, boundary)
    except OSError as exc:
        sys.stderr.write(f"astarnorm: cannot write {args.out}: {exc}\n")
        return EXIT_IO
    return EXIT_OK


def _require_y(problem):
    if problem.y is None:
        raise ParseError("this command needs a 'y' matrix in the problem file")


def _cmd_ortho(args) -> int:
    problem = jsonio.load_problem(args.file)
    _require_y(problem)
    lam = _effective_lambda(args, problem)
    cfg = _solver_config(args)
    tol = args.tol if args.tol is not None else 1e-6
    w = validate_weight(problem.a)
    res = is_orthogonal(w, lam, problem.x, problem.y, tol_decision=tol, cfg=cfg)
    worst = min(res.theta_witnesses, key=lambda t: t.signed_real)
    env = {
        "command": "ortho",
        "orthogonal": res.orthogonal,
        "values": {
            "min_value": res.min_value,
            "norm_x": res.norm_x,
            "defect": res.defect,
            "worst_signed_real": worst.signed_real,
        },
        "argmin_xi": jsonio.complex_to_json(res.argmin_xi),
        "witness": jsonio.witness_to_json(worst.witness),
    }
    sys.stdout.write(jsonio.dump_envelope(env))
    return EXIT_OK


def _cmd_parallel(args) -> int:
    problem = jsonio.load_problem(args.file)
    _require_y(problem)
    lam = _effective_lambda(args, problem)
    cfg = _solver_config(args)
    tol = args.tol if args.tol is not None else 1e-6
    w = validate_weight(problem.a)
    res = is_parallel(w, lam, problem.x, problem.y, tol_decision=tol, cfg=cfg)
    env = {
        "command": "parallel",
        "parallel": res.parallel,
        "mu": jsonio.complex_to_json(res.mu),
        "values": {
            "defect": res.defect,
            "norm_x": res.norm_x,
            "norm_y": res.norm_y,
        },
        "certificate": {
            "residual_pairing": res.cert.residual_pairing,
            "residual_x": res.cert.residual_x,
            "residual_y": res.cert.residual_y,
        },
        "witness": jsonio.witness_to_json(res.witness) if res.witness is not None else None,
    }
    sys.stdout.write(jsonio.dump_envelope(env))
    return EXIT_OK


def _cmd_verify_paper(args) -> int:
    def progress(res):
        sys.stderr.write(
            f"criterion {res.index}: {'PASS' if res.passed else 'FAIL'} ({res.seconds:.1f}s)\n"
        )
        sys.stderr.flush()

    results = acceptance.run_all(tol_override=args.tol, progress=progress)
    table = acceptance.format_table(results)
    sys.stdout.write(table)
    if args.report is not None:
        try:
            with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(table)
        except OSError as exc:
            sys.stderr.write(f"astarnorm: cannot write {args.report}: {exc}\n")
            return EXIT_IO
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


_COMMANDS = {
    "norm": _cmd_norm,
    "range": _cmd_range,
    "ortho": _cmd_ortho,
    "parallel": _cmd_parallel,
    "verify-paper": _cmd_verify_paper,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad flags, which matches the input-error code
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        sys.stderr.write(f"astarnorm: input error: {exc}\n")
        return EXIT_INPUT
    except FileNotFoundError as exc:
        sys.stderr.write(f"astarnorm: input error: {exc}\n")
        return EXIT_INPUT
    except AstarNormError as exc:
        sys.stderr.write(f"astarnorm: {type(exc).__name__}: {exc}\n")
        return EXIT_MATH
    except ValueError as exc:
        sys.stderr.write(f"astarnorm: input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
