"""Command-line interface: ``rankrange <command> [options]``.

Commands
--------
range     rank-k range of a matrix file or of a seeded random matrix
shift     closed-form disc for the n x n shift, with an optional numeric check
radius    numerical radius, plus the nilpotent bounds when they apply
dilate    build and verify the shift dilation of a nilpotent contraction
oracle    closed-form helpers (rho, tridiagonal eigenvalues, Hermitian/normal ranges)
selftest  run the acceptance checks

Exit codes: 0 success, 1 a mathematical hypothesis failed (or a check did
not pass), 2 usage or input error. Diagnostics go to stderr as one line
starting with ``error:``.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .dilation import (
    build_dilation,
    defect_operator,
    radius_bound_report,
    telescoping_residual,
    containment_report,
    verify_dilation,
)
from .engine import DEFAULT_THETA_SAMPLES, numerical_radius, rank_range
from .errors import ConvergenceError, HypothesisError
from .formats import (
    MatrixFormatError,
    dumps,
    export_csv,
    export_svg,
    parse_matrix,
    result_document,
)
from .geometry import hausdorff
from .linalg import nilpotency_index, numerical_rank, operator_norm, shift_matrix
from .oracles import (
    char_det,
    hermitian_range,
    nilpotent_bound,
    normal_range,
    rho,
    shift_range,
    tridiag_eigenvalue,
)
from .samples import complex_gaussian, random_nilpotent_contraction

__all__ = ["main", "run_command", "build_parser"]

SHIFT_CHECK_TOL = 5e-4


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p, k=True):
    if k:
        p.add_argument("--k", type=int, default=1, help="rank k (default 1)")
    p.add_argument("--theta-samples", type=int, default=DEFAULT_THETA_SAMPLES,
                   help="number of uniform angles (default 720)")
    p.add_argument("--tol", type=float, default=1e-9, help="geometric tolerance (default 1e-9)")


def _output(p, formats=("json", "csv", "svg")):
    p.add_argument("--format", choices=formats, default="json")
    p.add_argument("--out", help="write here instead of stdout")


def _source(p):
    p.add_argument("--matrix", help="matrix file (JSON with 'n' and 'entries')")
    p.add_argument("--seed", type=int, help="use a seeded random matrix instead")
    p.add_argument("--size", type=int, default=4, help="size of the seeded matrix (default 4)")


def build_parser():
    parser = _Parser(prog="rankrange", description="Higher-rank numerical ranges of matrices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    p = sub.add_parser("range", help="rank-k range of a matrix")
    _source(p)
    _common(p)
    p.add_argument("--refine", action="store_true", help="add angles around kinks of the support")
    _output(p)

    p = sub.add_parser("shift", help="closed-form disc for the shift, with numeric cross-check")
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.add_argument("--check", action="store_true",
                   help=f"exit 1 unless the numeric Hausdorff gap is <= {SHIFT_CHECK_TOL:g}")
    _output(p)

    p = sub.add_parser("radius", help="numerical radius and nilpotent bounds")
    _source(p)
    _common(p, k=False)
    p.add_argument("--rank-tol", type=float, default=1e-8)
    p.add_argument("--out")

    p = sub.add_parser("dilate", help="dilation model and disc containment for a nilpotent contraction")
    _source(p)
    _common(p)
    p.add_argument("--rank-tol", type=float, default=1e-8)
    p.add_argument("--out")

    p = sub.add_parser("oracle", help="closed-form helpers")
    p.add_argument("which", choices=["rho", "tridiag", "shift", "hermitian", "normal", "nilpotent"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--values", help="JSON list: real numbers, or [re, im] pairs for 'normal'")
    p.add_argument("--out")

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--only", help="comma-separated criterion numbers")
    return parser


# --- helpers ----------------------------------------------------------------

def _load_matrix(args, nilpotent=False):
    if args.matrix is not None and args.seed is not None:
        raise UsageError("give either --matrix or --seed, not both")
    if args.matrix is not None:
        try:
            with open(args.matrix, "rb") as fh:
                return parse_matrix(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.matrix}: {exc.strerror}") from None
        except MatrixFormatError as exc:
            raise UsageError(f"{args.matrix}: {exc}") from None
    if args.seed is not None:
        if args.size < 1:
            raise UsageError("--size must be positive")
        rng = np.random.default_rng(args.seed)
        if nilpotent:
            if args.size < 2:
                raise UsageError("--size must be at least 2 for a seeded nilpotent matrix")
            return random_nilpotent_contraction(rng, args.size)
        A = complex_gaussian(rng, (args.size, args.size))
        return A / np.linalg.norm(A, 2)
    raise UsageError("one of --matrix or --seed is required")


def _check_k(k, n):
    if not 1 <= k <= n:
        raise UsageError(f"--k must lie in [1, {n}], got {k}")


def _check_samples(args):
    if args.theta_samples < 8:
        raise UsageError("--theta-samples must be at least 8")
    if not args.tol > 0:
        raise UsageError("--tol must be positive")


def _disc_json(d):
    if d is None:
        return None
    return {"center": [float(d.center.real), float(d.center.imag)], "radius": float(d.radius)}


def _render(doc, fmt, reference=None):
    if fmt == "csv":
        return export_csv(doc)
    if fmt == "svg":
        return export_svg(doc, reference)
    return dumps(doc).encode("utf-8")


def _emit(data, path, out):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if path:
        try:
            with open(path, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            raise UsageError(f"cannot write {path}: {exc.strerror}") from None
    else:
        out.write(data)


# --- commands ---------------------------------------------------------------

def cmd_range(args, out):
    T = _load_matrix(args)
    _check_k(args.k, T.shape[0])
    _check_samples(args)
    res = rank_range(T, args.k, args.theta_samples, args.tol, refine=args.refine)
    doc = result_document(res)
    if args.refine:
        doc["refined_supports"] = [[float(t), float(c)] for t, c in res.refined_supports]
    _emit(_render(doc, args.format), args.out, out)


def cmd_shift(args, out):
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    _check_k(args.k, args.n)
    _check_samples(args)
    exact = shift_range(args.n, args.k)
    res = rank_range(shift_matrix(args.n), args.k, args.theta_samples, args.tol)
    if exact is None or res.region.is_empty:
        gap = 0.0 if (exact is None) == res.region.is_empty else math.inf
    else:
        gap = hausdorff(res.region, exact)
    lines = [
        f"n {args.n} k {args.k}",
        "closed-form radius " + ("empty" if exact is None else f"{exact.radius:.7f}"),
        f"numeric kind {res.region.kind}",
        f"hausdorff gap {gap:.3e}",
    ]
    summary = "\n".join(lines) + "\n"
    if args.out:
        doc = result_document(res, {"closed_form": _disc_json(exact), "hausdorff": gap})
        _emit(_render(doc, args.format, exact), args.out, out)
    out.write(summary.encode("utf-8"))
    if args.check and not gap <= SHIFT_CHECK_TOL:
        raise CheckFailed(f"shift check failed: Hausdorff gap {gap:.3e} > {SHIFT_CHECK_TOL:g}")


def cmd_radius(args, out):
    T = _load_matrix(args)
    _check_samples(args)
    N = args.theta_samples
    omega = numerical_radius(T, N)
    info = {
        "numerical_radius": omega,
        "under_estimate_bound": omega * (1.0 / math.cos(math.pi / N) - 1.0),
        "norm": operator_norm(T),
    }
    n = nilpotency_index(T)
    info["nilpotency_index"] = n
    if n is not None:
        _, bound = radius_bound_report(T, N)
        info["norm_cos_bound"] = bound
        info["bound_holds"] = bool(omega <= bound + 1e-8)
        if info["norm"] <= 1.0 + 1e-8:
            r = numerical_rank(defect_operator(T), args.rank_tol)
            info["defect_rank"] = r
            info["rank_k_discs"] = [_disc_json(nilpotent_bound(n, k, r))
                                    for k in range(1, T.shape[0] + 1)]
    _emit(dumps(info), args.out, out)


def cmd_dilate(args, out):
    T = _load_matrix(args, nilpotent=True)
    _check_k(args.k, T.shape[0])
    _check_samples(args)
    if not args.rank_tol > 0:
        raise UsageError("--rank-tol must be positive")
    model = build_dilation(T, args.rank_tol)
    iso, inter, comp = verify_dilation(model)
    rep = containment_report(T, args.k, args.theta_samples, args.rank_tol, args.tol)
    doc = {
        "n": model.n,
        "r": model.r,
        "r_loose": rep.r_loose,
        "rank_sensitive": rep.rank_sensitive,
        "residuals": {"isometry": iso, "intertwining": inter, "compression": comp},
        "telescoping": telescoping_residual(T, model.n),
        "report": {
            "k": rep.k,
            "bound": _disc_json(rep.bound),
            "contained": rep.contained,
            "margin": rep.margin if math.isfinite(rep.margin) else None,
            "tol": rep.tol,
            "kind": rep.computed_region.kind,
            "vertices": [[float(z.real), float(z.imag)] for z in rep.computed_region.vertices],
        },
    }
    _emit(dumps(doc), args.out, out)
    if not rep.contained:
        raise CheckFailed(f"containment violated: margin {rep.margin:.3e} below -{rep.tol:.3e}")


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"oracle {args.which} needs --{name}")


def _values(args, complex_pairs=False):
    _need(args, "values")
    try:
        vals = json.loads(args.values)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--values is not valid JSON: {exc.msg}") from None
    try:
        if complex_pairs:
            return np.array([complex(float(a), float(b)) for a, b in vals])
        return np.array([float(x) for x in vals])
    except (TypeError, ValueError):
        kind = "[re, im] pairs" if complex_pairs else "real numbers"
        raise UsageError(f"--values must be a JSON list of {kind}") from None


def cmd_oracle(args, out):
    which = args.which
    try:
        if which == "rho":
            _need(args, "k", "r")
            doc = {"k": args.k, "r": args.r, "rho": rho(args.k, args.r)}
        elif which == "tridiag":
            _need(args, "n")
            lam = [tridiag_eigenvalue(args.n, nu) for nu in range(1, args.n + 1)]
            doc = {"n": args.n, "eigenvalues": lam,
                   "char_det": [char_det(args.n, x) for x in lam]}
        elif which == "shift":
            _need(args, "n", "k")
            doc = {"n": args.n, "k": args.k, "disc": _disc_json(shift_range(args.n, args.k))}
        elif which == "hermitian":
            _need(args, "k")
            spectrum = np.sort(_values(args))[::-1]
            iv = hermitian_range(spectrum, args.k)
            doc = {"k": args.k, "interval": None if iv.is_empty else [iv.lo, iv.hi]}
        elif which == "normal":
            _need(args, "k")
            region = normal_range(_values(args, complex_pairs=True), args.k)
            doc = {"k": args.k, "kind": region.kind,
                   "vertices": [[float(z.real), float(z.imag)] for z in region.vertices]}
        else:
            _need(args, "n", "k", "r")
            doc = {"n": args.n, "k": args.k, "r": args.r,
                   "disc": _disc_json(nilpotent_bound(args.n, args.k, args.r))}
    except ValueError as exc:
        if isinstance(exc, HypothesisError):
            raise
        raise UsageError(str(exc)) from None
    _emit(dumps(doc), args.out, out)


def cmd_selftest(args, out):
    from .acceptance import CRITERIA, run_all

    numbers = None
    if args.only:
        try:
            numbers = [int(x) for x in args.only.split(",")]
        except ValueError:
            raise UsageError("--only takes comma-separated integers") from None
        unknown = [n for n in numbers if n not in CRITERIA]
        if unknown:
            raise UsageError(f"unknown criteria: {unknown}")
    failed = 0
    for res in run_all(numbers):
        out.write((res.line() + "\n").encode("utf-8"))
        out.flush()
        failed += not res.passed
    if failed:
        raise CheckFailed(f"{failed} acceptance criteria failed")


COMMANDS = {
    "range": cmd_range,
    "shift": cmd_shift,
    "radius": cmd_radius,
    "dilate": cmd_dilate,
    "oracle": cmd_oracle,
    "selftest": cmd_selftest,
}


def run_command(argv, out=None, err=None):
    """Run one command; returns the exit code. ``out`` is a binary stream."""
    out = sys.stdout.buffer if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required (range, shift, radius, dilate, oracle, selftest)")
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (HypothesisError, ConvergenceError, CheckFailed) as exc:
        print(f"error: {exc}", file=err)
        return 1
    return 0


def main(argv=None):
    try:
        return run_command(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # --help / --version
        return exc.code if isinstance(exc.code, int) else 0
    except BrokenPipeError:  # e.g. piped into head
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
