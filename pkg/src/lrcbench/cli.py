"""Command-line front end: ``lrcbench <subcommand> ...``.

JSON goes out at full precision and CSV rates at six decimals. A failure
prints a single JSON line on stderr and exits with a status code:
2 (bad input), 3 (budget exceeded) or 4 (verification failed).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import asymptotic, bounds, constructions, search
from .code import LinearCode, code_from_dict
from .errors import BudgetExceeded, LRCError, VerificationError
from .field import Field, GF

EXIT_OK, EXIT_VALIDATION, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code, self.kind = code, kind


class _Parser(argparse.ArgumentParser):
    """argparse with errors reported as JSON and exit status 2."""

    def error(self, message):
        raise _Fail(EXIT_VALIDATION, "usage", message)


def _clean(obj):
    """Make numpy scalars, tuples and infinities JSON-safe."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def _number(x: float):
    """Integral floats print as integers so ``3.0`` reads as ``3``."""
    return int(round(x)) if math.isfinite(x) and abs(x - round(x)) < 1e-12 else x


def _json(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=False) + "\n"


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _Fail(EXIT_VALIDATION, "input", f"cannot read JSON from {path}: {exc}") from None


# -- subcommands ----------------------------------------------------------------------

def _limits(args) -> search.SearchLimits:
    return search.SearchLimits(max_seconds=args.max_seconds)


def cmd_bound(args) -> tuple[str, int]:
    query = bounds.BoundQuery(args.n, args.d, args.q, args.r, args.k)
    if args.provider == "singleton":
        provider = bounds.KOptProvider.singleton()
    elif args.provider == "plotkin":
        provider = bounds.KOptProvider.plotkin()
    elif args.table:
        with open(args.table, encoding="utf-8") as fh:
            provider = search.read_kopt_csv(fh)
    else:
        provider = search.exact_provider(args.q, args.n, args.d, args.restriction, _limits(args))
    res = bounds.cm_bound(query, provider)
    out = {"bound": _number(res.bound), "argmin_t": res.argmin_t}
    if args.terms:
        out["terms"] = [_number(t) for t in res.terms]
    if args.k is not None:
        out["refutes"] = res.refutes(args.k)
    return _json(out), EXIT_OK


def cmd_curve(args) -> tuple[str, int]:
    series = [s for item in args.series for s in item.split(",") if s]
    deltas = asymptotic.delta_grid(args.delta_min, args.delta_max, args.step)
    points = asymptotic.sample_curves(series, args.r, args.q, deltas)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["delta", "rate", "series"])
    for p in points:
        w.writerow([f"{p.delta:.6f}", f"{p.rate:.6f}", p.series])
    return buf.getvalue(), EXIT_OK


def _base_parity(blob) -> tuple[np.ndarray, Field]:
    """Parity matrix of a base code given as an artifact, {"H0": ...} or a bare matrix."""
    if isinstance(blob, list):
        return np.asarray(blob, dtype=np.int64), GF(2)
    if "H0" in blob:
        F = Field.from_dict(blob["field"]) if "field" in blob else GF(int(blob.get("q", 2)))
        return np.asarray(blob["H0"], dtype=np.int64), F
    code, _ = code_from_dict(blob)
    if not isinstance(code, LinearCode):
        raise _Fail(EXIT_VALIDATION, "input", "gv-augment needs a linear base code")
    return code.parity_matrix(), code.field


def cmd_construct(args) -> tuple[str, int]:
    if args.family == "simplex":
        art = constructions.build_simplex(args.m)
    elif args.family == "concat":
        art = constructions.build_concat_rs_spc(args.q, args.r, args.ko)
    else:
        H0, F = _base_parity(_read_json(args.base))
        art = constructions.gv_augment(H0, args.r, F)
    if args.verify:
        constructions.verify_artifact(art)
    return _json(art.to_dict()), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    art = constructions.CodeArtifact.from_dict(_read_json(args.artifact))
    report = constructions.verify_artifact(art)
    return _json(report), EXIT_OK if report["verified"] else EXIT_VERIFY


def cmd_sample(args) -> tuple[str, int]:
    if args.ensemble == "thm2":
        if args.M is None:
            raise _Fail(EXIT_VALIDATION, "usage", "thm2 needs --M")
        art = constructions.sample_lrc_with_distance(args.q, args.r, args.n, args.M, args.d,
                                                     args.seed, args.max_iter)
        blocks = args.n // (args.r + 1)
        tail = constructions.exact_block_tail(args.q, args.r, blocks, args.d)
        cert = {"exact_tail": str(tail), "exact_tail_float": float(tail),
                "lll_condition": constructions.lll_existence_check(args.q, args.r, args.n,
                                                                   args.M, args.d)}
    else:
        if args.k is None:
            raise _Fail(EXIT_VALIDATION, "usage", "thm3 needs --k")
        art = constructions.sample_random_concat(args.q, args.r, args.n, args.k, args.seed)
        c = constructions.ensemble_distance_certificate(args.q, args.r, args.n, args.k, args.d)
        cert = {"chernoff_tail": c.chernoff_tail, "expected_bad": c.expected_bad,
                "certified": c.certified, "x_opt": c.x_opt}
        if args.trials:
            cert["monte_carlo"] = {
                "trials": args.trials, "seed0": args.seed,
                "fraction_below_d": constructions.concat_monte_carlo(
                    args.q, args.r, args.n, args.k, args.d, args.trials, args.seed)}
    report = constructions.verify_artifact(art)
    return _json({"artifact": art.to_dict(), "certificate": cert, "report": report}), EXIT_OK


def cmd_search(args) -> tuple[str, int]:
    limits = _limits(args)
    buf = io.StringIO()
    if args.target == "kopt":
        restriction = args.restriction or ("unrestricted" if args.q == 2 else "linear")
        table = search.kopt_table(args.q, range(1, args.n + 1), args.d, restriction, limits)
        search.write_kopt_csv(buf, table, restriction)
    else:
        if args.r is None:
            raise _Fail(EXIT_VALIDATION, "usage", "search lrc needs --r")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "n", "d", "r", "k"])
        for d in args.d:
            k = search.best_lrc_dimension(args.n, d, args.q, args.r, limits)
            w.writerow([args.q, args.n, d, args.r, k])
    return buf.getvalue(), EXIT_OK


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = _Parser(prog="lrcbench", description="Bounds, curves and constructions for "
                                             "locally recoverable codes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", parents=[common], help="finite-length dimension bound")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--q", type=int, default=2)
    b.add_argument("--r", type=int, required=True)
    b.add_argument("--k", type=float, help="also report whether this dimension is refuted")
    b.add_argument("--provider", choices=["singleton", "plotkin", "exact"], default="singleton")
    b.add_argument("--table", help="CSV k_opt table (q,n,d,kopt,restriction) for --provider exact")
    b.add_argument("--restriction", choices=["linear", "unrestricted"])
    b.add_argument("--terms", action="store_true", help="include every t term")
    b.add_argument("--max-seconds", type=float, default=600.0)
    b.set_defaults(func=cmd_bound)

    c = sub.add_parser("curve", parents=[common], help="rate vs relative distance CSV")
    c.add_argument("--series", nargs="+", required=True,
                   help=f"one or more of: {', '.join(asymptotic.SERIES)}")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--q", type=int, default=2)
    c.add_argument("--delta-min", type=float, default=0.0)
    c.add_argument("--delta-max", type=float, default=0.5)
    c.add_argument("--step", type=float, default=0.01)
    c.set_defaults(func=cmd_curve)

    k = sub.add_parser("construct", help="build a code artifact")
    fam = k.add_subparsers(dest="family", required=True, parser_class=_Parser)
    s = fam.add_parser("simplex", parents=[common])
    s.add_argument("--m", type=int, required=True)
    cc = fam.add_parser("concat", parents=[common])
    cc.add_argument("--q", type=int, default=2)
    cc.add_argument("--r", type=int, required=True)
    cc.add_argument("--ko", type=int, required=True)
    g = fam.add_parser("gv-augment", parents=[common])
    g.add_argument("--base", required=True, help="JSON file (or -) with the base code")
    g.add_argument("--r", type=int, required=True)
    for sp in (s, cc, g):
        sp.add_argument("--verify", action="store_true", help="verify before writing")
    k.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="measure d and r of an artifact")
    v.add_argument("artifact", help="artifact JSON file, or - for stdin")
    v.set_defaults(func=cmd_verify)

    sm = sub.add_parser("sample", parents=[common], help="sample a random ensemble member")
    sm.add_argument("ensemble", choices=["thm2", "thm3"])
    sm.add_argument("--q", type=int, default=2)
    sm.add_argument("--r", type=int, required=True)
    sm.add_argument("--n", type=int, required=True)
    sm.add_argument("--k", type=int, help="dimension (thm3)")
    sm.add_argument("--M", type=int, help="number of codewords (thm2)")
    sm.add_argument("--d", type=int, required=True)
    sm.add_argument("--seed", type=int, required=True)
    sm.add_argument("--trials", type=int, default=0, help="Monte Carlo trials (thm3)")
    sm.add_argument("--max-iter", type=int, default=constructions.REJECTION_CAP)
    sm.set_defaults(func=cmd_sample)

    se = sub.add_parser("search", parents=[common], help="exhaustive search tables")
    se.add_argument("target", choices=["kopt", "lrc"])
    se.add_argument("--n", type=int, required=True)
    se.add_argument("--d", type=int, nargs="+", required=True)
    se.add_argument("--q", type=int, default=2)
    se.add_argument("--r", type=int)
    se.add_argument("--restriction", choices=["linear", "unrestricted"])
    se.add_argument("--max-seconds", type=float, default=600.0)
    se.set_defaults(func=cmd_search)
    return p


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, status = args.func(args)
        _emit(text, args.out)
        return status
    except _Fail as exc:
        fail = exc
    except BudgetExceeded as exc:
        fail = _Fail(EXIT_BUDGET, "budget", str(exc))
    except VerificationError as exc:
        fail = _Fail(EXIT_VERIFY, "verification", str(exc))
    except (LRCError, ValueError, OSError) as exc:
        fail = _Fail(EXIT_VALIDATION, "validation", str(exc))
    sys.stderr.write(json.dumps({"error": fail.kind, "message": str(fail),
                                 "exit_code": fail.code}) + "\n")
    return fail.code


if __name__ == "__main__":
    sys.exit(main())
