"""Command-line front end.

Exit codes: 0 success/pass, 1 verification failure, 2 invalid input.
All results are JSON (sorted keys) on stdout or in the ``--out`` file.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

import mpmath

from . import amp_damping, identities, kl_verifier, oracle, pr_conditions
from .picode import CodeError, GmdParams, PICode, construct_gmdelta

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse already exits 2; keep usage on stderr
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _nonneg_int(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {s}")
    return v


def _pos_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational number: {s}") from e


def _positive_float(s: str) -> float:
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s}")
    return v


def _frac_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator), "approx": f"{float(x):.15g}"}


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_code(path: str) -> PICode:
    with open(path) as fh:
        code = PICode.from_json(json.load(fh))
    if not code.normalized:
        raise CodeError(f"code in {path} is not orthonormal")
    return code


# -- subcommands ---------------------------------------------------------------


def cmd_construct(args) -> int:
    code = construct_gmdelta(GmdParams(args.g, args.m, args.delta))
    _emit(code.to_json(), args.out)
    return EXIT_OK


def _condition_output(code: PICode, reports, key: str, value: int) -> dict:
    return {
        "code": code.label,
        "n": code.n,
        key: value,
        "passed": kl_verifier.all_passed(reports),
        "reports": [r.to_json() for r in reports],
    }


def cmd_verify(args) -> int:
    code = _load_code(args.code)
    reports = kl_verifier.verify_pauli(code, args.t)
    out = _condition_output(code, reports, "t", args.t)
    _emit(out, args.out)
    return EXIT_OK if out["passed"] else EXIT_FAIL


def cmd_deletion(args) -> int:
    code = _load_code(args.code)
    reports = kl_verifier.verify_deletion(code, args.s)
    out = _condition_output(code, reports, "s", args.s)
    _emit(out, args.out)
    return EXIT_OK if out["passed"] else EXIT_FAIL


def cmd_oracle(args) -> int:
    code = _load_code(args.code)
    if (args.t is None) == (args.s is None):
        raise ValueError("give exactly one of --t (Pauli errors) or --s (deletions)")
    if args.t is not None:
        errors = oracle.pauli_errors(code.n, args.t)
        kind, val = "pauli", args.t
    else:
        errors = oracle.deletion_bra_errors(args.s)
        kind, val = "deletion", args.s
    res = oracle.kl_gram_check(code, errors, tol=args.tol)
    out = {
        "code": code.label,
        "n": code.n,
        "errors": kind,
        "weight": val,
        "num_operators": len(errors),
        "tol": args.tol,
        "max_offdiag": f"{res['max_offdiag']:.6e}",
        "max_diag_mismatch": f"{res['max_diag_mismatch']:.6e}",
        "passed": res["passed"],
    }
    _emit(out, args.out)
    return EXIT_OK if res["passed"] else EXIT_FAIL


def cmd_pr_solve(args) -> int:
    system = pr_conditions.generate_system(args.n, args.t)
    cfg = pr_conditions.SolveConfig(restarts=args.restarts, seed=args.seed, tolerance=args.tol)
    sols = pr_conditions.solve(system, cfg)
    out = {
        "n": args.n,
        "t": args.t,
        "equations": [str(e) for e in system.equations],
        "solutions": [s.to_json() for s in sols],
        "found": bool(sols),
    }
    _emit(out, args.out)
    return EXIT_OK if sols else EXIT_FAIL


def cmd_ad_bound(args) -> int:
    params = GmdParams(args.g, args.m, args.delta)
    rep = amp_damping.bound_report(params, args.t)
    out = {
        "params": {"g": args.g, "m": args.m, "delta": args.delta, "n": params.n, "t": args.t},
        "C": _frac_json(rep.C),
        "D": _frac_json(rep.D),
        "D_class": {"a": rep.D_class.a, "c": rep.D_class.c},
        "p0": mpmath.nstr(rep.p0, 30),
        "kraus_set_size": rep.kraus_size,
    }
    code = EXIT_OK
    if args.p is not None:
        out["p"] = _frac_json(args.p)
        try:
            bound = amp_damping.infidelity_bound(params, args.t, args.p, check_range=not args.no_range_check)
            out["bound"] = _frac_json(bound)
        except amp_damping.OutOfRangeError as e:
            out["error"] = str(e)
            code = EXIT_INVALID
    _emit(out, args.out)
    return code


def cmd_identity(args) -> int:
    if args.grid != "default":
        raise ValueError(f"unknown grid {args.grid!r}")
    lemmas = sorted(identities.LEMMAS) if args.lemma == "all" else [args.lemma]
    summary = {}
    fh = open(args.out, "w") if args.out else None
    try:
        for lemma in lemmas:
            passed, total = identities.run_sweep(lemma, identities.default_grid(), fh)
            summary[lemma] = {"passed": passed, "total": total}
    finally:
        if fh:
            fh.close()
    ok = all(v["passed"] == v["total"] for v in summary.values())
    _emit({"lemmas": summary, "passed": ok}, None)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="piqec", description="Permutation-invariant quantum code toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a (g, m, delta) code")
    c.add_argument("--g", type=_pos_int, required=True)
    c.add_argument("--m", type=_pos_int, required=True)
    c.add_argument("--delta", type=_nonneg_int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="exact conditions for t Pauli errors")
    v.add_argument("--code", required=True)
    v.add_argument("--t", type=_nonneg_int, required=True)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("deletion-check", help="exact conditions for s deletions")
    d.add_argument("--code", required=True)
    d.add_argument("--s", type=_nonneg_int, required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_deletion)

    o = sub.add_parser("oracle", help="dense Knill-Laflamme check")
    o.add_argument("--code", required=True)
    o.add_argument("--t", type=_nonneg_int)
    o.add_argument("--s", type=_nonneg_int)
    o.add_argument("--tol", type=_positive_float, default=1e-10)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("pr-solve", help="solve the quadratic system for (n, t)")
    s.add_argument("--n", type=_pos_int, required=True)
    s.add_argument("--t", type=_nonneg_int, required=True)
    s.add_argument("--restarts", type=_pos_int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=_positive_float, default=1e-10)
    s.add_argument("--out")
    s.set_defaults(func=cmd_pr_solve)

    a = sub.add_parser("ad-bound", help="amplitude-damping constants and bound")
    a.add_argument("--g", type=_pos_int, required=True)
    a.add_argument("--m", type=_pos_int, required=True)
    a.add_argument("--delta", type=_nonneg_int, required=True)
    a.add_argument("--t", type=_nonneg_int, required=True)
    a.add_argument("--p", type=_rational)
    a.add_argument("--no-range-check", action="store_true",
                   help="evaluate the formula even when p >= p0")
    a.add_argument("--out")
    a.set_defaults(func=cmd_ad_bound)

    i = sub.add_parser("identity-check", help="sweep a binomial identity over a grid")
    i.add_argument("--lemma", choices=sorted(identities.LEMMAS) + ["all"], required=True)
    i.add_argument("--grid", default="default")
    i.add_argument("--out", help="JSON-lines ledger path")
    i.set_defaults(func=cmd_identity)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_INVALID
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as e:
        print(f"piqec: error: {e}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
