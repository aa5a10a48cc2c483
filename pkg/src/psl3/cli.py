"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 oracle budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import characters, dsl, oracle, recursions
from .characters import CharSpec, Family, UnsupportedFamily
from .qseries import Series
from .rootdata import AffineHW

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _sorted_rows(rows):
    return sorted(rows, key=lambda r: (r[0] + r[1], r[0], r[2]))


def render_rows(rows, fmt: str, value_name: str) -> str:
    rows = _sorted_rows(rows)
    if fmt == "csv":
        lines = [f"r1,r2,s,{value_name}"] + [f"{a},{b},{s},{v}" for a, b, s, v in rows]
    else:
        lines = [f"{'r1':>3} {'r2':>3} {'s':>4}  {value_name}"]
        lines += [f"{a:>3} {b:>3} {s:>4}  {v}" for a, b, s, v in rows]
    return "\n".join(lines)


def render_series(series: Series, fmt: str) -> str:
    rows = [(r1, r2, s, c) for (r1, r2, s), c in series.items()]
    return render_rows(rows, fmt, "coeff")


def _parse_weight(text: str) -> AffineHW:
    try:
        parts = [int(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError
        return AffineHW(*parts)
    except ValueError:
        raise UsageError(f"--weight expects k0,k1,k2 (nonnegative, level >= 1), got {text!r}")


def cmd_character(args) -> int:
    k, i = args.k, args.i
    lo = 1 if args.family == "C" else 0
    if k < 1 or not lo <= i <= k:
        raise UsageError(f"family {args.family} needs {lo} <= i <= k, got i={i}, k={k}")
    if args.max_charge < 0 or args.max_q < 0:
        raise UsageError("--max-charge and --max-q must be nonnegative")
    spec = getattr(CharSpec, args.family)(k, i)
    series = characters.char_of(spec, args.max_charge, args.max_q)
    pre = characters.prefactor(spec.hw)
    if args.format == "json":
        doc = {"weight": list(spec.hw.as_tuple()), "family": args.family,
               "prefactor": {v: _rational(x) for v, x in pre.items()}}
        doc.update(series.to_dict())
        print(json.dumps(doc, separators=(",", ":")))
        return EXIT_OK
    meta = (f"# chi' of W({spec.hw}); chi = x1^{_rational(pre['x1'])} "
            f"x2^{_rational(pre['x2'])} q^{_rational(pre['q'])} chi'")
    if args.format == "csv":
        print(meta, file=sys.stderr)
    else:
        print(meta)
    print(render_series(series, args.format))
    return EXIT_OK


def _print_report(report: recursions.VerificationReport, fmt: str) -> None:
    if fmt == "json":
        print(report.to_json())
        return
    print(f"level {report.level}, window C={report.max_charge}, sMax={report.s_max}")
    for r in report.results:
        c, lo, hi = r.certified
        verdict = "PASS" if r.passed else f"FAIL first nonzero {r.first_failure}"
        print(f"  {str(r.ident):<14} C={c} q in [{lo}, {hi}]  {verdict}")


def cmd_verify(args) -> int:
    try:
        if args.identity:
            ident = recursions.IdentityID(args.identity, args.k, args.i)
            report = recursions.VerificationReport(args.k, args.max_charge, args.max_q)
            report.results.append(recursions.check_identity(ident, args.max_charge, args.max_q))
        else:
            report = recursions.verify_all(args.k, args.max_charge, args.max_q)
    except recursions.ParameterRangeError as exc:
        raise UsageError(str(exc))
    _print_report(report, args.format)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cache_dir(args) -> str | None:
    return os.environ.get("PSL3_CACHE_DIR") or args.cache_dir


def cmd_oracle(args) -> int:
    hw = _parse_weight(args.weight)
    dims = oracle.cached_principal_dims(
        hw, args.max_charge, args.max_weight, _cache_dir(args), budget=args.budget
    )
    if args.format == "json":
        print(dims.to_json())
    else:
        print(f"# dim W({hw})'_(r1,r2;s), C={args.max_charge}, S={args.max_weight}")
        rows = [(a, b, s, d) for (a, b, s), d in dims.entries.items()]
        print(render_rows(rows, args.format, "dim"))
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.exactness:
        if args.k is None or args.i is None:
            raise UsageError("--exactness needs --k and --i")
        if not 1 <= args.i <= args.k:
            raise UsageError(f"need 1 <= i <= k, got i={args.i}, k={args.k}")
        rep = oracle.exactness_check(args.k, args.i, args.max_charge, args.max_q, budget=args.budget)
        print(f"exactness k={rep.k} i={rep.i}: {rep.checked} blocks checked, "
              f"{len(rep.failures)} failures")
        for f in rep.failures[:10]:
            print(f"  {f}")
        return EXIT_OK if rep.passed else EXIT_FAIL
    if args.weight is None:
        raise UsageError("compare needs --weight or --exactness")
    hw = _parse_weight(args.weight)
    spec = CharSpec.classify(hw)
    if spec.family is Family.G:
        raise UsageError(f"no character formula for {hw}; use the 'oracle' command instead")
    series = characters.char_of(spec, args.max_charge, args.max_q)
    dims = oracle.cached_principal_dims(
        hw, args.max_charge, args.max_q, _cache_dir(args), budget=args.budget
    )
    diffs = [(key, dims.dim(*key), series.coefficient(*key))
             for key in dims.keys() if dims.dim(*key) != series.coefficient(*key)]
    print(f"compare W({hw}) family {spec.family.value}: C={args.max_charge}, "
          f"S={args.max_q}, {len(diffs)} mismatches")
    for r1, r2, s, d, c in _sorted_rows([(*k, d, c) for k, d, c in diffs])[:20]:
        print(f"  ({r1},{r2},{s}) oracle={d} formula={c}")
    return EXIT_OK if not diffs else EXIT_FAIL


def cmd_dsl(args) -> int:
    try:
        expr = dsl.parse_identity(args.expr)
    except dsl.DSLSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"  {args.expr}\n  {' ' * exc.offset}^", file=sys.stderr)
        return EXIT_USAGE
    value = dsl.eval_identity(expr, args.max_charge, args.max_q)
    env = value.envelope
    if value.is_zero():
        print(f"zero on window C={env.max_charge}, q in [{env.s_min}, {env.s_max}]")
        return EXIT_OK
    x1, x2 = dsl.normalising_shift(expr)
    if x1 or x2:
        print(f"# value multiplied by x1^{x1} x2^{x2}")
    print(render_series(value, args.format))
    return EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="psl3", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("character", help="print chi' of a principal subspace")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--family", choices=["A", "B", "C"], required=True)
    c.add_argument("--i", type=int, required=True)
    c.add_argument("--max-charge", type=int, default=3)
    c.add_argument("--max-q", type=int, default=6)
    c.add_argument("--format", choices=["json", "csv", "table"], default="table")
    c.set_defaults(func=cmd_character)

    v = sub.add_parser("verify", help="check the q-difference equations")
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--max-charge", type=int, default=4)
    v.add_argument("--max-q", type=int, default=8)
    v.add_argument("--identity", choices=list(recursions.TAGS))
    v.add_argument("--i", type=int)
    v.add_argument("--format", choices=["json", "table"], default="table")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="graded dimensions from the lattice construction")
    o.add_argument("--weight", required=True, help="k0,k1,k2")
    o.add_argument("--max-charge", type=int, default=2)
    o.add_argument("--max-weight", type=int, default=4)
    o.add_argument("--cache-dir")
    o.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    o.add_argument("--format", choices=["json", "csv", "table"], default="table")
    o.set_defaults(func=cmd_oracle)

    m = sub.add_parser("compare", help="oracle against formula, or exact-sequence additivity")
    m.add_argument("--weight", help="k0,k1,k2")
    m.add_argument("--exactness", action="store_true")
    m.add_argument("--k", type=int)
    m.add_argument("--i", type=int)
    m.add_argument("--max-charge", type=int, default=2)
    m.add_argument("--max-q", type=int, default=4)
    m.add_argument("--cache-dir")
    m.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    m.set_defaults(func=cmd_compare)

    d = sub.add_parser("dsl", help="evaluate an identity written in the chi(...) language")
    d.add_argument("--expr", required=True)
    d.add_argument("--max-charge", type=int, default=3)
    d.add_argument("--max-q", type=int, default=8)
    d.add_argument("--format", choices=["csv", "table"], default="table")
    d.set_defaults(func=cmd_dsl)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnsupportedFamily) as exc:
        print(f"psl3 {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except oracle.BudgetExceeded as exc:
        print(f"psl3 {args.command}: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
