"""Command line front end.

Subcommands: eval, period, congruence, table, verify.  All numeric
arguments are decimal strings and may be arbitrarily large.  Exit codes:
0 success, 1 verification failures, 2 usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import powersum, verify
from .arith import MAX_MODULUS, is_prime

_SUITES = ("all", "congruence", "lemma", "power", "generator", "periods", "row-period")

BUDGET_ENV = "POWSUM_BUDGET"


def _natural(s: str) -> int:
    try:
        v = int(s, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {s!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {s}")
    return v


def _positive(s: str) -> int:
    v = _natural(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {s}")
    return v


def _modulus(s: str) -> int:
    v = _positive(s)
    if v > MAX_MODULUS:
        raise argparse.ArgumentTypeError(f"modulus must fit in 64 bits: {s}")
    return v


def _range(s: str) -> tuple[int, int]:
    """Parse 'LO..HI' or a single value into an inclusive pair."""
    lo, sep, hi = s.partition("..")
    if not sep:
        v = _natural(s)
        return v, v
    a, b = _natural(lo), _natural(hi)
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range: {s}")
    return a, b


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return verify.DEFAULT_PERIOD_BUDGET
    try:
        v = int(raw, 10)
        if v < 1:
            raise ValueError
    except ValueError:
        raise ValueError(f"invalid {BUDGET_ENV}={raw!r}")
    return v


def cmd_eval(args) -> int:
    if args.explain:
        parts = powersum.eval_parts(args.n, args.m, args.k)
        for p in parts:
            q, a = p.prime_power
            print(f"{q}^{a} period={p.period} window={p.window} residue={p.residue}")
    print(powersum.eval_sum(args.n, args.m, args.k))
    return 0


def cmd_period(args) -> int:
    br = powersum.period(args.n, args.k)
    print(f"combined {br.combined}")
    for part in br.per_prime:
        q, a = part.prime_power
        print(f"{q}^{a} period={part.period} branch: {part.branch}")
    return 0


def cmd_congruence(args) -> int:
    case = powersum.prime_power_congruence(args.n, (args.q, args.a))
    print(f"{case.tag} {case.value}")
    bound = powersum.valuation_lower_bound(args.n, args.q, args.a)
    print(f"valuation >= {bound}")
    return 0


def cmd_table(args) -> int:
    n_lo, n_hi = args.n
    m_lo, m_hi = args.m
    if n_lo < 1:
        raise ValueError("table: n range must start at 1 or above")
    width = m_hi - m_lo + 1
    if width > args.oracle_limit:
        raise ValueError(
            f"table: range of {width} values exceeds the budget {args.oracle_limit}"
        )
    rows = []
    for n in range(n_lo, n_hi + 1):
        ell = powersum.period(n, args.k).combined if args.mark_period else 0
        acc = powersum.eval_sum(n, m_lo, args.k)
        cells = []
        for m in range(m_lo, m_hi + 1):
            if m > m_lo:
                acc = (acc + pow(m, n, args.k)) % args.k
            cells.append(str(acc))
            if args.mark_period and m % ell == 0:
                cells.append("|")
        rows.append((n, cells))
    if args.format == "csv":
        print("n," + ",".join(str(m) for m in range(m_lo, m_hi + 1)))
        for n, cells in rows:
            print(f"{n}," + ",".join(c for c in cells if c != "|"))
    else:
        for _, cells in rows:
            print(" ".join(cells))
    return 0


def _suite_reports(args) -> list[tuple[str, verify.VerificationReport]]:
    suites = _SUITES[1:] if args.suite == "all" else (args.suite,)
    out = []
    for s in suites:
        if s == "congruence":
            out.append(
                ("congruence",
                 verify.check_congruence_theorems(
                     args.prime_power_max, args.n_max or 60))
            )
        elif s == "lemma":
            n_max = args.n_max or 40
            for q in args.q or (3, 5, 7):
                out.append(
                    (f"lemma.q{q}",
                     verify.check_lemma_binomial(q, args.i_max, args.j_max, n_max))
                )
        elif s == "power":
            n_max = args.n_max or 120
            for q in args.q or (3, 5, 7, 11):
                for i in range(0, args.i_max + 1):
                    step = q**i
                    if step > n_max:
                        continue
                    cells = [
                        ("", verify.check_power_congruence(q, i, j, n, args.t_max))
                        for j in range(1, args.j_max + 1)
                        for n in range(step, n_max + 1, step)
                    ]
                    rep = verify.merge_reports(cells)
                    rep.grid = {
                        "q": str(q), "i": str(i), "j_max": str(args.j_max),
                        "n_max": str(n_max), "t_max": str(args.t_max),
                    }
                    out.append((f"power.q{q}.i{i}", rep))
        elif s == "generator":
            for q in (p for p in range(3, args.q_max + 1, 2) if is_prime(p)):
                out.append((f"generator.perm.q{q}",
                            verify.check_generator_permutation(q)))
            n_max = args.n_max or 60
            for q in args.q or (3, 5, 7, 11, 13):
                out.append(
                    (f"generator.block.q{q}",
                     verify.check_generator_block(q, args.j_max, n_max))
                )
        elif s == "periods":
            out.append(
                ("periods",
                 verify.check_period_formulas(
                     args.k_max or 120, args.n_max or 30, args.budget))
            )
        elif s == "row-period":
            for k in range(1, (args.k_max or 60) + 1):
                out.append(
                    (f"row_period.k{k}",
                     verify.check_row_period(k, budget=args.budget))
                )
    return out


def cmd_verify(args) -> int:
    report = verify.merge_reports(_suite_reports(args))
    # the per-check grids are huge once merged; report the effective options
    grid = {"suite": args.suite, "budget": str(args.budget)}
    for name in ("prime_power_max", "n_max", "k_max", "q_max", "i_max",
                 "j_max", "t_max"):
        v = getattr(args, name)
        if v is not None:
            grid[name] = str(v)
    if args.q:
        grid["q"] = ",".join(str(q) for q in args.q)
    report.grid = grid
    payload = verify.emit_report(report, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload.decode())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="powsum",
        description="Power sums 1^n + ... + m^n mod k, with fast evaluation "
        "for very large n and m, exact periods, and an empirical "
        "verification suite.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate S_n(m) mod k")
    p.add_argument("-n", type=_positive, required=True, help="exponent, n >= 1")
    p.add_argument("-m", type=_natural, required=True, help="summation bound")
    p.add_argument("-k", type=_modulus, required=True, help="modulus")
    p.add_argument("--explain", action="store_true",
                   help="show the per-prime-power breakdown")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("period", help="exact period of m -> S_n(m) mod k")
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("-k", type=_modulus, required=True)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("congruence",
                       help="closed-form residue of S_n(q^a) mod q^a")
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("-q", type=_positive, required=True, help="prime base")
    p.add_argument("-a", type=_positive, required=True, help="exponent of q")
    p.set_defaults(func=cmd_congruence)

    p = sub.add_parser("table", help="print S_n(m) mod k over ranges")
    p.add_argument("-n", type=_range, required=True, metavar="LO..HI")
    p.add_argument("-m", type=_range, required=True, metavar="LO..HI")
    p.add_argument("-k", type=_modulus, required=True)
    p.add_argument("--mark-period", action="store_true",
                   help="insert | after each full period")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--oracle-limit", type=_positive,
                   default=powersum.DEFAULT_ORACLE_LIMIT,
                   help="maximum number of table cells per row")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the certification suites")
    p.add_argument("--suite", choices=_SUITES, default="all")
    p.add_argument("--prime-power-max", type=_positive, default=2048)
    p.add_argument("--n-max", type=_positive, default=None,
                   help="exponent sweep bound (per-suite default if omitted)")
    p.add_argument("--k-max", type=_positive, default=None,
                   help="modulus sweep bound for the period suites")
    p.add_argument("--q", type=_positive, action="append", default=None,
                   help="odd prime, repeatable (lemma/power/generator)")
    p.add_argument("--q-max", type=_positive, default=100,
                   help="permutation checks run over odd primes up to this")
    p.add_argument("--i-max", type=_positive, default=2)
    p.add_argument("--j-max", type=_positive, default=3)
    p.add_argument("--t-max", type=_positive, default=30)
    p.add_argument("--budget", type=_positive, default=None,
                   help=f"brute-force period budget (or ${BUDGET_ENV})")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", default=None, help="write the report to a file")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "budget", "") is None:
            args.budget = _default_budget()
        return args.func(args)
    except ValueError as exc:
        print(f"powsum: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
