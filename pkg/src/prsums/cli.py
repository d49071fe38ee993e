"""Command-line surface.

Commands: proots, sum, avg, verify, scan, lemma1, completion, fit, emit.
Exit codes: 0 success, 1 assertion failure, 2 usage error, 3 I/O error.

Determinism contract: identical (command, seed, threads) gives byte-identical
output; the thread count only changes scheduling, never a single value,
because all reductions happen in fixed order.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import scan, verify
from .averaged import AvgSpec, eval_avg_direct, eval_avg_u_param
from .completion import IntervalSpec, complete_sum_tables, final_bound_check, incomplete_completed
from .expsum import SumSpec, eval_sum, root_table
from .numtheory import enumerate_primitive_roots, prime_context
from .reports import emit, fit_exponent, read_records


class VerificationFailure(Exception):
    pass


def _parse_pairs(tokens: list[str]) -> tuple[tuple[int, int], ...]:
    """'b:g' tokens into (coefficient, primitive root) pairs."""
    out = []
    for tok in tokens:
        try:
            b_s, g_s = tok.split(":")
            out.append((int(b_s), int(g_s)))
        except ValueError:
            raise ValueError(f"bad term {tok!r}, expected 'b:g'") from None
    return tuple(out)


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12f} {z.imag:.12f}"


def _out_stream(args):
    if getattr(args, "output", None):
        try:
            return open(args.output, "w", encoding="utf-8", newline="")
        except OSError as e:
            raise OSError(f"cannot open {args.output}: {e}") from e
    return None


def _emit_or_print(records, args):
    stream = _out_stream(args)
    if stream is None:
        emit(records, args.format, sys.stdout)
    else:
        with stream:
            emit(records, args.format, stream)


def cmd_proots(args) -> int:
    ctx = prime_context(args.p)
    roots = enumerate_primitive_roots(ctx)
    print(f"phi={ctx.phi_pm1}: " + " ".join(str(g) for g in roots))
    return 0


def cmd_sum(args) -> int:
    spec = SumSpec(args.p, args.N, args.a, _parse_pairs(args.pairs))
    val = eval_sum(spec, root_table(args.p))
    print(f"{_fmt_complex(val)} |S|={round(abs(val), 12)}")
    return 0


def cmd_avg(args) -> int:
    spec = AvgSpec(args.p, args.N, args.a, args.b, _parse_pairs(args.pairs))
    ctx = prime_context(args.p)
    table = root_table(args.p)
    if args.direct:
        res = eval_avg_direct(spec, ctx, table)
    else:
        res = eval_avg_u_param(spec, ctx, table, threads=args.threads)
    line = (
        f"{_fmt_complex(res.value)} |S|={round(abs(res.value), 12)} "
        f"sigma_N={res.sigma_N:.12g} phi={res.phi_pm1}"
    )
    if spec.only_averaged_term:
        line += " [only-averaged-term]"
    print(line)
    return 0


def cmd_verify(args) -> int:
    tol = args.tolerance
    if args.suite == "mordell":
        results = [verify.mordell_suite(pmax=args.pmax or 61, threads=args.threads)]
    elif args.suite == "chain":
        ps = verify.primes_in_range(args.pmin or 5, args.pmax or 13)
        results = [verify.chain_suite(primes=ps, rel_tol=tol or 1e-8)]
    elif args.suite == "lemma1":
        ps = verify.primes_in_range(args.pmin or 5, args.pmax or 13)
        results = [verify.lemma_suite(primes=ps, rel_tol=tol or 1e-6, threads=args.threads)]
    elif args.suite == "completion":
        results = [
            verify.completion_suite(
                primes=(args.p or 101,),
                trials=args.trials,
                seed=args.seed,
                tol=tol or 1e-8,
                threads=args.threads,
                indicator_pmax=min(args.p or 101, 101),
            )
        ]
    else:  # argparse choices make this unreachable
        raise ValueError(f"unknown suite {args.suite!r}")
    ok = True
    for r in results:
        for line in r.lines():
            print(line)
        print(f"# {r.name}: {r.elapsed:.2f}s", file=sys.stderr)
        ok = ok and r.ok
    if not ok:
        raise VerificationFailure(f"suite {args.suite} failed")
    return 0


def cmd_scan(args) -> int:
    records = scan.scan_range(args.pmin, args.pmax, args.samples, args.seed, args.threads)
    _emit_or_print(records, args)
    return 0


def cmd_lemma1(args) -> int:
    records = scan.td_ratio_records(args.pmin or 5, args.pmax or 13, args.seed, args.threads)
    _emit_or_print(records, args)
    return 0


def cmd_completion(args) -> int:
    spec = AvgSpec(args.p, args.p - 1, args.a, args.b, _parse_pairs(args.pairs))
    interval = IntervalSpec(args.lo, args.hi) if args.hi >= args.lo else IntervalSpec.empty()
    ctx = prime_context(args.p)
    table = root_table(args.p)
    tables = complete_sum_tables(spec, ctx, table, args.threads)
    rep = incomplete_completed(spec, interval, ctx, table, args.threads, tables)
    lhs, rhs = final_bound_check(spec, interval, ctx, table, args.threads, tables)
    print(f"direct            = {_fmt_complex(rep.direct)}")
    print(f"completed         = {_fmt_complex(rep.completed)}")
    print(f"|direct-completed| = {abs(rep.direct - rep.completed):.3e}")
    print(f"per_k_bound_sum   = {rep.per_k_bound_sum:.12g}")
    print(f"main_term_bound   = {rep.main_term_bound:.12g}")
    print(f"closing_bound     lhs={lhs:.12g} rhs={rhs:.12g}")
    return 0


def cmd_fit(args) -> int:
    records = read_records(args.input, args.format)
    fit = fit_exponent([(r.p, r.max_abs) for r in records])
    print(
        f"slope={fit.slope:.12g} intercept={fit.intercept:.12g} "
        f"residual={fit.residual:.12g} n={fit.n_points}"
    )
    return 0


def cmd_emit(args) -> int:
    records = read_records(args.input)
    _emit_or_print(records, args)
    return 0


def _add_common(sp, threads=True, seed=True):
    if threads:
        sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    if seed:
        sp.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="prsums",
        description="Exponential sums with primitive-root phases: evaluation, "
        "averaging, and verification of the explicit bounds.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("proots", help="list the primitive roots mod p")
    sp.add_argument("p", type=int)
    sp.set_defaults(fn=cmd_proots)

    sp = sub.add_parser("sum", help="evaluate one sum S_N(a, b1:g1, ...)")
    sp.add_argument("p", type=int)
    sp.add_argument("N", type=int)
    sp.add_argument("a", type=int)
    sp.add_argument("pairs", nargs="*", help="terms as b:g")
    sp.set_defaults(fn=cmd_sum)

    sp = sub.add_parser("avg", help="averaged sum over all primitive roots in the b-slot")
    sp.add_argument("p", type=int)
    sp.add_argument("N", type=int)
    sp.add_argument("a", type=int)
    sp.add_argument("b", type=int)
    sp.add_argument("pairs", nargs="*", help="fixed terms as b:g")
    sp.add_argument("--direct", action="store_true", help="enumerate roots instead of exponents")
    _add_common(sp, seed=False)
    sp.set_defaults(fn=cmd_avg)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=("mordell", "chain", "lemma1", "completion"))
    sp.add_argument("--pmax", type=int, default=None)
    sp.add_argument("--pmin", type=int, default=None)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--tolerance", type=float, default=None)
    _add_common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("scan", help="max |averaged sum| over seeded draws, per prime")
    sp.add_argument("pmin", type=int)
    sp.add_argument("pmax", type=int)
    sp.add_argument("samples", type=int)
    sp.add_argument("--output", default=None)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(sp)
    sp.set_defaults(fn=cmd_scan)

    sp = sub.add_parser("lemma1", help="emit the congruence-count ratio table")
    sp.add_argument("--pmin", type=int, default=None)
    sp.add_argument("--pmax", type=int, default=None)
    sp.add_argument("--output", default=None)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(sp)
    sp.set_defaults(fn=cmd_lemma1)

    sp = sub.add_parser("completion", help="completion report for one (spec, interval)")
    sp.add_argument("p", type=int)
    sp.add_argument("lo", type=int)
    sp.add_argument("hi", type=int)
    sp.add_argument("a", type=int)
    sp.add_argument("b", type=int)
    sp.add_argument("pairs", nargs="*", help="fixed terms as b:g")
    _add_common(sp, seed=False)
    sp.set_defaults(fn=cmd_completion)

    sp = sub.add_parser("fit", help="fit ln(max_abs) against ln(p) from emitted records")
    sp.add_argument("input")
    sp.add_argument("--format", choices=("csv", "json"), default=None)
    sp.set_defaults(fn=cmd_fit)

    sp = sub.add_parser("emit", help="re-emit records in csv or json")
    sp.add_argument("input")
    sp.add_argument("--output", default=None)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(fn=cmd_emit)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except VerificationFailure as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
