"""Command-line interface.

Every result is emitted as a record ``query,args,exact,decimal`` (CSV, the
default) or as a JSON list of objects with the same fields.  ``exact`` is the
reduced ``num/den`` string for rational results and empty for real-valued
ones; ``decimal`` is always derived from the value, never stored.

Exit codes: 2 for argument errors, 3 for resource-budget violations, 1 for
internal failures.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, TextIO

import mpmath

from . import asymptotics, matrices, npoint, oracle, pair, weighted
from .config import DEFAULT_CUBE_BUDGET, DEFAULT_MAX_DEPTH, MEMO_PATH_ENV, PREFIX_CAP_ENV, BudgetExceeded
from .memo import HEADER, CacheFormatError, MemoStore, default_store
from .rational import exact_str, parse_exact

FIELDS = ("query", "args", "exact", "decimal")


class UsageError(ValueError):
    pass


def render_decimal(value, digits: int) -> str:
    if isinstance(value, (Fraction, int)):
        q = Fraction(value)
        with localcontext() as ctx:
            ctx.prec = digits + 5
            d = Decimal(q.numerator) / Decimal(q.denominator)
        return format(d, f".{digits}g")
    return mpmath.nstr(mpmath.mpf(value), digits)


def record(query: str, args: str, value, digits: int) -> dict:
    exact = exact_str(value) if isinstance(value, (Fraction, int)) else ""
    return {"query": query, "args": args, "exact": exact, "decimal": render_decimal(value, digits)}


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _exact(text: str) -> Fraction:
    try:
        return parse_exact(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _join(xs: Iterable[int]) -> str:
    return ",".join(str(x) for x in xs)


# --- subcommands --------------------------------------------------------------


def cmd_pair(ns, store, emit):
    emit("pair", f"m={ns.m}", pair.eta_pair(ns.m, store))


def cmd_npoint(ns, store, emit):
    lt = npoint.canonicalize(ns.lags)
    emit("npoint", f"lags={_join(ns.lags)}", npoint.eta_n(lt, store, max_order=ns.max_order))


def cmd_weighted(ns, store, emit):
    f = weighted.WeightPair(ns.f_minus, ns.f_plus)
    value = weighted.eta_f_general(f, ns.lags, store)
    emit("weighted", f"f_minus={exact_str(f.f_minus)};f_plus={exact_str(f.f_plus)};lags={_join(ns.lags)}", value)


def cmd_pd(ns, store, emit):
    emit("pd", f"m={ns.m}", npoint.eta_pd(ns.m, store))


def _params(items: list[str]) -> tuple[dict[str, str], list[int]]:
    params: dict[str, str] = {}
    Ns: list[int] = []
    for item in items:
        if "=" not in item:
            raise UsageError(f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        if key == "N":
            Ns.extend(int(x) for x in value.split(","))
        else:
            params[key] = value
    if not Ns:
        raise UsageError("means needs at least one N=... parameter")
    return params, Ns


def cmd_means(ns, store, emit):
    params, Ns = _params(ns.params)
    budget = ns.cube_budget

    def num(key, default):
        return _exact(params[key]) if key in params else default

    kind = ns.kind
    for N in Ns:
        if kind == "eta-power":
            k = int(params.get("k", 1))
            emit("means", f"kind=eta-power;k={k};N={N}", asymptotics.power_mean_eta(k, N, budget))
        elif kind == "mu-power":
            k, sign = int(params.get("k", 1)), params.get("sign", "+")
            if sign not in "+-" or len(sign) != 1:
                raise UsageError(f"sign must be + or -, got {sign!r}")
            emit("means", f"kind=mu-power;sign={sign};k={k};N={N}", asymptotics.power_mean_mu(sign, k, N, budget))
        elif kind == "wiener":
            emit("means", f"kind=wiener;N={N}", asymptotics.power_mean_eta(2, N, budget))
        elif kind == "abs":
            n = int(params.get("n", 2))
            alpha, beta = num("alpha", Fraction(1)), num("beta", Fraction(1))
            value = asymptotics.abs_hypercube_mean(n, N, alpha=alpha, beta=beta, budget=budget)
            emit("means", f"kind=abs;n={n};alpha={exact_str(alpha)};beta={exact_str(beta)};N={N}", value)
        elif kind == "hypercube":
            n = int(params.get("n", 4))
            emit("means", f"kind=hypercube;n={n};N={N}", asymptotics.hypercube_mean(n, N, budget))


def cmd_exponent(ns, store, emit):
    rep = asymptotics.exponent_bound(ns.j, max_depth=ns.max_depth)
    emit("exponent", f"j={ns.j};quantity=c", rep.c_j)
    emit("exponent", f"j={ns.j};quantity=alpha", mpmath.mpf(rep.alpha_j))


def cmd_matrices(ns, store, emit, out, fmt):
    n = ns.n
    if ns.sum:
        mat, label = matrices.b_sum(n), "sum"
    elif ns.elementary:
        mat, label = getattr(matrices, ns.elementary), ns.elementary
    else:
        bits = ns.bits if ns.bits is not None else [0] * (n - 1)
        if len(bits) != n - 1 or any(b not in (0, 1) for b in bits):
            raise UsageError(f"--bits needs {n - 1} entries in {{0,1}}")
        if ns.construction == "kronecker":
            mat = matrices.b_matrix_kronecker(tuple(bits), n)
        else:
            mat = matrices.b_matrix_recursion(tuple(bits), n)
        label = f"bits={_join(bits)}"
    rows = mat.to_csv_rows()
    if fmt == "json":
        json.dump([{"query": "matrices", "args": f"n={n};{label}", "rows": rows}], out)
        out.write("\n")
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerows(rows)
    return True


def cmd_regseq(ns, store, emit):
    if ns.cesaro:
        emit("regseq", f"n={ns.n};cesaro;M={ns.m}", matrices.regseq_cesaro(ns.n, ns.m))
    else:
        emit("regseq", f"n={ns.n};m={ns.m}", matrices.regseq_eval(ns.n, ns.m))


def cmd_oracle(ns, store, emit):
    cap = ns.prefix_cap
    if ns.pd is not None:
        est = oracle.pd_autocorr_estimate(ns.pd, ns.N, cap=cap)
        emit("oracle", f"pd;m={ns.pd};N={ns.N}", est.exact_average)
        return
    f = weighted.WeightPair(ns.f_minus, ns.f_plus)
    est = oracle.birkhoff_estimate(f, ns.lags, ns.N, cap=cap)
    args = f"f_minus={exact_str(f.f_minus)};f_plus={exact_str(f.f_plus)};lags={_join(ns.lags)};N={ns.N}"
    emit("oracle", args, est.exact_average)


def cmd_cache(ns, store, emit):
    if ns.action == "load":
        fresh = MemoStore()
        fresh.load(ns.path)
        for key, value in sorted(fresh.items(), key=lambda kv: (len(kv[0]), kv[0])):
            store.insert(key, value)
            emit("cache", f"n={len(key) + 1};lags={_join(key)}", value)
    elif ns.action == "save":
        store.save(ns.path)
        emit("cache", f"saved={ns.path}", len(store))
    else:
        with open(ns.path, "w", encoding="ascii") as fh:
            fh.write(HEADER + "\n")
        store.clear()
        emit("cache", f"cleared={ns.path}", 0)


# --- parser -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tmcorr", description="Exact correlations of the Thue-Morse system.", allow_abbrev=False)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--digits", type=int, default=12, help="significant digits of the decimal column")
    p.add_argument("--memo", default=os.environ.get(MEMO_PATH_ENV), help=f"cache file (env {MEMO_PATH_ENV})")
    p.add_argument(
        "--prefix-cap",
        type=int,
        default=int(os.environ[PREFIX_CAP_ENV]) if os.environ.get(PREFIX_CAP_ENV) else None,
        help=f"largest sequence prefix for oracle runs (env {PREFIX_CAP_ENV})",
    )
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.add_argument("--cube-budget", type=int, default=DEFAULT_CUBE_BUDGET)
    # output flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--digits", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help):
        return sub.add_parser(name, help=help, parents=[common], allow_abbrev=False)

    s = command("pair", "autocorrelation eta(m)")
    s.add_argument("m", type=int)
    s.set_defaults(func=cmd_pair)

    s = command("npoint", "balanced n-point correlation")
    s.add_argument("--lags", type=_int_list, required=True)
    s.set_defaults(func=cmd_npoint)

    s = command("weighted", "correlation with weights f(-1), f(+1)")
    s.add_argument("--f-minus", type=_exact, required=True)
    s.add_argument("--f-plus", type=_exact, required=True)
    s.add_argument("--lags", type=_int_list, default=[])
    s.set_defaults(func=cmd_weighted)

    s = command("pd", "period-doubling pair correlation eta(1, m, m+1)")
    s.add_argument("m", type=int)
    s.set_defaults(func=cmd_pd)

    s = command("means", "partial means; one record per N")
    s.add_argument("--kind", choices=("eta-power", "mu-power", "abs", "wiener", "hypercube"), required=True)
    s.add_argument("--params", nargs="+", required=True, metavar="KEY=VALUE")
    s.set_defaults(func=cmd_means)

    s = command("exponent", "decay-exponent bound at depth j")
    s.add_argument("--j", type=int, required=True)
    s.set_defaults(func=cmd_exponent)

    s = command("matrices", "emit a B-matrix (row-major num/den)")
    s.add_argument("--n", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--bits", type=_int_list)
    g.add_argument("--sum", action="store_true")
    g.add_argument("--elementary", choices=("E0", "E1", "J"))
    s.add_argument("--construction", choices=("kronecker", "recursion"), default="kronecker")
    s.set_defaults(func=cmd_matrices)

    s = command("regseq", "regular sequence eta_n(m) or its Cesaro mean")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--cesaro", action="store_true", help="mean of the first m terms instead")
    s.set_defaults(func=cmd_regseq)

    s = command("oracle", "brute-force prefix average")
    s.add_argument("--lags", type=_int_list, default=[])
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--f-minus", type=_exact, default=Fraction(-1))
    s.add_argument("--f-plus", type=_exact, default=Fraction(1))
    s.add_argument("--pd", type=int, help="period-doubling autocorrelation at this lag instead")
    s.set_defaults(func=cmd_oracle)

    s = command("cache", "load, save or clear a cache file")
    s.add_argument("action", choices=("load", "save", "clear"))
    s.add_argument("path")
    s.set_defaults(func=cmd_cache)
    return p


def _write(records: list[dict], out: TextIO, fmt: str) -> None:
    if fmt == "json":
        json.dump(records, out, indent=None)
        out.write("\n")
        return
    writer = csv.DictWriter(out, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(records)


def run(argv: list[str] | None = None, out: TextIO | None = None, store: MemoStore | None = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    store = default_store() if store is None else store
    records: list[dict] = []

    def emit(query: str, args: str, value) -> None:
        records.append(record(query, args, value, ns.digits))

    try:
        reads_memo = ns.command != "cache" or ns.action == "save"
        if ns.memo and reads_memo and os.path.exists(ns.memo):
            store.load(ns.memo)
        if ns.func is cmd_matrices:
            cmd_matrices(ns, store, emit, out, ns.format)
        else:
            ns.func(ns, store, emit)
            _write(records, out, ns.format)
        if ns.memo and ns.command != "cache":
            store.save(ns.memo)
    except BudgetExceeded as exc:
        print(f"tmcorr: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (UsageError, CacheFormatError, FileNotFoundError) as exc:
        parser.print_usage(sys.stderr)
        print(f"tmcorr: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, argparse.ArgumentTypeError) as exc:
        parser.print_usage(sys.stderr)
        print(f"tmcorr: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # invariant failures
        print(f"tmcorr: internal error: {exc!r}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
