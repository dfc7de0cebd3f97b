"""Command-line surface tying the library together.

Exit codes: 0 success, 1 usage error, 2 overflow or budget exhaustion,
3 novel cycle detected, 4 verification violation.  Errors print a single
machine-parseable "error: <kind>: <detail>" line on stderr.  The cache
path comes from --cache or, when absent, the XMAP_CACHE environment
variable; all other configuration is flag-only.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from math import isqrt

from . import __version__
from ._backend import backend_name
from .arithmetic import PrimeOracle, c_sum, pi_sum, x_map
from .chains import chain_report_csv, cunningham_chain
from .lemmas import run_all
from .orbits import (
    DEFAULT_BUDGET,
    NovelCycleDetected,
    StatusCache,
    SurvivalStatus,
    iterate_orbit,
    load_cache,
    record_orbit,
    save_cache,
)
from .preimage import EdgeKind, export_tree, preimage_survivor_search, survivor_preimages
from .scaling import DEFAULT_ALPHAS, DEFAULT_FIT_KMIN, build_series, emit_csv, fit_exponent
from .search import SearchConfig, forward_search, survivor_count

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_LIMIT = 2
EXIT_NOVEL_CYCLE = 3
EXIT_VIOLATION = 4

MIN_SIEVE = 100_000
# cap for sieves derived from a single input value; factorization capacity
# is the square of this, anything bigger overflows honestly
DERIVED_SIEVE_CAP = 10_000_000

CACHE_ENV = "XMAP_CACHE"


def _derived_oracle(target: int) -> PrimeOracle:
    return PrimeOracle(max(MIN_SIEVE, min(target, DERIVED_SIEVE_CAP)))


def _err(kind: str, detail: str) -> None:
    print(f"error: {kind}: {detail}", file=sys.stderr)


def _write(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cache_path(args) -> str | None:
    return getattr(args, "cache", None) or os.environ.get(CACHE_ENV)


def _load_cache(path: str | None) -> StatusCache:
    if path and os.path.exists(path):
        return load_cache(path)
    return StatusCache()


def _save_cache(path: str | None, cache: StatusCache) -> None:
    if path:
        save_cache(path, cache)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"error: usage: {message}\n")


def cmd_x(args) -> int:
    oracle = _derived_oracle(isqrt(max(args.n, 0)) + 1)
    f = oracle.factorize(args.n)
    print(f"Pi={pi_sum(f)} C={c_sum(f)} X={x_map(f)}")
    return EXIT_OK


def cmd_orbit(args) -> int:
    oracle = _derived_oracle(isqrt(max(args.n, 0)) + 1)
    path = _cache_path(args)
    cache = _load_cache(path)
    orbit = iterate_orbit(oracle, args.n, args.budget, cache)
    record_orbit(cache, orbit)
    print(" ".join(str(v) for v in orbit.trajectory) + f" {orbit.outcome.name}")
    _save_cache(path, cache)
    if orbit.outcome in (SurvivalStatus.BUDGET_EXCEEDED, SurvivalStatus.OVERFLOW):
        _err(
            "budget-exceeded" if orbit.outcome is SurvivalStatus.BUDGET_EXCEEDED else "overflow",
            f"orbit of {args.n} unresolved after {args.budget} steps"
            if orbit.outcome is SurvivalStatus.BUDGET_EXCEEDED
            else f"orbit of {args.n} left 64-bit range",
        )
        return EXIT_LIMIT
    return EXIT_OK


def cmd_search(args) -> int:
    oracle = PrimeOracle(max(MIN_SIEVE, args.max))
    path = _cache_path(args)
    cache = _load_cache(path)
    filtered = not args.no_filter
    exceeded: list[int] = []
    if args.method in ("forward", "both"):
        fwd = forward_search(
            SearchConfig(args.max, filtered, args.budget, args.workers), oracle, cache
        )
        survivors = fwd.survivors
        exceeded += fwd.budget_exceeded
    if args.method in ("preimage", "both"):
        # independent cache so the two methods stay uncoupled under "both"
        pre_cache = cache if args.method == "preimage" else StatusCache()
        pre = preimage_survivor_search(
            oracle, args.max, pre_cache, args.budget, args.workers
        )
        exceeded += pre.budget_exceeded
        if args.method == "both" and pre.survivors.entries != survivors.entries:
            only_fwd = sorted(set(survivors.entries) - set(pre.survivors.entries))
            only_pre = sorted(set(pre.survivors.entries) - set(survivors.entries))
            _err(
                "verification",
                f"method mismatch at max={args.max}: forward-only={only_fwd} preimage-only={only_pre}",
            )
            return EXIT_VIOLATION
        if args.method == "preimage":
            survivors = pre.survivors
    _write(args, survivors.to_lines())
    _save_cache(path, cache)
    if exceeded:
        _err("budget-exceeded", " ".join(str(n) for n in sorted(set(exceeded))))
        return EXIT_LIMIT
    return EXIT_OK


def cmd_count(args) -> int:
    oracle = PrimeOracle(max(MIN_SIEVE, args.max))
    report = survivor_count(args.max, oracle, budget=args.budget, workers=args.workers)
    print(f"survivors={report.survivors} primes={report.primes} max={report.cutoff}")
    return EXIT_OK


def cmd_preimage(args) -> int:
    oracle = _derived_oracle((args.n + 1) // 2)
    lines = []
    for node in survivor_preimages(oracle, args.n):
        if node.kind is EdgeKind.BIPRIME_PAIR:
            k, j = node.pair
            lines.append(f"{node.value} biprime_pair {k} {j}")
        else:
            lines.append(f"{node.value} prime_half")
    _write(args, "".join(f"{line}\n" for line in lines))
    return EXIT_OK


def cmd_tree(args) -> int:
    oracle = PrimeOracle(max(MIN_SIEVE, args.max))
    path = _cache_path(args)
    cache = _load_cache(path)
    result = preimage_survivor_search(oracle, args.max, cache, args.budget, args.workers)
    _write(args, export_tree(result.nodes, args.format))
    _save_cache(path, cache)
    if result.budget_exceeded:
        _err("budget-exceeded", " ".join(str(n) for n in result.budget_exceeded))
        return EXIT_LIMIT
    return EXIT_OK


def cmd_chain(args) -> int:
    oracle = _derived_oracle(isqrt(max(args.p, 0)) + 1)
    chain = cunningham_chain(oracle, args.p)
    print(f"{chain.p1},{chain.length},{' '.join(str(m) for m in chain.members)}")
    return EXIT_OK


def cmd_chain_scan(args) -> int:
    oracle = PrimeOracle(max(MIN_SIEVE, args.max))
    _write(args, chain_report_csv(oracle, args.max))
    return EXIT_OK


def cmd_scaling(args) -> int:
    oracle = PrimeOracle(max(MIN_SIEVE, args.max))
    result = forward_search(
        SearchConfig(args.max, True, args.budget, args.workers), oracle
    )
    series = build_series(result.survivors, tuple(args.alphas))
    _write(args, emit_csv(series))
    try:
        series.fit = fit_exponent(result.survivors, args.kmin)
    except ValueError as exc:
        print(f"fit: skipped ({exc})", file=sys.stderr)
        return EXIT_OK
    fit = series.fit
    fit_line = f"slope={fit.slope!r} k_min={fit.k_min} k_max={fit.k_max}\n"
    if args.fit_output:
        with open(args.fit_output, "w") as fh:
            fh.write(fit_line)
    else:
        sys.stderr.write(f"fit: {fit_line}")
    return EXIT_OK


def cmd_verify_lemmas(args) -> int:
    oracle = PrimeOracle(max(MIN_SIEVE, args.max))
    reports = run_all(oracle, args.max, args.budget, args.workers)
    if args.format == "json":
        _write(args, json.dumps([dataclasses.asdict(r) for r in reports], indent=2) + "\n")
    else:
        lines = []
        for r in reports:
            state = "ok" if r.ok else "VIOLATED"
            lines.append(
                f"{r.lemma_id}: {state} cases={r.cases} violations={len(r.violations)} "
                f"time={r.seconds:.2f}s ({r.scope})"
            )
            lines.extend(f"  {v}" for v in r.violations)
        _write(args, "".join(f"{line}\n" for line in lines))
    if any(not r.ok for r in reports):
        _err("verification", "lemma violations found")
        return EXIT_VIOLATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xmap", description=__doc__)
    parser.add_argument(
        "--version", action="version", version=f"xmap {__version__} ({backend_name()} kernel)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help=f"orbit step budget (default {DEFAULT_BUDGET})")
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                       help="worker threads (default: available parallelism)")
        return p

    p = add("x", cmd_x, "print Pi, C, and X of n")
    p.add_argument("n", type=int)

    p = add("orbit", cmd_orbit, "print the orbit of n and its outcome")
    p.add_argument("n", type=int)
    p.add_argument("--cache", help=f"status cache file (default ${CACHE_ENV})")

    p = add("search", cmd_search, "list survivors up to a cutoff")
    p.add_argument("--max", type=int, required=True, help="search cutoff N")
    p.add_argument("--method", choices=("forward", "preimage", "both"),
                   default="forward",
                   help="search algorithm; 'both' diffs the two (default forward)")
    p.add_argument("--no-filter", action="store_true",
                   help="forward-search every n instead of survivor candidates only")
    p.add_argument("--cache", help=f"status cache file (default ${CACHE_ENV})")
    p.add_argument("--output", "-o", help="write the list here instead of stdout")

    p = add("count", cmd_count, "survivor count and prime count up to a cutoff")
    p.add_argument("--max", type=int, required=True)

    p = add("preimage", cmd_preimage, "survivor preimages of n")
    p.add_argument("n", type=int)
    p.add_argument("--output", "-o")

    p = add("tree", cmd_tree, "preimage tree of all survivors up to a cutoff")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--format", choices=("dot", "json"), default="dot",
                   help="export format (default dot)")
    p.add_argument("--cache", help=f"status cache file (default ${CACHE_ENV})")
    p.add_argument("--output", "-o")

    p = add("chain", cmd_chain, "maximal prime chain from p")
    p.add_argument("p", type=int)

    p = add("chain-scan", cmd_chain_scan, "CSV of chains for every prime up to a bound")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--output", "-o")

    p = add("scaling", cmd_scaling, "survivor-growth ratio CSV and exponent fit")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--alphas", type=float, nargs="+", default=list(DEFAULT_ALPHAS),
                   help=f"ratio exponents (default {' '.join(map(str, DEFAULT_ALPHAS))})")
    p.add_argument("--kmin", type=int, default=DEFAULT_FIT_KMIN,
                   help=f"first index of the fit window (default {DEFAULT_FIT_KMIN})")
    p.add_argument("--output", "-o")
    p.add_argument("--fit-output", help="write the fitted exponent and window here")

    p = add("verify-lemmas", cmd_verify_lemmas, "run every lemma and criteria check")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="report format (default text)")
    p.add_argument("--output", "-o")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except NovelCycleDetected as exc:
        _err("novel-cycle", " ".join(str(v) for v in exc.cycle))
        return EXIT_NOVEL_CYCLE
    except OverflowError as exc:
        _err("overflow", str(exc))
        return EXIT_LIMIT
    except BrokenPipeError:
        # downstream consumer (head, less, ...) closed the pipe: not an error
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK
    except (ValueError, OSError) as exc:
        _err("usage", str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
