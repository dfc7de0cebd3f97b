"""Executable verification of the negativity lemmas and survivor criteria.

Each check sweeps a range exhaustively and reports the cases examined and
any violations (none are expected).  Where values are small enough, X is
additionally recomputed by explicit divisor enumeration, keeping the
factorization path honest against an independent oracle.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .arithmetic import (
    Classification,
    Factorization,
    PrimeOracle,
    classify,
    c_sum,
    x_map,
)
from .orbits import DEFAULT_BUDGET, StatusCache, SurvivalStatus, iterate_orbit
from .search import SearchConfig, forward_search

# below this, every lemma check recomputes X by divisor enumeration too
ENUM_CROSS_LIMIT = 10**4

_CHUNK = 1 << 18


@dataclass
class LemmaReport:
    lemma_id: str
    scope: str
    cases: int
    violations: list[str]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.violations


def x_by_enumeration(n: int) -> int:
    """X(n) from scratch: enumerate every divisor, classify by trial division."""
    if n < 1:
        raise ValueError("n must be positive")
    pi = 0
    c = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            for divisor in {d, n // d}:
                if _is_prime_trial(divisor):
                    pi += divisor
                else:
                    c += divisor
    return pi - c + n


def _is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _cross_check(n: int, x_value: int, violations: list[str]) -> None:
    if n <= ENUM_CROSS_LIMIT:
        enum = x_by_enumeration(n)
        if enum != x_value:
            violations.append(f"X({n}) = {x_value} but enumeration gives {enum}")


def verify_lemma1(oracle: PrimeOracle, max_n: int) -> LemmaReport:
    """Squarefree n with >= 3 prime factors: X(n) < 0, and the non-prime
    divisor sum is at least 1 + n + the cyclic sum of adjacent prime products."""
    if max_n < 30:
        raise ValueError("max_n must be >= 30")
    start = time.perf_counter()
    cases = 0
    violations: list[str] = []
    for n in range(30, max_n + 1):
        f = oracle.factorize(n)
        if len(f.factors) < 3 or any(e != 1 for _, e in f.factors):
            continue
        cases += 1
        x = x_map(f)
        if x >= 0:
            violations.append(f"X({n}) = {x} >= 0")
        primes = f.distinct_primes()
        adjacent = sum(
            primes[i] * primes[(i + 1) % len(primes)] for i in range(len(primes))
        )
        bound = 1 + n + adjacent
        c = c_sum(f)
        if c < bound:
            violations.append(f"C({n}) = {c} < {bound}")
        _cross_check(n, x, violations)
    return LemmaReport(
        "lemma1", f"squarefree, >=3 primes, n <= {max_n}", cases, violations,
        time.perf_counter() - start,
    )


def verify_lemma2(oracle: PrimeOracle, max_n: int) -> LemmaReport:
    """n = p^a * q with a >= 2 and p != q prime: X(n) < 0."""
    if max_n < 12:
        raise ValueError("max_n must be >= 12")
    start = time.perf_counter()
    cases = 0
    violations: list[str] = []
    for n in range(12, max_n + 1):
        f = oracle.factorize(n)
        if len(f.factors) != 2:
            continue
        exponents = sorted(e for _, e in f.factors)
        if exponents[0] != 1 or exponents[1] < 2:
            continue
        cases += 1
        x = x_map(f)
        if x >= 0:
            violations.append(f"X({n}) = {x} >= 0")
        _cross_check(n, x, violations)
    return LemmaReport(
        "lemma2", f"p^a*q shapes, n <= {max_n}", cases, violations,
        time.perf_counter() - start,
    )


def verify_lemma3(oracle: PrimeOracle, max_n: int) -> LemmaReport:
    """Whenever X(n) <= 0 and p divides n: X(p*n) < 0, evaluated directly."""
    if max_n < 4:
        raise ValueError("max_n must be >= 4")
    start = time.perf_counter()
    cases = 0
    violations: list[str] = []
    kernel = oracle.kernel
    for lo in range(2, max_n + 1, _CHUNK):
        hi = min(lo + _CHUNK, max_n + 1)
        x_vals, _ = kernel.x_block(lo, hi)
        for off in np.flatnonzero(x_vals <= 0).tolist():
            n = lo + off
            f = oracle.factorize(n)
            for p, _ in f.factors:
                cases += 1
                bumped = Factorization(
                    p * n,
                    tuple(
                        (q, e + 1) if q == p else (q, e) for q, e in f.factors
                    ),
                )
                x = x_map(bumped)
                if x >= 0:
                    violations.append(f"X({p}*{n}) = {x} >= 0")
                _cross_check(p * n, x, violations)
    return LemmaReport(
        "lemma3", f"X(n) <= 0, p | n, n <= {max_n}", cases, violations,
        time.perf_counter() - start,
    )


def verify_lemma4(
    oracle: PrimeOracle,
    max_n: int,
    cache: StatusCache | None = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> LemmaReport:
    """The only even survivor is 2; and X(2p) = p + 1 (even, smaller) for
    every odd prime p."""
    if max_n < 2:
        raise ValueError("max_n must be >= 2")
    start = time.perf_counter()
    violations: list[str] = []
    cache = cache if cache is not None else StatusCache()
    result = forward_search(SearchConfig(max_n, False, budget, workers), oracle, cache)
    evens = [n for n in result.survivors if n % 2 == 0]
    cases = len(result.survivors)
    if evens != [2]:
        violations.append(f"even survivors {evens} != [2]")
    for p in oracle.primes_list:
        if p == 2:
            continue
        if 2 * p > max_n:
            break
        cases += 1
        x = oracle.x(2 * p)
        if x != p + 1:
            violations.append(f"X(2*{p}) = {x} != {p + 1}")
    return LemmaReport(
        "lemma4", f"even survivors and X(2p), n <= {max_n}", cases, violations,
        time.perf_counter() - start,
    )


def verify_criteria(
    oracle: PrimeOracle,
    max_n: int,
    cache: StatusCache | None = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> LemmaReport:
    """Every survivor is prime, an odd distinct biprime, or 9 - and the
    converse fails: 7, 15, 33 satisfy a criterion yet die."""
    if max_n < 9:
        raise ValueError("max_n must be >= 9")
    start = time.perf_counter()
    violations: list[str] = []
    cache = cache if cache is not None else StatusCache()
    result = forward_search(SearchConfig(max_n, False, budget, workers), oracle, cache)
    cases = 0
    for n in result.survivors:
        cases += 1
        kind = classify(oracle.factorize(n))
        if n != 9 and kind not in (
            Classification.PRIME,
            Classification.ODD_DISTINCT_BIPRIME,
        ):
            violations.append(f"survivor {n} classified {kind.value}")
    for n in (7, 15, 33):
        cases += 1
        orbit = iterate_orbit(oracle, n, budget, cache)
        if orbit.outcome is not SurvivalStatus.DIES:
            violations.append(f"{n} expected to die, got {orbit.outcome.name}")
    return LemmaReport(
        "criteria", f"survivor shapes, n <= {max_n}", cases, violations,
        time.perf_counter() - start,
    )


def verify_negativity(oracle: PrimeOracle, max_n: int) -> LemmaReport:
    """Three or more prime factors (with multiplicity) force X(n) < 0."""
    if max_n < 8:
        raise ValueError("max_n must be >= 8")
    start = time.perf_counter()
    cases = 0
    violations: list[str] = []
    kernel = oracle.kernel
    for lo in range(2, max_n + 1, _CHUNK):
        hi = min(lo + _CHUNK, max_n + 1)
        x_vals, omegas = kernel.x_block(lo, hi)
        heavy = omegas >= 3
        cases += int(np.count_nonzero(heavy))
        for off in np.flatnonzero(heavy & (x_vals >= 0)).tolist():
            violations.append(f"X({lo + off}) = {int(x_vals[off])} >= 0")
    return LemmaReport(
        "negativity", f"big-omega >= 3, n <= {max_n}", cases, violations,
        time.perf_counter() - start,
    )


def run_all(
    oracle: PrimeOracle,
    max_n: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> list[LemmaReport]:
    """Every lemma check at a shared range cap (clamped to each lemma's floor)."""
    cache = StatusCache()
    return [
        verify_lemma1(oracle, max(max_n, 30)),
        verify_lemma2(oracle, max(max_n, 12)),
        verify_lemma3(oracle, max(max_n, 4)),
        verify_lemma4(oracle, max(max_n, 2), cache, budget, workers),
        verify_criteria(oracle, max(max_n, 9), cache, budget, workers),
        verify_negativity(oracle, max(max_n, 8)),
    ]
