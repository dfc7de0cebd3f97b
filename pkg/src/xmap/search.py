"""Brute-force forward survivor search over [2, N].

The unfiltered mode tests every integer in range and is the independent
check the preimage algorithm is validated against; the filtered mode tests
only values that can survive at all (primes, odd distinct biprimes, 9) and
must return the identical list.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ._backend import MODE_ALL, MODE_FILTERED
from .arithmetic import PrimeOracle
from .orbits import DEFAULT_BUDGET, NovelCycleDetected, StatusCache

BLOCK_SPAN = 1 << 15


@dataclass
class SurvivorList:
    """Ascending survivors up to a cutoff; 1-based index k maps to n(k)."""

    cutoff: int
    entries: list[int]

    def __post_init__(self):
        prev = 0
        for n in self.entries:
            if n <= prev:
                raise ValueError("survivor entries must be strictly increasing")
            prev = n
        if self.entries and self.entries[-1] > self.cutoff:
            raise ValueError("survivor entries must not exceed the cutoff")

    def value_at(self, k: int) -> int:
        """n(k) for 1-based k."""
        if not 1 <= k <= len(self.entries):
            raise IndexError(f"survivor index {k} out of range")
        return self.entries[k - 1]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_lines(self) -> str:
        """The "<k> <n(k)>" file format, one pair per line."""
        return "".join(f"{k} {n}\n" for k, n in enumerate(self.entries, start=1))


@dataclass
class SearchConfig:
    cutoff: int
    filtered: bool = True
    budget: int = DEFAULT_BUDGET
    workers: int = 1


@dataclass
class SearchResult:
    survivors: SurvivorList
    budget_exceeded: list[int] = field(default_factory=list)


@dataclass
class CountReport:
    cutoff: int
    survivors: int
    primes: int


def resolve_statuses(
    oracle: PrimeOracle,
    cache: StatusCache,
    lo: int,
    hi: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    mode: int = MODE_ALL,
) -> list[int]:
    """Kernel-resolve survival for all starts in [lo, hi) into the cache.

    Ascending blocks so small values resolve first and seed the memo for
    the descending composite orbits.  Status writes are idempotent, so the
    final cache contents are independent of worker scheduling.  Returns the
    sorted list of starts whose resolution exceeded the budget.
    """
    cache.ensure_dense(oracle.sieve_limit)
    status = cache.dense()
    kernel = oracle.kernel
    spans = [(a, min(a + BLOCK_SPAN, hi)) for a in range(lo, hi, BLOCK_SPAN)]
    exceeded: list[int] = []
    novel = None
    if workers <= 1 or len(spans) <= 1:
        for a, b in spans:
            bx, novel = kernel.resolve_range(status, a, b, budget, mode)
            exceeded.extend(bx)
            if novel:
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(kernel.resolve_range, status, a, b, budget, mode)
                for a, b in spans
            ]
            for fut in futures:
                bx, cyc = fut.result()
                exceeded.extend(bx)
                novel = novel or cyc
    if novel:
        raise NovelCycleDetected(novel)
    return sorted(exceeded)


def forward_search(
    config: SearchConfig,
    oracle: PrimeOracle,
    cache: StatusCache | None = None,
) -> SearchResult:
    """Survivors in [2, cutoff], ascending; budget casualties reported aside."""
    n_max = config.cutoff
    if n_max < 2:
        raise ValueError("cutoff must be >= 2")
    if n_max > oracle.sieve_limit:
        raise ValueError(
            f"cutoff {n_max} exceeds the oracle sieve limit {oracle.sieve_limit}"
        )
    if config.budget < 1:
        raise ValueError("budget must be >= 1")
    if cache is None:
        cache = StatusCache()
    mode = MODE_FILTERED if config.filtered else MODE_ALL
    exceeded = resolve_statuses(
        oracle, cache, 2, n_max + 1, config.budget, config.workers, mode
    )
    return SearchResult(SurvivorList(n_max, cache.survivors_upto(n_max)), exceeded)


def survivor_count(
    n_max: int,
    oracle: PrimeOracle,
    cache: StatusCache | None = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> CountReport:
    """Survivor count up to n_max alongside pi(n_max) for density comparison."""
    result = forward_search(SearchConfig(n_max, True, budget, workers), oracle, cache)
    return CountReport(n_max, len(result.survivors), oracle.prime_count(n_max))
