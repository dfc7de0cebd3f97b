"""Orbit iteration, survival resolution, and the shared status cache.

A value survives when every forward X-iterate stays positive; operationally
an orbit is resolved as soon as it reaches the fundamental cycle (2 3 5 9),
a nonpositive value, or a value whose fate is already cached.  Any repeat
outside the fundamental cycle would be a new cycle and is raised as
NovelCycleDetected rather than treated as a bug.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass

import numpy as np

from .arithmetic import PrimeOracle

DEFAULT_BUDGET = 1000

FUNDAMENTAL_CYCLE = (2, 3, 5, 9)
_CYCLE_SET = frozenset(FUNDAMENTAL_CYCLE)


class SurvivalStatus(enum.IntEnum):
    SURVIVES = 1
    DIES = 2
    BUDGET_EXCEEDED = 3
    OVERFLOW = 4


_RESOLVED = (SurvivalStatus.SURVIVES, SurvivalStatus.DIES)


class NovelCycleDetected(Exception):
    """A cycle other than (2 3 5 9) appeared: a finding, not a failure."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"novel cycle: {' '.join(str(v) for v in self.cycle)}")


class CacheConflictError(ValueError):
    """An attempt to overwrite a cached status with a different one."""


@dataclass
class Orbit:
    start: int
    trajectory: list[int]
    outcome: SurvivalStatus
    resolution_index: int

    @property
    def steps_to_nonpositive(self) -> int | None:
        """Steps until the first nonpositive iterate, when the orbit shows it."""
        if self.outcome is SurvivalStatus.DIES and self.trajectory[-1] <= 0:
            return len(self.trajectory) - 1
        return None


class StatusCache:
    """Resolved survives/dies statuses: dense byte array up to a limit,
    dict above it.  Entries are immutable once written; identical rewrites
    are no-ops, contradictions raise CacheConflictError.
    """

    def __init__(self, dense_limit: int = 0):
        self.dense_limit = int(dense_limit)
        self._dense = np.zeros(self.dense_limit + 1, dtype=np.uint8)
        self._sparse: dict[int, int] = {}

    def get(self, n: int) -> int:
        """0 when unknown, else SurvivalStatus.SURVIVES/DIES value."""
        if n <= self.dense_limit:
            return int(self._dense[n]) if n >= 0 else 0
        return self._sparse.get(n, 0)

    def put(self, n: int, code: int) -> None:
        if n < 1:
            raise ValueError("cache keys are positive integers")
        if code not in (1, 2):
            raise ValueError("cache stores only SURVIVES/DIES")
        current = self.get(n)
        if current and current != code:
            raise CacheConflictError(f"cache conflict at {n}: {current} vs {code}")
        if n <= self.dense_limit:
            self._dense[n] = code
        else:
            self._sparse[n] = code

    def ensure_dense(self, limit: int) -> None:
        """Grow the dense region to cover [0, limit], migrating dict entries."""
        if limit <= self.dense_limit:
            return
        grown = np.zeros(limit + 1, dtype=np.uint8)
        grown[: self.dense_limit + 1] = self._dense
        self._dense = grown
        self.dense_limit = limit
        for n in [k for k in self._sparse if k <= limit]:
            self._dense[n] = self._sparse.pop(n)

    def dense(self) -> np.ndarray:
        """The dense status array (shared with kernels; bytes 0/1/2)."""
        return self._dense

    def survivors_upto(self, n_max: int) -> list[int]:
        hi = min(n_max, self.dense_limit)
        found = (np.flatnonzero(self._dense[: hi + 1] == 1)).tolist()
        if n_max > self.dense_limit:
            found += sorted(
                k for k, c in self._sparse.items() if k <= n_max and c == 1
            )
        return found

    def items(self):
        """All (n, status_code) pairs, ascending n."""
        for n in np.flatnonzero(self._dense).tolist():
            yield n, int(self._dense[n])
        for n in sorted(self._sparse):
            yield n, self._sparse[n]

    def __len__(self) -> int:
        return int(np.count_nonzero(self._dense)) + len(self._sparse)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StatusCache):
            return NotImplemented
        return dict(self.items()) == dict(other.items())


def save_cache(path, cache: StatusCache) -> None:
    """Write "<n> <S|D>" lines ascending; atomic via temp-file rename."""
    path = os.fspath(path)
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        for n, code in cache.items():
            fh.write(f"{n} {'S' if code == 1 else 'D'}\n")
    os.replace(tmp, path)


def load_cache(path) -> StatusCache:
    path = os.fspath(path)
    cache = StatusCache()
    last = 0
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("S", "D"):
                raise ValueError(f"{path}: line {lineno}: expected '<n> <S|D>'")
            try:
                n = int(parts[0])
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: bad integer {parts[0]!r}") from None
            if n < 1:
                raise ValueError(f"{path}: line {lineno}: keys must be positive")
            if n <= last:
                raise ValueError(f"{path}: line {lineno}: keys must be ascending")
            last = n
            cache.put(n, 1 if parts[1] == "S" else 2)
    return cache


def iterate_orbit(
    oracle: PrimeOracle,
    n: int,
    budget: int = DEFAULT_BUDGET,
    cache: StatusCache | None = None,
) -> Orbit:
    """Follow X from n until the orbit resolves or the step budget runs out.

    Resolution order per new value: nonpositive (dies), fundamental cycle
    (survives), cached status (inherited), repeat within the trajectory
    (NovelCycleDetected), else keep stepping.
    """
    if n < 1:
        raise ValueError("orbit starts are positive integers")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    trajectory: list[int] = []
    seen: set[int] = set()
    v = n
    steps = 0
    while True:
        if v <= 0:
            trajectory.append(v)
            return Orbit(n, trajectory, SurvivalStatus.DIES, len(trajectory) - 1)
        if v in _CYCLE_SET:
            trajectory.append(v)
            return Orbit(n, trajectory, SurvivalStatus.SURVIVES, len(trajectory) - 1)
        known = cache.get(v) if cache is not None else 0
        if known:
            trajectory.append(v)
            return Orbit(n, trajectory, SurvivalStatus(known), len(trajectory) - 1)
        if v in seen:
            raise NovelCycleDetected(trajectory[trajectory.index(v):])
        trajectory.append(v)
        seen.add(v)
        if steps == budget:
            return Orbit(n, trajectory, SurvivalStatus.BUDGET_EXCEEDED, len(trajectory) - 1)
        try:
            v = oracle.x(v)
        except OverflowError:
            return Orbit(n, trajectory, SurvivalStatus.OVERFLOW, len(trajectory) - 1)
        steps += 1


def record_orbit(cache: StatusCache, orbit: Orbit) -> None:
    """Cache the shared outcome for every positive trajectory member.

    Budget and overflow outcomes are configuration-dependent, never cached.
    """
    if orbit.outcome in _RESOLVED:
        code = int(orbit.outcome)
        for m in orbit.trajectory:
            if m >= 1:
                cache.put(m, code)


def survives(
    oracle: PrimeOracle,
    n: int,
    budget: int = DEFAULT_BUDGET,
    cache: StatusCache | None = None,
) -> SurvivalStatus:
    """Resolve n and write the shared outcome back for every orbit member.

    Every member of a dying orbit dies and every member of a surviving orbit
    survives, so one resolution settles the whole trajectory.
    """
    orbit = iterate_orbit(oracle, n, budget, cache)
    if cache is not None:
        record_orbit(cache, orbit)
    return orbit.outcome
