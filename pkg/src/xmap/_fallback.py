"""Pure-Python orbit-resolution kernel.

Drop-in replacement for the compiled ``xmap._speedups`` extension with
identical semantics: given a smallest-prime-factor sieve, resolve every
starting value in a range to survives/dies by following the X map with
memoization.  Bulk X values below the sieve limit come from sieve-style
accumulation tables (built lazily, once per kernel).
"""

from __future__ import annotations

from bisect import bisect_left

import numpy as np

from .arithmetic import INT64_MAX, _miller_rabin

BACKEND = "python"

# status byte codes shared with the compiled kernel and StatusCache
_UNKNOWN, _SURVIVES, _DIES = 0, 1, 2
_CYCLE = frozenset((2, 3, 5, 9))


class Kernel:
    def __init__(self, spf, primes):
        self._spf = np.ascontiguousarray(spf, dtype=np.int64)
        self._primes = np.ascontiguousarray(primes, dtype=np.int64)
        self.limit = int(len(self._spf) - 1)
        self._primes_list = self._primes.tolist()
        self._x_arr = None
        self._x_list = None
        self._omega = None
        self._candidates = None

    def _ensure_tables(self):
        if self._x_list is not None:
            return
        limit = self.limit
        # sigma by divisor accumulation, Pi and big-omega by prime(-power) strides
        sig = np.zeros(limit + 1, dtype=np.int64)
        for d in range(1, limit + 1):
            sig[d::d] += d
        pi = np.zeros(limit + 1, dtype=np.int64)
        omega = np.zeros(limit + 1, dtype=np.int64)
        for p in self._primes_list:
            pi[p::p] += p
            pk = p
            while pk <= limit:
                omega[pk::pk] += 1
                pk *= p
        ids = np.arange(limit + 1, dtype=np.int64)
        x = 2 * pi - sig + ids
        x[0] = 0
        spf = self._spf
        prime_mask = (spf == ids) & (ids >= 2)
        cof = np.ones(limit + 1, dtype=np.int64)
        np.floor_divide(ids, spf, out=cof, where=ids >= 2)
        # survivor candidates: primes, odd distinct biprimes, and 9
        cand = prime_mask | ((omega == 2) & (spf > 2) & (cof != spf))
        if limit >= 9:
            cand[9] = True
        self._x_arr = x
        self._x_list = x.tolist()
        self._omega = omega
        self._candidates = cand

    def x_block(self, lo, hi):
        """X(n) and big-omega(n) arrays for n in [lo, hi); bounds within the sieve."""
        if not 0 <= lo <= hi <= self.limit + 1:
            raise ValueError("x_block bounds must lie within the sieve")
        self._ensure_tables()
        return self._x_arr[lo:hi].copy(), self._omega[lo:hi].copy()

    def _x_large(self, v):
        # trial division by sieved primes; capacity ends at sieve_limit**2
        if v > (INT64_MAX - 1) // 2:
            raise OverflowError(f"x({v}) overflows 64-bit checked arithmetic")
        m = v
        pi = 0
        sig = 1
        for p in self._primes_list:
            if p * p > m:
                break
            if m % p == 0:
                pi += p
                term = 1
                pk = 1
                while m % p == 0:
                    m //= p
                    pk *= p
                    term += pk
                sig *= term
        else:
            if m > 1 and (m % 2 == 0 or not _miller_rabin(m)):
                raise OverflowError(
                    f"{v} exceeds factorization capacity of the sieve"
                )
        if m > 1:
            pi += m
            sig *= m + 1
        if sig > INT64_MAX:
            raise OverflowError(f"sigma({v}) overflows 64-bit checked arithmetic")
        return 2 * pi - sig + v

    def resolve_range(self, status, lo, hi, budget, mode):
        """Resolve survival for starts in [lo, hi), writing into ``status``.

        mode 0 resolves every n, mode 1 only survivor candidates, mode 2 only
        primes.  Returns (budget_exceeded_starts, novel_cycle_or_None).
        """
        if lo < 1 or hi > self.limit + 1:
            raise ValueError("resolve_range bounds must lie within the sieve")
        if budget < 1:
            raise ValueError("budget must be >= 1")
        if len(status) < self.limit + 1:
            raise ValueError("status array must cover the sieve range")
        self._ensure_tables()
        x_tab = self._x_list
        limit = self.limit
        st = status
        budget_exceeded = []
        if mode == 2:
            i0 = bisect_left(self._primes_list, lo)
            i1 = bisect_left(self._primes_list, hi)
            starts = self._primes_list[i0:i1]
        elif mode == 1:
            starts = (np.flatnonzero(self._candidates[lo:hi]) + lo).tolist()
        else:
            starts = range(lo, hi)
        for n in starts:
            if st[n]:
                continue
            v = n
            path = []
            pathset = set()
            steps = 0
            outcome = _UNKNOWN
            while True:
                if v <= 0:
                    outcome = _DIES
                    break
                if v <= limit:
                    known = st[v]
                    if known:
                        outcome = int(known)
                        break
                if v in _CYCLE:
                    path.append(v)
                    outcome = _SURVIVES
                    break
                if v in pathset:
                    return budget_exceeded, path[path.index(v):]
                path.append(v)
                pathset.add(v)
                if steps == budget:
                    budget_exceeded.append(n)
                    break
                v = x_tab[v] if v <= limit else self._x_large(v)
                steps += 1
            if outcome:
                for m in path:
                    if m <= limit:
                        st[m] = outcome
        return budget_exceeded, None
