"""Exact integer arithmetic behind the X map.

X(n) = Pi(n) - C(n) + n, where Pi(n) is the sum of the distinct prime
divisors of n and C(n) is the sum of all other (non-prime) divisors,
1 and n included when they are not prime.  C is computed as
sigma(n) - Pi(n), so everything reduces to a factorization.

All values are kept inside signed 64-bit range; operations that would
leave it raise OverflowError.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt

import numpy as np

INT64_MAX = 2**63 - 1

# Deterministic Miller-Rabin witnesses covering every n < 2^64
# (miller-rabin.appspot.com).
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


@dataclass(frozen=True)
class Factorization:
    """Canonical prime-power decomposition: factors ascending, n == product."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def distinct_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def big_omega(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(e for _, e in self.factors)


class Classification(enum.Enum):
    ONE = "one"
    PRIME = "prime"
    EVEN_BIPRIME = "even_biprime"
    ODD_SQUARE_BIPRIME = "odd_square_biprime"
    ODD_DISTINCT_BIPRIME = "odd_distinct_biprime"
    THREE_PLUS = "three_plus"


def _miller_rabin(n: int) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def build_spf(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for 0..limit (spf[0] = 0, spf[1] = 1)."""
    if limit < 1:
        raise ValueError("sieve limit must be >= 1")
    spf = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        spf[1] = 1
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            seg = spf[p * p :: p]
            seg[seg == 0] = p
    ids = np.arange(limit + 1, dtype=np.int64)
    unmarked = (spf == 0) & (ids >= 2)
    spf[unmarked] = ids[unmarked]
    return spf


class PrimeOracle:
    """Primality and factorization service, pure and shareable across workers.

    Queries at or below ``sieve_limit`` are answered from a smallest-prime-
    factor sieve; larger values fall back to trial division by the sieved
    primes plus a deterministic Miller-Rabin test.  Factorization is
    guaranteed for n <= sieve_limit**2 (beyond that the smallest factor may
    exceed the sieve and an OverflowError is raised).
    """

    def __init__(self, sieve_limit: int):
        if sieve_limit < 10:
            raise ValueError("sieve_limit must be >= 10")
        if sieve_limit > INT64_MAX:
            raise OverflowError("sieve_limit exceeds 64-bit range")
        self.sieve_limit = int(sieve_limit)
        self.spf = build_spf(self.sieve_limit)
        ids = np.arange(self.sieve_limit + 1, dtype=np.int64)
        self.primes = np.flatnonzero((ids >= 2) & (self.spf == ids)).astype(np.int64)
        # plain-int copy: python-level trial division is much faster on it
        self._primes_list = self.primes.tolist()
        self._kernel = None

    @property
    def primes_list(self) -> list[int]:
        """Sieved primes as plain ints, ascending; treat as read-only."""
        return self._primes_list

    @property
    def kernel(self):
        """Backend range-resolution kernel bound to this oracle's sieve."""
        if self._kernel is None:
            from ._backend import make_kernel

            self._kernel = make_kernel(self.spf, self.primes)
        return self._kernel

    def prime_count(self, n: int) -> int:
        """pi(n) for n <= sieve_limit."""
        if n > self.sieve_limit:
            raise ValueError(f"prime_count({n}) exceeds sieve_limit {self.sieve_limit}")
        return int(np.searchsorted(self.primes, n, side="right"))

    def is_prime(self, n: int) -> bool:
        if n < 1:
            raise ValueError("is_prime expects n >= 1")
        if n <= self.sieve_limit:
            return n >= 2 and int(self.spf[n]) == n
        if n > INT64_MAX:
            raise OverflowError(f"{n} exceeds 64-bit range")
        if n % 2 == 0:
            return False
        return _miller_rabin(n)

    def factorize(self, n: int) -> Factorization:
        if n < 1:
            raise ValueError("factorize expects n >= 1")
        if n > INT64_MAX:
            raise OverflowError(f"{n} exceeds 64-bit range")
        if n == 1:
            return Factorization(1, ())
        factors = []
        m = n
        if n <= self.sieve_limit:
            spf = self.spf
            while m > 1:
                p = int(spf[m])
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                factors.append((p, e))
        else:
            for p in self._primes_list:
                if p * p > m:
                    break
                if m % p == 0:
                    e = 0
                    while m % p == 0:
                        m //= p
                        e += 1
                    factors.append((p, e))
            else:
                # sieve primes exhausted below sqrt(m): only a prime cofactor
                # is still factorable
                if m > 1 and not self.is_prime(m):
                    raise OverflowError(
                        f"{n} exceeds factorization capacity "
                        f"(sieve_limit={self.sieve_limit})"
                    )
            if m > 1:
                factors.append((m, 1))
        return Factorization(n, tuple(factors))

    def x(self, n: int) -> int:
        """Convenience: X(n) from a fresh factorization."""
        return x_map(self.factorize(n))


def pi_sum(f: Factorization) -> int:
    """Pi(n): sum of the distinct primes dividing n; Pi(1) = 0."""
    return sum(f.distinct_primes())


def sigma(f: Factorization) -> int:
    """Sum of all divisors, prod (p^(e+1) - 1) / (p - 1); sigma(1) = 1."""
    total = 1
    for p, e in f.factors:
        term = 1
        pk = 1
        for _ in range(e):
            if pk > INT64_MAX // p:
                raise OverflowError(f"sigma({f.n}) overflows 64-bit range")
            pk *= p
            term += pk
        if total > INT64_MAX // term:
            raise OverflowError(f"sigma({f.n}) overflows 64-bit range")
        total *= term
    return total


def c_sum(f: Factorization) -> int:
    """C(n): sum of the non-prime divisors of n; equals sigma - Pi, C(1) = 1."""
    return sigma(f) - pi_sum(f)


def x_map(f: Factorization) -> int:
    """X(n) = Pi(n) - C(n) + n = 2*Pi(n) - sigma(n) + n.

    X(1) = 0 falls out of the formula (Pi(1) = 0, C(1) = 1).
    """
    if f.n > (INT64_MAX - 1) // 2:
        # X(n) <= 2n - 1, so this is the only way the result itself overflows
        raise OverflowError(f"x_map({f.n}) overflows 64-bit range")
    return 2 * pi_sum(f) - sigma(f) + f.n


def classify(f: Factorization) -> Classification:
    """Structural class of n used by the survivor criteria."""
    omega = f.big_omega()
    if omega == 0:
        return Classification.ONE
    if omega == 1:
        return Classification.PRIME
    if omega >= 3:
        return Classification.THREE_PLUS
    if f.n % 2 == 0:
        return Classification.EVEN_BIPRIME
    if len(f.factors) == 1:
        return Classification.ODD_SQUARE_BIPRIME
    return Classification.ODD_DISTINCT_BIPRIME
