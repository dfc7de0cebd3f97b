# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled orbit-resolution kernel: the hot loop behind range survival searches.

Semantics mirror xmap._fallback exactly; only the execution speed differs.
The main loop runs without the GIL, so block-parallel callers get real
concurrency.
"""

from libc.stdint cimport int64_t, uint8_t, uint64_t

import numpy as np

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

BACKEND = "compiled"

cdef int64_t INT64_MAX = 9223372036854775807

cdef enum:
    ST_UNKNOWN = 0
    ST_SURVIVES = 1
    ST_DIES = 2

cdef enum:
    RC_OK = 0
    RC_OVERFLOW = 1
    RC_CAPACITY = 2


cdef inline uint64_t _mulmod(uint64_t a, uint64_t b, uint64_t m) noexcept nogil:
    return <uint64_t>((<u128>a * <u128>b) % <u128>m)


cdef uint64_t _powmod(uint64_t base, uint64_t exp, uint64_t m) noexcept nogil:
    cdef uint64_t r = 1 % m
    base %= m
    while exp:
        if exp & 1:
            r = _mulmod(r, base, m)
        base = _mulmod(base, base, m)
        exp >>= 1
    return r


cdef bint _mr_is_prime(uint64_t n) noexcept nogil:
    # deterministic Miller-Rabin, witnesses valid for every n < 2^64
    cdef uint64_t[7] wit
    cdef uint64_t d, a, x
    cdef int r, i, j
    cdef bint composite
    wit[0] = 2; wit[1] = 325; wit[2] = 9375; wit[3] = 28178
    wit[4] = 450775; wit[5] = 9780504; wit[6] = 1795265022
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = n - 1
    r = 0
    while d % 2 == 0:
        d >>= 1
        r += 1
    for i in range(7):
        a = wit[i] % n
        if a == 0:
            continue
        x = _powmod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        composite = True
        for j in range(r - 1):
            x = _mulmod(x, x, n)
            if x == n - 1:
                composite = False
                break
        if composite:
            return False
    return True


cdef class Kernel:
    """Range resolver bound to a smallest-prime-factor sieve."""

    cdef const int64_t[::1] spf
    cdef const int64_t[::1] primes
    cdef readonly int64_t limit
    cdef Py_ssize_t nprimes
    cdef object _primes_obj

    def __init__(self, spf, primes):
        spf_arr = np.ascontiguousarray(spf, dtype=np.int64)
        primes_arr = np.ascontiguousarray(primes, dtype=np.int64)
        if spf_arr.shape[0] - 1 > (<int64_t>1) << 31:
            # keeps sigma of in-sieve values far from 64-bit limits
            raise ValueError("compiled kernel supports sieve limits up to 2^31")
        self.spf = spf_arr
        self.primes = primes_arr
        self._primes_obj = primes_arr
        self.limit = spf_arr.shape[0] - 1
        self.nprimes = primes_arr.shape[0]

    cdef int _x_of(self, int64_t v, int64_t* out_x, int64_t* out_omega) noexcept nogil:
        cdef int64_t m, p, pk, term, pi, sig, c
        cdef int64_t omega = 0
        cdef Py_ssize_t i
        cdef bint exhausted
        if v > (INT64_MAX - 1) // 2:
            return RC_OVERFLOW
        pi = 0
        sig = 1
        m = v
        if v <= self.limit:
            # limit <= 2^31 keeps pk and sig well inside int64
            while m > 1:
                p = self.spf[m]
                pi += p
                term = 1
                pk = 1
                while m % p == 0:
                    m //= p
                    pk *= p
                    term += pk
                    omega += 1
                sig *= term
        else:
            exhausted = True
            for i in range(self.nprimes):
                p = self.primes[i]
                if p > m // p:
                    exhausted = False
                    break
                if m % p == 0:
                    pi += p
                    term = 1
                    pk = 1
                    while m % p == 0:
                        m //= p
                        if pk > INT64_MAX // p:
                            return RC_OVERFLOW
                        pk *= p
                        term += pk
                        omega += 1
                    if sig > INT64_MAX // term:
                        return RC_OVERFLOW
                    sig *= term
            if m > 1:
                if exhausted and not _mr_is_prime(<uint64_t>m):
                    # composite cofactor whose factors all exceed the sieve
                    return RC_CAPACITY
                pi += m
                if sig > INT64_MAX // (m + 1):
                    return RC_OVERFLOW
                sig *= m + 1
                omega += 1
        c = sig - pi
        if pi >= c:
            out_x[0] = v + (pi - c)
        else:
            out_x[0] = v - (c - pi)
        out_omega[0] = omega
        return RC_OK

    cdef inline bint _candidate(self, int64_t n) noexcept nogil:
        # prime, odd distinct biprime, or 9
        cdef int64_t p, m
        if n < 2:
            return False
        if n == 9:
            return True
        p = self.spf[n]
        if p == n:
            return True
        if p == 2:
            return False
        m = n // p
        if m == p:
            return False
        return self.spf[m] == m

    def x_block(self, int64_t lo, int64_t hi):
        """X(n) and big-omega(n) arrays for n in [lo, hi); bounds within the sieve."""
        if not 0 <= lo <= hi <= self.limit + 1:
            raise ValueError("x_block bounds must lie within the sieve")
        x_out = np.empty(hi - lo, dtype=np.int64)
        om_out = np.empty(hi - lo, dtype=np.int64)
        cdef int64_t[::1] xo = x_out
        cdef int64_t[::1] oo = om_out
        cdef int64_t t, v, xv, om
        cdef int rc = RC_OK
        with nogil:
            for t in range(hi - lo):
                v = lo + t
                if v < 1:
                    xo[t] = 0
                    oo[t] = 0
                    continue
                rc = self._x_of(v, &xv, &om)
                if rc != RC_OK:
                    break
                xo[t] = xv
                oo[t] = om
        if rc != RC_OK:
            raise OverflowError("x_block overflow inside the sieve range")
        return x_out, om_out

    def resolve_range(self, status, int64_t lo, int64_t hi, int64_t budget, int mode):
        """Resolve survival for starts in [lo, hi), writing into ``status``.

        mode 0 resolves every n, mode 1 only survivor candidates, mode 2 only
        primes.  Returns (budget_exceeded_starts, novel_cycle_or_None).
        """
        if lo < 1 or hi > self.limit + 1:
            raise ValueError("resolve_range bounds must lie within the sieve")
        if budget < 1:
            raise ValueError("budget must be >= 1")
        cdef uint8_t[::1] st = status
        if st.shape[0] < self.limit + 1:
            raise ValueError("status array must cover the sieve range")
        path_arr = np.empty(budget + 1, dtype=np.int64)
        bx_arr = np.empty(max(hi - lo, 1), dtype=np.int64)
        cyc_arr = np.empty(budget + 1, dtype=np.int64)
        cdef int64_t[::1] path = path_arr
        cdef int64_t[::1] bx = bx_arr
        cdef int64_t[::1] cyc = cyc_arr
        cdef Py_ssize_t bx_n = 0, cyc_n = 0
        cdef Py_ssize_t i0 = 0, t, count, plen, j, hit
        cdef int64_t n, v, xv, om, steps, err_v = 0
        cdef int rc = RC_OK, outcome
        cdef bint novel = False

        if mode == 2:
            i0 = int(np.searchsorted(self._primes_obj, lo, side="left"))
            count = int(np.searchsorted(self._primes_obj, hi, side="left")) - i0
        else:
            count = hi - lo

        with nogil:
            for t in range(count):
                if mode == 2:
                    n = self.primes[i0 + t]
                else:
                    n = lo + t
                    if mode == 1 and not self._candidate(n):
                        continue
                if st[n] != ST_UNKNOWN:
                    continue
                v = n
                plen = 0
                steps = 0
                outcome = ST_UNKNOWN
                while True:
                    if v <= 0:
                        outcome = ST_DIES
                        break
                    if v <= self.limit and st[v] != ST_UNKNOWN:
                        outcome = st[v]
                        break
                    if v == 2 or v == 3 or v == 5 or v == 9:
                        path[plen] = v
                        plen += 1
                        outcome = ST_SURVIVES
                        break
                    hit = -1
                    for j in range(plen):
                        if path[j] == v:
                            hit = j
                            break
                    if hit >= 0:
                        for j in range(hit, plen):
                            cyc[cyc_n] = path[j]
                            cyc_n += 1
                        novel = True
                        break
                    path[plen] = v
                    plen += 1
                    if steps == budget:
                        bx[bx_n] = n
                        bx_n += 1
                        break
                    rc = self._x_of(v, &xv, &om)
                    if rc != RC_OK:
                        err_v = v
                        break
                    v = xv
                    steps += 1
                if novel or rc != RC_OK:
                    break
                if outcome != ST_UNKNOWN:
                    for j in range(plen):
                        if path[j] <= self.limit:
                            st[path[j]] = <uint8_t>outcome
        if rc == RC_OVERFLOW:
            raise OverflowError(
                f"orbit value {err_v} overflows 64-bit checked arithmetic"
            )
        if rc == RC_CAPACITY:
            raise OverflowError(
                f"orbit value {err_v} exceeds factorization capacity of the sieve"
            )
        novel_cycle = [int(cyc[j]) for j in range(cyc_n)] if novel else None
        return bx_arr[:bx_n].tolist(), novel_cycle
