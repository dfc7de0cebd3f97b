"""Independent brute-force oracles used to freeze expected values.

Everything here works by divisor enumeration and trial division only, with
no factorization or sigma shortcuts, so it stays independent of the code
paths under test.
"""

from math import isqrt

FUNDAMENTAL_CYCLE = (2, 3, 5, 9)

# the first 30 survivors, ascending (verified against x_by_divisors here)
FIRST_30_SURVIVORS = [
    2, 3, 5, 9, 11, 21, 29, 35, 43, 57, 85, 123, 139, 155, 161,
    203, 209, 221, 249, 259, 265, 277, 299, 323, 349, 403, 411, 517, 521, 553,
]


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def divisors(n: int) -> list[int]:
    out = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return sorted(out)


def x_by_divisors(n: int) -> int:
    """X(n) from the definition: prime divisor sum minus the rest, plus n."""
    pi = 0
    c = 0
    for d in divisors(n):
        if is_prime_trial(d):
            pi += d
        else:
            c += d
    return pi - c + n


def survives_brute(n: int, budget: int = 1000, memo: dict | None = None) -> bool:
    """Survival by raw iteration of x_by_divisors."""
    if memo is None:
        memo = {}
    path = []
    v = n
    while True:
        if v <= 0:
            alive = False
            break
        if v in FUNDAMENTAL_CYCLE:
            alive = True
            break
        if v in memo:
            alive = memo[v]
            break
        assert v not in path, f"unexpected cycle at {v}"
        path.append(v)
        assert len(path) <= budget, f"budget exhausted from {n}"
        v = x_by_divisors(v)
    for m in path:
        memo[m] = alive
    return alive


def brute_survivors(n_max: int, memo: dict | None = None) -> list[int]:
    memo = {} if memo is None else memo
    return [n for n in range(2, n_max + 1) if survives_brute(n, memo=memo)]
