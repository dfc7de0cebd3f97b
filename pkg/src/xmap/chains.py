"""Prime-only runs of the X map: Cunningham chains of the 2nd kind.

On a prime p the map gives X(p) = 2p - 1, so consecutive prime iterates
form a chain p, 2p-1, 4p-3, ... with closed form 2^(i-1)*(p-1) + 1.
Fermat's little theorem makes the p-th term divisible by p for odd p,
so no prime-only run is infinite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arithmetic import INT64_MAX, PrimeOracle


@dataclass
class PrimeChain:
    p1: int
    members: list[int]

    @property
    def length(self) -> int:
        return len(self.members)


def cunningham_chain(oracle: PrimeOracle, p: int) -> PrimeChain:
    """Maximal prime chain from p under X; closed form checked against
    the iterated map termwise."""
    if not oracle.is_prime(p):
        raise ValueError(f"{p} is not prime")
    members = [p]
    while True:
        last = members[-1]
        if last > (INT64_MAX + 1) // 2:
            raise OverflowError(f"chain member 2*{last}-1 overflows 64-bit range")
        nxt = 2 * last - 1
        if not oracle.is_prime(nxt):
            break
        members.append(nxt)
    for i, m in enumerate(members):
        closed = ((p - 1) << i) + 1
        if closed != m:
            raise RuntimeError(f"closed form {closed} != member {m} at index {i}")
        if i > 0 and oracle.x(members[i - 1]) != m:
            raise RuntimeError(f"X({members[i - 1]}) != {m}")
    return PrimeChain(p, members)


def verify_fermat_termination(p: int) -> bool:
    """True iff the p-th chain term 2^(p-1)*(p-1) + 1 is divisible by p.

    Holds for every odd prime by Fermat's little theorem, bounding chain
    length by p - 1.  p = 2 is rejected: 2 is not coprime to the base and
    its chain [2, 3, 5] is handled by cunningham_chain directly.
    """
    if p == 2:
        raise ValueError("the termination bound assumes an odd prime")
    if p < 3 or p % 2 == 0:
        raise ValueError(f"{p} is not an odd prime")
    return (pow(2, p - 1, p) * (p - 1) + 1) % p == 0


def chain_report_csv(oracle: PrimeOracle, max_p: int) -> str:
    """CSV "p,length,members" for every prime p <= max_p, members space-joined."""
    if max_p > oracle.sieve_limit:
        raise ValueError(f"max_p {max_p} exceeds the oracle sieve limit")
    lines = ["p,length,members"]
    for p in oracle.primes_list:
        if p > max_p:
            break
        chain = cunningham_chain(oracle, p)
        lines.append(f"{p},{chain.length},{' '.join(str(m) for m in chain.members)}")
    return "\n".join(lines) + "\n"
