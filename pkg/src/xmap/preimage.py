"""Survivor preimage enumeration, the hybrid survivor search, and tree export.

On the survivor domain X has exactly two kinds of preimage: the prime
(n+1)/2 (since X(p) = 2p-1) and products k*j of distinct odd primes with
k + j = n + 1 (since X(k*j) = k+j-1).  Nothing maps to 9 under either form
(3*3 fails distinctness), so the fundamental cycle is seeded explicitly.

The full search is hybrid: primes up to the cutoff are tested forward
(a prime p <= N can have image 2p-1 > N, which a pure backward sweep under
the cutoff would miss), then biprime preimages are expanded backward.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ._backend import MODE_PRIMES
from .arithmetic import INT64_MAX, Classification, PrimeOracle, classify
from .orbits import DEFAULT_BUDGET, FUNDAMENTAL_CYCLE, StatusCache
from .search import SurvivorList, resolve_statuses


class EdgeKind(enum.Enum):
    CYCLE_SEED = "cycle_seed"
    PRIME_HALF = "prime_half"
    BIPRIME_PAIR = "biprime_pair"


@dataclass
class PreimageNode:
    value: int
    parent: int | None
    kind: EdgeKind
    pair: tuple[int, int] | None = None
    children: list[int] = field(default_factory=list)


@dataclass
class PreimageSearchResult:
    survivors: SurvivorList
    nodes: dict[int, PreimageNode]
    budget_exceeded: list[int] = field(default_factory=list)


def survivor_preimages(
    oracle: PrimeOracle,
    n: int,
    max_product: int | None = None,
) -> list[PreimageNode]:
    """All survivor-form preimages of n, ascending by value.

    With max_product set, biprime pairs whose product exceeds it are
    dropped (the product k*(n+1-k) grows monotonically in k < (n+1)/2,
    so enumeration stops at the first oversized pair).
    """
    if n < 2:
        raise ValueError("preimages are defined for n >= 2")
    nodes: list[PreimageNode] = []
    if n % 2 == 0:
        # n+1 odd: any k + j = n + 1 needs one even prime, and the prime
        # half (n+1)/2 is not an integer; even survivors have no preimages
        return nodes
    half = (n + 1) // 2
    if half >= 2 and oracle.is_prime(half):
        nodes.append(PreimageNode(half, n, EdgeKind.PRIME_HALF))
    if max_product is None and half - 1 > oracle.sieve_limit:
        raise ValueError(
            f"preimage enumeration to {half - 1} needs a sieve of at least that size"
        )
    plist = oracle.primes_list
    idx = 1  # skip the prime 2: pair members are odd
    while idx < len(plist):
        k = plist[idx]
        idx += 1
        if k >= half:
            break
        j = n + 1 - k
        if k > INT64_MAX // j:
            raise OverflowError(f"preimage pair {k}*{j} overflows 64-bit range")
        product = k * j
        if max_product is not None and product > max_product:
            break
        if oracle.is_prime(j):
            nodes.append(
                PreimageNode(product, n, EdgeKind.BIPRIME_PAIR, pair=(k, j))
            )
    nodes.sort(key=lambda node: node.value)
    return nodes


def preimage_survivor_search(
    oracle: PrimeOracle,
    n_max: int,
    cache: StatusCache | None = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> PreimageSearchResult:
    """All survivors up to n_max via cycle seeding, a forward prime scan,
    and backward biprime expansion.

    Orbit members above the cutoff are kept in the result tree but never
    expanded; the survivor list itself is filtered to the cutoff.
    """
    if n_max < 1:
        raise ValueError("cutoff must be >= 1")
    if n_max > oracle.sieve_limit:
        raise ValueError(
            f"cutoff {n_max} exceeds the oracle sieve limit {oracle.sieve_limit}"
        )
    if cache is None:
        cache = StatusCache()
    nodes: dict[int, PreimageNode] = {
        s: PreimageNode(s, None, EdgeKind.CYCLE_SEED) for s in FUNDAMENTAL_CYCLE
    }
    result: set[int] = set(FUNDAMENTAL_CYCLE)

    exceeded: list[int] = []
    if n_max >= 2:
        exceeded = resolve_statuses(
            oracle, cache, 2, n_max + 1, budget, workers, MODE_PRIMES
        )
        status = cache.dense()
        prime_cut = int(np.searchsorted(oracle.primes, n_max, side="right"))
        for p in oracle.primes[:prime_cut].tolist():
            if status[p] != 1 or p in result:
                continue
            chain: list[int] = []
            v = p
            while v not in result:
                chain.append(v)
                v = oracle.x(v)
            for i, m in enumerate(chain):
                parent = chain[i + 1] if i + 1 < len(chain) else v
                nodes[m] = _member_node(oracle, m, parent)
                result.add(m)

    worklist = deque(sorted(m for m in result if m <= n_max))
    while worklist:
        parent = worklist.popleft()
        if parent < 2:
            continue
        for node in survivor_preimages(oracle, parent, max_product=n_max):
            if node.kind is not EdgeKind.BIPRIME_PAIR:
                continue  # primes are covered by the forward scan
            if node.value in result:
                continue
            nodes[node.value] = node
            result.add(node.value)
            worklist.append(node.value)

    for node in nodes.values():
        if node.parent is not None:
            nodes[node.parent].children.append(node.value)
    for node in nodes.values():
        node.children.sort()

    entries = sorted(m for m in result if m <= n_max)
    return PreimageSearchResult(SurvivorList(n_max, entries), nodes, exceeded)


def _member_node(oracle: PrimeOracle, value: int, parent: int) -> PreimageNode:
    """Node for an orbit member discovered by the forward prime scan."""
    f = oracle.factorize(value)
    kind = classify(f)
    if kind is Classification.PRIME:
        return PreimageNode(value, parent, EdgeKind.PRIME_HALF)
    if kind is Classification.ODD_DISTINCT_BIPRIME:
        (p, _), (q, _) = f.factors
        return PreimageNode(value, parent, EdgeKind.BIPRIME_PAIR, pair=(p, q))
    raise RuntimeError(
        f"orbit member {value} of a surviving orbit is neither prime nor "
        f"an odd distinct biprime"
    )


def _validated(nodes) -> dict[int, PreimageNode]:
    """Check the forest invariants and return nodes keyed by value."""
    if isinstance(nodes, dict):
        by_value = dict(nodes)
    else:
        by_value = {node.value: node for node in nodes}
    for node in by_value.values():
        if node.kind is EdgeKind.CYCLE_SEED:
            if node.value not in FUNDAMENTAL_CYCLE or node.parent is not None:
                raise ValueError(f"bad cycle seed {node.value}")
            continue
        if node.parent is None or node.parent not in by_value:
            raise ValueError(f"node {node.value} has no parent in the forest")
        if node.kind is EdgeKind.PRIME_HALF:
            if 2 * node.value != node.parent + 1:
                raise ValueError(f"prime-half node {node.value} != ({node.parent}+1)/2")
        elif node.kind is EdgeKind.BIPRIME_PAIR:
            if node.pair is None:
                raise ValueError(f"biprime node {node.value} missing its pair")
            k, j = node.pair
            if k * j != node.value or k + j != node.parent + 1:
                raise ValueError(f"biprime node {node.value} inconsistent with {node.pair}")
    # every parent chain must reach a cycle seed without repeating
    settled: set[int] = set()
    for node in by_value.values():
        trail = []
        cur = node
        while cur.value not in settled and cur.kind is not EdgeKind.CYCLE_SEED:
            if cur.value in trail:
                raise ValueError(f"parent chain of {node.value} cycles")
            trail.append(cur.value)
            cur = by_value[cur.parent]
        settled.update(trail)
    return by_value


def export_tree(nodes, fmt: str = "dot") -> str:
    """Render a preimage forest as DOT (edges child -> parent, the forward X
    direction) or as nested JSON; node order is stable."""
    by_value = _validated(nodes)
    if fmt == "dot":
        return _to_dot(by_value)
    if fmt == "json":
        return _to_json(by_value)
    raise ValueError(f"unknown tree format {fmt!r}")


def _to_dot(by_value: dict[int, PreimageNode]) -> str:
    lines = ["digraph survivors {"]
    for name in sorted(str(v) for v in by_value):
        node = by_value[int(name)]
        if node.kind is EdgeKind.CYCLE_SEED:
            lines.append(f'    "{name}" [shape=doublecircle];')
        else:
            lines.append(f'    "{name}";')
    edges = sorted(
        (str(n.value), str(n.parent)) for n in by_value.values() if n.parent is not None
    )
    for child, parent in edges:
        lines.append(f'    "{child}" -> "{parent}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _to_json(by_value: dict[int, PreimageNode]) -> str:
    children_of: dict[int, list[int]] = {v: [] for v in by_value}
    for node in by_value.values():
        if node.parent is not None:
            children_of[node.parent].append(node.value)

    def emit(value: int) -> dict:
        node = by_value[value]
        doc: dict = {"value": value, "edge": node.kind.value}
        if node.pair is not None:
            doc["pair"] = list(node.pair)
        doc["children"] = [emit(c) for c in sorted(children_of[value])]
        return doc

    roots = [emit(v) for v in sorted(by_value) if by_value[v].parent is None]
    return json.dumps({"roots": roots}, indent=2) + "\n"
