"""Iteration of the map X(n) = Pi(n) - C(n) + n over the positive integers.

Pi(n) sums the distinct prime divisors of n; C(n) sums every other divisor
(1 and composite n included).  Values whose forward orbit stays positive
"survive", and all of them funnel into the fundamental cycle 2 -> 3 -> 5
-> 9 -> 2.  The package searches for survivors forward (brute force) and
backward (preimage expansion), analyzes the prime chains X generates, and
fits the power-law growth of the survivor index.

The hot range-resolution loop runs on a compiled kernel when the
``xmap._speedups`` extension is built, with a pure-Python fallback selected
automatically at import (force it with XMAP_PURE=1).
"""

from ._backend import backend_name
from .arithmetic import (
    Classification,
    Factorization,
    PrimeOracle,
    c_sum,
    classify,
    pi_sum,
    sigma,
    x_map,
)
from .chains import PrimeChain, cunningham_chain, verify_fermat_termination
from .orbits import (
    DEFAULT_BUDGET,
    FUNDAMENTAL_CYCLE,
    CacheConflictError,
    NovelCycleDetected,
    Orbit,
    StatusCache,
    SurvivalStatus,
    iterate_orbit,
    load_cache,
    record_orbit,
    save_cache,
    survives,
)
from .preimage import (
    EdgeKind,
    PreimageNode,
    PreimageSearchResult,
    export_tree,
    preimage_survivor_search,
    survivor_preimages,
)
from .scaling import ExponentFit, ScalingSeries, build_series, emit_csv, fit_exponent
from .search import (
    SearchConfig,
    SearchResult,
    SurvivorList,
    forward_search,
    survivor_count,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "Factorization",
    "PrimeOracle",
    "c_sum",
    "classify",
    "pi_sum",
    "sigma",
    "x_map",
    "PrimeChain",
    "cunningham_chain",
    "verify_fermat_termination",
    "DEFAULT_BUDGET",
    "FUNDAMENTAL_CYCLE",
    "CacheConflictError",
    "NovelCycleDetected",
    "Orbit",
    "StatusCache",
    "SurvivalStatus",
    "iterate_orbit",
    "load_cache",
    "record_orbit",
    "save_cache",
    "survives",
    "EdgeKind",
    "PreimageNode",
    "PreimageSearchResult",
    "export_tree",
    "preimage_survivor_search",
    "survivor_preimages",
    "ExponentFit",
    "ScalingSeries",
    "build_series",
    "emit_csv",
    "fit_exponent",
    "SearchConfig",
    "SearchResult",
    "SurvivorList",
    "forward_search",
    "survivor_count",
    "backend_name",
    "__version__",
]
