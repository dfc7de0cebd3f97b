"""Growth of the survivor index n(k): ratio series and power-law fit.

Ratios n(k)/k^alpha against 1/log(k) expose the scaling window; the fitted
exponent is the least-squares slope of log n(k) versus log k over a tail
window (that fit procedure is this library's choice of estimator).
Logarithms are natural: the base only rescales the 1/log axis and leaves
the log-log slope unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_ALPHAS = (1.2, 1.3, 1.5)
DEFAULT_FIT_KMIN = 100


@dataclass
class ScalingPoint:
    k: int
    n_k: int
    inv_log_k: float
    ratios: tuple[float, ...]


@dataclass
class ExponentFit:
    slope: float
    k_min: int
    k_max: int


@dataclass
class ScalingSeries:
    alphas: tuple[float, ...]
    points: list[ScalingPoint]
    fit: ExponentFit | None = None


def _entries(survivors) -> list:
    return list(getattr(survivors, "entries", survivors))


def build_series(survivors, alphas=DEFAULT_ALPHAS) -> ScalingSeries:
    """One point per survivor index k >= 2 (log 1 = 0 leaves k = 1 without
    an inv_log coordinate; the survivor itself stays in the list)."""
    entries = _entries(survivors)
    if not entries:
        raise ValueError("survivor list is empty")
    alphas = tuple(alphas)
    if not alphas:
        raise ValueError("alphas must be non-empty")
    for k, n_k in enumerate(entries, start=1):
        if n_k <= k:
            raise ValueError(f"n({k}) = {n_k} violates n(k) > k")
    points = [
        ScalingPoint(
            k,
            n_k,
            1.0 / math.log(k),
            tuple(n_k / k**alpha for alpha in alphas),
        )
        for k, n_k in enumerate(entries, start=1)
        if k >= 2
    ]
    return ScalingSeries(alphas, points)


def fit_exponent(survivors, k_min: int = DEFAULT_FIT_KMIN) -> ExponentFit:
    """Least-squares slope of log n(k) vs log k over k in [k_min, k_max].

    The default window start suppresses small-k transients.  Accepts a
    SurvivorList or any sequence of n(k) values (useful for synthetic data).
    """
    entries = _entries(survivors)
    if k_min < 2:
        raise ValueError("k_min must be >= 2")
    k_max = len(entries)
    if k_max < 2 * k_min:
        raise ValueError(
            f"need at least {2 * k_min} survivors to fit from k_min={k_min}, have {k_max}"
        )
    ks = np.arange(k_min, k_max + 1, dtype=np.float64)
    ns = np.asarray(entries[k_min - 1 :], dtype=np.float64)
    slope = float(np.polyfit(np.log(ks), np.log(ns), 1)[0])
    return ExponentFit(slope, k_min, k_max)


def emit_csv(series: ScalingSeries) -> str:
    """Deterministic CSV: k,n_k,inv_log_k,ratio_<alpha> per point."""
    if not series.alphas:
        raise ValueError("series has no alphas")
    header = "k,n_k,inv_log_k," + ",".join(f"ratio_{a!r}" for a in series.alphas)
    rows = [header]
    for pt in series.points:
        rows.append(
            f"{pt.k},{pt.n_k},{pt.inv_log_k!r},"
            + ",".join(repr(r) for r in pt.ratios)
        )
    return "\n".join(rows) + "\n"
