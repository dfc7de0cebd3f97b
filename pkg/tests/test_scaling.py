import math

import pytest

from xmap.scaling import build_series, emit_csv, fit_exponent
from xmap.search import SurvivorList

from helpers import FIRST_30_SURVIVORS


@pytest.fixture()
def known30():
    return SurvivorList(600, list(FIRST_30_SURVIVORS))


def test_series_points(known30):
    series = build_series(known30, alphas=(1.0,))
    by_k = {pt.k: pt for pt in series.points}
    assert by_k[4].n_k == 9
    assert by_k[30].n_k == 553
    assert by_k[10].ratios[0] == 57 / 10.0  # 5.7
    assert by_k[2].inv_log_k == 1.0 / math.log(2)
    assert 1 not in by_k  # log 1 = 0 leaves k=1 without a coordinate


def test_series_ratio_definition(known30):
    series = build_series(known30, alphas=(1.2, 1.5))
    for pt in series.points:
        assert pt.ratios[0] == pytest.approx(pt.n_k / pt.k**1.2, rel=1e-15)
        assert pt.ratios[1] == pytest.approx(pt.n_k / pt.k**1.5, rel=1e-15)


def test_series_validation(known30):
    with pytest.raises(ValueError):
        build_series(SurvivorList(10, []))
    with pytest.raises(ValueError):
        build_series(known30, alphas=())
    with pytest.raises(ValueError, match="n\\(k\\) > k"):
        build_series([5, 6, 3])  # n(3) = 3 violates n(k) > k
    with pytest.raises(ValueError):
        build_series([1])


def test_csv_shape(known30):
    csv = emit_csv(build_series(known30, alphas=(1.5,)))
    lines = csv.strip().splitlines()
    assert lines[0] == "k,n_k,inv_log_k,ratio_1.5"
    assert len(lines) == 30  # header + 29 data rows (k >= 2)
    k4 = next(line for line in lines[1:] if line.startswith("4,"))
    assert k4.split(",")[1] == "9"


def test_csv_deterministic(known30):
    series = build_series(known30)
    assert emit_csv(series) == emit_csv(series)


def test_fit_pure_power_law():
    data = [k**1.3 for k in range(1, 401)]
    fit = fit_exponent(data, k_min=10)
    assert fit.slope == pytest.approx(1.3, abs=1e-9)
    assert (fit.k_min, fit.k_max) == (10, 400)


def test_fit_linear():
    data = [7.0 * k for k in range(1, 301)]
    fit = fit_exponent(data, k_min=10)
    assert fit.slope == pytest.approx(1.0, abs=1e-9)


def test_fit_rescaling_invariance():
    data = [k**1.4 for k in range(1, 301)]
    base = fit_exponent(data, k_min=20).slope
    scaled = fit_exponent([13.0 * v for v in data], k_min=20).slope
    assert scaled == pytest.approx(base, abs=1e-9)


def test_fit_insufficient_data(known30):
    with pytest.raises(ValueError, match="at least"):
        fit_exponent(known30, k_min=100)
    with pytest.raises(ValueError):
        fit_exponent([2, 3, 5], k_min=1)


def test_fit_on_real_survivors(oracle100k):
    from xmap.search import SearchConfig, forward_search

    survivors = forward_search(SearchConfig(100_000), oracle100k).survivors
    for k, n_k in enumerate(survivors, start=1):
        assert n_k > k
    fit = fit_exponent(survivors, k_min=50)
    assert 1.0 < fit.slope < 1.7


def test_tail_ratios_bracketed(oracle100k):
    # the k >= 100 tail stays inside fixed bounds: n(k)/k^1.5 bounded above,
    # n(k)/k^1.2 bounded below (measured extremes 5.22 and 20.19)
    from xmap.search import SearchConfig, forward_search

    survivors = forward_search(SearchConfig(100_000), oracle100k).survivors
    tail = [(k, n) for k, n in enumerate(survivors, start=1) if k >= 100]
    assert tail
    assert max(n / k**1.5 for k, n in tail) <= 8.0
    assert min(n / k**1.2 for k, n in tail) >= 10.0
