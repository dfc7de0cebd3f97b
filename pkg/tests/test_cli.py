import json

import pytest

from xmap.cli import main

from helpers import FIRST_30_SURVIVORS


@pytest.fixture(autouse=True)
def no_cache_env(monkeypatch):
    monkeypatch.delenv("XMAP_CACHE", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_x(capsys):
    code, out, _ = run(capsys, "x", "21")
    assert code == 0
    assert out == "Pi=10 C=22 X=9\n"


def test_orbit_dies(capsys):
    code, out, _ = run(capsys, "orbit", "7")
    assert code == 0
    assert out == "7 13 25 4 1 0 DIES\n"


def test_orbit_survives(capsys):
    code, out, _ = run(capsys, "orbit", "11")
    assert code == 0
    assert out == "11 21 9 SURVIVES\n"


def test_orbit_budget_exit(capsys):
    code, out, err = run(capsys, "orbit", "7", "--budget", "2")
    assert code == 2
    assert out == "7 13 25 BUDGET_EXCEEDED\n"
    assert err.startswith("error: budget-exceeded:")


def test_search_forward(capsys):
    code, out, _ = run(capsys, "search", "--max", "25")
    assert code == 0
    assert out == "1 2\n2 3\n3 5\n4 9\n5 11\n6 21\n"


def test_search_both_methods(capsys):
    code, out, _ = run(capsys, "search", "--max", "600", "--method", "both")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 30
    values = [int(line.split()[1]) for line in lines]
    assert values == FIRST_30_SURVIVORS


@pytest.mark.parametrize("n_max", [10**3, 10**4, 10**5])
def test_search_both_succeeds_at_scale(capsys, n_max):
    code, out, _ = run(capsys, "search", "--max", str(n_max), "--method", "both")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) >= 30
    assert lines[0] == "1 2"


def test_search_methods_agree_bytewise(capsys):
    _, fwd, _ = run(capsys, "search", "--max", "600", "--no-filter")
    _, pre, _ = run(capsys, "search", "--max", "600", "--method", "preimage")
    assert fwd == pre


def test_search_output_file(capsys, tmp_path):
    out_file = tmp_path / "survivors.txt"
    code, out, _ = run(capsys, "search", "--max", "25", "-o", str(out_file))
    assert code == 0
    assert out == ""
    assert out_file.read_text() == "1 2\n2 3\n3 5\n4 9\n5 11\n6 21\n"


def test_search_cache_round_trip(capsys, tmp_path):
    cache_file = tmp_path / "cache.txt"
    code, out1, _ = run(capsys, "search", "--max", "1000", "--cache", str(cache_file))
    assert code == 0 and cache_file.exists()
    code, out2, _ = run(capsys, "search", "--max", "1000", "--cache", str(cache_file))
    assert code == 0
    assert out1 == out2


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    cache_file = tmp_path / "envcache.txt"
    monkeypatch.setenv("XMAP_CACHE", str(cache_file))
    code, _, _ = run(capsys, "orbit", "7")
    assert code == 0
    assert cache_file.exists()
    assert "7 D" in cache_file.read_text()


def test_malformed_cache_rejected(capsys, tmp_path):
    cache_file = tmp_path / "bad.txt"
    cache_file.write_text("abc S\n")
    code, _, err = run(capsys, "search", "--max", "25", "--cache", str(cache_file))
    assert code == 1
    assert "line 1" in err


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--max", "600")
    assert code == 0
    assert out == "survivors=30 primes=109 max=600\n"


def test_preimage(capsys):
    code, out, _ = run(capsys, "preimage", "21")
    assert code == 0
    assert out == "11 prime_half\n57 biprime_pair 3 19\n85 biprime_pair 5 17\n"


def test_tree_dot(capsys):
    code, out, _ = run(capsys, "tree", "--max", "25")
    assert code == 0
    assert out.startswith("digraph survivors {")
    assert '"11" -> "21";' in out
    assert '"21" -> "9";' in out


def test_tree_json(capsys):
    code, out, _ = run(capsys, "tree", "--max", "25", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert {r["value"] for r in doc["roots"]} == {2, 3, 5, 9}


def test_chain(capsys):
    code, out, _ = run(capsys, "chain", "7")
    assert code == 0
    assert out == "7,2,7 13\n"


def test_chain_scan(capsys):
    code, out, _ = run(capsys, "chain-scan", "--max", "11")
    assert code == 0
    assert out.splitlines()[0] == "p,length,members"
    assert out.splitlines()[1] == "2,3,2 3 5"
    assert len(out.splitlines()) == 6


def test_scaling(capsys, tmp_path):
    fit_file = tmp_path / "fit.txt"
    code, out, err = run(
        capsys, "scaling", "--max", "600", "--alphas", "1.5", "--kmin", "5",
        "--fit-output", str(fit_file),
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,n_k,inv_log_k,ratio_1.5"
    assert len(lines) == 30
    assert fit_file.read_text().startswith("slope=")


def test_scaling_fit_skipped_when_short(capsys):
    code, out, err = run(capsys, "scaling", "--max", "600")
    assert code == 0  # CSV still produced; default k_min needs more survivors
    assert "fit: skipped" in err


def test_verify_lemmas(capsys):
    code, out, _ = run(capsys, "verify-lemmas", "--max", "600")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6
    assert all(": ok " in line for line in lines)


def test_verify_lemmas_json(capsys):
    code, out, _ = run(capsys, "verify-lemmas", "--max", "600", "--format", "json")
    assert code == 0
    reports = json.loads(out)
    assert [r["lemma_id"] for r in reports] == [
        "lemma1", "lemma2", "lemma3", "lemma4", "criteria", "negativity",
    ]
    assert all(r["violations"] == [] for r in reports)


def test_usage_errors(capsys):
    code, _, err = run(capsys, "bogus-command")
    assert code == 1
    assert err.startswith("error: usage:")
    code, _, _ = run(capsys, "search")  # missing --max
    assert code == 1


def test_overflow_exit(capsys):
    code, _, err = run(capsys, "x", str(2**63))
    assert code == 2
    assert err.startswith("error: overflow:")


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert out.startswith("xmap ")
