import pytest

import gcr


def test_unipotent_limit():
    r = gcr.limit(gcr.rationals(), [1, -1], matrix=[[1, 1], [0, 1]])
    assert r["verdict"] == "limit exists"
    assert r["limit"] == [["1", "0"], ["0", "1"]]
    assert list(r)[-1] == "timing_ms"

    r = gcr.limit(gcr.rationals(), [-1, 1], matrix=[[1, 1], [0, 1]])
    assert r["verdict"] == "no limit"
    assert r["limit"] is None


def test_check_reports_witness_for_transvection():
    r = gcr.check(gcr.rationals(), [[[1, 0, 1], [0, 1, 0], [0, 0, 1]]])
    assert r["verdict"] == "not completely reducible"
    assert r["witness_verified"] is True
    assert r["decomposition"]["socle_series"][1]["dimension"] == 2


def test_adjoint_sl2_over_f3_is_irreducible():
    gens = [[[1, 2, 1], [0, 1, 0], [0, 1, 1]], [[1, 0, 0], [2, 1, 2], [2, 0, 1]]]
    r = gcr.check(gcr.prime_field(3), gens)
    assert r["verdict"] == "completely reducible"
    assert r["decomposition"]["factor_dimensions"] == [3]


def test_optimize_simple_roots():
    r = gcr.optimize([[1, -1, 0], [0, 1, -1]], box=4)
    assert r["optimal_cocharacter"] == [1, 0, -1]
    assert r["min_norm_point"] == ["1/2", "0", "-1/2"]
    assert r["certificate_verified"] and r["oracle"]["agrees"]


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError, match="/field/p: modulus not prime"):
        gcr.check(gcr.prime_field(4), [[[1]]])


def test_budget_exceeded():
    with pytest.raises(gcr.BudgetExceeded):
        gcr.limit(gcr.prime_field(3), [1, 0, -1], generators=[[[1, 0, 0], [0, 1, 0], [0, 0, 1]]],
                  ru_search=True, budget=2)


def test_deterministic_across_threads():
    gens = [[[1, 1, 0], [0, 1, 0], [0, 1, 1]], [[1, 0, 0], [1, 1, 0], [1, 0, 1]]]
    a = gcr.check(gcr.prime_field(2), gens, threads=1)
    b = gcr.check(gcr.prime_field(2), gens, threads=3)
    a.pop("timing_ms")
    b.pop("timing_ms")
    assert a == b


def test_selftest_passes():
    code, report = gcr.selftest()
    assert code == 0
    assert report["failed"] == 0
    assert len(report["cases"]) == len(gcr.default_corpus())
