import pytest

from reasm.errors import ValidationError
from reasm.verify import SUITES, _Recorder, run_suites


def test_suite_names():
    assert set(SUITES) == {"fixtures", "beta_equals_gamma", "roundtrips",
                           "bin_can", "balance_lemmas", "dp_vs_brute"}


def test_unknown_suite_rejected():
    with pytest.raises(ValidationError, match="unknown suite"):
        run_suites(["nope"])


def test_recorder_counts_past_the_detail_cap():
    rec = _Recorder("demo")
    for i in range(9):
        rec.expect(False, f"bad {i}")
    rec.expect(True, "good")
    res = rec.result()
    assert res.checks == 10 and res.failures == 9 and not res.ok
    assert res.detail.endswith("; ...")
    assert res.detail.count(";") == 5


def test_small_deterministic_run():
    a = run_suites(["bin_can"], seed=3, trials=10)[0]
    b = run_suites(["bin_can"], seed=3, trials=10)[0]
    assert a == b and a.ok
    assert a.to_json()["suite"] == "bin_can"
