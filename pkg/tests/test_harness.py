import json
import random

import pytest

from klschow import harness
from klschow.homology import is_cohen_macaulay
from klschow.poset import from_json, is_eulerian


def test_random_graded_posets_are_bounded_and_graded():
    rng = random.Random(0)
    for _ in range(50):
        P = harness.random_graded_poset(rng, max_rank=6)
        assert P.is_bounded()
        assert 2 <= harness._rank(P) <= 6


def test_cm_generator_only_yields_cohen_macaulay():
    rows = harness.generate("random-graded", 20, seed=3)
    for inst in rows:
        P, _ = from_json(inst["poset"])
        assert is_cohen_macaulay(P)


def test_eulerian_generator_only_yields_eulerian():
    for inst in harness.generate("random-eulerian", 20, seed=4):
        P, _ = from_json(inst["poset"])
        assert is_eulerian(P)[0]


def test_bruhat_generator_lists_all_nontrivial_s3_intervals():
    inst = harness.generate("bruhat", None, seed=0, n=3)
    # 19 comparable pairs in S3 minus the 6 trivial ones
    assert len(inst) == 13


def test_unknown_names():
    with pytest.raises(harness.HarnessError):
        harness.run("9.9")
    with pytest.raises(harness.HarnessError):
        harness.generate("nope", 1, 0)
    with pytest.raises(harness.HarnessError):
        harness.run("1.4", generator="random-graded", count=1)


def test_same_seed_same_ledger():
    a = harness.ledger_csv(harness.run("1.2", count=15, seed=9).rows)
    b = harness.ledger_csv(harness.run("1.2", count=15, seed=9).rows)
    c = harness.ledger_csv(harness.run("1.2", count=15, seed=10).rows)
    assert a == b and a != c


def test_parallel_ledger_matches_serial():
    serial = harness.run("1.3", count=8, seed=1, jobs=1)
    parallel = harness.run("1.3", count=8, seed=1, jobs=2)
    assert serial.rows == parallel.rows


def test_instance_hash_is_stable():
    inst = {"kind": "bruhat", "group": "S3", "u": "e", "v": "s1"}
    assert harness.instance_hash(inst) == harness.instance_hash(dict(reversed(list(inst.items()))))
    assert len(harness.instance_hash(inst)) == 16


def test_counterexamples_are_written_as_artifacts(tmp_path, monkeypatch):
    real = harness.evaluate

    def fake(conj_id, instance):
        row = real(conj_id, instance)
        row["counterexample"] = True
        return row

    monkeypatch.setattr(harness, "evaluate", fake)
    res = harness.run("1.5", count=2, seed=0, artifacts_dir=str(tmp_path))
    assert res.counterexamples == 2 and len(res.artifacts) == 2
    data = json.loads(open(res.artifacts[0]).read())
    assert data["conjecture"] == "1.5" and data["instance"]["kind"] == "bruhat"


def test_evaluate_verdicts():
    inst = {"kind": "bruhat", "group": "S4", "u": "", "v": "1 2 3 2 1"}
    row = harness.evaluate("1.5", inst)
    assert row["poly"] == [1, 16, 39, 16, 1]
    assert row["real_rooted"] and not row["counterexample"]
    # the Eulerian kernel on a Bruhat interval gives the order complex h-polynomial
    assert harness.evaluate("1.3", inst)["poly"] == [1, 14, 34, 14, 1]
    row = harness.evaluate("1.4", {"kind": "bruhat", "group": "S4", "u": "", "v": "1 2 3 2 1"})
    assert row["gamma_positive"]
