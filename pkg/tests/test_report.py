import json
import random

from hypothesis import given
from hypothesis import strategies as st

from relstsp.report import EXACT, Report, index_tuples, make_rng, pattern_key, stratified


def test_records_and_counts():
    rep = Report("demo")
    rep.add("x", {"a": 1}, True)
    rep.add("x", {"a": 2}, False, detail="boom")
    rep.add("y", {}, True, EXACT)
    rep.skip("z", {}, "not applicable")
    assert not rep.ok and len(rep.failures) == 1
    assert rep.entries() == ["x", "y", "z"]
    assert rep.count("x") == 1 and rep.count("x", "fail") == 1 and rep.count(exactness=EXACT) == 1
    assert rep.summary()["z"] == {"pass": 0, "fail": 0, "skip": 1}
    lines = rep.to_jsonl().splitlines()
    assert json.loads(lines[1]) == {
        "suite": "demo", "entry": "x", "binding": {"a": 2}, "result": "fail", "exactness": "image-level", "detail": "boom",
    }
    assert lines[0] == '{"binding":{"a":1},"entry":"x","exactness":"image-level","result":"pass","suite":"demo"}'


def test_rng_is_mt19937_from_seed():
    a, b = make_rng(5), random.Random(5)
    assert [a.random() for _ in range(3)] == [b.random() for _ in range(3)]
    # pinned so a platform or version drift in seeding shows up here
    assert make_rng(1).randrange(10**6) == 140891


def test_pattern_key():
    assert pattern_key((1, -1)) != pattern_key((1, -2))
    assert pattern_key((1, 2)) == pattern_key((2, 3))
    assert pattern_key((1, 2)) != pattern_key((1, -2))


@given(st.integers(0, 10**9), st.sampled_from([3, 4]))
def test_stratified_covers_strata(seed, l):
    pred = lambda i, j: i != j
    strata = {pattern_key(t) for t in index_tuples(l, 2, pred)}
    got = stratified(random.Random(seed), l, 2, pred, 2 * len(strata))
    assert len(got) == 2 * len(strata)
    assert {pattern_key(t) for t in got} == strata
    assert stratified(random.Random(seed), l, 2, pred, 7) == stratified(random.Random(seed), l, 2, pred, 7)


def test_stratified_empty():
    assert stratified(random.Random(0), 3, 1, lambda i: False, 5) == []
