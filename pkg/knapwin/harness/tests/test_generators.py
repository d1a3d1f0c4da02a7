#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Installed libs
import numpy as np
import pytest

# User-defined libs
from knapwin.harness import generate, generate_records, parse_generator_spec, write_records


def test_vectors_stream():
    """Five-dimensional features with U(0.02, 0.08) costs"""
    elements = generate({"n": 1000, "family": "vectors", "dim": 5}, seed=3)
    assert len(elements) == 1000
    assert [e.ordinal for e in elements[:3]] == [1, 2, 3]
    assert all(e.payload.shape == (5,) for e in elements)
    costs = np.array([e.costs[0] for e in elements])
    assert costs.min() >= 0.02 and costs.max() <= 0.08


def test_empty_stream():
    """n = 0 gives no elements"""
    assert generate({"n": 0}) == []


def test_same_seed_same_bytes(tmp_path):
    """Generation is reproducible down to the written file"""
    spec = '{"n": 50, "family": "tokens", "d": 2, "costs": "uniform_k(10);influence(10,0.2)"}'
    first, second, other = tmp_path / "a.jsonl", tmp_path / "b.jsonl", tmp_path / "c.jsonl"
    write_records(generate_records(spec, seed=5), first)
    write_records(generate_records(spec, seed=5), second)
    write_records(generate_records(spec, seed=6), other)
    assert first.read_bytes() == second.read_bytes()
    assert first.read_bytes() != other.read_bytes()


@pytest.mark.parametrize(
    "family, payload_type",
    [("tokens", dict), ("vectors", np.ndarray), ("items", frozenset), ("values", float)],
)
def test_families(family, payload_type):
    """Each family is read by its matching utility"""
    elements = generate({"n": 20, "family": family, "d": 2}, seed=1)
    assert len(elements) == 20
    assert all(isinstance(e.payload, payload_type) for e in elements)
    assert all(e.d == 2 for e in elements)


def test_tokens_carry_followers():
    """Token records have an author follower count"""
    records = generate_records({"n": 10, "family": "tokens", "vocabulary": 50}, seed=2)
    assert all(r.followers is not None and r.followers >= 0 for r in records)
    assert all(word.startswith("w") for r in records for word in r.payload)


def test_spec_from_file(tmp_path):
    """A spec that is not inline JSON is a file path"""
    path = tmp_path / "spec.json"
    path.write_text('{"n": 7, "family": "values", "high": 5.0}', encoding="utf-8")
    spec = parse_generator_spec(str(path))
    assert spec["n"] == 7 and spec["high"] == 5.0 and spec["low"] == 0.0
    assert spec["costs"] == "iid_uniform(0.02,0.08)"


@pytest.mark.parametrize(
    "spec, match",
    [
        ('{"n": 10, "family": "graphs"}', "Unknown generator family"),
        ('{"n": 10, "family": "vectors", "vocabulary": 5}', "Unknown keys"),
        ('{"n": -1}', "nonnegative integer"),
        ("{n: 1}", "not valid JSON"),
        ("[1, 2]", "must be a JSON object"),
    ],
)
def test_spec_errors(tmp_path, spec, match):
    """Invalid specifications are refused"""
    if not spec.startswith("{"):
        path = tmp_path / "spec.json"
        path.write_text(spec, encoding="utf-8")
        spec = str(path)
    with pytest.raises(ValueError, match=match):
        parse_generator_spec(spec)
