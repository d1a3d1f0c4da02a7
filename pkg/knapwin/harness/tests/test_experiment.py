#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Installed libs
import pytest

# User-defined libs
from knapwin.algorithms import KnapStream
from knapwin.core import KnapsackSpec
from knapwin.harness import (
    Experiment,
    generate,
    generate_records,
    read_metrics,
    run_experiment,
    write_records,
)
from knapwin.utilities import ModularOracle
from knapwin.utils.errors import WindowCapExceededError

VALUES = '{"n": 60, "family": "values", "costs": "iid_uniform(0.1,0.4)"}'


def _without_timings(rows):
    return [(r.t, r.utility, r.size, r.checkpoints, r.stored_elements) for r in rows]


@pytest.mark.parametrize("algorithm", ["ks", "kw", "kwplus", "ceg"])
def test_run_is_deterministic(algorithm):
    """Same stream and seed give the same rows, apart from timings"""
    options = dict(
        algorithm=algorithm, utility="modular", generator=VALUES, window_size=12, slide=3
    )
    first, second = run_experiment(**options), run_experiment(**options)
    assert [row.t for row in first.rows] == list(range(3, 61, 3))
    assert _without_timings(first.rows) == _without_timings(second.rows)
    assert first.summary.slides == 20


def test_exhaustive_search_dominates():
    """Per-slide optima bound every algorithm from above"""
    options = dict(utility="modular", generator=VALUES, window_size=12, slide=2)
    optimum = run_experiment(algorithm="brute", **options).rows
    for algorithm in ("kw", "kwplus", "ceg"):
        rows = run_experiment(algorithm=algorithm, **options).rows
        assert all(
            row.utility <= best.utility + 1e-9 for row, best in zip(rows, optimum)
        )
    assert all(row.checkpoints == 0 and row.stored_elements <= 12 for row in optimum)


def test_single_growing_window_equals_knapstream():
    """T = 1 and W = n reproduce one KnapStream run over the stream"""
    elements = generate(VALUES, seed=4)
    result = run_experiment(
        elements, algorithm="kw", utility="modular", window_size=len(elements), slide=1
    )
    reference = KnapStream(ModularOracle(), KnapsackSpec(1), lam=0.1)
    reference.process_all(elements)
    assert result.last_solution.ordinals == reference.solution().ordinals
    assert result.rows[-1].utility == reference.solution().utility


def test_metrics_file(tmp_path):
    """Rows are written to the output path"""
    out = tmp_path / "metrics.csv"
    result = run_experiment(
        algorithm="kwplus",
        utility="modular",
        generator=VALUES,
        window_size=10,
        slide=5,
        output_path=str(out),
    )
    rows = read_metrics(out)
    assert [row.t for row in rows] == [row.t for row in result.rows]
    assert [row.utility for row in rows] == pytest.approx([row.utility for row in result.rows])


def test_input_file_and_coverage(tmp_path):
    """Token streams from a file with weights estimated from the stream"""
    path = tmp_path / "tokens.jsonl"
    write_records(generate_records({"n": 40, "family": "tokens", "vocabulary": 30}, seed=9), path)
    result = run_experiment(
        algorithm="kwplus",
        utility="coverage",
        input_path=str(path),
        window_size=20,
        slide=4,
        debug=True,
    )
    assert len(result.rows) == 10
    assert all(row.utility > 0 for row in result.rows)

    vocabulary = tmp_path / "vocabulary.tsv"
    vocabulary.write_text("w0\t0.5\nw1\t0.25\n", encoding="utf-8")
    weighted = run_experiment(
        algorithm="kw",
        utility="coverage",
        input_path=str(path),
        window_size=20,
        slide=4,
        vocabulary=str(vocabulary),
        binary_words=True,
    )
    assert len(weighted.rows) == 10


def test_vectors_with_threads():
    """IVM streams with a thread pool for the checkpoint updates"""
    result = run_experiment(
        algorithm="kw",
        utility="ivm",
        generator='{"n": 30, "family": "vectors", "dim": 3}',
        window_size=10,
        slide=2,
        max_workers=2,
    )
    assert len(result.rows) == 15
    assert result.summary.max_checkpoints <= 5


def test_empty_stream():
    """An empty stream yields no rows"""
    result = run_experiment(
        algorithm="kwplus", utility="modular", generator='{"n": 0, "family": "values"}', window_size=5
    )
    assert result.rows == [] and result.summary.slides == 0


@pytest.mark.parametrize(
    "options, error, match",
    [
        (dict(algorithm="brute", window_size=30), WindowCapExceededError, "--window 25"),
        (dict(window_size=10, input_path="stream.jsonl"), ValueError, "Exactly one"),
        (dict(window_size=10, generator=None), ValueError, "Exactly one"),
        (dict(window_size=5, slide=6), ValueError, "exceeds the window size"),
        (dict(), ValueError, "window size W must be specified"),
        (dict(window_size=5, algorithm="greedy"), ValueError, ""),
    ],
)
def test_invalid_experiments(options, error, match):
    """Configurations that cannot run are refused up front"""
    options = {"generator": VALUES, **options}
    with pytest.raises(error, match=match):
        Experiment(**options)
