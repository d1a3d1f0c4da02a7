#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Standard libs
import math
from types import SimpleNamespace

# Installed libs
import numpy as np
import pytest

# User-defined libs
from knapwin.algorithms import (
    ApproxBound,
    KnapWindowPlus,
    brute_force_opt,
    checkpoint_count_bound,
    kwp_process,
    kwp_process_batch,
    kwp_query,
    prunable_index,
)
from knapwin.core import Element, KnapsackSpec
from knapwin.utilities import ModularOracle
from knapwin.utils.errors import StreamOrderError


def _random_stream(rng, n, d=1):
    return [
        Element(i + 1, float(rng.uniform(0, 10)), rng.uniform(0.1, 0.6, size=d))
        for i in range(n)
    ]


@pytest.fixture(name="algorithm", scope="function")
def algorithm_fixture():
    """KnapWindowPlus over a window of 10 elements"""
    return KnapWindowPlus(ModularOracle(), KnapsackSpec(1), window_size=10, slide=1)


@pytest.mark.parametrize(
    "utilities, expected",
    [
        ([10.0, 9.5, 9.2], 1),
        ([10.0, 9.5, 8.9], -1),
        ([10.0, 9.0], -1),
        ([10.0, 5.0, 4.6, 4.6], 2),
        ([], -1),
    ],
)
def test_prunable_index(utilities, expected):
    """x_(i+1) goes when f[x_(i+2)] >= (1 - beta) f[x_i]"""
    assert prunable_index(utilities, 0.1) == expected


@pytest.mark.parametrize(
    "utilities, expected",
    [
        ([3.0, 2.0], 2),
        ([3.0, 2.0, 0.0], math.inf),
        ([1.0, 1.0, 1.0], 2),
        ([3.0, 1.0, 1.0], 6),
        # the expired oldest checkpoint may trail its successor
        ([1.0, 3.0, 1.0], 6),
    ],
)
def test_checkpoint_count_bound(utilities, expected):
    """ceil(2 log_(1 / (1 - beta)) theta) + 2 with beta = 0.5"""
    assert checkpoint_count_bound(utilities, 0.5) == expected


def test_prune_restarts_after_each_deletion(algorithm):
    """Deletions cascade until no sandwiched checkpoint remains"""
    algorithm.checkpoints = [
        SimpleNamespace(start=start, utility=utility)
        for start, utility in [(1, 10.0), (4, 9.5), (7, 9.2), (9, 9.1)]
    ]
    assert algorithm.prune() == [4, 7]
    assert algorithm.checkpoint_starts == [1, 9]
    assert algorithm.prune() == []


def test_single_element(algorithm):
    """One element yields itself"""
    element = Element(1, 2.0, [0.7])
    kwp_process(algorithm, element)
    result = kwp_query(algorithm)
    assert result.ordinals == [1]
    assert result.utility == 2.0
    assert algorithm.checkpoint_starts == [1]


def test_batch_order_is_checked_before_acceptance(algorithm):
    """A bad slide leaves the algorithm untouched"""
    stream = _random_stream(np.random.default_rng(42), 3)
    with pytest.raises(StreamOrderError, match="out of order"):
        kwp_process_batch(algorithm, [stream[0], stream[2]])
    assert algorithm.t == 0 and algorithm.num_checkpoints == 0
    algorithm.process_batch([])
    assert algorithm.t == 0
    with pytest.raises(ValueError, match="Query before any element"):
        algorithm.query()


def test_one_checkpoint_per_slide():
    """A checkpoint is created at the first ordinal of every slide"""
    stream = _random_stream(np.random.default_rng(42), 12)
    algorithm = KnapWindowPlus(
        ModularOracle(), KnapsackSpec(1), window_size=100, slide=4, beta=0.001
    )
    for begin in range(0, 12, 4):
        algorithm.process_batch(stream[begin : begin + 4])
    assert set(algorithm.checkpoint_starts) <= {1, 5, 9}
    assert algorithm.checkpoint_starts[0] == 1 and algorithm.checkpoint_starts[-1] == 9


def test_expiry_keeps_one_checkpoint_before_the_window(algorithm):
    """Only the oldest checkpoint may start before t'"""
    for element in _random_stream(np.random.default_rng(42), 60):
        algorithm.process(element)
        starts = algorithm.checkpoint_starts
        assert len(starts) == 1 or starts[1] >= algorithm.window_start
        assert starts[-1] == algorithm.t


@pytest.mark.parametrize("seed", range(5))
def test_query_dominates_governing_instance(seed):
    """Post-processing never loses utility and has no side effects"""
    rng = np.random.default_rng(seed)
    spec = KnapsackSpec(2)
    algorithm = KnapWindowPlus(
        ModularOracle(), spec, window_size=15, slide=3, eta=5, debug=True
    )
    stream = _random_stream(rng, 60, 2)
    for begin in range(0, 60, 3):
        algorithm.process_batch(stream[begin : begin + 3])
        checkpoints = algorithm.checkpoints
        governing = (
            checkpoints[0]
            if checkpoints[0].start >= algorithm.window_start
            else checkpoints[1]
        )
        before = (algorithm.utilities, algorithm.stored_elements)
        result = algorithm.query()
        assert result.utility >= governing.solution().utility - 1e-12
        assert spec.is_feasible(result)
        assert min(result.ordinals) >= algorithm.window_start
        assert before == (algorithm.utilities, algorithm.stored_elements)
        for instance in checkpoints:
            for candidate in instance.candidates.values():
                assert len(candidate.buffer) <= 5


@pytest.mark.parametrize("seed", range(8))
def test_approximation_against_exhaustive_search(seed):
    """Every slide meets (1 - eps - beta) / (2 (1 + d)) of the window optimum"""
    rng = np.random.default_rng(seed)
    d = 1 + seed % 2
    spec = KnapsackSpec(d)
    stream = _random_stream(rng, 30, d)
    bound = ApproxBound(
        lam=0.1, beta=0.1, d=d, delta=max(e.delta for e in stream)
    ).kwp_bound
    algorithm = KnapWindowPlus(ModularOracle(), spec, window_size=8, slide=1, debug=True)
    for element in stream:
        algorithm.process(element)
        window = algorithm.active_elements()
        optimum = brute_force_opt(window, spec, ModularOracle())
        assert algorithm.query().utility >= bound * optimum.utility - 1e-9
        assert algorithm.num_checkpoints <= checkpoint_count_bound(
            algorithm.utilities, algorithm.beta
        )


def test_stored_elements_count_each_element_once():
    """Elements shared by candidates or checkpoints are counted once"""
    rng = np.random.default_rng(3)
    stream = [
        Element(i + 1, float(rng.uniform(0, 10)), [float(rng.uniform(0.02, 0.08))])
        for i in range(500)
    ]
    algorithm = KnapWindowPlus(ModularOracle(), KnapsackSpec(1), window_size=50, slide=5)
    shared = []
    for begin in range(0, 500, 5):
        algorithm.process_batch(stream[begin : begin + 5])
        per_candidate = [
            candidate.stored_ordinals
            for instance in algorithm.checkpoints
            for candidate in instance.candidates.values()
        ]
        union = set().union(
            *(instance.stored_ordinals for instance in algorithm.checkpoints)
        )
        assert algorithm.stored_elements == len(union)
        assert union <= set(range(algorithm.checkpoints[0].start, algorithm.t + 1))
        shared.append(sum(len(s) for s in per_candidate) > algorithm.stored_elements)
    assert any(shared)
