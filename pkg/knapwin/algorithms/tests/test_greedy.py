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
from knapwin.algorithms import cost_effect_greedy
from knapwin.core import Element, KnapsackSpec, SolutionSet
from knapwin.utilities import CoverageOracle, ModularOracle, WordWeightTable


@pytest.fixture(name="toy_elements", scope="function")
def toy_elements_fixture():
    """Modular toy stream with values 3, 1, 2, 4"""
    return [
        Element(i + 1, value, [cost])
        for i, (value, cost) in enumerate(zip([3, 1, 2, 4], [0.6, 0.3, 0.5, 0.5]))
    ]


@pytest.mark.parametrize("lazy", [True, False])
def test_toy_greedy(toy_elements, lazy):
    """Picks e4 (CE 8) then e3 (CE 4); e1 no longer fits"""
    solution = cost_effect_greedy(
        SolutionSet(1), ModularOracle(), toy_elements, KnapsackSpec(1), lazy=lazy
    )
    assert solution.ordinals == [4, 3]
    assert solution.utility == 6.0


def test_empty_pool():
    """Nothing to add"""
    solution = SolutionSet(1)
    assert cost_effect_greedy(solution, ModularOracle(), [], KnapsackSpec(1)) is solution
    assert len(solution) == 0


@pytest.mark.parametrize("lazy", [True, False])
def test_spare_budget(lazy):
    """Adds the CE 2.0 entry; the next one exceeds the budget"""
    spec = KnapsackSpec(1)
    oracle = ModularOracle()
    solution = SolutionSet(1)
    seed = Element(1, 1.0, [0.5])
    solution.add(seed, oracle.insert(seed))
    pool = [Element(2, 0.6, [0.3]), Element(3, 0.4, [0.4])]
    cost_effect_greedy(solution, oracle, pool, spec, lazy=lazy)
    assert solution.ordinals == [1, 2]
    assert solution.utility == pytest.approx(1.6)

    # A single element that cannot fit any more
    cost_effect_greedy(solution, oracle, [Element(4, 5.0, [0.5])], spec, lazy=lazy)
    assert solution.ordinals == [1, 2]


def test_members_and_duplicates_are_skipped():
    """Pool entries already in the solution or repeated are ignored"""
    spec = KnapsackSpec(1)
    oracle = ModularOracle()
    solution = SolutionSet(1)
    first = Element(1, 1.0, [0.2])
    solution.add(first, oracle.insert(first))
    second = Element(2, 1.0, [0.2])
    cost_effect_greedy(solution, oracle, [first, second, second], spec)
    assert solution.ordinals == [1, 2]
    assert solution.utility == 2.0


@pytest.mark.parametrize("seed", range(20))
def test_lazy_matches_eager(seed):
    """Lazy evaluation picks the same elements for submodular utilities"""
    rng = np.random.default_rng(seed)
    words = [f"w{i}" for i in range(15)]
    bags = [
        {str(w): int(rng.integers(1, 4)) for w in rng.choice(words, size=3, replace=False)}
        for _ in range(30)
    ]
    table = WordWeightTable.from_corpus(bags)
    pool = [
        Element(i + 1, bag, rng.uniform(0.05, 0.4, size=2)) for i, bag in enumerate(bags)
    ]
    spec = KnapsackSpec(2)
    lazy = cost_effect_greedy(SolutionSet(2), CoverageOracle(table), pool, spec, lazy=True)
    eager = cost_effect_greedy(SolutionSet(2), CoverageOracle(table), pool, spec, lazy=False)
    assert lazy.ordinals == eager.ordinals
    assert lazy.utility == pytest.approx(eager.utility)
    assert spec.is_feasible(lazy)
