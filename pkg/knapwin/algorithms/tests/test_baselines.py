#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Standard libs
from itertools import combinations

# Installed libs
import numpy as np
import pytest

# User-defined libs
from knapwin.algorithms import BRUTE_FORCE_CAP, ApproxBound, brute_force_opt, ceg
from knapwin.core import Element, KnapsackSpec
from knapwin.utilities import IvmOracle, ModularOracle, ivm_utility
from knapwin.utils.errors import WindowCapExceededError


@pytest.fixture(name="toy_elements", scope="function")
def toy_elements_fixture():
    """Modular toy stream with values 3, 1, 2, 4"""
    return [
        Element(i + 1, value, [cost])
        for i, (value, cost) in enumerate(zip([3, 1, 2, 4], [0.6, 0.3, 0.5, 0.5]))
    ]


def test_ceg(toy_elements):
    """Greedy by cost-effectiveness from scratch"""
    spec = KnapsackSpec(1)
    result = ceg(toy_elements, spec, ModularOracle())
    assert sorted(result.ordinals) == [3, 4]
    assert result.utility == 6.0

    assert ceg(toy_elements[:1], spec, ModularOracle()).ordinals == [1]

    full = [Element(i + 1, value, [1.0]) for i, value in enumerate([2.0, 5.0, 3.0])]
    assert ceg(full, spec, ModularOracle()).ordinals == [2]

    with pytest.raises(ValueError, match="nonempty window"):
        ceg([], spec, ModularOracle())


def test_brute_force(toy_elements):
    """Exhaustive search over all feasible subsets"""
    spec = KnapsackSpec(1)
    result = brute_force_opt(toy_elements, spec, ModularOracle())
    assert sorted(result.ordinals) == [3, 4]
    assert result.utility == 6.0

    empty = brute_force_opt([], spec, ModularOracle())
    assert len(empty) == 0 and empty.utility == 0.0


def test_brute_force_second_knapsack_forbids_pairs():
    """With pairs infeasible the best singleton wins"""
    elements = [Element(i + 1, value, [0.1, 0.6]) for i, value in enumerate([1.0, 3.0, 2.0])]
    result = brute_force_opt(elements, KnapsackSpec(2), ModularOracle())
    assert result.ordinals == [2]
    assert result.utility == 3.0


def test_brute_force_cap():
    """Windows above the cap are refused"""
    elements = [Element(i + 1, 1.0, [0.5]) for i in range(BRUTE_FORCE_CAP + 1)]
    with pytest.raises(WindowCapExceededError, match="limited to 25 elements"):
        brute_force_opt(elements, KnapsackSpec(1), ModularOracle())


@pytest.mark.parametrize("seed", range(5))
def test_brute_force_matches_enumeration(seed):
    """Agrees with a plain enumeration of all subsets"""
    rng = np.random.default_rng(seed)
    spec = KnapsackSpec(2)
    elements = [
        Element(i + 1, float(rng.uniform(0, 10)), rng.uniform(0.1, 0.6, size=2))
        for i in range(8)
    ]
    best = 0.0
    for size in range(1, len(elements) + 1):
        for subset in combinations(elements, size):
            if spec.is_feasible(subset):
                best = max(best, sum(e.payload for e in subset))
    assert brute_force_opt(elements, spec, ModularOracle()).utility == pytest.approx(best)
    assert ceg(elements, spec, ModularOracle()).utility <= best + 1e-9


def test_baselines_on_ivm_elements():
    """Both baselines spawn fresh IVM oracles that infer the feature dimension"""
    rng = np.random.default_rng(7)
    points = rng.uniform(0.0, 1.0, size=(7, 3))
    window = [Element(i + 1, points[i], [0.3]) for i in range(7)]
    spec = KnapsackSpec(1)

    greedy = ceg(window, spec, IvmOracle())
    best = brute_force_opt(window, spec, IvmOracle())

    assert len(best) == 3
    assert best.utility == pytest.approx(
        ivm_utility([points[o - 1] for o in best.ordinals])
    )
    assert greedy.utility == pytest.approx(
        ivm_utility([points[o - 1] for o in greedy.ordinals])
    )
    assert greedy.utility <= best.utility + 1e-9

def test_approx_bound():
    """Guaranteed ratios for lambda = beta = 0.1, d = 1, delta = 0.6"""
    bound = ApproxBound(lam=0.1, beta=0.1, d=1, delta=0.6)
    assert bound.eps == pytest.approx(0.6)
    assert bound.eps_prime == pytest.approx(0.7)
    assert bound.ks_bound == pytest.approx(0.2)
    assert bound.kw_bound == bound.ks_bound
    assert bound.kwp_bound == pytest.approx(0.075)
    assert bound.bound_for("kwplus") == bound.kwp_bound
    assert bound.bound_for("ceg") == 0.0
    assert ApproxBound(lam=0.1, beta=0.1, d=2, delta=0.2).eps == pytest.approx(0.3)
