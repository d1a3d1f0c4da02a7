#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Batch baselines evaluated on the full active window, and the theoretical
approximation ratios of the streaming algorithms.
"""

# Standard libs
import logging
from dataclasses import dataclass
from typing import List, Sequence

# User-defined libs
from knapwin.algorithms.greedy import cost_effect_greedy
from knapwin.core.element import (
    Element,
    KnapsackSpec,
    SolutionSet,
    check_feasibility,
)
from knapwin.core.oracle import UtilityOracle
from knapwin.utils.errors import WindowCapExceededError
from knapwin.utils.raise_exception import raise_exception

LOGGER = logging.getLogger(__name__)

# Largest window accepted by the exhaustive search
BRUTE_FORCE_CAP = 25


def ceg(
    window: Sequence[Element], spec: KnapsackSpec, oracle: UtilityOracle
) -> SolutionSet:
    """
    CostEffectGreedy recomputed from scratch on the window: repeatedly adds
    the feasible element with the largest marginal gain per unit of its
    largest cost.

    Parameters
    ----------
    window : Sequence[Element]
        Elements of the active window
    spec : KnapsackSpec
        The d-knapsack constraint
    oracle : UtilityOracle
        Any oracle of the utility; its state is ignored
    """
    if len(window) == 0:
        raise_exception("CostEffectGreedy requires a nonempty window.", ValueError)
    return cost_effect_greedy(SolutionSet(spec.d), oracle.spawn(), window, spec)


def brute_force_opt(
    window: Sequence[Element],
    spec: KnapsackSpec,
    oracle: UtilityOracle,
    cap: int = BRUTE_FORCE_CAP,
) -> SolutionSet:
    """
    Exact maximizer of the utility over all feasible subsets of the window,
    enumerated depth-first. Branches that exceed a budget are cut, and ties
    are broken as for all other solutions.

    Raises
    ------
    WindowCapExceededError
        If the window holds more than cap elements
    """
    if len(window) > cap:
        raise_exception(
            f"Exhaustive search is limited to {cap} elements, received {len(window)}.",
            WindowCapExceededError,
        )
    elements: List[Element] = sorted(window, key=lambda e: e.ordinal)
    for element in elements:
        spec.validate_element(element)

    best = SolutionSet(spec.d)
    # Each entry: (next index to consider, partial solution, its oracle)
    stack = [(0, SolutionSet(spec.d), oracle.spawn())]
    while stack:
        index, partial, state = stack.pop()
        if partial.preferred_over(best):
            best = partial
        for position in range(index, len(elements)):
            element = elements[position]
            if not check_feasibility(partial.cost_totals, element, spec):
                continue
            child_state = state.clone()
            child = partial.copy()
            child.add(element, child_state.insert(element))
            stack.append((position + 1, child, child_state))
    return best.copy()


@dataclass(frozen=True)
class ApproxBound:
    """
    Approximation ratios guaranteed by KnapStream / KnapWindow and by
    KnapWindowPlus for given parameters.

    Parameters
    ----------
    lam : float
        Ratio lambda of the estimation grid
    beta : float
        Pruning ratio of KnapWindowPlus
    d : int
        Number of knapsacks
    delta : float
        Largest observed cost
    """

    lam: float
    beta: float
    d: int
    delta: float

    @property
    def eps(self) -> float:
        """min(delta + lambda, 0.5 + lambda)"""
        return min(self.delta + self.lam, 0.5 + self.lam)

    @property
    def eps_prime(self) -> float:
        """eps + beta"""
        return self.eps + self.beta

    @property
    def ks_bound(self) -> float:
        """(1 - eps) / (1 + d)"""
        return (1.0 - self.eps) / (1.0 + self.d)

    @property
    def kw_bound(self) -> float:
        """KnapWindow retains the ratio of KnapStream"""
        return self.ks_bound

    @property
    def kwp_bound(self) -> float:
        """(1 - eps - beta) / (2 (1 + d))"""
        return (1.0 - self.eps_prime) / (2.0 * (1.0 + self.d))

    def bound_for(self, algorithm: str) -> float:
        """Returns the guaranteed ratio of an algorithm name; 0 for baselines"""
        return {
            "ks": self.ks_bound,
            "kw": self.kw_bound,
            "kwplus": self.kwp_bound,
        }.get(algorithm, 0.0)
