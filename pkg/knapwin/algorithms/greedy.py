#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Cost-effective greedy completion of a partial solution from a pool of
elements.
"""

# Standard libs
import heapq
import logging
from typing import Dict, Iterable

# User-defined libs
from knapwin.core.element import (
    Element,
    KnapsackSpec,
    SolutionSet,
    check_feasibility,
    cost_effectiveness,
)
from knapwin.core.oracle import UtilityOracle

LOGGER = logging.getLogger(__name__)


def _distinct_pool(solution: SolutionSet, pool: Iterable[Element]) -> Dict[int, Element]:
    members = set(solution.ordinals)
    distinct = {}
    for element in pool:
        if element.ordinal not in members:
            distinct.setdefault(element.ordinal, element)
    return distinct


def cost_effect_greedy(
    solution: SolutionSet,
    oracle: UtilityOracle,
    pool: Iterable[Element],
    spec: KnapsackSpec,
    lazy: bool = True,
) -> SolutionSet:
    """
    Repeatedly adds the feasible pool element with the largest marginal gain
    per unit of its largest cost, until no feasible pool element remains.
    Ties are broken toward the smaller ordinal.

    Parameters
    ----------
    solution : SolutionSet
        The partial solution; it is extended in place
    oracle : UtilityOracle
        Oracle whose state corresponds to the partial solution; it is
        extended in place
    pool : Iterable[Element]
        Elements that may be added; duplicates and members are skipped
    spec : KnapsackSpec
        The d-knapsack constraint
    lazy : bool, default = True
        If True, stale cost-effectiveness values are kept in a heap and only
        re-evaluated when they reach the top. This relies on marginal gains
        never increasing as the solution grows.

    Returns
    -------
    SolutionSet
        The extended solution
    """
    remaining = _distinct_pool(solution, pool)
    if not lazy:
        while remaining:
            best_key, best = None, None
            for ordinal in sorted(remaining):
                element = remaining[ordinal]
                if not check_feasibility(solution.cost_totals, element, spec):
                    continue
                key = (-cost_effectiveness(element, oracle.gain(element)), ordinal)
                if best_key is None or key < best_key:
                    best_key, best = key, element
            if best is None:
                break
            del remaining[best.ordinal]
            solution.add(best, oracle.insert(best))
        return solution

    # Entries are (-cost effectiveness, ordinal, round of evaluation, element)
    heap = [
        (-cost_effectiveness(element, oracle.gain(element)), ordinal, 0, element)
        for ordinal, element in remaining.items()
    ]
    heapq.heapify(heap)
    current_round = 0
    while heap:
        neg_ce, ordinal, evaluated, element = heapq.heappop(heap)
        # Costs only accumulate, so an infeasible element never becomes
        # feasible again
        if not check_feasibility(solution.cost_totals, element, spec):
            continue
        if evaluated == current_round:
            solution.add(element, oracle.insert(element))
            current_round += 1
            continue
        heapq.heappush(
            heap,
            (
                -cost_effectiveness(element, oracle.gain(element)),
                ordinal,
                current_round,
                element,
            ),
        )
    return solution
