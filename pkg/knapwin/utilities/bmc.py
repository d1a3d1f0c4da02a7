#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Budgeted maximum coverage: each element is a set of items and f(S) is the
(optionally weighted) number of items covered by the union of S.
"""

# Standard libs
import logging
from typing import Hashable, Iterable, Mapping, Optional

# User-defined libs
from knapwin.core.element import Element
from knapwin.core.oracle import UtilityOracle
from knapwin.utils.raise_exception import raise_exception

LOGGER = logging.getLogger(__name__)


class BmcOracle(UtilityOracle):
    """
    Incremental (weighted) item coverage.

    Parameters
    ----------
    item_weights : Mapping, optional
        Weight of every item; items without an entry weigh 1
    """

    name = "bmc"

    def __init__(self, item_weights: Optional[Mapping[Hashable, float]] = None):
        super().__init__()
        if item_weights is not None and any(w < 0 for w in item_weights.values()):
            raise_exception("Item weights must be nonnegative.", ValueError)
        self.item_weights = item_weights
        self.covered = set()

    def _weight(self, item) -> float:
        if self.item_weights is None:
            return 1.0
        return float(self.item_weights.get(item, 1.0))

    def gain(self, element: Element) -> float:
        return sum(self._weight(item) for item in element.payload if item not in self.covered)

    def _insert(self, element: Element) -> float:
        realized = self.gain(element)
        self.covered.update(element.payload)
        return realized

    def clone(self) -> "BmcOracle":
        new = BmcOracle(self.item_weights)
        new.covered = set(self.covered)
        new.utility = self.utility
        return new

    def spawn(self) -> "BmcOracle":
        return BmcOracle(self.item_weights)

    def reset(self) -> None:
        self.covered = set()
        self.utility = 0.0


def bmc_utility(
    item_sets: Iterable[Iterable[Hashable]],
    item_weights: Optional[Mapping[Hashable, float]] = None,
) -> float:
    """Evaluates the coverage of a family of item sets from scratch"""
    union = set()
    for items in item_sets:
        union.update(items)
    if item_weights is None:
        return float(len(union))
    return float(sum(item_weights.get(item, 1.0) for item in union))


def bmc_gain(state: BmcOracle, element: Element) -> float:
    """Functional form of BmcOracle.gain"""
    return state.gain(element)
