#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Standard libs
import logging

# User-defined libs
from knapwin.core.element import Element
from knapwin.core.oracle import UtilityOracle

LOGGER = logging.getLogger(__name__)


class ModularOracle(UtilityOracle):
    """
    Additive utility f(S) = sum of u(v) over S, where the payload of every
    element is its nonnegative value u(v). Modular functions are the simplest
    monotone submodular functions and serve as toy and benchmark utilities.
    """

    name = "modular"

    def __init__(self):
        super().__init__()
        self.members = set()

    def gain(self, element: Element) -> float:
        if element.ordinal in self.members:
            return 0.0
        return float(element.payload)

    def _insert(self, element: Element) -> float:
        realized = self.gain(element)
        self.members.add(element.ordinal)
        return realized

    def clone(self) -> "ModularOracle":
        new = ModularOracle()
        new.members = set(self.members)
        new.utility = self.utility
        return new

    def spawn(self) -> "ModularOracle":
        return ModularOracle()

    def reset(self) -> None:
        self.members = set()
        self.utility = 0.0
