#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Behavioral contract shared by all utility oracles. An oracle holds the
incremental state of f(S) for one set S; algorithms keep one oracle per
candidate solution and clone them whenever a candidate is copied.
"""

# Standard libs
import abc
import logging
from typing import Iterable

# User-defined libs
from knapwin.core.element import Element

LOGGER = logging.getLogger(__name__)


class UtilityOracle(abc.ABC):
    """
    Incremental state of a monotone submodular utility function f.

    Subclasses implement gain, insert, clone, and reset; utility must hold
    f(S) for the set S of all elements inserted since the last reset.
    """

    name = "abstract"

    def __init__(self):
        self.utility = 0.0

    @abc.abstractmethod
    def gain(self, element: Element) -> float:
        """Returns the marginal gain f(S + v) - f(S); the state is not changed"""

    @abc.abstractmethod
    def _insert(self, element: Element) -> float:
        """Adds the element to the state and returns the realized gain"""

    @abc.abstractmethod
    def clone(self) -> "UtilityOracle":
        """Returns an independent copy of the state"""

    @abc.abstractmethod
    def reset(self) -> None:
        """Returns the state to the empty set"""

    def spawn(self) -> "UtilityOracle":
        """Returns a new oracle with the same parameters and an empty state"""
        fresh = self.clone()
        fresh.reset()
        return fresh

    def insert(self, element: Element) -> float:
        """
        Adds the element to the state.

        Returns
        -------
        float
            The marginal gain realized by the insertion
        """
        realized = self._insert(element)
        self.utility += realized
        return realized

    def evaluate(self, elements: Iterable[Element]) -> float:
        """
        Returns f of the given set, computed on a fresh copy; the state of
        this oracle is not changed.
        """
        scratch = self.spawn()
        for element in elements:
            scratch.insert(element)
        return scratch.utility

    def self_utility(self, element: Element) -> float:
        """Returns f({v})"""
        return self.spawn().gain(element)
