#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Bounded buffers of near-threshold elements kept next to every candidate
solution of a KnapWindowPlus checkpoint instance.
"""

# Standard libs
import heapq
import logging
from typing import Iterator, List, Optional, Tuple

# User-defined libs
from knapwin.core.element import (
    Element,
    KnapsackSpec,
    SolutionSet,
    check_feasibility,
    cost_effectiveness,
)

LOGGER = logging.getLogger(__name__)


class CandidateBuffer:
    """
    Min-heap of elements keyed by (cost-effectiveness at admission, ordinal),
    so that eviction removes the least cost-effective element first and
    breaks ties toward the older element.

    Parameters
    ----------
    capacity : int
        Maximum number eta of buffered elements
    alpha : float
        An element is admitted if its gain is at least alpha times the
        threshold of the candidate
    """

    __slots__ = ("capacity", "alpha", "_heap")

    def __init__(self, capacity: int = 20, alpha: float = 0.5):
        self.capacity = capacity
        self.alpha = alpha
        self._heap: List[Tuple[float, int, Element]] = []

    def __len__(self):
        return len(self._heap)

    def __iter__(self) -> Iterator[Element]:
        return (entry[2] for entry in self._heap)

    def __contains__(self, element: Element):
        return any(entry[1] == element.ordinal for entry in self._heap)

    def __repr__(self):
        return f"CandidateBuffer(ordinals={sorted(self.ordinals)}, capacity={self.capacity})"

    @property
    def ordinals(self) -> List[int]:
        """Ordinals of the buffered elements in heap order"""
        return [entry[1] for entry in self._heap]

    def copy(self) -> "CandidateBuffer":
        """Returns an independent copy"""
        new = CandidateBuffer(self.capacity, self.alpha)
        new._heap = list(self._heap)
        return new

    def admits(self, gain: float, threshold: float) -> bool:
        """Checks the admission rule gain >= alpha * threshold"""
        return gain >= self.alpha * threshold

    def push(self, element: Element, gain: float) -> None:
        """Adds an element without applying the admission rule or capacity"""
        heapq.heappush(
            self._heap,
            (cost_effectiveness(element, gain), element.ordinal, element),
        )

    def shrink(self, solution: SolutionSet, spec: KnapsackSpec) -> List[Element]:
        """
        Brings the buffer back within capacity. Elements that can no longer
        be added to the solution are purged first; then the least
        cost-effective elements are evicted while the capacity is exceeded.

        Returns
        -------
        list of Element
            The removed elements
        """
        removed = []
        if len(self._heap) <= self.capacity:
            return removed
        kept = []
        for entry in self._heap:
            if check_feasibility(solution.cost_totals, entry[2], spec):
                kept.append(entry)
            else:
                removed.append(entry[2])
        heapq.heapify(kept)
        self._heap = kept
        while len(self._heap) > self.capacity:
            removed.append(heapq.heappop(self._heap)[2])
        return removed


def buffer_add(
    candidate,
    element: Element,
    spec: KnapsackSpec,
    gain: Optional[float] = None,
) -> bool:
    """
    Offers an element that was rejected by a candidate solution to the
    candidate's buffer.

    Parameters
    ----------
    candidate : Candidate
        Candidate carrying solution, oracle, threshold, and buffer
    element : Element
        The rejected element
    spec : KnapsackSpec
        The d-knapsack constraint
    gain : float, optional
        Marginal gain of the element w.r.t. the candidate solution, if
        already known

    Returns
    -------
    bool
        True if the element is held by the buffer afterwards
    """
    buffer = candidate.buffer
    if buffer is None or element in candidate.solution:
        return False
    if gain is None:
        gain = candidate.oracle.gain(element)
    if not buffer.admits(gain, candidate.threshold(element)):
        return False

    buffer.push(element, gain)
    removed = buffer.shrink(candidate.solution, spec)
    return element not in removed
