#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Domain model shared by all streaming algorithms: stream elements, the
d-knapsack constraint, and solution sets.
"""

# Standard libs
import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, List, Optional, Sequence, Tuple

# Installed libs
import numpy as np

# User-defined libs
from knapwin.utils.errors import (
    CostRangeError,
    DimensionMismatchError,
)
from knapwin.utils.numeric_utils import FEASIBILITY_TOLERANCE
from knapwin.utils.raise_exception import raise_exception

LOGGER = logging.getLogger(__name__)


def _as_cost_vector(costs: Sequence[float]) -> np.ndarray:
    vec = np.array(costs, dtype=float).reshape(-1)
    if vec.size == 0:
        raise_exception("An element must carry at least one cost.", CostRangeError)
    if not np.all(np.isfinite(vec)) or np.any(vec <= 0.0) or np.any(vec > 1.0):
        raise_exception(
            f"Costs {vec.tolist()} lie outside the admissible range (0, 1].",
            CostRangeError,
        )
    vec.setflags(write=False)
    return vec


@dataclass(frozen=True, eq=False)
class Element:
    """
    One stream item: its arrival index, an opaque payload interpreted by the
    utility oracle, and one cost per knapsack.
    """

    ordinal: int
    payload: Any
    costs: np.ndarray

    def __post_init__(self):
        if int(self.ordinal) != self.ordinal or self.ordinal < 1:
            raise_exception(
                f"Element ordinal must be a positive integer, received {self.ordinal}.",
                ValueError,
            )
        object.__setattr__(self, "ordinal", int(self.ordinal))
        object.__setattr__(self, "costs", _as_cost_vector(self.costs))

    def __repr__(self):
        return f"Element(ordinal={self.ordinal}, costs={self.costs.tolist()})"

    def __eq__(self, other):
        return isinstance(other, Element) and other.ordinal == self.ordinal

    def __hash__(self):
        return hash(self.ordinal)

    @property
    def d(self) -> int:
        """Number of knapsacks the element is priced in"""
        return self.costs.size

    @property
    def gamma(self) -> float:
        """Smallest cost of the element over all knapsacks"""
        return float(self.costs.min())

    @property
    def delta(self) -> float:
        """Largest cost of the element over all knapsacks"""
        return float(self.costs.max())


@dataclass(frozen=True)
class KnapsackSpec:
    """
    The d-knapsack constraint. Budgets are normalized to 1, so a set is
    feasible iff its total cost in every knapsack is at most 1.
    """

    d: int
    budgets: Tuple[float, ...] = field(default=None)

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise_exception(
                f"Knapsack dimension must be a positive integer, received {self.d}.",
                ValueError,
            )
        if self.budgets is None:
            object.__setattr__(self, "budgets", (1.0,) * self.d)
        if len(self.budgets) != self.d or any(b != 1.0 for b in self.budgets):
            raise_exception(
                f"Budgets must be {self.d} entries normalized to 1.0, received {self.budgets}.",
                ValueError,
            )

    def zero_totals(self) -> np.ndarray:
        """Returns the cost totals of the empty set"""
        return np.zeros(self.d)

    def validate_element(self, element: Element) -> None:
        """Raises DimensionMismatchError if the element is not priced in d knapsacks"""
        if element.d != self.d:
            raise_exception(
                f"Element {element.ordinal} carries {element.d} costs, "
                f"but the knapsack constraint has d = {self.d}.",
                DimensionMismatchError,
            )

    def is_feasible(self, elements: Iterable[Element]) -> bool:
        """Checks feasibility of a set by recomputing all d cost sums"""
        totals = self.zero_totals()
        for element in elements:
            self.validate_element(element)
            totals += element.costs
        return bool(np.all(totals <= 1.0 + FEASIBILITY_TOLERANCE))


def check_feasibility(
    totals: np.ndarray, element: Element, spec: KnapsackSpec
) -> bool:
    """
    Returns True iff adding the element to a set with the given cost totals
    keeps every knapsack within its budget.

    Parameters
    ----------
    totals : np.ndarray
        Running cost totals of the set, one entry per knapsack
    element : Element
        The element to be added
    spec : KnapsackSpec
        The d-knapsack constraint

    Raises
    ------
    DimensionMismatchError
        If totals, element costs, and spec.d do not agree in length
    """
    if len(totals) != spec.d or element.d != spec.d:
        raise_exception(
            f"Dimension mismatch: totals have {len(totals)} entries, element "
            f"{element.ordinal} has {element.d} costs, and d = {spec.d}.",
            DimensionMismatchError,
        )
    return bool(np.all(totals + element.costs <= 1.0 + FEASIBILITY_TOLERANCE))


def cost_effectiveness(element: Element, oracle_gain: float) -> float:
    """Marginal gain per unit of the element's largest cost"""
    return oracle_gain / element.delta


class SolutionSet:
    """
    A feasible set of elements kept in insertion order, along with its
    running cost totals and cached utility.
    """

    __slots__ = ("members", "cost_totals", "utility")

    def __init__(self, d: int, members: Optional[List[Element]] = None, utility=0.0):
        self.members: List[Element] = []
        self.cost_totals = np.zeros(d)
        self.utility = float(utility)
        for element in members or []:
            self.members.append(element)
            self.cost_totals += element.costs

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, element: Element):
        return any(m.ordinal == element.ordinal for m in self.members)

    def __repr__(self):
        return f"SolutionSet(ordinals={self.ordinals}, utility={self.utility:.6g})"

    @property
    def d(self) -> int:
        """Number of knapsacks"""
        return self.cost_totals.size

    @property
    def ordinals(self) -> List[int]:
        """Ordinals of the members in insertion order"""
        return [m.ordinal for m in self.members]

    def add(self, element: Element, gain: float) -> None:
        """Appends an element whose marginal gain has already been computed"""
        self.members.append(element)
        self.cost_totals = self.cost_totals + element.costs
        self.utility += gain

    def copy(self) -> "SolutionSet":
        """Returns an independent snapshot"""
        new = SolutionSet.__new__(SolutionSet)
        new.members = list(self.members)
        new.cost_totals = self.cost_totals.copy()
        new.utility = self.utility
        return new

    def preferred_over(self, other: "SolutionSet") -> bool:
        """True if this solution ranks strictly ahead of the other one"""
        if self.utility != other.utility:
            return self.utility > other.utility
        return self.ranking_key() < other.ranking_key()

    def ranking_key(self) -> tuple:
        """
        Sort key implementing the deterministic preference between solutions:
        higher utility first, then smaller cardinality, then lexicographically
        smaller member ordinals.
        """
        return (-self.utility, len(self.members), sorted(self.ordinals))


def best_solution(solutions: Iterable[SolutionSet], d: int) -> SolutionSet:
    """Returns the preferred solution; the empty set if there are none"""
    best = None
    for sol in solutions:
        if best is None or sol.preferred_over(best):
            best = sol
    return best if best is not None else SolutionSet(d)
