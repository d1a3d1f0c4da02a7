#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
KnapStream: single-pass thresholding over an append-only stream under a
d-knapsack constraint. One instance is the building block of every
checkpoint kept by the sliding-window algorithms.
"""

# Standard libs
import logging
import math
from concurrent.futures import Executor
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

# User-defined libs
from knapwin.algorithms.buffer import CandidateBuffer, buffer_add
from knapwin.core.element import (
    Element,
    KnapsackSpec,
    SolutionSet,
    best_solution,
    check_feasibility,
)
from knapwin.core.oracle import UtilityOracle
from knapwin.utils.errors import CorruptedStateError, StreamOrderError
from knapwin.utils.numeric_utils import log_base
from knapwin.utils.raise_exception import raise_exception

LOGGER = logging.getLogger(__name__)


def estimation_exponents(lower: float, upper: float, lam: float) -> range:
    """
    Returns the integers l with lower <= (1 + lam)^l <= upper.

    The exponents are first obtained through logarithms and then corrected
    with exact power comparisons, so that boundary values are neither
    dropped nor duplicated by rounding.
    """
    if lower <= 0.0 or upper < lower:
        return range(0)
    base = 1.0 + lam
    low = math.ceil(log_base(lower, base))
    while base ** (low - 1) >= lower:
        low -= 1
    while base**low < lower:
        low += 1
    high = math.floor(log_base(upper, base))
    while base ** (high + 1) <= upper:
        high += 1
    while base**high > upper:
        high -= 1
    return range(low, high + 1)


class Candidate:
    """
    One estimation phi = (1 + lam)^l of the optimum, the solution built
    for it, an oracle holding the state of that solution, and an optional
    buffer of rejected elements.
    """

    __slots__ = ("exponent", "phi", "d", "solution", "oracle", "buffer")

    def __init__(
        self,
        exponent: int,
        lam: float,
        d: int,
        oracle: UtilityOracle,
        buffer: Optional[CandidateBuffer] = None,
    ):
        self.exponent = exponent
        self.phi = (1.0 + lam) ** exponent
        self.d = d
        self.solution = SolutionSet(d)
        self.oracle = oracle
        self.buffer = buffer

    def __repr__(self):
        return f"Candidate(l={self.exponent}, phi={self.phi:.6g}, {self.solution})"

    def threshold(self, element: Element) -> float:
        """Acceptance threshold delta(v) * phi / (1 + d)"""
        return element.delta * self.phi / (1.0 + self.d)

    def clone(self) -> "Candidate":
        """Returns an independent copy"""
        new = Candidate.__new__(Candidate)
        new.exponent = self.exponent
        new.phi = self.phi
        new.d = self.d
        new.solution = self.solution.copy()
        new.oracle = self.oracle.clone()
        new.buffer = self.buffer.copy() if self.buffer is not None else None
        return new

    @property
    def stored_ordinals(self) -> Set[int]:
        """Ordinals of the elements held by the solution and the buffer"""
        stored = set(self.solution.ordinals)
        if self.buffer is not None:
            stored.update(self.buffer.ordinals)
        return stored


class KnapStream:
    """
    Streaming algorithm for monotone submodular maximization under a
    d-knapsack constraint, over all elements with ordinal >= start.

    Parameters
    ----------
    oracle : UtilityOracle
        Any oracle of the utility function; its state is ignored
    spec : KnapsackSpec
        The d-knapsack constraint
    lam : float, default = 0.1
        Ratio of the geometric grid of OPT estimations
    start : int, default = 1
        Smallest ordinal this instance accepts
    buffer_factory : Callable[[], CandidateBuffer], optional
        If given, every candidate keeps a buffer created by this factory
    debug : bool, default = False
        If True, all structural invariants are verified after each element
    """

    def __init__(
        self,
        oracle: UtilityOracle,
        spec: KnapsackSpec,
        lam: float = 0.1,
        start: int = 1,
        buffer_factory: Optional[Callable[[], CandidateBuffer]] = None,
        debug: bool = False,
    ):
        self.spec = spec
        self.lam = lam
        self.start = start
        self.buffer_factory = buffer_factory
        self.debug = debug
        self._prototype = oracle.spawn()

        self.candidates: Dict[int, Candidate] = {}
        self.lower = 0.0  # m: f({v}) of the element that set M
        self.upper = 0.0  # M: largest f({v}) / gamma(v) seen
        self.v_max: Optional[Element] = None
        self.v_max_utility = 0.0
        self.gamma_seen = math.inf
        self.best_so_far = SolutionSet(spec.d)
        self.num_processed = 0
        self.last_ordinal: Optional[int] = None

    def __repr__(self):
        return (
            f"KnapStream(start={self.start}, processed={self.num_processed}, "
            f"candidates={len(self.candidates)}, utility={self.utility:.6g})"
        )

    @property
    def d(self) -> int:
        """Number of knapsacks"""
        return self.spec.d

    @property
    def utility(self) -> float:
        """Utility of the best solution retained so far"""
        return self.best_so_far.utility

    @property
    def exponents(self) -> List[int]:
        """Exponents of the live OPT estimations in increasing order"""
        return sorted(self.candidates)

    @property
    def stored_ordinals(self) -> Set[int]:
        """Ordinals of the elements referenced by candidates, buffers and the retained best"""
        stored = set(self.best_so_far.ordinals)
        if self.v_max is not None:
            stored.add(self.v_max.ordinal)
        for candidate in self.candidates.values():
            stored.update(candidate.stored_ordinals)
        return stored

    @property
    def stored_elements(self) -> int:
        """Number of distinct elements the instance keeps in memory"""
        return len(self.stored_ordinals)

    def candidate_bound(self) -> int:
        """Upper bound ceil(log_{1+lam}((1 + d) / gamma)) + 1 on the number of candidates"""
        if not math.isfinite(self.gamma_seen):
            return 0
        return math.ceil(log_base((1.0 + self.d) / self.gamma_seen, 1.0 + self.lam)) + 1

    def self_utility(self, element: Element) -> float:
        """Returns f({v})"""
        return self._prototype.gain(element)

    def _next_bounds(
        self, element: Element, self_utility: float
    ) -> Tuple[float, float, bool]:
        """Bounds (m, M) after observing the element, and whether v_max changes"""
        new_vmax = self.v_max is None or self_utility > self.v_max_utility
        effectiveness = self_utility / element.gamma
        if effectiveness > self.upper:
            return self_utility, effectiveness, new_vmax
        return self.lower, self.upper, new_vmax

    def _grid(self, lower: float, upper: float) -> range:
        if lower > upper * (1.0 + self.d):
            raise_exception(
                f"Instance {self.start} has inconsistent bounds m = {lower} > "
                f"M(1 + d) = {upper * (1.0 + self.d)}.",
                CorruptedStateError,
            )
        return estimation_exponents(lower, upper * (1.0 + self.d), self.lam)

    def update_bounds(self, element: Element, self_utility: Optional[float] = None):
        """
        Folds an element into the bounds m and M and into v_max.

        Returns
        -------
        tuple of float
            The updated bounds (m, M)
        """
        if self_utility is None:
            self_utility = self.self_utility(element)
        self.lower, self.upper, new_vmax = self._next_bounds(element, self_utility)
        if new_vmax:
            self.v_max = element
            self.v_max_utility = self_utility
        self.gamma_seen = min(self.gamma_seen, element.gamma)
        return self.lower, self.upper

    def refresh_grid(self) -> List[int]:
        """
        Aligns the candidates with the grid of exponents implied by the
        current bounds. Dropped candidates are folded into best_so_far
        before deletion; new candidates start empty.

        Returns
        -------
        list of int
            Exponents of the live candidates
        """
        grid = self._grid(self.lower, self.upper)
        self._apply_grid(grid)
        return self.exponents

    def _apply_grid(self, grid: range) -> None:
        for exponent in [l for l in self.candidates if l not in grid]:
            dropped = self.candidates.pop(exponent)
            if dropped.solution.preferred_over(self.best_so_far):
                self.best_so_far = dropped.solution.copy()
        for exponent in grid:
            if exponent not in self.candidates:
                buffer = self.buffer_factory() if self.buffer_factory else None
                self.candidates[exponent] = Candidate(
                    exponent, self.lam, self.d, self._prototype.spawn(), buffer
                )

    def process(self, element: Element, self_utility: Optional[float] = None) -> None:
        """
        Observes one element.

        All oracle evaluations happen before any state is changed, so that
        an oracle failure leaves the instance untouched.

        Parameters
        ----------
        element : Element
            Element with ordinal >= start
        self_utility : float, optional
            f({v}) if already known

        Raises
        ------
        StreamOrderError
            If the ordinal precedes the start of the instance
        DimensionMismatchError
            If the element is not priced in d knapsacks
        """
        if element.ordinal < self.start:
            raise_exception(
                f"Element {element.ordinal} precedes the start {self.start} of the instance.",
                StreamOrderError,
            )
        self.spec.validate_element(element)

        try:
            if self_utility is None:
                self_utility = self.self_utility(element)
            lower, upper, new_vmax = self._next_bounds(element, self_utility)
            grid = self._grid(lower, upper)
            gains = [
                (
                    exponent,
                    self.candidates[exponent].oracle.gain(element)
                    if exponent in self.candidates
                    else self_utility,
                )
                for exponent in grid
            ]
        except CorruptedStateError:
            raise
        except Exception:
            LOGGER.warning(
                f"Oracle evaluation of element {element.ordinal} failed in the "
                f"instance starting at {self.start}; the instance is unchanged."
            )
            raise

        self.lower, self.upper = lower, upper
        if new_vmax:
            self.v_max = element
            self.v_max_utility = self_utility
        self.gamma_seen = min(self.gamma_seen, element.gamma)
        self._apply_grid(grid)

        for exponent, gain in gains:
            candidate = self.candidates[exponent]
            if gain >= candidate.threshold(element) and check_feasibility(
                candidate.solution.cost_totals, element, self.spec
            ):
                candidate.solution.add(element, candidate.oracle.insert(element))
            elif candidate.buffer is not None:
                buffer_add(candidate, element, self.spec, gain)

        previous = self.best_so_far.utility
        best = best_solution(
            [self.best_so_far, self._singleton()]
            + [c.solution for c in self.candidates.values()],
            self.d,
        )
        if best is not self.best_so_far:
            self.best_so_far = best.copy()

        self.num_processed += 1
        self.last_ordinal = element.ordinal
        if self.debug:
            if self.best_so_far.utility < previous:
                raise_exception(
                    f"best_so_far of instance {self.start} decreased from "
                    f"{previous} to {self.best_so_far.utility}.",
                    CorruptedStateError,
                )
            self.check_invariants()

    def process_all(self, elements: Iterable[Element]) -> None:
        """Observes a sequence of elements"""
        for element in elements:
            self.process(element)

    def _singleton(self) -> SolutionSet:
        if self.v_max is None:
            return SolutionSet(self.d)
        return SolutionSet(self.d, [self.v_max], utility=self.v_max_utility)

    def solution(self) -> SolutionSet:
        """
        Returns a copy of the preferred set among best_so_far, all live
        candidates, and the singleton {v_max}.
        """
        best = best_solution(
            [self.best_so_far, self._singleton()]
            + [c.solution for c in self.candidates.values()],
            self.d,
        )
        return best.copy()

    def clone(self, start: Optional[int] = None) -> "KnapStream":
        """
        Returns an independent copy of the instance. A smaller start lets the
        copy observe elements that precede the original start.
        """
        new = KnapStream.__new__(KnapStream)
        new.spec = self.spec
        new.lam = self.lam
        new.start = self.start if start is None else start
        new.buffer_factory = self.buffer_factory
        new.debug = self.debug
        new._prototype = self._prototype
        new.candidates = {l: c.clone() for l, c in self.candidates.items()}
        new.lower = self.lower
        new.upper = self.upper
        new.v_max = self.v_max
        new.v_max_utility = self.v_max_utility
        new.gamma_seen = self.gamma_seen
        new.best_so_far = self.best_so_far.copy()
        new.num_processed = self.num_processed
        new.last_ordinal = self.last_ordinal
        return new

    def check_invariants(self) -> None:
        """
        Verifies the structural invariants of the instance; raises
        CorruptedStateError on the first violation.
        """
        expected = list(self._grid(self.lower, self.upper))
        if self.exponents != expected:
            raise_exception(
                f"Instance {self.start} holds exponents {self.exponents}, "
                f"but the bounds imply {expected}.",
                CorruptedStateError,
            )
        if len(self.candidates) > self.candidate_bound():
            raise_exception(
                f"Instance {self.start} holds {len(self.candidates)} candidates, "
                f"more than the bound {self.candidate_bound()}.",
                CorruptedStateError,
            )
        for candidate in self.candidates.values():
            if not self.spec.is_feasible(candidate.solution):
                raise_exception(
                    f"Candidate {candidate.exponent} of instance {self.start} "
                    f"exceeds a budget: totals {candidate.solution.cost_totals}.",
                    CorruptedStateError,
                )
            if candidate.buffer is not None and len(candidate.buffer) > candidate.buffer.capacity:
                raise_exception(
                    f"Buffer of candidate {candidate.exponent} holds "
                    f"{len(candidate.buffer)} elements.",
                    CorruptedStateError,
                )
        if self.best_so_far.utility < max(
            [c.solution.utility for c in self.candidates.values()] + [0.0]
        ):
            raise_exception(
                f"best_so_far of instance {self.start} is worse than a live candidate.",
                CorruptedStateError,
            )


def ks_process(instance: KnapStream, element: Element) -> None:
    """Functional form of KnapStream.process"""
    instance.process(element)


def ks_solution(instance: KnapStream) -> SolutionSet:
    """Functional form of KnapStream.solution"""
    return instance.solution()


def process_instances(
    instances: Sequence[KnapStream],
    element: Element,
    self_utility: float,
    executor: Optional[Executor] = None,
) -> None:
    """
    Feeds one element to several independent instances, optionally through
    a thread pool. The first exception raised by an instance is propagated.
    """
    if executor is None or len(instances) < 2:
        for instance in instances:
            instance.process(element, self_utility)
        return
    futures = [
        executor.submit(instance.process, element, self_utility) for instance in instances
    ]
    for future in futures:
        future.result()


def ks_update_bounds(instance: KnapStream, element: Element):
    """Functional form of KnapStream.update_bounds"""
    return instance.update_bounds(element)


def ks_refresh_grid(instance: KnapStream) -> List[int]:
    """Functional form of KnapStream.refresh_grid"""
    return instance.refresh_grid()
