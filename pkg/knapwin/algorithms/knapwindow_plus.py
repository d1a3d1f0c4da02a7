#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
KnapWindowPlus: sliding-window selection through an index of KnapStream
checkpoints that is pruned by utility, with buffered post-processing at
query time.
"""

# Standard libs
import logging
import math
from functools import partial
from typing import Dict, Iterable, List, Sequence

# Installed libs
from pyomo.common.config import document_kwargs_from_configdict

# User-defined libs
from knapwin.algorithms.buffer import CandidateBuffer
from knapwin.algorithms.greedy import cost_effect_greedy
from knapwin.algorithms.knapstream import KnapStream, process_instances
from knapwin.algorithms.knapwindow import SlidingWindowBase
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


def prunable_index(utilities: Sequence[float], beta: float) -> int:
    """
    Returns the position i + 1 of the first checkpoint that can be pruned,
    i.e. the smallest i with utilities[i + 2] >= (1 - beta) utilities[i];
    -1 if no checkpoint can be pruned.
    """
    for i in range(len(utilities) - 2):
        if utilities[i + 2] >= (1.0 - beta) * utilities[i]:
            return i + 1
    return -1


def checkpoint_count_bound(utilities: Sequence[float], beta: float) -> float:
    """
    Upper bound ceil(2 log(theta) / log(1 / (1 - beta))) + 2 on the size of a pruned
    index, where theta is the ratio between the two oldest checkpoint
    utilities and the newest one. After pruning, utilities fall by (1 - beta)
    every two checkpoints along two interleaved chains starting at x_1 and
    x_2, so theta takes the larger of f[x_1] and f[x_2]; f[x_2] may exceed
    f[x_1] once x_1 has expired. The bound is infinite when the newest
    checkpoint has zero utility.
    """
    if len(utilities) < 3:
        return len(utilities)
    if utilities[-1] <= 0.0:
        return math.inf
    theta = max(utilities[0], utilities[1]) / utilities[-1]
    if theta <= 1.0:
        return 2
    return math.ceil(2.0 * log_base(theta, 1.0 / (1.0 - beta))) + 2


class KnapWindowPlus(SlidingWindowBase):
    """
    Creates one KnapStream checkpoint per slide and deletes checkpoints
    whose utility is sandwiched by neighbours of nearly equal utility.
    Every candidate keeps a bounded buffer of near-threshold elements,
    which is used by the cost-effective greedy post-processing of a query.
    """

    name = "kwplus"

    @document_kwargs_from_configdict(SlidingWindowBase.CONFIG)
    def __init__(self, oracle: UtilityOracle, spec: KnapsackSpec, **kwargs):
        super().__init__(oracle, spec, **kwargs)
        self.beta = self.config.beta
        self._buffer_factory = partial(
            CandidateBuffer, capacity=self.config.eta, alpha=self.config.alpha
        )
        LOGGER.info(
            f"KnapWindowPlus with W = {self.window_size}, T = {self.slide}, "
            f"beta = {self.beta}, alpha = {self.config.alpha}, "
            f"eta = {self.config.eta}, lambda = {self.config.lam}."
        )

    @property
    def utilities(self) -> List[float]:
        """Utilities f[x_i, t] of the live checkpoints, oldest first"""
        return [cp.utility for cp in self.checkpoints]

    def _new_instance(self, start: int) -> KnapStream:
        return KnapStream(
            self._prototype,
            self.spec,
            lam=self.config.lam,
            start=start,
            buffer_factory=self._buffer_factory,
            debug=self.config.debug,
        )

    def process(self, element: Element) -> None:
        """Observes a single element as a slide of its own"""
        self.process_batch([element])

    def process_batch(self, elements: Iterable[Element]) -> None:
        """
        Observes the elements of one slide: creates a checkpoint at the
        first element of the slide, drops checkpoints that are expired and
        not needed to cover t', feeds the slide to every checkpoint, and
        prunes the index.
        """
        elements = list(elements)
        if not elements:
            return
        for offset, element in enumerate(elements):
            if element.ordinal != self.t + 1 + offset:
                raise_exception(
                    f"Element {element.ordinal} is out of order in a slide "
                    f"starting after {self.t}.",
                    StreamOrderError,
                )
            self.spec.validate_element(element)
        accepted = [(element, self._accept(element)) for element in elements]

        self.checkpoints.append(self._new_instance(elements[0].ordinal))
        LOGGER.debug(f"Created checkpoint at {elements[0].ordinal}.")

        window_start = self.window_start
        while len(self.checkpoints) >= 2 and self.checkpoints[1].start < window_start:
            expired = self.checkpoints.pop(0)
            LOGGER.debug(f"Dropped checkpoint {expired.start} at t = {self.t}.")

        for element, self_utility in accepted:
            process_instances(self.checkpoints, element, self_utility, self._executor)

        self.prune()
        if self.config.debug:
            self.check_invariants()

    def prune(self) -> List[int]:
        """
        Deletes checkpoints x_{i+1} with f[x_{i+2}] >= (1 - beta) f[x_i]
        until no such checkpoint remains.

        Returns
        -------
        list of int
            Start ordinals of the deleted checkpoints
        """
        deleted = []
        position = prunable_index(self.utilities, self.beta)
        while position > 0:
            pruned = self.checkpoints.pop(position)
            deleted.append(pruned.start)
            LOGGER.debug(f"Pruned checkpoint {pruned.start} at t = {self.t}.")
            position = prunable_index(self.utilities, self.beta)
        return deleted

    def query(self) -> SolutionSet:
        """
        Returns a solution for the current window.

        The governing checkpoint is the oldest one if it starts within the
        window, and the second oldest otherwise. On a copy of it, every
        candidate is completed greedily from its buffer; when the oldest
        checkpoint has expired, the non-expired elements of its matching
        candidate are added to the pool. A greedy completion of {v_max}
        from all pools is considered as well.
        """
        self._require_elements()
        window_start = self.window_start
        if self.checkpoints[0].start >= window_start:
            governing, donor = self.checkpoints[0].clone(), None
        else:
            governing, donor = self.checkpoints[1].clone(), self.checkpoints[0]

        results = [governing.best_so_far]
        union_pool: Dict[int, Element] = {}
        for exponent, candidate in governing.candidates.items():
            pool = list(candidate.buffer) if candidate.buffer is not None else []
            if donor is not None and exponent in donor.candidates:
                donor_candidate = donor.candidates[exponent]
                donor_elements = list(donor_candidate.solution)
                if donor_candidate.buffer is not None:
                    donor_elements.extend(donor_candidate.buffer)
                pool.extend(
                    element
                    for element in donor_elements
                    if element.ordinal >= window_start
                    and element not in candidate.solution
                    and check_feasibility(candidate.solution.cost_totals, element, self.spec)
                )
            for element in pool:
                union_pool.setdefault(element.ordinal, element)
            results.append(
                cost_effect_greedy(candidate.solution, candidate.oracle, pool, self.spec)
            )

        if governing.v_max is not None:
            seed_oracle = self._prototype.spawn()
            seed = SolutionSet(self.spec.d)
            seed.add(governing.v_max, seed_oracle.insert(governing.v_max))
            results.append(
                cost_effect_greedy(seed, seed_oracle, union_pool.values(), self.spec)
            )
        return best_solution(results, self.spec.d).copy()

    def check_invariants(self) -> None:
        """Verifies the checkpoint index; raises CorruptedStateError on violation"""
        starts = self.checkpoint_starts
        if starts != sorted(starts) or len(set(starts)) != len(starts):
            raise_exception(
                f"Checkpoint starts {starts} are not strictly increasing.",
                CorruptedStateError,
            )
        if len(starts) >= 2 and starts[1] < self.window_start:
            raise_exception(
                f"More than one checkpoint of {starts} starts before t' = {self.window_start}.",
                CorruptedStateError,
            )
        if prunable_index(self.utilities, self.beta) > 0:
            raise_exception(
                f"Checkpoint utilities {self.utilities} still admit pruning.",
                CorruptedStateError,
            )
        if len(starts) > checkpoint_count_bound(self.utilities, self.beta):
            raise_exception(
                f"{len(starts)} live checkpoints exceed the bound "
                f"{checkpoint_count_bound(self.utilities, self.beta)}.",
                CorruptedStateError,
            )


def kwp_process(algorithm: KnapWindowPlus, element: Element) -> None:
    """Functional form of KnapWindowPlus.process"""
    algorithm.process(element)


def kwp_process_batch(algorithm: KnapWindowPlus, elements: Iterable[Element]) -> None:
    """Functional form of KnapWindowPlus.process_batch"""
    algorithm.process_batch(elements)


def kwp_query(algorithm: KnapWindowPlus) -> SolutionSet:
    """Functional form of KnapWindowPlus.query"""
    return algorithm.query()
