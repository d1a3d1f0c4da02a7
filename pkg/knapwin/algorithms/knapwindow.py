#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
KnapWindow: sliding-window selection through KnapStream checkpoints that
are created at a fixed interval and expire with the window.
"""

# Standard libs
import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Deque, Iterable, List, Set, Tuple

# Installed libs
from pyomo.common.config import document_kwargs_from_configdict

# User-defined libs
from knapwin.algorithms.algorithm_options import (
    algorithm_config,
    default_interval,
    default_slide,
)
from knapwin.algorithms.knapstream import KnapStream, process_instances
from knapwin.core.element import Element, KnapsackSpec, SolutionSet
from knapwin.core.oracle import UtilityOracle
from knapwin.utils.errors import CorruptedStateError, StreamOrderError
from knapwin.utils.raise_exception import raise_exception

LOGGER = logging.getLogger(__name__)


class SlidingWindowBase:
    """
    Bookkeeping shared by the sliding-window algorithms: options, the
    active window, ordinal checks, and the optional thread pool.
    """

    CONFIG = algorithm_config()
    name = "base"

    @document_kwargs_from_configdict(CONFIG)
    def __init__(self, oracle: UtilityOracle, spec: KnapsackSpec, **kwargs):
        self.config = self.CONFIG(kwargs)
        if self.config.window_size is None:
            raise_exception("The window size W must be specified.", ValueError)
        self.spec = spec
        self.window_size = self.config.window_size
        self.slide = self.config.slide or default_slide(self.window_size)
        self._prototype = oracle.spawn()
        self.checkpoints: List[KnapStream] = []
        # Active elements with their self-utilities
        self.active: Deque[Tuple[Element, float]] = deque(maxlen=self.window_size)
        self.t = 0
        self._executor = None
        if self.config.max_workers > 0:
            self._executor = ThreadPoolExecutor(max_workers=self.config.max_workers)

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self.close()

    def close(self) -> None:
        """Shuts down the thread pool, if any"""
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    @property
    def window_start(self) -> int:
        """Smallest active ordinal t' = max(1, t - W + 1)"""
        return max(1, self.t - self.window_size + 1)

    @property
    def num_checkpoints(self) -> int:
        """Number of live checkpoint instances"""
        return len(self.checkpoints)

    @property
    def checkpoint_starts(self) -> List[int]:
        """Start ordinals of the live checkpoints in increasing order"""
        return [cp.start for cp in self.checkpoints]

    @property
    def stored_elements(self) -> int:
        """
        Number of distinct elements held by the checkpoint instances; an
        element kept by several candidates or checkpoints counts once
        """
        stored: Set[int] = set()
        for checkpoint in self.checkpoints:
            stored.update(checkpoint.stored_ordinals)
        return len(stored)

    def _new_instance(self, start: int) -> KnapStream:
        return KnapStream(
            self._prototype,
            self.spec,
            lam=self.config.lam,
            start=start,
            debug=self.config.debug,
        )

    def _accept(self, element: Element) -> float:
        """Checks order and dimension, advances t, and returns f({v})"""
        if element.ordinal != self.t + 1:
            raise_exception(
                f"Element {element.ordinal} arrived after {self.t}; ordinals must "
                "increase by one per element.",
                StreamOrderError,
            )
        self.spec.validate_element(element)
        self_utility = self._prototype.gain(element)
        self.t = element.ordinal
        self.active.append((element, self_utility))
        return self_utility

    def _require_elements(self) -> None:
        if self.t == 0:
            raise_exception("Query before any element was processed.", ValueError)

    def active_elements(self) -> List[Element]:
        """Elements of the current window in arrival order"""
        return [element for element, _ in self.active]


class KnapWindow(SlidingWindowBase):
    """
    Maintains one KnapStream checkpoint every L elements. Checkpoints that
    start before the window are dropped; a query post-processes the oldest
    surviving checkpoint with the active elements that precede it.
    """

    name = "kw"

    @document_kwargs_from_configdict(SlidingWindowBase.CONFIG)
    def __init__(self, oracle: UtilityOracle, spec: KnapsackSpec, **kwargs):
        super().__init__(oracle, spec, **kwargs)
        self.interval = self.config.interval or default_interval(
            self.window_size, self.slide
        )
        if self.interval > self.window_size:
            raise_exception(
                f"Checkpoint interval L = {self.interval} exceeds the window size "
                f"W = {self.window_size}.",
                ValueError,
            )
        LOGGER.info(
            f"KnapWindow with W = {self.window_size}, T = {self.slide}, "
            f"L = {self.interval}, lambda = {self.config.lam}."
        )

    def checkpoint_bound(self) -> int:
        """Upper bound ceil(W / L) + 1 on the number of live checkpoints"""
        return -(-self.window_size // self.interval) + 1

    def process(self, element: Element) -> None:
        """
        Observes the next element: creates a checkpoint at ordinals
        1, L + 1, 2L + 1, ..., drops expired checkpoints, and feeds the
        element to every live checkpoint.
        """
        self_utility = self._accept(element)
        if (self.t - 1) % self.interval == 0:
            self.checkpoints.append(self._new_instance(self.t))
            LOGGER.debug(f"Created checkpoint at {self.t}.")

        while self.checkpoints and self.checkpoints[0].start < self.window_start:
            expired = self.checkpoints.pop(0)
            LOGGER.debug(f"Dropped checkpoint {expired.start} at t = {self.t}.")

        process_instances(self.checkpoints, element, self_utility, self._executor)
        if self.config.debug:
            self.check_invariants()

    def process_batch(self, elements: Iterable[Element]) -> None:
        """Observes the elements of one slide in order"""
        for element in elements:
            self.process(element)

    def query(self) -> SolutionSet:
        """
        Returns a solution for the current window. If the oldest checkpoint
        starts after t', a copy of it also observes the active elements
        t', ..., start - 1; the live checkpoint is not changed.
        """
        self._require_elements()
        head = self.checkpoints[0]
        window_start = self.window_start
        if head.start == window_start:
            return head.solution()

        prefixed = head.clone(start=window_start)
        for element, self_utility in self.active:
            if element.ordinal >= head.start:
                break
            if element.ordinal >= window_start:
                prefixed.process(element, self_utility)
        return prefixed.solution()

    def check_invariants(self) -> None:
        """Verifies the checkpoint schedule; raises CorruptedStateError on violation"""
        starts = self.checkpoint_starts
        if any((s - 1) % self.interval != 0 for s in starts):
            raise_exception(
                f"Checkpoint starts {starts} are off the schedule L = {self.interval}.",
                CorruptedStateError,
            )
        if starts and (starts[0] < self.window_start or starts[0] > self.window_start + self.interval - 1):
            raise_exception(
                f"Oldest checkpoint {starts[0]} does not cover t' = {self.window_start}.",
                CorruptedStateError,
            )
        if len(starts) > self.checkpoint_bound():
            raise_exception(
                f"{len(starts)} live checkpoints exceed the bound {self.checkpoint_bound()}.",
                CorruptedStateError,
            )


def kw_process(algorithm: KnapWindow, element: Element) -> None:
    """Functional form of KnapWindow.process"""
    algorithm.process(element)


def kw_query(algorithm: KnapWindow) -> SolutionSet:
    """Functional form of KnapWindow.query"""
    return algorithm.query()
