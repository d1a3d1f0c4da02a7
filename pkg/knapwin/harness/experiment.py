#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Sliding-window experiment driver: replays a stream in slides, queries an
algorithm after each slide, and records metrics.
"""

# Standard libs
import logging
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

# Installed libs
from pyomo.common.config import (
    Bool,
    ConfigDict,
    ConfigValue,
    In,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
    document_kwargs_from_configdict,
)

# User-defined libs
from knapwin.algorithms import (
    BRUTE_FORCE_CAP,
    KnapStream,
    KnapWindow,
    KnapWindowPlus,
    algorithm_config,
    brute_force_opt,
    ceg,
    default_slide,
)
from knapwin.core.element import Element, KnapsackSpec, SolutionSet
from knapwin.core.oracle import UtilityOracle
from knapwin.harness.generators import generate
from knapwin.harness.ingest import SUPPORTED_FORMATS, ingest
from knapwin.harness.metrics import MetricsSummary, SlideMetrics, summarize, write_metrics
from knapwin.utilities import SUPPORTED_UTILITIES, WordWeightTable, make_oracle
from knapwin.utils.errors import CorruptedStateError, WindowCapExceededError
from knapwin.utils.raise_exception import raise_exception

LOGGER = logging.getLogger(__name__)

SUPPORTED_ALGORITHMS = ("ks", "kw", "kwplus", "ceg", "brute")


def experiment_config() -> ConfigDict:
    """
    Returns a Pyomo ConfigDict object that includes all user options
    of an experiment, including the options of the algorithms
    """
    config = algorithm_config()

    config.declare(
        "algorithm",
        ConfigValue(
            default="kwplus",
            domain=In(SUPPORTED_ALGORITHMS),
            doc="Algorithm evaluated after every slide",
        ),
    )
    config.declare(
        "utility",
        ConfigValue(
            default="ivm",
            domain=In(SUPPORTED_UTILITIES),
            doc="Utility function to be maximized",
        ),
    )
    config.declare(
        "d",
        ConfigValue(default=1, domain=PositiveInt, doc="Number of knapsacks"),
    )

    # Cost options
    config.declare(
        "costs",
        ConfigValue(
            default=None,
            domain=str,
            doc="Cost schemes for records without costs, e.g. 'uniform_k(10);length(10)'",
        ),
    )
    config.declare(
        "cost_scale",
        ConfigValue(
            default=1.0,
            domain=PositiveFloat,
            doc="Factor applied to every cost",
        ),
    )

    # Stream source
    config.declare(
        "input_path",
        ConfigValue(default=None, domain=str, doc="Path of a JSONL or CSV stream file"),
    )
    config.declare(
        "input_format",
        ConfigValue(
            default=None,
            domain=In(SUPPORTED_FORMATS),
            doc="Format of the stream file [default: inferred from the suffix]",
        ),
    )
    config.declare(
        "csv_has_costs",
        ConfigValue(
            default=False,
            domain=Bool,
            doc="If True, the first d columns of a CSV stream are costs",
        ),
    )
    config.declare(
        "generator",
        ConfigValue(
            default=None,
            domain=str,
            doc="Generator specification, inline JSON or path of a JSON file",
        ),
    )
    config.declare(
        "seed",
        ConfigValue(default=0, domain=NonNegativeInt, doc="Seed of all random draws"),
    )

    # Utility options
    config.declare(
        "vocabulary",
        ConfigValue(
            default=None,
            domain=str,
            doc=(
                "Vocabulary file with word<TAB>probability lines; word weights "
                "are estimated from the stream if not given"
            ),
        ),
    )
    config.declare(
        "binary_words",
        ConfigValue(
            default=False,
            domain=Bool,
            doc="If True, coverage uses word presence instead of word frequency",
        ),
    )
    config.declare(
        "sigma",
        ConfigValue(default=1.0, domain=PositiveFloat, doc="IVM regularization sigma"),
    )
    config.declare(
        "bandwidth",
        ConfigValue(default=0.75, domain=PositiveFloat, doc="IVM kernel width h"),
    )

    config.declare(
        "output_path",
        ConfigValue(default=None, domain=str, doc="Path of the metrics CSV file"),
    )
    return config


class WindowRecompute:
    """
    Baseline that stores the active window and solves it from scratch
    after every slide.

    Parameters
    ----------
    name : str
        Name reported in the metrics
    solver : Callable[[List[Element]], SolutionSet]
        Solves one window
    window_size : int
        Number W of active elements
    """

    def __init__(
        self, name: str, solver: Callable[[List[Element]], SolutionSet], window_size: int
    ):
        self.name = name
        self.solver = solver
        self.active = deque(maxlen=window_size)

    def process_batch(self, elements: Sequence[Element]) -> None:
        """Appends the elements of one slide to the window"""
        self.active.extend(elements)

    def query(self) -> SolutionSet:
        """Solves the current window"""
        return self.solver(list(self.active))

    def close(self) -> None:
        """Nothing to release"""

    @property
    def num_checkpoints(self) -> int:
        """Baselines keep no checkpoints"""
        return 0

    @property
    def stored_elements(self) -> int:
        """Every active element is stored"""
        return len(self.active)


@dataclass
class ExperimentResult:
    """Per-slide metrics and their aggregate; the last solution for inspection"""

    rows: List[SlideMetrics] = field(default_factory=list)
    summary: Optional[MetricsSummary] = None
    last_solution: Optional[SolutionSet] = None


class Experiment:
    """
    One replay of a stream through one algorithm. Keyword arguments are
    validated by experiment_config.
    """

    CONFIG = experiment_config()

    @document_kwargs_from_configdict(CONFIG)
    def __init__(self, elements: Optional[Sequence[Element]] = None, **kwargs):
        """
        Parameters
        ----------
        elements : Sequence[Element], optional
            The stream; if not given, it is read from input_path or drawn
            from the generator
        """
        LOGGER.info("Processing experiment inputs.")
        self.config = self.CONFIG(kwargs)
        cfg = self.config
        if cfg.window_size is None:
            raise_exception("The window size W must be specified.", ValueError)
        self.elements = list(elements) if elements is not None else None
        if self.elements is None and (cfg.input_path is None) == (cfg.generator is None):
            raise_exception(
                "Exactly one of input_path and generator must be specified.", ValueError
            )
        self.slide = cfg.slide or default_slide(cfg.window_size)
        if self.slide > cfg.window_size:
            raise_exception(
                f"The slide T = {self.slide} exceeds the window size W = {cfg.window_size}.",
                ValueError,
            )
        if cfg.algorithm == "brute" and cfg.window_size > BRUTE_FORCE_CAP:
            raise_exception(
                f"Exhaustive search is limited to windows of {BRUTE_FORCE_CAP} "
                f"elements; rerun with --window {BRUTE_FORCE_CAP} or less.",
                WindowCapExceededError,
            )
        self.spec = KnapsackSpec(cfg.d)

    def load_stream(self) -> List[Element]:
        """Reads or generates the stream"""
        cfg = self.config
        if cfg.input_path is not None:
            return ingest(
                cfg.input_path,
                fmt=cfg.input_format,
                utility=cfg.utility,
                d=cfg.d,
                costs=cfg.costs,
                seed=cfg.seed,
                cost_scale=cfg.cost_scale,
                csv_has_costs=cfg.csv_has_costs,
            )
        return generate(cfg.generator, seed=cfg.seed, utility=cfg.utility)

    def make_oracle(self, elements: Sequence[Element]) -> UtilityOracle:
        """Returns an empty oracle of the configured utility"""
        cfg = self.config
        table = None
        if cfg.utility == "coverage":
            if cfg.vocabulary is not None:
                table = WordWeightTable.from_file(cfg.vocabulary)
            else:
                table = WordWeightTable.from_corpus(e.payload for e in elements)
        return make_oracle(
            cfg.utility,
            word_table=table,
            binary_words=cfg.binary_words,
            sigma=cfg.sigma,
            bandwidth=cfg.bandwidth,
        )

    def make_algorithm(self, oracle: UtilityOracle):
        """Returns the configured algorithm"""
        cfg = self.config
        if cfg.algorithm in ("kw", "kwplus"):
            options = {key: cfg[key] for key in algorithm_config().keys()}
            options["slide"] = self.slide
            cls = KnapWindow if cfg.algorithm == "kw" else KnapWindowPlus
            return cls(oracle, self.spec, **options)

        if cfg.algorithm == "ks":

            def solver(window):
                instance = KnapStream(oracle, self.spec, lam=cfg.lam, start=window[0].ordinal)
                instance.process_all(window)
                return instance.solution()

        elif cfg.algorithm == "ceg":

            def solver(window):
                return ceg(window, self.spec, oracle)

        else:

            def solver(window):
                return brute_force_opt(window, self.spec, oracle)

        return WindowRecompute(cfg.algorithm, solver, cfg.window_size)

    def run(self) -> ExperimentResult:
        """
        Replays the stream in slides of T elements. After each slide the
        algorithm is queried and one metrics row is recorded; the metrics
        are written to output_path if configured.

        Raises
        ------
        CorruptedStateError
            If a reported solution is infeasible or holds an inactive element
        """
        cfg = self.config
        elements = self.elements if self.elements is not None else self.load_stream()
        oracle = self.make_oracle(elements)
        algorithm = self.make_algorithm(oracle)
        LOGGER.info(
            f"Running {cfg.algorithm} with W = {cfg.window_size}, T = {self.slide} "
            f"on {len(elements)} elements."
        )

        result = ExperimentResult()
        try:
            for first in range(0, len(elements), self.slide):
                batch = elements[first : first + self.slide]
                tic = time.perf_counter_ns()
                algorithm.process_batch(batch)
                solution = algorithm.query()
                micros = (time.perf_counter_ns() - tic) / 1000.0

                t = batch[-1].ordinal
                self._check_solution(solution, t)
                result.rows.append(
                    SlideMetrics(
                        t=t,
                        algo=cfg.algorithm,
                        utility=solution.utility,
                        size=len(solution),
                        micros=micros,
                        checkpoints=algorithm.num_checkpoints,
                        stored_elements=algorithm.stored_elements,
                    )
                )
                result.last_solution = solution
        finally:
            algorithm.close()

        if cfg.output_path is not None:
            result.summary = write_metrics(result.rows, cfg.output_path, cfg.algorithm)
        else:
            result.summary = summarize(result.rows, cfg.algorithm)
        LOGGER.info(str(result.summary))
        return result

    def _check_solution(self, solution: SolutionSet, t: int) -> None:
        window_start = max(1, t - self.config.window_size + 1)
        if not self.spec.is_feasible(solution):
            raise_exception(
                f"The solution reported at t = {t} exceeds a budget: "
                f"totals {solution.cost_totals.tolist()}.",
                CorruptedStateError,
            )
        outside = [o for o in solution.ordinals if not window_start <= o <= t]
        if outside:
            raise_exception(
                f"The solution reported at t = {t} holds elements {outside} outside "
                f"the window [{window_start}, {t}].",
                CorruptedStateError,
            )


def run_experiment(elements: Optional[Sequence[Element]] = None, **kwargs) -> ExperimentResult:
    """
    Runs one experiment; see experiment_config for the keyword arguments.
    Elements passed directly take the place of input_path and generator.
    """
    return Experiment(elements, **kwargs).run()
