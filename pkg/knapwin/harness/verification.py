#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Randomized property checks of the streaming algorithms against exact
oracles. The same checks run in the test suite with few trials and from
the command line ("knapwin verify") with the full trial counts.
"""

# Standard libs
import json
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

# Installed libs
import numpy as np
from pyomo.common.config import (
    Bool,
    ConfigDict,
    ConfigValue,
    ListOf,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
)

# User-defined libs
from knapwin.algorithms import (
    ApproxBound,
    KnapStream,
    KnapWindow,
    KnapWindowPlus,
    brute_force_opt,
)
from knapwin.core.element import Element, KnapsackSpec
from knapwin.core.oracle import UtilityOracle
from knapwin.harness.experiment import run_experiment
from knapwin.harness.generators import generate
from knapwin.utilities import (
    BmcOracle,
    CoverageOracle,
    IvmOracle,
    ModularOracle,
    WordWeightTable,
    bmc_utility,
    coverage_utility,
    ivm_utility,
)
from knapwin.utils.domain_validators import InRange, OpenUnitInterval
from knapwin.utils.numeric_utils import is_relatively_close

LOGGER = logging.getLogger(__name__)

# Slack on approximation inequalities for floating accumulation
BOUND_SLACK = 1e-9
_WORDS = [chr(ord("a") + i) for i in range(10)]


def verification_config() -> ConfigDict:
    """
    Returns a Pyomo ConfigDict object with the trial counts and instance
    sizes of the verification suite
    """
    config = ConfigDict()
    config.declare("seed", ConfigValue(default=0, domain=NonNegativeInt, doc="Base seed"))
    config.declare(
        "ks_trials",
        ConfigValue(default=200, domain=NonNegativeInt, doc="Random KnapStream instances"),
    )
    config.declare(
        "max_elements",
        ConfigValue(default=15, domain=PositiveInt, doc="Largest KnapStream instance"),
    )
    config.declare(
        "window_trials",
        ConfigValue(
            default=100, domain=NonNegativeInt, doc="Random streams per windowed algorithm"
        ),
    )
    config.declare(
        "stream_length",
        ConfigValue(default=40, domain=PositiveInt, doc="Length of windowed streams"),
    )
    config.declare(
        "window_size",
        ConfigValue(default=12, domain=PositiveInt, doc="Window size of windowed streams"),
    )
    config.declare(
        "interval",
        ConfigValue(default=4, domain=PositiveInt, doc="Checkpoint interval of KnapWindow"),
    )
    config.declare(
        "cost_low",
        ConfigValue(default=0.1, domain=InRange(0.0, 1.0), doc="Smallest drawn cost"),
    )
    config.declare(
        "cost_high",
        ConfigValue(default=0.6, domain=InRange(0.0, 1.0), doc="Largest drawn cost"),
    )
    config.declare(
        "lams",
        ConfigValue(
            default=[0.05, 0.1, 0.25],
            domain=ListOf(float, OpenUnitInterval),
            doc="Grid ratios cycled through the trials",
        ),
    )
    config.declare(
        "betas",
        ConfigValue(
            default=[0.05, 0.1, 0.2],
            domain=ListOf(float, OpenUnitInterval),
            doc="Pruning ratios cycled through the KnapWindowPlus trials",
        ),
    )
    config.declare(
        "oracle_samples",
        ConfigValue(default=500, domain=NonNegativeInt, doc="Random (S, v) oracle samples"),
    )
    config.declare(
        "submodularity_pairs",
        ConfigValue(default=1000, domain=NonNegativeInt, doc="Random nested pairs"),
    )
    config.declare(
        "prefix_streams",
        ConfigValue(default=50, domain=NonNegativeInt, doc="Streams of the prefix check"),
    )
    config.declare(
        "trends",
        ConfigValue(
            default=True, domain=Bool, doc="If True, the efficiency and quality trends run"
        ),
    )
    config.declare(
        "trend_elements",
        ConfigValue(default=100000, domain=PositiveInt, doc="Stream length of the trends"),
    )
    config.declare(
        "trend_window",
        ConfigValue(default=10000, domain=PositiveInt, doc="Window of the efficiency trend"),
    )
    config.declare(
        "trend_slide",
        ConfigValue(default=10, domain=PositiveInt, doc="Slide of both trends"),
    )
    config.declare(
        "max_mean_checkpoints",
        ConfigValue(
            default=10.0,
            domain=PositiveFloat,
            doc="Largest admissible mean number of KnapWindowPlus checkpoints",
        ),
    )
    config.declare(
        "stored_share",
        ConfigValue(
            default=0.25,
            domain=OpenUnitInterval,
            doc="Largest admissible share of the window held by KnapWindowPlus",
        ),
    )
    config.declare(
        "quality_elements",
        ConfigValue(default=20000, domain=PositiveInt, doc="Stream length of the quality trend"),
    )
    config.declare(
        "quality_window",
        ConfigValue(default=200, domain=PositiveInt, doc="Window of the quality trend"),
    )
    config.declare(
        "quality_ratio",
        ConfigValue(
            default=0.75,
            domain=OpenUnitInterval,
            doc="Required share of the mean CostEffectGreedy utility",
        ),
    )
    return config


@dataclass
class CheckReport:
    """Outcome of one property check"""

    name: str
    trials: int = 0
    comparisons: int = 0
    violations: List[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        """True if no violation was found"""
        return not self.violations

    def __str__(self):
        status = "passed" if self.passed else f"FAILED ({len(self.violations)} violations)"
        return (
            f"{self.name}: {status}, {self.trials} trials, {self.comparisons} "
            f"comparisons, {self.seconds:.1f} s"
        )


def random_costs(rng: np.random.Generator, d: int, low: float, high: float) -> np.ndarray:
    """Costs drawn from U(low, high), kept inside (0, 1]"""
    return np.clip(rng.uniform(low, high, size=d), 1e-6, 1.0)


def random_stream(
    rng: np.random.Generator,
    n: int,
    d: int,
    utility: str,
    cost_low: float = 0.1,
    cost_high: float = 0.6,
) -> Tuple[List[Element], UtilityOracle]:
    """
    Draws a small stream with ordinals 1..n and an empty oracle for it.
    Coverage streams use bags over ten words, bmc streams item sets over a
    universe of twelve items, and ivm streams three-dimensional points.
    """
    payloads = []
    for _ in range(n):
        if utility == "modular":
            payloads.append(float(rng.uniform(0.0, 10.0)))
        elif utility == "coverage":
            words = rng.choice(_WORDS, size=int(rng.integers(1, 5)), replace=False)
            payloads.append({str(w): int(rng.integers(1, 4)) for w in words})
        elif utility == "bmc":
            items = rng.choice(12, size=int(rng.integers(1, 5)), replace=False)
            payloads.append(frozenset(int(i) for i in items))
        else:
            payloads.append(rng.random(3))
    elements = [
        Element(i + 1, payload, random_costs(rng, d, cost_low, cost_high))
        for i, payload in enumerate(payloads)
    ]

    if utility == "modular":
        oracle = ModularOracle()
    elif utility == "coverage":
        oracle = CoverageOracle(WordWeightTable.from_corpus([{w: 1} for w in _WORDS]))
    elif utility == "bmc":
        oracle = BmcOracle()
    else:
        oracle = IvmOracle()
    return elements, oracle


def _max_cost(elements: List[Element]) -> float:
    return max((e.delta for e in elements), default=0.0)


def _trial_parameters(config: ConfigDict, trial: int) -> Tuple[float, int, str]:
    lam = config.lams[trial % len(config.lams)]
    d = 1 + trial % 2
    utility = ("modular", "coverage")[(trial // 2) % 2]
    return lam, d, utility


def check_ks_approximation(config: ConfigDict) -> CheckReport:
    """
    f(KnapStream) >= (1 - eps) / (1 + d) * OPT on random instances, with
    all structural invariants checked after every element.
    """
    report = CheckReport("KnapStream approximation")
    tic = time.perf_counter()
    for trial in range(config.ks_trials):
        rng = np.random.default_rng(config.seed + trial)
        lam, d, utility = _trial_parameters(config, trial)
        n = int(rng.integers(1, config.max_elements + 1))
        elements, oracle = random_stream(
            rng, n, d, utility, config.cost_low, config.cost_high
        )
        spec = KnapsackSpec(d)

        instance = KnapStream(oracle, spec, lam=lam, debug=True)
        instance.process_all(elements)
        found = instance.solution().utility
        opt = brute_force_opt(elements, spec, oracle).utility
        bound = ApproxBound(lam, 0.0, d, _max_cost(elements)).ks_bound
        report.trials += 1
        report.comparisons += 1
        if found < bound * opt - BOUND_SLACK:
            report.violations.append(
                f"trial {trial} ({utility}, d={d}, lambda={lam}): {found} < {bound} * {opt}"
            )
    report.seconds = time.perf_counter() - tic
    return report


def check_window_approximation(config: ConfigDict, algorithm: str) -> CheckReport:
    """
    Bound of KnapWindow or KnapWindowPlus against the exact optimum of the
    active window at every t. The algorithms run in debug mode, so the
    checkpoint bounds, the pruning invariant, and the monotone utility of
    every instance are verified after every element as well.
    """
    name = "KnapWindow" if algorithm == "kw" else "KnapWindowPlus"
    report = CheckReport(f"{name} approximation")
    tic = time.perf_counter()
    for trial in range(config.window_trials):
        rng = np.random.default_rng(config.seed + 10_000 + trial)
        lam, d, utility = _trial_parameters(config, trial)
        beta = config.betas[trial % len(config.betas)]
        elements, oracle = random_stream(
            rng, config.stream_length, d, utility, config.cost_low, config.cost_high
        )
        spec = KnapsackSpec(d)
        bounds = ApproxBound(lam, beta, d, _max_cost(elements))
        options = dict(window_size=config.window_size, slide=1, lam=lam, debug=True)
        if algorithm == "kw":
            runner = KnapWindow(oracle, spec, interval=config.interval, **options)
            bound = bounds.kw_bound
        else:
            runner = KnapWindowPlus(oracle, spec, beta=beta, **options)
            bound = bounds.kwp_bound

        report.trials += 1
        for element in elements:
            runner.process(element)
            found = runner.query().utility
            opt = brute_force_opt(runner.active_elements(), spec, oracle).utility
            report.comparisons += 1
            if found < bound * opt - BOUND_SLACK:
                report.violations.append(
                    f"trial {trial} t={element.ordinal} ({utility}, d={d}, "
                    f"lambda={lam}, beta={beta}): {found} < {bound} * {opt}"
                )
    report.seconds = time.perf_counter() - tic
    return report


def _close(value: float, reference: float, rtol: float) -> bool:
    return is_relatively_close(value, reference, rtol) or abs(value - reference) <= rtol


def check_oracle_correctness(config: ConfigDict) -> CheckReport:
    """
    Incremental gains and utilities of all oracles against evaluations from
    scratch, and diminishing gains on random nested pairs of sets.
    """
    report = CheckReport("Oracle correctness")
    tic = time.perf_counter()
    rng = np.random.default_rng(config.seed + 20_000)

    for sample in range(config.oracle_samples):
        size = int(rng.integers(0, 21))
        points = rng.random((size + 1, 3))
        elements = [Element(i + 1, points[i], [0.5]) for i in range(size + 1)]
        oracle = IvmOracle()
        for element in elements[:-1]:
            oracle.insert(element)
        gain = oracle.gain(elements[-1])
        reference = ivm_utility(points) - ivm_utility(points[:-1])
        report.comparisons += 1
        if not _close(gain, reference, 1e-8):
            report.violations.append(f"ivm sample {sample}: gain {gain} != {reference}")
        if not _close(oracle.utility, ivm_utility(points[:-1]), 1e-8):
            report.violations.append(f"ivm sample {sample}: utility drifted")

    scratch: Dict[str, Callable] = {
        "coverage": lambda oracle, members: coverage_utility(
            oracle.table, [m.payload for m in members]
        ),
        "bmc": lambda oracle, members: bmc_utility([m.payload for m in members]),
    }
    for utility, evaluate in scratch.items():
        for sample in range(max(1, config.oracle_samples // 10)):
            elements, oracle = random_stream(rng, int(rng.integers(1, 51)), 1, utility)
            for element in elements:
                oracle.insert(element)
            report.comparisons += 1
            if not math.isclose(oracle.utility, evaluate(oracle, elements), rel_tol=1e-12):
                report.violations.append(f"{utility} sample {sample}: utility drifted")

    utilities = ("coverage", "bmc", "ivm")
    for pair in range(config.submodularity_pairs):
        utility = utilities[pair % len(utilities)]
        elements, oracle = random_stream(rng, 12, 1, utility)
        small = int(rng.integers(0, 6))
        large = int(rng.integers(small, 11))
        subset, superset = oracle.spawn(), oracle.spawn()
        for position, element in enumerate(elements[:large]):
            if position < small:
                subset.insert(element)
            superset.insert(element)
        candidate = elements[-1]
        report.comparisons += 1
        if subset.gain(candidate) < superset.gain(candidate) - BOUND_SLACK:
            report.violations.append(f"{utility} pair {pair}: gains increase")

    report.trials = report.comparisons
    report.seconds = time.perf_counter() - tic
    return report


def check_prefix_equivalence(config: ConfigDict) -> CheckReport:
    """
    With a single checkpoint, KnapWindow returns exactly the members that a
    standalone KnapStream over the same prefix returns.
    """
    report = CheckReport("Prefix equivalence")
    tic = time.perf_counter()
    window = config.window_size
    for trial in range(config.prefix_streams):
        rng = np.random.default_rng(config.seed + 30_000 + trial)
        lam, d, utility = _trial_parameters(config, trial)
        elements, oracle = random_stream(rng, window, d, utility)
        spec = KnapsackSpec(d)
        windowed = KnapWindow(oracle, spec, window_size=window, interval=window, lam=lam)
        standalone = KnapStream(oracle, spec, lam=lam)
        report.trials += 1
        for element in elements:
            windowed.process(element)
            standalone.process(element)
            report.comparisons += 1
            if windowed.query().ordinals != standalone.solution().ordinals:
                report.violations.append(f"trial {trial} t={element.ordinal}")
    report.seconds = time.perf_counter() - tic
    return report


def _trend_stream(config: ConfigDict, n: int) -> List[Element]:
    spec = {"n": n, "family": "values", "costs": "iid_uniform(0.02,0.08)"}
    return generate(spec, seed=config.seed)


def check_efficiency_trend(config: ConfigDict) -> CheckReport:
    """
    KnapWindowPlus is faster per slide than KnapWindow, both are faster than
    CostEffectGreedy. KnapWindowPlus keeps at most max_mean_checkpoints
    checkpoints on average, and never more than stored_share * W distinct
    elements.
    """
    report = CheckReport("Efficiency trend")
    tic = time.perf_counter()
    elements = _trend_stream(config, config.trend_elements)
    summaries = {
        algo: run_experiment(
            elements,
            algorithm=algo,
            utility="modular",
            window_size=config.trend_window,
            slide=config.trend_slide,
        ).summary
        for algo in ("kw", "kwplus", "ceg")
    }
    for summary in summaries.values():
        LOGGER.info(str(summary))
    times = {algo: s.mean_micros for algo, s in summaries.items()}
    report.trials = 1
    report.comparisons = 5
    if not times["kwplus"] < times["kw"]:
        report.violations.append(f"kwplus {times['kwplus']} us >= kw {times['kw']} us")
    for algo in ("kw", "kwplus"):
        if not times[algo] < times["ceg"]:
            report.violations.append(f"{algo} {times[algo]} us >= ceg {times['ceg']} us")
    if summaries["kwplus"].mean_checkpoints > config.max_mean_checkpoints:
        report.violations.append(
            f"kwplus keeps {summaries['kwplus'].mean_checkpoints} checkpoints on average"
        )
    stored_cap = config.stored_share * config.trend_window
    if summaries["kwplus"].max_stored_elements > stored_cap:
        report.violations.append(
            f"kwplus stores {summaries['kwplus'].max_stored_elements} elements, "
            f"above {stored_cap:.0f} for W = {config.trend_window}"
        )
    report.seconds = time.perf_counter() - tic
    return report


def check_quality_trend(config: ConfigDict) -> CheckReport:
    """
    On small windows, the mean utilities of KnapWindow and KnapWindowPlus
    reach the configured share of the mean CostEffectGreedy utility.
    """
    report = CheckReport("Quality trend")
    tic = time.perf_counter()
    elements = _trend_stream(config, config.quality_elements)
    means = {
        algo: run_experiment(
            elements,
            algorithm=algo,
            utility="modular",
            window_size=config.quality_window,
            slide=config.trend_slide,
        ).summary.mean_utility
        for algo in ("kw", "kwplus", "ceg")
    }
    report.trials = 1
    for algo in ("kw", "kwplus"):
        report.comparisons += 1
        if means[algo] < config.quality_ratio * means["ceg"]:
            report.violations.append(
                f"{algo} mean utility {means[algo]} < {config.quality_ratio} * {means['ceg']}"
            )
    report.seconds = time.perf_counter() - tic
    return report


def load_verification_config(path: Optional[str] = None, **overrides) -> ConfigDict:
    """Returns the verification options, updated from a JSON file and keyword arguments"""
    values = {}
    if path is not None:
        with open(path, "r", encoding="utf-8") as fp:
            values.update(json.load(fp))
    values.update(overrides)
    return verification_config()(values)


def run_verification(config: Optional[ConfigDict] = None) -> List[CheckReport]:
    """Runs every check and logs one line per check"""
    config = config if config is not None else verification_config()
    checks = [
        check_oracle_correctness,
        check_ks_approximation,
        lambda c: check_window_approximation(c, "kw"),
        lambda c: check_window_approximation(c, "kwplus"),
        check_prefix_equivalence,
    ]
    if config.trends:
        checks.extend([check_efficiency_trend, check_quality_trend])

    reports = []
    for check in checks:
        report = check(config)
        reports.append(report)
        if report.passed:
            LOGGER.info(str(report))
        else:
            LOGGER.error(str(report))
            for violation in report.violations[:10]:
                LOGGER.error(f"  {violation}")
    return reports
