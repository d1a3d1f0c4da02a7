#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Cost assignment schemes. A scheme produces the cost of one knapsack; a
sequence of schemes separated by semicolons produces a d-dimensional cost
vector, e.g. "uniform_k(10);length(10);influence(10,0.2)".
"""

# Standard libs
import abc
import logging
import math
import re
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence

# Installed libs
import numpy as np

# User-defined libs
from knapwin.utils.domain_validators import UnitCost
from knapwin.utils.errors import CostRangeError
from knapwin.utils.raise_exception import raise_exception

LOGGER = logging.getLogger(__name__)

_SCHEME_PATTERN = re.compile(r"^\s*([a-z_]+)\s*(?:\(([^)]*)\))?\s*$")


@dataclass
class StreamRecord:
    """
    One raw input record before it becomes an Element.

    Parameters
    ----------
    payload : Any
        Token bag, feature vector, item set, or value
    costs : list of float, optional
        Costs given in the input, if any
    followers : float, optional
        Follower count of the author, used by the influence scheme
    line_number : int, optional
        Line of the input file the record was read from
    """

    payload: Any
    costs: Optional[List[float]] = None
    followers: Optional[float] = None
    line_number: Optional[int] = None

    @property
    def length(self) -> int:
        """Number of words (token bags) or entries of the payload"""
        if isinstance(self.payload, dict):
            return int(sum(self.payload.values()))
        if np.ndim(self.payload) == 0:
            return 1
        return len(self.payload)


class CostScheme(abc.ABC):
    """Rule assigning the cost of one knapsack to a record"""

    name = "abstract"

    def fit(self, records: Sequence[StreamRecord]) -> None:
        """Collects the stream statistics the scheme depends on"""

    @abc.abstractmethod
    def cost(self, record: StreamRecord, rng: np.random.Generator) -> float:
        """Returns the cost of the record"""

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class UniformKCost(CostScheme):
    """c(v) = 1 / k: at most k elements fit in the budget"""

    name = "uniform_k"

    def __init__(self, k: float = 10):
        self.k = float(k)

    def cost(self, record, rng):
        return 1.0 / self.k


class LengthCost(CostScheme):
    """
    c(v) = (1 / k) * (l / l_avg), where l is the length of the record and
    l_avg the average length over the stream unless given explicitly
    """

    name = "length"

    def __init__(self, k: float = 10, mean_length: Optional[float] = None):
        self.k = float(k)
        self.mean_length = mean_length

    def fit(self, records):
        if self.mean_length is None and len(records) > 0:
            self.mean_length = float(np.mean([r.length for r in records]))

    def cost(self, record, rng):
        if not self.mean_length:
            raise_exception(
                "The length cost scheme needs a positive average length.", CostRangeError
            )
        return record.length / (self.k * self.mean_length)


class InfluenceCost(CostScheme):
    """
    Decreasing function of the follower count fl of the author:
    c(v) = delta_cap * log(1 + fl_avg) / log(2 + fl), clamped to
    [1 / (10 k), delta_cap]. Authors with few followers get the cost
    delta_cap.
    """

    name = "influence"

    def __init__(
        self, k: float = 10, delta_cap: float = 0.2, mean_followers: Optional[float] = None
    ):
        self.k = float(k)
        self.delta_cap = float(delta_cap)
        self.mean_followers = mean_followers

    def fit(self, records):
        if self.mean_followers is None:
            counts = [r.followers for r in records if r.followers is not None]
            self.mean_followers = float(np.mean(counts)) if counts else 0.0

    def cost(self, record, rng):
        followers = record.followers if record.followers is not None else 0.0
        mean_followers = self.mean_followers or 0.0
        raw = self.delta_cap * math.log1p(mean_followers) / math.log(2.0 + followers)
        return min(max(raw, 1.0 / (10.0 * self.k)), self.delta_cap)


class IidUniformCost(CostScheme):
    """Costs drawn independently from U(lo, hi)"""

    name = "iid_uniform"

    def __init__(self, lo: float = 0.02, hi: float = 0.08):
        if not 0.0 < lo <= hi <= 1.0:
            raise_exception(
                f"iid_uniform needs 0 < lo <= hi <= 1, received ({lo}, {hi}).",
                CostRangeError,
            )
        self.lo = float(lo)
        self.hi = float(hi)

    def cost(self, record, rng):
        return float(rng.uniform(self.lo, self.hi))


class FixedCost(CostScheme):
    """The same cost for every record"""

    name = "fixed"

    def __init__(self, value: float = 0.1):
        self.value = UnitCost(value)

    def cost(self, record, rng):
        return self.value


SCHEMES = {
    scheme.name: scheme
    for scheme in (UniformKCost, LengthCost, InfluenceCost, IidUniformCost, FixedCost)
}


def parse_scheme(text: str) -> CostScheme:
    """Parses one scheme such as "iid_uniform(0.02,0.08)" or "uniform_k" """
    match = _SCHEME_PATTERN.match(text)
    if match is None or match.group(1) not in SCHEMES:
        raise_exception(
            f"Unknown cost scheme {text!r}. Supported schemes: {sorted(SCHEMES)}",
            ValueError,
        )
    args = []
    if match.group(2) and match.group(2).strip():
        try:
            args = [float(arg) for arg in match.group(2).split(",")]
        except ValueError:
            raise_exception(
                f"Arguments of cost scheme {text!r} must be numbers.", ValueError
            )
    try:
        return SCHEMES[match.group(1)](*args)
    except TypeError:
        raise_exception(
            f"Cost scheme {text!r} received too many arguments.", ValueError
        )
    return None


class CostAssigner:
    """
    Builds d-dimensional cost vectors from a sequence of schemes, one per
    knapsack. A single scheme is reused for every knapsack.

    Parameters
    ----------
    schemes : str or Sequence[CostScheme]
        Scheme specification such as "uniform_k(10);length(10)"
    d : int
        Number of knapsacks
    cost_scale : float, default = 1.0
        Factor applied to every cost
    """

    def __init__(self, schemes, d: int, cost_scale: float = 1.0):
        if isinstance(schemes, str):
            schemes = [parse_scheme(part) for part in schemes.split(";") if part.strip()]
        schemes = list(schemes)
        if len(schemes) == 1:
            schemes = schemes * d
        if len(schemes) != d:
            raise_exception(
                f"{len(schemes)} cost schemes were given for d = {d} knapsacks.",
                ValueError,
            )
        self.schemes: List[CostScheme] = schemes
        self.d = d
        self.cost_scale = float(cost_scale)

    def fit(self, records: Sequence[StreamRecord]) -> "CostAssigner":
        """Collects the stream statistics of every scheme"""
        for scheme in self.schemes:
            scheme.fit(records)
        return self

    def assign(self, record: StreamRecord, rng: np.random.Generator) -> np.ndarray:
        """Returns the cost vector of a record"""
        return assign_costs(record, self.schemes, rng, self.cost_scale)


def assign_costs(
    record: StreamRecord,
    schemes: Sequence[CostScheme],
    rng: np.random.Generator,
    cost_scale: float = 1.0,
) -> np.ndarray:
    """
    Returns the cost vector of a record, one entry per scheme.

    Raises
    ------
    CostRangeError
        If a cost falls outside (0, 1]; the message names the scheme
    """
    costs = np.empty(len(schemes))
    for j, scheme in enumerate(schemes):
        value = scheme.cost(record, rng) * cost_scale
        if not 0.0 < value <= 1.0:
            raise_exception(
                f"Cost scheme {scheme.name} assigned {value} to the record on line "
                f"{record.line_number}; costs must lie in (0, 1].",
                CostRangeError,
            )
        costs[j] = value
    return costs


def record_costs(record: StreamRecord, d: int, cost_scale: float = 1.0) -> np.ndarray:
    """
    Returns the first d costs carried by a record, scaled by cost_scale.

    Raises
    ------
    CostRangeError
        If the record carries fewer than d costs
    """
    if record.costs is None or len(record.costs) < d:
        raise_exception(
            f"The record on line {record.line_number} carries "
            f"{0 if record.costs is None else len(record.costs)} costs, but d = {d} "
            "and no cost scheme is configured.",
            CostRangeError,
        )
    return np.asarray(record.costs[:d], dtype=float) * cost_scale
