#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Standard libs
import math

# Installed libs
from pyomo.common.config import (
    Bool,
    ConfigDict,
    ConfigValue,
    NonNegativeInt,
    PositiveInt,
)

# User-defined libs
from knapwin.utils.domain_validators import OpenUnitInterval, OptionalPositiveInt

# Share of the window that slides in per batch, unless set explicitly
DEFAULT_SLIDE_FRACTION = 0.0001


def algorithm_config() -> ConfigDict:
    """
    Returns a Pyomo ConfigDict object that includes all user options
    associated with the streaming algorithms
    """
    config = ConfigDict()

    config.declare(
        "lam",
        ConfigValue(
            default=0.1,
            domain=OpenUnitInterval,
            doc="Ratio lambda of the geometric grid of OPT estimations",
        ),
    )
    config.declare(
        "window_size",
        ConfigValue(
            domain=PositiveInt,
            doc="Number W of most recent elements in the active window",
        ),
    )
    config.declare(
        "slide",
        ConfigValue(
            default=None,
            domain=OptionalPositiveInt,
            doc="Number T of elements per window slide [default: ceil(0.0001 W)]",
        ),
    )
    config.declare(
        "interval",
        ConfigValue(
            default=None,
            domain=OptionalPositiveInt,
            doc="Interval L between checkpoints of KnapWindow [default: ceil(sqrt(W T))]",
        ),
    )

    # KnapWindowPlus options
    config.declare(
        "beta",
        ConfigValue(
            default=0.1,
            domain=OpenUnitInterval,
            doc="Pruning ratio beta of the checkpoint index",
        ),
    )
    config.declare(
        "alpha",
        ConfigValue(
            default=0.5,
            domain=OpenUnitInterval,
            doc="Buffer admission factor alpha relative to the candidate threshold",
        ),
    )
    config.declare(
        "eta",
        ConfigValue(
            default=20,
            domain=PositiveInt,
            doc="Capacity eta of the buffer kept with every candidate",
        ),
    )

    # Execution options
    config.declare(
        "max_workers",
        ConfigValue(
            default=0,
            domain=NonNegativeInt,
            doc=(
                "Number of threads used to update checkpoint instances; "
                "0 updates them serially"
            ),
        ),
    )
    config.declare(
        "debug",
        ConfigValue(
            default=False,
            domain=Bool,
            doc="If True, all structural invariants are checked after every element",
        ),
    )
    return config


def default_slide(window_size: int) -> int:
    """Returns the default number of elements per slide, ceil(0.0001 W), at least 1"""
    return max(1, math.ceil(DEFAULT_SLIDE_FRACTION * window_size))


def default_interval(window_size: int, slide: int) -> int:
    """Returns the default checkpoint interval ceil(sqrt(W T))"""
    return math.ceil(math.sqrt(window_size * slide))
