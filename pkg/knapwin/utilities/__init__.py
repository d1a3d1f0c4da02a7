#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Standard libs
from typing import Optional

# User-defined libs
from knapwin.core.oracle import UtilityOracle
from knapwin.utils.raise_exception import raise_exception

from .bmc import BmcOracle, bmc_gain, bmc_utility
from .coverage import (
    CoverageOracle,
    WordWeightTable,
    as_word_bag,
    coverage_gain,
    coverage_utility,
)
from .ivm import IvmOracle, ivm_gain, ivm_utility
from .modular import ModularOracle

SUPPORTED_UTILITIES = ("coverage", "ivm", "bmc", "modular")


def make_oracle(
    utility: str,
    word_table: Optional[WordWeightTable] = None,
    binary_words: bool = False,
    sigma: float = 1.0,
    bandwidth: float = 0.75,
    item_weights: Optional[dict] = None,
) -> UtilityOracle:
    """
    Returns an empty oracle for one of the supported utility functions.

    Parameters
    ----------
    utility : str
        One of "coverage", "ivm", "bmc", "modular"
    word_table : WordWeightTable, optional
        Word weights; required for the coverage utility
    binary_words : bool, default = False
        Use presence indicators instead of word frequencies (coverage only)
    sigma, bandwidth : float
        IVM regularization and kernel width
    item_weights : dict, optional
        Per-item weights for the bmc utility
    """
    if utility == "coverage":
        if word_table is None:
            raise_exception("The coverage utility requires a word weight table.", ValueError)
        return CoverageOracle(word_table, binary=binary_words)
    if utility == "ivm":
        return IvmOracle(sigma=sigma, bandwidth=bandwidth)
    if utility == "bmc":
        return BmcOracle(item_weights)
    if utility == "modular":
        return ModularOracle()
    raise_exception(
        f"Unsupported utility {utility!r}. Supported utilities: {SUPPORTED_UTILITIES}",
        ValueError,
    )
    return None
