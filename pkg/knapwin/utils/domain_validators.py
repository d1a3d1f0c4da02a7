#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
This module contains functions that can be used for domain validation
with the `ConfigDict()` data structure from Pyomo.
"""
# Standard libs
import math

# User-defined libs
from knapwin.utils.numeric_utils import in_bounds


# pylint: disable-next = invalid-name
def InRange(lb, ub):
    """
    Domain validator for 1D compact sets.

    Parameters
    ----------
    lb : float
        Lower bound

    ub : float
        Upper bound

    Returns
    -------
    _in_range :
        Pointer to a domain validator function
    """

    def _in_range(val):
        val = float(val)
        if in_bounds(val, lb, ub, 0.0):
            return val
        raise ValueError(f"Value {val} lies outside the admissible range [{lb}, {ub}]")

    return _in_range


# pylint: disable-next = invalid-name
def OpenUnitInterval(val):
    """Domain validator for rates and factors that must lie in (0, 1)"""
    val = float(val)
    if 0.0 < val < 1.0:
        return val
    raise ValueError(f"Value {val} lies outside the admissible range (0, 1)")


# pylint: disable-next = invalid-name
def UnitCost(val):
    """Domain validator for a single knapsack cost, which must lie in (0, 1]"""
    val = float(val)
    if 0.0 < val <= 1.0 and math.isfinite(val):
        return val
    raise ValueError(f"Cost {val} lies outside the admissible range (0, 1]")


# pylint: disable-next = invalid-name
def OptionalPositiveInt(val):
    """Domain validator for positive integers that may be left unset"""
    if val is None:
        return None
    if int(val) != val or int(val) <= 0:
        raise ValueError(f"Value {val} is not a positive integer")
    return int(val)
