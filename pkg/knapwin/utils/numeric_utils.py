#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Standard libs
import math
from typing import Optional

# Installed libs
import numpy as np

# Absolute slack absorbed by knapsack feasibility checks
FEASIBILITY_TOLERANCE = 1e-12


def in_bounds(
    value: float,
    lower_bound: Optional[float],
    upper_bound: Optional[float],
    tol: float,
) -> bool:
    """
    Returns True if the value is within lower and upper bound, subject to
    numerical tolerances.

    Parameters
    ----------
    value : float
        The value to be checked
    lower_bound : float
        The lower bound to be checked; None if unbounded below
    upper_bound : float
        The upper bound to be checked; None if unbounded above
    tol : float
        The absolute tolerance to be used

    Returns
    -------
    bool
        True if the value is within bounds
    """
    if lower_bound is not None and value < lower_bound - tol:
        return False

    if upper_bound is not None and value > upper_bound + tol:
        return False
    return True


def is_relatively_close(value: float, reference: float, rtol: float) -> bool:
    """
    Returns True if value agrees with reference within the relative tolerance
    rtol. Values near zero are compared with rtol as an absolute tolerance.
    """
    return bool(np.isclose(value, reference, rtol=rtol, atol=rtol))


def log_base(value: float, base: float) -> float:
    """Returns the logarithm of value in the given base"""
    return math.log(value) / math.log(base)
