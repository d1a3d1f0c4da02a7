#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Exception types raised by the knapwin package. Each class also derives
from the closest builtin exception so that callers may catch either.
"""


class KnapwinError(Exception):
    """Base class for all errors raised by knapwin"""


class DimensionMismatchError(KnapwinError, ValueError):
    """Cost vectors, running totals, and the knapsack dimension disagree"""


class CostRangeError(KnapwinError, ValueError):
    """A cost lies outside the admissible range (0, 1]"""


class StreamOrderError(KnapwinError, ValueError):
    """Elements were delivered out of ordinal order"""


class CorruptedStateError(KnapwinError, RuntimeError):
    """An internal invariant of an algorithm state no longer holds"""


class WindowCapExceededError(KnapwinError, ValueError):
    """The exhaustive solver was asked to enumerate a window that is too large"""


class MalformedRecordError(KnapwinError, ValueError):
    """An input record could not be parsed"""

    def __init__(self, msg: str, line_number: int = None):
        super().__init__(msg)
        self.line_number = line_number
