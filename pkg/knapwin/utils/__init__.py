#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

from knapwin.utils.errors import (
    CorruptedStateError,
    CostRangeError,
    DimensionMismatchError,
    KnapwinError,
    MalformedRecordError,
    StreamOrderError,
    WindowCapExceededError,
)
from knapwin.utils.raise_exception import raise_exception
from knapwin.utils.setup_logger import setup_logger
