#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

from .element import (
    Element,
    KnapsackSpec,
    SolutionSet,
    best_solution,
    check_feasibility,
    cost_effectiveness,
)
from .oracle import UtilityOracle
