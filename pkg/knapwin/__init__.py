#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

from knapwin.algorithms import (
    ApproxBound,
    KnapStream,
    KnapWindow,
    KnapWindowPlus,
    brute_force_opt,
    ceg,
    cost_effect_greedy,
)
from knapwin.core import Element, KnapsackSpec, SolutionSet, UtilityOracle
from knapwin.harness import generate, ingest, run_experiment
from knapwin.utilities import make_oracle
from knapwin.utils import setup_logger

RELEASE = "0.1.0"
VERSION = "0.1.0"
