#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# isort: skip_file
from .algorithm_options import algorithm_config, default_interval, default_slide
from .buffer import CandidateBuffer, buffer_add
from .greedy import cost_effect_greedy
from .knapstream import (
    Candidate,
    KnapStream,
    estimation_exponents,
    ks_process,
    ks_refresh_grid,
    ks_solution,
    ks_update_bounds,
    process_instances,
)
from .knapwindow import KnapWindow, kw_process, kw_query
from .knapwindow_plus import (
    KnapWindowPlus,
    checkpoint_count_bound,
    kwp_process,
    kwp_process_batch,
    kwp_query,
    prunable_index,
)
from .baselines import BRUTE_FORCE_CAP, ApproxBound, brute_force_opt, ceg
