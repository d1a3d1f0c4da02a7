#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# isort: skip_file
from .cost_schemes import (
    CostAssigner,
    CostScheme,
    FixedCost,
    IidUniformCost,
    InfluenceCost,
    LengthCost,
    StreamRecord,
    UniformKCost,
    assign_costs,
    parse_scheme,
)
from .ingest import build_elements, ingest, parse_payload, read_records
from .generators import generate, generate_records, parse_generator_spec, write_records
from .metrics import MetricsSummary, SlideMetrics, read_metrics, summarize, write_metrics
from .experiment import (
    Experiment,
    ExperimentResult,
    SUPPORTED_ALGORITHMS,
    experiment_config,
    run_experiment,
)
from .verification import CheckReport, run_verification, verification_config
