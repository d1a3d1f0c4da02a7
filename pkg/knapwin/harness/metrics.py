#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Per-slide metrics of an experiment and their CSV output.
"""

# Standard libs
import logging
import pathlib
from dataclasses import asdict, dataclass
from typing import List, Sequence, Union

# Installed libs
import pandas as pd

LOGGER = logging.getLogger(__name__)

METRIC_COLUMNS = [
    "t",
    "algo",
    "utility",
    "size",
    "micros",
    "checkpoints",
    "stored_elements",
]
SUMMARY_LABEL = "summary"


@dataclass(frozen=True)
class SlideMetrics:
    """Measurements taken after one window slide"""

    t: int
    algo: str
    utility: float
    size: int
    micros: float
    checkpoints: int
    stored_elements: int


@dataclass(frozen=True)
class MetricsSummary:
    """Aggregates over all slides of an experiment"""

    algo: str
    slides: int
    mean_utility: float
    mean_micros: float
    mean_checkpoints: float
    max_checkpoints: int
    mean_stored_elements: float
    max_stored_elements: int

    def __str__(self):
        return (
            f"{self.algo}: {self.slides} slides, mean utility {self.mean_utility:.6g}, "
            f"mean time {self.mean_micros:.1f} us/slide, checkpoints "
            f"{self.mean_checkpoints:.2f} avg / {self.max_checkpoints} max, stored "
            f"elements {self.mean_stored_elements:.1f} avg / {self.max_stored_elements} max"
        )


def metrics_frame(rows: Sequence[SlideMetrics]) -> pd.DataFrame:
    """Returns the per-slide rows as a DataFrame with the documented column order"""
    return pd.DataFrame([asdict(row) for row in rows], columns=METRIC_COLUMNS)


def summarize(rows: Sequence[SlideMetrics], algo: str = "") -> MetricsSummary:
    """Aggregates per-slide rows; all values are 0 if there are none"""
    if len(rows) == 0:
        return MetricsSummary(algo, 0, 0.0, 0.0, 0.0, 0, 0.0, 0)
    frame = metrics_frame(rows)
    return MetricsSummary(
        algo=algo or rows[0].algo,
        slides=len(frame),
        mean_utility=float(frame["utility"].mean()),
        mean_micros=float(frame["micros"].mean()),
        mean_checkpoints=float(frame["checkpoints"].mean()),
        max_checkpoints=int(frame["checkpoints"].max()),
        mean_stored_elements=float(frame["stored_elements"].mean()),
        max_stored_elements=int(frame["stored_elements"].max()),
    )


def write_metrics(
    rows: Sequence[SlideMetrics], path: Union[str, pathlib.Path], algo: str = ""
) -> MetricsSummary:
    """
    Writes one CSV row per slide followed by a summary row whose t column
    reads "summary" and which holds the mean utility, the mean time, the
    maximum number of checkpoints, and the maximum number of stored
    elements. Without slides, only the header is written.
    """
    summary = summarize(rows, algo)
    frame = metrics_frame(rows)
    if len(rows) > 0:
        summary_row = pd.DataFrame(
            [
                {
                    "t": SUMMARY_LABEL,
                    "algo": summary.algo,
                    "utility": summary.mean_utility,
                    "size": "",
                    "micros": summary.mean_micros,
                    "checkpoints": summary.max_checkpoints,
                    "stored_elements": summary.max_stored_elements,
                }
            ],
            columns=METRIC_COLUMNS,
        )
        frame = pd.concat([frame.astype(object), summary_row], ignore_index=True)
    frame.to_csv(path, index=False)
    LOGGER.info(f"Wrote {len(rows)} slide metrics to {path}.")
    return summary


def read_metrics(path: Union[str, pathlib.Path]) -> List[SlideMetrics]:
    """Reads the per-slide rows of a metrics file, skipping the summary row"""
    frame = pd.read_csv(path, dtype={"t": str, "algo": str})
    frame = frame[frame["t"] != SUMMARY_LABEL]
    return [
        SlideMetrics(
            t=int(row.t),
            algo=row.algo,
            utility=float(row.utility),
            size=int(row.size),
            micros=float(row.micros),
            checkpoints=int(row.checkpoints),
            stored_elements=int(row.stored_elements),
        )
        for row in frame.itertuples(index=False)
    ]
