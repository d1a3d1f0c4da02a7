#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Reading element streams from JSONL and CSV files.

JSONL records have the form {"payload": ..., "costs": [...], "followers": n}
where costs and followers are optional. CSV rows hold numeric values: the
first d columns are costs if the file carries costs, the remaining columns
are the feature vector (or the value of a modular element).
"""

# Standard libs
import json
import logging
import pathlib
from numbers import Number
from typing import Any, List, Optional, Sequence, Union

# Installed libs
import numpy as np
import pandas as pd

# User-defined libs
from knapwin.core.element import Element
from knapwin.harness.cost_schemes import CostAssigner, StreamRecord, record_costs
from knapwin.utilities.coverage import as_word_bag
from knapwin.utils.errors import MalformedRecordError
from knapwin.utils.raise_exception import raise_exception

LOGGER = logging.getLogger(__name__)

SUPPORTED_FORMATS = ("jsonl", "csv")


def _malformed(msg: str, line_number: Optional[int]) -> None:
    raise_exception(
        f"Malformed record on line {line_number}: {msg}",
        MalformedRecordError,
        line_number=line_number,
    )


def parse_payload(raw: Any, utility: str, line_number: Optional[int] = None) -> Any:
    """
    Converts a raw payload into the representation expected by the oracle
    of the given utility: a word-count dict (coverage), a read-only feature
    vector (ivm), a frozenset of items (bmc), or a float (modular).

    Raises
    ------
    MalformedRecordError
        If the payload does not fit the utility
    """
    if utility == "coverage":
        if isinstance(raw, dict) or (isinstance(raw, list) and all(isinstance(w, str) for w in raw)):
            try:
                return as_word_bag(raw)
            except (TypeError, ValueError):
                _malformed("word counts must be integers", line_number)
        _malformed("a coverage payload is a token list or a word-count object", line_number)

    if utility == "ivm":
        try:
            vec = np.asarray(raw, dtype=float).reshape(-1)
        except (TypeError, ValueError):
            _malformed("an ivm payload is a list of numbers", line_number)
        if vec.size == 0 or not np.all(np.isfinite(vec)):
            _malformed("an ivm payload is a nonempty list of finite numbers", line_number)
        vec.setflags(write=False)
        return vec

    if utility == "bmc":
        if not isinstance(raw, list) or not all(isinstance(i, (str, int)) for i in raw):
            _malformed("a bmc payload is a list of item ids", line_number)
        return frozenset(raw)

    if utility == "modular":
        if isinstance(raw, dict):
            raw = raw.get("value")
        if not isinstance(raw, Number) or isinstance(raw, bool) or not raw >= 0:
            _malformed("a modular payload is a nonnegative number", line_number)
        return float(raw)

    raise_exception(f"Unsupported utility {utility!r}.", ValueError)
    return None


def read_jsonl(path: Union[str, pathlib.Path]) -> List[StreamRecord]:
    """Reads one record per nonblank line; payloads are kept unparsed"""
    records = []
    with open(path, "r", encoding="utf-8") as fp:
        for line_number, line in enumerate(fp, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as err:
                _malformed(f"invalid JSON ({err.msg})", line_number)
            if not isinstance(obj, dict) or "payload" not in obj:
                _malformed("the record has no payload field", line_number)
            costs = obj.get("costs")
            if costs is not None and (
                not isinstance(costs, list)
                or not all(isinstance(c, Number) and not isinstance(c, bool) for c in costs)
            ):
                _malformed("costs must be a list of numbers", line_number)
            followers = obj.get("followers")
            if followers is not None and (not isinstance(followers, Number) or followers < 0):
                _malformed("followers must be a nonnegative number", line_number)
            records.append(
                StreamRecord(obj["payload"], costs, followers, line_number=line_number)
            )
    return records


def read_csv(
    path: Union[str, pathlib.Path], d: int = 1, has_costs: bool = False
) -> List[StreamRecord]:
    """
    Reads numeric rows. A first row that is entirely non-numeric is taken
    as a header. Blank lines are skipped but still count towards the line
    numbers reported in errors.
    """
    try:
        data = pd.read_csv(path, header=None, dtype=str, skip_blank_lines=True)
    except pd.errors.EmptyDataError:
        return []
    except pd.errors.ParserError as err:
        raise_exception(f"Malformed CSV file {path}: {err}", MalformedRecordError)

    # pandas drops blank and whitespace-only lines; row i sits on lines[i]
    with open(path, encoding="utf-8") as fp:
        lines = [number for number, text in enumerate(fp, start=1) if text.strip()]
    numeric = data.apply(pd.to_numeric, errors="coerce")
    if len(numeric) > 0 and numeric.iloc[0].isna().all():
        numeric = numeric.iloc[1:]
    records = []
    for position, *row in numeric.itertuples(index=True):
        line_number = lines[int(position)]
        values = np.asarray(row, dtype=float)
        if np.any(np.isnan(values)):
            _malformed("all fields must be numeric", line_number)
        if has_costs:
            if values.size <= d:
                _malformed(f"expected {d} costs followed by features", line_number)
            records.append(
                StreamRecord(values[d:].tolist(), values[:d].tolist(), line_number=line_number)
            )
        else:
            records.append(StreamRecord(values.tolist(), line_number=line_number))
    return records


def infer_format(path: Union[str, pathlib.Path]) -> str:
    """Returns "csv" for .csv files and "jsonl" otherwise"""
    return "csv" if pathlib.Path(path).suffix.lower() == ".csv" else "jsonl"


def read_records(
    path: Union[str, pathlib.Path],
    fmt: Optional[str] = None,
    d: int = 1,
    csv_has_costs: bool = False,
) -> List[StreamRecord]:
    """Reads all records of a JSONL or CSV file in file order"""
    if not pathlib.Path(path).is_file():
        raise_exception(f"Input file {path} does not exist.", FileNotFoundError)
    fmt = fmt or infer_format(path)
    if fmt not in SUPPORTED_FORMATS:
        raise_exception(
            f"Unsupported input format {fmt!r}. Supported formats: {SUPPORTED_FORMATS}",
            ValueError,
        )
    LOGGER.info(f"Reading the stream from {path}.")
    if fmt == "jsonl":
        records = read_jsonl(path)
    else:
        records = read_csv(path, d, csv_has_costs)
    LOGGER.info(f"Read {len(records)} records.")
    return records


def build_elements(
    records: Sequence[StreamRecord],
    utility: str,
    d: int,
    costs: Union[None, str, CostAssigner] = None,
    seed: int = 0,
    cost_scale: float = 1.0,
) -> List[Element]:
    """
    Turns records into elements with ordinals 1..n. Records that carry
    costs keep their first d costs; the others are priced by the cost
    schemes, which are fitted on the whole record list first.

    Parameters
    ----------
    records : Sequence[StreamRecord]
        Records in stream order
    utility : str
        Utility that interprets the payloads
    d : int
        Number of knapsacks
    costs : str or CostAssigner, optional
        Cost schemes for records without costs
    seed : int, default = 0
        Seed of the generator used by random cost schemes
    cost_scale : float, default = 1.0
        Factor applied to every cost
    """
    assigner = costs
    if isinstance(costs, str):
        assigner = CostAssigner(costs, d, cost_scale)
    if assigner is not None:
        assigner.fit(records)
    rng = np.random.default_rng(seed)

    elements = []
    for ordinal, record in enumerate(records, start=1):
        payload = parse_payload(record.payload, utility, record.line_number)
        if record.costs is not None or assigner is None:
            vector = record_costs(record, d, cost_scale)
        else:
            vector = assigner.assign(record, rng)
        elements.append(Element(ordinal, payload, vector))
    return elements


def ingest(
    path: Union[str, pathlib.Path],
    fmt: Optional[str] = None,
    utility: str = "ivm",
    d: int = 1,
    costs: Union[None, str, CostAssigner] = None,
    seed: int = 0,
    cost_scale: float = 1.0,
    csv_has_costs: bool = False,
) -> List[Element]:
    """
    Reads a stream file and returns its elements in file order.

    Raises
    ------
    MalformedRecordError
        If a record cannot be parsed; the error carries the line number
    CostRangeError
        If a cost falls outside (0, 1]
    """
    records = read_records(path, fmt, d, csv_has_costs)
    return build_elements(records, utility, d, costs, seed, cost_scale)
