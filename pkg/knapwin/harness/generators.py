#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Seeded synthetic streams that stand in for real datasets. A generator
specification is a JSON object (inline or in a file), for example
{"n": 1000, "family": "vectors", "dim": 5, "d": 1,
 "costs": "iid_uniform(0.02,0.08)"}.
"""

# Standard libs
import json
import logging
import pathlib
from collections import Counter
from typing import Any, Dict, List, Optional, Union

# Installed libs
import numpy as np

# User-defined libs
from knapwin.core.element import Element
from knapwin.harness.cost_schemes import CostAssigner, StreamRecord
from knapwin.harness.ingest import build_elements
from knapwin.utils.raise_exception import raise_exception

LOGGER = logging.getLogger(__name__)

# Payload families, their parameters with defaults, and the utility that
# interprets them
FAMILY_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "tokens": {
        "vocabulary": 1000,
        "zipf": 1.1,
        "mean_length": 10.0,
        "followers_mu": 4.0,
        "followers_sigma": 1.5,
    },
    "vectors": {"dim": 5},
    "items": {"universe": 100, "mean_size": 5.0},
    "values": {"low": 0.0, "high": 1.0},
}
FAMILY_UTILITY = {
    "tokens": "coverage",
    "vectors": "ivm",
    "items": "bmc",
    "values": "modular",
}
DEFAULT_COSTS = "iid_uniform(0.02,0.08)"


def parse_generator_spec(spec: Union[str, Dict[str, Any]]) -> Dict[str, Any]:
    """
    Returns a complete generator specification. A string starting with
    "{" is parsed as inline JSON; any other string is the path of a JSON file.
    """
    if isinstance(spec, str):
        try:
            if spec.lstrip().startswith("{"):
                spec = json.loads(spec)
            else:
                spec = json.loads(pathlib.Path(spec).read_text(encoding="utf-8"))
        except json.JSONDecodeError as err:
            raise_exception(f"Generator specification is not valid JSON: {err}", ValueError)
    if not isinstance(spec, dict):
        raise_exception("Generator specification must be a JSON object.", ValueError)

    family = spec.get("family", "vectors")
    if family not in FAMILY_DEFAULTS:
        raise_exception(
            f"Unknown generator family {family!r}. Supported families: "
            f"{sorted(FAMILY_DEFAULTS)}",
            ValueError,
        )
    unknown = set(spec) - set(FAMILY_DEFAULTS[family]) - {
        "n",
        "family",
        "d",
        "costs",
        "cost_scale",
    }
    if unknown:
        raise_exception(
            f"Unknown keys {sorted(unknown)} in the specification of family {family!r}.",
            ValueError,
        )
    full = {"n": 1000, "family": family, "d": 1, "costs": DEFAULT_COSTS, "cost_scale": 1.0}
    full.update(FAMILY_DEFAULTS[family])
    full.update(spec)
    if int(full["n"]) != full["n"] or full["n"] < 0:
        raise_exception(f"n must be a nonnegative integer, received {full['n']}.", ValueError)
    return full


def _token_payload(rng: np.random.Generator, spec: Dict[str, Any], probs: np.ndarray):
    length = max(1, int(rng.poisson(spec["mean_length"])))
    ranks = rng.choice(len(probs), size=length, p=probs)
    bag = Counter(f"w{rank}" for rank in ranks)
    followers = int(rng.lognormal(spec["followers_mu"], spec["followers_sigma"]))
    return dict(sorted(bag.items())), followers


def generate_records(
    spec: Union[str, Dict[str, Any]], seed: int = 0
) -> List[StreamRecord]:
    """
    Draws a stream of records with costs; the same specification and seed
    always give the same records.
    """
    spec = parse_generator_spec(spec)
    rng = np.random.default_rng(seed)
    family = spec["family"]
    n = int(spec["n"])

    records = []
    if family == "tokens":
        ranks = np.arange(1, int(spec["vocabulary"]) + 1, dtype=float)
        probs = ranks ** (-float(spec["zipf"]))
        probs /= probs.sum()
        for _ in range(n):
            payload, followers = _token_payload(rng, spec, probs)
            records.append(StreamRecord(payload, followers=followers))
    elif family == "vectors":
        for row in rng.random((n, int(spec["dim"]))):
            records.append(StreamRecord(row.tolist()))
    elif family == "items":
        universe = int(spec["universe"])
        for _ in range(n):
            size = min(universe, max(1, int(rng.poisson(spec["mean_size"]))))
            items = np.sort(rng.choice(universe, size=size, replace=False))
            records.append(StreamRecord([f"i{item}" for item in items]))
    else:
        for value in rng.uniform(spec["low"], spec["high"], size=n):
            records.append(StreamRecord(float(value)))

    assigner = CostAssigner(spec["costs"], int(spec["d"]), spec["cost_scale"])
    assigner.fit(records)
    for record in records:
        record.costs = assigner.assign(record, rng).tolist()
    LOGGER.info(f"Generated {n} {family} records with seed {seed}.")
    return records


def generate(
    spec: Union[str, Dict[str, Any]], seed: int = 0, utility: Optional[str] = None
) -> List[Element]:
    """
    Returns a seeded synthetic stream of elements. The utility defaults to
    the one matching the payload family.
    """
    spec = parse_generator_spec(spec)
    records = generate_records(spec, seed)
    return build_elements(records, utility or FAMILY_UTILITY[spec["family"]], int(spec["d"]))


def write_records(records: List[StreamRecord], path: Union[str, pathlib.Path]) -> None:
    """Writes records as JSONL with a stable key order"""
    with open(path, "w", encoding="utf-8") as fp:
        for record in records:
            obj = {"payload": record.payload, "costs": record.costs}
            if record.followers is not None:
                obj["followers"] = record.followers
            fp.write(json.dumps(obj, sort_keys=True) + "\n")
    LOGGER.info(f"Wrote {len(records)} records to {path}.")
