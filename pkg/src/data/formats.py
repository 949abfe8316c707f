"""
File formats of the command-line tool.

CSV floats carry 17 significant digits so values re-read bit-identically;
JSON floats use Python's shortest round-trip repr. Non-finite floats become
`null` in JSON and `NA`/`inf` in CSV.
"""

import json
import math
import os
from typing import IO, Any, Union

import numpy as np
import pandas as pd

from src.inference.types import BlockMaximaSet
from src.utils.errors import SeriesParseError

FLOAT_FORMAT = "%.17g"
BLOCK_COLUMNS = ["block_id", "maximum", "n_obs", "n_full"]

PathOrBuffer = Union[str, os.PathLike, IO[str]]


def _ensure_parent(target: PathOrBuffer):
    if isinstance(target, (str, os.PathLike)):
        parent = os.path.dirname(os.fspath(target))
        if parent:
            os.makedirs(parent, exist_ok=True)


def write_csv(frame: pd.DataFrame, target: PathOrBuffer):
    _ensure_parent(target)
    frame.to_csv(target, index=False, float_format=FLOAT_FORMAT, na_rep="NA", lineterminator="\n")


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


def dumps_json(payload: Any) -> str:
    return json.dumps(_jsonable(payload), indent=2, ensure_ascii=False, allow_nan=False)


def write_json(payload: Any, target: PathOrBuffer):
    text = dumps_json(payload) + "\n"
    if isinstance(target, (str, os.PathLike)):
        _ensure_parent(target)
        with open(target, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        target.write(text)


def block_maxima_frame(data: BlockMaximaSet) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "block_id": data.block_ids,
            "maximum": data.maxima,
            "n_obs": data.n_obs,
            "n_full": data.block_n_full,
        },
        columns=BLOCK_COLUMNS,
    )


def parse_float(text: str) -> float:
    # float() rounds correctly, so %.17g text reads back bit-exact
    try:
        return float(text)
    except ValueError:
        return math.nan


def write_block_maxima(data: BlockMaximaSet, target: PathOrBuffer):
    write_csv(block_maxima_frame(data), target)


def read_block_maxima(source: PathOrBuffer) -> BlockMaximaSet:
    """
    Read a `block_id,maximum,n_obs,n_full` CSV.

    Raises:
        SeriesParseError: On a wrong header or a malformed row.
    """
    try:
        frame = pd.read_csv(source, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError as exc:
        raise SeriesParseError("empty block-maxima file", line=1) from exc
    header = [str(col).strip() for col in frame.columns]
    if header != BLOCK_COLUMNS:
        raise SeriesParseError(f"expected header {','.join(BLOCK_COLUMNS)!r}, got {','.join(header)!r}", line=1)
    frame.columns = BLOCK_COLUMNS

    parsed = {}
    for name in BLOCK_COLUMNS:
        parsed[name] = frame[name].str.strip().map(parse_float).to_numpy(dtype=float)
    ok = np.all(np.isfinite(np.column_stack(list(parsed.values()))), axis=1) if len(frame) else np.array([], bool)
    for name in ("block_id", "n_obs", "n_full"):
        ok &= parsed[name] == np.round(parsed[name])
    ok &= (parsed["n_obs"] >= 1) & (parsed["n_obs"] <= parsed["n_full"])
    if not ok.all():
        k = int(np.argmin(ok))
        raise SeriesParseError(f"malformed block row {','.join(frame.iloc[k])!r}", line=k + 2)

    return BlockMaximaSet.from_arrays(
        parsed["maximum"],
        parsed["n_obs"].astype(np.int64),
        parsed["n_full"].astype(np.int64),
        parsed["block_id"].astype(np.int64),
    )
