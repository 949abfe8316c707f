"""
Raw daily series: CSV ingestion, block extraction and missingness reporting.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Optional, Union

import numpy as np
import pandas as pd

from src.data.formats import parse_float
from src.inference.types import BlockMaximaSet
from src.utils.errors import ConfigError, InsufficientDataError, SeriesParseError

MISSING_MARKERS = ("", "NA")
EXPECTED_HEADER = ["date", "value"]


@dataclass(frozen=True, eq=False)
class RawSeries:
    """Daily values on a gap-free calendar; NaN marks a missing day."""
    timestamps: pd.DatetimeIndex
    values: np.ndarray

    def __post_init__(self):
        timestamps = pd.DatetimeIndex(self.timestamps)
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if len(timestamps) != values.size:
            raise SeriesParseError("timestamps and values differ in length")
        if not (timestamps.is_monotonic_increasing and timestamps.is_unique):
            raise SeriesParseError("timestamps must be strictly increasing")
        if not np.any(np.isfinite(values)):
            raise SeriesParseError("series has no non-missing value")
        values.setflags(write=False)
        object.__setattr__(self, "timestamps", timestamps)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    @property
    def n_missing(self) -> int:
        return int(np.sum(~np.isfinite(self.values)))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"value": self.values}, index=self.timestamps)


def parse_series(source: Union[str, IO[str]]) -> RawSeries:
    """
    Read a `date,value` CSV into a daily RawSeries.

    Empty fields and `NA` are missing; calendar days absent from the file
    but inside its date span are missing too. Blank lines are ignored and
    still count towards reported line numbers.

    Raises:
        SeriesParseError: Bad header, malformed date or number (with its
            line number), duplicate date, or no usable value.
    """
    try:
        frame = pd.read_csv(
            source, dtype=str, keep_default_na=False, skipinitialspace=True, skip_blank_lines=False
        )
    except pd.errors.EmptyDataError as exc:
        raise SeriesParseError("empty input", line=1) from exc
    except pd.errors.ParserError as exc:
        raise SeriesParseError(f"unreadable CSV: {exc}") from exc

    header = [str(col).strip() for col in frame.columns]
    if header != EXPECTED_HEADER:
        raise SeriesParseError(f"expected header 'date,value', got {','.join(header)!r}", line=1)
    frame.columns = EXPECTED_HEADER
    frame = frame.fillna("")
    lines = np.arange(len(frame)) + 2
    blank = ((frame["date"].str.strip() == "") & (frame["value"].str.strip() == "")).to_numpy()
    frame, lines = frame[~blank], lines[~blank]
    if frame.empty:
        raise SeriesParseError("no data rows", line=2)

    raw_dates = frame["date"].str.strip()
    dates = pd.to_datetime(raw_dates, format="ISO8601", errors="coerce")
    bad = dates.isna().to_numpy()
    if bad.any():
        k = int(np.argmax(bad))
        raise SeriesParseError(f"malformed date {raw_dates.iloc[k]!r}", line=int(lines[k]))
    dates = dates.dt.tz_localize(None) if dates.dt.tz is not None else dates
    dates = dates.dt.normalize()

    raw_values = frame["value"].str.strip()
    missing = raw_values.isin(MISSING_MARKERS).to_numpy()
    values = raw_values.where(~missing, "nan").map(parse_float).to_numpy(dtype=float)
    bad = ~missing & ~np.isfinite(values)
    if bad.any():
        k = int(np.argmax(bad))
        raise SeriesParseError(f"malformed value {raw_values.iloc[k]!r}", line=int(lines[k]))

    duplicated = dates.duplicated().to_numpy()
    if duplicated.any():
        k = int(np.argmax(duplicated))
        raise SeriesParseError(f"duplicate date {dates.iloc[k].date()}", line=int(lines[k]))

    observed = pd.Series(values, index=pd.DatetimeIndex(dates)).sort_index()
    daily = observed.reindex(pd.date_range(observed.index[0], observed.index[-1], freq="D"))
    return RawSeries(daily.index, daily.to_numpy(dtype=float))


class BlockScheme(str, Enum):
    CALENDAR_YEAR = "calendar_year"
    FIXED_LENGTH = "fixed_length"


@dataclass(frozen=True)
class BlockSpec:
    scheme: BlockScheme = BlockScheme.CALENDAR_YEAR
    length: Optional[int] = None
    min_obs: int = 1

    def __post_init__(self):
        try:
            object.__setattr__(self, "scheme", BlockScheme(self.scheme))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.scheme is BlockScheme.FIXED_LENGTH and (self.length is None or self.length < 1):
            raise ConfigError("fixed_length blocks need length >= 1")
        if self.min_obs < 1:
            raise ConfigError("min_obs must be >= 1")


def block_table(series: RawSeries, spec: BlockSpec) -> pd.DataFrame:
    """
    Every block spanned by the series, retained or not, with columns
    block_id, maximum (NaN when empty), n_obs, n_full.
    """
    frame = series.to_frame()
    if spec.scheme is BlockScheme.CALENDAR_YEAR:
        keys = frame.index.year
    else:
        keys = np.arange(len(frame)) // spec.length + 1
    grouped = frame.groupby(keys)["value"].agg(["max", "count"])
    table = pd.DataFrame(
        {
            "block_id": grouped.index.to_numpy(dtype=np.int64),
            "maximum": grouped["max"].to_numpy(dtype=float),
            "n_obs": grouped["count"].to_numpy(dtype=np.int64),
        }
    )
    if spec.scheme is BlockScheme.CALENDAR_YEAR:
        year = table["block_id"].to_numpy()
        leap = (year % 4 == 0) & ((year % 100 != 0) | (year % 400 == 0))
        table["n_full"] = np.where(leap, 366, 365).astype(np.int64)
    else:
        table["n_full"] = np.int64(spec.length)
    return table


def extract_block_maxima(series: RawSeries, spec: BlockSpec) -> BlockMaximaSet:
    """
    Block maxima with per-block non-missing counts; blocks with fewer than
    spec.min_obs values are dropped (see missingness_report).

    Raises:
        InsufficientDataError: If no block survives.
    """
    table = block_table(series, spec)
    kept = table[table["n_obs"] >= spec.min_obs]
    if kept.empty:
        raise InsufficientDataError(0, 1, reason=f"no block has at least {spec.min_obs} observation(s)")
    return BlockMaximaSet.from_arrays(
        kept["maximum"].to_numpy(), kept["n_obs"].to_numpy(), kept["n_full"].to_numpy(), kept["block_id"].to_numpy()
    )


@dataclass
class MissingnessReport:
    total_missing_fraction: float
    retained_missing_fraction: float
    n_blocks: int
    dropped_block_ids: list[int] = field(default_factory=list)
    per_block: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "total_missing_fraction": self.total_missing_fraction,
            "retained_missing_fraction": self.retained_missing_fraction,
            "n_blocks": self.n_blocks,
            "n_dropped": len(self.dropped_block_ids),
            "dropped_block_ids": self.dropped_block_ids,
            "per_block": self.per_block,
        }


def missingness_report(
    series: RawSeries, spec: BlockSpec, blocks: Optional[BlockMaximaSet] = None
) -> MissingnessReport:
    """
    Missing fractions over every spanned block and over the retained ones,
    1 - sum(n_obs) / sum(n_full) in both cases.
    """
    table = block_table(series, spec)
    blocks = blocks if blocks is not None else extract_block_maxima(series, spec)
    retained = set(int(i) for i in blocks.block_ids)
    dropped = [int(i) for i in table["block_id"] if int(i) not in retained]
    per_block = [
        {
            "block_id": int(row.block_id),
            "n_obs": int(row.n_obs),
            "n_full": int(row.n_full),
            "missing_fraction": 1.0 - row.n_obs / row.n_full,
            "retained": int(row.block_id) in retained,
        }
        for row in table.itertuples(index=False)
    ]
    return MissingnessReport(
        total_missing_fraction=1.0 - int(table["n_obs"].sum()) / int(table["n_full"].sum()),
        retained_missing_fraction=1.0 - int(blocks.n_obs.sum()) / int(blocks.block_n_full.sum()),
        n_blocks=blocks.n_blocks,
        dropped_block_ids=dropped,
        per_block=per_block,
    )
