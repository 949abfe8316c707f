# Data Package
from .series import (
    BlockScheme,
    BlockSpec,
    MissingnessReport,
    RawSeries,
    block_table,
    extract_block_maxima,
    missingness_report,
    parse_series,
)
from .formats import (
    block_maxima_frame,
    dumps_json,
    read_block_maxima,
    write_block_maxima,
    write_csv,
    write_json,
)

__all__ = [
    "BlockScheme",
    "BlockSpec",
    "MissingnessReport",
    "RawSeries",
    "block_table",
    "extract_block_maxima",
    "missingness_report",
    "parse_series",
    "block_maxima_frame",
    "dumps_json",
    "read_block_maxima",
    "write_block_maxima",
    "write_csv",
    "write_json",
]
