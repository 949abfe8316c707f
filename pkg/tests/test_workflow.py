import numpy as np
import pandas as pd
import pytest

from src.data import BlockSpec
from src.workflow import TABLE_COLUMNS, CaseStudyOptions, CaseStudyPipeline


@pytest.fixture
def daily_csv(tmp_path):
    days = pd.date_range("1981-01-01", "2010-12-31", freq="D")
    values = np.random.default_rng(3).exponential(size=days.size)
    frame = pd.DataFrame({"date": days.strftime("%Y-%m-%d"), "value": values})
    # four poorly covered years
    for year in (1985, 1992, 1999, 2006):
        frame.loc[(days.year == year) & (days.dayofyear > 120), "value"] = np.nan
    path = tmp_path / "daily.csv"
    frame.to_csv(path, index=False, na_rep="NA")
    return path


def test_pipeline_completes(daily_csv):
    options = CaseStudyOptions(periods=(25.0, 50.0, 100.0))
    state = CaseStudyPipeline().run(str(daily_csv), options)

    assert state["current_phase"] == "COMPLETED"
    assert state["errors"] == []
    table = state["table"]
    assert list(table.columns) == TABLE_COLUMNS
    assert len(table) == 4 * (3 + 3)
    assert set(table["choice"]) == {"adjusted_all", "unadjusted_all", "adjusted_removed", "unadjusted_removed"}
    assert state["blocks"].n_blocks == 30
    assert state["report"]["n_blocks"] == 30


def test_pipeline_removal_and_adjustment(daily_csv):
    state = CaseStudyPipeline().run(str(daily_csv), CaseStudyOptions(periods=(50.0,)))
    fits = state["fits"]
    assert fits["adjusted_all"].n_blocks_used == 30
    assert fits["adjusted_removed"].n_blocks_used == 26
    assert fits["unadjusted_removed"].n_blocks_used == 26

    rl = state["table"][state["table"]["quantity"] == "rl50"].set_index("choice")
    assert (rl["lo"] <= rl["estimate"]).all() and (rl["estimate"] <= rl["hi"]).all()
    # only complete years survive removal
    assert rl.loc["adjusted_removed", "estimate"] == pytest.approx(rl.loc["unadjusted_removed", "estimate"], rel=1e-6)


def test_pipeline_fixed_length_blocks(daily_csv):
    options = CaseStudyOptions(block_spec=BlockSpec("fixed_length", length=730), periods=(10.0,))
    state = CaseStudyPipeline().run(str(daily_csv), options)
    assert state["current_phase"] == "COMPLETED"
    # 10957 days: 15 full blocks plus a short trailing one
    assert state["blocks"].n_blocks == 16
    assert state["blocks"].block_n_full[-1] == 730


def test_pipeline_bad_input(tmp_path):
    state = CaseStudyPipeline().run(str(tmp_path / "missing.csv"))
    assert state["current_phase"] == "REPORT_FAILED"
    assert state["table"].empty
    assert state["errors"] and state["errors"][0].startswith("Ingest failed")
    assert state["fits"] == {}


def test_pipeline_malformed_series(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("date,value\n2001-01-01,1.0\n2001-01-02,oops\n")
    state = CaseStudyPipeline().run(str(path))
    assert state["current_phase"] == "REPORT_FAILED"
    assert "line 3" in state["errors"][0]
