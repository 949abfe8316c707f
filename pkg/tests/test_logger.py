import json

import pytest

from src.utils.config import DEFAULT_SEED, load_settings
from src.utils.console import set_quiet, status
from src.utils.logger import ActionType, log_experiment


def read_entries(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_log_experiment_writes_entry(isolated_log):
    log_experiment(
        component="AdjustEstimator",
        estimator="adjust",
        action=ActionType.FIT,
        details={"input_summary": "10 blocks", "output_summary": "converged"},
        status="SUCCESS",
    )
    log_experiment("CLI", "N/A", "DEBUG", {"input_summary": "a", "output_summary": "b"}, "FAILURE")

    entries = read_entries(isolated_log)
    assert len(entries) == 2
    first = entries[0]
    assert first["component"] == "AdjustEstimator"
    assert first["action"] == "MODEL_FIT"
    assert first["details"]["output_summary"] == "converged"
    assert {"id", "timestamp", "estimator", "status"} <= set(first)
    assert entries[1]["action"] == "DEBUG"


def test_log_experiment_rejects_unknown_action(isolated_log):
    with pytest.raises(ValueError):
        log_experiment("CLI", "N/A", "TRAINING", {"input_summary": "a", "output_summary": "b"}, "SUCCESS")
    assert not isolated_log.exists()


def test_log_experiment_requires_summaries(isolated_log):
    with pytest.raises(ValueError, match="output_summary"):
        log_experiment("CLI", "N/A", ActionType.FIT, {"input_summary": "a"}, "SUCCESS")


def test_corrupted_log_is_replaced(isolated_log, capsys):
    set_quiet(False)
    isolated_log.parent.mkdir(parents=True, exist_ok=True)
    isolated_log.write_text("{not json", encoding="utf-8")
    log_experiment("CLI", "N/A", ActionType.INGEST, {"input_summary": "a", "output_summary": "b"}, "SUCCESS")
    assert "corrompu" in capsys.readouterr().err
    entries = read_entries(isolated_log)
    assert len(entries) == 1
    assert entries[0]["action"] == "DATA_INGEST"


def test_settings_defaults(isolated_log):
    settings = load_settings()
    assert settings.log_file == str(isolated_log)
    assert settings.threads == 1
    assert settings.seed == DEFAULT_SEED


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("GEVMISS_THREADS", "4")
    monkeypatch.setenv("GEVMISS_SEED", "7")
    settings = load_settings()
    assert (settings.threads, settings.seed) == (4, 7)


@pytest.mark.parametrize("threads", ["0", "-2", "many"])
def test_settings_reject_bad_threads(monkeypatch, threads):
    monkeypatch.setenv("GEVMISS_THREADS", threads)
    with pytest.raises(ValueError, match="GEVMISS_THREADS"):
        load_settings()


def test_status_goes_to_stderr(capsys):
    set_quiet(False)
    status("hello", "ok")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "hello" in captured.err


def test_quiet_silences_status(capsys):
    set_quiet(True)
    try:
        status("hidden", "warn")
    finally:
        set_quiet(False)
    assert capsys.readouterr().err == ""
