# tests/test_settings.py

from __future__ import annotations

import logging

from app.config.settings import get_settings
from app.services.semigroup import close
from app.utils.logging_setup import context_prefix, get_logger, setup_logging
from tests.helpers import T


def test_settings_read_environment(monkeypatch):
    monkeypatch.setenv("CLOSURE_CAP", "7")
    monkeypatch.setenv("SEARCH_WORKERS", "3")
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.CLOSURE_CAP == 7
    assert settings.SEARCH_WORKERS == 3
    assert settings.LOG_FILE == ""


def test_closure_cap_from_settings(monkeypatch):
    monkeypatch.setenv("CLOSURE_CAP", "7")
    get_settings.cache_clear()
    S = close([T(2, 3, 4, 1), T(2, 1, 3, 4)])
    assert S.truncated and len(S) == 7


def test_file_log_receives_context(tmp_path):
    target = tmp_path / "logs" / "run.log"
    setup_logging(console_level="WARNING", file_level="DEBUG", log_file=str(target))
    log = get_logger("tests.settings", action="closure")
    log.info("Замикання завершено", extra={"n": 4})
    for handler in logging.getLogger().handlers:
        handler.flush()
    text = target.read_text(encoding="utf-8")
    assert "[n=4 action=closure] Замикання завершено" in text
    setup_logging(log_file="")


def test_context_prefix_order_and_override():
    assert context_prefix({"action": "search", "n": 5, "size": 9}) == "[n=5 action=search] "
    assert context_prefix({"size": 9}) == ""
    log = get_logger("tests.settings", action="closure", n=3)
    msg, kwargs = log.process("ok", {"extra": {"n": 4}})
    assert msg == "[n=4 action=closure] ok"
    assert kwargs["extra"] == {"action": "closure", "n": 4}
