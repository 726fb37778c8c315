# app/utils/logging_setup.py

from __future__ import annotations

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Mapping, MutableMapping, Optional, Tuple

from rich.console import Console
from rich.logging import RichHandler


# Поля контексту, що потрапляють у префікс повідомлення, у цьому порядку
PREFIX_KEYS: Tuple[str, ...] = ("cmd", "n", "seed", "action")

FILE_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s:%(lineno)d | %(message)s"
FILE_DATEFMT = "%Y-%m-%d %H:%M:%S"


def context_prefix(context: Mapping[str, Any]) -> str:
    parts = [f"{key}={context[key]}" for key in PREFIX_KEYS if key in context]
    return f"[{' '.join(parts)}] " if parts else ""


class ContextAdapter(logging.LoggerAdapter):
    """
    Зливає контекст логера з extra конкретного виклику.
    Контекст виклику має пріоритет: get_logger(..., action="search") + extra={"n": 5}.
    """

    def process(self, msg: Any, kwargs: MutableMapping[str, Any]) -> Tuple[str, MutableMapping[str, Any]]:
        merged = {**self.extra, **(kwargs.get("extra") or {})}
        kwargs["extra"] = merged
        return context_prefix(merged) + str(msg), kwargs


def _level(name: str, fallback: int) -> int:
    return getattr(logging, name.upper(), fallback)


def _console_handler(level: str) -> RichHandler:
    # stderr: stdout зайнятий результатами команд та JSON
    handler = RichHandler(
        console=Console(stderr=True),
        rich_tracebacks=False,
        show_time=False,
        show_level=True,
        show_path=False,
        markup=False,
    )
    handler.setLevel(_level(level, logging.INFO))
    handler.setFormatter(logging.Formatter("%(message)s"))
    return handler


def _file_handler(path: str, level: str, max_bytes: int, backup_count: int) -> RotatingFileHandler:
    target = Path(path).expanduser().resolve()
    target.parent.mkdir(parents=True, exist_ok=True)
    handler = RotatingFileHandler(target, maxBytes=max_bytes, backupCount=backup_count, encoding="utf-8")
    handler.setLevel(_level(level, logging.DEBUG))
    handler.setFormatter(logging.Formatter(fmt=FILE_FORMAT, datefmt=FILE_DATEFMT))
    return handler


def setup_logging(
    *,
    console_level: str = "INFO",
    file_level: str = "DEBUG",
    log_file: Optional[str] = None,
    max_bytes: int = 5 * 1024 * 1024,  # 5 MB
    backup_count: int = 5,
) -> None:
    """
    Кольоровий лог у stderr (RichHandler) та, якщо задано log_file,
    файловий лог із ротацією. Повторний виклик замінює хендлери.
    """
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)

    for h in list(root.handlers):
        root.removeHandler(h)
        h.close()

    root.addHandler(_console_handler(console_level))
    if log_file:
        root.addHandler(_file_handler(log_file, file_level, max_bytes, backup_count))


def get_logger(name: str, **context: Any) -> ContextAdapter:
    """log = get_logger(__name__, action="closure"); log.info("...", extra={"n": 4})"""
    return ContextAdapter(logging.getLogger(name), context)
