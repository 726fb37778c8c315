# app/main.py

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.config.settings import get_settings
from app.handlers import register_all_handlers
from app.models.errors import InputError, PreconditionError, PropertyViolationError
from app.utils.logging_setup import get_logger, setup_logging

log = get_logger(__name__, action="startup")

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semidef",
        description="Визначені та узагальнено визначені автомати, непереставні напівгрупи перетворень",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="<command>")
    subparsers.required = True
    register_all_handlers(subparsers)
    return parser


def _fail(code: int, message: str, command: Optional[str]) -> int:
    sys.stderr.write(f"semidef: {message}\n")
    log.error(message, extra={"cmd": command or "-"})
    return code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse: 0 для --help, 2 для помилок використання
        return int(e.code or 0)

    # 1. Налаштування та логування
    try:
        settings = get_settings()
    except ValidationError as e:
        sys.stderr.write(f"semidef: некоректні налаштування: {e}\n")
        return EXIT_USAGE
    setup_logging(console_level=settings.LOG_LEVEL, file_level="DEBUG", log_file=settings.LOG_FILE)
    log.debug("Старт команди", extra={"cmd": args.command})

    # 2. Виконання підкоманди
    try:
        return int(args.handler(args))
    except PropertyViolationError as e:
        return _fail(EXIT_PROPERTY, f"порушення властивості: {e}", args.command)
    except (InputError, PreconditionError) as e:
        return _fail(EXIT_USAGE, str(e), args.command)
    except ValidationError as e:
        return _fail(EXIT_USAGE, f"некоректні параметри: {e}", args.command)
    except OSError as e:
        return _fail(EXIT_USAGE, f"помилка введення-виведення: {e}", args.command)


if __name__ == "__main__":
    sys.exit(main())
