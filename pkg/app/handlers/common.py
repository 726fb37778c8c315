# app/handlers/common.py

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from app.models.dfa import Dfa
from app.services.formats import load_dfa


def read_input(path: str) -> str:
    """Вміст файлу; '-' — стандартний вхід."""
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def write_output(text: str, out: Optional[str]) -> None:
    if out:
        target = Path(out)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def add_dfa_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", help="Файл автомата (текст або JSON), '-' — stdin")
    parser.add_argument("--json-input", action="store_true", help="Примусово читати JSON-дзеркало")
    parser.add_argument("--complete", action="store_true", help="Доповнити неповну таблицю мертвим станом")


def add_json_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="Вивід у JSON")


def add_cap(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cap", type=int, default=None, help="Кап замикання (за замовчуванням CLOSURE_CAP)")


def load_dfa_arg(args: argparse.Namespace) -> Dfa:
    return load_dfa(
        read_input(args.file),
        json_input=True if args.json_input else None,
        complete=args.complete,
    )
