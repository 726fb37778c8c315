# app/handlers/__init__.py

from __future__ import annotations

import argparse

# Автомати: класифікація, мінімізація, напівгрупи переходів, defize
from app.handlers import automata

# Перетворення та оцінки
from app.handlers import semigroup

# Пошук найбільших непереставних напівгруп
from app.handlers import search


def register_automata_handlers(subparsers: argparse._SubParsersAction) -> None:
    """
    Команди, що працюють з автоматами (classify, minimize, semigroup, syc,
    defize, randgen, bench-gendef).
    """
    automata.register(subparsers)


def register_semigroup_handlers(subparsers: argparse._SubParsersAction) -> None:
    """
    Команди над перетвореннями та напівгрупами (np-check, bounds, candidate-b,
    search-max, search-defsyc).
    """
    semigroup.register(subparsers)
    search.register(subparsers)


def register_all_handlers(subparsers: argparse._SubParsersAction) -> None:
    """
    Головна точка реєстрації всіх підкоманд.

    Викликається з main.py один раз при побудові парсера.
    """
    register_automata_handlers(subparsers)
    register_semigroup_handlers(subparsers)
