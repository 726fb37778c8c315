# app/models/errors.py

from __future__ import annotations

from typing import Optional


class SemidefError(Exception):
    """Базовий виняток застосунку."""


# -------------------------
# Помилки вхідних даних (код виходу 2)
# -------------------------


class InputError(SemidefError, ValueError):
    """Некоректні вхідні дані або аргументи."""


class ParseError(InputError):
    """Помилка розбору тексту: зберігає номер рядка та позицію."""

    def __init__(self, reason: str, *, line: Optional[int] = None, position: Optional[int] = None) -> None:
        self.reason = reason
        self.line = line
        self.position = position
        where = []
        if line is not None:
            where.append(f"рядок {line}")
        if position is not None:
            where.append(f"позиція {position}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + reason)


class DegreeMismatchError(InputError):
    """Перетворення різних степенів."""


class GuardExceededError(InputError):
    """Розмір задачі перевищує налаштоване обмеження."""


# -------------------------
# Невиконані передумови (код виходу 2)
# -------------------------


class PreconditionError(SemidefError, ValueError):
    """Передумова операції не виконана."""


class NotNonpermutationalError(PreconditionError):
    pass


class NotReducedError(PreconditionError):
    pass


class NotGeneralizedDefiniteError(PreconditionError):
    pass


class TruncatedSemigroupError(PreconditionError):
    """Замикання обрізане капом — вердикт був би необґрунтованим."""


class SingletonSinkError(PreconditionError):
    """Найбільший стік одноелементний: конструкція для цього випадку не підтримується."""


# -------------------------
# Порушення властивостей (код виходу 1)
# -------------------------


class PropertyViolationError(SemidefError, RuntimeError):
    """Самоперевірка результату не пройшла."""
