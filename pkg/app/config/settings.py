# app/config/settings.py

from __future__ import annotations

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Базові налаштування застосунку (читаються з оточення та .env).

    Pydantic v2: BaseSettings у пакеті pydantic-settings,
    конфіг задається через model_config.
    """

    CLOSURE_CAP: int = Field(
        1_000_000,
        gt=0,
        description="Максимальна кількість елементів при замиканні напівгрупи",
    )

    ENUM_GUARD: int = Field(
        8,
        ge=1,
        description="Найбільше n для повного перебору NP_n (8^8 ≈ 1.7·10^7 відображень)",
    )

    CANDIDATE_GUARD: int = Field(
        8,
        ge=2,
        description="Найбільше n для побудови напівгрупи-кандидата B",
    )

    BOUND_MAX_N: int = Field(
        20,
        ge=3,
        description="Найбільше n для формул оцінок (факторіали)",
    )

    DEFIZE_MAX_ALPHABET: int = Field(
        10_000,
        gt=0,
        description="Обмеження на розмір алфавіту автомата, побудованого defize",
    )

    SEARCH_BUDGET_NODES: int = Field(
        10_000_000,
        gt=0,
        description="Бюджет вузлів дерева пошуку за замовчуванням",
    )

    SEARCH_BUDGET_SECS: float = Field(
        0.0,
        ge=0.0,
        description="Бюджет часу пошуку в секундах (0 — без обмеження)",
    )

    SEARCH_WORKERS: int = Field(
        1,
        ge=1,
        description="Кількість процесів для паралельного пошуку (1 — послідовно)",
    )

    # Матеріалізувати лише пари станів з одного стоку (економія пам'яті при великих n)
    PRODUCT_SINKS_ONLY: bool = Field(
        False,
        description="Будувати квадрат автомата лише на парах з одного стоку",
    )

    BENCH_REPEATS: int = Field(
        5,
        ge=1,
        description="Кількість повторів для медіани в bench-gendef",
    )

    LOG_LEVEL: str = Field("INFO", description="Рівень консольного логу")

    # Порожній рядок вимикає файловий лог
    LOG_FILE: str = Field(
        "data/logs/semidef.log",
        description="Шлях до файлу логу з ротацією",
    )

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",  # ігнорувати зайві змінні в .env
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Повертає спільний екземпляр Settings (читається один раз).
    """
    return Settings()
