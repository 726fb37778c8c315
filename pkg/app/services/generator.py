# app/services/generator.py

from __future__ import annotations

import string
from typing import List, Literal, Tuple

import numpy as np
from numpy.random import PCG64, Generator
from pydantic import BaseModel, Field

from app.models.dfa import Dfa
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="randgen")


class GeneratorConfig(BaseModel):
    """
    Параметри генератора. Потік PCG64 з фіксованим seed дає однаковий
    автомат на будь-якій платформі.
    """

    seed: int = Field(0, ge=0, lt=2**64, description="64-бітне зерно PCG64")
    state_count: int = Field(..., ge=1, description="Кількість станів n")
    alphabet_size: int = Field(2, ge=1, description="Розмір алфавіту k")
    mode: Literal["uniform", "gendef-positive"] = "uniform"
    final_density: float = Field(0.5, gt=0.0, lt=1.0, description="Ймовірність фінальності стану")


def alphabet_names(k: int) -> Tuple[str, ...]:
    if k <= len(string.ascii_lowercase):
        return tuple(string.ascii_lowercase[:k])
    return tuple(f"s{i + 1}" for i in range(k))


def _finals(rng: Generator, n: int, density: float) -> frozenset:
    return frozenset(np.flatnonzero(rng.random(n) < density).tolist())


def _uniform(rng: Generator, cfg: GeneratorConfig) -> Dfa:
    n, k = cfg.state_count, cfg.alphabet_size
    delta = rng.integers(0, n, size=(n, k))
    return Dfa(
        state_count=n,
        alphabet=alphabet_names(k),
        delta=tuple(map(tuple, delta.tolist())),
        start=0,
        finals=_finals(rng, n, cfg.final_density),
    )


def _sink_blocks(rng: Generator, first: int, n: int) -> List[Tuple[int, ...]]:
    """Розбиває [first, n) на 1–3 непорожні блоки."""
    size = n - first
    count = int(rng.integers(1, min(3, size) + 1))
    cuts = sorted(rng.choice(np.arange(1, size), size=count - 1, replace=False).tolist()) if count > 1 else []
    bounds = [0] + cuts + [size]
    return [tuple(range(first + lo, first + hi)) for lo, hi in zip(bounds, bounds[1:])]


def _gendef_positive(rng: Generator, cfg: GeneratorConfig) -> Dfa:
    """
    Префікс із ⌊n/2⌋ станів (усі переходи строго вперед) і 1–3 стоки, на яких
    кожна літера діє константою. Дії слів на стоках — константи, тож мова
    узагальнено визначена.

    Перша літера проходить префікс ланцюгом q ↦ q+1, тож увесь префікс
    досяжний зі стартового стану; решта літер стрибають у випадкові стани попереду.
    """
    n, k = cfg.state_count, cfg.alphabet_size
    prefix = n // 2 if n >= 2 else 0
    delta = np.zeros((n, k), dtype=np.int64)
    for q in range(prefix):
        delta[q] = rng.integers(q + 1, n, size=k)
        delta[q, 0] = q + 1
    for block in _sink_blocks(rng, prefix, n):
        targets = rng.choice(np.asarray(block), size=k)
        delta[list(block)] = targets
    return Dfa(
        state_count=n,
        alphabet=alphabet_names(k),
        delta=tuple(map(tuple, delta.tolist())),
        start=0,
        finals=_finals(rng, n, cfg.final_density),
    )


def generate_random_dfa(cfg: GeneratorConfig) -> Dfa:
    rng = Generator(PCG64(cfg.seed))
    if cfg.mode == "uniform":
        A = _uniform(rng, cfg)
    else:
        A = _gendef_positive(rng, cfg)
    log.debug(
        "Автомат згенеровано",
        extra={"seed": cfg.seed, "n": cfg.state_count, "mode": cfg.mode},
    )
    return A
