# app/services/bench.py

from __future__ import annotations

import time
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from app.config.settings import get_settings
from app.models.dfa import Dfa
from app.services.automata import minimize
from app.services.classify import is_generalized_definite
from app.services.generator import GeneratorConfig, generate_random_dfa
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="bench")

BENCH_COLUMNS = ["n", "minimal", "ms", "ms_sinks_only", "ratio", "ratio_sinks_only"]


def _median_ms(A: Dfa, count: int, *, sinks_only: bool) -> float:
    timings: List[float] = []
    for _ in range(count):
        started = time.perf_counter()
        verdict = is_generalized_definite(A, sinks_only=sinks_only)
        timings.append((time.perf_counter() - started) * 1000.0)
    if not verdict.holds:
        log.warning("gendef-positive автомат відхилено", extra={"n": A.state_count})
    return float(np.median(timings))


def bench_gendef(
    sizes: Sequence[int],
    *,
    alphabet_size: int = 2,
    seed: int = 0,
    repeats: Optional[int] = None,
) -> pd.DataFrame:
    """
    Час is_generalized_definite на gendef-positive автоматах (алгоритм
    доходить до кроку 5), медіана з repeats запусків.

    Колонки: n; minimal — розмір мінімального автомата, на якому реально
    працює тест; ms — повний квадрат автомата; ms_sinks_only — квадрат лише
    на парах з одного стоку; ratio* — t(n) / t(попереднього n).
    """
    count = repeats if repeats is not None else get_settings().BENCH_REPEATS
    rows = []
    for n in sizes:
        A = generate_random_dfa(
            GeneratorConfig(seed=seed, state_count=n, alphabet_size=alphabet_size, mode="gendef-positive")
        )
        M, _ = minimize(A)
        row = {
            "n": n,
            "minimal": M.state_count,
            "ms": _median_ms(A, count, sinks_only=False),
            "ms_sinks_only": _median_ms(A, count, sinks_only=True),
        }
        rows.append(row)
        log.info(
            "Розмір виміряно",
            extra={"n": n, "minimal": row["minimal"], "ms": round(row["ms"], 2)},
        )

    table = pd.DataFrame(rows, columns=BENCH_COLUMNS[:4])
    table["ratio"] = table["ms"] / table["ms"].shift(1)
    table["ratio_sinks_only"] = table["ms_sinks_only"] / table["ms_sinks_only"].shift(1)
    return table
