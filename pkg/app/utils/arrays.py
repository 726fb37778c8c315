# app/utils/arrays.py

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from app.models.transformation import Transformation


# n^n має вміститися в int64: 15^15 ≈ 4.4·10^17, 16^16 вже ні
MAX_CODED_DEGREE = 15


def stack(transformations: Iterable[Transformation], degree: int) -> np.ndarray:
    """Матриця образів (m × n), рядок — одне перетворення."""
    rows = [t.images for t in transformations]
    if not rows:
        return np.zeros((0, degree), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64)


def can_encode(degree: int) -> bool:
    return degree <= MAX_CODED_DEGREE


def place_values(degree: int) -> np.ndarray:
    return degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)


def encode(rows: np.ndarray, degree: int) -> np.ndarray:
    """
    Кодує рядки образів числами в системі числення з основою n.
    Порядок кодів збігається з лексикографічним порядком векторів.
    """
    if not can_encode(degree):
        raise ValueError(f"Степінь {degree} завеликий для цілочисельного кодування")
    return rows.astype(np.int64, copy=False) @ place_values(degree)


def to_transformations(rows: np.ndarray) -> list[Transformation]:
    return [Transformation(tuple(row)) for row in rows.tolist()]


def first_true(mask: np.ndarray) -> Optional[int]:
    hits = np.flatnonzero(mask)
    return int(hits[0]) if hits.size else None
