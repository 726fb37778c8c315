# app/models/search.py

from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

from pydantic import BaseModel

from app.models.semigroup import TransformationSemigroup
from app.models.transformation import Transformation


@dataclass(frozen=True)
class SearchBudget:
    """nodes — ліміт вузлів; seconds = 0 — без ліміту часу."""

    nodes: int
    seconds: float = 0.0
    workers: int = 1
    deterministic: bool = True


@dataclass(frozen=True)
class Certificate:
    """
    Незалежна перевірка: замкненість і непереставність усіх елементів.
    pair — (f, g) з fg ∉ S; element — переставний елемент.
    """

    valid: bool
    size: int
    pair: Optional[Tuple[Transformation, Transformation]] = None
    element: Optional[Transformation] = None

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class Realization:
    """Старт і фінальні стани, за яких автомат над алфавітом S зведений."""

    start: int
    finals: FrozenSet[int]
    notes: Tuple[str, ...] = ()


@dataclass
class SearchResult:
    degree: int
    best_size: int
    witness: TransformationSemigroup
    exhaustive: bool
    explored_nodes: int
    budget: SearchBudget
    history: List[TransformationSemigroup] = field(default_factory=list)
    realization: Optional[Realization] = None


# -------------------------
# JSON-звіт
# -------------------------


class RealizationModel(BaseModel):
    start: int
    finals: List[int]
    notes: List[str] = []


class SearchReport(BaseModel):
    n: int
    best_size: int
    exhaustive: bool
    explored_nodes: int
    budget_nodes: int
    budget_secs: float
    floor_e_factorial: Optional[int] = None
    theorem_bound: Optional[int] = None
    witness: List[str]
    realization: Optional[RealizationModel] = None
