# app/models/semigroup.py

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, Optional, Tuple

import numpy as np

from app.models.errors import DegreeMismatchError, InputError
from app.models.transformation import Transformation
from app.utils.arrays import stack


@dataclass(frozen=True)
class TransformationSemigroup:
    """
    Множина перетворень степеня n (без повторів) з необов'язковими генераторами.

    elements зберігає канонічний порядок: порядок відкриття для замикань,
    лексикографічний для побудованих множин. truncated=True — замикання
    зупинене капом, і множина може бути не замкненою.
    """

    degree: int
    elements: Tuple[Transformation, ...]
    generators: Optional[Tuple[Transformation, ...]] = None
    truncated: bool = False
    _members: FrozenSet[Transformation] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise InputError(f"Степінь має бути ≥ 1, отримано {self.degree}")
        seen: set[Transformation] = set()
        ordered = []
        for t in self.elements:
            if t.degree != self.degree:
                raise DegreeMismatchError(f"{t} має степінь {t.degree}, очікується {self.degree}")
            if t not in seen:
                seen.add(t)
                ordered.append(t)
        object.__setattr__(self, "elements", tuple(ordered))
        object.__setattr__(self, "_members", frozenset(seen))
        if self.generators is not None:
            gens = tuple(self.generators)
            object.__setattr__(self, "generators", gens)
            missing = [g for g in gens if g not in seen]
            if missing:
                raise InputError(f"Генератори не входять до елементів: {', '.join(map(str, missing))}")

    @classmethod
    def from_set(cls, elements, degree: Optional[int] = None) -> "TransformationSemigroup":
        """Побудована множина — лексикографічний порядок."""
        items = sorted(set(elements))
        if degree is None:
            if not items:
                raise InputError("Для порожньої множини потрібно вказати степінь")
            degree = items[0].degree
        return cls(degree=degree, elements=tuple(items))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Transformation]:
        return iter(self.elements)

    def __contains__(self, item: object) -> bool:
        return item in self._members

    def as_array(self) -> np.ndarray:
        return stack(self.elements, self.degree)


@dataclass(frozen=True)
class ClosureCheck:
    """Результат перевірки замкненості: порушувальна пара (f, g) з fg ∉ S."""

    closed: bool
    witness: Optional[Tuple[Transformation, Transformation]] = None

    def __bool__(self) -> bool:
        return self.closed


@dataclass(frozen=True)
class IdentityCheck:
    """Результат перевірки тотожності: контрприклад (x, y) у канонічному порядку."""

    holds: bool
    witness: Optional[Tuple[Transformation, Transformation]] = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class FixedPointDecomposition:
    """
    classes[i] = S_i = {f : Fix(f) = i} для кожного стану i;
    residue — переставні елементи.
    """

    degree: int
    classes: Dict[int, FrozenSet[Transformation]]
    residue: FrozenSet[Transformation]

    def sizes(self) -> Dict[int, int]:
        return {i: len(members) for i, members in self.classes.items()}
