# app/models/transformation.py

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple

from app.models.errors import DegreeMismatchError, InputError


@dataclass(frozen=True, order=True)
class Transformation:
    """
    Повне відображення [n] → [n], що діє справа (i·f).

    Стани всередині індексуються з 0; текстове подання — 1-базовий вектор
    образів, наприклад (2,3,3). Порядок (order=True) — лексикографічний
    за вектором образів.
    """

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        n = len(images)
        if n == 0:
            raise InputError("Перетворення має мати степінь ≥ 1")
        for pos, v in enumerate(images):
            if not 0 <= v < n:
                raise InputError(f"Образ {v + 1} у позиції {pos + 1} поза межами [{n}]")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Transformation":
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, images: Iterable[int]) -> "Transformation":
        return cls(tuple(int(v) - 1 for v in images))

    def __call__(self, state: int) -> int:
        return self.images[state]

    def __mul__(self, other: "Transformation") -> "Transformation":
        # p(fg) = (pf)g
        if self.degree != other.degree:
            raise DegreeMismatchError(
                f"Степені не збігаються: {self.degree} ≠ {other.degree}"
            )
        g = other.images
        return Transformation(tuple(g[v] for v in self.images))

    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def restrict(self, states: Tuple[int, ...]) -> "Transformation":
        """
        Обмеження на замкнену множину станів states (перенумерованих за порядком).
        """
        index = {s: i for i, s in enumerate(states)}
        try:
            return Transformation(tuple(index[self.images[s]] for s in states))
        except KeyError as exc:
            raise InputError("Множина станів не замкнена під перетворенням") from exc

    def one_based(self) -> Tuple[int, ...]:
        return tuple(v + 1 for v in self.images)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.one_based()) + ")"

    def __repr__(self) -> str:
        return f"Transformation{self}"


@dataclass(frozen=True)
class PartialFunction:
    """
    Відображення [k] → [n], k ≤ n (0-базові образи).
    Використовується для підвищувальних функцій.
    """

    domain_size: int
    codomain_size: int
    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        if not 0 <= self.domain_size <= self.codomain_size:
            raise InputError(
                f"Потрібно 0 ≤ k ≤ n, отримано k={self.domain_size}, n={self.codomain_size}"
            )
        if len(images) != self.domain_size:
            raise InputError(
                f"Очікується {self.domain_size} образів, отримано {len(images)}"
            )
        for pos, v in enumerate(images):
            if not 0 <= v < self.codomain_size:
                raise InputError(f"Образ {v + 1} у позиції {pos + 1} поза межами [{self.codomain_size}]")
        object.__setattr__(self, "images", images)

    def __str__(self) -> str:
        return "(" + ",".join(str(v + 1) for v in self.images) + f")→[{self.codomain_size}]"


@dataclass(frozen=True)
class IlaStructure:
    """
    Граф непереставного перетворення: дерево, ребра напрямлені до кореня,
    на корені петля.
    """

    degree: int
    root: int
    parent: Dict[int, int] = field(default_factory=dict)
    depth: Dict[int, int] = field(default_factory=dict)

    def path_to_root(self, state: int) -> Tuple[int, ...]:
        path = [state]
        while path[-1] != self.root:
            path.append(self.parent[path[-1]])
        return tuple(path)
