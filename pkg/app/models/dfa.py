# app/models/dfa.py

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Sequence, Tuple

import numpy as np

from app.models.errors import InputError
from app.models.transformation import Transformation


Word = Tuple[str, ...]


@dataclass(frozen=True)
class Dfa:
    """
    Повний детермінований автомат (Q, Σ, δ, q0, F).

    Стани 0-базові; delta[q][a] — номер стану для a-ї літери алфавіту.
    """

    state_count: int
    alphabet: Tuple[str, ...]
    delta: Tuple[Tuple[int, ...], ...]
    start: int = 0
    finals: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        n = self.state_count
        alphabet = tuple(str(a) for a in self.alphabet)
        delta = tuple(tuple(int(v) for v in row) for row in self.delta)
        finals = frozenset(int(q) for q in self.finals)
        if n < 1:
            raise InputError(f"Автомат має мати ≥ 1 стан, отримано {n}")
        if not alphabet:
            raise InputError("Порожній алфавіт")
        if len(set(alphabet)) != len(alphabet):
            raise InputError(f"Символи алфавіту повторюються: {' '.join(alphabet)}")
        if len(delta) != n:
            raise InputError(f"Таблиця переходів має {len(delta)} рядків, очікується {n}")
        for q, row in enumerate(delta):
            if len(row) != len(alphabet):
                raise InputError(f"Стан {q + 1}: {len(row)} переходів, очікується {len(alphabet)}")
            for a, target in enumerate(row):
                if not 0 <= target < n:
                    raise InputError(f"δ({q + 1}, {alphabet[a]}) = {target + 1} поза межами [{n}]")
        if not 0 <= self.start < n:
            raise InputError(f"Початковий стан {self.start + 1} поза межами [{n}]")
        bad = sorted(q for q in finals if not 0 <= q < n)
        if bad:
            raise InputError(f"Фінальні стани поза межами: {', '.join(str(q + 1) for q in bad)}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "finals", finals)

    # -------------------------
    # Доступ до переходів
    # -------------------------

    @cached_property
    def table(self) -> np.ndarray:
        """Матриця переходів (n × |Σ|)."""
        return np.asarray(self.delta, dtype=np.int64).reshape(self.state_count, len(self.alphabet))

    @cached_property
    def symbol_index(self) -> Dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    @cached_property
    def final_mask(self) -> np.ndarray:
        mask = np.zeros(self.state_count, dtype=bool)
        mask[list(self.finals)] = True
        return mask

    def letter(self, symbol: str) -> int:
        try:
            return self.symbol_index[symbol]
        except KeyError:
            raise InputError(f"Невідомий символ '{symbol}'") from None

    def step(self, state: int, symbol: str) -> int:
        return self.delta[state][self.letter(symbol)]

    def run(self, state: int, word: Sequence[str]) -> int:
        for symbol in word:
            state = self.delta[state][self.letter(symbol)]
        return state

    def accepts(self, word: Sequence[str]) -> bool:
        return self.run(self.start, word) in self.finals

    def letter_action(self, symbol: str) -> Transformation:
        a = self.letter(symbol)
        return Transformation(tuple(row[a] for row in self.delta))

    def relabel(self, mapping: Sequence[int]) -> "Dfa":
        """Перенумерація станів: старий q стає mapping[q] (бієкція)."""
        n = self.state_count
        if sorted(mapping) != list(range(n)):
            raise InputError("Перенумерація має бути бієкцією на станах")
        delta = [None] * n
        for q, row in enumerate(self.delta):
            delta[mapping[q]] = tuple(mapping[t] for t in row)
        return Dfa(
            state_count=n,
            alphabet=self.alphabet,
            delta=tuple(delta),
            start=mapping[self.start],
            finals=frozenset(mapping[q] for q in self.finals),
        )


@dataclass(frozen=True)
class ComponentGraph:
    """
    Граф компонент: сильно зв'язні компоненти, упорядковані за найменшим станом.

    trivial[c] — {p} без петель; sink[c] — CΣ ⊆ C. dag_edges — (c, d, символ), c ≠ d.
    """

    component_of: Tuple[int, ...]
    components: Tuple[FrozenSet[int], ...]
    trivial: Tuple[bool, ...]
    sink: Tuple[bool, ...]
    dag_edges: Tuple[Tuple[int, int, str], ...] = ()

    def __len__(self) -> int:
        return len(self.components)

    def sink_ids(self) -> Tuple[int, ...]:
        return tuple(c for c, flag in enumerate(self.sink) if flag)

    def sinks(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(self.components[c] for c in self.sink_ids())

    def nontrivial_non_sinks(self) -> Tuple[int, ...]:
        return tuple(
            c for c in range(len(self.components))
            if not self.trivial[c] and not self.sink[c]
        )


@dataclass(frozen=True, eq=False)
class PairAutomaton:
    """
    Квадрат автомата (пари станів без старту та фіналів).

    pairs[i] = (p, q); succ[i, a] — індекс пари (p·a, q·a). Для повного квадрата
    індекс пари — p·n + q.
    """

    base_size: int
    alphabet: Tuple[str, ...]
    pairs: np.ndarray
    succ: np.ndarray

    def __len__(self) -> int:
        return int(self.pairs.shape[0])

    def pair(self, index: int) -> Tuple[int, int]:
        p, q = self.pairs[index]
        return int(p), int(q)


@dataclass(frozen=True, eq=False)
class PairComponents:
    """labels[i] — компонента пари i; nontrivial[c] — компонента містить цикл."""

    count: int
    labels: np.ndarray
    nontrivial: np.ndarray

    def on_cycle(self) -> np.ndarray:
        return self.nontrivial[self.labels]
