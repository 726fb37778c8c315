# tests/helpers.py

from __future__ import annotations

import itertools
from typing import Iterator, Tuple

import numpy as np

from app.models.dfa import Dfa
from app.models.transformation import Transformation


def T(*images: int) -> Transformation:
    """Перетворення в 1-базовій нотації: T(2, 3, 3) == (2,3,3)."""
    return Transformation.from_one_based(images)


def random_dfa(rng: np.random.Generator, n: int, k: int = 2) -> Dfa:
    delta = rng.integers(0, n, size=(n, k))
    finals = np.flatnonzero(rng.random(n) < 0.5).tolist()
    return Dfa(
        state_count=n,
        alphabet=tuple("abcd"[:k]),
        delta=tuple(map(tuple, delta.tolist())),
        start=0,
        finals=frozenset(finals),
    )


def structured_gendef(rng: np.random.Generator, n: int, *, dead_sink: bool) -> Dfa:
    """
    Префікс строго вперед, стік {x, y} (a → x, b → y, фінальний лише y)
    і, за бажанням, мертвий стік. Мова узагальнено визначена, а найбільший
    стік мінімального автомата має два стани.
    """
    extra = 1 if dead_sink else 0
    prefix = n - 2 - extra
    x, y = prefix, prefix + 1
    delta = []
    for q in range(prefix):
        delta.append(tuple(int(v) for v in rng.integers(q + 1, n, size=2)))
    delta.append((x, y))
    delta.append((x, y))
    if dead_sink:
        delta.append((n - 1, n - 1))
    return Dfa(state_count=n, alphabet=("a", "b"), delta=tuple(delta), start=0, finals={y})


def accepts_many(A: Dfa, letters: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Членство пачки слів: рядок letters — індекси літер, lengths — довжини слів."""
    states = np.full(len(lengths), A.start, dtype=np.int64)
    for i in range(letters.shape[1]):
        active = lengths > i
        states[active] = A.table[states[active], letters[active, i]]
    return A.final_mask[states]


def words(alphabet: Tuple[str, ...], max_len: int) -> Iterator[Tuple[str, ...]]:
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


A_SIGMA_STAR_B_TEXT = """\
# aΣ*b
states: 4
alphabet: a b
start: 1
final: 4
1 a 2
1 b 3
2 a 2
2 b 4
3 a 3
3 b 3
4 a 2
4 b 4
"""

PARITY_TEXT = """\
states: 2
alphabet: a
start: 1
final: 1
1 a 2
2 a 1
"""
