# app/services/transformations.py

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional

from app.config.settings import get_settings
from app.models.errors import GuardExceededError, InputError, NotNonpermutationalError
from app.models.transformation import IlaStructure, PartialFunction, Transformation
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="transformations")


# -------------------------
# Композиція та степені
# -------------------------


def compose(f: Transformation, g: Transformation) -> Transformation:
    """
    Добуток fg у порядку дії справа: i·(fg) = (i·f)·g.
    """
    return f * g


def power(f: Transformation, k: int) -> Transformation:
    """f^k для k ≥ 1 (двійкове піднесення)."""
    if k < 1:
        raise InputError(f"Степінь має бути ≥ 1, отримано {k}")
    result: Optional[Transformation] = None
    base = f
    while k:
        if k & 1:
            result = base if result is None else result * base
        base = base * base
        k >>= 1
    assert result is not None
    return result


def is_idempotent(f: Transformation) -> bool:
    return f * f == f


def idempotent_power(f: Transformation) -> Transformation:
    """
    f^ω — єдиний ідемпотентний степінь f.

    Спершу квадрування до f^(2^j) з 2^j ≥ n (образ уже на циклах),
    далі обхід циклу степенів g, g·f, g·f², … з явною перевіркою ідемпотентності.
    """
    n = f.degree
    g = f
    span = 1
    while span < n:
        g = g * g
        span *= 2
    # У циклі степенів рівно один ідемпотент; довжина циклу — НСК довжин циклів f
    for _ in range(_landau_limit(n)):
        if g * g == g:
            return g
        g = g * f
    raise RuntimeError(f"Ідемпотентний степінь не знайдено для {f}")  # pragma: no cover


@lru_cache(maxsize=None)
def _landau_limit(n: int) -> int:
    """Верхня межа НСК довжин циклів перетворення степеня n (+1 запасу)."""
    if n <= 30:
        return _max_lcm(n, n) + 1
    # Для великих n — груба межа n!
    return math.factorial(n) + 1


@lru_cache(maxsize=None)
def _max_lcm(total: int, largest: int) -> int:
    if total == 0:
        return 1
    best = 1
    for part in range(1, min(total, largest) + 1):
        best = max(best, math.lcm(part, _max_lcm(total - part, part)))
    return best


# -------------------------
# Нерухомі точки та непереставність
# -------------------------


def fixed_points(f: Transformation) -> FrozenSet[int]:
    return frozenset(i for i, v in enumerate(f.images) if v == i)


def fix(f: Transformation) -> int:
    """Єдина нерухома точка непереставного перетворення."""
    if not is_nonpermutational(f):
        raise NotNonpermutationalError(f"{f} переставне: єдина нерухома точка не гарантована")
    (point,) = fixed_points(f)
    return point


def cyclic_states(f: Transformation) -> FrozenSet[int]:
    """
    Стани на замкнених шляхах функціонального графа (розфарбування обходом).
    """
    n = f.degree
    color = [0] * n  # 0 — не відвідано, 1 — на поточному шляху, 2 — оброблено
    on_cycle: set[int] = set()
    for start in range(n):
        if color[start]:
            continue
        path: List[int] = []
        v = start
        while color[v] == 0:
            color[v] = 1
            path.append(v)
            v = f.images[v]
        if color[v] == 1:
            # Замкнули цикл на поточному шляху
            idx = path.index(v)
            on_cycle.update(path[idx:])
        for u in path:
            color[u] = 2
    return frozenset(on_cycle)


def is_nonpermutational(f: Transformation) -> bool:
    """
    Xf = X тягне |X| = 1: множина циклічних станів — одна нерухома точка.
    """
    return len(cyclic_states(f)) == 1


def is_nonpermutational_by_power(f: Transformation) -> bool:
    """Незалежна перевірка: образ f^ω — одноелементна множина."""
    return len(idempotent_power(f).image()) == 1


def ila_structure(f: Transformation) -> IlaStructure:
    root = fix(f)
    parent: Dict[int, int] = {i: v for i, v in enumerate(f.images) if i != root}
    depth: Dict[int, int] = {root: 0}

    def _depth(state: int) -> int:
        chain = []
        while state not in depth:
            chain.append(state)
            state = parent[state]
        d = depth[state]
        for s in reversed(chain):
            d += 1
            depth[s] = d
        return depth[chain[0]] if chain else d

    for i in range(f.degree):
        _depth(i)
    return IlaStructure(degree=f.degree, root=root, parent=parent, depth=dict(sorted(depth.items())))


# -------------------------
# Підвищувальні функції
# -------------------------


def is_elevating(f: PartialFunction) -> bool:
    """
    i ≤ i·f для всіх i ∈ [k], рівність лише при i = n.
    """
    n = f.codomain_size
    for i, v in enumerate(f.images):
        if v < i:
            return False
        if v == i and i != n - 1:
            return False
    return True


def enumerate_elevating(k: int, n: int) -> List[PartialFunction]:
    """
    Усі підвищувальні функції [k] → [n] у лексикографічному порядку.
    """
    if not 0 <= k <= n:
        raise InputError(f"Потрібно 0 ≤ k ≤ n, отримано k={k}, n={n}")
    choices = []
    for i in range(k):
        low = i if i == n - 1 else i + 1
        choices.append(range(low, n))
    return [PartialFunction(k, n, images) for images in itertools.product(*choices)]


# -------------------------
# Перелік NP_n
# -------------------------


def _check_enum_guard(n: int, guard: Optional[int]) -> None:
    limit = guard if guard is not None else get_settings().ENUM_GUARD
    if n < 1:
        raise InputError(f"n має бути ≥ 1, отримано {n}")
    if n > limit:
        raise GuardExceededError(f"n={n} перевищує обмеження перебору {limit}")


def iter_np(n: int, *, guard: Optional[int] = None) -> Iterator[Transformation]:
    """
    Генерує непереставні перетворення [n] у лексикографічному порядку.

    Пошук з поверненням по позиціях: гілка відтинається, щойно з'являється
    цикл довжини ≥ 2 або друга нерухома точка.
    """
    _check_enum_guard(n, guard)
    images = [-1] * n

    def closes_bad_cycle(pos: int) -> bool:
        v = images[pos]
        steps = 0
        while v != -1 and steps <= n:
            if v == pos:
                return steps > 0
            v = images[v] if images[v] != v else -1
            steps += 1
        return False

    def rec(pos: int, has_fixed: bool) -> Iterator[Transformation]:
        if pos == n:
            if has_fixed:
                yield Transformation(tuple(images))
            return
        for v in range(n):
            if v == pos:
                if has_fixed:
                    continue
                images[pos] = v
                yield from rec(pos + 1, True)
            else:
                images[pos] = v
                if closes_bad_cycle(pos):
                    continue
                yield from rec(pos + 1, has_fixed)
        images[pos] = -1

    yield from rec(0, False)


def enumerate_np(n: int, *, guard: Optional[int] = None) -> List[Transformation]:
    result = list(iter_np(n, guard=guard))
    log.debug("NP_n перелічено", extra={"n": n, "count": len(result)})
    return result


def count_np_bruteforce(n: int, *, guard: Optional[int] = None) -> int:
    """Кількість непереставних перетворень фільтром усіх n^n відображень."""
    _check_enum_guard(n, guard)
    return sum(
        1
        for images in itertools.product(range(n), repeat=n)
        if is_nonpermutational(Transformation(images))
    )
