# app/services/semigroup.py

from __future__ import annotations

import itertools
import math
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from app.config.settings import get_settings
from app.models.errors import (
    DegreeMismatchError,
    GuardExceededError,
    InputError,
    PropertyViolationError,
    TruncatedSemigroupError,
)
from app.models.semigroup import (
    ClosureCheck,
    FixedPointDecomposition,
    IdentityCheck,
    TransformationSemigroup,
)
from app.models.transformation import Transformation
from app.services.transformations import (
    fixed_points,
    idempotent_power,
    is_nonpermutational,
)
from app.utils.arrays import can_encode, encode, first_true, stack, to_transformations
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="semigroup")

# Скільки добутків обчислювати за один крок numpy
_CHUNK_CELLS = 1 << 20

SemigroupLike = Union[TransformationSemigroup, Iterable[Transformation]]


# -------------------------
# Допоміжні функції
# -------------------------


def _common_degree(items: Sequence[Transformation]) -> int:
    degree = items[0].degree
    for t in items[1:]:
        if t.degree != degree:
            raise DegreeMismatchError(f"Степені не збігаються: {degree} ≠ {t.degree} ({t})")
    return degree


def _elements_of(S: SemigroupLike) -> List[Transformation]:
    if isinstance(S, TransformationSemigroup):
        return list(S.elements)
    items: List[Transformation] = []
    seen: Set[Transformation] = set()
    for t in S:
        if t not in seen:
            seen.add(t)
            items.append(t)
    return items


# -------------------------
# Замикання
# -------------------------


def close(
    generators: Sequence[Transformation],
    cap: Optional[int] = None,
) -> TransformationSemigroup:
    """
    Замикання генераторів відносно композиції (пошук у ширину з правим
    множенням на генератори). Порядок відкриття детермінований порядком
    генераторів. Якщо кількість елементів перевищила б cap — зупиняємось
    і ставимо truncated.
    """
    gens = list(generators)
    if not gens:
        raise InputError("Порожній список генераторів")
    degree = _common_degree(gens)
    limit = cap if cap is not None else get_settings().CLOSURE_CAP
    if limit < 1:
        raise InputError(f"Кап має бути ≥ 1, отримано {limit}")

    unique: List[Transformation] = list(dict.fromkeys(gens))
    if can_encode(degree):
        elements, truncated = _close_coded(unique, degree, limit)
    else:
        elements, truncated = _close_plain(unique, limit)

    kept = set(elements)
    S = TransformationSemigroup(
        degree=degree,
        elements=tuple(elements),
        generators=tuple(g for g in unique if g in kept),
        truncated=truncated,
    )
    if truncated:
        log.warning(
            "Замикання зупинене капом",
            extra={"n": degree, "cap": limit, "size": len(S)},
        )
    else:
        log.debug("Замикання завершено", extra={"n": degree, "size": len(S)})
    return S


def _close_coded(
    gens: List[Transformation], degree: int, limit: int
) -> Tuple[List[Transformation], bool]:
    G = stack(gens, degree)
    m = G.shape[0]
    if m > limit:
        return gens[:limit], True

    seen = np.sort(encode(G, degree))
    discovered: List[np.ndarray] = [G]
    total = m
    frontier = G
    chunk = max(1, _CHUNK_CELLS // (m * degree))

    while frontier.shape[0]:
        level: List[np.ndarray] = []
        for start in range(0, frontier.shape[0], chunk):
            E = frontier[start:start + chunk]
            # (e·g)[i] = g[e[i]]; порядок: елемент фронту, потім генератор
            prods = G[:, E].transpose(1, 0, 2).reshape(-1, degree)
            codes = encode(prods, degree)
            _, first = np.unique(codes, return_index=True)
            first.sort()
            codes = codes[first]
            fresh_mask = ~np.isin(codes, seen, assume_unique=True)
            if not fresh_mask.any():
                continue
            rows = prods[first[fresh_mask]]
            fresh_codes = codes[fresh_mask]
            if total + rows.shape[0] > limit:
                take = limit - total
                discovered.append(rows[:take])
                return to_transformations(np.concatenate(discovered)), True
            seen = np.union1d(seen, fresh_codes)
            total += rows.shape[0]
            level.append(rows)
        frontier = np.concatenate(level) if level else np.zeros((0, degree), dtype=np.int64)
        if frontier.shape[0]:
            discovered.append(frontier)
            log.debug("Рівень замикання", extra={"n": degree, "size": total})

    return to_transformations(np.concatenate(discovered)), False


def _close_plain(
    gens: List[Transformation], limit: int
) -> Tuple[List[Transformation], bool]:
    if len(gens) > limit:
        return gens[:limit], True
    elements = list(gens)
    seen = set(gens)
    queue_pos = 0
    while queue_pos < len(elements):
        e = elements[queue_pos]
        queue_pos += 1
        for g in gens:
            p = e * g
            if p not in seen:
                if len(elements) >= limit:
                    return elements, True
                seen.add(p)
                elements.append(p)
    return elements, False


# -------------------------
# Перевірки замкненості та тотожностей
# -------------------------


def is_closed(S: SemigroupLike) -> ClosureCheck:
    """
    Чи замкнена множина відносно композиції; інакше — перша (у порядку
    елементів) пара (f, g) з fg ∉ S.
    """
    items = _elements_of(S)
    if not items:
        return ClosureCheck(closed=True)
    degree = _common_degree(items)

    if not can_encode(degree):
        members = set(items)
        for f in items:
            for g in items:
                if f * g not in members:
                    return ClosureCheck(closed=False, witness=(f, g))
        return ClosureCheck(closed=True)

    E = stack(items, degree)
    member_codes = np.sort(encode(E, degree))
    for idx, f in enumerate(items):
        prods = E[:, E[idx]]  # рядок j — f·g_j
        inside = np.isin(encode(prods, degree), member_codes, assume_unique=False)
        bad = first_true(~inside)
        if bad is not None:
            return ClosureCheck(closed=False, witness=(f, items[bad]))
    return ClosureCheck(closed=True)


def _require_complete(S: TransformationSemigroup, what: str) -> None:
    if S.truncated:
        raise TruncatedSemigroupError(
            f"{what}: напівгрупа обрізана капом, вердикт був би необґрунтованим"
        )


def satisfies_definite_identity(S: TransformationSemigroup) -> IdentityCheck:
    """
    y·x^ω = x^ω для всіх x, y ∈ S.
    """
    _require_complete(S, "Тотожність yx^ω = x^ω")
    if not len(S):
        return IdentityCheck(holds=True)
    E = S.as_array()
    for x in S.elements:
        e = np.asarray(idempotent_power(x).images, dtype=np.int64)
        lhs = e[E]  # рядок j — y_j·e
        bad = first_true(~(lhs == e).all(axis=1))
        if bad is not None:
            return IdentityCheck(holds=False, witness=(x, S.elements[bad]))
    return IdentityCheck(holds=True)


def satisfies_gendef_identity(S: TransformationSemigroup) -> IdentityCheck:
    """
    x^ω·y·x^ω = x^ω для всіх x, y ∈ S.
    """
    _require_complete(S, "Тотожність x^ω y x^ω = x^ω")
    if not len(S):
        return IdentityCheck(holds=True)
    E = S.as_array()
    for x in S.elements:
        e = np.asarray(idempotent_power(x).images, dtype=np.int64)
        lhs = e[E[:, e]]  # i ↦ ((i·e)·y_j)·e
        bad = first_true(~(lhs == e).all(axis=1))
        if bad is not None:
            return IdentityCheck(holds=False, witness=(x, S.elements[bad]))
    return IdentityCheck(holds=True)


# -------------------------
# Класи нерухомих точок
# -------------------------


def fixed_point_decomposition(S: SemigroupLike) -> FixedPointDecomposition:
    items = _elements_of(S)
    degree = S.degree if isinstance(S, TransformationSemigroup) else (items[0].degree if items else 0)
    buckets: Dict[int, List[Transformation]] = {i: [] for i in range(degree)}
    residue: List[Transformation] = []
    for f in items:
        if is_nonpermutational(f):
            (point,) = fixed_points(f)
            buckets[point].append(f)
        else:
            residue.append(f)
    return FixedPointDecomposition(
        degree=degree,
        classes={i: frozenset(members) for i, members in buckets.items()},
        residue=frozenset(residue),
    )


def class_order(S: SemigroupLike, root: int) -> FrozenSet[Tuple[int, int]]:
    """
    Відношення j ≺ k ⇔ j ≠ root і j·f = k для деякого f ∈ S_root.
    """
    decomposition = fixed_point_decomposition(S)
    members = decomposition.classes.get(root, frozenset())
    return frozenset(
        (j, f.images[j])
        for f in members
        for j in range(decomposition.degree)
        if j != root
    )


def is_strict_order(relation: FrozenSet[Tuple[int, int]]) -> bool:
    """Іррефлексивність і транзитивність."""
    if any(j == k for j, k in relation):
        return False
    successors: Dict[int, Set[int]] = {}
    for j, k in relation:
        successors.setdefault(j, set()).add(k)
    for j, k in relation:
        for l in successors.get(k, ()):
            if (j, l) not in relation:
                return False
    return True


# -------------------------
# Формули оцінок
# -------------------------


def _check_bound_guard(n: int) -> None:
    limit = get_settings().BOUND_MAX_N
    if n > limit:
        raise GuardExceededError(f"n={n} перевищує обмеження формул {limit}")


def floor_e_factorial(n: int) -> int:
    """
    Σ_{j=0}^{n-1} (n-1)!/j! = ⌊e·(n-1)!⌋ у точній цілочисельній арифметиці.
    """
    if n < 1:
        raise InputError(f"n має бути ≥ 1, отримано {n}")
    _check_bound_guard(n)
    top = math.factorial(n - 1)
    return sum(top // math.factorial(j) for j in range(n))


def theorem_bound(n: int) -> int:
    """n·((n-1)! − (n-3)!) для n ≥ 3."""
    if n < 3:
        raise InputError(f"Оцінка визначена для n ≥ 3, отримано {n}")
    _check_bound_guard(n)
    return n * (math.factorial(n - 1) - math.factorial(n - 3))


def class_bound(n: int) -> int:
    """|S_i| ≤ (n-1)! для кожного класу нерухомої точки."""
    return math.factorial(n - 1)


# -------------------------
# Напівгрупа-кандидат B
# -------------------------


def candidate_b_elements(n: int) -> List[Transformation]:
    """
    Об'єднання за коренем r: j < r підіймається строго вгору, j ≥ r переходить у r.
    Лексикографічний порядок.
    """
    found: List[Transformation] = []
    for root in range(n):
        choices = [range(j + 1, n) for j in range(root)] + [(root,)] * (n - root)
        found.extend(Transformation(images) for images in itertools.product(*choices))
    found.sort()
    return found


def candidate_b(n: int, *, guard: Optional[int] = None) -> TransformationSemigroup:
    """
    Напівгрупа B розміру ⌊e(n−1)!⌋. Перед поверненням перевіряється
    замкненість і непереставність усіх елементів.
    """
    if n < 2:
        raise InputError(f"candidate_b визначено для n ≥ 2, отримано {n}")
    limit = guard if guard is not None else get_settings().CANDIDATE_GUARD
    if n > limit:
        raise GuardExceededError(f"n={n} перевищує обмеження {limit}")

    S = TransformationSemigroup(degree=n, elements=tuple(candidate_b_elements(n)))

    check = is_closed(S)
    if not check:
        f, g = check.witness
        raise PropertyViolationError(f"candidate_b({n}) не замкнена: {f}·{g} = {f * g}")
    bad = next((f for f in S if not is_nonpermutational(f)), None)
    if bad is not None:
        raise PropertyViolationError(f"candidate_b({n}) містить переставне {bad}")
    expected = floor_e_factorial(n)
    if len(S) != expected:
        raise PropertyViolationError(f"|candidate_b({n})| = {len(S)} ≠ {expected}")

    log.info("Напівгрупу B побудовано та перевірено", extra={"n": n, "size": len(S)})
    return S
