# app/services/search.py

from __future__ import annotations

import itertools
import math
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.config.settings import get_settings
from app.models.dfa import Dfa
from app.models.errors import GuardExceededError, InputError, PropertyViolationError
from app.models.search import Certificate, Realization, SearchBudget, SearchResult
from app.models.semigroup import TransformationSemigroup
from app.models.transformation import Transformation
from app.services.automata import is_reduced
from app.services.classify import is_definite
from app.services.semigroup import candidate_b, is_closed
from app.services.transformations import enumerate_np, fixed_points, is_nonpermutational
from app.utils.arrays import encode, stack
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="search")

# Найбільше n для пошуку з відсіканням (таблиця добутків |NP_n|²)
BNB_MAX_N = 5
DEFSYC_MAX_N = 4

# Спільний рекорд у процесах-працівниках
_shared_best = None


# -------------------------
# Сертифікація
# -------------------------


def certify(S: Iterable[Transformation]) -> Certificate:
    """
    Незалежна перевірка результату: лише is_closed та тест непереставності,
    без жодного коду пошуку.
    """
    items = list(dict.fromkeys(S))
    check = is_closed(items)
    if not check:
        return Certificate(valid=False, size=len(items), pair=check.witness)
    bad = next((f for f in items if not is_nonpermutational(f)), None)
    if bad is not None:
        return Certificate(valid=False, size=len(items), element=bad)
    return Certificate(valid=True, size=len(items))


def _certified(n: int, items: Iterable[Transformation]) -> TransformationSemigroup:
    S = TransformationSemigroup.from_set(items, degree=n)
    cert = certify(S)
    if not cert:
        raise PropertyViolationError(f"Свідок пошуку не пройшов сертифікацію: {cert}")
    return S


# -------------------------
# Універсум NP_n
# -------------------------


@dataclass(frozen=True)
class _Universe:
    degree: int
    elements: Tuple[Transformation, ...]
    product: Tuple[Tuple[int, ...], ...]  # індекс fg у NP_n або -1
    root: Tuple[int, ...]

    def indices_of(self, items: Iterable[Transformation]) -> List[int]:
        position = {t: i for i, t in enumerate(self.elements)}
        return sorted(position[t] for t in items)


@lru_cache(maxsize=None)
def _universe(n: int) -> _Universe:
    elements = tuple(enumerate_np(n))
    E = stack(elements, n)
    codes = encode(E, n)  # лексикографічний порядок ⇒ коди зростають
    rows = []
    for i in range(len(elements)):
        prod_codes = encode(E[:, E[i]], n)
        pos = np.searchsorted(codes, prod_codes)
        pos_clipped = np.minimum(pos, len(codes) - 1)
        found = codes[pos_clipped] == prod_codes
        rows.append(tuple(np.where(found, pos_clipped, -1).tolist()))
    root = tuple(next(iter(fixed_points(f))) for f in elements)
    return _Universe(degree=n, elements=elements, product=tuple(rows), root=root)


# -------------------------
# Гілки та межі
# -------------------------


class _BranchAndBound:
    """
    Пошук у глибину «включити / виключити» по NP_n у лексикографічному порядку.

    Включений набір завжди замкнений: включення елемента тягне всі добутки
    з поточними членами; переставний або виключений добуток відсікає гілку.
    Верхня межа — Σ_i min((n−1)!, включені_i + відкриті_i) за класами Fix.
    """

    def __init__(
        self,
        universe: _Universe,
        *,
        incumbent: Sequence[int] = (),
        budget_nodes: int,
        deadline: Optional[float] = None,
        accept: Optional[Callable[[Sequence[int]], bool]] = None,
        shared=None,
    ) -> None:
        self.u = universe
        n = universe.degree
        m = len(universe.elements)
        self.status = [0] * m  # 1 — включено, -1 — виключено, 0 — відкрито
        self.included: List[int] = []
        self.trail: List[int] = []
        self.class_cap = math.factorial(n - 1)
        self.inc_count = [0] * n
        self.open_count = [0] * n
        for r in universe.root:
            self.open_count[r] += 1
        self.best = len(incumbent)
        self.best_set: Tuple[int, ...] = tuple(sorted(incumbent))
        self.history: List[Tuple[int, ...]] = [self.best_set] if incumbent else []
        self.nodes = 0
        self.complete = True
        self.budget_nodes = budget_nodes
        self.deadline = deadline
        self.accept = accept
        self.shared = shared

    # --- стан

    def _set(self, idx: int, value: int) -> None:
        self.status[idx] = value
        self.trail.append(idx)
        r = self.u.root[idx]
        self.open_count[r] -= 1
        if value == 1:
            self.inc_count[r] += 1
            self.included.append(idx)

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            idx = self.trail.pop()
            r = self.u.root[idx]
            if self.status[idx] == 1:
                self.inc_count[r] -= 1
                self.included.pop()
            self.open_count[r] += 1
            self.status[idx] = 0

    def _include(self, idx: int) -> bool:
        product = self.u.product
        status = self.status
        self._set(idx, 1)
        queue = [idx]
        while queue:
            x = queue.pop()
            for y in list(self.included):
                for p in (product[x][y], product[y][x]):
                    if p < 0 or status[p] == -1:
                        return False
                    if status[p] == 0:
                        self._set(p, 1)
                        queue.append(p)
        return True

    def apply(self, decisions: Sequence[Tuple[int, bool]]) -> bool:
        for idx, include in decisions:
            current = self.status[idx]
            if current == (1 if include else -1):
                continue
            if current != 0:
                return False
            if include:
                if not self._include(idx):
                    return False
            else:
                self._set(idx, -1)
        return True

    # --- межі

    def _bound(self) -> int:
        cap = self.class_cap
        return sum(min(cap, i + o) for i, o in zip(self.inc_count, self.open_count))

    def _incumbent(self) -> int:
        if self.shared is not None:
            return max(self.best, self.shared.value)
        return self.best

    def _record(self) -> None:
        size = len(self.included)
        if size <= self._incumbent():
            return
        if self.accept is not None and not self.accept(self.included):
            return
        self.best = size
        self.best_set = tuple(sorted(self.included))
        self.history.append(self.best_set)
        if self.shared is not None:
            with self.shared.get_lock():
                if self.shared.value < size:
                    self.shared.value = size
        log.debug("Новий рекорд", extra={"n": self.u.degree, "size": size, "nodes": self.nodes})

    def _out_of_budget(self) -> bool:
        if self.nodes > self.budget_nodes:
            return True
        if self.deadline is not None and self.nodes % 1024 == 0:
            return time.monotonic() > self.deadline
        return False

    def _next_open(self, pos: int) -> Optional[int]:
        status = self.status
        for i in range(pos, len(status)):
            if status[i] == 0:
                return i
        return None

    # --- обхід

    def run(self, start: int = 0) -> None:
        # кадр: [позиція, елемент, позначка сліду, стадія]
        stack_frames = [[start, -1, 0, 0]]
        while stack_frames:
            frame = stack_frames[-1]
            stage = frame[3]
            if stage == 0:
                self.nodes += 1
                if self._out_of_budget():
                    self.complete = False
                    return
                self._record()
                i = self._next_open(frame[0])
                if i is None or self._bound() <= self._incumbent():
                    stack_frames.pop()
                    continue
                frame[1] = i
                frame[2] = len(self.trail)
                frame[3] = 1
                if self._include(i):
                    stack_frames.append([i + 1, -1, 0, 0])
                continue
            if stage == 1:
                self._undo(frame[2])
                frame[3] = 2
                self._set(frame[1], -1)
                stack_frames.append([frame[1] + 1, -1, 0, 0])
                continue
            self._undo(frame[2])
            stack_frames.pop()


# -------------------------
# Точний перебір для малих n
# -------------------------


def max_np_subsemigroup_exact(n: int) -> SearchResult:
    """
    Повний перебір усіх підмножин NP_n (n ∈ {2, 3}): найбільша замкнена.
    Серед рівних за розміром — з найменшою бітовою маскою.
    """
    if not 2 <= n <= 3:
        raise InputError(f"Точний перебір визначено для 2 ≤ n ≤ 3, отримано {n}")
    u = _universe(n)
    m = len(u.elements)
    best_mask, best_size = 0, 0
    for mask in range(1 << m):
        members = [i for i in range(m) if mask >> i & 1]
        if len(members) <= best_size:
            continue
        closed = all(
            u.product[a][b] >= 0 and mask >> u.product[a][b] & 1
            for a in members
            for b in members
        )
        if closed:
            best_mask, best_size = mask, len(members)

    witness = _certified(n, (u.elements[i] for i in range(m) if best_mask >> i & 1))
    log.info("Точний перебір завершено", extra={"n": n, "size": best_size})
    return SearchResult(
        degree=n,
        best_size=best_size,
        witness=witness,
        exhaustive=True,
        explored_nodes=1 << m,
        budget=SearchBudget(nodes=1 << m),
        history=[witness],
    )


# -------------------------
# Пошук з відсіканням
# -------------------------


def _resolve_budget(
    budget_nodes: Optional[int],
    budget_secs: Optional[float],
    workers: Optional[int],
    deterministic: bool,
) -> SearchBudget:
    settings = get_settings()
    nodes = budget_nodes if budget_nodes is not None else settings.SEARCH_BUDGET_NODES
    secs = budget_secs if budget_secs is not None else settings.SEARCH_BUDGET_SECS
    count = workers if workers is not None else settings.SEARCH_WORKERS
    if nodes < 1 or secs < 0 or count < 1:
        raise InputError("Бюджет пошуку має бути додатним")
    return SearchBudget(
        nodes=nodes,
        seconds=secs,
        workers=1 if deterministic else count,
        deterministic=deterministic or count == 1,
    )


def _deadline(seconds: float) -> Optional[float]:
    return time.monotonic() + seconds if seconds > 0 else None


def _init_worker(shared) -> None:
    global _shared_best
    _shared_best = shared


def _run_branch(args) -> Tuple[int, Tuple[int, ...], int, bool, List[Tuple[int, ...]]]:
    n, decisions, start, seed, nodes, seconds = args
    search = _BranchAndBound(
        _universe(n),
        incumbent=seed,
        budget_nodes=nodes,
        deadline=_deadline(seconds),
        shared=_shared_best,
    )
    if not search.apply(decisions):
        return 0, (), 0, True, []
    search.run(start)
    return search.best, search.best_set, search.nodes, search.complete, search.history


def max_np_subsemigroup_bnb(
    n: int,
    *,
    budget_nodes: Optional[int] = None,
    budget_secs: Optional[float] = None,
    workers: Optional[int] = None,
    deterministic: bool = False,
) -> SearchResult:
    """
    Пошук найбільшої замкненої підмножини NP_n з відсіканням за межами.
    Стартовий рекорд — candidate_b(n). exhaustive=True лише якщо дерево
    пройдено повністю в межах бюджету.
    """
    if not 2 <= n <= BNB_MAX_N:
        raise GuardExceededError(f"Пошук підтримує 2 ≤ n ≤ {BNB_MAX_N}, отримано {n}")
    budget = _resolve_budget(budget_nodes, budget_secs, workers, deterministic)
    u = _universe(n)
    seed = tuple(u.indices_of(candidate_b(n)))

    if budget.workers == 1:
        search = _BranchAndBound(
            u, incumbent=seed, budget_nodes=budget.nodes, deadline=_deadline(budget.seconds)
        )
        search.run()
        best_set, nodes, complete, history = search.best_set, search.nodes, search.complete, search.history
    else:
        best_set, nodes, complete, history = _run_parallel(n, seed, budget)

    witness = _certified(n, (u.elements[i] for i in best_set))
    incumbents = [_certified(n, (u.elements[i] for i in entry)) for entry in history]

    log.info(
        "Пошук завершено",
        extra={"n": n, "size": len(witness), "nodes": nodes, "exhaustive": complete},
    )
    if not complete:
        log.warning("Бюджет пошуку вичерпано", extra={"n": n, "nodes": nodes})
    return SearchResult(
        degree=n,
        best_size=len(witness),
        witness=witness,
        exhaustive=complete,
        explored_nodes=nodes,
        budget=budget,
        history=incumbents,
    )


def _run_parallel(
    n: int, seed: Tuple[int, ...], budget: SearchBudget
) -> Tuple[Tuple[int, ...], int, bool, List[Tuple[int, ...]]]:
    """
    Верхні рівні дерева діляться між процесами; рекорд — спільна
    монотонна комірка multiprocessing.Value.
    """
    m = len(_universe(n).elements)
    depth = min(m, max(1, math.ceil(math.log2(budget.workers * 4))))
    tasks = [
        tuple(zip(range(depth), choice))
        for choice in itertools.product((True, False), repeat=depth)
    ]
    per_task = max(1, budget.nodes // len(tasks))
    shared = multiprocessing.Value("q", len(seed))

    best_size, best_set = len(seed), seed
    nodes, complete = 0, True
    history: List[Tuple[int, ...]] = [seed]
    with ProcessPoolExecutor(
        max_workers=budget.workers, initializer=_init_worker, initargs=(shared,)
    ) as pool:
        args = [(n, decisions, depth, seed, per_task, budget.seconds) for decisions in tasks]
        for size, found, explored, done, found_history in pool.map(_run_branch, args):
            nodes += explored
            complete = complete and done
            history.extend(h for h in found_history if len(h) > len(seed))
            if size > best_size:
                best_size, best_set = size, found
    history.sort(key=len)
    return best_set, nodes, complete, history


# -------------------------
# Реалізовність визначеними автоматами
# -------------------------


def _actions(u: _Universe, idxs: Sequence[int]) -> np.ndarray:
    n = u.degree
    rows = [u.elements[i].images for i in idxs] + [tuple(range(n))]
    return np.asarray(rows, dtype=np.int64)


def _realizing_pair(u: _Universe, idxs: Sequence[int]) -> Optional[Tuple[int, FrozenSet]]:
    """
    Дії слів над замкненим S — це S ∪ {id}, тож досяжність і розрізнюваність
    перевіряються напряму. Перебір q0, потім F за зростанням маски.
    """
    if not idxs:
        return None
    n = u.degree
    A = _actions(u, idxs)
    for q0 in range(n):
        if np.unique(A[:, q0]).size != n:
            continue
        for mask in range(1 << n):
            finals = np.asarray([(mask >> s) & 1 for s in range(n)], dtype=bool)
            columns = finals[A].T  # рядок — «підпис» стану
            if np.unique(columns, axis=0).shape[0] == n:
                return q0, frozenset(s for s in range(n) if mask >> s & 1)
    return None


def _merge_notes(S: TransformationSemigroup) -> Tuple[str, ...]:
    notes = []
    for p, q in itertools.combinations(range(S.degree), 2):
        if all(f.images[p] == f.images[q] for f in S):
            notes.append(f"стани {p + 1} і {q + 1} зливаються кожним елементом; розрізняє лише порожнє слово")
    return tuple(notes)


def realizing_automaton(S: TransformationSemigroup, realization: Realization) -> Dfa:
    """Стани [n], алфавіт — елементи S, δ(q, f) = q·f."""
    letters = list(S.elements)
    return Dfa(
        state_count=S.degree,
        alphabet=tuple(str(f) for f in letters),
        delta=tuple(tuple(f.images[q] for f in letters) for q in range(S.degree)),
        start=realization.start,
        finals=realization.finals,
    )


def max_definite_syc(
    n: int,
    *,
    budget_nodes: Optional[int] = None,
    budget_secs: Optional[float] = None,
) -> SearchResult:
    """
    Найбільша замкнена підмножина NP_n, що реалізується зведеним автоматом
    на n станах з алфавітом S і δ(q, f) = q·f для деяких q0 та F.
    """
    if not 2 <= n <= DEFSYC_MAX_N:
        raise InputError(f"Пошук реалізовних напівгруп визначено для 2 ≤ n ≤ {DEFSYC_MAX_N}")
    budget = _resolve_budget(budget_nodes, budget_secs, 1, True)
    u = _universe(n)

    candidate = u.indices_of(candidate_b(n))
    seed: Sequence[int] = candidate if _realizing_pair(u, candidate) is not None else ()
    search = _BranchAndBound(
        u,
        incumbent=seed,
        budget_nodes=budget.nodes,
        deadline=_deadline(budget.seconds),
        accept=lambda idxs: _realizing_pair(u, idxs) is not None,
    )
    search.run()

    witness = _certified(n, (u.elements[i] for i in search.best_set))
    pair = _realizing_pair(u, search.best_set)
    if pair is None:
        raise PropertyViolationError("Свідок не реалізовний")
    notes = list(_merge_notes(witness))
    notes.append(
        f"candidate_b({n}) {'реалізовна' if seed else 'не реалізовна'} на {n} станах"
    )
    realization = Realization(start=pair[0], finals=pair[1], notes=tuple(notes))

    automaton = realizing_automaton(witness, realization)
    if not is_reduced(automaton):
        raise PropertyViolationError("Реалізувальний автомат не зведений")
    if not is_definite(automaton):
        raise PropertyViolationError("Реалізувальний автомат не визначений")

    log.info(
        "Пошук реалізовних напівгруп завершено",
        extra={"n": n, "size": len(witness), "nodes": search.nodes},
    )
    return SearchResult(
        degree=n,
        best_size=len(witness),
        witness=witness,
        exhaustive=search.complete,
        explored_nodes=search.nodes,
        budget=budget,
        history=[_certified(n, (u.elements[i] for i in entry)) for entry in search.history],
        realization=realization,
    )
