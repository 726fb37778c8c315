# app/services/classify.py

from __future__ import annotations

from collections import deque
from typing import Dict, FrozenSet, Optional

import networkx as nx
import numpy as np

from app.config.settings import get_settings
from app.models.dfa import Dfa, PairAutomaton, PairComponents
from app.models.errors import NotReducedError, PropertyViolationError, TruncatedSemigroupError
from app.models.reports import (
    ClassificationReport,
    OracleModel,
    PatternWitness,
    Verdict,
    format_word,
)
from app.services.automata import (
    component_graph,
    letter_actions,
    minimize,
    pair_components,
    product_square,
    restriction_semigroup,
    shortest_pair_cycle,
    shortest_word,
    transition_graph,
    transition_semigroup,
)
from app.services.semigroup import satisfies_definite_identity, satisfies_gendef_identity
from app.services.transformations import fixed_points, is_nonpermutational
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="classify")

SKIPPED_CAPPED = "skipped (capped)"


# -------------------------
# Заборонені шаблони
# -------------------------


def _require_reduced(A: Dfa) -> None:
    M, _ = minimize(A)
    if M.state_count != A.state_count:
        raise NotReducedError(
            f"Автомат не зведений: {A.state_count} станів, мінімальний має {M.state_count}"
        )


def _off_diagonal_on_cycle(P: PairAutomaton, components: PairComponents) -> np.ndarray:
    """Індекси пар p ≠ q на нетривіальних компонентах, у лексикографічному порядку."""
    mask = components.on_cycle() & (P.pairs[:, 0] != P.pairs[:, 1])
    hits = np.flatnonzero(mask)
    order = np.lexsort((P.pairs[hits, 1], P.pairs[hits, 0]))
    return hits[order]


def admits_pd(A: Dfa) -> Optional[PatternWitness]:
    """
    P_d: p ≠ q зі спільною x-петлею. Шукаємо найменшу пару поза діагоналлю
    квадрата, що лежить на нетривіальній компоненті; x — найкоротший цикл.
    """
    _require_reduced(A)
    P = product_square(A)
    components = pair_components(P)
    candidates = _off_diagonal_on_cycle(P, components)
    if not candidates.size:
        return None
    index = int(candidates[0])
    p, q = P.pair(index)
    return PatternWitness(p=p, q=q, x=shortest_pair_cycle(P, components, index))


def admits_pg(A: Dfa) -> Optional[PatternWitness]:
    """P_g: шаблон P_d, де q досяжний з p непорожнім словом y."""
    _require_reduced(A)
    P = product_square(A)
    components = pair_components(P)
    G = transition_graph(A)
    reach: Dict[int, FrozenSet[int]] = {}
    for index in _off_diagonal_on_cycle(P, components).tolist():
        p, q = P.pair(index)
        if p not in reach:
            reach[p] = frozenset(nx.descendants(G, p))
        if q in reach[p]:
            return PatternWitness(
                p=p,
                q=q,
                x=shortest_pair_cycle(P, components, index),
                y=shortest_word(A, p, q),
            )
    return None


# -------------------------
# Визначеність та узагальнена визначеність
# -------------------------


def is_definite(A: Dfa) -> Verdict:
    """Мінімальний автомат уникає P_d ⇔ мова визначена."""
    M, _ = minimize(A)
    witness = admits_pd(M)
    return Verdict(holds=witness is None, witness=witness, automaton=M)


def _nonsink_witness(M: Dfa, component: FrozenSet[int], component_of, sink_flags) -> PatternWitness:
    """
    Свідок P_g для нетривіальної компоненти, що не є стоком: p з циклом u,
    стан s досяжного стоку, q = s·u^m, де m — кратне періоду орбіти s під u.
    """
    p = min(component)
    u = shortest_word(M, p, p)
    assert u is not None

    # Найближчий (BFS) стан у стоку
    seen = {p}
    queue = deque([p])
    s = None
    while queue:
        cur = queue.popleft()
        if sink_flags[component_of[cur]]:
            s = cur
            break
        for nxt in M.delta[cur]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    assert s is not None

    index: Dict[int, int] = {}
    state = s
    step = 0
    while state not in index:
        index[state] = step
        state = M.run(state, u)
        step += 1
    tail = index[state]
    period = step - tail
    m = period * max(1, -(-tail // period))
    q = s
    for _ in range(m):
        q = M.run(q, u)
    y = shortest_word(M, p, q)
    assert y is not None
    return PatternWitness(p=p, q=q, x=u * m, y=y)


def is_generalized_definite(A: Dfa, *, sinks_only: Optional[bool] = None) -> Verdict:
    """
    П'ятикроковий тест:
      1. мінімізація;
      2. граф компонент;
      3. відхилити, якщо є нетривіальна компонента, що не є стоком;
      4. квадрат автомата та його компоненти;
      5. відхилити, якщо пара p ≠ q з одного стоку лежить на нетривіальній компоненті.
    """
    if sinks_only is None:
        sinks_only = get_settings().PRODUCT_SINKS_ONLY

    M, _ = minimize(A)
    graph = component_graph(M)

    offending = graph.nontrivial_non_sinks()
    if offending:
        witness = _nonsink_witness(
            M, graph.components[offending[0]], graph.component_of, graph.sink
        )
        log.debug("Крок 3: нетривіальна компонента поза стоками", extra={"n": M.state_count})
        return Verdict(holds=False, witness=witness, automaton=M, step=3)

    P = product_square(M, graph.sinks() if sinks_only else None)
    components = pair_components(P)

    comp = np.asarray(graph.component_of, dtype=np.int64)
    is_sink = np.asarray(graph.sink, dtype=bool)
    left = comp[P.pairs[:, 0]]
    right = comp[P.pairs[:, 1]]
    same_sink = (left == right) & is_sink[left]
    mask = components.on_cycle() & (P.pairs[:, 0] != P.pairs[:, 1]) & same_sink
    hits = np.flatnonzero(mask)
    if hits.size:
        order = np.lexsort((P.pairs[hits, 1], P.pairs[hits, 0]))
        index = int(hits[order[0]])
        p, q = P.pair(index)
        witness = PatternWitness(
            p=p,
            q=q,
            x=shortest_pair_cycle(P, components, index),
            y=shortest_word(M, p, q),
        )
        log.debug("Крок 5: пара з одного стоку на циклі", extra={"n": M.state_count})
        return Verdict(holds=False, witness=witness, automaton=M, step=5)

    return Verdict(holds=True, automaton=M)


# -------------------------
# Додаткові характеристики
# -------------------------


def satisfies_sink_criterion(A: Dfa, cap: Optional[int] = None) -> bool:
    """
    Кожна нетривіальна компонента — стік, і на кожному стоку C всі дії
    слів u|_C непереставні.
    """
    M, _ = minimize(A)
    graph = component_graph(M)
    if graph.nontrivial_non_sinks():
        return False
    for sink in graph.sinks():
        S = restriction_semigroup(M, sorted(sink), cap=cap)
        if S.truncated:
            raise TruncatedSemigroupError(f"Обмеження на стік розміру {len(sink)} обрізане капом")
        if not all(is_nonpermutational(f) for f in S):
            return False
    return True


def definite_degree(A: Dfa) -> Optional[int]:
    """
    Найменше k, за якого кожне слово довжини k діє константою на мінімальному
    автоматі (членство визначають останні k літер). None — мова не визначена.
    """
    M, _ = minimize(A)
    if admits_pd(M) is not None:
        return None
    P = product_square(M)
    off = P.pairs[:, 0] != P.pairs[:, 1]
    current = off.copy()
    k = 0
    while current.any():
        reached = np.zeros(len(P), dtype=bool)
        reached[P.succ[current].reshape(-1)] = True
        current = reached & off
        k += 1
        if k > len(P):
            raise PropertyViolationError("Пари станів не зливаються у визначеному автоматі")
    return k


def two_fixed_point_word(A: Dfa, max_len: int) -> Optional[PatternWitness]:
    """
    Перебір слів за довжиною (до max_len) з відкиданням повторних дій:
    перше слово, дія якого має дві нерухомі точки.
    """
    actions = letter_actions(A)
    seen = set(actions)
    level = [((A.alphabet[a],), t) for a, t in enumerate(actions)]
    for _ in range(max_len):
        for word, t in level:
            fixed = sorted(fixed_points(t))
            if len(fixed) >= 2:
                return PatternWitness(p=fixed[0], q=fixed[1], x=word)
        following = []
        for word, t in level:
            for a, g in enumerate(actions):
                nt = t * g
                if nt not in seen:
                    seen.add(nt)
                    following.append((word + (A.alphabet[a],), nt))
        if not following:
            break
        level = following
    return None


# -------------------------
# Звіт класифікації
# -------------------------


def classify_report(
    A: Dfa,
    *,
    oracle: bool = False,
    bruteforce: bool = False,
    cap: Optional[int] = None,
    sinks_only: Optional[bool] = None,
) -> ClassificationReport:
    """Усі вердикти разом; за oracle=True — ще й перевірка тотожностей на 𝒯(A)."""
    M, _ = minimize(A)
    definite = is_definite(M)
    gendef = is_generalized_definite(M, sinks_only=sinks_only)
    if definite.holds and not gendef.holds:
        raise PropertyViolationError("Визначена мова відхилена тестом узагальненої визначеності")

    pd_witness = definite.witness
    pg_witness = gendef.witness
    for w in (pd_witness, pg_witness):
        if w is not None and not w.replays(M):
            raise PropertyViolationError(f"Свідок не відтворюється на автоматі: {w}")

    S = transition_semigroup(M, cap=cap)
    report = ClassificationReport(
        minimized_size=M.state_count,
        definite=definite.holds,
        generalized_definite=gendef.holds,
        pd_witness=pd_witness.to_model() if pd_witness else None,
        pg_witness=pg_witness.to_model() if pg_witness else None,
        rejected_at_step=gendef.step,
        syntactic_complexity=None if S.truncated else len(S),
        syntactic_complexity_capped=S.truncated,
        definite_degree=definite_degree(M) if definite.holds else None,
    )

    if oracle:
        if S.truncated:
            log.warning("Оракули пропущено: напівгрупа обрізана капом", extra={"n": M.state_count})
            report.oracle = OracleModel(
                definite_identity=SKIPPED_CAPPED,
                gendef_identity=SKIPPED_CAPPED,
                sink_criterion=SKIPPED_CAPPED,
            )
        else:
            def_identity = bool(satisfies_definite_identity(S))
            gen_identity = bool(satisfies_gendef_identity(S))
            try:
                sink_criterion: object = satisfies_sink_criterion(M, cap=cap)
            except TruncatedSemigroupError:
                sink_criterion = SKIPPED_CAPPED
            report.oracle = OracleModel(
                definite_identity=def_identity,
                gendef_identity=gen_identity,
                definite_agrees=def_identity == definite.holds,
                gendef_agrees=gen_identity == gendef.holds,
                sink_criterion=sink_criterion,
            )
            if not (report.oracle.definite_agrees and report.oracle.gendef_agrees):
                log.error("Вердикт розходиться з оракулом", extra={"n": M.state_count})

    if bruteforce:
        found = two_fixed_point_word(M, M.state_count ** 2)
        report.bruteforce_pd_word = format_word(found.x) if found else None

    log.info(
        "Класифікацію завершено",
        extra={
            "n": M.state_count,
            "definite": definite.holds,
            "gendef": gendef.holds,
        },
    )
    return report
