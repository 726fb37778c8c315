# app/services/automata.py

from __future__ import annotations

from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from app.models.dfa import ComponentGraph, Dfa, PairAutomaton, PairComponents, Word
from app.models.errors import InputError
from app.models.semigroup import TransformationSemigroup
from app.models.transformation import Transformation
from app.services.semigroup import close
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="automata")


# -------------------------
# Досяжність і мінімізація
# -------------------------


def reachable_part(A: Dfa) -> Tuple[Dfa, Dict[int, int]]:
    """
    Обмеження на стани, досяжні зі старту (BFS у порядку алфавіту).
    Повертає автомат і відображення старий → новий номер.
    """
    order = [A.start]
    mapping = {A.start: 0}
    queue = deque([A.start])
    while queue:
        q = queue.popleft()
        for target in A.delta[q]:
            if target not in mapping:
                mapping[target] = len(order)
                order.append(target)
                queue.append(target)

    if len(order) == A.state_count and order == list(range(A.state_count)):
        return A, mapping

    delta = tuple(tuple(mapping[t] for t in A.delta[q]) for q in order)
    R = Dfa(
        state_count=len(order),
        alphabet=A.alphabet,
        delta=delta,
        start=0,
        finals=frozenset(mapping[q] for q in A.finals if q in mapping),
    )
    return R, mapping


def minimize(A: Dfa) -> Tuple[Dfa, Dict[int, int]]:
    """
    Мінімальний автомат: досяжна частина + уточнення розбиття (Мур)
    від поділу {фінальні, нефінальні}. Стани нумеруються BFS від старту
    в порядку алфавіту.
    """
    R, reach = reachable_part(A)
    T = R.table
    block = R.final_mask.astype(np.int64)
    count = len(np.unique(block))

    while True:
        signature = np.column_stack([block, block[T]])
        _, refined = np.unique(signature, axis=0, return_inverse=True)
        refined = refined.reshape(-1)
        refined_count = int(refined.max()) + 1
        block = refined
        if refined_count == count:
            break
        count = refined_count

    # Канонічна нумерація блоків
    representative: Dict[int, int] = {}
    for q in range(R.state_count):
        representative.setdefault(int(block[q]), q)
    start_block = int(block[R.start])
    canon = {start_block: 0}
    order = [start_block]
    queue = deque([start_block])
    while queue:
        b = queue.popleft()
        for target in T[representative[b]]:
            tb = int(block[target])
            if tb not in canon:
                canon[tb] = len(order)
                order.append(tb)
                queue.append(tb)

    delta = tuple(
        tuple(canon[int(block[t])] for t in T[representative[b]])
        for b in order
    )
    M = Dfa(
        state_count=len(order),
        alphabet=R.alphabet,
        delta=delta,
        start=0,
        finals=frozenset(canon[b] for b in order if R.final_mask[representative[b]]),
    )
    mapping = {old: canon[int(block[new])] for old, new in reach.items()}
    log.debug(
        "Мінімізація завершена",
        extra={"n": A.state_count, "reachable": R.state_count, "minimal": M.state_count},
    )
    return M, mapping


def is_reduced(A: Dfa) -> bool:
    """Зв'язний і всі пари станів розрізнювані."""
    return minimize(A)[0].state_count == A.state_count


def same_language_sample(A: Dfa, B: Dfa, words: Sequence[Word]) -> Optional[Word]:
    """Перше слово з вибірки, на якому автомати розходяться."""
    for w in words:
        if A.accepts(w) != B.accepts(w):
            return w
    return None


# -------------------------
# Дії слів і напівгрупа переходів
# -------------------------


def word_transformation(A: Dfa, word: Sequence[str]) -> Transformation:
    """u^A: q ↦ q·u; порожнє слово — тотожність."""
    images = np.arange(A.state_count)
    T = A.table
    for symbol in word:
        images = T[images, A.letter(symbol)]
    return Transformation(tuple(images.tolist()))


def letter_actions(A: Dfa) -> List[Transformation]:
    return [A.letter_action(a) for a in A.alphabet]


def transition_semigroup(A: Dfa, cap: Optional[int] = None) -> TransformationSemigroup:
    """𝒯(A) = {u^A : u ∈ Σ⁺}, генератори — дії літер у порядку алфавіту."""
    return close(letter_actions(A), cap=cap)


def restriction_semigroup(
    A: Dfa, states: Sequence[int], cap: Optional[int] = None
) -> TransformationSemigroup:
    """
    Обмеження 𝒯(A) на замкнену множину станів. Обмеження — гомоморфізм,
    тож достатньо замкнути обмежені дії літер.
    """
    ordered = tuple(sorted(states))
    return close([t.restrict(ordered) for t in letter_actions(A)], cap=cap)


def syntactic_complexity(A: Dfa, cap: Optional[int] = None) -> Optional[int]:
    """|𝒯(мінімального автомата)|; None — перевищено кап."""
    M, _ = minimize(A)
    S = transition_semigroup(M, cap=cap)
    return None if S.truncated else len(S)


# -------------------------
# Граф компонент
# -------------------------


def transition_graph(A: Dfa) -> nx.MultiDiGraph:
    G = nx.MultiDiGraph()
    G.add_nodes_from(range(A.state_count))
    for q, row in enumerate(A.delta):
        for a, target in enumerate(row):
            G.add_edge(q, target, symbol=A.alphabet[a])
    return G


def component_graph(A: Dfa) -> ComponentGraph:
    """
    Сильно зв'язні компоненти (networkx.condensation) з прапорцями
    тривіальності та стоку. Компоненти впорядковані за найменшим станом.
    """
    G = transition_graph(A)
    C = nx.condensation(G)
    raw_members = {c: frozenset(C.nodes[c]["members"]) for c in C.nodes}
    order = sorted(raw_members, key=lambda c: min(raw_members[c]))

    components = tuple(raw_members[c] for c in order)
    component_of = [0] * A.state_count
    for i, members in enumerate(components):
        for q in members:
            component_of[q] = i

    trivial = []
    sink = []
    edges = set()
    for i, members in enumerate(components):
        closed = True
        looped = False
        for q in members:
            for a, target in enumerate(A.delta[q]):
                j = component_of[target]
                if target == q:
                    looped = True
                if j != i:
                    closed = False
                    edges.add((i, j, A.alphabet[a]))
        trivial.append(len(members) == 1 and not looped)
        sink.append(closed)

    graph = ComponentGraph(
        component_of=tuple(component_of),
        components=components,
        trivial=tuple(trivial),
        sink=tuple(sink),
        dag_edges=tuple(sorted(edges, key=lambda e: (e[0], e[1], A.symbol_index[e[2]]))),
    )
    log.debug(
        "Граф компонент",
        extra={"n": A.state_count, "components": len(components), "sinks": len(graph.sink_ids())},
    )
    return graph


def shortest_word(A: Dfa, source: int, target: int) -> Optional[Word]:
    """
    Найкоротше непорожнє слово з source у target (BFS, порядок алфавіту).
    """
    # -1 — віртуальний корінь: перший крок зі source
    parent: Dict[int, Tuple[int, int]] = {}
    queue = deque()
    for a, nxt in enumerate(A.delta[source]):
        if nxt not in parent:
            parent[nxt] = (-1, a)
            queue.append(nxt)
    while queue and target not in parent:
        q = queue.popleft()
        for a, nxt in enumerate(A.delta[q]):
            if nxt not in parent:
                parent[nxt] = (q, a)
                queue.append(nxt)
    if target not in parent:
        return None
    letters: List[str] = []
    q = target
    while True:
        prev, a = parent[q]
        letters.append(A.alphabet[a])
        if prev == -1:
            break
        q = prev
    return tuple(reversed(letters))


# -------------------------
# Квадрат автомата
# -------------------------


def product_square(A: Dfa, blocks: Optional[Sequence[Sequence[int]]] = None) -> PairAutomaton:
    """
    Пари станів, (p, q)·a = (p·a, q·a). Без blocks — усі n² пар у порядку
    рядків; з blocks — лише пари всередині кожного блоку (блоки мають бути
    замкнені під усіма літерами).
    """
    n = A.state_count
    T = A.table
    if blocks is None:
        blocks = [range(n)]

    block_of = np.full(n, -1, dtype=np.int64)
    position = np.zeros(n, dtype=np.int64)
    sizes: List[int] = []
    offsets: List[int] = []
    pair_chunks: List[np.ndarray] = []
    total = 0
    for b, members in enumerate(blocks):
        states = np.asarray(sorted(members), dtype=np.int64)
        if np.any(block_of[states] != -1):
            raise InputError("Блоки квадрата перетинаються")
        block_of[states] = b
        position[states] = np.arange(states.size)
        sizes.append(int(states.size))
        offsets.append(total)
        total += int(states.size) ** 2
        pp, qq = np.meshgrid(states, states, indexing="ij")
        pair_chunks.append(np.column_stack([pp.ravel(), qq.ravel()]))

    pairs = np.concatenate(pair_chunks) if pair_chunks else np.zeros((0, 2), dtype=np.int64)
    pa = T[pairs[:, 0]]
    qa = T[pairs[:, 1]]
    owner = block_of[pa]
    if np.any(owner != block_of[pairs[:, [0]]]) or np.any(block_of[qa] != owner):
        raise InputError("Блок квадрата не замкнений під літерами")
    sizes_arr = np.asarray(sizes, dtype=np.int64)
    offsets_arr = np.asarray(offsets, dtype=np.int64)
    succ = offsets_arr[owner] + position[pa] * sizes_arr[owner] + position[qa]
    return PairAutomaton(base_size=n, alphabet=A.alphabet, pairs=pairs, succ=succ)


def pair_components(P: PairAutomaton) -> PairComponents:
    """
    Сильно зв'язні компоненти квадрата (scipy.sparse.csgraph).
    Компонента нетривіальна, якщо має > 1 пари або петлю.
    """
    m = len(P)
    if m == 0:
        empty = np.zeros(0, dtype=np.int64)
        return PairComponents(count=0, labels=empty, nontrivial=np.zeros(0, dtype=bool))
    k = P.succ.shape[1]
    rows = np.repeat(np.arange(m), k)
    cols = P.succ.reshape(-1)
    graph = csr_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(m, m))
    count, labels = connected_components(graph, directed=True, connection="strong")
    sizes = np.bincount(labels, minlength=count)
    nontrivial = sizes > 1
    self_loop = (P.succ == np.arange(m)[:, None]).any(axis=1)
    nontrivial[labels[self_loop]] = True
    return PairComponents(count=int(count), labels=labels, nontrivial=nontrivial)


def shortest_pair_cycle(P: PairAutomaton, components: PairComponents, index: int) -> Word:
    """
    Найкоротший цикл через пару index у межах її компоненти (BFS).
    """
    label = components.labels[index]
    k = P.succ.shape[1]
    parent: Dict[int, Tuple[int, int]] = {}
    queue = deque()
    for a in range(k):
        nxt = int(P.succ[index, a])
        if nxt == index:
            return (P.alphabet[a],)
        if components.labels[nxt] == label and nxt not in parent:
            parent[nxt] = (index, a)
            queue.append(nxt)
    while queue:
        cur = queue.popleft()
        for a in range(k):
            nxt = int(P.succ[cur, a])
            if nxt == index:
                letters = [P.alphabet[a]]
                back = cur
                while back != index:
                    prev, b = parent[back]
                    letters.append(P.alphabet[b])
                    back = prev
                return tuple(reversed(letters))
            if components.labels[nxt] == label and nxt not in parent:
                parent[nxt] = (cur, a)
                queue.append(nxt)
    raise InputError(f"Пара {P.pair(index)} не лежить на циклі")
