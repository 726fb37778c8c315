# app/services/constructions.py

from __future__ import annotations

import itertools
import math
from typing import List, Optional, Sequence

import networkx as nx

from app.config.settings import get_settings
from app.models.construction import DefizeResult, SinkPartition
from app.models.dfa import Dfa
from app.models.errors import (
    GuardExceededError,
    InputError,
    NotGeneralizedDefiniteError,
    NotReducedError,
    PropertyViolationError,
    SingletonSinkError,
    TruncatedSemigroupError,
)
from app.models.reports import DefizeSidecar, DefizeVerified
from app.models.semigroup import TransformationSemigroup
from app.models.transformation import Transformation
from app.services.automata import (
    component_graph,
    is_reduced,
    minimize,
    restriction_semigroup,
    transition_semigroup,
)
from app.services.classify import admits_pd, is_generalized_definite
from app.services.transformations import enumerate_elevating
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="defize")


# -------------------------
# Розбиття на Q0 і стоки
# -------------------------


def sink_partition(A: Dfa) -> SinkPartition:
    """
    Q0 — стани тривіальних компонент, топологічно впорядковані
    (нічиї — за номером стану); стоки — за зростанням розміру.
    Після перенумерації кожна літера строго підвищує стани Q0.
    """
    if not is_reduced(A):
        raise NotReducedError("Розбиття на стоки визначене лише для зведеного автомата; спершу minimize")
    if not is_generalized_definite(A):
        raise NotGeneralizedDefiniteError("Розбиття на стоки потребує узагальнено визначеної мови")
    graph = component_graph(A)

    q0_states = sorted(
        next(iter(members))
        for c, members in enumerate(graph.components)
        if not graph.sink[c]
    )
    inner = nx.DiGraph()
    inner.add_nodes_from(q0_states)
    q0_set = set(q0_states)
    for q in q0_states:
        for target in A.delta[q]:
            if target in q0_set:
                inner.add_edge(q, target)
    q0_block = tuple(nx.lexicographical_topological_sort(inner, key=lambda q: q))

    sinks = tuple(
        tuple(sorted(members))
        for members in sorted(graph.sinks(), key=lambda s: (len(s), min(s)))
    )

    relabeling = [0] * A.state_count
    for new, old in enumerate(q0_block + tuple(q for sink in sinks for q in sink)):
        relabeling[old] = new
    return SinkPartition(q0_block=q0_block, sinks=sinks, relabeling=tuple(relabeling))


def sink_restriction_semigroup(
    A: Dfa, sink: Sequence[int], cap: Optional[int] = None
) -> TransformationSemigroup:
    """{(u^A)|_C : u ∈ Σ⁺} — перетворення стоку C (стани C перенумеровані за зростанням)."""
    members = frozenset(sink)
    if members not in component_graph(A).sinks():
        raise InputError(f"{sorted(q + 1 for q in members)} не є стоком автомата")
    return restriction_semigroup(A, sorted(members), cap=cap)


# -------------------------
# Побудова визначеного автомата
# -------------------------


def _maps_into(domain_size: int, codomain: Sequence[int]) -> List[tuple]:
    return list(itertools.product(codomain, repeat=domain_size))


def defize(
    A: Dfa,
    *,
    max_alphabet: Optional[int] = None,
    cap: Optional[int] = None,
) -> DefizeResult:
    """
    Із зведеного автомата узагальнено визначеної мови будує автомат B
    на тих самих станах над алфавітом перетворень [f0, f1, …, fc]:
    f0 — підвищувальна [k] → [n], fj : Qj → Qc для 0 < j < c, fc ∈ 𝒯_c;
    δ'(q, f) = q·f. Перед поверненням перевіряє, що B зведений,
    уникає P_d і |𝒯(B)| ≥ |𝒯(A)|.
    """
    settings = get_settings()
    limit = max_alphabet if max_alphabet is not None else settings.DEFIZE_MAX_ALPHABET

    M, _ = minimize(A)
    partition = sink_partition(M)
    source = M.relabel(partition.relabeling)
    n = source.state_count
    k = partition.k
    sinks = partition.relabeled_sinks()
    largest = sinks[-1]
    if len(largest) == 1:
        raise SingletonSinkError(
            "Усі стоки одноелементні: цей випадок спирається на зовнішню конструкцію і не підтримується"
        )

    restricted = restriction_semigroup(source, largest, cap=cap)
    if restricted.truncated:
        raise TruncatedSemigroupError("Напівгрупа стоку Qc обрізана капом")

    middle = sinks[:-1]
    alphabet_size = (
        math.prod(n - i - 1 for i in range(k))
        * math.prod(len(largest) ** len(block) for block in middle)
        * len(restricted)
    )
    if alphabet_size > limit:
        raise GuardExceededError(f"Алфавіт мав би {alphabet_size} символів, обмеження {limit}")

    elevating = enumerate_elevating(k, n)
    block_maps = [_maps_into(len(block), largest) for block in middle]
    sink_maps = [tuple(largest[v] for v in t.images) for t in restricted]

    symbols = set()
    for f0, *rest in itertools.product(elevating, *block_maps, sink_maps):
        images = list(f0.images)
        for block, values in zip(middle, rest[:-1]):
            images.extend(values)
        images.extend(rest[-1])
        symbols.add(Transformation(tuple(images)))
    letters = sorted(symbols)
    if len(letters) != alphabet_size:
        raise PropertyViolationError(f"Очікувалось {alphabet_size} символів, отримано {len(letters)}")

    B = Dfa(
        state_count=n,
        alphabet=tuple(str(f) for f in letters),
        delta=tuple(tuple(f.images[q] for f in letters) for q in range(n)),
        start=source.start,
        finals=source.finals,
    )

    reduced = is_reduced(B)
    if not reduced:
        raise PropertyViolationError("Побудований автомат не зведений")
    avoids_pd = admits_pd(B) is None
    if not avoids_pd:
        raise PropertyViolationError("Побудований автомат містить шаблон P_d")

    source_semigroup = transition_semigroup(source, cap=cap)
    target_semigroup = transition_semigroup(B, cap=cap)
    input_syc = None if source_semigroup.truncated else len(source_semigroup)
    output_syc = None if target_semigroup.truncated else len(target_semigroup)
    monotone: Optional[bool] = None
    if input_syc is None or output_syc is None:
        log.warning("Порівняння |𝒯(B)| ≥ |𝒯(A)| пропущено через кап", extra={"n": n})
    else:
        monotone = output_syc >= input_syc
        if not monotone:
            raise PropertyViolationError(f"|𝒯(B)| = {output_syc} < |𝒯(A)| = {input_syc}")

    sidecar = DefizeSidecar(
        input_syc=input_syc,
        output_syc=output_syc,
        alphabet_size=alphabet_size,
        verified=DefizeVerified(reduced=reduced, avoids_pd=avoids_pd, syc_monotone=monotone),
    )
    log.info(
        "Конструкцію побудовано та перевірено",
        extra={"n": n, "alphabet": alphabet_size, "input_syc": input_syc, "output_syc": output_syc},
    )
    return DefizeResult(source=source, automaton=B, partition=partition, sidecar=sidecar)
