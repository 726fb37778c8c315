# app/models/construction.py

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from app.models.dfa import Dfa
from app.models.reports import DefizeSidecar


@dataclass(frozen=True)
class SinkPartition:
    """
    Q = Q0 ⊎ Q1 ⊎ … ⊎ Qc у старій нумерації.

    q0_block — стани тривіальних компонент у топологічному порядку;
    sinks — стоки за зростанням розміру (нічия — за найменшим станом);
    relabeling[q] — новий номер: спершу Q0, далі стоки підряд.
    """

    q0_block: Tuple[int, ...]
    sinks: Tuple[Tuple[int, ...], ...]
    relabeling: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.q0_block)

    def relabeled_sinks(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(self.relabeling[q] for q in sink) for sink in self.sinks)

    def as_dict(self) -> Dict[str, object]:
        return {
            "q0": [q + 1 for q in self.q0_block],
            "sinks": [[q + 1 for q in sink] for sink in self.sinks],
        }


@dataclass(frozen=True)
class DefizeResult:
    source: Dfa
    automaton: Dfa
    partition: SinkPartition
    sidecar: DefizeSidecar
