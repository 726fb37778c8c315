# app/models/reports.py

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, Field

from app.models.dfa import Dfa, Word


def format_word(word: Sequence[str]) -> str:
    """Символи склеюються, якщо всі односимвольні, інакше — через пробіл."""
    if not word:
        return "ε"
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return " ".join(word)


@dataclass(frozen=True)
class PatternWitness:
    """
    Свідок заборонених шаблонів: p ≠ q, p·x = p, q·x = q; для P_g ще p·y = q.
    """

    p: int
    q: int
    x: Word
    y: Optional[Word] = None

    def replays(self, A: Dfa) -> bool:
        if self.p == self.q or not self.x:
            return False
        if A.run(self.p, self.x) != self.p or A.run(self.q, self.x) != self.q:
            return False
        if self.y is not None:
            return bool(self.y) and A.run(self.p, self.y) == self.q
        return True

    def to_model(self) -> "WitnessModel":
        return WitnessModel(
            p=self.p + 1,
            q=self.q + 1,
            x=format_word(self.x),
            y=format_word(self.y) if self.y is not None else None,
        )


@dataclass(frozen=True)
class Verdict:
    """
    Вердикт класифікатора. step — крок алгоритму, що відхилив (3 або 5),
    для тесту узагальненої визначеності.
    """

    holds: bool
    witness: Optional[PatternWitness] = None
    automaton: Optional[Dfa] = None
    step: Optional[int] = None

    def __bool__(self) -> bool:
        return self.holds


# -------------------------
# JSON-звіти
# -------------------------


class WitnessModel(BaseModel):
    p: int = Field(..., description="Стан p (1-базовий)")
    q: int = Field(..., description="Стан q (1-базовий)")
    x: str
    y: Optional[str] = None


class OracleModel(BaseModel):
    definite_identity: Union[bool, str]
    gendef_identity: Union[bool, str]
    definite_agrees: Optional[bool] = None
    gendef_agrees: Optional[bool] = None
    sink_criterion: Union[bool, str, None] = None


class ClassificationReport(BaseModel):
    minimized_size: int
    definite: bool
    generalized_definite: bool
    pd_witness: Optional[WitnessModel] = None
    pg_witness: Optional[WitnessModel] = None
    rejected_at_step: Optional[int] = None
    syntactic_complexity: Optional[int] = None
    syntactic_complexity_capped: bool = False
    definite_degree: Optional[int] = None
    oracle: Optional[OracleModel] = None
    bruteforce_pd_word: Optional[str] = None


class DefizeVerified(BaseModel):
    reduced: bool
    avoids_pd: bool
    syc_monotone: Optional[bool] = Field(None, description="None — порівняння пропущене через кап")


class DefizeSidecar(BaseModel):
    input_syc: Optional[int]
    output_syc: Optional[int]
    alphabet_size: int
    verified: DefizeVerified


class SemigroupSummary(BaseModel):
    degree: int
    size: int
    truncated: bool
    elements: List[str]
    definite_identity: Union[bool, str, None] = None
    gendef_identity: Union[bool, str, None] = None
    class_sizes: Dict[int, int] = Field(default_factory=dict, description="|S_i| за 1-базовим станом i")
    residue: int = 0


class TransformationSummary(BaseModel):
    transformation: str
    nonpermutational: bool
    by_power: bool
    fixed_point: Optional[int] = None
    idempotent_power: str
    depth: Dict[int, int] = Field(default_factory=dict)


class BoundsSummary(BaseModel):
    n: int
    floor_e_factorial: int
    theorem_bound: Optional[int] = None
    class_bound: int
    np_count: Optional[int] = None
    np_count_formula: str = "n^(n-1)"
    note: Optional[str] = None
