# app/services/formats.py

from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError

from app.models.dfa import Dfa
from app.models.errors import ParseError
from app.models.semigroup import TransformationSemigroup
from app.models.transformation import Transformation
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="formats")

_HEADER = re.compile(r"^\s*([a-z]+)\s*:(.*)$")


def _is_number(token: str) -> bool:
    # str.isdigit приймає "²", який int() не розбирає
    return token.isascii() and token.isdigit()


# -------------------------
# Перетворення: (2,3,3)
# -------------------------


def parse_transformation(text: str, *, line: Optional[int] = None) -> Transformation:
    """
    Вектор образів у 1-базовій нотації, пробіли ігноруються.
    Позиції в повідомленнях — 1-базові номери символів.
    """
    stripped = text.strip()
    offset = len(text) - len(text.lstrip()) + 1
    if not stripped.startswith("("):
        raise ParseError("очікується '('", line=line, position=offset)
    if not stripped.endswith(")"):
        raise ParseError("очікується ')'", line=line, position=offset + len(stripped) - 1)
    body = stripped[1:-1]
    parts = body.split(",")
    values: List[int] = []
    pos = offset + 1
    for part in parts:
        token = part.strip()
        if not _is_number(token):
            raise ParseError(f"'{token}' не є натуральним числом", line=line, position=pos)
        values.append(int(token))
        pos += len(part) + 1
    n = len(values)
    for i, v in enumerate(values):
        if not 1 <= v <= n:
            raise ParseError(f"образ {v} у позиції {i + 1} поза межами [{n}]", line=line, position=offset)
    return Transformation.from_one_based(values)


# -------------------------
# Файл напівгрупи
# -------------------------


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def parse_semigroup_file(text: str) -> Tuple[int, List[Transformation]]:
    """
    Заголовок `degree: n`, далі по одному перетворенню в рядку; `#` — коментар.
    """
    degree: Optional[int] = None
    items: List[Transformation] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = _strip_comment(raw)
        if not content:
            continue
        if degree is None:
            match = _HEADER.match(content)
            if not match or match.group(1) != "degree":
                raise ParseError("очікується заголовок 'degree: n'", line=number)
            value = match.group(2).strip()
            if not _is_number(value) or int(value) < 1:
                raise ParseError(f"некоректний степінь '{value}'", line=number)
            degree = int(value)
            continue
        t = parse_transformation(content, line=number)
        if t.degree != degree:
            raise ParseError(f"степінь {t.degree} ≠ {degree}", line=number)
        items.append(t)
    if degree is None:
        raise ParseError("порожній файл напівгрупи")
    return degree, items


def serialize_semigroup(S: TransformationSemigroup, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    lines.append(f"degree: {S.degree}")
    lines.extend(str(t) for t in S)
    return "\n".join(lines) + "\n"


# -------------------------
# Текстовий формат автомата
# -------------------------


def _parse_state(token: str, n: int, number: int) -> int:
    if not _is_number(token) or not 1 <= int(token) <= n:
        raise ParseError(f"стан '{token}' поза межами [{n}]", line=number)
    return int(token) - 1


def _complete_table(
    n: int,
    alphabet: Tuple[str, ...],
    table: Dict[Tuple[int, int], int],
    complete: bool,
) -> Tuple[int, List[List[int]]]:
    missing = [(q, a) for q in range(n) for a in range(len(alphabet)) if (q, a) not in table]
    if missing and not complete:
        q, a = missing[0]
        raise ParseError(
            f"немає переходу для ({q + 1}, {alphabet[a]}); додайте --complete для мертвого стану"
        )
    total = n + 1 if missing else n
    rows = [[table.get((q, a), n) for a in range(len(alphabet))] for q in range(n)]
    if missing:
        rows.append([n] * len(alphabet))
        log.info("Додано мертвий стан", extra={"n": total, "missing": len(missing)})
    return total, rows


def parse_dfa_text(text: str, *, complete: bool = False) -> Dfa:
    headers: Dict[str, Tuple[int, str]] = {}
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = _strip_comment(raw)
        if content:
            lines.append((number, content))

    expected = ("states", "alphabet", "start", "final")
    for key, (number, content) in zip(expected, lines[:4]):
        match = _HEADER.match(content)
        if not match or match.group(1) != key:
            raise ParseError(f"очікується заголовок '{key}:'", line=number)
        headers[key] = (number, match.group(2).strip())
    if len(headers) < 4:
        raise ParseError(f"бракує заголовка '{expected[len(headers)]}:'")

    number, value = headers["states"]
    if not _is_number(value) or int(value) < 1:
        raise ParseError(f"некоректна кількість станів '{value}'", line=number)
    n = int(value)

    number, value = headers["alphabet"]
    alphabet = tuple(value.split())
    if not alphabet:
        raise ParseError("порожній алфавіт", line=number)
    if len(set(alphabet)) != len(alphabet):
        raise ParseError("символи алфавіту повторюються", line=number)
    index = {a: i for i, a in enumerate(alphabet)}

    number, value = headers["start"]
    start = _parse_state(value, n, number)
    number, value = headers["final"]
    finals = frozenset(_parse_state(token, n, number) for token in value.split())

    table: Dict[Tuple[int, int], int] = {}
    for number, content in lines[4:]:
        tokens = content.split()
        if len(tokens) != 3:
            raise ParseError("очікується '<стан> <символ> <стан>'", line=number)
        source = _parse_state(tokens[0], n, number)
        if tokens[1] not in index:
            raise ParseError(f"невідомий символ '{tokens[1]}'", line=number)
        target = _parse_state(tokens[2], n, number)
        key = (source, index[tokens[1]])
        if key in table:
            raise ParseError(f"повторний перехід ({tokens[0]}, {tokens[1]})", line=number)
        table[key] = target

    total, rows = _complete_table(n, alphabet, table, complete)
    return Dfa(state_count=total, alphabet=alphabet, delta=tuple(map(tuple, rows)), start=start, finals=finals)


def serialize_dfa(A: Dfa, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    lines.append(f"states: {A.state_count}")
    lines.append(f"alphabet: {' '.join(A.alphabet)}")
    lines.append(f"start: {A.start + 1}")
    lines.append(("final: " + " ".join(str(q + 1) for q in sorted(A.finals))).rstrip())
    for q, row in enumerate(A.delta):
        for a, target in enumerate(row):
            lines.append(f"{q + 1} {A.alphabet[a]} {target + 1}")
    return "\n".join(lines) + "\n"


# -------------------------
# JSON-дзеркало
# -------------------------


class DfaDocument(BaseModel):
    """Ті самі поля, що й у текстовому форматі; стани 1-базові."""

    states: int = Field(..., ge=1)
    alphabet: List[str] = Field(..., min_length=1)
    start: int = Field(..., ge=1)
    final: List[int] = Field(default_factory=list)
    transitions: List[Tuple[int, str, int]]

    @classmethod
    def from_dfa(cls, A: Dfa) -> "DfaDocument":
        return cls(
            states=A.state_count,
            alphabet=list(A.alphabet),
            start=A.start + 1,
            final=sorted(q + 1 for q in A.finals),
            transitions=[
                (q + 1, A.alphabet[a], target + 1)
                for q, row in enumerate(A.delta)
                for a, target in enumerate(row)
            ],
        )


def parse_dfa_json(text: str, *, complete: bool = False) -> Dfa:
    try:
        doc = DfaDocument.model_validate_json(text)
    except ValidationError as exc:
        raise ParseError(f"некоректний JSON автомата: {exc.errors()[0]['msg']}") from exc
    n = doc.states
    if len(set(doc.alphabet)) != len(doc.alphabet):
        raise ParseError("символи алфавіту повторюються")
    index = {a: i for i, a in enumerate(doc.alphabet)}
    if not 1 <= doc.start <= n:
        raise ParseError(f"стан {doc.start} поза межами [{n}]")
    for q in doc.final:
        if not 1 <= q <= n:
            raise ParseError(f"стан {q} поза межами [{n}]")
    table: Dict[Tuple[int, int], int] = {}
    for pos, (source, symbol, target) in enumerate(doc.transitions, start=1):
        if symbol not in index:
            raise ParseError(f"невідомий символ '{symbol}'", position=pos)
        if not (1 <= source <= n and 1 <= target <= n):
            raise ParseError(f"перехід ({source}, {symbol}, {target}) поза межами [{n}]", position=pos)
        key = (source - 1, index[symbol])
        if key in table:
            raise ParseError(f"повторний перехід ({source}, {symbol})", position=pos)
        table[key] = target - 1
    total, rows = _complete_table(n, tuple(doc.alphabet), table, complete)
    return Dfa(
        state_count=total,
        alphabet=tuple(doc.alphabet),
        delta=tuple(map(tuple, rows)),
        start=doc.start - 1,
        finals=frozenset(q - 1 for q in doc.final),
    )


def load_dfa(text: str, *, json_input: Optional[bool] = None, complete: bool = False) -> Dfa:
    """Формат визначається вмістом: перший непорожній символ '{' — JSON."""
    if json_input is None:
        json_input = text.lstrip().startswith("{")
    if json_input:
        return parse_dfa_json(text, complete=complete)
    return parse_dfa_text(text, complete=complete)
