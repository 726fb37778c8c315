# app/services/render.py

from __future__ import annotations

import sys
from typing import Any, Dict, Optional

import pandas as pd
from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from app.models.reports import ClassificationReport, WitnessModel
from app.models.search import SearchResult


def get_console() -> Console:
    # Console без file пише у поточний sys.stdout
    return Console(highlight=False, soft_wrap=True, markup=False)


def emit_text(text: str) -> None:
    """Машиночитний вивід (формати файлів) — без обробки rich."""
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def emit_json(model: BaseModel) -> None:
    emit_text(model.model_dump_json(indent=2))


def _yes_no(value: Optional[bool]) -> str:
    if value is None:
        return "—"
    return "так" if value else "ні"


def _witness(w: Optional[WitnessModel]) -> str:
    if w is None:
        return "—"
    text = f"p={w.p}, q={w.q}, x={w.x}"
    if w.y is not None:
        text += f", y={w.y}"
    return text


def render_report(report: ClassificationReport) -> None:
    table = Table(title="Класифікація", show_header=False)
    table.add_column("Поле")
    table.add_column("Значення")
    table.add_row("Станів у мінімальному автоматі", str(report.minimized_size))
    table.add_row("Визначена", _yes_no(report.definite))
    table.add_row("Узагальнено визначена", _yes_no(report.generalized_definite))
    table.add_row("Свідок P_d", _witness(report.pd_witness))
    table.add_row("Свідок P_g", _witness(report.pg_witness))
    if report.rejected_at_step is not None:
        table.add_row("Відхилено на кроці", str(report.rejected_at_step))
    syc = "перевищує кап" if report.syntactic_complexity_capped else str(report.syntactic_complexity)
    table.add_row("Синтаксична складність", syc)
    if report.definite_degree is not None:
        table.add_row("Степінь визначеності", str(report.definite_degree))
    if report.oracle is not None:
        table.add_row("Тотожність yx^ω = x^ω", str(report.oracle.definite_identity))
        table.add_row("Тотожність x^ω y x^ω = x^ω", str(report.oracle.gendef_identity))
        table.add_row("Критерій стоків", str(report.oracle.sink_criterion))
    if report.bruteforce_pd_word is not None:
        table.add_row("Слово з двома нерухомими точками", report.bruteforce_pd_word)
    get_console().print(table)


def render_mapping(title: str, rows: Dict[str, Any]) -> None:
    table = Table(title=title, show_header=False)
    table.add_column("Поле")
    table.add_column("Значення")
    for key, value in rows.items():
        table.add_row(key, "—" if value is None else str(value))
    get_console().print(table)


def render_search(result: SearchResult, extra: Optional[Dict[str, Any]] = None) -> None:
    rows: Dict[str, Any] = {
        "n": result.degree,
        "Найбільший розмір": result.best_size,
        "Повний перебір": _yes_no(result.exhaustive),
        "Вузлів": result.explored_nodes,
    }
    if result.realization is not None:
        rows["q0"] = result.realization.start + 1
        rows["F"] = "{" + ",".join(str(q + 1) for q in sorted(result.realization.finals)) + "}"
        for i, note in enumerate(result.realization.notes, start=1):
            rows[f"Примітка {i}"] = note
    rows.update(extra or {})
    render_mapping("Пошук", rows)


def render_frame(title: str, frame: pd.DataFrame) -> None:
    table = Table(title=title)
    for column in frame.columns:
        table.add_column(str(column), justify="right")
    for record in frame.itertuples(index=False):
        table.add_row(*("—" if pd.isna(v) else f"{v:.2f}" if isinstance(v, float) else str(v) for v in record))
    get_console().print(table)
