# app/handlers/search.py

from __future__ import annotations

import argparse

from app.handlers.common import add_json_flag, write_output
from app.models.search import RealizationModel, SearchReport, SearchResult
from app.services.formats import serialize_semigroup
from app.services.render import emit_json, render_search
from app.services.search import max_definite_syc, max_np_subsemigroup_bnb, max_np_subsemigroup_exact
from app.services.semigroup import floor_e_factorial, theorem_bound
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="cli_search")


def _report(result: SearchResult) -> SearchReport:
    n = result.degree
    realization = None
    if result.realization is not None:
        realization = RealizationModel(
            start=result.realization.start + 1,
            finals=sorted(q + 1 for q in result.realization.finals),
            notes=list(result.realization.notes),
        )
    return SearchReport(
        n=n,
        best_size=result.best_size,
        exhaustive=result.exhaustive,
        explored_nodes=result.explored_nodes,
        budget_nodes=result.budget.nodes,
        budget_secs=result.budget.seconds,
        floor_e_factorial=floor_e_factorial(n),
        theorem_bound=theorem_bound(n) if n >= 3 else None,
        witness=[str(t) for t in result.witness],
        realization=realization,
    )


def _emit(result: SearchResult, args: argparse.Namespace, title: str) -> None:
    report = _report(result)
    if args.json:
        emit_json(report)
        if args.out:
            write_output(serialize_semigroup(result.witness, comment=title), args.out)
        return
    extra = {"⌊e(n−1)!⌋": report.floor_e_factorial, "n((n−1)! − (n−3)!)": report.theorem_bound}
    if result.exhaustive and report.theorem_bound is not None and result.degree >= 4:
        extra["Не перевищує n((n−1)!−(n−3)!)"] = "так" if result.best_size <= report.theorem_bound else "ні"
    render_search(result, extra)
    write_output(serialize_semigroup(result.witness, comment=title), args.out)


def handle_search_max(args: argparse.Namespace) -> int:
    if args.n <= 3 and not args.bnb:
        result = max_np_subsemigroup_exact(args.n)
    else:
        result = max_np_subsemigroup_bnb(
            args.n,
            budget_nodes=args.budget_nodes,
            budget_secs=args.budget_secs,
            workers=args.workers,
            deterministic=args.deterministic,
        )
    _emit(result, args, f"search-max n={args.n} size={result.best_size} exhaustive={result.exhaustive}")
    return 0


def handle_search_defsyc(args: argparse.Namespace) -> int:
    result = max_definite_syc(args.n, budget_nodes=args.budget_nodes, budget_secs=args.budget_secs)
    _emit(result, args, f"search-defsyc n={args.n} size={result.best_size}")
    return 0


def _add_budget(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("n", type=int)
    parser.add_argument("--budget-nodes", type=int, default=None)
    parser.add_argument("--budget-secs", type=float, default=None)
    parser.add_argument("--out", default=None, help="Файл для свідка у форматі напівгрупи")
    add_json_flag(parser)


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("search-max", help="Найбільша непереставна піднапівгрупа T_n")
    _add_budget(p)
    p.add_argument("--deterministic", action="store_true", help="Послідовний детермінований пошук")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--bnb", action="store_true", help="Пошук з відсіканням і для n ≤ 3")
    p.set_defaults(handler=handle_search_max)

    p = subparsers.add_parser("search-defsyc", help="Найбільша реалізовна синтаксична складність")
    _add_budget(p)
    p.set_defaults(handler=handle_search_defsyc)
