# app/handlers/semigroup.py

from __future__ import annotations

import argparse
import json

from app.handlers.common import add_json_flag, write_output
from app.models.reports import BoundsSummary, TransformationSummary
from app.services.formats import parse_transformation, serialize_semigroup
from app.services.render import emit_json, emit_text, render_mapping
from app.services.semigroup import candidate_b, class_bound, floor_e_factorial, theorem_bound
from app.services.transformations import (
    count_np_bruteforce,
    idempotent_power,
    ila_structure,
    is_nonpermutational,
    is_nonpermutational_by_power,
)
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="cli_semigroup")

# Найбільше n, для якого bounds рахує |NP_n| перебором
BRUTEFORCE_COUNT_MAX_N = 5


def handle_np_check(args: argparse.Namespace) -> int:
    f = parse_transformation(args.vector)
    verdict = is_nonpermutational(f)
    by_power = is_nonpermutational_by_power(f)
    summary = TransformationSummary(
        transformation=str(f),
        nonpermutational=verdict,
        by_power=by_power,
        idempotent_power=str(idempotent_power(f)),
    )
    if verdict:
        ila = ila_structure(f)
        summary.fixed_point = ila.root + 1
        summary.depth = {state + 1: d for state, d in ila.depth.items()}
    if args.json:
        emit_json(summary)
    else:
        render_mapping(
            "Непереставність",
            {
                "Перетворення": summary.transformation,
                "Непереставне (цикли)": "так" if verdict else "ні",
                "Непереставне (f^ω)": "так" if by_power else "ні",
                "Fix(f)": summary.fixed_point,
                "f^ω": summary.idempotent_power,
            },
        )
    if verdict != by_power:
        log.error("Тести непереставності розходяться", extra={"cmd": "np-check"})
        return 1
    return 0


def handle_bounds(args: argparse.Namespace) -> int:
    n = args.n
    summary = BoundsSummary(
        n=n,
        floor_e_factorial=floor_e_factorial(n),
        theorem_bound=theorem_bound(n) if n >= 3 else None,
        class_bound=class_bound(n),
        np_count=count_np_bruteforce(n) if n <= BRUTEFORCE_COUNT_MAX_N else None,
    )
    if n == 3:
        summary.note = "при n = 3 ⌊e(n−1)!⌋ = 5 > n((n−1)!−(n−3)!) = 3; формула не є загальним максимумом"
    if args.json:
        emit_json(summary)
    else:
        render_mapping(
            f"Оцінки для n = {n}",
            {
                "⌊e(n−1)!⌋": summary.floor_e_factorial,
                "n((n−1)! − (n−3)!)": summary.theorem_bound,
                "(n−1)! на клас": summary.class_bound,
                "|NP_n| (перебір)": summary.np_count,
                "Примітка": summary.note,
            },
        )
    return 0


def handle_candidate_b(args: argparse.Namespace) -> int:
    S = candidate_b(args.n)
    if args.json:
        emit_text(
            json.dumps(
                {
                    "n": args.n,
                    "size": len(S),
                    "floor_e_factorial": floor_e_factorial(args.n),
                    "elements": [str(t) for t in S],
                }
            )
        )
    else:
        write_output(serialize_semigroup(S, comment=f"candidate_b({args.n}), |B| = {len(S)}"), args.out)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("np-check", help="Перевірка непереставності перетворення")
    p.add_argument("vector", help="Вектор образів, наприклад (2,3,3)")
    add_json_flag(p)
    p.set_defaults(handler=handle_np_check)

    p = subparsers.add_parser("bounds", help="⌊e(n−1)!⌋, n((n−1)!−(n−3)!) та |NP_n|")
    p.add_argument("n", type=int)
    add_json_flag(p)
    p.set_defaults(handler=handle_bounds)

    p = subparsers.add_parser("candidate-b", help="Напівгрупа-кандидат B")
    p.add_argument("n", type=int)
    p.add_argument("--out", default=None)
    add_json_flag(p)
    p.set_defaults(handler=handle_candidate_b)
