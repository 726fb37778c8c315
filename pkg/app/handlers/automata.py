# app/handlers/automata.py

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from app.handlers.common import (
    add_cap,
    add_dfa_input,
    add_json_flag,
    load_dfa_arg,
    read_input,
    write_output,
)
from app.models.errors import PropertyViolationError
from app.models.reports import SemigroupSummary
from app.models.semigroup import TransformationSemigroup
from app.services.automata import minimize, syntactic_complexity, transition_semigroup
from app.services.bench import bench_gendef
from app.services.classify import SKIPPED_CAPPED, classify_report
from app.services.constructions import defize
from app.services.formats import (
    DfaDocument,
    load_dfa,
    parse_semigroup_file,
    serialize_dfa,
    serialize_semigroup,
)
from app.services.generator import GeneratorConfig, generate_random_dfa
from app.services.render import emit_json, emit_text, render_frame, render_report
from app.services.semigroup import (
    close,
    fixed_point_decomposition,
    satisfies_definite_identity,
    satisfies_gendef_identity,
)
from app.utils.logging_setup import get_logger


log = get_logger(__name__, action="cli_automata")


# -------------------------
# classify / minimize / syc
# -------------------------


def handle_classify(args: argparse.Namespace) -> int:
    A = load_dfa_arg(args)
    report = classify_report(A, oracle=args.oracle, bruteforce=args.bruteforce, cap=args.cap)
    if args.json:
        emit_json(report)
    else:
        render_report(report)
    if report.oracle is not None and False in (report.oracle.definite_agrees, report.oracle.gendef_agrees):
        log.error("Класифікатор розходиться з оракулом тотожностей", extra={"cmd": "classify"})
        return 1
    return 0


def handle_minimize(args: argparse.Namespace) -> int:
    M, _ = minimize(load_dfa_arg(args))
    if args.json:
        emit_json(DfaDocument.from_dfa(M))
    else:
        emit_text(serialize_dfa(M))
    return 0


def handle_syc(args: argparse.Namespace) -> int:
    value = syntactic_complexity(load_dfa_arg(args), cap=args.cap)
    if args.json:
        emit_text(json.dumps({"syntactic_complexity": value, "capped": value is None}))
    else:
        emit_text("exceeds cap" if value is None else str(value))
    return 0


# -------------------------
# semigroup
# -------------------------


def _is_semigroup_file(text: str) -> bool:
    for raw in text.splitlines():
        content = raw.split("#", 1)[0].strip()
        if content:
            return content.startswith("degree")
    return False


def _summary(S: TransformationSemigroup) -> SemigroupSummary:
    if S.truncated:
        definite, gendef = SKIPPED_CAPPED, SKIPPED_CAPPED
    else:
        definite = bool(satisfies_definite_identity(S))
        gendef = bool(satisfies_gendef_identity(S))
    decomposition = fixed_point_decomposition(S)
    return SemigroupSummary(
        degree=S.degree,
        size=len(S),
        truncated=S.truncated,
        elements=[str(t) for t in S],
        definite_identity=definite,
        gendef_identity=gendef,
        class_sizes={i + 1: size for i, size in decomposition.sizes().items()},
        residue=len(decomposition.residue),
    )


def handle_semigroup(args: argparse.Namespace) -> int:
    """
    Файл напівгрупи (degree: n …) — замикання перелічених генераторів;
    автомат — його напівгрупа переходів.
    """
    text = read_input(args.file)
    if _is_semigroup_file(text) and not args.json_input:
        _, generators = parse_semigroup_file(text)
        S = close(generators, cap=args.cap)
    else:
        A = load_dfa(text, json_input=True if args.json_input else None, complete=args.complete)
        S = transition_semigroup(A, cap=args.cap)
    if args.json:
        emit_json(_summary(S))
    else:
        comment = "обрізано капом" if S.truncated else None
        emit_text(serialize_semigroup(S, comment=comment))
    return 0


# -------------------------
# defize
# -------------------------


def handle_defize(args: argparse.Namespace) -> int:
    result = defize(load_dfa_arg(args), max_alphabet=args.max_alphabet, cap=args.cap)
    automaton = serialize_dfa(result.automaton)
    sidecar = result.sidecar.model_dump_json(indent=2)
    if args.out:
        write_output(automaton, args.out)
        write_output(sidecar + "\n", str(Path(args.out).with_suffix(".json")))
    elif args.json:
        emit_text(
            json.dumps(
                {
                    "automaton": DfaDocument.from_dfa(result.automaton).model_dump(),
                    "sidecar": result.sidecar.model_dump(),
                },
                ensure_ascii=False,
            )
        )
    else:
        emit_text(automaton)
        sys.stderr.write(sidecar + "\n")
    if result.sidecar.verified.syc_monotone is False:
        raise PropertyViolationError("|𝒯(B)| < |𝒯(A)|")
    return 0


# -------------------------
# randgen / bench-gendef
# -------------------------


def handle_randgen(args: argparse.Namespace) -> int:
    cfg = GeneratorConfig(
        seed=args.seed,
        state_count=args.states,
        alphabet_size=args.alphabet,
        mode=args.mode,
        final_density=args.density,
    )
    A = generate_random_dfa(cfg)
    if args.json:
        text = DfaDocument.from_dfa(A).model_dump_json(indent=2) + "\n"
    else:
        text = serialize_dfa(A, comment=f"seed={cfg.seed} mode={cfg.mode}")
    write_output(text, args.out)
    return 0


def handle_bench(args: argparse.Namespace) -> int:
    table = bench_gendef(
        args.sizes,
        alphabet_size=args.alphabet,
        seed=args.seed,
        repeats=args.repeats,
    )
    if args.json:
        emit_text(table.to_json(orient="records"))
    else:
        render_frame("bench-gendef", table)
    return 0


# -------------------------
# Реєстрація
# -------------------------


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("classify", help="Визначеність та узагальнена визначеність")
    add_dfa_input(p)
    add_json_flag(p)
    add_cap(p)
    p.add_argument("--oracle", action="store_true", help="Перевірити тотожностями на напівгрупі")
    p.add_argument("--bruteforce", action="store_true", help="Пошук слова з двома нерухомими точками")
    p.set_defaults(handler=handle_classify)

    p = subparsers.add_parser("minimize", help="Мінімальний автомат")
    add_dfa_input(p)
    add_json_flag(p)
    p.set_defaults(handler=handle_minimize)

    p = subparsers.add_parser("semigroup", help="Напівгрупа переходів або замикання генераторів")
    add_dfa_input(p)
    add_json_flag(p)
    add_cap(p)
    p.set_defaults(handler=handle_semigroup)

    p = subparsers.add_parser("syc", help="Синтаксична складність")
    add_dfa_input(p)
    add_json_flag(p)
    add_cap(p)
    p.set_defaults(handler=handle_syc)

    p = subparsers.add_parser("defize", help="Побудова визначеного автомата з не меншою напівгрупою")
    add_dfa_input(p)
    add_json_flag(p)
    add_cap(p)
    p.add_argument("--max-alphabet", type=int, default=None, help="Обмеження розміру алфавіту")
    p.add_argument("--out", default=None, help="Файл автомата; поруч — .json з перевірками")
    p.set_defaults(handler=handle_defize)

    p = subparsers.add_parser("randgen", help="Випадковий автомат")
    add_json_flag(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--mode", choices=("uniform", "gendef-positive"), default="uniform")
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=handle_randgen)

    p = subparsers.add_parser("bench-gendef", help="Час тесту узагальненої визначеності")
    add_json_flag(p)
    p.add_argument("--sizes", type=int, nargs="+", default=[500, 1000, 2000, 4000])
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=None)
    p.set_defaults(handler=handle_bench)
