"""``argonto`` command line.

Exit status: 0 success, 1 negative check result (``check``, ``well-defined``,
``explain`` of an unaccepted assertion), 2 usage/parse errors, 3 budget errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from .grounding import BudgetExceeded
from .logic import natural_key
from .ontology import PriorityDecl
from .semantics import SEMANTICS
from .syntax import OntologySyntaxError, parse_concept, parse_ontology
from .tasks import (
    CREDULOUS,
    SCEPTICAL,
    NotAccepted,
    UnknownAssertion,
    assertion_acceptance,
    collective_acceptance,
    compile_ontology,
    concepts_of_individual,
    consistency_check,
    explain,
    instance_check,
    instances_of_concept,
)
from .translation import TranslationError, check_well_defined

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _parse_priorities(values) -> list:
    out = []
    for value in values:
        for item in value.split(","):
            item = item.strip()
            if not item:
                continue
            m = re.fullmatch(r"([A-Za-z_][\w']*)\s*([<=])\s*([A-Za-z_][\w']*)", item)
            if not m:
                raise UsageError(f"bad --priority {item!r}; expected a<b or a=b")
            out.append(PriorityDecl(m.group(1), m.group(3), m.group(2) == "="))
    return out


def _default_budget() -> int:
    raw = os.environ.get("ARGONTO_BUDGET")
    if not raw:
        return 100_000
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ARGONTO_BUDGET must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="ontology file (.onto)")
    common.add_argument("--semantics", choices=SEMANTICS, default="gr")
    common.add_argument("--mode", choices=(SCEPTICAL, CREDULOUS), default=SCEPTICAL)
    common.add_argument(
        "--priority",
        action="append",
        default=[],
        help="replace the file's PRIORITY lines, e.g. 'p2<p1' (repeatable)",
    )
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-arguments", type=int, default=None)
    common.add_argument("--max-skolem-depth", type=int, default=1)
    common.add_argument("--node-limit", type=int, default=1_000_000)
    common.add_argument("--no-transpose", dest="transpose", action="store_false")
    common.add_argument("--no-table-verbatim", dest="table_verbatim", action="store_false")
    common.add_argument("--emit-theory", metavar="PATH")
    common.add_argument("--emit-arguments", metavar="PATH")
    common.add_argument("--emit-af", metavar="PATH")

    parser = argparse.ArgumentParser(prog="argonto", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="consistency of the ABox w.r.t. the TBox")
    p = sub.add_parser("accept", parents=[common], help="is an assertion accepted")
    p.add_argument("--assert", dest="assertion", required=True)
    p = sub.add_parser("instance", parents=[common], help="instance checking")
    p.add_argument("--individual", required=True)
    p.add_argument("--class", dest="concept", required=True)
    p.add_argument("--same-extension", action="store_true")
    sub.add_parser("conclusions", parents=[common], help="collectively accepted conclusions")
    p = sub.add_parser("instances-of", parents=[common], help="individuals of a concept")
    p.add_argument("--concept", required=True)
    p = sub.add_parser("concepts-of", parents=[common], help="concepts of an individual")
    p.add_argument("--individual", required=True)
    p = sub.add_parser("explain", parents=[common], help="explain an accepted assertion")
    p.add_argument("--assert", dest="assertion", required=True)
    p.add_argument("--norms-only", action="store_true")
    sub.add_parser("arguments", parents=[common], help="list all arguments")
    p = sub.add_parser("af", parents=[common], help="attacks and defeats")
    p.add_argument("--apx", action="store_true", help="print the defeat graph in apx format")
    sub.add_parser("extensions", parents=[common], help="extensions under --semantics")
    p = sub.add_parser("well-defined", parents=[common], help="well-definedness diagnostics")
    p.add_argument("--max-subset", type=int, default=3)
    return parser


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _text(payload: dict) -> str:
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (list, dict)):
            lines.append(f"{key}:")
            items = value if isinstance(value, list) else [f"{k}: {v}" for k, v in sorted(value.items())]
            for item in items:
                lines.append(f"  {item if not isinstance(item, dict) else json.dumps(item, sort_keys=True)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _run(args, out) -> int:
    budget = args.max_arguments if args.max_arguments is not None else _default_budget()
    source = Path(args.input).read_text(encoding="utf-8")
    ontology = parse_ontology(source)
    priorities = _parse_priorities(args.priority) if args.priority else None
    if priorities is not None:
        declared = set(ontology.principle_ids())
        for d in priorities:
            for pid in (d.lower, d.higher):
                if pid not in declared:
                    raise UsageError(f"--priority references undeclared principle {pid!r}")
    pipe = compile_ontology(
        ontology,
        priorities,
        transpose=args.transpose,
        table_verbatim=args.table_verbatim,
        max_skolem_depth=args.max_skolem_depth,
        max_arguments=budget,
        node_limit=args.node_limit,
    )

    if args.emit_theory:
        Path(args.emit_theory).write_text(_dump(pipe.theory.to_json()) + "\n", encoding="utf-8")
    if args.emit_arguments:
        Path(args.emit_arguments).write_text(_dump(pipe.store.to_json()) + "\n", encoding="utf-8")
    if args.emit_af:
        Path(args.emit_af).write_text(_dump(pipe.graph.to_json(pipe.store)) + "\n", encoding="utf-8")

    status = EXIT_OK
    cmd = args.command
    if cmd == "check":
        res = consistency_check(pipe)
        payload = res.to_json()
        payload["answer"] = "consistent" if res.answer else "inconsistent"
        status = EXIT_OK if res.answer else EXIT_NEGATIVE
    elif cmd == "accept":
        payload = assertion_acceptance(pipe, args.assertion, args.mode, args.semantics).to_json()
        payload["answer"] = "accepted" if payload["answer"] else "rejected"
    elif cmd == "instance":
        concept = parse_concept(args.concept)
        payload = instance_check(
            pipe, args.individual, concept, args.mode, args.semantics, args.same_extension
        ).to_json()
    elif cmd == "conclusions":
        payload = {
            "task": "conclusions",
            "semantics": args.semantics,
            "answer": collective_acceptance(pipe, args.semantics),
        }
    elif cmd == "instances-of":
        found = instances_of_concept(pipe, args.concept, args.mode, args.semantics)
        payload = {
            "task": "instances-of",
            "input": {"concept": args.concept},
            "semantics": args.semantics,
            "mode": args.mode,
            "answer": sorted(found, key=natural_key),
        }
    elif cmd == "concepts-of":
        found = concepts_of_individual(pipe, args.individual, args.mode, args.semantics)
        payload = {
            "task": "concepts-of",
            "input": {"individual": args.individual},
            "semantics": args.semantics,
            "mode": args.mode,
            "answer": sorted(found, key=natural_key),
        }
    elif cmd == "explain":
        payload = explain(pipe, args.assertion, args.mode, args.semantics, args.norms_only).to_json()
    elif cmd == "arguments":
        payload = {"task": "arguments", "answer": pipe.store.to_json(), "diagnostics": pipe.store.diagnostics}
    elif cmd == "af":
        if args.apx:
            out.write(pipe.graph.to_apx())
            return EXIT_OK
        payload = pipe.graph.to_json(pipe.store)
    elif cmd == "extensions":
        payload = {
            "semantics": args.semantics,
            "extensions": [list(e.members) for e in pipe.extensions(args.semantics)],
        }
    elif cmd == "well-defined":
        report = check_well_defined(pipe.theory, args.max_subset, args.max_skolem_depth, budget)
        payload = {"task": "well-defined", **report.to_json()}
        status = EXIT_OK if report.passed else EXIT_NEGATIVE
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown command {cmd!r}")

    if pipe.theory.diagnostics and isinstance(payload, dict):
        payload.setdefault("diagnostics", [])
        payload["diagnostics"] = list(payload["diagnostics"]) + list(pipe.theory.diagnostics)
    out.write((_dump(payload) if args.format == "json" else _text(payload)) + "\n")
    return status


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return _run(args, out)
    except BudgetExceeded as exc:
        err.write(f"argonto: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except NotAccepted as exc:
        err.write(f"argonto: not accepted: {exc}\n")
        return EXIT_NEGATIVE
    except (OntologySyntaxError, TranslationError, UnknownAssertion, UsageError, ValueError, OSError) as exc:
        err.write(f"argonto: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
