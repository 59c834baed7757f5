"""Command-line interface.

Exit status: 0 when every check passes, 1 when a check fails, 2 for bad input
or a violated precondition.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import catalog, fuzz, report, specfile
from .errors import InputError, NordenError, PreconditionError, TheoremViolation

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _load(args) -> tuple:
    """``(ambient, subspaces)`` from ``--input FILE`` or ``--builtin NAME``."""
    if args.builtin:
        e = catalog.load_builtin(args.builtin)
        return e.ambient, e.named_subspaces
    spec = specfile.load_spec(args.input)
    return spec.ambient, spec.subspaces


def _subspace(subspaces: dict, name: str):
    if name not in subspaces:
        raise InputError(f"no subspace {name!r}; known: {', '.join(sorted(subspaces))}")
    return subspaces[name]


def cmd_classify(args) -> dict:
    amb, subs = _load(args)
    return report.classify_report(amb, args.subspace, _subspace(subs, args.subspace), args.metric)


def cmd_split(args) -> dict:
    amb, subs = _load(args)
    return report.split_report(
        amb, args.subspace, _subspace(subs, args.subspace), args.metric, args.radical_transversal
    )


def cmd_cross(args) -> dict:
    amb, subs = _load(args)
    return report.cross_report(amb, args.subspace, _subspace(subs, args.subspace))


def cmd_verify(args) -> dict:
    amb, subs = _load(args)
    return report.verify_report(amb, args.subspace, _subspace(subs, args.subspace))


def cmd_catalog(args) -> dict:
    entry = catalog.load_builtin(args.name)
    if args.export:
        Path(args.export).write_text(
            specfile.dump_spec(entry.name, entry.ambient, entry.named_subspaces)
        )
    return report.catalog_report(entry, args.export)


def cmd_fuzz(args) -> dict:
    if args.ambient.startswith("abelian_"):
        amb = catalog.abelian_entry(args.ambient.removeprefix("abelian_")).ambient
    else:
        amb = catalog.load_builtin(args.ambient).ambient
    summary = fuzz.run_battery(amb, args.seeds, args.seed)
    return {"report": "fuzz", "schema": report.SCHEMA_VERSION, "ambient": amb.name,
            "base_seed": args.seed, **summary.as_dict()}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(
        prog="nordenlight",
        description="Classify and verify submanifolds of Lie algebras with Norden metrics.",
    )
    p.add_argument("--format", choices=("text", "machine"), default="text",
                   help="report layout (machine = JSON)")
    p.add_argument("--seed", type=int, default=0, help="base seed for randomized commands")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp):
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", help="manifold spec file (JSON)")
        src.add_argument("--builtin", choices=catalog.BUILTIN_NAMES, help="built-in ambient")
        sp.add_argument("--subspace", required=True, help="name of a subspace in the spec")

    sp = sub.add_parser("classify", parents=[common], help="degeneracy and complex type")
    with_input(sp)
    sp.add_argument("--metric", choices=("g", "gtilde"), default="g")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("split", parents=[common], help="lightlike splitting frame")
    with_input(sp)
    sp.add_argument("--metric", choices=("g", "gtilde"), default="g")
    sp.add_argument("--radical-transversal", action="store_true",
                    help="use the splitting with ltr = J(Rad)")
    sp.set_defaults(func=cmd_split)

    sp = sub.add_parser("cross", parents=[common], help="compare both metrics")
    with_input(sp)
    sp.set_defaults(func=cmd_cross)

    sp = sub.add_parser("verify", parents=[common], help="run the identity suites")
    with_input(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("catalog", parents=[common], help="built-in ambients")
    sp.add_argument("--name", choices=catalog.BUILTIN_NAMES, required=True)
    sp.add_argument("--export", metavar="FILE", help="write the entry as a spec file")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("fuzz", parents=[common], help="seeded property battery")
    sp.add_argument("--ambient", required=True,
                    choices=catalog.BUILTIN_NAMES + tuple(f"abelian_{n}" for n in catalog.BUILTIN_NAMES))
    sp.add_argument("--seeds", type=int, default=50)
    sp.set_defaults(func=cmd_fuzz)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
    except (InputError, PreconditionError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except TheoremViolation as exc:
        err.write(f"theorem violation: {exc}\n")
        return EXIT_FAIL
    except NordenError as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_FAIL
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    out.write(report.render(doc, args.format))
    return EXIT_OK if doc.get("ok", True) else EXIT_FAIL


def main() -> None:
    sys.exit(run())
