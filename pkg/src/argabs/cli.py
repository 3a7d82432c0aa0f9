"""Command-line front end.

Every subcommand except ``render`` prints one JSON run report on stdout;
diagnostics go to stderr. Exit codes: 0 success (and, for ``verify`` and
``galois``, the property holds), 1 the command ran but the property fails,
2 usage, parse or bound errors.

Solver bounds can be overridden through the environment:
``ARGABS_SOLVER_BOUND`` (labelling search, default 60),
``ARGABS_GALOIS_BOUND`` (exhaustive Galois check, default 12) and
``ARGABS_SEARCH_BOUND`` (exhaustive partition search, default 8).
"""

from __future__ import annotations

import argparse
import functools
import hashlib
import json
import os
import sys
import time

import jsonschema

from . import abstraction as ab
from .af import parse, serialize
from .errors import ArgabsError
from .order import GaloisReport
from .schemas import SCHEMAS
from .semantics import SemanticsKind, enumerate_extensions

EXIT_OK, EXIT_PROPERTY_FAILS, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name} must be an integer, got {raw!r}") from None


def _sets(family):
    return [sorted(s) for s in family]


def _jsonable(x):
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    return x


def faithfulness_json(report: ab.FaithfulnessReport) -> dict:
    return {
        "semantics": report.semantics.value,
        "sound": report.sound,
        "faithful": report.faithful,
        "concrete": _sets(report.concrete),
        "abstract": _sets(report.abstract),
        "image": _sets(report.image),
        "spurious": _sets(report.spurious),
        "lost": _sets(report.lost),
    }


def galois_json(report: GaloisReport) -> dict:
    return {
        "adjunction_holds": report.adjunction_holds,
        "alpha_monotone": report.alpha_monotone,
        "gamma_monotone": report.gamma_monotone,
        "extensive_holds": report.extensive_holds,
        "reductive_holds": report.reductive_holds,
        "insertion_holds": report.insertion_holds,
        "sampled": report.sampled,
        "checked_pairs": report.checked_pairs,
        "counterexamples": {law: [_jsonable(w) for w in ws] for law, ws in report.counterexamples.items()},
    }


def _read(path, inputs):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    inputs.append(data)
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UsageError(f"{path}: not valid UTF-8 ({exc.reason})") from None


def _load_af(args, inputs):
    fmt = args.format or ("tgf" if args.af_file.lower().endswith(".tgf") else "apx")
    return parse(_read(args.af_file, inputs), fmt, lenient=args.lenient, source=args.af_file)


def _load_partition(args, af, inputs):
    return ab.parse_partition(_read(args.partition, inputs), af, source=args.partition,
                              require_conflict_free=args.require_conflict_free_blocks)


def _enumerator():
    return functools.partial(enumerate_extensions, bound=_env_int("ARGABS_SOLVER_BOUND", 60))


def cmd_solve(args, inputs):
    af = _load_af(args, inputs)
    ext = _enumerator()(af, args.semantics)
    return {"semantics": args.semantics.value, "extensions": ext.as_lists(), "count": len(ext)}, EXIT_OK


def cmd_abstract(args, inputs):
    af = _load_af(args, inputs)
    p = _load_partition(args, af, inputs)
    q = ab.quotient_af(af, p)
    apx = serialize(q.abstract_af, "apx")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(apx)
    result = {
        "blocks": p.as_dict(),
        "abstract_af": {"args": list(q.abstract_af.args), "attacks": [list(t) for t in q.abstract_af.attacks]},
        "apx": apx,
        "out": args.out,
    }
    return result, EXIT_OK


def cmd_verify(args, inputs):
    af = _load_af(args, inputs)
    p = _load_partition(args, af, inputs)
    report = ab.classify(af, p, args.semantics, _enumerator())
    return faithfulness_json(report), EXIT_OK if report.faithful else EXIT_PROPERTY_FAILS


def cmd_search(args, inputs):
    af = _load_af(args, inputs)
    enum = _enumerator()
    p = ab.coarsest_faithful(af, args.semantics, args.mode, enum,
                             exhaustive_bound=_env_int("ARGABS_SEARCH_BOUND", ab.SEARCH_EXHAUSTIVE_BOUND),
                             require_conflict_free=args.require_conflict_free_blocks)
    report = ab.classify(af, p, args.semantics, enum)
    result = {
        "semantics": args.semantics.value,
        "mode": args.mode,
        "partition": p.as_dict(),
        "block_count": len(p),
        "report": faithfulness_json(report),
    }
    return result, EXIT_OK


def cmd_galois(args, inputs):
    af = _load_af(args, inputs)
    p = _load_partition(args, af, inputs)
    report = ab.partition_galois(p, _env_int("ARGABS_GALOIS_BOUND", ab.GALOIS_EXHAUSTIVE_BOUND))
    return galois_json(report), EXIT_OK if report.all_hold else EXIT_PROPERTY_FAILS


def cmd_render(args, inputs):
    af = _load_af(args, inputs)
    if args.abstract:
        if not args.partition:
            raise UsageError("render --abstract requires --partition")
        af = ab.quotient_af(af, _load_partition(args, af, inputs)).abstract_af
    return serialize(af, "dot"), EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "abstract": cmd_abstract,
    "verify": cmd_verify,
    "search": cmd_search,
    "galois": cmd_galois,
    "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="argabs", description="Argumentation framework solver and abstraction checker")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, semantics=False, partition=None):
        p = sub.add_parser(name, help=help)
        p.add_argument("af_file")
        p.add_argument("--format", choices=("apx", "tgf"), help="input format (default: from file extension)")
        p.add_argument("--lenient", action="store_true", help="auto-declare arguments that only occur in attacks")
        if semantics:
            p.add_argument("--semantics", required=True, type=SemanticsKind, choices=list(SemanticsKind))
        if partition is not None:
            p.add_argument("--partition", required=partition, metavar="P_FILE")
        p.add_argument("--require-conflict-free-blocks", action="store_true",
                       help="reject partitions whose blocks contain an internal attack")
        return p

    add("solve", "enumerate extensions", semantics=True)
    add("abstract", "build the quotient framework", partition=True).add_argument("--out")
    add("verify", "classify a partition as faithful or not", semantics=True, partition=True)
    add("search", "find a coarse faithful partition", semantics=True).add_argument(
        "--mode", choices=("greedy", "exhaustive"), default="greedy")
    add("galois", "check the Galois laws of a partition", partition=True)
    add("render", "emit a DOT document", partition=False).add_argument("--abstract", action="store_true")
    return parser


def input_digest(inputs) -> str:
    h = hashlib.sha256()
    for data in inputs:
        h.update(hashlib.sha256(data).digest())
    return "sha256:" + h.hexdigest()


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK

    inputs = []
    start = time.perf_counter()
    try:
        result, code = COMMANDS[args.command](args, inputs)
    except (ArgabsError, UsageError) as exc:
        print(f"argabs {args.command}: error: {exc}", file=stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"argabs {args.command}: error: {exc}", file=stderr)
        return EXIT_ERROR
    elapsed = (time.perf_counter() - start) * 1000

    if args.command == "render":
        stdout.write(result)
        return code
    jsonschema.validate(result, SCHEMAS[args.command])
    report = {
        "command": args.command,
        "input_digest": input_digest(inputs),
        "result": result,
        "timing_ms": round(elapsed, 3),
    }
    stdout.write(json.dumps(report, sort_keys=True) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
