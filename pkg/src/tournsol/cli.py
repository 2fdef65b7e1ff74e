"""Command-line entry point: ``tournsol <command> ...``.

Exit codes: 0 success, 2 parse error, 3 unknown name, 4 evaluation failure,
5 resource guard, 10 property failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import axioms, builders, verify
from .canonical import canonical_certificate, enumerate_nonisomorphic
from .choice import ChoiceError
from .solutions import BP, UnknownSolutionError, get_solution
from .tournament import (
    ResourceGuardError,
    Tournament,
    TournamentError,
    TrnParseError,
    enumerate_labeled,
    local_reverse,
    parse_trn,
    to_trn,
)
from .zsgame import maximin

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNKNOWN = 3
EXIT_EVAL = 4
EXIT_GUARD = 5
EXIT_PROPERTY = 10

THREADS_ENV = "TOURNSOL_THREADS"

BUILTINS = {
    "t4": builders.t4,
    "t7": builders.t7,
    "t13": builders.t13,
    "t24": builders.t24,
}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(f"{self.prog}: {message}", EXIT_PARSE)


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise CliError(f"{THREADS_ENV} must be a positive integer, got {raw!r}", EXIT_PARSE) from None
    if n < 1:
        raise CliError(f"{THREADS_ENV} must be a positive integer, got {raw!r}", EXIT_PARSE)
    return n


def load_tournament(path: str) -> Tournament:
    if path.startswith("builtin:"):
        key = path.split(":", 1)[1]
        if key not in BUILTINS:
            raise CliError(f"unknown builtin tournament {key!r} (have {', '.join(BUILTINS)})", EXIT_UNKNOWN)
        return BUILTINS[key]()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from None
    try:
        return parse_trn(text)
    except TrnParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def _solution(name: str):
    try:
        return get_solution(name)
    except UnknownSolutionError:
        raise CliError(f"unknown solution {name!r}", EXIT_UNKNOWN) from None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_solve(args) -> int:
    t = load_tournament(args.input)
    s = _solution(args.solution)
    chosen = sorted(s(t))
    payload = {"solution": s.name, "order": t.order, "chosen": chosen}
    text = " ".join(map(str, chosen))
    if s is BP:
        eq = maximin(t)
        payload["equilibrium"] = eq.to_json()
        text += "\n" + " ".join(payload["equilibrium"]["probabilities"])
    _emit(args, payload, text)
    return EXIT_OK


def _write_witness(path: str | None, verdict: axioms.AxiomVerdict) -> None:
    if not path or verdict.witness is None:
        return
    out = Path(path)
    tours = verdict.witness.tournaments
    if len(tours) == 1:
        out.write_text(to_trn(tours[0]))
        return
    out.mkdir(parents=True, exist_ok=True)
    for i, t in enumerate(tours):
        (out / f"witness_{i}.trn").write_text(to_trn(t))


def cmd_check(args) -> int:
    if args.axiom not in axioms.AXIOMS:
        raise CliError(f"unknown axiom {args.axiom!r}", EXIT_UNKNOWN)
    s = _solution(args.solution)
    other = _solution(args.against) if args.against else None
    if args.axiom == "refinement" and other is None:
        raise CliError("refinement needs --against NAME", EXIT_PARSE)
    if args.samples and args.seed is None:
        raise CliError("--samples needs an explicit --seed", EXIT_PARSE)
    extra = tuple(load_tournament(p) for p in args.include)
    default = axioms.DEFAULT_EXHAUSTIVE.get(args.axiom, 6)
    max_order = args.max_order or default
    if args.exhaustive:
        bound = max_order
    else:
        bound = min(max_order, default)
    scope = axioms.Scope(
        max_order=max_order,
        exhaustive_up_to=bound,
        min_order=args.min_order,
        samples=args.samples or 0,
        seed=args.seed,
        extra=extra,
    )
    verdict = axioms.run_axiom(args.axiom, s, scope, other)
    _write_witness(args.witness_out, verdict)
    _emit(args, verdict.to_json(), verdict.to_text())
    return EXIT_OK if verdict.passed else EXIT_PROPERTY


def cmd_verify(args) -> int:
    fn = verify.VERIFICATIONS.get(args.name)
    if fn is None:
        raise CliError(f"unknown verification {args.name!r}", EXIT_UNKNOWN)
    report = fn()
    _emit(args, report.to_json(), report.to_text())
    return EXIT_OK if report.passed else EXIT_PROPERTY


def cmd_enumerate(args) -> int:
    if args.labeled:
        stream = enumerate_labeled(args.order)
    else:
        stream = enumerate_nonisomorphic(args.order)
    if args.count_only:
        count = sum(1 for _ in stream)
        _emit(args, {"order": args.order, "labeled": args.labeled, "count": count}, str(count))
        return EXIT_OK
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    written = 0
    texts = []
    for i, t in enumerate(stream):
        if out:
            (out / f"order{args.order}_{i:06d}.trn").write_text(to_trn(t))
        else:
            texts.append(to_trn(t))
        written += 1
    if out:
        _emit(args, {"order": args.order, "labeled": args.labeled, "count": written, "out": str(out)}, f"wrote {written} files to {out}")
    else:
        _emit(args, {"order": args.order, "labeled": args.labeled, "count": written, "tournaments": texts}, "\n".join(texts).rstrip("\n"))
    return EXIT_OK


def cmd_stats(args) -> int:
    s = _solution(args.solution)
    workers = thread_count() if args.order >= 6 else 1
    stats = axioms.average_choice_size(s, args.order, workers=workers)
    avg = stats.average
    text = (
        f"{s.name} order {stats.order}: {stats.total} labeled tournaments, "
        f"total size {stats.sum_sizes}, average {avg.numerator}/{avg.denominator}"
    )
    _emit(args, stats.to_json(), text)
    return EXIT_OK


def cmd_reverse(args) -> int:
    t = load_tournament(args.input)
    if not 0 <= args.alternative < t.order:
        raise CliError(f"alternative {args.alternative} out of range for order {t.order}", EXIT_PARSE)
    r = local_reverse(t, args.alternative)
    if args.out:
        Path(args.out).write_text(to_trn(r))
    if args.json:
        print(json.dumps({"tournament": to_trn(r), "alternative": args.alternative}, indent=2, sort_keys=True))
    elif not args.out:
        sys.stdout.write(to_trn(r))
    return EXIT_OK


def cmd_canon(args) -> int:
    t = load_tournament(args.input)
    cert = canonical_certificate(t)
    _emit(args, {"order": cert.order, "certificate": cert.hex()}, cert.hex())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tournsol", description="Compute tournament solutions and check their axioms exactly.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("solve", help="apply a tournament solution to a .trn file")
    sp.add_argument("--solution", required=True)
    sp.add_argument("--input", required=True, help="path to a .trn file or builtin:t4|t7|t13|t24")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("check", help="check an axiom for a solution")
    sp.add_argument("--axiom", required=True)
    sp.add_argument("--solution", required=True)
    sp.add_argument("--against", help="second solution, for refinement")
    sp.add_argument("--max-order", type=int)
    sp.add_argument("--min-order", type=int, default=1)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="enumerate every order up to --max-order")
    mode.add_argument("--samples", type=int, help="random tournaments per order above the exhaustive bound")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--include", action="append", default=[], help="extra tournament to add to the stream")
    sp.add_argument("--witness-out", help="write witness .trn here (a directory if several)")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("verify", help="run a named verification")
    sp.add_argument("name", help=", ".join(verify.VERIFICATIONS))
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("enumerate", help="list or count tournaments of an order")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--labeled", action="store_true")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--out")
    common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("stats", help="average choice-set size over labeled tournaments")
    sp.add_argument("--solution", required=True)
    sp.add_argument("--order", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("reverse", help="reverse every edge at one alternative")
    sp.add_argument("--input", required=True)
    sp.add_argument("--alternative", type=int, required=True)
    sp.add_argument("--out")
    common(sp)
    sp.set_defaults(func=cmd_reverse)

    sp = sub.add_parser("canon", help="print the canonical certificate")
    sp.add_argument("--input", required=True)
    common(sp)
    sp.set_defaults(func=cmd_canon)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ChoiceError as exc:
        # hat operators that are not well defined land here, with the witness in the message
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    except TournamentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
