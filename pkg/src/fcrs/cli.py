"""Batch command-line surface: normalize words, check systems, run the
constructions, and verify outputs against multiplication tables.

Subcommands::

    fcrs normalize SYSTEM.prs "a a a"
    fcrs check SYSTEM.prs [--confluence] [--termination-ball L] [--certificate NAME]
    fcrs construct KIND ... [--no-verify] [--output PATH]
    fcrs verify OUTPUT.fcrs TABLE.cayley

Every command is deterministic: the same inputs and flags produce
byte-identical output.  Exit codes: 0 when the requested property holds,
1 when it fails or a budget left it undecided, 2 for bad input or flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .confluence import (
    COMPLETE,
    check_local_confluence,
    confluence_records,
    render_confluence_report,
)
from .construct import (
    CERT_LENGTH,
    CertificateSpec,
    adjoin_zero,
    derive_glue,
    ideal_extension,
    parse_construction_file,
    rees_simple,
    rees_zero,
    regular_pipeline,
    reverify,
    serialize_construction,
)
from .errors import BudgetExhausted, ConstructionError, InputError
from .orders import render_decrease_report, verify_decrease_on_ball
from .systems import DEFAULT_STEP_BUDGET, normalize, parse_presentation_file
from .tables import load_cayley_file, load_rees_file
from .words import format_word, parse_word

MAX_BALL = 8
MAX_EXPLORE = 1_000_000
CONSTRUCT_KINDS = ("adjoin-zero", "ideal-extension", "rees-zero", "rees-simple", "regular")


@dataclass(frozen=True)
class RunConfig:
    """Validated bounds shared by the commands; the hard caps keep runs at
    desk scale."""

    ball_len: int = 4
    step_budget: int = DEFAULT_STEP_BUDGET
    max_explore: int = MAX_EXPLORE
    machine: bool = False
    output: str | None = None

    def __post_init__(self):
        if self.step_budget < 1:
            raise InputError("--step-budget must be positive")
        if not 1 <= self.ball_len <= MAX_BALL:
            raise InputError(f"--termination-ball must be between 1 and {MAX_BALL}")
        if not 1 <= self.max_explore <= MAX_EXPLORE:
            raise InputError(f"--max-explore must be between 1 and {MAX_EXPLORE}")


def _config(args) -> RunConfig:
    ball = getattr(args, "termination_ball", None)
    return RunConfig(
        ball_len=4 if ball is None else ball,
        step_budget=args.step_budget,
        max_explore=args.max_explore,
        machine=args.machine,
        output=getattr(args, "output", None),
    )


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# normalize

def _trace_text(trace) -> str:
    lines = []
    prev = trace.start
    for step in trace.steps:
        lines.append(f"{format_word(prev)} →[rule {step.rule} @ pos {step.pos}] "
                     f"{format_word(step.word)}")
        prev = step.word
    lines.append(f"final {format_word(trace.final)}")
    return "\n".join(lines) + "\n"


def _trace_records(trace) -> str:
    out = []
    prev = trace.start
    for step in trace.steps:
        out.append(json.dumps({"from": format_word(prev), "rule": step.rule,
                               "pos": step.pos, "to": format_word(step.word)}))
        prev = step.word
    out.append(json.dumps({"final": format_word(trace.final)}))
    return "\n".join(out) + "\n"


def cmd_normalize(args) -> int:
    cfg = _config(args)
    system = parse_presentation_file(args.presentation)
    word = system.check_word(parse_word(args.word))
    try:
        trace = normalize(system, word, cfg.step_budget)
    except BudgetExhausted as exc:
        if exc.partial is not None:
            _emit(_trace_records(exc.partial) if cfg.machine else _trace_text(exc.partial), cfg)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(_trace_records(trace) if cfg.machine else _trace_text(trace), cfg)
    return 0


# ---------------------------------------------------------------------------
# check

def _load_system_and_certificate(path: str):
    """A check target is either a bare presentation or a serialized
    construction document; the latter carries its own certificate."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if any(line.strip().startswith("certificate:") for line in text.splitlines()):
        out = parse_construction_file(path)
        return out.system, out.certificate
    return parse_presentation_file(path), None


def _ball_records(report) -> str:
    out = [
        json.dumps({"source": format_word(v.source), "target": format_word(v.target),
                    "rule": v.rule, "pos": v.pos, "verdict": v.verdict.relation})
        for v in report.violations
    ]
    out.append(json.dumps({"checked": report.checked,
                           "violations": len(report.violations),
                           "truncated": report.truncated}))
    return "\n".join(out) + "\n"


def cmd_check(args) -> int:
    cfg = _config(args)
    system, certificate = _load_system_and_certificate(args.presentation)
    want_confluence = args.confluence
    want_ball = args.termination_ball is not None
    if not want_confluence and not want_ball:
        want_confluence = want_ball = True

    chunks = []
    passed = True
    if want_ball:
        kind = args.certificate
        if certificate is not None:
            if kind is not None and kind != certificate.kind:
                raise InputError(f"the document certifies {certificate.kind!r}, "
                                 f"not {kind!r}")
        else:
            if kind is None:
                kind = CERT_LENGTH
            if kind != CERT_LENGTH:
                raise InputError(
                    f"a bare presentation carries no {kind} context; check a "
                    f"serialized construction document instead"
                )
            certificate = CertificateSpec(CERT_LENGTH)
        comparator = certificate.comparator(system)
        report = verify_decrease_on_ball(system, comparator, cfg.ball_len,
                                         cfg.max_explore)
        chunks.append(_ball_records(report) if cfg.machine
                      else render_decrease_report(report))
        passed = passed and report.ok
    if want_confluence:
        report = check_local_confluence(system, cfg.step_budget)
        if cfg.machine:
            records = confluence_records(report)
            records.append({"pairs": len(report.outcomes),
                            "unresolved": len(report.unresolved),
                            "incomplete": report.incomplete})
            chunks.append("".join(json.dumps(r) + "\n" for r in records))
        else:
            chunks.append(render_confluence_report(report))
        passed = passed and report.all_resolved and not report.incomplete
    _emit("".join(chunks), cfg)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# construct

def _construct_ideal_extension(args):
    if not (args.table and args.ideal_construction and args.quotient_construction):
        raise InputError("ideal-extension needs --table, --ideal-construction, "
                         "and --quotient-construction")
    sg = load_cayley_file(args.table)
    t_doc = parse_construction_file(args.ideal_construction)
    u_doc = parse_construction_file(args.quotient_construction)
    zero_name = args.quotient_zero
    t_names = {name: word for name, word in t_doc.witness}
    u_names = {name: word for name, word in u_doc.witness if name != zero_name}
    overlap = set(t_names) & set(u_names)
    if overlap:
        raise InputError(f"elements witnessed on both sides: {sorted(overlap)}")
    covered = set(t_names) | set(u_names)
    missing = [n for n in sg.element_names if n not in covered]
    if missing:
        raise InputError(f"no witness for table elements: {missing}")
    extra = sorted(covered - set(sg.element_names))
    if extra:
        raise InputError(f"witnessed names not in the table: {extra}")
    t_idx = {sg.index(n): w for n, w in t_names.items()}
    u_idx = {sg.index(n): w for n, w in u_names.items()}
    glue = derive_glue(sg, tuple(t_idx), t_doc.system, t_idx, u_doc.system, u_idx)
    return ideal_extension(t_doc.system, u_doc.system, glue,
                           t_witness=t_names, u_witness=u_names)


def cmd_construct(args) -> int:
    cfg = _config(args)
    kind = args.kind
    if kind == "adjoin-zero":
        if not args.input or args.zero is None:
            raise InputError("adjoin-zero needs a presentation file and --zero")
        system = parse_presentation_file(args.input)
        out = adjoin_zero(system, parse_word(args.zero))
    elif kind == "ideal-extension":
        out = _construct_ideal_extension(args)
    elif kind in ("rees-zero", "rees-simple"):
        if not args.input:
            raise InputError(f"{kind} needs a datum file")
        datum = load_rees_file(args.input)
        out = rees_zero(datum) if kind == "rees-zero" else rees_simple(datum)
    else:  # regular; argparse limits the choices
        if not args.input:
            raise InputError("regular needs a Cayley-table file")
        out = regular_pipeline(load_cayley_file(args.input),
                               ball_len=cfg.ball_len, step_budget=cfg.step_budget)
    _emit(serialize_construction(out), cfg)
    if args.no_verify:
        return 0
    result = reverify(out, cfg.ball_len, cfg.max_explore, cfg.step_budget)
    summary = (json.dumps({"verification": result.verdict}) if cfg.machine
               else f"verification: {result.verdict}")
    print(summary, file=sys.stderr)
    return 0 if result.verdict == COMPLETE else 1


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    cfg = _config(args)
    out = parse_construction_file(args.construction)
    sg = load_cayley_file(args.table)
    wm = out.witness_map
    missing = [n for n in sg.element_names if n not in wm]
    if missing:
        raise InputError(f"witness missing table elements: {missing}")
    names = sg.element_names
    failures = []
    for x in range(sg.size):
        for y in range(sg.size):
            expected = wm[names[sg.mult(x, y)]]
            got = normalize(out.system, wm[names[x]] + wm[names[y]],
                            cfg.step_budget).final
            if got != expected:
                failures.append((names[x], names[y], expected, got))
    total = sg.size * sg.size
    lines = []
    for x, y, expected, got in failures:
        if cfg.machine:
            lines.append(json.dumps({"left": x, "right": y,
                                     "expected": format_word(expected),
                                     "got": format_word(got)}))
        else:
            lines.append(f"FAIL {x} * {y}: expected {format_word(expected)} "
                         f"got {format_word(got)}")
    summary = {"products": total, "failed": len(failures)}
    lines.append(json.dumps(summary) if cfg.machine
                 else f"products: {total - len(failures)}/{total} pass")
    _emit("\n".join(lines) + "\n", cfg)
    return 0 if not failures else 1


# ---------------------------------------------------------------------------
# argument wiring

def _add_common(parser, *, ball_flag: bool) -> None:
    parser.add_argument("--step-budget", type=int, default=DEFAULT_STEP_BUDGET,
                        help="reduction step cap per normalization")
    parser.add_argument("--max-explore", type=int, default=MAX_EXPLORE,
                        help=f"word/comparison cap for ball checks (max {MAX_EXPLORE})")
    parser.add_argument("--machine", action="store_true",
                        help="one JSON record per line instead of text")
    parser.add_argument("--output", help="write the report/document here instead of stdout")
    if ball_flag:
        parser.add_argument("--termination-ball", type=int, default=None,
                            metavar="L", help=f"verify decrease on words of length <= L (max {MAX_BALL})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fcrs",
        description="Finite complete rewriting systems for finite semigroups: "
                    "normal forms and completeness checks, plus certified constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="reduce a word to its normal form, step by step")
    p.add_argument("presentation", help="presentation file (.prs)")
    p.add_argument("word", help="the word, tokens separated by spaces")
    _add_common(p, ball_flag=False)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("check", help="critical pairs and/or termination-order ball checks")
    p.add_argument("presentation", help="presentation or serialized construction file")
    p.add_argument("--confluence", action="store_true",
                   help="resolve all critical pairs (default: both checks)")
    p.add_argument("--certificate", choices=["length", "ideal-extension", "rees"],
                   help="termination order to check decrease against")
    _add_common(p, ball_flag=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="run a construction and emit its document")
    p.add_argument("kind", choices=CONSTRUCT_KINDS)
    p.add_argument("input", nargs="?",
                   help="presentation (adjoin-zero), datum (rees-*), or Cayley table (regular)")
    p.add_argument("--zero", help="adjoin-zero: the irreducible word acting as zero")
    p.add_argument("--table", help="ideal-extension: Cayley table of the whole semigroup")
    p.add_argument("--ideal-construction",
                   help="ideal-extension: construction document for the ideal")
    p.add_argument("--quotient-construction",
                   help="ideal-extension: construction document for the quotient")
    p.add_argument("--quotient-zero", default="0",
                   help="ideal-extension: witness name of the quotient's zero (default 0)")
    p.add_argument("--no-verify", action="store_true",
                   help="emit the document without re-running verification")
    _add_common(p, ball_flag=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a construction document against a Cayley table")
    p.add_argument("construction", help="serialized construction document")
    p.add_argument("table", help="Cayley table file")
    _add_common(p, ball_flag=False)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
