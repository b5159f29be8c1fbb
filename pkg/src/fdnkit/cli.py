"""Command-line front-end wiring codecs, conversion, execution and lint.

Exit codes: 0 success, 1 usage error, 2 parse/validation error, 3 failed
achievability/scheduling check, 4 lint errors, 5 diff found differences.
Errors are printed to stderr as ``CODE: detail``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .cx import emit_cx, parse_cx
from .dot import emit_dot, emit_dot_diff
from .errors import (
    AmbiguousChoice,
    CyclicNetwork,
    FdnkitError,
    InvalidWorkflow,
    Unachievable,
)
from .execution import Chooser, achievable, check_acyclic, schedule
from .fdn import FdnGraph, af_key, convert, diff, merge
from .lint import (
    DUP_LABEL,
    LintReport,
    NamingRule,
    VerbVocabulary,
    check_naming_scheme,
    check_uniqueness,
    check_verbs,
)
from .native import emit_native, parse_native
from .workflow import NodeKind, WorkflowGraph, replace_styles, substitute_device, validate

VOCAB_ENV = "FDNKIT_VOCAB"


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the documented code is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"USAGE: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fdnkit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"fdnkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_io(p, n_inputs="+"):
        p.add_argument("inputs", nargs=n_inputs, help="workflow files (.cx/.json or .fdn.txt)")
        p.add_argument("--output", "-o", help="output path (default: stdout)")

    for name in ("convert", "merge"):
        p = sub.add_parser(name, help="convert workflows and merge the networks")
        add_io(p)
        p.add_argument("--format", choices=("dot", "cx"), default="dot")
        p.add_argument(
            "--no-merge",
            action="store_true",
            help="emit one network per input instead of merging",
        )

    p = sub.add_parser("check", help="verify achievability of goals")
    add_io(p)
    p.add_argument("--goal", action="append", default=None, help="goal label (default: every function)")
    p.add_argument("--axiom", action="append", default=None, help="axiom label (default: sources)")

    p = sub.add_parser("schedule", help="extract a firing order for a goal")
    add_io(p)
    p.add_argument("--goal", required=True, help="attribute-function label to realize")
    p.add_argument("--axiom", action="append", default=None)
    p.add_argument(
        "--chooser",
        choices=[c.value for c in Chooser],
        default=Chooser.FIRST_BY_LABEL.value,
    )

    p = sub.add_parser("lint", help="vocabulary, uniqueness and naming checks")
    add_io(p)
    p.add_argument("--vocab", help=f"verb vocabulary file (or ${VOCAB_ENV})")
    p.add_argument(
        "--naming-rule",
        action="append",
        default=[],
        metavar="PATTERN=PREFIX",
        help="require way member names matching PATTERN to start with PREFIX",
    )

    p = sub.add_parser("diff", help="compare two converted networks")
    p.add_argument("inputs", nargs=2, metavar=("LEFT", "RIGHT"))
    p.add_argument("--output", "-o")

    p = sub.add_parser("whitebox", help="substitute a device with a sub-workflow")
    p.add_argument("inputs", nargs=1, metavar="WORKFLOW")
    p.add_argument("--output", "-o")
    p.add_argument("--device", required=True, help="label of the device to white-box")
    p.add_argument("--sub", required=True, help="sub-workflow file")
    p.add_argument(
        "--bind",
        action="append",
        default=[],
        metavar="LABEL=SUBLABEL",
        help="map a boundary attribute to a sub-workflow attribute (default: same label)",
    )
    p.add_argument("--format", choices=("dot", "cx", "native"), default="dot")
    return parser


def _load_workflow(path: str) -> WorkflowGraph:
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise FdnkitError(f"cannot read {path}: {exc.strerror or exc}") from exc
    name = p.name.lower()
    if name.endswith(".fdn.txt") or p.suffix.lower() == ".txt":
        graph = parse_native(data)
    elif p.suffix.lower() in (".cx", ".json"):
        graph = parse_cx(data)
    else:
        raise FdnkitError(f"cannot determine format of {path} (expected .cx/.json/.fdn.txt)")
    report = validate(graph)
    if not report.ok:
        raise InvalidWorkflow(report, path)
    return graph


def _load_styled(paths) -> list[WorkflowGraph]:
    """Load workflows, restyling file k > 0 with style class k so merged
    renderings keep chains apart."""
    graphs = []
    for k, path in enumerate(paths):
        g = _load_workflow(path)
        if k > 0:
            g = replace_styles(g, k)
        graphs.append(g)
    return graphs


def _write(data: bytes | str, path: str | None) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _numbered(path: str | None, index: int) -> str | None:
    if path is None:
        return None
    p = Path(path)
    return str(p.with_name(f"{p.stem}.{index}{p.suffix}"))


def _emit_fdn(f: FdnGraph, fmt: str) -> bytes | str:
    return emit_dot(f) if fmt == "dot" else emit_cx(f)


def _cmd_convert(args) -> int:
    graphs = _load_styled(args.inputs)
    networks = [convert(g) for g in graphs]
    if args.no_merge:
        for k, network in enumerate(networks):
            out = _numbered(args.output, k) if len(networks) > 1 else args.output
            _write(_emit_fdn(merge([network]), args.format), out)
    else:
        _write(_emit_fdn(merge(networks), args.format), args.output)
    return 0


def _network_for_exec(paths) -> FdnGraph:
    return merge([convert(g) for g in _load_styled(paths)])


def _cmd_check(args) -> int:
    network = _network_for_exec(args.inputs)
    witness = check_acyclic(network)
    if witness is not None:
        print(f"CYCLIC_NETWORK: {' -> '.join(k[2] for k in witness.nodes)}", file=sys.stderr)
        return 3
    axioms = [af_key(a) for a in args.axiom] if args.axiom else None
    report = achievable(network, axioms)
    if args.goal:
        goals = [af_key(goal) for goal in args.goal]
        unknown = [k for k in goals if k not in report.achievable | report.unachievable]
        if unknown:
            print(f"UNACHIEVABLE: unknown goal {unknown[0][2]!r}", file=sys.stderr)
            return 3
    else:
        goals = sorted(report.achievable | report.unachievable)
    lines = []
    failed = False
    for key in goals:
        status = "achievable" if key in report.achievable else "unachievable"
        failed = failed or status == "unachievable"
        lines.append(f"{status} {key[2]}")
    _write("".join(line + "\n" for line in lines), args.output)
    return 3 if failed else 0


def _cmd_schedule(args) -> int:
    network = _network_for_exec(args.inputs)
    axioms = [af_key(a) for a in args.axiom] if args.axiom else None
    plan = schedule(network, af_key(args.goal), axioms, Chooser(args.chooser))
    _write("".join(key[2] + "\n" for key in plan.firings), args.output)
    return 0


def _cmd_lint(args) -> int:
    if args.vocab:
        vocabulary = VerbVocabulary.from_file(args.vocab)
    elif os.environ.get(VOCAB_ENV):
        vocabulary = VerbVocabulary.from_file(os.environ[VOCAB_ENV])
    else:
        vocabulary = VerbVocabulary.default()
    rules = [NamingRule.parse(text) for text in args.naming_rule]

    any_error = False
    lines = []
    for path in args.inputs:
        p = Path(path)
        name = p.name.lower()
        if name.endswith(".fdn.txt") or p.suffix.lower() == ".txt":
            g = parse_native(p.read_bytes())
        elif p.suffix.lower() in (".cx", ".json"):
            g = parse_cx(p.read_bytes())
        else:
            raise FdnkitError(f"cannot determine format of {path}")
        reports = [check_uniqueness(g)]
        report = validate(g)
        hard = [v for v in report.violations if v.code != DUP_LABEL]
        if hard:
            raise InvalidWorkflow(report, path)
        if report.ok:
            network = convert(g)
            reports.append(check_verbs(network, vocabulary))
            if rules:
                reports.append(check_naming_scheme(network, rules))
        combined = LintReport.combine(reports)
        any_error = any_error or combined.has_errors()
        for f in combined.findings:
            lines.append(f"{path}: {f.severity.value} {f.rule}: {f.message}")
    _write("".join(line + "\n" for line in lines), args.output)
    return 4 if any_error else 0


def _cmd_diff(args) -> int:
    left = convert(_load_workflow(args.inputs[0]))
    right = convert(_load_workflow(args.inputs[1]))
    report = diff(left, right)
    merged = merge([left, right])
    _write(emit_dot_diff(report, merged), args.output)
    return 0 if report.identical else 5


def _cmd_whitebox(args) -> int:
    g = _load_workflow(args.inputs[0])
    sub = _load_workflow(args.sub)

    device = next(
        (n for n in g.nodes if n.kind is NodeKind.DEVICE and n.label == args.device), None
    )
    bindings = {}
    if device is not None:
        node_map = g.node_map()
        boundary = {
            node_map[e.src if e.dst == device.id else e.dst].label
            for e in g.flow_edges()
            if device.id in (e.src, e.dst)
        }
        sub_attrs = {n.label for n in sub.nodes if n.kind is NodeKind.ATTRIBUTE}
        bindings = {label: label for label in boundary if label in sub_attrs}
    for pair in args.bind:
        left, sep, right = pair.partition("=")
        if not sep:
            raise FdnkitError(f"--bind must look like LABEL=SUBLABEL, got {pair!r}")
        bindings[left] = right

    result = substitute_device(g, args.device, sub, bindings)
    if args.format == "native":
        _write(emit_native(result), args.output)
    else:
        _write(_emit_fdn(merge([convert(result)]), args.format), args.output)
    return 0


_COMMANDS = {
    "convert": _cmd_convert,
    "merge": _cmd_convert,
    "check": _cmd_check,
    "schedule": _cmd_schedule,
    "lint": _cmd_lint,
    "diff": _cmd_diff,
    "whitebox": _cmd_whitebox,
}

_ALIASES = {
    "--graphviz_FDN": ["convert", "--format", "dot"],
    "--cx_FDN": ["convert", "--format", "cx"],
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] in _ALIASES:
        argv = _ALIASES[argv[0]] + argv[1:]

    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CyclicNetwork, Unachievable, AmbiguousChoice) as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 3
    except FdnkitError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"IO: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
