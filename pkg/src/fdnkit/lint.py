"""Vocabulary and naming checks for networks and workflows.

Functional node labels are expected to open with a verb from a shared
vocabulary; duplicated labels and naming-scheme drift across way names
are the other classic sources of confusion these checks surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fnmatch import fnmatchcase
from pathlib import Path
from typing import Iterable, Sequence

from .fdn import FdnGraph, FdnKind
from .workflow import WorkflowGraph

__all__ = [
    "DEFAULT_VERBS",
    "VerbVocabulary",
    "Severity",
    "LintFinding",
    "LintReport",
    "NamingRule",
    "check_verbs",
    "check_uniqueness",
    "check_naming_scheme",
]

DEFAULT_VERBS = frozenset(
    {
        "obtain",
        "select",
        "construct",
        "generate",
        "apply",
        "make",
        "contact",
        "transfer",
        "separate",
        "expose",
        "radiate",
        "regress",
        "classify",
        "associate",
        "discriminate",
        "predict",
    }
)

VERB_UNKNOWN = "VERB_UNKNOWN"
DUP_LABEL = "DUP_LABEL"
PREFIX_MISMATCH = "PREFIX_MISMATCH"


@dataclass(frozen=True)
class VerbVocabulary:
    verbs: frozenset[str]

    def __post_init__(self):
        if not self.verbs:
            raise ValueError("verb vocabulary must not be empty")
        for verb in self.verbs:
            if verb != verb.lower() or not verb or any(c.isspace() for c in verb):
                raise ValueError(f"verb lemmas must be lowercase single words, got {verb!r}")

    @classmethod
    def default(cls) -> "VerbVocabulary":
        return cls(DEFAULT_VERBS)

    @classmethod
    def from_text(cls, text: str) -> "VerbVocabulary":
        """One lemma per line; blank lines and '#' comments ignored."""
        verbs = set()
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                verbs.add(line.lower())
        return cls(frozenset(verbs))

    @classmethod
    def from_file(cls, path: str | Path) -> "VerbVocabulary":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    def __contains__(self, verb: str) -> bool:
        return verb in self.verbs


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class LintFinding:
    rule: str
    severity: Severity
    node_key: tuple
    message: str


@dataclass(frozen=True)
class LintReport:
    findings: tuple[LintFinding, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.findings

    def has_errors(self) -> bool:
        return any(f.severity is Severity.ERROR for f in self.findings)

    @staticmethod
    def combine(reports: Iterable["LintReport"]) -> "LintReport":
        findings: list[LintFinding] = []
        for r in reports:
            findings.extend(r.findings)
        return LintReport(_ordered(findings))


def _ordered(findings: Iterable[LintFinding]) -> tuple[LintFinding, ...]:
    return tuple(sorted(findings, key=lambda f: (f.rule, f.node_key)))


def check_verbs(f: FdnGraph, vocabulary: VerbVocabulary | None = None) -> LintReport:
    """Warn when a functional node label does not open with a known verb.

    Only attribute-functional and way-application nodes are checked; way
    names are free-form.
    """
    vocabulary = vocabulary or VerbVocabulary.default()
    findings = []
    for n in f.nodes:
        if n.kind is FdnKind.WAY:
            continue
        first = n.label.split(" ", 1)[0].lower() if n.label else ""
        if first not in vocabulary:
            findings.append(
                LintFinding(
                    VERB_UNKNOWN,
                    Severity.WARNING,
                    n.key,
                    f"label {n.label!r} does not start with a known verb",
                )
            )
    return LintReport(_ordered(findings))


def check_uniqueness(g: WorkflowGraph) -> LintReport:
    """Report one DUP_LABEL error per duplicated (kind, label) pair."""
    counts: dict[tuple[str, str], int] = {}
    for n in g.nodes:
        if n.kind is not None and n.label:
            key = (n.kind.value, n.label)
            counts[key] = counts.get(key, 0) + 1
    findings = [
        LintFinding(
            DUP_LABEL,
            Severity.ERROR,
            (kind, "", label),
            f"{kind} label {label!r} used {count} times",
        )
        for (kind, label), count in counts.items()
        if count > 1
    ]
    return LintReport(_ordered(findings))


@dataclass(frozen=True)
class NamingRule:
    """Ways whose label matches ``pattern`` (glob) must have a member name
    starting with ``prefix``; the member name is the label segment after
    the last ':' with a trailing ' way' suffix stripped."""

    pattern: str
    prefix: str

    @classmethod
    def parse(cls, text: str) -> "NamingRule":
        pattern, sep, prefix = text.partition("=")
        if not sep or not pattern or not prefix:
            raise ValueError(f"naming rule must look like 'PATTERN=PREFIX', got {text!r}")
        return cls(pattern, prefix)


def _member_name(way_label: str) -> str:
    name = way_label.rsplit(":", 1)[-1].strip()
    if name.endswith(" way"):
        name = name[: -len(" way")]
    return name


def check_naming_scheme(f: FdnGraph, rules: Sequence[NamingRule]) -> LintReport:
    """Warn about way names that fall in a rule's scope but violate its
    required prefix."""
    findings = []
    for n in f.nodes:
        if n.kind is not FdnKind.WAY:
            continue
        for rule in rules:
            if fnmatchcase(n.label, rule.pattern) and not _member_name(n.label).startswith(
                rule.prefix
            ):
                findings.append(
                    LintFinding(
                        PREFIX_MISMATCH,
                        Severity.WARNING,
                        n.key,
                        f"way {n.label!r} should have a member name starting with {rule.prefix!r}",
                    )
                )
    return LintReport(_ordered(findings))
