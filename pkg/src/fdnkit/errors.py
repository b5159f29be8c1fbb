"""Exception hierarchy shared by all fdnkit modules.

Every error carries a stable ``code`` string; the CLI prints errors as
``CODE: detail`` on stderr.
"""

from __future__ import annotations

from enum import Enum


class FdnkitError(Exception):
    """Base class for all fdnkit errors."""

    code = "ERROR"


class InvalidWorkflow(FdnkitError):
    """A workflow graph failed validation where a valid one was required."""

    code = "INVALID_WORKFLOW"

    def __init__(self, report, context: str = ""):
        self.report = report
        self.context = context
        codes = ", ".join(v.code for v in report.violations)
        prefix = f"{context}: " if context else ""
        super().__init__(f"{prefix}workflow invalid ({codes})")


class InferenceFailure(str, Enum):
    ODD_CYCLE = "odd-cycle"
    AMBIGUOUS = "ambiguous"


class InferenceError(FdnkitError):
    """Node kinds could not be inferred from flow edges and seeds."""

    def __init__(self, failure: InferenceFailure, node_ids, message: str):
        self.failure = failure
        self.node_ids = tuple(sorted(node_ids))
        self.code = (
            "INFERENCE_ODD_CYCLE"
            if failure is InferenceFailure.ODD_CYCLE
            else "INFERENCE_AMBIGUOUS"
        )
        super().__init__(message)


class UnknownDevice(FdnkitError):
    code = "UNKNOWN_DEVICE"


class UnboundBoundary(FdnkitError):
    """A device boundary attribute has no usable binding into the sub-workflow."""

    code = "UNBOUND_BOUNDARY"

    def __init__(self, labels, message: str = ""):
        self.labels = tuple(sorted(labels))
        super().__init__(message or f"unbound boundary labels: {', '.join(self.labels)}")


class LabelClash(FdnkitError):
    code = "LABEL_CLASH"

    def __init__(self, labels, message: str = ""):
        self.labels = tuple(sorted(labels))
        super().__init__(message or f"label clash: {', '.join(self.labels)}")


class KindConflict(FdnkitError):
    """The same label is used with incompatible node kinds across merged networks."""

    code = "KIND_CONFLICT"

    def __init__(self, label: str, kinds):
        self.label = label
        self.kinds = tuple(sorted(kinds))
        super().__init__(f"label {label!r} used with conflicting kinds: {self.kinds}")


class CyclicNetwork(FdnkitError):
    code = "CYCLIC_NETWORK"

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"network contains a cycle: {witness}")


class Unachievable(FdnkitError):
    code = "UNACHIEVABLE"

    def __init__(self, goal):
        self.goal = goal
        super().__init__(f"goal not achievable: {goal}")


class AmbiguousChoice(FdnkitError):
    """Two or more achievable ways exist for a needed function."""

    code = "AMBIGUOUS_CHOICE"

    def __init__(self, function_key, way_keys):
        self.function_key = function_key
        self.way_keys = tuple(way_keys)
        ways = ", ".join(repr(k[2]) for k in self.way_keys)
        super().__init__(f"ambiguous ways for {function_key[2]!r}: {ways}")


class NotLinear(FdnkitError):
    code = "NOT_LINEAR"


class InconsistentInput(FdnkitError):
    code = "INCONSISTENT_INPUT"


class CodecError(FdnkitError):
    """Base class for parse/serialize errors."""

    code = "CODEC"


class MalformedJson(CodecError):
    code = "MALFORMED_JSON"


class MissingAspect(CodecError):
    code = "MISSING_ASPECT"

    def __init__(self, aspect: str):
        self.aspect = aspect
        super().__init__(f"required aspect missing: {aspect}")


class DanglingEdge(CodecError):
    code = "DANGLING_EDGE"


class NativeSyntaxError(CodecError):
    """Grammar-level error in the native text format."""

    code = "SYNTAX"

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class UnknownLabel(CodecError):
    code = "UNKNOWN_LABEL"

    def __init__(self, line: int, label: str):
        self.line = line
        self.label = label
        super().__init__(f"line {line}: unknown label {label!r}")
