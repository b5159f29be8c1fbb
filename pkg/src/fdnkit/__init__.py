"""fdnkit: turn sequential workflows into function decomposition networks.

The pipeline: author an object-attribute flowchart (Cytoscape CX or the
native text format), convert it into a causality-first function
decomposition network, merge networks that share goals, then execute,
lint, diff or render the result.
"""

__version__ = "0.1.0"

from . import errors
from .cx import (
    CxDocument,
    emit_cx,
    emit_workflow_cx,
    parse_cx,
    parse_cx_document,
    parse_fdn_cx,
    workflow_from_document,
)
from .dot import DotStyleOptions, RankDir, emit_dot, emit_dot_diff, emit_dot_workflow
from .execution import (
    AchievementReport,
    Chooser,
    CycleWitness,
    Mismatch,
    Schedule,
    achievable,
    check_acyclic,
    default_axioms,
    roundtrip_check,
    schedule,
)
from .fdn import (
    DiffReport,
    FdnEdge,
    FdnEdgeKind,
    FdnGraph,
    FdnKind,
    FdnNode,
    WayKind,
    af_key,
    application_key,
    canonicalize,
    convert,
    diff,
    edge_keys,
    fdn_violations,
    key_equal,
    merge,
    node_key,
    node_keys,
    way_key,
)
from .lint import (
    DEFAULT_VERBS,
    LintFinding,
    LintReport,
    NamingRule,
    Severity,
    VerbVocabulary,
    check_naming_scheme,
    check_uniqueness,
    check_verbs,
)
from .native import emit_native, parse_native
from .workflow import (
    EdgeKind,
    NodeKind,
    ValidationReport,
    Violation,
    WorkflowEdge,
    WorkflowGraph,
    WorkflowNode,
    infer_kinds,
    make_workflow,
    normalize_label,
    replace_styles,
    substitute_device,
    validate,
)

__all__ = [
    "__version__",
    "errors",
    # workflow model
    "NodeKind",
    "EdgeKind",
    "WorkflowNode",
    "WorkflowEdge",
    "WorkflowGraph",
    "Violation",
    "ValidationReport",
    "normalize_label",
    "make_workflow",
    "validate",
    "infer_kinds",
    "replace_styles",
    "substitute_device",
    # networks
    "FdnKind",
    "WayKind",
    "FdnEdgeKind",
    "FdnNode",
    "FdnEdge",
    "FdnGraph",
    "DiffReport",
    "node_key",
    "af_key",
    "way_key",
    "application_key",
    "node_keys",
    "edge_keys",
    "key_equal",
    "fdn_violations",
    "convert",
    "merge",
    "canonicalize",
    "diff",
    # execution
    "CycleWitness",
    "AchievementReport",
    "Chooser",
    "Schedule",
    "Mismatch",
    "check_acyclic",
    "default_axioms",
    "achievable",
    "schedule",
    "roundtrip_check",
    # codecs
    "CxDocument",
    "parse_cx_document",
    "workflow_from_document",
    "parse_cx",
    "emit_workflow_cx",
    "emit_cx",
    "parse_fdn_cx",
    "parse_native",
    "emit_native",
    # rendering
    "RankDir",
    "DotStyleOptions",
    "emit_dot",
    "emit_dot_workflow",
    "emit_dot_diff",
    # lint
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
