"""Programs with generalized atoms: FLP/SFLP semantics, completion,
convexity analysis, and compilation to aggregate-free programs."""

__version__ = "0.1.0"

from .core import (
    Atom,
    Body,
    Conjunct,
    CountAggregate,
    DEFAULT_ATOM_LIMIT,
    Dnf,
    GaspError,
    Interpretation,
    LiteralConjunction,
    Program,
    ReservedAtomError,
    Rule,
    TOP,
    TooManyAtoms,
    TruthTable,
    UnsatisfiableBody,
    format_interpretation,
    is_convex,
    is_convex_program,
    to_dnf,
)
from .parser import ParseError, ReservedAtom, SourceProgram, parse_program, render
from .semantics import (
    CompletionAtom,
    SemanticsKind,
    UnknownAtom,
    completion,
    completion_atom,
    enumerate_interpretations,
    flp_reduct,
    is_flp_answer_set,
    is_model,
    is_sflp_answer_set,
    is_supported_model,
    satisfies_rule,
    sflp_via_completion,
)
from .compile import (
    AuxNames,
    CompilationMap,
    DisjunctiveHead,
    IndexOutOfRange,
    contraction,
    expansion,
    rew_flp,
    rew_sflp,
    supp_rule,
    verify_compilation,
)
from .harness import GenConfig, TheoremReport, check_theorems, generate

__all__ = [name for name in dir() if not name.startswith("_")]
