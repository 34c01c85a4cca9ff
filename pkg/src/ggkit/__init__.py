"""Grammar engineering toolkit for tree-restricted general grammars.

The package covers the whole working loop: describe a general grammar in a
small text format, classify its shape (linear core, left linear core,
Kuroda normal form, k-linear and friends), enumerate and search bounded
derivations, build derivation trees with materialized erased leaves and
context-dependency links, analyze neighboring nonterminal paths and
slow-branching certificates, and run the context-annotation constructions
that turn certified grammars into metalinear or regular form.
"""

from .analysis import (
    CertificateReport,
    PathPair,
    branching_nodes,
    certificate_check,
    descendant_context,
    max_dependency_count,
    neighboring_paths,
    non_neighbor_violations,
    pair_context,
    slow_branching,
)
from .engine import (
    Derivation,
    EnumerationResult,
    EquivalenceVerdict,
    SearchLimits,
    apply_rule,
    bounded_equiv,
    default_slack,
    derive_word,
    enumerate_language,
    replay,
)
from .errors import (
    AlphabetOverlap,
    DuplicateRuleId,
    EmptyLhs,
    EpsMisuse,
    ForeignPathPair,
    GrammarError,
    GrammarSyntaxError,
    InconsistentNonterminalDecl,
    InvalidRuleId,
    LhsAllTerminal,
    NoMatchAtPosition,
    NodeNotOnPath,
    NotContextFree,
    NotContextFreeRule,
    NotFoundWithinLimits,
    NotLeftLinearCore,
    NotLinearCore,
    NotSlowBranchingShape,
    ReplayMismatch,
    SelfEmbedding,
    StartNotNonterminal,
    ToolkitError,
    TreeGrammarMismatch,
    UnknownSymbol,
    UOverflow,
)
from .grammar import (
    FormReport,
    Grammar,
    Rule,
    classify,
    eliminate_unit_rules,
    fresh_name,
    grammar,
    knf_split,
    non_context_free_rules,
    prune_useless,
    rule_tag,
    validate,
)
from .textio import (
    export_dot,
    parse_grammar,
    parse_projection,
    project_word,
    require_known,
    serialize_grammar,
    serialize_projection,
)
from .transform import (
    Context,
    PipelineResult,
    TransformOutput,
    TransformStats,
    build_metalinear,
    build_regular,
    enumerate_contexts,
    gamma_project,
    metalinear_pipeline,
    normalize_metalinear,
    normalize_regular,
    regular_pipeline,
    render_annotated,
)
from .tree import DerivationTree, TreeNode, build_tree, frontier, rule_tree

__all__ = [name for name in dir() if not name.startswith("_")]
