"""Exception hierarchy for the toolkit.

Every error raised on purpose by this package derives from ToolkitError, so
callers (and the CLI) can distinguish domain failures from genuine bugs.
GrammarError covers structural problems with a grammar itself; the remaining
classes belong to specific operations and carry whatever diagnostic payload
that operation promises.
"""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class GrammarError(ToolkitError, ValueError):
    """A grammar violates a structural invariant."""


class DuplicateRuleId(GrammarError):
    pass


class InvalidRuleId(GrammarError):
    """Rule ids must be exactly 1..card(P) in declaration order."""


class EmptyLhs(GrammarError):
    pass


class LhsAllTerminal(GrammarError):
    """Every left-hand side needs at least one nonterminal."""


class UnknownSymbol(GrammarError):
    pass


class StartNotNonterminal(GrammarError):
    pass


class AlphabetOverlap(GrammarError):
    """A name was declared both terminal and nonterminal."""


class NotLinearCore(GrammarError):
    pass


class NotLeftLinearCore(GrammarError):
    pass


class NotContextFree(GrammarError):
    pass


class NotContextFreeRule(ToolkitError):
    pass


class NoMatchAtPosition(ToolkitError):
    pass


class ReplayMismatch(ToolkitError):
    """A derivation step does not apply at its recorded position."""


class NotFoundWithinLimits(ToolkitError):
    """Exhaustive search ended without a witness; not a proof of
    non-membership beyond the stated bounds."""


class ForeignPathPair(ToolkitError):
    pass


class NodeNotOnPath(ToolkitError):
    pass


class TreeGrammarMismatch(ToolkitError):
    pass


class UOverflow(ToolkitError):
    """The projected size of a constructed grammar exceeds the safety cap."""


class NotSlowBranchingShape(ToolkitError):
    """The grammar cannot be collapsed to start rules over linear components.

    Carries `chain`, the offending rule trail, as a diagnostic.
    """

    def __init__(self, message, chain=()):
        super().__init__(message)
        self.chain = tuple(chain)


class SelfEmbedding(ToolkitError):
    """A nonterminal derives itself with terminal material on both sides.

    `witness` names the nonterminal, `context` shows a sentential form
    exhibiting the embedding.
    """

    def __init__(self, witness, context):
        super().__init__(f"self-embedding nonterminal {witness}: {context}")
        self.witness = witness
        self.context = context


class GrammarSyntaxError(ToolkitError):
    """Grammar file syntax error with 1-based line and column."""

    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EpsMisuse(GrammarSyntaxError):
    """`eps` may only stand alone as an entire right-hand side."""


class InconsistentNonterminalDecl(GrammarSyntaxError):
    pass
