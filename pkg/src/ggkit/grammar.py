"""Grammar representation, validation, rule-form classification and the
classic normal-form rewrites (binary splitting, unit-rule elimination,
useless-symbol pruning).

Symbols are plain strings; whether a name is terminal is decided solely by
membership in the owning grammar's terminal alphabet.  A rule is a pair of
symbol sequences with a positive id; ids run 1..card(P) in declaration order
so that files transcribing a numbered rule list keep their numbering.

Rule forms are tagged with the most specific member of

    AB->CD, A->BC, A->eps, A->a, A->B, A->xE, A->xEy, other

where x, y range over terminal strings and E over nonterminals.  A grammar
is linear core when no rule is tagged `other`, left linear core when
additionally no rule needs a terminal suffix (`A->xEy`), and in binary
normal form when every rule is one of AB->CD, A->BC, A->B, A->a, A->eps.
"""

import logging
from dataclasses import dataclass, field

from .errors import (
    AlphabetOverlap,
    DuplicateRuleId,
    EmptyLhs,
    InvalidRuleId,
    LhsAllTerminal,
    NotContextFree,
    NotLinearCore,
    StartNotNonterminal,
    UnknownSymbol,
)

log = logging.getLogger(__name__)

TAG_AB_CD = "AB->CD"
TAG_A_BC = "A->BC"
TAG_A_EPS = "A->eps"
TAG_A_A = "A->a"
TAG_A_B = "A->B"
TAG_A_XE = "A->xE"
TAG_A_XEY = "A->xEy"
TAG_OTHER = "other"

LINEAR_CORE_TAGS = frozenset(
    {TAG_AB_CD, TAG_A_BC, TAG_A_EPS, TAG_A_A, TAG_A_B, TAG_A_XE, TAG_A_XEY}
)
LEFT_LINEAR_CORE_TAGS = frozenset(
    {TAG_AB_CD, TAG_A_BC, TAG_A_EPS, TAG_A_A, TAG_A_B, TAG_A_XE}
)
KNF_TAGS = frozenset({TAG_AB_CD, TAG_A_BC, TAG_A_B, TAG_A_A, TAG_A_EPS})
LINEAR_TAGS = frozenset({TAG_A_EPS, TAG_A_A, TAG_A_B, TAG_A_XE, TAG_A_XEY})


@dataclass(frozen=True)
class Rule:
    """A rewriting rule lhs -> rhs over plain symbol names."""

    id: int
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]

    def __str__(self):
        rhs = " ".join(self.rhs) if self.rhs else "eps"
        return f"({self.id}) {' '.join(self.lhs)} -> {rhs}"


@dataclass(frozen=True)
class Grammar:
    """An alphabet-partitioned rule system with a start symbol.

    Immutable after construction; every operation in this package is a pure
    function of its inputs.  Construction does not validate; call
    :func:`validate` (parsers do so on your behalf).
    """

    terminals: frozenset[str]
    nonterminals: frozenset[str]
    rules: tuple[Rule, ...]
    start: str

    def rule(self, rule_id: int) -> Rule:
        r = self.rules[rule_id - 1]
        if r.id != rule_id:
            raise InvalidRuleId(f"rule ids not contiguous near {rule_id}")
        return r

    def is_terminal(self, name: str) -> bool:
        return name in self.terminals

    def alphabet(self) -> frozenset[str]:
        return self.terminals | self.nonterminals


def grammar(terminals, nonterminals, rules, start) -> Grammar:
    """Build and validate a Grammar from loose inputs.

    `rules` is a sequence of (lhs, rhs) sequences; ids are assigned in order.
    """
    rs = tuple(
        Rule(i, tuple(lhs), tuple(rhs)) for i, (lhs, rhs) in enumerate(rules, 1)
    )
    g = Grammar(frozenset(terminals), frozenset(nonterminals), rs, start)
    validate(g)
    return g


def validate(g: Grammar) -> None:
    """Check every structural invariant; raise a GrammarError otherwise."""
    overlap = g.terminals & g.nonterminals
    if overlap:
        raise AlphabetOverlap(f"declared both terminal and nonterminal: {sorted(overlap)}")
    if g.start not in g.nonterminals:
        raise StartNotNonterminal(f"start symbol {g.start!r} is not a nonterminal")
    alphabet = g.terminals | g.nonterminals
    seen_ids = set()
    for pos, r in enumerate(g.rules, 1):
        if r.id in seen_ids:
            raise DuplicateRuleId(f"rule id {r.id} appears twice")
        seen_ids.add(r.id)
        if r.id != pos:
            raise InvalidRuleId(f"rule at position {pos} carries id {r.id}")
        if not r.lhs:
            raise EmptyLhs(f"rule {r.id} has an empty left-hand side")
        for s in r.lhs + r.rhs:
            if s not in alphabet:
                raise UnknownSymbol(f"rule {r.id} uses undeclared symbol {s!r}")
        if not any(s in g.nonterminals for s in r.lhs):
            raise LhsAllTerminal(f"rule {r.id} has no nonterminal on the left")


def rule_tag(g: Grammar, r: Rule) -> str:
    """Most specific form tag for one rule."""
    nt = g.nonterminals
    t = g.terminals
    if len(r.lhs) == 1:
        rhs = r.rhs
        if not rhs:
            return TAG_A_EPS
        if len(rhs) == 1:
            return TAG_A_A if rhs[0] in t else TAG_A_B
        if len(rhs) == 2 and rhs[0] in nt and rhs[1] in nt:
            return TAG_A_BC
        nts = [i for i, s in enumerate(rhs) if s in nt]
        if not nts:
            return TAG_A_XE
        if len(nts) == 1:
            i = nts[0]
            if i == len(rhs) - 1:
                return TAG_A_XE
            return TAG_A_XEY
        return TAG_OTHER
    if (
        len(r.lhs) == 2
        and len(r.rhs) == 2
        and all(s in nt for s in r.lhs + r.rhs)
    ):
        return TAG_AB_CD
    return TAG_OTHER


@dataclass(frozen=True)
class FormReport:
    """Per-rule form tags plus the grammar-level shape flags."""

    general: bool
    linear_core: bool
    left_linear_core: bool
    knf: bool
    propagating: bool
    context_free: bool
    linear: bool
    k_linear: int | None
    tags: dict[int, str] = field(compare=False)


def classify(g: Grammar) -> FormReport:
    """Tag every rule and derive the grammar-level flags.

    The flags are independent conjunctions over the tags; in particular
    left_linear_core is not required to imply linear_core by construction,
    the two are computed from their own tag sets.
    """
    tags = {r.id: rule_tag(g, r) for r in g.rules}
    values = list(tags.values())
    context_free = all(len(r.lhs) == 1 for r in g.rules)
    linear = context_free and all(v in LINEAR_TAGS for v in values)
    return FormReport(
        general=True,
        linear_core=all(v in LINEAR_CORE_TAGS for v in values),
        left_linear_core=all(v in LEFT_LINEAR_CORE_TAGS for v in values),
        knf=all(v in KNF_TAGS for v in values),
        propagating=all(r.rhs for r in g.rules),
        context_free=context_free,
        linear=linear,
        k_linear=_k_linear(g, context_free, linear),
        tags=tags,
    )


def _k_linear(g: Grammar, context_free: bool, linear: bool) -> int | None:
    """Purely syntactic k-linear detection.

    Rules must be A->x, A->xBy (at most one nonterminal on the right) or
    S->W with W a fixed-length string of nonterminals other than S.
    """
    if not context_free:
        return None
    w_lengths = set()
    for r in g.rules:
        nts = [s for s in r.rhs if s in g.nonterminals]
        if len(nts) <= 1:
            continue
        if r.lhs[0] != g.start:
            return None
        if len(nts) != len(r.rhs) or g.start in r.rhs:
            return None
        w_lengths.add(len(r.rhs))
    if len(w_lengths) == 1:
        return w_lengths.pop()
    if w_lengths:
        return None
    return 1 if linear else None


def non_context_free_rules(g: Grammar) -> tuple[int, ...]:
    """Ids of the rules whose left-hand side is longer than one symbol."""
    return tuple(r.id for r in g.rules if len(r.lhs) > 1)


def fresh_name(base: str, taken) -> str:
    """base, with `'` suffixes appended until it avoids every taken name."""
    name = base
    while name in taken:
        name += "'"
    return name


def knf_split(g: Grammar) -> Grammar:
    """Split terminal strings out of A->xEy rules into fresh chains.

    The output uses only the forms AB->CD, A->BC, A->B, A->a, A->eps.
    Terminals get proxy nonterminals (named after them) shared across rules;
    longer right-hand sides are folded into binary chains named after their
    left-hand side.  Language equality is checked by the bounded oracle in
    the test suite, not proved here.
    """
    report = classify(g)
    if not report.linear_core:
        raise NotLinearCore("binary splitting is defined for linear core grammars only")
    taken = set(g.terminals | g.nonterminals)
    proxies: dict[str, str] = {}
    proxy_order: list[str] = []
    new_rules: list[tuple[tuple[str, ...], tuple[str, ...]]] = []

    def proxy(term: str) -> str:
        if term not in proxies:
            name = fresh_name(term, taken)
            taken.add(name)
            proxies[term] = name
            proxy_order.append(term)
        return proxies[term]

    for r in g.rules:
        tag = rule_tag(g, r)
        if tag in KNF_TAGS:
            new_rules.append((r.lhs, r.rhs))
            continue
        # tag is A->xE or A->xEy with at least two symbols on the right
        symbols = tuple(s if s in g.nonterminals else proxy(s) for s in r.rhs)
        head = r.lhs[0]
        while len(symbols) > 2:
            link = fresh_name(head, taken)
            taken.add(link)
            new_rules.append(((head,), (symbols[0], link)))
            head = link
            symbols = symbols[1:]
        new_rules.append(((head,), symbols))
    for term in proxy_order:
        new_rules.append(((proxies[term],), (term,)))
    return grammar(g.terminals, taken - g.terminals, new_rules, g.start)


def eliminate_unit_rules(g: Grammar) -> Grammar:
    """Remove rules A->B with B a single nonterminal, composing through the
    unit closure.  Idempotent; may leave unreachable nonterminals behind,
    prune_useless cleans those up separately."""
    if any(len(r.lhs) > 1 for r in g.rules):
        raise NotContextFree("unit elimination is defined for context-free grammars only")
    unit_of: dict[str, set[str]] = {a: {a} for a in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            if len(r.rhs) == 1 and r.rhs[0] in g.nonterminals:
                for members in unit_of.values():
                    if r.lhs[0] in members and r.rhs[0] not in members:
                        members.add(r.rhs[0])
                        changed = True
    kept: list[tuple[tuple[str, ...], tuple[str, ...]]] = []
    seen: set[tuple[tuple[str, ...], tuple[str, ...]]] = set()
    for r in g.rules:
        if len(r.rhs) == 1 and r.rhs[0] in g.nonterminals:
            continue
        if (r.lhs, r.rhs) not in seen:
            seen.add((r.lhs, r.rhs))
            kept.append((r.lhs, r.rhs))
    for a in sorted(g.nonterminals):
        for b in sorted(unit_of[a] - {a}):
            for r in g.rules:
                if r.lhs[0] != b or (len(r.rhs) == 1 and r.rhs[0] in g.nonterminals):
                    continue
                if ((a,), r.rhs) not in seen:
                    seen.add(((a,), r.rhs))
                    kept.append(((a,), r.rhs))
    return grammar(g.terminals, g.nonterminals, kept, g.start)


def prune_useless(g: Grammar) -> Grammar:
    """Keep only nonterminals that are productive and reachable from start.

    A grammar whose start symbol is itself non-productive denotes the empty
    language; that is reported with a warning and a start-only grammar, not
    an exception, because constructions legitimately produce it."""
    if any(len(r.lhs) > 1 for r in g.rules):
        raise NotContextFree("pruning is defined for context-free grammars only")
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            if r.lhs[0] in productive:
                continue
            if all(s in g.terminals or s in productive for s in r.rhs):
                productive.add(r.lhs[0])
                changed = True
    if g.start not in productive:
        log.warning("start symbol %s derives no terminal string; language is empty", g.start)
        return grammar(g.terminals, {g.start}, [], g.start)
    reachable = {g.start}
    frontier = [g.start]
    by_lhs: dict[str, list[Rule]] = {}
    for r in g.rules:
        by_lhs.setdefault(r.lhs[0], []).append(r)
    while frontier:
        a = frontier.pop()
        for r in by_lhs.get(a, ()):
            if not all(s in g.terminals or s in productive for s in r.rhs):
                continue
            for s in r.rhs:
                if s in g.nonterminals and s not in reachable:
                    reachable.add(s)
                    frontier.append(s)
    useful = reachable & productive
    kept = [
        (r.lhs, r.rhs)
        for r in g.rules
        if r.lhs[0] in useful
        and all(s in g.terminals or s in useful for s in r.rhs)
    ]
    return grammar(g.terminals, useful | {g.start}, kept, g.start)
