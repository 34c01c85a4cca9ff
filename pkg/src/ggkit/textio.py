"""Plain-text grammar files, DOT export of derivation trees, and the
projection-table format.

Grammar file layout::

    # comment lines start with #
    start: S
    terminals: a b c
    nonterminals: S X        # optional; must cover every inferred nonterminal
    rules:
    S -> A1 X
    D1 -> eps

Symbols are whitespace-separated.  `eps` is reserved for the empty string
and may only appear as an entire right-hand side.  Rule ids are assigned
top to bottom starting at 1.  Any symbol not declared terminal is a
nonterminal; an explicit `nonterminals:` line may add names that happen not
to occur in any rule (constructions produce such grammars), but it must not
omit an occurring one.
"""

from .errors import (
    EpsMisuse,
    GrammarSyntaxError,
    InconsistentNonterminalDecl,
    UnknownSymbol,
)
from .grammar import Grammar, grammar, validate
from .tree import DerivationTree

EPS = "eps"


def parse_grammar(text: str) -> Grammar:
    """Parse grammar file content; the result has passed validate()."""
    start = None
    terminals = None
    declared_nts = None
    rules: list[tuple[tuple[str, ...], tuple[str, ...]]] = []
    in_rules = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not in_rules:
            key, sep, value = line.partition(":")
            if not sep:
                raise GrammarSyntaxError(f"expected `key: value`, got {line!r}", lineno)
            key = key.strip()
            if key == "start":
                start = value.strip()
                if not start or len(start.split()) != 1:
                    raise GrammarSyntaxError("start wants exactly one symbol", lineno)
            elif key == "terminals":
                terminals = value.split()
            elif key == "nonterminals":
                declared_nts = value.split()
            elif key == "rules":
                if value.strip():
                    raise GrammarSyntaxError("rules: takes no value on its line", lineno)
                in_rules = True
            else:
                raise GrammarSyntaxError(f"unknown header {key!r}", lineno)
            continue
        if "->" not in line:
            raise GrammarSyntaxError("rule line needs `->`", lineno, raw.find(line) + 1)
        lhs_text, _, rhs_text = line.partition("->")
        lhs = tuple(lhs_text.split())
        rhs = tuple(rhs_text.split())
        if EPS in lhs:
            raise EpsMisuse("eps cannot appear on a left-hand side", lineno)
        if EPS in rhs:
            if rhs != (EPS,):
                raise EpsMisuse("eps must be the entire right-hand side", lineno)
            rhs = ()
        if not lhs:
            raise GrammarSyntaxError("empty left-hand side", lineno)
        rules.append((lhs, rhs))
    if start is None:
        raise GrammarSyntaxError("missing `start:` header", 1)
    if terminals is None:
        raise GrammarSyntaxError("missing `terminals:` header", 1)
    if EPS in terminals or (declared_nts and EPS in declared_nts):
        raise EpsMisuse("eps is reserved and cannot be declared", 1)
    term_set = frozenset(terminals)
    inferred = {s for lhs, rhs in rules for s in lhs + rhs if s not in term_set}
    inferred.add(start)
    if declared_nts is None:
        nts = inferred
    else:
        nts = set(declared_nts)
        missing = inferred - nts
        if missing:
            raise InconsistentNonterminalDecl(
                f"nonterminals: omits inferred {sorted(missing)}", 1
            )
        if nts & term_set:
            raise InconsistentNonterminalDecl(
                f"nonterminals: overlaps terminals {sorted(nts & term_set)}", 1
            )
    return grammar(term_set, nts, rules, start)


def serialize_grammar(g: Grammar) -> str:
    """Inverse of parse_grammar up to whitespace normalization.

    parse_grammar(serialize_grammar(g)) is structurally identical to g,
    including rule order and nonterminals that occur in no rule.
    """
    validate(g)
    lines = [
        f"start: {g.start}",
        "terminals: " + " ".join(sorted(g.terminals)),
        "nonterminals: " + " ".join(sorted(g.nonterminals)),
        "rules:",
    ]
    for r in g.rules:
        rhs = " ".join(r.rhs) if r.rhs else EPS
        lines.append(f"{' '.join(r.lhs)} -> {rhs}")
    return "\n".join(lines) + "\n"


def _dot_escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(tree: DerivationTree) -> str:
    """Byte-deterministic DOT text for a derivation tree.

    Terminal leaves are boxes, ε-leaves small diamonds, nonterminals plain
    ellipses.  Child edges are solid and emitted in child order; every
    context-dependency pair becomes one dashed non-constraining edge labeled
    with the rule id that created it.
    """
    lines = ["digraph derivation {"]
    for nid in sorted(tree.nodes):
        node = tree.nodes[nid]
        if node.label is None:
            attrs = '[label="ε", shape=diamond, width=0.2, height=0.2]'
        elif node.label in tree.terminals:
            attrs = f'[label="{_dot_escape(node.label)}", shape=box]'
        else:
            attrs = f'[label="{_dot_escape(node.label)}"]'
        lines.append(f"  n{nid} {attrs};")
    for nid in sorted(tree.nodes):
        for child in tree.nodes[nid].children:
            lines.append(f"  n{nid} -> n{child};")
    for a, b in sorted(tree.dependencies):
        rule_id = tree.rule_of[a]
        lines.append(
            f'  n{a} -> n{b} [style=dashed, constraint=false, dir=none, label="{rule_id}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_projection(gamma: dict[str, str]) -> str:
    """One `annotated<TAB>base` pair per line, sorted by annotated name."""
    return "".join(f"{a}\t{b}\n" for a, b in sorted(gamma.items()))


def parse_projection(text: str) -> dict[str, str]:
    table = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        parts = raw.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise GrammarSyntaxError("projection line wants `annotated<TAB>base`", lineno)
        table[parts[0].strip()] = parts[1].strip()
    return table


def project_word(word: tuple[str, ...], table: dict[str, str]) -> tuple[str, ...]:
    """Rename symbols through the table, identity where unmapped."""
    return tuple(table.get(s, s) for s in word)


def require_known(word, g: Grammar) -> tuple[str, ...]:
    """Check a word is over the grammar's terminal alphabet."""
    word = tuple(word)
    for s in word:
        if s not in g.terminals:
            raise UnknownSymbol(f"{s!r} is not a terminal of this grammar")
    return word
