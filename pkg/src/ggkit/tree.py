"""Derivation trees with materialized ε-leaves and context-dependency links.

A derivation tree is built whole from a replayed derivation.  Context-free
steps replace the i-th non-ε leaf with the rule tree of the applied rule;
an AB->CD step gives each of the two rewritten leaves exactly one child and
records the two rewritten nodes as a context-dependent pair.  ε-leaves are
kept as real nodes (label None) so that non-ε leaf indexing stays auditable.

Trees remember the terminal alphabet they were built against, which lets the
analysis functions label-classify nodes without dragging the grammar along;
hand-encoded trees just pass the terminal set explicitly.
"""

from dataclasses import dataclass, field

from .errors import NotContextFreeRule, NotLinearCore, ReplayMismatch
from .grammar import Grammar, Rule


@dataclass(frozen=True)
class TreeNode:
    """One node; label None marks an ε-leaf."""

    id: int
    label: str | None
    children: tuple[int, ...]
    parent: int | None


@dataclass(frozen=True)
class DerivationTree:
    nodes: dict[int, TreeNode] = field(compare=False)
    root: int = 0
    dependencies: tuple[tuple[int, int], ...] = ()
    rule_of: dict[int, int] = field(default_factory=dict, compare=False)
    terminals: frozenset[str] = frozenset()

    def label(self, nid: int) -> str | None:
        return self.nodes[nid].label

    def is_terminal_node(self, nid: int) -> bool:
        label = self.nodes[nid].label
        return label is not None and label in self.terminals

    def is_nonterminal_node(self, nid: int) -> bool:
        label = self.nodes[nid].label
        return label is not None and label not in self.terminals

    def is_eps_node(self, nid: int) -> bool:
        return self.nodes[nid].label is None


def frontier(tree: DerivationTree) -> tuple[str, ...]:
    """Left-to-right leaf labels; ε-leaves contribute nothing."""
    out: list[str] = []
    stack = [tree.root]
    while stack:
        node = tree.nodes[stack.pop()]
        if node.children:
            stack.extend(reversed(node.children))
        elif node.label is not None:
            out.append(node.label)
    return tuple(out)


def rule_tree(rule: Rule, terminals=frozenset()) -> DerivationTree:
    """The one-level tree of a context-free rule; ε gives a single ε-leaf."""
    if len(rule.lhs) != 1:
        raise NotContextFreeRule(f"rule {rule.id} has a multi-symbol left-hand side")
    nodes = {0: TreeNode(0, rule.lhs[0], tuple(range(1, max(len(rule.rhs), 1) + 1)), None)}
    if rule.rhs:
        for i, s in enumerate(rule.rhs, 1):
            nodes[i] = TreeNode(i, s, (), 0)
    else:
        nodes[1] = TreeNode(1, None, (), 0)
    return DerivationTree(
        nodes=nodes,
        root=0,
        dependencies=(),
        rule_of={0: rule.id},
        terminals=frozenset(terminals),
    )


class _Builder:
    """Mutable scratch state; frozen into a DerivationTree at the end."""

    def __init__(self, start_label: str):
        self.labels: list[str | None] = [start_label]
        self.children: list[list[int]] = [[]]
        self.parents: list[int | None] = [None]
        self.leaves: list[int] = [0]  # non-ε leaves, left to right
        self.deps: list[tuple[int, int]] = []
        self.rule_of: dict[int, int] = {}

    def new_node(self, label: str | None, parent: int) -> int:
        nid = len(self.labels)
        self.labels.append(label)
        self.children.append([])
        self.parents.append(parent)
        self.children[parent].append(nid)
        return nid

    def expand(self, index: int, rule: Rule) -> None:
        node = self.leaves[index]
        self.rule_of[node] = rule.id
        if rule.rhs:
            fresh = [self.new_node(s, node) for s in rule.rhs]
        else:
            self.new_node(None, node)
            fresh = []
        self.leaves[index : index + 1] = fresh


def build_tree(derivation) -> DerivationTree:
    """Construct the derivation tree of a replayable derivation.

    The derivation's grammar must be linear core apart from arbitrary
    context-free rules: the only multi-symbol left-hand sides this
    construction can represent are AB->CD.
    """
    g: Grammar = derivation.grammar
    b = _Builder(derivation.start)
    for step_no, (rule_id, pos) in enumerate(derivation.steps):
        rule = g.rule(rule_id)
        form = [b.labels[n] for n in b.leaves]
        if pos < 0 or pos + len(rule.lhs) > len(form) or tuple(
            form[pos : pos + len(rule.lhs)]
        ) != rule.lhs:
            raise ReplayMismatch(
                f"step {step_no + 1}: rule {rule_id} does not match at position {pos}"
            )
        if len(rule.lhs) == 1:
            b.expand(pos, rule)
        elif (
            len(rule.lhs) == 2
            and len(rule.rhs) == 2
            and all(s in g.nonterminals for s in rule.lhs + rule.rhs)
        ):
            left, right = b.leaves[pos], b.leaves[pos + 1]
            b.rule_of[left] = rule.id
            b.rule_of[right] = rule.id
            b.leaves[pos] = b.new_node(rule.rhs[0], left)
            b.leaves[pos + 1] = b.new_node(rule.rhs[1], right)
            b.deps.append((min(left, right), max(left, right)))
        else:
            raise NotLinearCore(f"rule {rule_id} fits no derivation-tree case")
    nodes = {
        i: TreeNode(i, b.labels[i], tuple(b.children[i]), b.parents[i])
        for i in range(len(b.labels))
    }
    return DerivationTree(
        nodes=nodes,
        root=0,
        dependencies=tuple(b.deps),
        rule_of=b.rule_of,
        terminals=g.terminals,
    )
