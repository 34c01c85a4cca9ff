"""Structural analysis of derivation trees: nonterminal neighboring paths,
dependency contexts, branching degree, slow-branching checks and the
combined certificate reports.

A neighboring path pair starts at a node with two directly adjacent
nonterminal children.  The left path follows the rightmost-nonterminal
spine (anything to the right of the chosen child must be terminal leaves),
the right path follows the leftmost-nonterminal spine symmetrically.  Both
paths begin at the shared origin and are extended as far as possible; when
a spine runs out of nonterminals it closes with the boundary leaf, which
may be a terminal or an erased-nonterminal marker.
"""

from dataclasses import dataclass, field

from .errors import ForeignPathPair, NodeNotOnPath, TreeGrammarMismatch
from .grammar import Grammar, classify
from .tree import DerivationTree


@dataclass(frozen=True)
class PathPair:
    origin: int
    left_path: tuple[int, ...]
    right_path: tuple[int, ...]


@dataclass(frozen=True)
class CertificateReport:
    theorem: int
    u: int
    k: int | None
    u_observed: int
    degree: int
    slow_branching_strict: bool
    slow_branching_lenient: bool
    non_neighbor_violations: tuple[tuple[int, int], ...]
    verdict: bool
    notes: tuple[str, ...] = field(default=(), compare=False)


def branching_nodes(tree: DerivationTree) -> tuple[int, ...]:
    """Nonterminal nodes with exactly two nonterminal children, by id."""
    out = []
    for nid in sorted(tree.nodes):
        node = tree.nodes[nid]
        if not tree.is_nonterminal_node(nid):
            continue
        nt_kids = [c for c in node.children if tree.is_nonterminal_node(c)]
        if len(nt_kids) == 2:
            out.append(nid)
    return tuple(out)


def _extend_path(tree: DerivationTree, first: int, side: str) -> tuple[int, ...]:
    """Spine from `first` downward; side is "left" or "right".

    The left path keeps to the rightmost nonterminal child and tolerates
    terminal leaves to its right only; the right path mirrors this.  When a
    node has no nonterminal child the path closes with the boundary leaf:
    the rightmost child for the left path, the leftmost for the right path,
    or the single erased-nonterminal leaf.
    """
    path = [first]
    cur = first
    while True:
        kids = tree.nodes[cur].children
        if not kids:
            return tuple(path)
        nt_idx = [i for i, c in enumerate(kids) if tree.is_nonterminal_node(c)]
        if not nt_idx:
            if len(kids) == 1 and tree.is_eps_node(kids[0]):
                path.append(kids[0])
            elif all(tree.is_terminal_node(c) for c in kids):
                path.append(kids[-1] if side == "left" else kids[0])
            return tuple(path)
        if side == "left":
            pick = nt_idx[-1]
            fringe = kids[pick + 1 :]
        else:
            pick = nt_idx[0]
            fringe = kids[:pick]
        if not all(tree.is_terminal_node(c) for c in fringe):
            return tuple(path)
        path.append(kids[pick])
        cur = kids[pick]


def neighboring_paths(tree: DerivationTree) -> tuple[PathPair, ...]:
    """Every PathPair rooted at a node with adjacent nonterminal children,
    in (origin id, child position) order."""
    pairs = []
    for nid in sorted(tree.nodes):
        kids = tree.nodes[nid].children
        for i in range(len(kids) - 1):
            if tree.is_nonterminal_node(kids[i]) and tree.is_nonterminal_node(kids[i + 1]):
                pairs.append(
                    PathPair(
                        origin=nid,
                        left_path=(nid,) + _extend_path(tree, kids[i], "left"),
                        right_path=(nid,) + _extend_path(tree, kids[i + 1], "right"),
                    )
                )
    return tuple(pairs)


def _straddling(tree: DerivationTree, pair: PathPair):
    """Dependencies with one endpoint properly on each path, as tuples
    (left index, right index, rule id, dependency), top-down."""
    left_pos = {n: i for i, n in enumerate(pair.left_path) if i > 0}
    right_pos = {n: i for i, n in enumerate(pair.right_path) if i > 0}
    found = []
    for dep in tree.dependencies:
        a, b = dep
        if a in left_pos and b in right_pos:
            found.append((left_pos[a], right_pos[b], tree.rule_of[a], dep))
        elif b in left_pos and a in right_pos:
            found.append((left_pos[b], right_pos[a], tree.rule_of[a], dep))
    found.sort(key=lambda item: (item[0], item[1]))
    return found


def _check_pair(tree: DerivationTree, pair: PathPair):
    if pair not in neighboring_paths(tree):
        raise ForeignPathPair(f"pair at origin {pair.origin} was not produced from this tree")


def pair_context(tree: DerivationTree, pair: PathPair) -> tuple[int, ...]:
    """Rule ids of the dependencies straddling the pair, top-down."""
    _check_pair(tree, pair)
    return tuple(item[2] for item in _straddling(tree, pair))


def descendant_context(
    tree: DerivationTree, pair: PathPair, node: int, side: str
) -> tuple[int, ...]:
    """The part of the pair's context whose endpoint on `side` lies
    strictly below `node`."""
    _check_pair(tree, pair)
    path = pair.left_path if side == "left" else pair.right_path
    if node not in path:
        raise NodeNotOnPath(f"node {node} is not on the {side} path of this pair")
    at = path.index(node)
    key = 0 if side == "left" else 1
    return tuple(item[2] for item in _straddling(tree, pair) if item[key] > at)


def non_neighbor_violations(tree: DerivationTree) -> tuple[tuple[int, int], ...]:
    """Dependencies not covered by any neighboring path pair.

    A dependency can straddle at most one pair: its endpoints determine the
    origin (their lowest common ancestor) and the two adjacent children, so
    summing context lengths over all pairs counts each covered dependency
    exactly once.
    """
    covered = set()
    for pair in neighboring_paths(tree):
        covered.update(item[3] for item in _straddling(tree, pair))
    return tuple(dep for dep in tree.dependencies if dep not in covered)


def max_dependency_count(tree: DerivationTree) -> tuple[int, PathPair | None]:
    """Largest context length over all pairs, with a maximizing pair."""
    best, witness = 0, None
    for pair in neighboring_paths(tree):
        n = len(_straddling(tree, pair))
        if n > best or witness is None:
            best, witness = n, pair
    return best, witness


def _root_chain_touches_terminal(tree: DerivationTree, node: int) -> bool:
    cur: int | None = node
    while cur is not None:
        if any(tree.is_terminal_node(c) for c in tree.nodes[cur].children):
            return True
        cur = tree.nodes[cur].parent
    return False


def slow_branching(tree: DerivationTree, mode: str = "strict") -> tuple[bool, int]:
    """Whether the tree is slow-branching, plus its branching degree.

    Both modes require every neighboring path pair to carry at most two
    branching nodes.  Strict mode additionally forbids terminal-labeled
    children anywhere on the chain from the root down to a branching node;
    lenient mode drops that clause.  The degree does not depend on the
    verdict.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"mode must be 'strict' or 'lenient', got {mode!r}")
    branching = branching_nodes(tree)
    degree = len(branching)
    bset = set(branching)
    ok = True
    for pair in neighboring_paths(tree):
        on_paths = set(pair.left_path) | set(pair.right_path)
        if len(on_paths & bset) > 2:
            ok = False
            break
    if ok and mode == "strict":
        ok = not any(_root_chain_touches_terminal(tree, b) for b in branching)
    return ok, degree


def certificate_check(
    g: Grammar,
    tree: DerivationTree,
    theorem: int,
    u: int,
    k: int | None = None,
) -> CertificateReport:
    """Check one tree against the structural conditions of theorems 1-4.

    Theorem 1: the grammar is a linear core general grammar, every pair
    carries at most u dependencies, no dependency escapes the neighboring
    pairs, and the tree is strictly slow-branching of degree k.  Theorem 2
    drops the escape condition but requires a propagating grammar.
    Theorem 3 needs a left linear core with the u-bound and no escapes (no
    slow-branching condition); Theorem 4 is its propagating variant without
    the escape condition.  Passing k=None skips the degree comparison.
    """
    if theorem not in (1, 2, 3, 4):
        raise ValueError(f"theorem must be 1, 2, 3 or 4, got {theorem!r}")
    alphabet = g.alphabet()
    for nid, node in tree.nodes.items():
        if node.label is not None and node.label not in alphabet:
            raise TreeGrammarMismatch(f"node {nid} label {node.label!r} is not in the grammar")
    for nid, rid in tree.rule_of.items():
        if not 1 <= rid <= len(g.rules):
            raise TreeGrammarMismatch(f"node {nid} cites unknown rule {rid}")
    if tree.nodes[tree.root].label != g.start:
        raise TreeGrammarMismatch("root is not labeled with the start symbol")

    report = classify(g)
    u_observed, _ = max_dependency_count(tree)
    strict, degree = slow_branching(tree, "strict")
    lenient, _ = slow_branching(tree, "lenient")
    violations = non_neighbor_violations(tree)

    notes = []
    u_ok = u_observed <= u
    degree_ok = k is None or degree == k
    if k is None and theorem in (1, 2):
        notes.append("degree comparison skipped (no k given)")
    if theorem == 1:
        verdict = u_ok and strict and degree_ok and not violations and report.linear_core
    elif theorem == 2:
        verdict = u_ok and strict and degree_ok and report.linear_core and report.propagating
    elif theorem == 3:
        verdict = u_ok and not violations and report.left_linear_core
    else:
        verdict = u_ok and report.left_linear_core and report.propagating

    return CertificateReport(
        theorem=theorem,
        u=u,
        k=k,
        u_observed=u_observed,
        degree=degree,
        slow_branching_strict=strict,
        slow_branching_lenient=lenient,
        non_neighbor_violations=violations,
        verdict=verdict,
        notes=tuple(notes),
    )
