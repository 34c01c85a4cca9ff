"""Context-annotated grammar constructions and normalization passes.

build_metalinear turns a linear core general grammar into a context-free
grammar over annotated nonterminals A<l|r>, where l and r are the bounded
sequences of non-context-free rule ids the two surrounding spines still
owe each other.  build_regular is the one-sided variant for left linear
core grammars.  Contexts are stored without epsilon padding; consumption
is strictly left to right, so the compressed form is faithful.

normalize_metalinear reshapes a suitable context-free grammar into the
k-linear normal form (a fresh start expanding to bounded nonterminal
strings whose symbols are all linear), and normalize_regular converts a
non-self-embedding grammar into a right-linear one.  Both refuse loudly,
with diagnostics, when the input is structurally out of shape.
"""

from dataclasses import dataclass, field

from .errors import (
    NotContextFree,
    NotLeftLinearCore,
    NotLinearCore,
    NotSlowBranchingShape,
    SelfEmbedding,
    UnknownSymbol,
    UOverflow,
)
from .grammar import (
    Grammar,
    Rule,
    classify,
    eliminate_unit_rules,
    fresh_name,
    grammar,
    non_context_free_rules,
    prune_useless,
)

Context = tuple[int, ...]

RULE_CAP = 10_000_000


@dataclass(frozen=True)
class TransformStats:
    step_i: int
    step_ii: int
    step_iii: int
    contexts: int


@dataclass(frozen=True)
class TransformOutput:
    grammar: Grammar
    gamma: dict[str, str] = field(compare=False)
    stats: TransformStats


@dataclass(frozen=True)
class PipelineResult:
    """Stage-by-stage trace of a full transform pipeline."""

    stages: tuple[tuple[str, Grammar], ...]
    gamma: dict[str, str] = field(compare=False)
    k: int | None = None

    @property
    def grammar(self) -> Grammar:
        return self.stages[-1][1]


def enumerate_contexts(pcs, u: int) -> tuple[Context, ...]:
    """All sequences over pcs of length 0..u, shortest first, then by ids."""
    if u < 0:
        raise ValueError("u must be nonnegative")
    ids = sorted(pcs)
    out: list[Context] = [()]
    layer: list[Context] = [()]
    for _ in range(u):
        layer = [ctx + (p,) for ctx in layer for p in ids]
        out.extend(layer)
    return tuple(out)


def render_annotated(base: str, left: Context, right: Context) -> str:
    lpart = ",".join(str(p) for p in left)
    rpart = ",".join(str(p) for p in right)
    return f"{base}<{lpart}|{rpart}>"


def _split_linear_rhs(rhs, nonterminals):
    """Split x E y with at most one nonterminal; E is None when absent."""
    nt_at = [i for i, s in enumerate(rhs) if s in nonterminals]
    if not nt_at:
        return rhs, None, ()
    i = nt_at[0]
    return rhs[:i], rhs[i], rhs[i + 1 :]


def _build(g: Grammar, u: int, left_only: bool, max_rules: int) -> TransformOutput:
    report = classify(g)
    if left_only:
        if not report.left_linear_core:
            raise NotLeftLinearCore("grammar is not a left linear core general grammar")
    elif not report.linear_core:
        raise NotLinearCore("grammar is not a linear core general grammar")

    pcs = non_context_free_rules(g)
    contexts = enumerate_contexts(pcs, u)
    short = enumerate_contexts(pcs, u - 1) if u > 0 else ()
    c, c1 = len(contexts), len(short)

    projected = 0
    for r in g.rules:
        if len(r.lhs) == 2:
            projected += 2 * c * c1
        elif len(r.rhs) == 2 and all(s in g.nonterminals for s in r.rhs):
            projected += c * c * c
        else:
            _, e, _ = _split_linear_rhs(r.rhs, g.nonterminals)
            projected += c * c if e is not None else 1
    if projected > max_rules:
        raise UOverflow(f"construction projects {projected} rules, cap is {max_rules}")

    step_i = step_ii = step_iii = 0
    rules: list[tuple[tuple[str, ...], tuple[str, ...]]] = []

    for r in g.rules:
        if len(r.lhs) == 2 or (
            len(r.rhs) == 2 and all(s in g.nonterminals for s in r.rhs)
        ):
            continue
        x, e, y = _split_linear_rhs(r.rhs, g.nonterminals)
        a = r.lhs[0]
        if e is None:
            rules.append(((render_annotated(a, (), ()),), x + y))
            step_i += 1
            continue
        for l in contexts:
            for rr in contexts:
                rules.append(
                    ((render_annotated(a, l, rr),), x + (render_annotated(e, l, rr),) + y)
                )
                step_i += 1

    for r in g.rules:
        if len(r.lhs) != 1 or len(r.rhs) != 2 or not all(s in g.nonterminals for s in r.rhs):
            continue
        a, (b, cc) = r.lhs[0], r.rhs
        for l in contexts:
            for x in contexts:
                for rr in contexts:
                    rules.append(
                        (
                            (render_annotated(a, l, rr),),
                            (render_annotated(b, l, x), render_annotated(cc, x, rr)),
                        )
                    )
                    step_ii += 1

    for r in g.rules:
        if len(r.lhs) != 2:
            continue
        p = r.id
        (a, b), (cc, d) = r.lhs, r.rhs
        for x in contexts:
            for y in short:
                rules.append(
                    ((render_annotated(a, x, (p,) + y),), (render_annotated(cc, x, y),))
                )
                step_iii += 1
        for y in short:
            for z in contexts:
                rules.append(
                    ((render_annotated(b, (p,) + y, z),), (render_annotated(d, y, z),))
                )
                step_iii += 1

    gamma = {
        render_annotated(a, l, rr): a
        for a in sorted(g.nonterminals)
        for l in contexts
        for rr in contexts
    }
    out = grammar(
        terminals=g.terminals,
        nonterminals=gamma.keys(),
        rules=rules,
        start=render_annotated(g.start, (), ()),
    )
    return TransformOutput(
        grammar=out,
        gamma=gamma,
        stats=TransformStats(step_i, step_ii, step_iii, c),
    )


def build_metalinear(g: Grammar, u: int, max_rules: int = RULE_CAP) -> TransformOutput:
    """Theorem-style annotated construction for a linear core grammar.

    Every A -> x E y keeps its shape with both contexts carried through
    (terminal-only bodies exist only in the fully discharged A<|> form);
    every A -> B C splits its right context choice x between the halves;
    every p: A B -> C D becomes context-consuming unit rules
    A<x|p.y> -> C<x|y> and B<p.y|z> -> D<y|z>.  With u = 0 the non-context-
    free rules contribute nothing.
    """
    return _build(g, u, left_only=False, max_rules=max_rules)


def build_regular(g: Grammar, u: int, max_rules: int = RULE_CAP) -> TransformOutput:
    """Same construction specialized to left linear core grammars (A -> xE)."""
    return _build(g, u, left_only=True, max_rules=max_rules)


def gamma_project(output: TransformOutput, form) -> tuple[str, ...]:
    """Strip annotations symbol-wise; terminals pass through unchanged."""
    alphabet = output.grammar.alphabet()
    out = []
    for s in form:
        if s not in alphabet:
            raise UnknownSymbol(f"{s!r} is not a symbol of the transformed grammar")
        out.append(output.gamma.get(s, s))
    return tuple(out)


def _require_context_free(g: Grammar, op: str):
    for r in g.rules:
        if len(r.lhs) != 1:
            raise NotContextFree(f"{op} needs a context-free grammar; rule {r.id} has lhs {' '.join(r.lhs)}")


def _tarjan(vertices, edges) -> list[list]:
    """SCCs in reverse topological order (callees before callers)."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    sccs: list[list] = []
    counter = [0]

    def strongconnect(v):
        # iterative to survive deep grammars
        work = [(v, iter(edges.get(v, ())))]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(edges.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                sccs.append(comp)

    for v in vertices:
        if v not in index:
            strongconnect(v)
    return sccs


def _rules_of(g: Grammar) -> dict[str, list[Rule]]:
    by_lhs: dict[str, list[Rule]] = {a: [] for a in g.nonterminals}
    for r in g.rules:
        by_lhs[r.lhs[0]].append(r)
    return by_lhs


def _chain_to_branching(g: Grammar, sym: str, by_lhs, is_branching) -> tuple[int, ...]:
    """Rule ids of a shortest path from sym to a branching rule."""
    from collections import deque

    parent: dict[str, tuple[str, int] | None] = {sym: None}
    queue = deque([sym])
    while queue:
        v = queue.popleft()
        for r in by_lhs.get(v, ()):
            if is_branching(r):
                chain = [r.id]
                back = parent[v]
                while back is not None:
                    prev, rid = back
                    chain.append(rid)
                    back = parent[prev]
                chain.reverse()
                return tuple(chain)
            for s in r.rhs:
                if s in g.nonterminals and s not in parent:
                    parent[s] = (v, r.id)
                    queue.append(s)
    return ()


def normalize_metalinear(g: Grammar) -> tuple[Grammar, int]:
    """Reshape into k-linear normal form: a fresh start S0 expands to every
    maximal purely-nonterminal string reachable through branching and unit
    rules, and all string symbols carry only linear rules.

    Returns the reshaped grammar and k, the longest such string.  Raises
    NotSlowBranchingShape when the grammar emits terminals above a branch,
    branches inside a cycle, or mixes terminals into a branching rule; the
    error's chain attribute holds the offending rule ids.
    """
    _require_context_free(g, "normalize_metalinear")
    by_lhs = _rules_of(g)

    def nts_in(rhs):
        return [s for s in rhs if s in g.nonterminals]

    def is_branching(r: Rule) -> bool:
        return len(nts_in(r.rhs)) >= 2

    for r in g.rules:
        if is_branching(r) and any(s in g.terminals for s in r.rhs):
            raise NotSlowBranchingShape(
                f"rule {r.id} mixes terminals into a branching rule", chain=(r.id,)
            )

    # any cycle through a branching rule makes the string set unbounded
    edges = {
        a: sorted({s for r in rs for s in nts_in(r.rhs)}) for a, rs in by_lhs.items()
    }
    scc_of: dict[str, int] = {}
    for i, comp in enumerate(_tarjan(sorted(g.nonterminals), edges)):
        for v in comp:
            scc_of[v] = i
    for r in g.rules:
        if is_branching(r) and any(scc_of[s] == scc_of[r.lhs[0]] for s in nts_in(r.rhs)):
            raise NotSlowBranchingShape(
                f"branching rule {r.id} sits on a cycle through {r.lhs[0]}",
                chain=(r.id,),
            )

    # a symbol is linear-closed when no branching rule is reachable from it
    closed = {
        a
        for a in g.nonterminals
        if not _chain_to_branching(g, a, by_lhs, is_branching)
    }

    # terminal emission must not happen above a branch
    for r in g.rules:
        if is_branching(r):
            continue
        kids = nts_in(r.rhs)
        if kids and any(s in g.terminals for s in r.rhs) and kids[0] not in closed:
            raise NotSlowBranchingShape(
                f"rule {r.id} emits terminals above a branch reachable from {kids[0]}",
                chain=(r.id,) + _chain_to_branching(g, kids[0], by_lhs, is_branching),
            )

    # open symbols that can also stop branching get a linear twin
    taken = set(g.alphabet())
    twin: dict[str, str] = {}
    for a in sorted(g.nonterminals):
        if a in closed:
            continue
        if any(
            not is_branching(r) and (not nts_in(r.rhs) or r.rhs != tuple(nts_in(r.rhs)))
            for r in by_lhs[a]
        ):
            twin[a] = fresh_name(a, taken)
            taken.add(twin[a])

    strings: set[tuple[str, ...]] = set()
    seen = {(g.start,)}
    frontier = [(g.start,)]
    while frontier:
        w = frontier.pop()
        if len(seen) > 500_000:
            raise NotSlowBranchingShape("string closure exceeded the safety cap")
        i = next((j for j, s in enumerate(w) if s not in closed and s not in twin.values()), None)
        if i is None:
            strings.add(w)
            continue
        sym = w[i]
        succs = []
        for r in by_lhs[sym]:
            kids = nts_in(r.rhs)
            if r.rhs and r.rhs == tuple(kids):
                succs.append(w[:i] + r.rhs + w[i + 1 :])
        if sym in twin:
            succs.append(w[:i] + (twin[sym],) + w[i + 1 :])
        for nw in succs:
            if nw not in seen:
                seen.add(nw)
                frontier.append(nw)

    new_rules: list[tuple[tuple[str, ...], tuple[str, ...]]] = []
    start0 = fresh_name(f"{g.start}0", taken)
    taken.add(start0)
    for w in sorted(strings, key=lambda w: (len(w), w)):
        new_rules.append(((start0,), w))
    emitted = set()
    for a in sorted(g.nonterminals):
        if a in closed:
            for r in by_lhs[a]:
                key = (a, r.rhs)
                if key not in emitted:
                    emitted.add(key)
                    new_rules.append(((a,), r.rhs))
        elif a in twin:
            for r in by_lhs[a]:
                if is_branching(r):
                    continue
                kids = nts_in(r.rhs)
                # a unit into a branch-only symbol adds nothing linear;
                # the string closure already covers that continuation
                if kids and kids[0] not in closed and kids[0] not in twin:
                    continue
                rhs = tuple(twin.get(s, s) if s in g.nonterminals else s for s in r.rhs)
                key = (twin[a], rhs)
                if key not in emitted:
                    emitted.add(key)
                    new_rules.append(((twin[a],), rhs))

    nts = {start0}
    nts.update(s for w in strings for s in w)
    for lhs, rhs in new_rules:
        nts.add(lhs[0])
        nts.update(s for s in rhs if s not in g.terminals)
    k = max((len(w) for w in strings), default=1)
    return grammar(g.terminals, nts, new_rules, start0), k


class _NFA:
    """Tiny epsilon-NFA; labels are terminal symbols, None is epsilon."""

    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, str | None, int]] = []
        self.start = 0
        self.finals: set[int] = set()

    def new_state(self) -> int:
        self.n += 1
        return self.n - 1

    def add(self, src: int, label: str | None, dst: int):
        self.edges.append((src, label, dst))

    def inline(self, other: "_NFA", src: int, dst: int):
        """Copy `other` into self, glued between src and dst with epsilons."""
        base = self.n
        self.n += other.n
        for s, lbl, t in other.edges:
            self.edges.append((s + base, lbl, t + base))
        self.add(src, None, other.start + base)
        for f in other.finals:
            self.add(f + base, None, dst)

    def reversed(self) -> "_NFA":
        rev = _NFA()
        rev.n = self.n
        rev.edges = [(t, lbl, s) for s, lbl, t in self.edges]
        fresh = rev.new_state()
        for f in self.finals:
            rev.add(fresh, None, f)
        rev.start = fresh
        rev.finals = {self.start}
        return rev

    def with_start(self, start: int) -> "_NFA":
        clone = _NFA()
        clone.n = self.n
        clone.edges = list(self.edges)
        clone.start = start
        clone.finals = set(self.finals)
        return clone


def _segment_fragment(nfa: _NFA, segment, nfas, src: int, reverse: bool) -> int:
    """Thread `segment` (terminals and already-built lower nonterminals)
    between fresh states starting at src; returns the exit state."""
    items = list(reversed(segment)) if reverse else list(segment)
    cur = src
    for s in items:
        nxt = nfa.new_state()
        if s in nfas:
            machine = nfas[s].reversed() if reverse else nfas[s]
            nfa.inline(machine, cur, nxt)
        else:
            nfa.add(cur, s, nxt)
        cur = nxt
    return cur


def _eps_closure(n: int, edges) -> list[set[int]]:
    eps: list[set[int]] = [set() for _ in range(n)]
    for s, lbl, t in edges:
        if lbl is None:
            eps[s].add(t)
    closures = []
    for s in range(n):
        seen = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for w in eps[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        closures.append(seen)
    return closures


def normalize_regular(g: Grammar) -> Grammar:
    """Convert a non-self-embedding context-free grammar to an equivalent
    right-linear grammar.

    Works bottom-up over the strongly connected components of the
    nonterminal graph: each component must be one-sided (recursion only in
    the last or only in the first position once null-only symbols are
    stripped), which the self-embedding check guarantees.  Left-recursive
    components are built reversed and flipped back.  Raises SelfEmbedding,
    with a witness nonterminal and an offending sentential form, when some
    A derives alpha A beta with both sides able to produce nonempty words.
    """
    _require_context_free(g, "normalize_regular")
    g = prune_useless(g)

    # strip null-only symbols (language exactly {eps}); they cannot affect
    # one-sidedness and only obscure it
    productive = {a for a in g.nonterminals if any(r.lhs[0] == a for r in g.rules)}
    nonempty: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            if r.lhs[0] in nonempty:
                continue
            if any(s in g.terminals or s in nonempty for s in r.rhs):
                nonempty.add(r.lhs[0])
                changed = True
    if g.start not in nonempty:
        rhs: tuple[str, ...] = ()
        rules = [((g.start,), rhs)] if g.start in productive else []
        return grammar(g.terminals, {g.start}, rules, g.start)
    null_only = {a for a in productive if a not in nonempty}
    if null_only:
        seen_rules = set()
        kept = []
        for r in g.rules:
            if r.lhs[0] in null_only:
                continue
            rhs = tuple(s for s in r.rhs if s not in null_only)
            if (r.lhs, rhs) not in seen_rules:
                seen_rules.add((r.lhs, rhs))
                kept.append((r.lhs, rhs))
        g = grammar(g.terminals, g.nonterminals - null_only, kept, g.start)
    g = prune_useless(eliminate_unit_rules(g))

    by_lhs = _rules_of(g)

    def side_flags(rhs, i):
        left = any(s in g.terminals or s in g.nonterminals for s in rhs[:i])
        right = any(s in g.terminals or s in g.nonterminals for s in rhs[i + 1 :])
        return left, right

    # saturate A =>+ alpha B beta with "can the sides be nonempty" flags
    steps: dict[str, list[tuple[str, bool, bool, int, int]]] = {
        a: [] for a in g.nonterminals
    }
    for r in g.rules:
        for i, s in enumerate(r.rhs):
            if s in g.nonterminals:
                left, right = side_flags(r.rhs, i)
                steps[r.lhs[0]].append((s, left, right, r.id, i))
    for a in sorted(g.nonterminals):
        reached = {(a, False, False)}
        queue = [(a, False, False)]
        while queue:
            b, l0, r0 = queue.pop()
            for s, l1, r1, _rid, _i in steps[b]:
                state = (s, l0 or l1, r0 or r1)
                if state not in reached:
                    reached.add(state)
                    queue.append(state)
        if (a, True, True) in reached:
            raise SelfEmbedding(a, _witness_form(g, a, steps))
    return _assemble_right_linear(g, by_lhs)


def _witness_form(g: Grammar, a: str, steps) -> str:
    """Shortest replay A =>+ alpha A beta with both sides material."""
    from collections import deque

    start = (a, False, False)
    parent: dict[tuple[str, bool, bool], tuple[tuple[str, bool, bool], int, int] | None]
    parent = {start: None}
    queue = deque([start])
    goal = (a, True, True)
    while queue:
        state = queue.popleft()
        if state == goal:
            break
        b, l0, r0 = state
        for s, l1, r1, rid, i in steps[b]:
            nxt = (s, l0 or l1, r0 or r1)
            if nxt not in parent:
                parent[nxt] = (state, rid, i)
                queue.append(nxt)
    if goal not in parent:
        return a
    moves: list[tuple[int, int]] = []
    cur: tuple[str, bool, bool] | None = goal
    while cur is not None and parent[cur] is not None:
        prev, rid, idx = parent[cur]  # type: ignore[misc]
        moves.append((rid, idx))
        cur = prev
    moves.reverse()
    form = [a]
    at = 0
    for rid, idx in moves:
        r = g.rule(rid)
        form[at : at + 1] = list(r.rhs)
        at += idx
    return " ".join(form) if form else "eps"


def _assemble_right_linear(g: Grammar, by_lhs) -> Grammar:
    """Bottom-up NFA construction over SCCs; assumes no self-embedding."""
    edges = {
        a: sorted({s for r in rs for s in r.rhs if s in g.nonterminals})
        for a, rs in by_lhs.items()
    }
    nfas: dict[str, _NFA] = {}
    for comp in _tarjan(sorted(g.nonterminals), edges):
        members = set(comp)
        occurrences = [
            (r, i)
            for a in comp
            for r in by_lhs[a]
            for i, s in enumerate(r.rhs)
            if s in members
        ]
        recursive = bool(occurrences)
        # one-sided: recursion only in the last (right) or first (left) slot
        right_ok = all(i == len(r.rhs) - 1 for r, i in occurrences)
        left_ok = all(i == 0 for r, i in occurrences)
        if recursive and not right_ok and not left_ok:
            raise AssertionError("two-sided component survived the self-embedding check")
        reverse = recursive and not right_ok
        machine = _NFA()
        state_of = {a: machine.new_state() for a in sorted(members)}
        final = machine.new_state()
        machine.finals = {final}
        for a in sorted(members):
            for r in by_lhs[a]:
                if r.rhs and not reverse and r.rhs[-1] in members:
                    segment, link = r.rhs[:-1], r.rhs[-1]
                elif r.rhs and reverse and r.rhs[0] in members:
                    segment, link = r.rhs[1:], r.rhs[0]
                else:
                    segment, link = r.rhs, None
                exit_state = _segment_fragment(
                    machine, segment, nfas, state_of[a], reverse
                )
                machine.add(exit_state, None, state_of[link] if link else final)
        for a in sorted(members):
            built = machine.with_start(state_of[a])
            nfas[a] = built.reversed() if reverse else built
    top = nfas[g.start]
    closures = _eps_closure(top.n, top.edges)
    taken = set(g.terminals)
    names = []
    for i in range(top.n):
        nm = fresh_name(f"Q{i}", taken)
        taken.add(nm)
        names.append(nm)
    rules = []
    reach = {top.start}
    order = [top.start]
    by_src: dict[int, list[tuple[str, int]]] = {}
    for s, lbl, t in top.edges:
        if lbl is not None:
            by_src.setdefault(s, []).append((lbl, t))
    i = 0
    while i < len(order):
        p = order[i]
        i += 1
        for q in sorted(closures[p]):
            for lbl, t in sorted(by_src.get(q, [])):
                rules.append(((names[p],), (lbl, names[t])))
                if t not in reach:
                    reach.add(t)
                    order.append(t)
        if closures[p] & top.finals:
            rules.append(((names[p],), ()))
    seen_rules = set()
    deduped = []
    for lhs, rhs in rules:
        if (lhs, rhs) not in seen_rules:
            seen_rules.add((lhs, rhs))
            deduped.append((lhs, rhs))
    out = grammar(
        g.terminals,
        {names[s] for s in reach},
        [r for r in deduped if r[0][0] in {names[s] for s in reach}],
        names[top.start],
    )
    return prune_useless(out)


def metalinear_pipeline(g: Grammar, u: int, max_rules: int = RULE_CAP) -> PipelineResult:
    """build_metalinear, unit elimination, pruning, k-linear reshaping."""
    built = build_metalinear(g, u, max_rules)
    unit_free = eliminate_unit_rules(built.grammar)
    pruned = prune_useless(unit_free)
    normalized, k = normalize_metalinear(pruned)
    return PipelineResult(
        stages=(
            ("raw", built.grammar),
            ("unit-free", unit_free),
            ("pruned", pruned),
            ("normalized", normalized),
        ),
        gamma=built.gamma,
        k=k,
    )


def regular_pipeline(g: Grammar, u: int, max_rules: int = RULE_CAP) -> PipelineResult:
    """build_regular, unit elimination, pruning, right-linear conversion."""
    built = build_regular(g, u, max_rules)
    unit_free = eliminate_unit_rules(built.grammar)
    pruned = prune_useless(unit_free)
    normalized = normalize_regular(pruned)
    return PipelineResult(
        stages=(
            ("raw", built.grammar),
            ("unit-free", unit_free),
            ("pruned", pruned),
            ("normalized", normalized),
        ),
        gamma=built.gamma,
        k=None,
    )
