"""Sentential-form rewriting, bounded enumeration, derivation search and
bounded equivalence checking.

Enumeration is a breadth-first walk over sentential forms with a visited
set.  A word of length at most max_len is reported iff it has a derivation
in which no intermediate form exceeds max_len + slack symbols.  For
propagating grammars forms never shrink, so any slack gives exactly the
length-bounded language; for erasing grammars the result is an
under-approximation and the report carries the slack it used.  Symbols are
interned to small integers so the hot loop works on tuples of ints.

derive_word searches the same space exhaustively, so a NotFoundWithinLimits
outcome really means no derivation exists inside the stated bounds.  The
returned witness is canonical: shortest, then lexicographically least by
(position, rule id) step by step.
"""

from collections import deque
from dataclasses import dataclass

from .errors import (
    NoMatchAtPosition,
    NotFoundWithinLimits,
    ReplayMismatch,
    UnknownSymbol,
)
from .grammar import Grammar, Rule


@dataclass(frozen=True)
class Derivation:
    """Start symbol plus (rule id, 0-based position) steps over forms."""

    grammar: Grammar
    start: str
    steps: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SearchLimits:
    max_steps: int
    max_form_len: int

    def __post_init__(self):
        if self.max_steps < 1 or self.max_form_len < 1:
            raise ValueError("search limits must be at least 1")


@dataclass(frozen=True)
class EnumerationResult:
    words: frozenset[tuple[str, ...]]
    max_len: int
    slack: int
    complete: bool
    explored: int


@dataclass(frozen=True)
class EquivalenceVerdict:
    equal: bool
    max_len: int
    slack: int
    witness: tuple[str, ...] | None
    side: str | None  # "left"/"right": which grammar owns the witness
    complete: bool

    def __str__(self):
        if self.equal:
            return f"Equal({self.max_len})"
        w = " ".join(self.witness) if self.witness else "eps"
        return f"Differ({self.side}: {w})"


def apply_rule(form, rule: Rule, position: int) -> tuple[str, ...]:
    """Replace one occurrence of rule.lhs at `position`; pure."""
    form = tuple(form)
    k = len(rule.lhs)
    if position < 0 or position + k > len(form) or form[position : position + k] != rule.lhs:
        raise NoMatchAtPosition(
            f"rule {rule.id} ({' '.join(rule.lhs)}) does not occur at {position}"
        )
    return form[:position] + rule.rhs + form[position + k :]


def replay(derivation: Derivation) -> list[tuple[str, ...]]:
    """The full chain of sentential forms, start included; len = steps + 1."""
    g = derivation.grammar
    chain = [(derivation.start,)]
    for rule_id, pos in derivation.steps:
        try:
            chain.append(apply_rule(chain[-1], g.rule(rule_id), pos))
        except NoMatchAtPosition as exc:
            raise ReplayMismatch(f"step {len(chain)}: {exc}") from exc
    return chain


def default_slack(g: Grammar, max_len: int) -> int:
    """0 for propagating grammars, max(4, max_len) otherwise."""
    if all(r.rhs for r in g.rules):
        return 0
    return max(4, max_len)


class _Coder:
    """Symbol interning: terminals get codes 0..t-1, nonterminals follow."""

    def __init__(self, g: Grammar):
        self.names = sorted(g.terminals) + sorted(g.nonterminals)
        self.code = {s: i for i, s in enumerate(self.names)}
        self.t_count = len(g.terminals)
        # rules attacking a form are looked up by their first lhs symbol
        self.by_first: dict[int, list[tuple[tuple[int, ...], tuple[int, ...], int, int, int]]] = {}
        self.lhs_all_nt = True
        for r in g.rules:
            lhs = tuple(self.code[s] for s in r.lhs)
            rhs = tuple(self.code[s] for s in r.rhs)
            if any(c < self.t_count for c in lhs):
                self.lhs_all_nt = False
            delta = sum(c < self.t_count for c in rhs) - sum(
                c < self.t_count for c in lhs
            )
            self.by_first.setdefault(lhs[0], []).append(
                (lhs[1:], rhs, delta, len(lhs), r.id)
            )

    def encode(self, word) -> tuple[int, ...]:
        return tuple(self.code[s] for s in word)

    def decode(self, form) -> tuple[str, ...]:
        return tuple(self.names[c] for c in form)


def enumerate_language(
    g: Grammar,
    max_len: int,
    slack: int | None = None,
    max_nodes: int | None = None,
) -> EnumerationResult:
    """All words of length <= max_len derivable while every intermediate
    form stays within max_len + slack symbols.

    `max_nodes` optionally caps the number of explored forms; hitting the
    cap flags the (still sound) partial result as incomplete instead of
    raising.
    """
    if slack is None:
        slack = default_slack(g, max_len)
    coder = _Coder(g)
    cap = max_len + slack
    by_first = coder.by_first
    t_count = coder.t_count
    prune_tc = coder.lhs_all_nt
    start = (coder.code[g.start],)
    words: set[tuple[int, ...]] = set()
    complete = True
    explored = 0
    if len(start) <= cap:
        visited = {start}
        queue = deque([(start, 0)])
        while queue:
            if max_nodes is not None and explored >= max_nodes:
                complete = False
                break
            form, tc = queue.popleft()
            explored += 1
            for i, s in enumerate(form):
                cands = by_first.get(s)
                if cands is None:
                    continue
                for lhs_tail, rhs, delta, llen, _rid in cands:
                    if lhs_tail and form[i + 1 : i + llen] != lhs_tail:
                        continue
                    succ = form[:i] + rhs + form[i + llen :]
                    if len(succ) > cap or succ in visited:
                        continue
                    visited.add(succ)
                    tc2 = tc + delta
                    if prune_tc and tc2 > max_len:
                        continue
                    if tc2 == len(succ):
                        # all-terminal forms are dead: every lhs has an NT
                        if tc2 <= max_len:
                            words.add(succ)
                        continue
                    queue.append((succ, tc2))
    return EnumerationResult(
        words=frozenset(coder.decode(w) for w in words),
        max_len=max_len,
        slack=slack,
        complete=complete,
        explored=explored,
    )


def _is_subsequence(short, long_) -> bool:
    it = iter(long_)
    return all(c in it for c in short)


def derive_word(g: Grammar, word, limits: SearchLimits) -> Derivation:
    """Exhaustive breadth-first search for a derivation of `word`.

    Raises NotFoundWithinLimits when no derivation fits the limits; that is
    a bounded result, not a non-membership proof.
    """
    coder = _Coder(g)
    for s in word:
        if s not in g.terminals:
            raise UnknownSymbol(f"{s!r} is not a terminal of this grammar")
    target = coder.encode(word)
    by_first = coder.by_first
    t_count = coder.t_count
    prune = coder.lhs_all_nt
    start = (coder.code[g.start],)
    if len(start) > limits.max_form_len:
        raise NotFoundWithinLimits("start symbol already exceeds the form cap")
    parents: dict[tuple[int, ...], tuple[tuple[int, ...], int, int] | None] = {start: None}

    def rebuild(form) -> Derivation:
        steps = []
        entry = parents[form]
        while entry is not None:
            form, rule_id, pos = entry
            steps.append((rule_id, pos))
            entry = parents[form]
        steps.reverse()
        return Derivation(grammar=g, start=g.start, steps=tuple(steps))

    if start == target:  # unreachable for terminal words, kept for safety
        return rebuild(start)
    layer = [start]
    for _depth in range(limits.max_steps):
        nxt = []
        for form in layer:
            for i, s in enumerate(form):
                cands = by_first.get(s)
                if cands is None:
                    continue
                for lhs_tail, rhs, _delta, llen, rid in cands:
                    if lhs_tail and form[i + 1 : i + llen] != lhs_tail:
                        continue
                    succ = form[:i] + rhs + form[i + llen :]
                    if len(succ) > limits.max_form_len or succ in parents:
                        continue
                    if prune and not _is_subsequence(
                        [c for c in succ if c < t_count], target
                    ):
                        continue
                    parents[succ] = (form, rid, i)
                    if succ == target:
                        return rebuild(succ)
                    if all(c < t_count for c in succ):
                        continue
                    nxt.append(succ)
        if not nxt:
            break
        layer = nxt
    raise NotFoundWithinLimits(
        f"no derivation of length <= {limits.max_steps} with forms <= "
        f"{limits.max_form_len} symbols"
    )


def bounded_equiv(
    g1: Grammar,
    g2: Grammar,
    max_len: int,
    slack: int | None = None,
    projection: dict[str, str] | None = None,
    max_nodes: int | None = None,
) -> EquivalenceVerdict:
    """Compare bounded enumerations, projecting g2's words through the
    optional symbol-renaming table (identity where unmapped)."""
    left = enumerate_language(g1, max_len, slack, max_nodes)
    right = enumerate_language(g2, max_len, slack, max_nodes)
    table = projection or {}
    right_words = frozenset(tuple(table.get(s, s) for s in w) for w in right.words)
    complete = left.complete and right.complete
    used_slack = left.slack if slack is None else slack
    if left.words == right_words:
        return EquivalenceVerdict(True, max_len, used_slack, None, None, complete)
    diff = left.words.symmetric_difference(right_words)
    witness = min(diff, key=lambda w: (len(w), w))
    side = "left" if witness in left.words else "right"
    return EquivalenceVerdict(False, max_len, used_slack, witness, side, complete)
