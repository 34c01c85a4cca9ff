"""Structural invariants behind the property suite, as plain checkers.

Each checker raises AssertionError on violation so the same code can back
both the per-grammar unit tests and the acceptance sweep.  Enumerations
and derivations are memoized; grammars are immutable, so this is safe.
"""

import functools

from ggkit import (
    SearchLimits,
    build_metalinear,
    build_tree,
    derive_word,
    eliminate_unit_rules,
    enumerate_language,
    frontier,
    parse_grammar,
    prune_useless,
    replay,
    serialize_grammar,
)

LIMITS = SearchLimits(max_steps=80, max_form_len=30)


@functools.lru_cache(maxsize=None)
def sample_words(g, count=2, max_len=8):
    res = enumerate_language(g, max_len, max_nodes=150_000)
    return tuple(sorted(res.words, key=lambda w: (len(w), w))[:count])


@functools.lru_cache(maxsize=None)
def _derivation(g, word):
    return derive_word(g, word, LIMITS)


def check_replay_frontier(g):
    for word in sample_words(g):
        d = _derivation(g, word)
        forms = replay(d)
        assert forms[0] == (g.start,)
        assert forms[-1] == word
        assert frontier(build_tree(d)) == word


def check_dependency_counts(g):
    for word in sample_words(g):
        d = _derivation(g, word)
        tree = build_tree(d)
        non_cf = sum(1 for rid, _ in d.steps if len(g.rule(rid).lhs) == 2)
        assert len(tree.dependencies) == non_cf


def check_u_monotone(g):
    def rule_pairs(u):
        out = build_metalinear(g, u)
        return {(r.lhs, r.rhs) for r in out.grammar.rules}

    assert rule_pairs(0) <= rule_pairs(1) <= rule_pairs(2)


def _context_free_views(g):
    """g itself when already context-free, plus its u=1 annotated build."""
    views = []
    if all(len(r.lhs) == 1 for r in g.rules):
        views.append(g)
    views.append(build_metalinear(g, 1).grammar)
    return views


def check_idempotent(g):
    for cf in _context_free_views(g):
        once = eliminate_unit_rules(cf)
        assert eliminate_unit_rules(once) == once
        pruned = prune_useless(once)
        assert prune_useless(pruned) == pruned


def check_round_trip(g):
    for h in [g, build_metalinear(g, 1).grammar]:
        assert parse_grammar(serialize_grammar(h)) == h


ALL_CHECKS = (
    check_replay_frontier,
    check_dependency_counts,
    check_u_monotone,
    check_idempotent,
    check_round_trip,
)
