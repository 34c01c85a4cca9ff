"""Structural invariants over the random corpus, plus a few direct
hypothesis properties for the small pure helpers."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import invariants
from corpus import corpus
from ggkit import (
    Rule,
    apply_rule,
    enumerate_contexts,
    fresh_name,
    parse_projection,
    project_word,
    serialize_projection,
)

CASES = corpus()
IDS = [f"seed{seed}" for seed, _ in CASES]


@pytest.mark.parametrize("check", invariants.ALL_CHECKS, ids=lambda c: c.__name__)
@pytest.mark.parametrize("case", CASES, ids=IDS)
def test_corpus_invariant(case, check):
    seed, g = case
    check(g)


@given(
    pcs=st.sets(st.integers(min_value=1, max_value=30), min_size=1, max_size=3),
    u=st.integers(min_value=0, max_value=3),
)
def test_context_enumeration_is_complete_and_ordered(pcs, u):
    out = enumerate_contexts(tuple(pcs), u)
    assert len(out) == len(set(out))
    assert len(out) == sum(len(pcs) ** i for i in range(u + 1))
    assert all(set(ctx) <= pcs for ctx in out)
    assert list(out) == sorted(out, key=lambda c: (len(c), c))


@given(
    base=st.text(alphabet="ABC", min_size=1, max_size=3),
    taken=st.sets(st.text(alphabet="ABC'", min_size=1, max_size=5), max_size=8),
)
def test_fresh_name_avoids_collisions(base, taken):
    name = fresh_name(base, taken)
    assert name not in taken
    assert name.startswith(base)


@given(
    table=st.dictionaries(
        st.text(alphabet="ABC<|>,0123456789", min_size=1, max_size=8).filter(
            lambda s: s.strip() == s and not s.startswith("#")
        ),
        st.text(alphabet="ABC", min_size=1, max_size=3),
        max_size=6,
    )
)
def test_projection_table_round_trip(table):
    assert parse_projection(serialize_projection(table)) == table


@given(st.lists(st.sampled_from("aAbB"), max_size=6).map(tuple))
def test_project_word_without_table_is_identity(word):
    assert project_word(word, {}) == word


RULE_AB = Rule(4, ("A", "B"), ("C", "D"))


@settings(max_examples=30)
@given(
    prefix=st.lists(st.sampled_from("ab"), max_size=3).map(tuple),
    suffix=st.lists(st.sampled_from("ab"), max_size=3).map(tuple),
)
def test_apply_rule_splices_only_the_match(prefix, suffix):
    form = prefix + ("A", "B") + suffix
    assert apply_rule(form, RULE_AB, len(prefix)) == prefix + ("C", "D") + suffix
