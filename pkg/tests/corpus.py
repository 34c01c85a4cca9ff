"""Deterministic corpus of small linear core grammars for randomized tests.

The generator draws up to 6 nonterminals and up to 10 rules, of which at
most 2 are non-context-free, over the terminals a and b.  A seed is
admitted only when bounded enumeration of the grammar itself and of both
its annotated builds (u = 0 and u = 1) closes within a fixed node budget,
and the grammar derives at least one word of length at most WORD_LEN.
The corpus is the first CORPUS_SIZE admitted seeds, scanned upward from 0,
so every corpus-driven test is deterministic and reasonably fast.
"""

import functools
import random

from ggkit import build_metalinear, enumerate_language, grammar

NONTERMINALS = ("S", "A", "B", "C", "D", "E")
TERMINALS = ("a", "b")

CORPUS_SIZE = 100
WORD_LEN = 8
NODE_BUDGET = 150_000


def random_linear_core(seed: int):
    """One generator sample; always a valid linear core grammar."""
    rng = random.Random(seed)
    nts = NONTERMINALS[: rng.randint(2, 6)]
    total = rng.randint(3, 10)
    rules = []
    for _ in range(rng.randint(0, 2)):
        rules.append(
            ((rng.choice(nts), rng.choice(nts)), (rng.choice(nts), rng.choice(nts)))
        )
    while len(rules) < total:
        roll = rng.random()
        if roll < 0.25:
            rules.append(((rng.choice(nts),), (rng.choice(nts), rng.choice(nts))))
        else:
            x = tuple(rng.choice(TERMINALS) for _ in range(rng.randint(0, 2)))
            y = tuple(rng.choice(TERMINALS) for _ in range(rng.randint(0, 2)))
            mid = (rng.choice(nts),) if roll < 0.80 else ()
            rules.append(((rng.choice(nts),), x + mid + y))
    rng.shuffle(rules)
    deduped = []
    for r in rules:
        if r not in deduped:
            deduped.append(r)
    return grammar(TERMINALS, nts, deduped, "S")


def _closes(g):
    res = enumerate_language(g, WORD_LEN, max_nodes=NODE_BUDGET)
    return res if res.complete else None


def admitted(seed: int):
    """The grammar for this seed, or None when the budget filter rejects it."""
    g = random_linear_core(seed)
    base = _closes(g)
    if base is None or not base.words:
        return None
    for u in (0, 1):
        out = build_metalinear(g, u)
        if _closes(out.grammar) is None:
            return None
    return g


@functools.lru_cache(maxsize=1)
def corpus():
    """The first CORPUS_SIZE admitted (seed, grammar) pairs."""
    out = []
    seed = 0
    while len(out) < CORPUS_SIZE:
        g = admitted(seed)
        if g is not None:
            out.append((seed, g))
        seed += 1
    return tuple(out)
