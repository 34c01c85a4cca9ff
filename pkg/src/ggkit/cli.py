"""Command-line interface.

Exit codes: 0 for success or a true verdict, 1 for a false verdict (word
not derivable within limits, certificate failed, languages differ,
self-embedding or shape rejections), 2 for usage, syntax and precondition
errors.  All reports are line-oriented `key: value` text so golden tests
can diff them.
"""

import argparse
import sys

from . import analysis, engine, transform
from .errors import (
    NotFoundWithinLimits,
    NotSlowBranchingShape,
    SelfEmbedding,
    ToolkitError,
)
from .grammar import Grammar, classify, knf_split, non_context_free_rules
from .textio import (
    export_dot,
    parse_grammar,
    parse_projection,
    serialize_grammar,
    serialize_projection,
)
from .tree import build_tree, frontier


def _load(path: str) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())


def _word_arg(raw: str, g: Grammar) -> tuple[str, ...]:
    """A word is whitespace-separated symbols; a single unbroken token of
    one-character terminals is also accepted, as is `eps`."""
    tokens = raw.split()
    if tokens == ["eps"] or not tokens:
        return ()
    if len(tokens) == 1 and tokens[0] not in g.terminals:
        chars = tuple(tokens[0])
        if all(c in g.terminals for c in chars):
            return chars
    return tuple(tokens)


def _word_str(word) -> str:
    return " ".join(word) if word else "eps"


def _limits(args) -> engine.SearchLimits:
    return engine.SearchLimits(max_steps=args.max_steps, max_form_len=args.max_form_len)


def _print_bool(key: str, value: bool):
    print(f"{key}: {'true' if value else 'false'}")


def cmd_classify(args) -> int:
    g = _load(args.file)
    rep = classify(g)
    _print_bool("general", rep.general)
    _print_bool("linear_core", rep.linear_core)
    _print_bool("left_linear_core", rep.left_linear_core)
    _print_bool("knf", rep.knf)
    _print_bool("propagating", rep.propagating)
    _print_bool("context_free", rep.context_free)
    _print_bool("linear", rep.linear)
    print(f"k_linear: {rep.k_linear if rep.k_linear is not None else 'none'}")
    pcs = non_context_free_rules(g)
    print(f"pcs: {' '.join(str(i) for i in pcs)}")
    return 0


def cmd_enumerate(args) -> int:
    g = _load(args.file)
    res = engine.enumerate_language(g, args.max_len, args.slack, args.max_nodes)
    print(f"max_len: {res.max_len}")
    print(f"slack: {res.slack}")
    _print_bool("complete", res.complete)
    print(f"count: {len(res.words)}")
    print("words:")
    for w in sorted(res.words, key=lambda w: (len(w), w)):
        print(_word_str(w))
    return 0


def cmd_derive(args) -> int:
    g = _load(args.file)
    word = _word_arg(args.word, g)
    try:
        d = engine.derive_word(g, word, _limits(args))
    except NotFoundWithinLimits as exc:
        _print_bool("found", False)
        print(f"reason: {exc}")
        return 1
    chain = engine.replay(d)
    _print_bool("found", True)
    print(f"steps: {len(d.steps)}")
    for (rule_id, pos), form in zip(d.steps, chain[1:]):
        print(f"rule {rule_id} at {pos} => {_word_str(form)}")
    return 0


def cmd_tree(args) -> int:
    g = _load(args.file)
    word = _word_arg(args.word, g)
    try:
        d = engine.derive_word(g, word, _limits(args))
    except NotFoundWithinLimits as exc:
        _print_bool("found", False)
        print(f"reason: {exc}")
        return 1
    t = build_tree(d)
    with open(args.dot, "w", encoding="utf-8") as fh:
        fh.write(export_dot(t))
    print(f"nodes: {len(t.nodes)}")
    print(f"dependencies: {len(t.dependencies)}")
    print(f"frontier: {_word_str(tuple(frontier(t)))}")
    print(f"dot: {args.dot}")
    return 0


def _pair_line(t, pair) -> str:
    def labels(path):
        return " ".join(
            "eps" if t.nodes[n].label is None else t.nodes[n].label for n in path
        )

    ctx = ",".join(str(r) for r in analysis.pair_context(t, pair))
    return (
        f"pair: origin={pair.origin} alpha=[{labels(pair.left_path)}] "
        f"beta=[{labels(pair.right_path)}] context=[{ctx}]"
    )


def cmd_analyze(args) -> int:
    g = _load(args.file)
    if args.all:
        return _analyze_sweep(args, g)
    if args.word is None:
        print("error: analyze needs --word or --all", file=sys.stderr)
        return 2
    word = _word_arg(args.word, g)
    try:
        d = engine.derive_word(g, word, _limits(args))
    except NotFoundWithinLimits as exc:
        _print_bool("found", False)
        print(f"reason: {exc}")
        return 1
    t = build_tree(d)
    print(f"word: {_word_str(word)}")
    print(f"steps: {len(d.steps)}")
    u_obs, _ = analysis.max_dependency_count(t)
    strict, degree = analysis.slow_branching(t, "strict")
    lenient, _ = analysis.slow_branching(t, "lenient")
    violations = analysis.non_neighbor_violations(t)
    print(f"u_observed: {u_obs}")
    print(f"degree: {degree}")
    _print_bool("slow_branching_strict", strict)
    _print_bool("slow_branching_lenient", lenient)
    _print_bool("slow_branching", lenient if args.lenient else strict)
    print(f"non_neighbor_violations: {len(violations)}")
    for a, b in violations:
        print(f"violation: {a} {b}")
    pairs = analysis.neighboring_paths(t)
    print(f"pairs: {len(pairs)}")
    for pair in pairs:
        print(_pair_line(t, pair))
    if args.theorem is None:
        return 0
    report = analysis.certificate_check(g, t, args.theorem, args.u, args.k)
    print(f"theorem: {report.theorem}")
    print(f"u: {report.u}")
    print(f"k: {report.k if report.k is not None else 'none'}")
    for note in report.notes:
        print(f"note: {note}")
    _print_bool("verdict", report.verdict)
    return 0 if report.verdict else 1


def _analyze_sweep(args, g: Grammar) -> int:
    if args.max_len is None:
        print("error: --all needs --max-len", file=sys.stderr)
        return 2
    res = engine.enumerate_language(g, args.max_len)
    print("note: sweep uses the first derivation found per word; "
          "certificates are existential over trees")
    print(f"checked: {len(res.words)}")
    max_u = max_deg = 0
    all_strict = True
    for w in sorted(res.words, key=lambda w: (len(w), w)):
        d = engine.derive_word(g, w, _limits(args))
        t = build_tree(d)
        u_obs, _ = analysis.max_dependency_count(t)
        strict, degree = analysis.slow_branching(t, "strict")
        max_u = max(max_u, u_obs)
        max_deg = max(max_deg, degree)
        all_strict = all_strict and strict
        print(f"w={_word_str(w)} u={u_obs} degree={degree} "
              f"strict={'true' if strict else 'false'}")
    print(f"max_u_observed: {max_u}")
    print(f"max_degree: {max_deg}")
    _print_bool("all_strict", all_strict)
    return 0


def cmd_transform(args) -> int:
    g = _load(args.file)
    try:
        if args.mode == "metalinear":
            result = transform.metalinear_pipeline(g, args.u)
        else:
            result = transform.regular_pipeline(g, args.u)
    except SelfEmbedding as exc:
        print("error: self-embedding")
        print(f"witness: {exc.witness}")
        print(f"context: {exc.context}")
        return 1
    except NotSlowBranchingShape as exc:
        print("error: not slow-branching shape")
        print(f"detail: {exc}")
        if exc.chain:
            print(f"chain: {' '.join(str(i) for i in exc.chain)}")
        return 1
    if args.dump_stages:
        import os

        os.makedirs(args.dump_stages, exist_ok=True)
        for i, (name, stage) in enumerate(result.stages, 1):
            path = os.path.join(args.dump_stages, f"{i:02d}-{name}.gg")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(serialize_grammar(stage))
            print(f"stage: {path}")
    final = result.grammar
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(serialize_grammar(final))
    gamma_path = args.output + ".gamma"
    with open(gamma_path, "w", encoding="utf-8") as fh:
        fh.write(serialize_projection(result.gamma))
    print(f"mode: {args.mode}")
    print(f"u: {args.u}")
    if result.k is not None:
        print(f"k: {result.k}")
    print(f"rules: {len(final.rules)}")
    print(f"output: {args.output}")
    print(f"gamma: {gamma_path}")
    return 0


def cmd_equiv(args) -> int:
    g1 = _load(args.file_a)
    g2 = _load(args.file_b)
    projection = None
    if args.project:
        with open(args.project, encoding="utf-8") as fh:
            projection = parse_projection(fh.read())
    verdict = engine.bounded_equiv(g1, g2, args.max_len, args.slack, projection)
    print(f"verdict: {verdict}")
    _print_bool("complete", verdict.complete)
    if verdict.equal:
        return 0
    print(f"witness: {_word_str(verdict.witness)}")
    print(f"side: {verdict.side}")
    return 1


def cmd_knf(args) -> int:
    g = _load(args.file)
    out = knf_split(g)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(serialize_grammar(out))
    print(f"rules: {len(out.rules)}")
    print(f"output: {args.output}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="ggkit", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="report grammar form flags")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", help="bounded language enumeration")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--slack", type=int, default=None)
    p.add_argument("--max-nodes", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    def add_search_flags(p):
        p.add_argument("--max-steps", type=int, default=100)
        p.add_argument("--max-form-len", type=int, default=40)

    p = sub.add_parser("derive", help="search a derivation for a word")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    add_search_flags(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("tree", help="derive a word and export its tree as DOT")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--dot", required=True)
    add_search_flags(p)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("analyze", help="tree analysis and certificate checks")
    p.add_argument("file")
    p.add_argument("--word")
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--theorem", type=int, choices=(1, 2, 3, 4), default=None)
    p.add_argument("--u", type=int, default=0)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--lenient", action="store_true")
    add_search_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("transform", help="run a theorem construction pipeline")
    p.add_argument("file")
    p.add_argument("--mode", choices=("metalinear", "regular"), required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--dump-stages", default=None)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("equiv", help="bounded language comparison")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--slack", type=int, default=None)
    p.add_argument("--project", default=None)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("knf", help="split a linear core grammar to Kuroda normal form")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_knf)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (ToolkitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
