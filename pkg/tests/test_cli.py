import pytest

from conftest import GRAMMARS
from ggkit import parse_grammar, parse_projection
from ggkit.cli import main

EXAMPLE2 = str(GRAMMARS / "example2.gg")
G_AB = str(GRAMMARS / "g_ab.gg")
G_REG = str(GRAMMARS / "g_reg.gg")
ANBN = str(GRAMMARS / "anbn_left.gg")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_reports_flags_and_pcs(capsys):
    code, out, _ = run(capsys, "classify", EXAMPLE2)
    assert code == 0
    assert "linear_core: true" in out
    assert "left_linear_core: false" in out
    assert "propagating: false" in out
    assert "k_linear: none" in out
    assert "pcs: 10 12" in out


def test_enumerate_lists_words_in_length_order(capsys):
    code, out, _ = run(capsys, "enumerate", G_AB, "--max-len", "2")
    assert code == 0
    lines = out.splitlines()
    at = lines.index("words:")
    assert "count: 6" in lines
    assert lines[at + 1 :] == ["eps", "a", "b", "a a", "a b", "b b"]


def test_derive_prints_the_step_trace(capsys):
    code, out, _ = run(capsys, "derive", G_AB, "--word", "ab")
    assert code == 0
    assert "found: true" in out
    assert "steps: 6" in out
    assert "=> a b" in out


def test_derive_missing_word_exits_one(capsys):
    code, out, _ = run(capsys, "derive", G_AB, "--word", "ba", "--max-steps", "40")
    assert code == 1
    assert "found: false" in out
    assert "reason:" in out


def test_tree_writes_dot(tmp_path, capsys):
    dot = tmp_path / "t.dot"
    code, out, _ = run(capsys, "tree", G_AB, "--word", "ab", "--dot", str(dot))
    assert code == 0
    assert "frontier: a b" in out
    assert "dependencies: 1" in out
    assert dot.read_text().startswith("digraph derivation {")


def test_analyze_word_report(capsys):
    code, out, _ = run(capsys, "analyze", G_AB, "--word", "ab")
    assert code == 0
    assert "u_observed: 1" in out
    assert "non_neighbor_violations: 0" in out
    assert "pairs: 1" in out
    assert "context=[4]" in out


def test_analyze_certificate_verdict_drives_exit_code(capsys):
    code, out, _ = run(
        capsys, "analyze", G_AB, "--word", "ab", "--theorem", "1", "--u", "1", "--k", "1"
    )
    assert code == 0 and "verdict: true" in out
    code, out, _ = run(
        capsys, "analyze", G_AB, "--word", "ab", "--theorem", "1", "--u", "0"
    )
    assert code == 1 and "verdict: false" in out


def test_analyze_sweep(capsys):
    code, out, _ = run(capsys, "analyze", G_AB, "--all", "--max-len", "2")
    assert code == 0
    assert "checked: 6" in out
    assert "max_u_observed: 1" in out
    assert "all_strict: true" in out


def test_analyze_needs_word_or_all(capsys):
    code, _, err = run(capsys, "analyze", G_AB)
    assert code == 2
    assert "analyze needs --word or --all" in err


def test_transform_metalinear_writes_grammar_and_gamma(tmp_path, capsys):
    out_path = tmp_path / "out.gg"
    code, out, _ = run(
        capsys, "transform", G_AB, "--mode", "metalinear", "--u", "1",
        "-o", str(out_path), "--dump-stages", str(tmp_path / "stages"),
    )
    assert code == 0
    assert "k: 2" in out
    g = parse_grammar(out_path.read_text())
    assert g.start == "S<|>0"
    table = parse_projection((tmp_path / "out.gg.gamma").read_text())
    assert table["A<|4>"] == "A"
    assert (tmp_path / "stages" / "01-raw.gg").exists()
    assert (tmp_path / "stages" / "04-normalized.gg").exists()


def test_transform_self_embedding_exits_one(tmp_path, capsys):
    code, out, _ = run(
        capsys, "transform", ANBN, "--mode", "regular", "--u", "0",
        "-o", str(tmp_path / "out.gg"),
    )
    assert code == 1
    assert "error: self-embedding" in out
    assert "witness: S<|>" in out


def test_equiv_equal_and_differ(tmp_path, capsys):
    code, out, _ = run(capsys, "equiv", G_AB, G_REG, "--max-len", "6")
    assert code == 0
    assert "verdict: Equal(6)" in out
    code, out, _ = run(capsys, "equiv", G_AB, ANBN, "--max-len", "4")
    assert code == 1
    assert "witness: eps" in out
    assert "side: left" in out


def test_equiv_with_projection_table(tmp_path, capsys):
    out_path = tmp_path / "ann.gg"
    run(capsys, "transform", G_AB, "--mode", "metalinear", "--u", "1", "-o", str(out_path))
    code, out, _ = run(
        capsys, "equiv", G_AB, str(out_path), "--max-len", "8",
        "--project", str(out_path) + ".gamma",
    )
    assert code == 0
    assert "verdict: Equal(8)" in out


def test_knf_roundtrips_through_a_file(tmp_path, capsys):
    out_path = tmp_path / "knf.gg"
    code, out, _ = run(capsys, "knf", EXAMPLE2, "-o", str(out_path))
    assert code == 0
    g = parse_grammar(out_path.read_text())
    assert all(len(r.rhs) <= 2 for r in g.rules)


def test_missing_file_is_a_usage_error(capsys):
    code, _, err = run(capsys, "classify", "no-such-file.gg")
    assert code == 2
    assert "error:" in err


def test_unknown_subcommand_is_a_usage_error(capsys):
    assert main(["frobnicate"]) == 2


def test_word_argument_forms(capsys):
    code, out, _ = run(capsys, "derive", G_AB, "--word", "eps")
    assert code == 0 and "found: true" in out
    code, out, _ = run(capsys, "derive", G_AB, "--word", "a b")
    assert code == 0 and "found: true" in out
