"""End-to-end command-line checks: formats, round-trips, exit codes."""

import io

import pytest

from cliquedim import generate, parse_class_text, parse_certificate
from cliquedim.cli import corpus, main
from cliquedim.trees import parse_tree


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_class(tmp_path, name="cls.txt", family="paper_example_sec6", universe=4):
    from cliquedim import format_class_text

    path = tmp_path / name
    path.write_text(format_class_text(generate(family, universe=universe)))
    return str(path)


def test_every_command_emits_seed_header(capsys, tmp_path):
    path = write_class(tmp_path)
    for argv in [
        ("gen", "full", "--universe", "2"),
        ("graph", path, "--m", "1"),
        ("omega", path, "--m", "1"),
        ("omega-star", path, "--m", "1"),
        ("vc", path),
        ("ld", path),
        ("cd", path),
        ("cd-star", path),
        ("balanced", path, "--m", "2"),
        ("tree-from-clique", path, "--m", "2"),
        ("curves", path, "--m-max", "1"),
    ]:
        code, out, err = run(capsys, *argv)
        assert code == 0, (argv, err)
        assert out.startswith("# seed=0\n"), argv


def test_seed_is_echoed(capsys, tmp_path):
    path = write_class(tmp_path, family="full", universe=2)
    _, out, _ = run(capsys, "vc", path, "--seed", "17")
    assert out.startswith("# seed=17\n")


def test_gen_round_trips_through_parser(capsys):
    code, out, _ = run(capsys, "gen", "thresholds", "--universe", "3")
    assert code == 0
    assert parse_class_text(out) == generate("thresholds", universe=3)


def test_gen_output_is_deterministic(capsys):
    _, a, _ = run(capsys, "gen", "random", "--universe", "4", "--count", "5", "--seed", "3")
    _, b, _ = run(capsys, "gen", "random", "--universe", "4", "--count", "5", "--seed", "3")
    assert a == b


def test_stdin_dash_reads_class(capsys, monkeypatch):
    from cliquedim import format_class_text

    text = format_class_text(generate("full", universe=2))
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, out, _ = run(capsys, "vc", "-")
    assert code == 0
    assert out.splitlines()[-1] == "vc=2"


def test_omega_frozen_line(capsys, tmp_path):
    path = write_class(tmp_path)
    _, out, _ = run(capsys, "omega", path, "--m", "3")
    assert out.splitlines()[-1] == "omega=8"


def test_omega_verbose_members_validate(capsys, tmp_path):
    path = write_class(tmp_path, family="full", universe=2)
    code, out, _ = run(capsys, "omega", path, "--m", "2", "--verbose")
    lines = out.splitlines()
    assert any(l.startswith("omega=4") for l in lines)
    assert sum(1 for l in lines if l.startswith("v ")) == 4


def test_omega_star_plain_and_verbose(capsys, tmp_path):
    path = write_class(tmp_path, family="singleton", universe=2)
    _, out, _ = run(capsys, "omega-star", path, "--m", "1")
    assert out.splitlines()[-1] == "1/1"
    _, verbose, _ = run(capsys, "omega-star", path, "--m", "1", "--verbose")
    cert = parse_certificate(verbose)
    assert cert.value == 1


def test_dimension_lines(capsys, tmp_path):
    path = write_class(tmp_path)
    _, out, _ = run(capsys, "vc", path)
    assert out.splitlines()[-1] == "vc=2"
    _, out, _ = run(capsys, "ld", path)
    assert out.splitlines()[-1] == "ld=2"
    _, out, _ = run(capsys, "cd", path)
    assert out.splitlines()[-1] == "cd=3 exact"
    _, out, _ = run(capsys, "cd-star", path)
    assert out.splitlines()[-1] == "cd_star=3 exact"


def test_graph_output_matches_library(capsys, tmp_path):
    path = write_class(tmp_path, family="disjoint_pairs", universe=2)
    _, out, _ = run(capsys, "graph", path, "--m", "2")
    body = [l for l in out.splitlines() if not l.startswith("#")]
    assert body[0] == "p 6 7"


def test_graph_fingerprint_is_stable(capsys, tmp_path):
    path = write_class(tmp_path)
    _, a, _ = run(capsys, "graph", path, "--m", "2", "--fingerprint")
    _, b, _ = run(capsys, "graph", path, "--m", "2", "--fingerprint")
    assert a == b
    assert any(l.startswith("fingerprint ") for l in a.splitlines())


def test_ld_verbose_round_trips_to_clique(capsys, tmp_path):
    path = write_class(tmp_path)
    code, out, _ = run(capsys, "ld", path, "--verbose")
    assert code == 0
    tree_file = tmp_path / "tree.txt"
    tree_file.write_text(out)
    parse_tree(out)  # the verbose output parses as a tree
    code, out2, _ = run(capsys, "clique-from-tree", path, "--tree", str(tree_file))
    assert code == 0
    last = out2.splitlines()
    assert "size=4" in last[-2]
    assert last[-1] == "members=1,2,8,9"


def test_tree_from_clique_emits_parseable_tree(capsys, tmp_path):
    path = write_class(tmp_path)
    code, out, _ = run(capsys, "tree-from-clique", path, "--m", "3")
    assert code == 0
    tree = parse_tree(out)
    assert tree is not None


def test_balanced_report_fields(capsys, tmp_path):
    path = write_class(tmp_path)
    code, out, _ = run(capsys, "balanced", path, "--m", "3")
    assert code == 0
    fields = dict(
        l.split("=", 1) for l in out.splitlines() if not l.startswith("#")
    )
    assert set(fields) == {
        "point",
        "count_zero",
        "count_one",
        "threshold",
        "clique_size",
        "iterations",
        "deletions",
        "edges_dropped",
        "surviving_edges",
    }
    assert fields["clique_size"] == "8"
    assert fields["threshold"] == "7/6"


def test_curves_csv_shape(capsys, tmp_path):
    path = write_class(tmp_path)
    code, out, _ = run(capsys, "curves", path, "--m-max", "2")
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert lines[0] == "m,num_vertices,omega,omega_exact,omega_star_num,omega_star_den,two_pow_m"
    rows = [l.split(",") for l in lines[1:]]
    assert [r[0] for r in rows] == ["1", "2"]
    assert rows[0][1] == "8"  # vertices of G_1
    comments = [l for l in out.splitlines() if l.startswith("#")]
    assert any("vc=2" in c for c in comments)
    assert any("ld=2" in c for c in comments)


def test_boost_skip_when_no_separation(capsys, monkeypatch):
    from cliquedim import format_class_text

    text = format_class_text(generate("full", universe=2))
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, out, _ = run(capsys, "boost", "-", "--m0", "2", "--m", "2", "--trials", "10")
    assert code == 0
    assert "SKIP no separation at m0=2" in out


def test_boost_small_run_passes(capsys, tmp_path):
    path = write_class(tmp_path, family="disjoint_pairs", universe=2)
    code, out, _ = run(
        capsys, "boost", path, "--m0", "2", "--m", "3", "--trials", "200", "--shadow"
    )
    assert code == 0
    assert out.splitlines()[0] == "# seed=0"
    assert "T=563" in out.splitlines()[1]
    assert "epsilon=1/4" in out.splitlines()[1]
    assert out.count(" PASS") == 8
    assert any(l.startswith("shadow ") for l in out.splitlines())


def test_verify_lemmas_summary(capsys):
    code, out, _ = run(capsys, "verify-lemmas")
    assert code == 0
    last = out.splitlines()[-1]
    assert last.startswith("summary: ")
    assert last.endswith("0 failures")
    assert not any(l.startswith("FAIL") for l in out.splitlines())


def test_exit_codes(capsys, tmp_path):
    # usage error from argparse
    with pytest.raises(SystemExit) as exc:
        main(["omega"])  # missing required --m
    assert exc.value.code == 2
    capsys.readouterr()

    # input error: malformed class text
    bad = tmp_path / "bad.txt"
    bad.write_text("points 2\nhypotheses 1\n0\n")
    code, _, err = run(capsys, "omega", str(bad), "--m", "1")
    assert code == 2
    assert err.startswith("error:")

    # missing file
    code, _, err = run(capsys, "vc", str(tmp_path / "nope.txt"))
    assert code == 2

    # resource cap
    path = write_class(tmp_path)
    code, _, err = run(capsys, "graph", path, "--m", "3", "--vertex-cap", "5")
    assert code == 3
    assert "resource limit" in err


def test_out_flag_writes_file(capsys, tmp_path):
    path = write_class(tmp_path, family="full", universe=2)
    target = tmp_path / "result.txt"
    code, out, _ = run(capsys, "vc", path, "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().splitlines()[-1] == "vc=2"


def test_corpus_is_stable():
    names = [name for name, _ in corpus()]
    assert len(names) == 20
    assert len(set(names)) == 20
    assert corpus() == corpus()
    for _, cls in corpus():
        assert not cls.is_empty
