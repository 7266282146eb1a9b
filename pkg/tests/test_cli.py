import json
from fractions import Fraction

import pytest

from minent.cli import main
from minent.core import Graph, IntervalSet, SetSystem
from minent.io import (ParseError, gen_random, parse_graph, parse_intervals,
                       parse_joint_table, parse_setcover, random_intervals,
                       random_regular_graph, random_setcover, serialize_graph,
                       serialize_intervals, serialize_setcover)

WORKED_SC = "setcover 4 3\n0 1 2\n2 3\n3\n"


def test_parse_graph():
    g = parse_graph("graph 3 2\n0 1\n1 2\n")
    assert g.n == 3 and g.edges == ((0, 1), (1, 2))


def test_parse_graph_weights():
    g = parse_graph("graph 2 1\n0 1\nweights 0.25 0.75\n")
    assert g.weights == (0.25, 0.75)


def test_parse_graph_errors():
    with pytest.raises(ParseError):
        parse_graph("graph 3 2\n0 1\n0 1\n")  # duplicate edge
    with pytest.raises(ParseError):
        parse_graph("graph 3\n")
    with pytest.raises(ParseError):
        parse_graph("graph 2 1\n0 5\n")
    with pytest.raises(ParseError) as err:
        parse_graph("graph 3 2\n0 1\nx y\n")
    assert "line 3" in str(err.value)


def test_parse_setcover():
    s = parse_setcover(WORKED_SC)
    assert s.universe_size == 4
    assert s.sets == ((0, 1, 2), (2, 3), (3,))


def test_parse_intervals():
    iv = parse_intervals("intervals 2\n0/1 2/1\n1/2 3/2\n")
    assert iv.intervals == ((Fraction(0), Fraction(2)), (Fraction(1, 2), Fraction(3, 2)))
    with pytest.raises(ParseError):
        parse_intervals("intervals 1\n1/1 1/1\n")


def test_roundtrip_graph():
    g = Graph(4, [(0, 1), (2, 3)], weights=[0.1, 0.2, 0.3, 0.4])
    assert parse_graph(serialize_graph(g)) == g
    g2 = Graph(5, [(0, 4), (1, 3)])
    assert parse_graph(serialize_graph(g2)) == g2


def test_roundtrip_setcover():
    s = SetSystem(4, [[0, 1, 2], [2, 3], [3]])
    assert parse_setcover(serialize_setcover(s)) == s


def test_roundtrip_intervals():
    iv = IntervalSet([(Fraction(1, 3), Fraction(2, 3)), (0, 5)])
    assert parse_intervals(serialize_intervals(iv)) == iv


def test_parse_joint_table():
    t = parse_joint_table("x,0,1\na,0.25,0.25\nb,0.25,0\nc,0,0.25\n")
    assert t.x_labels == ("a", "b", "c")
    assert t.probs[1] == (0.25, 0.0)


def test_generators_deterministic():
    assert gen_random("graph", seed=5, n=8, m=9, k=0, delta=0) == \
        gen_random("graph", seed=5, n=8, m=9, k=0, delta=0)
    assert random_setcover(6, 3, seed=2).sets == random_setcover(6, 3, seed=2).sets
    assert random_intervals(5, seed=4) == random_intervals(5, seed=4)


def test_regular_generator():
    g = random_regular_graph(10, 3, seed=0)
    assert g.m == 15
    assert all(g.degree(v) == 3 for v in range(10))


def test_interval_generator_feeds_pipeline():
    from minent.coloring import exact_coloring, interval_mec
    from minent.core import interval_graph
    iv = random_intervals(8, seed=1)
    interval_mec(iv)
    exact_coloring(interval_graph(iv))


def _run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_cli_setcover_greedy(tmp_path, capsys):
    f = tmp_path / "ex.sc"
    f.write_text(WORKED_SC)
    code, out = _run(capsys, ["setcover", "greedy", "--input", str(f), "--json"])
    assert code == 0
    report = json.loads(out)
    assert report["entropy_bits"] == pytest.approx(0.8113, abs=1e-3)
    assert report["counts"] == [3, 1, 0]


def test_cli_setcover_certify(tmp_path, capsys):
    f = tmp_path / "ex.sc"
    f.write_text(WORKED_SC)
    code, out = _run(capsys, ["setcover", "certify", "--input", str(f),
                              "--json", "--assert-bound"])
    assert code == 0
    report = json.loads(out)
    assert report["violations"] == []
    assert report["checks"]["dual_feasible"] is True


def test_cli_orient_estimate(tmp_path, capsys):
    g = random_regular_graph(8, 4, seed=3)
    f = tmp_path / "reg.g"
    f.write_text(serialize_graph(g))
    code, out = _run(capsys, ["orient", "estimate", "--input", str(f),
                              "--epsilon", "0.5", "--delta", "0.05",
                              "--seed", "7", "--json"])
    assert code == 0
    report = json.loads(out)
    assert report["s"] == 473  # Delta = 4
    assert "H" in report


def test_cli_color_interval(tmp_path, capsys):
    f = tmp_path / "iv.txt"
    f.write_text(serialize_intervals(random_intervals(6, seed=2)))
    code, out = _run(capsys, ["color", "interval", "--input", str(f), "--json"])
    assert code == 0
    report = json.loads(out)
    assert report["entropy_bits"] <= report["lower_bound_H"] + 1.0 + 1e-9


def test_cli_graphent_split(tmp_path, capsys):
    f = tmp_path / "c4.g"
    f.write_text("graph 4 4\n0 1\n1 2\n2 3\n0 3\n")
    code, out = _run(capsys, ["graphent", "split", "--input", str(f),
                              "--json", "--assert-bound"])
    assert code == 0
    assert abs(json.loads(out)["gap_bits"]) <= 2e-6


def test_cli_gen_jk(capsys):
    code = main(["gen", "jk", "--k", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert len(parse_intervals(out)) == 6


def test_cli_app_confusability(tmp_path, capsys):
    f = tmp_path / "t.csv"
    f.write_text("x,0,1\na,0.25,0.25\nb,0.25,0\nc,0,0.25\n")
    code, out = _run(capsys, ["app", "confusability", "--input", str(f), "--json"])
    assert code == 0
    report = json.loads(out)
    assert sorted(map(tuple, report["edges"])) == [("a", "b"), ("a", "c")]


def test_cli_app_haplotype(tmp_path, capsys):
    f = tmp_path / "panel.txt"
    f.write_text("0?\n?1\n")
    code, out = _run(capsys, ["app", "haplotype", "--input", str(f), "--json"])
    assert code == 0
    report = json.loads(out)
    assert report["entropy_bits"] == 0.0
    assert report["assignment"] == ["01", "01"]


def test_cli_input_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.g"
    f.write_text("graph 3 2\n0 1\n0 1\n")
    assert main(["orient", "biased", "--input", str(f)]) == 2
    assert main(["setcover", "greedy", "--input", str(tmp_path / "missing")]) == 2


def test_cli_unknown_flag_exits_2(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["setcover", "greedy", "--nope"])
    assert exc.value.code == 2


def test_cli_report_deterministic(tmp_path, capsys):
    f = tmp_path / "ex.sc"
    f.write_text(WORKED_SC)
    argv = ["setcover", "certify", "--input", str(f), "--json", "--seed", "3"]
    _, out1 = _run(capsys, argv)
    _, out2 = _run(capsys, argv)
    r1, r2 = json.loads(out1), json.loads(out2)
    r1.pop("timing_ms"), r2.pop("timing_ms")
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


def test_report_numbers_roundtrip(tmp_path, capsys):
    f = tmp_path / "ex.sc"
    f.write_text(WORKED_SC)
    _, out = _run(capsys, ["setcover", "greedy", "--input", str(f), "--json"])
    report = json.loads(out)
    assert json.loads(json.dumps(report)) == report
