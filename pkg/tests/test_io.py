import pytest

from mwisolve import io as gio
from mwisolve.errors import MalformedInput
from mwisolve.graph import load_graph

METIS_P3 = "3 2 10\n1 2\n3 1 3\n1 2\n"
DIMACS_P3 = "c tiny path\np edge 3 2\nv 1 1\nv 2 3\nv 3 1\ne 1 2\ne 2 3\n"


def test_parse_metis_weighted():
    data = gio.parse_metis(METIS_P3)
    assert data.n == 3
    assert data.weights == [1, 3, 1]
    assert sorted(data.edges) == [(0, 1), (1, 2)]
    assert data.index_base == 1
    g = load_graph(data)
    assert g.edge_count == 2


def test_parse_metis_unweighted_defaults_to_one():
    data = gio.parse_metis("2 1\n2\n1\n")
    assert data.weights is None
    g = load_graph(data)
    assert g.weights == [1, 1]


def test_parse_metis_bad_neighbor():
    with pytest.raises(MalformedInput):
        gio.parse_metis("2 1 10\n1 5\n1 1\n")


def test_parse_metis_wrong_line_count():
    with pytest.raises(MalformedInput):
        gio.parse_metis("3 1 10\n1 2\n1 1\n")


def test_parse_dimacs():
    data = gio.parse_dimacs(DIMACS_P3)
    assert data.n == 3
    assert data.weights == [1, 3, 1]
    assert sorted(data.edges) == [(0, 1), (1, 2)]


def test_parse_dimacs_requires_problem_line():
    with pytest.raises(MalformedInput):
        gio.parse_dimacs("e 1 2\n")


def test_parse_edge_list_zero_and_one_indexed():
    d0 = gio.parse_edge_list("0 1\n1 2\n", index_base=0)
    d1 = gio.parse_edge_list("1 2\n2 3\n", index_base=1)
    assert d0.edges == d1.edges == [(0, 1), (1, 2)]
    assert d0.n == d1.n == 3


def test_parse_weight_file():
    assert gio.parse_weight_file("3\n# comment\n7\n 2 \n") == [3, 7, 2]


def test_detect_format():
    assert gio.detect_format("x.graph") == "metis"
    assert gio.detect_format("x.dimacs") == "dimacs"
    assert gio.detect_format("x.edges") == "edges"
    with pytest.raises(MalformedInput):
        gio.detect_format("x.unknown")


def test_solution_round_trip(tmp_path):
    path = tmp_path / "sol.txt"
    gio.write_solution(str(path), {4, 1, 2}, index_base=1)
    assert path.read_text() == "2\n3\n5\n"
    assert gio.read_solution(str(path), index_base=1) == [1, 2, 4]


def test_metis_round_trip(tmp_path):
    data = gio.parse_metis(METIS_P3)
    out = tmp_path / "copy.graph"
    gio.write_metis(data, data.weights, str(out))
    again = gio.parse_metis(out.read_text())
    assert again.weights == data.weights
    assert sorted(again.edges) == sorted(data.edges)
