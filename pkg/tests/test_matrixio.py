import pytest
from hypothesis import given, settings

from t36mf.factor import FIXTURE_WORDS, load_fixture
from t36mf.matrixio import MatrixFormatError, dumps_matrix, loads_matrix, read_matrix, write_matrix
from t36mf.poly import PolyMatrix

from conftest import sparse_matrices


@settings(max_examples=30, deadline=None)
@given(sparse_matrices(3, density=0.5))
def test_round_trip(m):
    back, lam, meta = loads_matrix(dumps_matrix(m, "2", word="a:1"))
    assert back == m and lam == "2" and meta == {"word": "a:1"}


def test_one_row_per_line(tmp_path):
    Q, _, _ = load_fixture("a:2")
    path = tmp_path / "q.json"
    write_matrix(str(path), Q)
    lines = path.read_text().splitlines()
    assert sum(1 for l in lines if l.strip().startswith("[")) == 6
    assert read_matrix(str(path))[0] == Q


@pytest.mark.parametrize("word", FIXTURE_WORDS)
def test_fixtures_load(word):
    Q, labels, meta = load_fixture(word)
    assert Q.is_square() and len(labels) in (0, Q.rows)


@pytest.mark.parametrize("bad", [
    "nope",
    "[]",
    '{"entries": 3}',
    '{"rows": 2, "cols": 1, "entries": [["x"]]}',
    '{"entries": [["x^"]]}',
])
def test_format_errors(bad):
    with pytest.raises(MatrixFormatError):
        loads_matrix(bad)


def test_empty_matrix():
    m, _, _ = loads_matrix('{"rows": 0, "cols": 0, "entries": []}')
    assert m == PolyMatrix.zeros(0, 0)
