import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from t36mf.pencil import (
    GF, QQ, BadSize, EigenvalueNotInField, Pencil, PencilBlock, PencilFormatError, block, blocks_pencil, conjugate,
    decompose, direct_sum, dump_pencil, load_pencil, parse_field, random_invertible, rank,
)

from conftest import random_blocks

K = GF(101)


def test_block_examples():
    a2 = block("A", 2)
    assert a2.X1 == ((1, 0), (0, 1)) and a2.X2 == ((0, 1), (0, 0))
    c1 = block("C", 1)
    assert c1.X1 == ((1, 0),) and c1.X2 == ((0, 1),)
    assert block("D", 1) == c1.transpose()
    with pytest.raises(BadSize):
        block("A", 0)


def test_direct_sum_examples():
    assert direct_sum([]).shape == (0, 0)
    assert direct_sum([block("A", 1)]) == block("A", 1)
    s = direct_sum([block("A", 1), block("B", 1)])
    assert s.X1 == ((1, 0), (0, 0)) and s.X2 == ((0, 0), (0, 1))


def test_decompose_canonical_blocks():
    assert decompose(block("A", 3)) == [PencilBlock("A", 3)]
    assert decompose(block("C", 2)) == [PencilBlock("C", 2)]
    assert decompose(block("D", 2)) == [PencilBlock("D", 2)]
    assert decompose(block("B", 2)) == [PencilBlock("B", 2)]


@pytest.mark.parametrize("alpha", [Fraction(5), Fraction(-2, 3)])
def test_one_by_one_regular(alpha):
    assert decompose(Pencil.make([[1]], [[alpha]])) == [PencilBlock("Regular", 1, alpha)]


def test_one_by_one_zero_alpha_is_A():
    assert decompose(Pencil.make([[1]], [[0]])) == [PencilBlock("A", 1)]


def test_conjugated_C1_D2():
    rng = random.Random(7)
    p = direct_sum([block("C", 1, k=K), block("D", 2, k=K)], K)
    q = conjugate(p, random_invertible(K, p.rows, rng), random_invertible(K, p.cols, rng))
    assert decompose(q) == [PencilBlock("C", 1), PencilBlock("D", 2)]


def test_eigenvalue_outside_field():
    # t1^2 + t2^2 has no root over Q
    p = Pencil.make([[1, 0], [0, 1]], [[0, -1], [1, 0]])
    with pytest.raises(EigenvalueNotInField):
        decompose(p)


def test_zero_row_is_bad_size():
    with pytest.raises(BadSize):
        decompose(Pencil.make([[1], [0]], [[0], [0]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_round_trip_gf101(seed):
    rng = random.Random(seed)
    blocks = random_blocks(rng, K)
    p = blocks_pencil(blocks, K)
    if p.rows and p.cols:
        p = conjugate(p, random_invertible(K, p.rows, rng), random_invertible(K, p.cols, rng))
    assert decompose(p) == sorted(blocks, key=lambda b: b.sort_key(K))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_rank_invariant_under_equivalence(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 5), rng.randint(1, 5)
    M = [[K.random(rng) if rng.random() < 0.5 else 0 for _ in range(m)] for _ in range(n)]
    S, T = random_invertible(K, n, rng), random_invertible(K, m, rng)
    p = conjugate(Pencil.make(M, M, K), S, T)
    assert rank(K, p.X1) == rank(K, M)


def test_file_round_trip(tmp_path):
    p = direct_sum([block("C", 1, k=K), block("Regular", 2, alpha=3, k=K)], K)
    text = json.dumps(dump_pencil(p))
    assert load_pencil(text) == p
    assert load_pencil(json.loads(text)) == p


@pytest.mark.parametrize("bad", [
    "not json",
    '{"field": "Q", "X1": [[1]]}',
    '{"field": "Fp:100", "X1": [[1]], "X2": [[0]]}',
    '{"field": "Q", "X1": [[1, 2]], "X2": [[0]]}',
    '{"field": "Q", "X1": [["x"]], "X2": [[0]]}',
])
def test_file_errors(bad):
    with pytest.raises(PencilFormatError):
        load_pencil(bad)


def test_fields():
    assert parse_field("Q") is QQ
    assert parse_field("Fp:7") == GF(7)
    assert GF(7)("1/2") == 4
