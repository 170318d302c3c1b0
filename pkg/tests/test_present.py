import random

import pytest
from hypothesis import given, settings, strategies as st

from t36mf.canon import ONE_F, StripedMatrix, build_P
from t36mf.curve import StripeKind, make_curve
from t36mf.factor import build_Q, load_fixture
from t36mf.poly import ZERO, PolyMatrix, X, Y, det, parse
from t36mf.present import Presentation, eliminate_units, minimal_presentation, relations_from_P
from t36mf.verify import equivalent_up_to_signed_permutation, is_mf
from t36mf.words import Word, enumerate_words

C = make_curve()


def single_unit_P():
    return StripedMatrix(((ONE_F,),), (StripeKind.R1,), ("u",), ("v",))


def relation(p: Presentation, tag):
    i = p.row_tags.index(tag)
    return {g: e for g, e in zip(p.generators, p.relations.row(i)) if e}


def test_a2_relations_before_elimination():
    p = relations_from_P(build_P(Word("a", 2)))
    # z' v1 = y u^2 + y u1 - ~u1, read with the R12' row split into (u1, ~u1)
    assert relation(p, ("ext", "v1")) == {"v1": C.zp, "u^2": -Y, "~u1": parse("-1")}
    assert relation(p, ("ann", "u^2")) == {"u^2": C.z}


def test_single_unit_relations():
    p = relations_from_P(single_unit_P())
    assert p.generators == ("u", "v")
    assert relation(p, ("ext", "v")) == {"v": C.zp, "u": parse("-1")}
    assert relation(p, ("ann", "u")) == {"u": X}


def test_empty_P_gives_annihilators_only():
    P = StripedMatrix(((),), (StripeKind.R2,), ("u",), ())
    p = relations_from_P(P)
    assert p.row_tags == (("ann", "u"),)
    assert p.relations == PolyMatrix.from_rows([[C.z]])


def test_single_elimination_step():
    m = eliminate_units(relations_from_P(single_unit_P()))
    assert m.labels == ("v",)
    assert m.Q == PolyMatrix.from_rows([[X * C.zp]])


def test_no_units_is_fixed_point():
    Q, labels, _ = load_fixture("a:2")
    p = Presentation(labels, Q, tuple(("ann", l) for l in labels))
    m = eliminate_units(p)
    assert m.Q == Q and m.labels == labels


def test_a2_pipeline_matches_Q_a2():
    m = minimal_presentation(build_P(Word("a", 2)))
    Q, _, _ = load_fixture("a:2")
    assert m.Q.rows == 6
    assert equivalent_up_to_signed_permutation(m.Q, Q)


@pytest.mark.parametrize("w", [w for w in enumerate_words(3) if not w.cuts])
def test_pipeline_output_is_a_factorization(w):
    assert is_mf(minimal_presentation(build_P(w)).Q, C).ok


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([w for w in enumerate_words(2) if not w.cuts]), st.integers(0, 10 ** 6))
def test_pivot_order_does_not_change_det(w, seed):
    P = build_P(w)
    base = det(minimal_presentation(P).Q)
    other = det(minimal_presentation(P, rng=random.Random(seed)).Q)
    assert other in (base, -base)
