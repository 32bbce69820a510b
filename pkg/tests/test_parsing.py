import json

import pytest
from hypothesis import given

from relstsp.parsing import (
    ParseError,
    parse_abs_word,
    parse_matrix,
    parse_rel_word,
    parse_vdk_gen,
    parse_vdk_word,
    parse_vector,
)
from relstsp.relative import RelWord
from relstsp.ring import Ring
from relstsp.space import HVector
from relstsp.transvections import SpMatrix, elementary_transvection
from relstsp.words import AbsWord
from strategies import vectors

Z = Ring.integers()


def test_vector_syntax():
    v = parse_vector("e(-2)*3 + e(1)", Z, 3)
    assert v == HVector.from_map(Z, 3, {-2: 3, 1: 1})
    assert parse_vector("-e(1) - e(3)*2", Z, 3) == HVector.from_map(Z, 3, {1: -1, 3: -2})
    assert parse_vector("0", Z, 3).is_zero()
    assert parse_vector("[1,2,3,4,5,6]", Z, 3) == HVector(Z, 3, (1, 2, 3, 4, 5, 6))
    assert parse_vector("e(1)*7", Ring.zmod(5), 3) == HVector.basis(Ring.zmod(5), 3, 1, 2)


@given(vectors(Z, 3))
def test_vector_round_trip(v):
    assert parse_vector(str(v), Z, 3) == v
    assert parse_vector(v.dense(), Z, 3) == v


@pytest.mark.parametrize(
    "text,pos",
    [("e(4)", 2), ("e(1) +", 6), ("[1,2,3]", 7), ("e(1) e(2)", 5), ("3", 0), ("e(0)", 2)],
)
def test_vector_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_vector(text, Z, 3)
    assert exc.value.pos == pos


def test_abs_word_syntax():
    w = parse_abs_word("X(1,2;3) X(2,-2;1)^-1", Z, 3)
    assert w == AbsWord.x(Z, 3, 1, 2, 3) * AbsWord.x(Z, 3, 2, -2, 1, -1)
    assert str(w) == "X(1,2;3) X(2,-2;1)^-1"
    assert parse_abs_word("", Z, 3) == parse_abs_word("1", Z, 3) == AbsWord.empty(Z, 3)
    assert parse_abs_word("X(1,2;3)", Ring.zmod(5), 3).eval() == elementary_transvection(Ring.zmod(5), 3, 1, 2, 3)


@pytest.mark.parametrize("text,pos", [("X(1,1;2)", 2), ("X(1,2;3", 7), ("X(1,2;3)^2", 9), ("Y(1,2;3)", 0), ("X(1,5;3)", 4)])
def test_abs_word_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_abs_word(text, Z, 3)
    assert exc.value.pos == pos


def test_rel_word_syntax():
    w = parse_rel_word("<X(1,2;1)> |> Y(1,2;2) Y(2,-2;4)^-1", Z, 3)
    assert len(w.atoms) == 2
    assert w.atoms[0].g == AbsWord.x(Z, 3, 1, 2, 1).letters and w.atoms[1].g == ()
    assert w.atoms[1].sign == -1 and w.atoms[1].x.a == 4
    assert parse_rel_word("1", Z, 3) == RelWord.empty(Z, 3)
    with pytest.raises(ParseError):
        parse_rel_word("<X(1,2;1)> Y(1,2;2)", Z, 3)


def test_vdk_syntax():
    g = parse_vdk_gen("(word=X(2,1;1), i=1, v=e(3)*3, a=2, b=0)^-1", Z, 3)
    assert g.sign == -1 and g.u.vector == HVector.from_map(Z, 3, {1: 1, 2: 1})
    assert g.v == HVector.basis(Z, 3, 3, 3) and (g.a, g.b) == (2, 0)
    assert parse_vdk_gen(str(g), Z, 3) == g
    w = parse_vdk_word(str(g) + " " + str(g.inverse()), Z, 3)
    assert len(w) == 2 and not w.reduced()
    assert len(parse_vdk_word("1", Z, 3)) == 0
    # the word field is optional
    assert parse_vdk_gen("(i=2, v=0, a=0, b=4)", Z, 3).u.vector == HVector.basis(Z, 3, 2)


@pytest.mark.parametrize(
    "text",
    ["(i=1, v=e(-1), a=1, b=0)", "(i=1, v=0, a=1)", "(i=1, v=0, a=1, b=0, c=2)", "(i=1 v=0, a=1, b=0)"],
)
def test_vdk_errors(text):
    with pytest.raises(ParseError):
        parse_vdk_gen(text, Z, 3)


def test_matrix_syntax():
    M = elementary_transvection(Z, 3, 1, -1, 4)
    assert parse_matrix(json.dumps(M.rows and [list(r) for r in M.rows]), Z, 3) == M
    assert parse_matrix(json.dumps(SpMatrix.identity(Z, 3).rows), Z, 3).is_identity()
    for bad in ["[[1,2]]", "not json", json.dumps([[0] * 5] * 6), json.dumps([["x"] * 6] * 6)]:
        with pytest.raises(ParseError):
            parse_matrix(bad, Z, 3)
