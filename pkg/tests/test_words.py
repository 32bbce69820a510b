import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relstsp.ring import Ring
from relstsp.space import HVector, indices, sgn
from relstsp.transvections import SpMatrix, elementary_transvection, esd
from relstsp.words import (
    STEINBERG_FAMILIES,
    AbsGen,
    AbsWord,
    ElemColumn,
    abs_esd_word,
    comm,
    conj,
    eval_abs_inverse,
    eval_abs_word,
    inv,
    mul,
    random_abs_word,
    random_elementary_column,
    verify_steinberg_relations,
)
from strategies import rings, scalars, vectors

Z = Ring.integers()


def oracle_eval(w):
    """Plain product of transvection matrices, inverse letters via the negated parameter."""
    M = SpMatrix.identity(w.ring, w.l)
    for g, s in w.letters:
        M = M @ elementary_transvection(w.ring, w.l, g.i, g.j, s * g.r)
    return M


@st.composite
def words(draw, ring=None, l=None, max_len=6):
    import random

    ring = ring or draw(rings)
    l = l or draw(st.sampled_from([3, 4]))
    rng = random.Random(draw(st.integers(0, 10**9)))
    return random_abs_word(rng, ring, l, draw(st.integers(0, max_len)), 4)


def X(i, j, r, s=1, ring=Z, l=3):
    return AbsWord.x(ring, l, i, j, r, s)


def test_eval_examples():
    assert eval_abs_word(AbsWord.empty(Z, 3)).is_identity()
    assert eval_abs_word(X(1, 2, 5) * X(1, 2, 5, -1)).is_identity()
    assert not (X(1, 2, 5) * X(1, 2, 5, -1)).reduced()
    r, s = 3, -4
    w = comm(X(1, 2, r), X(2, -1, s))
    assert eval_abs_word(w) == elementary_transvection(Z, 3, 1, -1, 2 * r * s * sgn(1))


def test_letter_validation():
    with pytest.raises(ValueError):
        X(2, 2, 1)
    with pytest.raises(IndexError):
        X(1, 4, 1)


@given(words())
def test_eval_matches_oracle(w):
    assert eval_abs_word(w) == oracle_eval(w)
    assert eval_abs_inverse(w) == oracle_eval(w.inverse())
    assert (eval_abs_word(w) @ eval_abs_inverse(w)).is_identity()


@given(st.data())
def test_homomorphism(data):
    ring = data.draw(rings)
    w1 = data.draw(words(ring, 3))
    w2 = data.draw(words(ring, 3))
    assert eval_abs_word(mul(w1, w2)) == eval_abs_word(w1) @ eval_abs_word(w2)
    assert eval_abs_word(inv(w1)) == eval_abs_inverse(w1)
    A, B = eval_abs_word(w1), eval_abs_word(w2)
    Ai, Bi = eval_abs_inverse(w1), eval_abs_inverse(w2)
    assert eval_abs_word(comm(w1, w2)) == A @ B @ Ai @ Bi
    assert eval_abs_word(conj(w1, w2)) == A @ B @ Ai


@given(words())
def test_free_reduction(w):
    assert inv(inv(w)).reduced() == w.reduced()
    assert not comm(w, w).reduced()
    assert eval_abs_word(w.reduced()) == eval_abs_word(w)
    doubled = w * w.inverse() * w
    assert doubled.reduced() == w.reduced()


def test_word_str():
    assert str(X(1, 2, 3) * X(2, -2, 1, -1)) == "X(1,2;3) X(2,-2;1)^-1"
    assert str(AbsWord.empty(Z, 3)) == "1"


@given(st.data())
def test_abs_esd_word_image(data):
    ring = data.draw(rings)
    l = data.draw(st.sampled_from([3, 4]))
    i = data.draw(st.sampled_from(indices(l)))
    v = data.draw(vectors(ring, l)).drop(-i)
    a = data.draw(scalars(ring))
    assert eval_abs_word(abs_esd_word(i, v, a)) == esd(HVector.basis(ring, l, i), v, a)


def test_abs_esd_word_examples():
    zero = HVector.zero(Z, 3)
    assert eval_abs_word(abs_esd_word(2, zero, 0)).is_identity()
    assert not abs_esd_word(2, zero, 0)
    a = 7
    for i in indices(3):
        for j in indices(3):
            if j in (i, -i):
                continue
            v = HVector.basis(Z, 3, -j, -a * sgn(j))
            assert eval_abs_word(abs_esd_word(i, v, 0)) == elementary_transvection(Z, 3, i, j, a)
    with pytest.raises(ValueError):
        abs_esd_word(1, HVector.basis(Z, 3, -1), 0)


def test_elementary_column_examples():
    ring = Ring.zmod(7)
    c = random_elementary_column(ring, 3, 0, 5)
    assert c.vector == HVector.basis(ring, 3, c.base_index) and c.check()
    a = 4
    col = ElemColumn.from_word(X(1, 2, a, ring=ring), 2)
    assert col.vector == HVector.basis(ring, 3, 2) + HVector.basis(ring, 3, 1, a)
    assert str(col) == "(word=X(1,2;4), i=2)"
    with pytest.raises(ValueError):
        random_elementary_column(ring, 3, -1, 0)


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(0, 8), rings)
def test_random_elementary_column_invariant(seed, length, ring):
    c = random_elementary_column(ring, 3, length, seed)
    assert c.check()
    assert c.matrix().is_symplectic()
    assert len(c.word) == length
    assert random_elementary_column(ring, 3, length, seed) == c


@pytest.mark.parametrize("ring", [Z, Ring.zmod(2), Ring.zmod(3), Ring.zmod(4), Ring.zmod(12)])
def test_steinberg_suite(ring):
    rep = verify_steinberg_relations(ring, 3, 30, 11)
    assert rep.ok
    assert set(rep.entries()) == set(STEINBERG_FAMILIES)


def test_steinberg_sweep_z3():
    rep = verify_steinberg_relations(Ring.zmod(3), 3, 1, 0, exhaustive=True)
    assert rep.ok
    assert all(rep.count(f) == 1 + 9 for f in STEINBERG_FAMILIES)


def test_steinberg_examples():
    r, s = 2, 5
    for i, j in [(1, 2), (-1, 2), (2, -3), (-3, -1)]:
        lhs = X(i, j, r)
        rhs = X(-j, -i, -r * sgn(i) * sgn(j))
        assert eval_abs_word(lhs) == eval_abs_word(rhs)
        four = comm(X(i, -i, r), X(-i, j, s))
        want = elementary_transvection(Z, 3, i, j, r * s * sgn(i)) @ elementary_transvection(Z, 3, -j, j, -r * s * s)
        assert eval_abs_word(four) == want
    assert eval_abs_word(comm(X(1, 2, r), X(1, 3, s))).is_identity()
    assert eval_abs_word(comm(X(1, 2, r), X(-3, 2, s))).is_identity()


def test_stratified_draws_cover_signs():
    rep = verify_steinberg_relations(Ring.zmod(4), 3, 60, 2, families=["S4"])
    pairs = {tuple(r.binding["indices"]) for r in rep.records}
    assert {(sgn(i), sgn(j)) for i, j in pairs} == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


def test_absgen_is_hashable():
    assert len({AbsGen(1, 2, 3), AbsGen(1, 2, 3)}) == 1
