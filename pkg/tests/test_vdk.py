import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relstsp.catalog import Draw
from relstsp.generators import PreconditionError
from relstsp.relative import RelAtom, RelWord, eval_rel_word
from relstsp.ring import FormIdeal, Ring
from relstsp.space import HVector, form, indices, pm_form, sgn
from relstsp.transvections import EsdParams, elementary_transvection, esd
from relstsp.vdk import (
    T_FAMILIES,
    VdKGen,
    VdKWord,
    gen_image,
    pi_map,
    random_vdk_gen,
    rho_map,
    short_gen,
    vdk_act,
    vdk_act_word,
    vdk_eval,
    vdk_unipotent_decompose,
    verify_kl_for_vdk,
    verify_round_trips,
    verify_t_relations,
)
from relstsp.words import AbsWord, ElemColumn, eval_abs_inverse, random_elementary_column

Z = Ring.integers()


def col(ring, l, i):
    return ElemColumn.basis(ring, l, i)


def gen_draw(seed, F, l=3):
    return random_vdk_gen(Draw(random.Random(seed), F, l))


def test_gen_validation():
    with pytest.raises(TypeError):
        VdKGen(HVector.basis(Z, 3, 1), HVector.zero(Z, 3), 0, 0)
    with pytest.raises(ValueError):
        VdKGen(col(Z, 3, 1), HVector.basis(Z, 3, -1), 0, 0)
    with pytest.raises(ValueError):
        VdKGen(col(Z, 3, 1), HVector.zero(Z, 3), 0, 0, 2)
    g = VdKGen(col(Z, 3, 1), HVector.basis(Z, 3, 2), 2, 4)
    with pytest.raises(PreconditionError):
        g.check(FormIdeal.maximal(Z, 4))
    g.check(FormIdeal.maximal(Z, 2))
    assert str(g) == "(word=1, i=1, v=e(2), a=2, b=4)"
    assert str(g.inverse()) == str(g) + "^-1"


def test_eval_examples():
    R = Ring.zmod(12)
    assert vdk_eval(VdKWord(R, 3)).is_identity()
    a = 8
    for i in indices(3):
        g = VdKGen(col(R, 3, i), HVector.zero(R, 3), 0, a)
        assert vdk_eval(VdKWord.of(g)) == elementary_transvection(R, 3, i, -i, a)
        for j in indices(3):
            if j in (i, -i):
                continue
            g = VdKGen(col(R, 3, -j), HVector.basis(R, 3, i), a * sgn(-j), 0)
            assert g == short_gen(R, 3, i, j, a)
            assert vdk_eval(VdKWord.of(g)) == elementary_transvection(R, 3, i, j, a)


def test_short_gen_bridge():
    # (e_{-j}, e_i, a eps_{-j}, 0) and (e_i, e_{-j}, a eps_{-j}, 0) share one image
    a = 5
    for i in indices(3):
        for j in indices(3):
            if j in (i, -i):
                continue
            other = VdKGen(col(Z, 3, i), HVector.basis(Z, 3, -j), a * sgn(-j), 0)
            assert gen_image(other) == gen_image(short_gen(Z, 3, i, j, a))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([(Z, 2), (Ring.zmod(4), 2), (Ring.zmod(9), 3)]))
def test_image_law(seed, ring_ideal):
    F = FormIdeal.maximal(*ring_ideal)
    g = gen_draw(seed, F)
    closed = esd(g.u.vector, g.v.scale(g.a), g.b)
    if g.sign == -1:
        closed = esd(g.u.vector, g.v.scale(-g.a), -g.b)
    assert gen_image(g) == closed
    assert gen_image(g, "z") == closed
    w = VdKWord.of(g, gen_draw(seed + 1, F))
    assert (vdk_eval(w) @ vdk_eval(w.inverse())).is_identity()
    assert not (w * w.inverse()).reduced()


def test_bad_via():
    with pytest.raises(ValueError):
        gen_image(short_gen(Z, 3, 1, 2, 1), "nope")


def test_t_examples():
    R = Ring.zmod(7)
    u = random_elementary_column(R, 3, 4, 3, 3)
    f = HVector.basis(R, 3, -2)
    v = HVector.basis(R, 3, 2).scale(form(u.vector, f)) - f.scale(form(u.vector, HVector.basis(R, 3, 2)))
    assert form(u.vector, v) == 0
    a, b = 3, 5
    # T1 at r = 1 and T3 at b = -a
    assert VdKGen(u, v.scale(1), a, b) == VdKGen(u, v, a * 1, b)
    assert vdk_eval(VdKWord.of(VdKGen(u, v, a, 0), VdKGen(u, v, -a, 0))).is_identity()
    # T5 with u' = e_1
    u1, v1, a1, b1 = col(R, 3, 1), HVector.from_map(R, 3, {2: 1, 3: 4, 1: 2}), 2, 6
    outer = VdKWord.of(VdKGen(u1, v1, a1, b1))
    lhs = outer * VdKWord.of(VdKGen(u, v, a, b)) * outer.inverse()
    p = EsdParams(u1.vector, v1.scale(a1), b1)
    rhs = vdk_act(p, VdKWord.of(VdKGen(u, v, a, b)))
    M = esd(p.u, p.v, p.a)
    assert vdk_eval(lhs) == vdk_eval(rhs) == esd(M.apply(u.vector), M.apply(v).scale(a), b)
    assert all(x.u.check() for x in rhs)


@pytest.mark.parametrize("F", [FormIdeal.maximal(Z, 2), FormIdeal.maximal(Ring.zmod(4), 2), FormIdeal.maximal(Ring.zmod(9), 3)])
def test_t_suite(F):
    rep = verify_t_relations(F.ring, F, 3, 8, 5)
    assert rep.ok
    assert set(rep.entries()) == set(T_FAMILIES)
    assert rep.count(exactness="exact") > 0


def test_t_suite_via_z():
    F = FormIdeal.maximal(Ring.zmod(4), 2)
    assert verify_t_relations(F.ring, F, 3, 4, 6, via="z").ok


def test_t_suite_needs_maximal_gamma():
    with pytest.raises(PreconditionError):
        verify_t_relations(Z, FormIdeal.minimal(Z, 2), 3, 1, 0)
    with pytest.raises(PreconditionError):
        verify_kl_for_vdk(Z, FormIdeal.minimal(Z, 2), 3, 1, 0)


def test_act_identity_and_p1():
    F = FormIdeal.maximal(Ring.zmod(9), 3)
    R = F.ring
    rng = random.Random(4)
    w = VdKWord.of(gen_draw(1, F), gen_draw(2, F))
    u = HVector.basis(R, 3, 2)
    zero = HVector.zero(R, 3)
    assert vdk_eval(vdk_act(EsdParams(u, zero, 0), w)) == vdk_eval(w)
    for _ in range(10):
        v = HVector.from_map(R, 3, {k: rng.randrange(9) for k in indices(3) if k != -2})
        x = HVector.from_map(R, 3, {k: rng.randrange(9) for k in indices(3) if k != -2})
        a, b = rng.randrange(9), rng.randrange(9)
        twice = vdk_act(EsdParams(u, v, a), vdk_act(EsdParams(u, x, b), w))
        once = vdk_act(EsdParams(u, v + x, a + b + form(v, x)), w)
        assert vdk_eval(twice) == vdk_eval(once)


def test_act_word_is_conjugation():
    F = FormIdeal.maximal(Z, 2)
    g = AbsWord.x(Z, 3, 1, 2, 3) * AbsWord.x(Z, 3, -2, 1, -1)
    w = VdKWord.of(gen_draw(8, F))
    M = g.eval()
    assert vdk_eval(vdk_act_word(g, w)) == M @ vdk_eval(w) @ eval_abs_inverse(g)
    assert all(x.u.check() for x in vdk_act_word(g, w))


def test_kl_instances():
    r, b = 3, 5

    def box(i, j, h, k):
        X = AbsWord.x(Z, 3, i, j, r)
        g = VdKWord.of(short_gen(Z, 3, h, k, b))
        return vdk_eval(vdk_act_word(X, g) * g.inverse())

    assert box(1, 2, 2, 3) == elementary_transvection(Z, 3, 1, 3, r * b)
    for i, j in [(1, 2), (-1, 2), (2, -3), (-2, -1)]:
        assert box(i, j, j, -i) == elementary_transvection(Z, 3, i, -i, 2 * r * b * sgn(i))
    assert vdk_eval(VdKWord.of(short_gen(Z, 3, 1, 2, 0))).is_identity()


@pytest.mark.parametrize("F", [FormIdeal.maximal(Ring.zmod(12), 4), FormIdeal.maximal(Z, 3)])
def test_kl_vdk_suite(F):
    assert verify_kl_for_vdk(F.ring, F, 3, 10, 1).ok


def test_pi_rho_examples():
    R = Ring.zmod(12)
    assert not pi_map(VdKWord(R, 3)).atoms
    a = 4
    g = VdKGen(col(R, 3, 1), HVector.zero(R, 3), 0, a)
    assert eval_rel_word(pi_map(VdKWord.of(g))) == elementary_transvection(R, 3, 1, -1, a)
    y = RelWord.y(R, 3, 2, -2, a)
    assert rho_map(y).gens == (VdKGen(col(R, 3, 2), HVector.zero(R, 3), 0, a),)
    for i, j in [(1, 2), (-1, 3), (2, -1)]:
        y = RelWord.y(R, 3, i, j, a)
        assert eval_rel_word(pi_map(rho_map(y))) == elementary_transvection(R, 3, i, j, a)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_pi_preserves_images(seed):
    F = FormIdeal.maximal(Ring.zmod(4), 2)
    w = VdKWord.of(gen_draw(seed, F), gen_draw(seed + 7, F), gen_draw(seed + 9, F))
    assert eval_rel_word(pi_map(w)) == vdk_eval(w)
    assert vdk_eval(rho_map(pi_map(w))) == vdk_eval(w)


def test_rho_with_prefix():
    R = Ring.zmod(9)
    g = AbsWord.x(R, 3, 1, 2, 4) * AbsWord.x(R, 3, 3, -1, 2)
    y = RelWord(R, 3, (RelAtom(g.letters, RelWord.y(R, 3, 2, 3, 3).atoms[0].x, -1),))
    M = g.eval()
    assert vdk_eval(rho_map(y)) == eval_rel_word(y) == M @ elementary_transvection(R, 3, 2, 3, -3) @ eval_abs_inverse(g)


@pytest.mark.parametrize("F", [FormIdeal.maximal(Z, 2), FormIdeal.maximal(Ring.zmod(9), 3)])
def test_round_trip_suite(F):
    rep = verify_round_trips(F.ring, F, 3, 20, 2)
    assert rep.ok and rep.count("pi-rho") == 20 and rep.count("rho-pi") == 20


def test_decompose_trivial():
    R = Ring.zmod(6)
    zero = HVector.zero(R, 3)
    g = VdKGen(col(R, 3, 2), zero, 3, 4)
    assert vdk_unipotent_decompose(g).gens == (short_gen(R, 3, 2, -2, 4),)
    v = HVector.from_map(R, 3, {1: 1, 3: 5, -1: 2})
    g = VdKGen(col(R, 3, 2), v, 0, 4)
    assert vdk_unipotent_decompose(g).gens == (short_gen(R, 3, 2, -2, 4),)


@settings(max_examples=80)
@given(st.integers(0, 10**9), st.sampled_from(indices(3)), st.booleans())
def test_decompose_image(seed, i, inverse):
    R = Ring.zmod(6)
    rng = random.Random(seed)
    v = HVector.from_map(R, 3, {k: rng.randrange(6) for k in indices(3) if k != -i})
    g = VdKGen(col(R, 3, i), v, rng.randrange(6), rng.randrange(6), -1 if inverse else 1)
    w = vdk_unipotent_decompose(g)
    assert vdk_eval(w) == gen_image(g)
    # the long factor carries b + 2 a v_i - a^2 <v~_-, v~_+>
    base = vdk_unipotent_decompose(g.base()).gens[0]
    assert base.b == R.reduce(g.b + 2 * g.a * v[i] - g.a * g.a * pm_form(v.drop(i, -i)))


def test_decompose_preconditions():
    # e_1 + e_2 is an elementary column but not a basis vector
    u = ElemColumn.from_word(AbsWord.x(Z, 3, 2, 1, 1), 1)
    assert u.check() and len(u.vector.support()) == 2
    with pytest.raises(PreconditionError):
        vdk_unipotent_decompose(VdKGen(u, HVector.zero(Z, 3), 1, 0))
