import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relstsp.catalog import (
    Draw,
    _entries,
    catalog_names,
    match_filter,
    orthogonal_vector,
    resolve_sign_variants,
    section_of,
    verify_identity_catalog,
)
from relstsp.generators import y_word, z_full_word, z_short_word
from relstsp.relative import box_left, eval_rel_word
from relstsp.report import EXACT
from relstsp.ring import FormIdeal, Ring, RingMismatch
from relstsp.space import HVector, form, indices, pm_form, sgn
from relstsp.transvections import esd
from relstsp.words import ElemColumn, abs_esd_word

Z = Ring.integers()

SECTION2 = [
    "switch", "y-add", "y-conj-parabolic", "z-decomp-for-y", "z-decomp-for-y-cor", "ppc", "ppc-cor",
    "yi-basis", "yi-short", "z-correctness", "levi-conj", "z-additivity", "w-conjugation",
    "w-correctness", "long-add", "w=zz", "short-is-three-long",
]


class ZeroDraw(Draw):
    """Every scalar is 0 and every column is a basis column."""

    def r(self):
        return 0

    ideal = gamma = small = r

    def vec(self, zeros=(), orth=(), in_ideal=False):
        return HVector.zero(self.ring, self.l)

    def column(self, orth=()):
        return ElemColumn.basis(self.ring, self.l, self.rng.choice(indices(self.l)))


def test_catalog_names_and_sections():
    names = catalog_names()
    assert len(names) == len(set(names))
    assert [n for n in names if section_of(n) == 2] == SECTION2
    assert "generating" in names and section_of("p-relations-f") == 3
    with pytest.raises(KeyError):
        section_of("nope")


def test_match_filter():
    names = catalog_names()
    assert match_filter(names, ["ppc"]) == ["ppc", "ppc-cor"]
    assert match_filter(names, ["p-relations"]) == ["p-relations-%s" % c for c in "abcdefg"]
    assert match_filter(names, None) == names
    with pytest.raises(KeyError):
        match_filter(names, ["nonexistent"])


def test_every_entry_at_zero_binding_is_identity():
    F = FormIdeal.maximal(Ring.zmod(9), 3)
    rng = random.Random(0)
    for ent in _entries(F, 3):
        idx = next(
            t for t in itertools.product(indices(3), repeat=ent.arity) if ent.pred(*t)
        ) if ent.arity else ()
        _, lhs, rhs = ent.build(ZeroDraw(rng, F, 3), *idx)
        assert eval_rel_word(lhs).is_identity(), ent.name
        assert eval_rel_word(rhs).is_identity(), ent.name


def test_ppc_concrete_binding():
    F = FormIdeal.maximal(Ring.zmod(5), 1)
    R, l = F.ring, 3
    j, k, r = 1, 2, 2
    v = HVector.from_map(R, l, {3: 2, -3: 1, 1: 3})
    a = R.reduce(pm_form(v) + 1)
    lhs = box_left(abs_esd_word(k, HVector.basis(R, l, j, r), 0), y_word(-k, v, a, F))
    rhs = y_word(j, v.scale(r * sgn(k)), a * r * r, F) * y_word(-k, HVector.basis(R, l, j, a * r * sgn(k)), 0, F)
    e = lambda i, c=1: HVector.basis(R, l, i, c)
    want = esd(e(j), v.scale(r * sgn(k)), a * r * r) @ esd(e(-k), e(j, a * r * sgn(k)), 0)
    assert eval_rel_word(lhs) == eval_rel_word(rhs) == want


@settings(max_examples=30)
@given(st.integers(0, 10**9))
def test_p_relations_f(seed):
    rng = random.Random(seed)
    F = FormIdeal.maximal(Z, 1)
    u = HVector(Z, 3, tuple(rng.randint(-4, 4) for _ in range(6)))
    a = rng.randint(-6, 6)
    lhs = eval_rel_word(z_short_word(u, u, a, F))
    assert lhs == eval_rel_word(z_full_word(u, HVector.zero(Z, 3), 0, 2 * a, F))
    assert lhs == esd(u, HVector.zero(Z, 3), 2 * a)


@pytest.mark.parametrize(
    "F,l",
    [
        (FormIdeal.maximal(Z, 2), 3),
        (FormIdeal.maximal(Ring.zmod(4), 2), 3),
        (FormIdeal.maximal(Ring.zmod(9), 3), 3),
        (FormIdeal.maximal(Ring.zmod(12), 1), 4),
    ],
)
def test_catalog_maximal(F, l):
    rep = verify_identity_catalog(F.ring, F, l, 4, 1)
    assert rep.ok
    assert set(rep.entries()) == set(catalog_names())
    assert all(rep.count(n) == 4 for n in catalog_names())


@pytest.mark.parametrize("F", [FormIdeal.minimal(Z, 2), FormIdeal.minimal(Ring.zmod(4), 2), FormIdeal.minimal(Ring.zmod(8), 2)])
def test_catalog_minimal_section2(F):
    assert not F.is_maximal
    rep = verify_identity_catalog(F.ring, F, 3, 5, 2)
    assert rep.ok
    for n in catalog_names():
        if section_of(n) == 2:
            assert rep.count(n) == 5
        else:
            assert rep.count(n, "skip") == 1 and rep.count(n) == 0


def test_exact_rows_tagged():
    F = FormIdeal.maximal(Ring.zmod(9), 3)
    rep = verify_identity_catalog(F.ring, F, 3, 10, 3, ["switch", "y-add"])
    assert rep.count("switch", exactness=EXACT) == 10
    assert rep.count("y-add", exactness=EXACT) == 10


def test_catalog_ring_mismatch():
    with pytest.raises(RingMismatch):
        verify_identity_catalog(Z, FormIdeal.maximal(Ring.zmod(4)), 3, 1, 0)


@pytest.mark.parametrize("F", [FormIdeal.maximal(Z, 2), FormIdeal.maximal(Ring.zmod(9), 3), FormIdeal.minimal(Ring.zmod(4), 2)])
def test_sign_resolution(F):
    res = resolve_sign_variants(F.ring, F, 3, 20, 0)
    ok, bad = res["z-additivity"]["eps_{-j}"]
    assert (ok, bad) == (20, 0)
    ok, bad = res["ppc"]["eps_{k}"]
    assert (ok, bad) == (20, 0)


def test_sign_resolution_rejects_other_variant():
    F = FormIdeal.maximal(Z, 2)
    res = resolve_sign_variants(Z, F, 3, 30, 0)
    assert res["z-additivity"]["eps_{j}"][1] > 0
    assert res["ppc"]["eps_{-k}"][1] > 0


def test_catalog_deterministic():
    F = FormIdeal.maximal(Ring.zmod(4), 2)
    a = verify_identity_catalog(F.ring, F, 3, 3, 9).to_jsonl()
    b = verify_identity_catalog(F.ring, F, 3, 3, 9).to_jsonl()
    assert a == b


@settings(max_examples=60)
@given(st.sampled_from([Z, Ring.zmod(9), Ring.zmod(12)]), st.integers(0, 10**9), st.integers(0, 2))
def test_orthogonal_vector(ring, seed, m):
    rng = random.Random(seed)
    cons = [HVector(ring, 3, tuple(ring.random(rng, 4) for _ in range(6))) for _ in range(m)]
    zeros = set(rng.sample(indices(3), rng.randint(0, 2)))
    v = orthogonal_vector(rng, ring, 3, cons, zeros)
    assert all(form(c, v) == 0 for c in cons)
    assert not any(v[p] for p in zeros)
