"""Randomized checks of the identities between the ESD-type relative elements.

Each entry draws bindings satisfying its hypotheses, builds both sides as
relative words and compares images. When both sides are syntactically
words in one unipotent radical U_i the image equality is a group equality
(phi is injective on U_i) and the row is tagged exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .generators import (
    generator_from_z,
    y_any,
    y_commutator_word,
    y_extended_word,
    y_word,
    z_full_word,
    z_long_word,
    z_pivot_word,
    z_short_word,
)
from .relative import RelWord, act, box_left, box_right, eval_rel_word, same_in_radical
from .report import EXACT, IMAGE, Report, make_rng, stratified
from .ring import FormIdeal, Ring, RingMismatch
from .space import HVector, check_rank, form, indices, pm_form, sgn
from .transvections import elementary_transvection, esd
from .words import AbsGen, AbsWord, ElemColumn, abs_esd_word, eval_abs_word, random_elementary_column


def pairs(*idx: int) -> frozenset:
    """The index set {+-i, +-j, ...}."""
    return frozenset(x for i in idx for x in (i, -i))


def _pairing(c: HVector, p: int) -> int:
    """<c, e_p>."""
    return -sgn(p) * c[-p]


def _det(m: List[List[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for a, b in itertools.combinations(range(n), 2):
            if perm[a] > perm[b]:
                sign = -sign
        prod = sign
        for r in range(n):
            prod *= m[r][perm[r]]
        total += prod
    return total


def orthogonal_vector(
    rng: random.Random,
    ring: Ring,
    l: int,
    constraints: Sequence[HVector] = (),
    zeros: Iterable[int] = (),
    coeff: Optional[Callable[[], int]] = None,
    tries: int = 3,
) -> HVector:
    """Random v with <c, v> = 0 for every constraint and v_p = 0 on ``zeros``.

    Built from coordinates no constraint sees, constraint vectors that fit
    the zero pattern, and cofactor kernel vectors on m + 1 random
    coordinates, each with a coefficient drawn from ``coeff``.
    """
    coeff = coeff or (lambda: ring.random(rng))
    zeros = set(zeros)
    allowed = [p for p in indices(l) if p not in zeros]
    gens: List[HVector] = []
    for p in allowed:
        if all(ring.reduce(_pairing(c, p)) == 0 for c in constraints):
            gens.append(HVector.basis(ring, l, p))
    for c in constraints:
        if not set(c.support()) & zeros and all(form(c, d) == 0 for d in constraints):
            gens.append(c)
    m = len(constraints)
    if len(allowed) > m:
        for _ in range(tries):
            cols = rng.sample(allowed, m + 1)
            A = [[_pairing(c, p) for p in cols] for c in constraints]
            x = {}
            for s, p in enumerate(cols):
                minor = [row[:s] + row[s + 1:] for row in A]
                x[p] = (-1) ** s * _det(minor)
            gens.append(HVector.from_map(ring, l, {p: ring.reduce(v) for p, v in x.items()}))
    v = HVector.zero(ring, l)
    for g in gens:
        v = v + g.scale(coeff())
    assert all(form(c, v) == 0 for c in constraints) and not any(v[p] for p in zeros)
    return v


class Draw:
    """Hypothesis-respecting random values for one ring and form ideal."""

    def __init__(self, rng: random.Random, F: FormIdeal, l: int, bound: int = 8):
        self.rng, self.F, self.l, self.bound = rng, F, l, bound
        self.ring = F.ring

    def r(self) -> int:
        return self.ring.random(self.rng, self.bound)

    def ideal(self) -> int:
        return self.F.random_ideal(self.rng, self.bound)

    def gamma(self) -> int:
        return self.F.random_gamma(self.rng, self.bound)

    def small(self) -> int:
        return self.ring.random(self.rng, 3)

    def vec(self, zeros=(), orth=(), in_ideal=False) -> HVector:
        coeff = (lambda: self.F.random_ideal(self.rng, 3)) if in_ideal else self.small
        return orthogonal_vector(self.rng, self.ring, self.l, orth, zeros, coeff)

    def long(self, v: HVector) -> int:
        """a with a - <v_-, v_+> in Gamma."""
        return self.ring.reduce(pm_form(v) + self.gamma())

    def column(self, orth: Sequence[HVector] = ()) -> ElemColumn:
        return random_elementary_column(self.ring, self.l, self.rng.randint(0, 6), self.rng, 3)

    def abs_word(self, allowed: Callable[[int, int], bool], max_len: int = 4) -> AbsWord:
        letters = []
        choices = [(k, h) for k in indices(self.l) for h in indices(self.l) if k != h and allowed(k, h)]
        for _ in range(self.rng.randint(1, max_len)):
            k, h = self.rng.choice(choices)
            letters.append((AbsGen(k, h, self.r()), self.rng.choice((1, -1))))
        return AbsWord(self.ring, self.l, tuple(letters))

    def levi_word(self, i: int) -> AbsWord:
        return self.abs_word(lambda k, h: k not in (i, -i) and h not in (i, -i))

    def parabolic_word(self, i: int) -> AbsWord:
        return self.abs_word(lambda k, h: i not in (h, -k))


def _jsonable(v):
    if isinstance(v, (HVector, AbsWord, ElemColumn)):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass(frozen=True)
class Entry:
    name: str
    section: int
    arity: int
    pred: Callable[..., bool]
    build: Callable


def _short(i, j):
    return j not in (i, -i)


def _any(*idx):
    return True


def _entries(F: FormIdeal, l: int) -> List[Entry]:
    ring = F.ring
    red = ring.reduce
    e = sgn
    zero = HVector.zero(ring, l)

    def E(i, a=1):
        return HVector.basis(ring, l, i, a)

    out: List[Entry] = []

    def entry(name, section, arity, pred=None):
        def deco(fn):
            out.append(Entry(name, section, arity, pred or _any, fn))
            return fn

        return deco

    # --- Y(e_i, v, a) and Y_(i) -------------------------------------------------

    @entry("switch", 2, 2, lambda i, j: i != j and j != -i)
    def _(d, i, j):
        a = d.ideal()
        return {"a": a}, y_word(i, E(j, a), 0, F), y_word(j, E(i, a), 0, F)

    @entry("y-add", 2, 1)
    def _(d, i):
        v, w = d.vec(pairs(i) - {i}, in_ideal=True), d.vec(pairs(i) - {i}, in_ideal=True)
        a, b = d.long(v), d.long(w)
        lhs = y_word(i, v, a, F) * y_word(i, w, b, F)
        return {"v": v, "w": w, "a": a, "b": b}, lhs, y_word(i, v + w, a + b + form(v, w), F)

    @entry("y-conj-parabolic", 2, 1)
    def _(d, i):
        g = d.parabolic_word(i)
        v = d.vec({-i}, in_ideal=True)
        a = d.long(v)
        rhs = y_word(i, eval_abs_word(g).apply(v), a, F)
        return {"g": g, "v": v, "a": a}, act(g, y_word(i, v, a, F)), rhs

    @entry("z-decomp-for-y", 2, 2, _short)
    def _(d, j, k):
        v = d.vec({-j, k, -k})
        a, b = d.r(), d.ideal()
        lhs = box_right(y_word(k, E(j, b), 0, F), abs_esd_word(-k, v, a))
        rhs = y_word(j, v.scale(b * e(k)), a * b * b, F) * y_word(-k, E(j, -a * b * e(-k)), 0, F)
        return {"v": v, "a": a, "b": b}, lhs, rhs

    @entry("z-decomp-for-y-cor", 2, 2, _short)
    def _(d, j, k):
        v = d.vec({-j, k, -k})
        a, b = d.r(), d.ideal()
        lhs = y_word(j, v.scale(b), a * b * b, F)
        rhs = box_right(y_word(k, E(j, b), 0, F), abs_esd_word(-k, v.scale(e(k)), a))
        rhs = rhs * y_word(-k, E(j, a * b * e(-k)), 0, F)
        return {"v": v, "a": a, "b": b}, lhs, rhs

    def ppc_sides(d, j, k, sign):
        v = d.vec({-j, k, -k}, in_ideal=True)
        r = d.r()
        a = d.long(v)
        lhs = box_left(abs_esd_word(k, E(j, r), 0), y_word(-k, v, a, F))
        rhs = y_word(j, v.scale(r * e(k)), a * r * r, F) * y_word(-k, E(j, a * r * sign), 0, F)
        return {"v": v, "r": r, "a": a}, lhs, rhs

    @entry("ppc", 2, 2, _short)
    def _(d, j, k):
        return ppc_sides(d, j, k, e(k))

    @entry("ppc-cor", 2, 2, _short)
    def _(d, j, k):
        v = d.vec({-j, k, -k}, in_ideal=True)
        r = d.r()
        a = d.long(v)
        lhs = y_word(j, v.scale(r), a * r * r, F)
        rhs = box_left(abs_esd_word(k, E(j, r), 0), y_word(-k, v.scale(e(k)), a, F))
        rhs = rhs * y_word(-k, E(j, a * r * e(-k)), 0, F)
        return {"v": v, "r": r, "a": a}, lhs, rhs

    @entry("yi-basis", 2, 2, _short)
    def _(d, i, j):
        v = d.vec({-j} | pairs(i), in_ideal=True)
        a = d.long(v)
        return {"v": v, "a": a}, y_commutator_word(i, E(j), v, a, F), y_word(j, v, a, F)

    @entry("yi-short", 2, 2, _short)
    def _(d, i, j):
        v = d.vec({-j} | pairs(i))
        b = d.ideal()
        return {"v": v, "b": b}, y_commutator_word(i, v, E(j, b), 0, F), y_word(j, v.scale(b), 0, F)

    @entry("z-correctness", 2, 2, _short)
    def _(d, i, j):
        u = d.vec(pairs(i, j))
        v = d.vec(pairs(i, j), [u], in_ideal=True)
        r, a = d.r(), d.long(v)
        lhs = y_commutator_word(i, u, v.scale(r), a * r * r, F)
        rhs = y_commutator_word(j, u.scale(r), v, a, F)
        return {"u": u, "v": v, "r": r, "a": a}, lhs, rhs

    @entry("levi-conj", 2, 1)
    def _(d, i):
        g = d.levi_word(i)
        u = d.vec(pairs(i))
        v = d.vec(pairs(i), [u], in_ideal=True)
        a = d.long(v)
        M = eval_abs_word(g)
        rhs = y_commutator_word(i, M.apply(u), M.apply(v), a, F)
        return {"g": g, "u": u, "v": v, "a": a}, act(g, y_commutator_word(i, u, v, a, F)), rhs

    def z_additivity_sides(d, i, j, sign_of):
        u = d.vec(pairs(i, j))
        v = d.vec(pairs(i), [u], in_ideal=True)
        a, b = d.long(v), d.ideal()
        lhs = y_commutator_word(i, u, v, a, F) * y_commutator_word(i, u, E(j, b), 0, F)
        rhs = y_commutator_word(i, u, v + E(j, b), a + v[-j] * b * sign_of(j), F)
        return {"u": u, "v": v, "a": a, "b": b}, lhs, rhs

    @entry("z-additivity", 2, 2, _short)
    def _(d, i, j):
        return z_additivity_sides(d, i, j, lambda j: e(-j))

    @entry("w-conjugation", 2, 1)
    def _(d, i):
        g = d.levi_word(i)
        u = d.vec(pairs(i))
        v = d.vec((), [u], in_ideal=True)
        a = d.long(v)
        M = eval_abs_word(g)
        rhs = y_extended_word(i, M.apply(u), M.apply(v), a, F)
        return {"g": g, "u": u, "v": v, "a": a}, act(g, y_extended_word(i, u, v, a, F)), rhs

    @entry("w-correctness", 2, 2, _short)
    def _(d, i, j):
        u = d.vec(pairs(i, j))
        v = d.vec((), [u], in_ideal=True)
        a = d.long(v)
        return {"u": u, "v": v, "a": a}, y_extended_word(i, u, v, a, F), y_extended_word(j, u, v, a, F)

    @entry("long-add", 2, 2, _short)
    def _(d, i, j):
        u = d.vec(pairs(i, j))
        v = d.vec(pairs(i), [u], in_ideal=True)
        a, b = d.long(v), d.gamma()
        lhs = y_any(u, v, a + b, F)
        rhs = y_any(u, v, a, F) * y_any(u, zero, b, F)
        return {"u": u, "v": v, "a": a, "b": b}, lhs, rhs

    @entry("w=zz", 2, 2, _short)
    def _(d, i, j):
        u = d.vec(pairs(i, j))
        v = d.vec(pairs(i), [u], in_ideal=True)
        # v_i v_{-i} in Gamma: v_{-i} a multiple of v_i
        t = d.ideal()
        v = v.with_coord(i, t).with_coord(-i, t * d.r())
        a = d.long(v)
        lhs = y_any(u, v, a, F)
        rhs = y_any(u, v.drop(i, -i), a, F) * y_any(u, v.keep(i, -i), 0, F)
        return {"u": u, "v": v, "a": a}, lhs, rhs

    @entry("short-is-three-long", 2, 3, lambda i, j, k: _short(i, j) and _short(i, k))
    def _(d, i, j, k):
        u = d.vec(pairs(i, j))
        v = d.vec(pairs(i, k), [u])
        w = d.vec(pairs(i), [u, v], in_ideal=True)
        a = d.long(w)
        lhs = y_extended_word(i, u + v, w, a, F)
        rhs = y_any(u, w, a, F) * y_any(v, w, a, F) * y_any(v, u.scale(a), 0, F)
        return {"u": u, "v": v, "w": w, "a": a}, lhs, rhs

    # --- maximal form parameter -------------------------------------------------

    @entry("short-symmetry", 3, 3, lambda i, j, k: _short(i, j) and _short(i, k))
    def _(d, i, j, k):
        u = d.vec(pairs(i, j))
        v = d.vec(pairs(i, k), [u])
        a = d.ideal()
        return {"u": u, "v": v, "a": a}, y_any(u, v.scale(a), 0, F), y_any(v, u.scale(a), 0, F)

    @entry("correctness", 3, 2, _short)
    def _(d, i, j):
        u, a = d.vec(), d.ideal()
        return {"u": u, "a": a}, z_pivot_word(i, u, zero, a, F), z_pivot_word(j, u, zero, a, F)

    @entry("conj-by-long", 3, 1)
    def _(d, i):
        u, a, b = d.vec(), d.ideal(), d.r()
        lhs = act(AbsWord.x(ring, l, i, -i, b), z_long_word(u, a, F))
        rhs = z_long_word(elementary_transvection(ring, l, i, -i, b).apply(u), a, F)
        return {"u": u, "a": a, "b": b}, lhs, rhs

    @entry("conj-by-short", 3, 2, _short)
    def _(d, j, k):
        u, a, b = d.vec(), d.ideal(), d.r()
        lhs = act(AbsWord.x(ring, l, j, k, b), z_long_word(u, a, F))
        rhs = z_long_word(elementary_transvection(ring, l, j, k, b).apply(u), a, F)
        return {"u": u, "a": a, "b": b}, lhs, rhs

    @entry("lm0", 3, 2, _short)
    def _(d, i, j):
        u = d.vec(pairs(i, j))
        v = d.vec(pairs(j), [u], in_ideal=True)
        w = d.vec(pairs(j), [u, v], in_ideal=True)
        lhs = y_any(u, v, 0, F) * y_any(u, w, 0, F)
        return {"u": u, "v": v, "w": w}, lhs, y_any(u, v + w, 0, F)

    @entry("w-symmetry", 3, 3, lambda i, j, k: len(pairs(i, j, k)) == 6)
    def _(d, i, j, k):
        v = HVector.from_map(ring, l, {i: d.ideal(), -i: d.ideal()})
        v1 = HVector.from_map(ring, l, {j: d.r(), -j: d.r()})
        v2 = d.vec(pairs(i, j))
        lhs = y_any(v2, v, 0, F) * y_any(v1, v, 0, F)
        return {"v": v, "v'": v1, "v''": v2}, lhs, y_extended_word(i, v1 + v2, v, 0, F)

    @entry("long-additivity", 3, 0)
    def _(d):
        u, a, b = d.vec(), d.ideal(), d.ideal()
        lhs = z_long_word(u, a, F) * z_long_word(u, b, F)
        return {"u": u, "a": a, "b": b}, lhs, z_long_word(u, a + b, F)

    @entry("long-scalar", 3, 2, _short)
    def _(d, i, j):
        u, a, b = d.vec(pairs(i, j)), d.ideal(), d.r()
        return {"u": u, "a": a, "b": b}, y_any(u.scale(b), zero, a, F), y_any(u, zero, a * b * b, F)

    @entry("x-long-scalar", 3, 0)
    def _(d):
        u, a, b = d.vec(), d.ideal(), d.r()
        return {"u": u, "a": a, "b": b}, z_long_word(u.scale(b), a, F), z_long_word(u, a * b * b, F)

    @entry("new", 3, 2, _short)
    def _(d, i, j):
        w = d.vec(pairs(i, j))
        u = d.vec((), [w])
        a = d.ideal()
        rhs = z_long_word(u, a, F) * z_long_word(w, a, F) * y_any(w, u.scale(a), 0, F)
        return {"u": u, "w": w, "a": a}, z_long_word(u + w, a, F), rhs

    @entry("x=y", 3, 1)
    def _(d, i):
        v, a = d.vec({-i}), d.ideal()
        return {"v": v, "a": a}, z_short_word(E(i), v, a, F), y_word(i, v.scale(a), 0, F)

    @entry("x=y-cor", 3, 0)
    def _(d):
        u = d.column()
        x = d.vec((), [u.vector])
        c, r1, r2 = d.ideal(), d.r(), d.r()
        v, w, a, b = x.scale(r1), x.scale(r2), red(c * r2), red(c * r1)
        lhs = z_short_word(u.vector, v, a, F)
        return {"u": u, "v": v, "w": w, "a": a, "b": b}, lhs, z_short_word(u.vector, w, b, F)

    @entry("x-long-is-three-short", 3, 0)
    def _(d):
        v = d.column()
        u = d.vec((), [v.vector])
        a, r = d.ideal(), d.r()
        lhs = z_long_word(u + v.vector.scale(r), a, F)
        rhs = z_long_word(u, a, F) * z_long_word(v.vector, a * r * r, F) * z_short_word(v.vector, u, a * r, F)
        return {"u": u, "v": v, "a": a, "r": r}, lhs, rhs

    @entry("short-additivity-a", 3, 0)
    def _(d):
        u = d.column()
        v, w = d.vec((), [u.vector]), d.vec((), [u.vector])
        a = d.ideal()
        uv = u.vector
        lhs = z_short_word(uv, v, a, F) * z_short_word(uv, w, a, F)
        rhs = z_short_word(uv, v + w, a, F) * z_long_word(uv, a * a * form(v, w), F)
        return {"u": u, "v": v, "w": w, "a": a}, lhs, rhs

    @entry("short-additivity-b", 3, 0)
    def _(d):
        u = d.column()
        v = d.vec((), [u.vector])
        a, b = d.ideal(), d.ideal()
        lhs = z_short_word(u.vector, v, a, F) * z_short_word(u.vector, v, b, F)
        return {"u": u, "v": v, "a": a, "b": b}, lhs, z_short_word(u.vector, v, a + b, F)

    @entry("short-obvious-a", 3, 0)
    def _(d):
        u = d.vec()
        v = d.vec((), [u])
        a = d.ideal()
        return {"u": u, "v": v, "a": a}, z_short_word(v, u, a, F), z_short_word(u, v, a, F)

    @entry("short-obvious-b", 3, 0)
    def _(d):
        g = d.abs_word(lambda k, h: True)
        u = d.vec()
        v = d.vec((), [u])
        a = d.ideal()
        M = eval_abs_word(g)
        rhs = z_short_word(M.apply(u), M.apply(v), a, F)
        return {"g": g, "u": u, "v": v, "a": a}, act(g, z_short_word(u, v, a, F)), rhs

    @entry("short-obvious-c", 3, 0)
    def _(d):
        u, a, b = d.vec(), d.ideal(), d.r()
        return {"u": u, "a": a, "b": b}, z_short_word(u, u.scale(b), a, F), z_long_word(u, 2 * a * b, F)

    # p-relations: Z(u, v, a, b) with u an elementary column

    @entry("p-relations-a", 3, 0)
    def _(d):
        u = d.column()
        v = d.vec((), [u.vector])
        a, b, r = d.ideal(), d.ideal(), d.r()
        lhs = z_full_word(u.vector, v.scale(r), a, b, F)
        return {"u": u, "v": v, "a": a, "b": b, "r": r}, lhs, z_full_word(u.vector, v, a * r, b, F)

    @entry("p-relations-b", 3, 0)
    def _(d):
        u = d.column()
        uv = u.vector
        v, w = d.vec((), [uv]), d.vec((), [uv])
        a, b, c = d.ideal(), d.ideal(), d.ideal()
        lhs = z_full_word(uv, v, a, b, F) * z_full_word(uv, w, a, c, F)
        rhs = z_full_word(uv, v + w, a, b + c + a * a * form(v, w), F)
        return {"u": u, "v": v, "w": w, "a": a, "b": b, "c": c}, lhs, rhs

    @entry("p-relations-c", 3, 0)
    def _(d):
        u = d.column()
        v = d.vec((), [u.vector])
        a, b = d.ideal(), d.ideal()
        lhs = z_full_word(u.vector, v, a, 0, F) * z_full_word(u.vector, v, b, 0, F)
        return {"u": u, "v": v, "a": a, "b": b}, lhs, z_full_word(u.vector, v, a + b, 0, F)

    @entry("p-relations-d", 3, 0)
    def _(d):
        u = d.column()
        v = d.vec((), [u.vector])
        a = d.ideal()
        lhs = z_full_word(u.vector, v, a, 0, F)
        return {"u": u, "v": v, "a": a}, lhs, z_full_word(v, u.vector, a, 0, F)

    @entry("p-relations-e", 3, 0)
    def _(d):
        u, u1 = d.column(), d.column()
        v, v1 = d.vec((), [u.vector]), d.vec((), [u1.vector])
        a, b, a1, b1 = d.ideal(), d.ideal(), d.ideal(), d.ideal()
        outer = z_full_word(u1.vector, v1, a1, b1, F)
        lhs = outer * z_full_word(u.vector, v, a, b, F) * outer.inverse()
        T = esd(u1.vector, v1.scale(a1), b1)
        rhs = z_full_word(T.apply(u.vector), T.apply(v), a, b, F)
        binding = {"u": u, "v": v, "a": a, "b": b, "u'": u1, "v'": v1, "a'": a1, "b'": b1}
        return binding, lhs, rhs

    @entry("p-relations-f", 3, 0)
    def _(d):
        u = d.column()
        a = d.ideal()
        lhs = z_full_word(u.vector, u.vector, a, 0, F)
        return {"u": u, "a": a}, lhs, z_full_word(u.vector, zero, 0, 2 * a, F)

    @entry("p-relations-g", 3, 0)
    def _(d):
        u = d.column()
        v = d.vec((), [u.vector])
        a, r = d.ideal(), d.r()
        uv = u.vector
        lhs = z_full_word(v + uv.scale(r), zero, 0, a, F)
        rhs = z_full_word(v, zero, 0, a, F) * z_full_word(uv, zero, 0, a * r * r, F)
        rhs = rhs * z_full_word(uv, v, a * r, 0, F)
        return {"u": u, "v": v, "a": a, "r": r}, lhs, rhs

    @entry("generating", 3, 2, lambda j, k: j != k)
    def _(d, j, k):
        a = d.ideal()
        return {"a": a}, generator_from_z(j, k, a, F, l), RelWord.y(ring, l, j, k, a, F=F)

    return out


def catalog_names() -> List[str]:
    F = FormIdeal.maximal(Ring.zmod(2))
    return [e.name for e in _entries(F, 3)]


def section_of(name: str) -> int:
    F = FormIdeal.maximal(Ring.zmod(2))
    for e in _entries(F, 3):
        if e.name == name:
            return e.section
    raise KeyError(name)


def match_filter(names: Iterable[str], filt: Optional[Iterable[str]]) -> List[str]:
    """Entries equal to a filter item or extending it by '-<suffix>'."""
    names = list(names)
    if not filt:
        return names
    filt = list(filt)
    out = [n for n in names if any(n == f or n.startswith(f + "-") for f in filt)]
    unknown = [f for f in filt if not any(n == f or n.startswith(f + "-") for n in names)]
    if unknown:
        raise KeyError("unknown catalog entries: %s" % ", ".join(unknown))
    return out


def verify_identity_catalog(
    ring: Ring,
    F: FormIdeal,
    l: int,
    trials: int,
    seed: int,
    filter: Optional[Iterable[str]] = None,
    bound: int = 8,
) -> Report:
    """Image comparison for every selected entry; entries needing Gamma = I are skipped otherwise."""
    check_rank(l)
    if F.ring != ring:
        raise RingMismatch("form ideal over %s, expected %s" % (F.ring, ring))
    rng = make_rng(seed)
    report = Report("catalog")
    entries = _entries(F, l)
    selected = set(match_filter([e.name for e in entries], filter))
    for ent in entries:
        if ent.name not in selected:
            continue
        if ent.section == 3 and not F.is_maximal:
            report.skip(ent.name, {}, "needs Gamma = I")
            continue
        d = Draw(rng, F, l, bound)
        for idx in stratified(rng, l, ent.arity, ent.pred, trials):
            binding, lhs, rhs = ent.build(d, *idx)
            binding = {"indices": list(idx), **{k: _jsonable(v) for k, v in binding.items()}}
            ok = eval_rel_word(lhs) == eval_rel_word(rhs)
            exact = ok and same_in_radical(lhs, rhs) is not None
            report.add(ent.name, binding, ok, EXACT if exact else IMAGE)
    return report


# --- sign resolution -------------------------------------------------------------


def resolve_sign_variants(ring: Ring, F: FormIdeal, l: int, trials: int, seed: int) -> Dict[str, Dict[str, Tuple[int, int]]]:
    """Run both candidate signs of the two ambiguous correction terms against the matrix oracle.

    Returns {identity: {variant: (passes, failures)}}.
    """
    rng = make_rng(seed)
    out: Dict[str, Dict[str, Tuple[int, int]]] = {}
    red = ring.reduce
    e = sgn

    def tally(key, variant, builder, arity_pred):
        ok = bad = 0
        d = Draw(rng, F, l)
        for idx in stratified(rng, l, 2, arity_pred, trials):
            _, lhs, rhs = builder(d, *idx)
            if eval_rel_word(lhs) == eval_rel_word(rhs):
                ok += 1
            else:
                bad += 1
        out.setdefault(key, {})[variant] = (ok, bad)

    def z_add(sign_of):
        def build(d, i, j):
            u = d.vec(pairs(i, j))
            v = d.vec(pairs(i), [u], in_ideal=True)
            a, b = d.long(v), d.ideal()
            lhs = y_commutator_word(i, u, v, a, F) * y_commutator_word(i, u, HVector.basis(ring, l, j, b), 0, F)
            rhs = y_commutator_word(i, u, v + HVector.basis(ring, l, j, b), a + v[-j] * b * sign_of(j), F)
            return None, lhs, rhs

        return build

    def ppc(sign_of):
        def build(d, j, k):
            v = d.vec({-j, k, -k}, in_ideal=True)
            r = d.r()
            a = d.long(v)
            lhs = box_left(abs_esd_word(k, HVector.basis(ring, l, j, r), 0), y_word(-k, v, a, F))
            rhs = y_word(j, v.scale(r * e(k)), a * r * r, F)
            rhs = rhs * y_word(-k, HVector.basis(ring, l, j, red(a * r * sign_of(k))), 0, F)
            return None, lhs, rhs

        return build

    tally("z-additivity", "eps_{-j}", z_add(lambda j: e(-j)), _short)
    tally("z-additivity", "eps_{j}", z_add(lambda j: e(j)), _short)
    tally("ppc", "eps_{k}", ppc(lambda k: e(k)), _short)
    tally("ppc", "eps_{-k}", ppc(lambda k: e(-k)), _short)
    return out
