"""The van der Kallen group: generators (u, v, a, b) with u an elementary column,
relations T1-T7 checked on images, the action of absolute words, and the maps
pi: (u, v, a, b) -> Z(u, v, a, b) and rho: Y_ij(a) -> _ij(a)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from .catalog import Draw
from .generators import PreconditionError, abs_x_word, z_full_word
from .relative import (
    KL_FAMILIES,
    RelAtom,
    RelGen,
    RelWord,
    _kl_families,
    eval_rel_word,
    recognize_unipotent_matrix,
)
from .report import EXACT, IMAGE, Report, make_rng, stratified
from .ring import FormIdeal, Ring, RingMismatch, ideal_member
from .space import HVector, check_rank, form, indices, pm_form, sgn
from .transvections import EsdParams, SpMatrix, esd
from .words import AbsWord, ElemColumn, eval_abs_word, random_elementary_column


@dataclass(frozen=True)
class VdKGen:
    u: ElemColumn
    v: HVector
    a: int
    b: int
    sign: int = 1

    def __post_init__(self):
        if not isinstance(self.u, ElemColumn):
            raise TypeError("u must be an ElemColumn (a bare vector has no witness)")
        ring = self.v.ring
        if self.u.vector.ring != ring or self.u.vector.l != self.v.l:
            raise RingMismatch("u and v live in different modules")
        object.__setattr__(self, "a", ring.coerce(self.a))
        object.__setattr__(self, "b", ring.coerce(self.b))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if form(self.u.vector, self.v):
            raise ValueError("<u, v> != 0")

    @property
    def ring(self) -> Ring:
        return self.v.ring

    @property
    def l(self) -> int:
        return self.v.l

    def check(self, F: FormIdeal) -> None:
        if not ideal_member(self.a, F) or not ideal_member(self.b, F):
            raise PreconditionError("a, b must lie in I", "a = %d, b = %d" % (self.a, self.b))
        if not self.u.check():
            raise PreconditionError("witness word does not produce u")

    def base(self) -> "VdKGen":
        return VdKGen(self.u, self.v, self.a, self.b, 1)

    def inverse(self) -> "VdKGen":
        return VdKGen(self.u, self.v, self.a, self.b, -self.sign)

    def __str__(self):
        s = "(word=%s, i=%d, v=%s, a=%d, b=%d)" % (self.u.word, self.u.base_index, self.v, self.a, self.b)
        return s if self.sign == 1 else s + "^-1"


@dataclass(frozen=True)
class VdKWord:
    ring: Ring
    l: int
    gens: Tuple[VdKGen, ...] = ()

    @classmethod
    def of(cls, *gens: VdKGen) -> "VdKWord":
        return cls(gens[0].ring, gens[0].l, tuple(gens))

    def __mul__(self, other: "VdKWord") -> "VdKWord":
        if other.ring != self.ring or other.l != self.l:
            raise RingMismatch("vdK words over different rings or ranks")
        return VdKWord(self.ring, self.l, self.gens + other.gens)

    def inverse(self) -> "VdKWord":
        return VdKWord(self.ring, self.l, tuple(g.inverse() for g in reversed(self.gens)))

    __invert__ = inverse

    def reduced(self) -> "VdKWord":
        out: List[VdKGen] = []
        for g in self.gens:
            if out and out[-1].base() == g.base() and out[-1].sign == -g.sign:
                out.pop()
            else:
                out.append(g)
        return VdKWord(self.ring, self.l, tuple(out))

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __str__(self):
        return " ".join(map(str, self.gens)) if self.gens else "1"


def basis_column(ring: Ring, l: int, i: int) -> ElemColumn:
    return ElemColumn.basis(ring, l, i)


def short_gen(ring: Ring, l: int, i: int, j: int, a) -> VdKGen:
    """_ij(a): (e_{-j}, e_i, a eps_{-j}, 0) for j != +-i, (e_i, 0, 0, a) for j = -i."""
    if i == j:
        raise ValueError("_ij needs i != j")
    a = ring.coerce(a)
    if j == -i:
        return VdKGen(basis_column(ring, l, i), HVector.zero(ring, l), 0, a)
    return VdKGen(basis_column(ring, l, -j), HVector.basis(ring, l, i), a * sgn(-j), 0)


# --- images -------------------------------------------------------------------


@lru_cache(maxsize=1 << 14)
def _gen_image(g: VdKGen, via: str) -> Tuple[SpMatrix, SpMatrix]:
    if via == "esd":
        p = EsdParams(g.u.vector, g.v.scale(g.a), g.b)
        inv = p.inverse()
        return esd(p.u, p.v, p.a), esd(inv.u, inv.v, inv.a)
    if via == "z":
        F = FormIdeal.maximal(g.ring)
        w = z_full_word(g.u.vector, g.v, g.a, g.b, F)
        return eval_rel_word(w), eval_rel_word(w.inverse())
    raise ValueError("via must be 'esd' or 'z'")


def gen_image(g: VdKGen, via: str = "esd") -> SpMatrix:
    fwd, back = _gen_image(g.base(), via)
    return fwd if g.sign == 1 else back


def vdk_eval(w: VdKWord, via: str = "esd") -> SpMatrix:
    """Product of the images of Z(u, v, a, b)^sign.

    ``via='z'`` evaluates the Z-word of each generator; ``via='esd'`` uses
    its closed form T(u, v a, b), which the tests check against the Z-words.
    """
    M = SpMatrix.identity(w.ring, w.l)
    for g in w.gens:
        M = M @ gen_image(g, via)
    return M


# --- action ---------------------------------------------------------------------


def vdk_act_word(g: AbsWord, w: VdKWord) -> VdKWord:
    """Act by an absolute word: u -> phi(g)u (witness g * word), v -> phi(g)v."""
    if not g.letters:
        return w
    M = eval_abs_word(g)
    out = []
    for x in w.gens:
        col = ElemColumn((g * x.u.word).reduced(), x.u.base_index, M.apply(x.u.vector))
        out.append(VdKGen(col, M.apply(x.v), x.a, x.b, x.sign))
    return VdKWord(w.ring, w.l, tuple(out))


def vdk_act(p: EsdParams, w: VdKWord, word: Optional[AbsWord] = None, witness: Optional[ElemColumn] = None) -> VdKWord:
    """alpha_{u,v,a}: apply T(u, v, a) to every generator's u and v.

    The new witnesses are prefixed with an absolute word for T(u, v, a),
    given as ``word`` or built by abs_x_word (``witness`` is an elementary
    column for p.u when p.u has neither basis form nor a zero pair).
    """
    if word is None:
        word = abs_x_word(witness if witness is not None else p.u, p.v, p.a)
    return vdk_act_word(word, w)


# --- pi and rho -------------------------------------------------------------------


def pi_map(w: VdKWord) -> RelWord:
    """Generator-wise Z(u, v, a, b)^sign."""
    F = FormIdeal.maximal(w.ring)
    atoms: List[RelAtom] = []
    for g in w.gens:
        z = z_full_word(g.u.vector, g.v, g.a, g.b, F)
        atoms.extend((z if g.sign == 1 else z.inverse()).atoms)
    return RelWord(w.ring, w.l, tuple(atoms))


def rho_map(w: RelWord) -> VdKWord:
    """Atom-wise (g, Y_ij(a))^s -> g acting on _ij(a)^s."""
    gens: List[VdKGen] = []
    for at in w.atoms:
        x = short_gen(w.ring, w.l, at.x.i, at.x.j, at.x.a)
        if at.sign == -1:
            x = x.inverse()
        piece = vdk_act_word(AbsWord(w.ring, w.l, at.g), VdKWord(w.ring, w.l, (x,)))
        gens.extend(piece.gens)
    return VdKWord(w.ring, w.l, tuple(gens))


# --- unipotent decomposition ----------------------------------------------------


def vdk_unipotent_decompose(g: VdKGen) -> VdKWord:
    """(e_i, v, a, b) = _{i,-i}(b + 2a v_i - a^2 <v~_-, v~_+>) prod_{j != +-i} _{j,-i}(a v_j eps_i).

    v~ drops the +-i coordinates; the short factors run over j < 0 and then
    j > 0 in basis order and zero factors are left out.
    """
    ring, l = g.ring, g.l
    supp = g.u.vector.support()
    if len(supp) != 1 or g.u.vector[supp[0]] != 1:
        raise PreconditionError("u must be a basis vector e_i", str(g.u.vector))
    i = supp[0]
    v, a, b = g.v, g.a, g.b
    if v[-i]:
        raise PreconditionError("v_{-i} != 0", str(v))
    vt = v.drop(i, -i)
    long = ring.reduce(b + 2 * a * v[i] - a * a * pm_form(vt))
    gens = [short_gen(ring, l, i, -i, long)]
    for j in indices(l):
        if j in (i, -i):
            continue
        c = ring.reduce(a * v[j] * sgn(i))
        if c:
            gens.append(short_gen(ring, l, j, -i, c))
    w = VdKWord(ring, l, tuple(gens))
    return w if g.sign == 1 else w.inverse()


def _as_radical_word(w: VdKWord) -> Optional[Tuple[int, RelWord]]:
    """For a word of generators (e_i, v, a, b) with empty witness and v_{-i} = 0, the U_i-word
    obtained from the decomposition with each _jk(c) read as Y_jk(c)."""
    pivot = None
    atoms: List[RelAtom] = []
    for g in w.gens:
        if g.u.word.letters:
            return None
        supp = g.u.vector.support()
        if len(supp) != 1 or g.u.vector[supp[0]] != 1 or g.v[-supp[0]]:
            return None
        if pivot is None:
            pivot = supp[0]
        elif pivot != supp[0]:
            return None
        block = []
        for x in vdk_unipotent_decompose(g.base()).gens:
            if x.v.is_zero():
                gen = RelGen(x.u.base_index, -x.u.base_index, x.b)
            else:
                k = -x.u.base_index
                gen = RelGen(x.v.support()[0], k, w.ring.reduce(x.a * sgn(-k)))
            if gen.a:
                block.append(RelAtom((), gen, 1))
        if g.sign == -1:
            block = [RelAtom((), a.x, -1) for a in reversed(block)]
        atoms.extend(block)
    if pivot is None:
        return None
    return pivot, RelWord(w.ring, w.l, tuple(atoms))


def exact_radical_equal(lhs: VdKWord, rhs: VdKWord) -> Optional[bool]:
    """Exact equality through U_i normal forms when both sides decompose inside one U_i."""
    left, right = _as_radical_word(lhs), _as_radical_word(rhs)
    if left is None or right is None or left[0] != right[0]:
        return None
    i = left[0]
    return recognize_unipotent_matrix(i, eval_rel_word(left[1])) == recognize_unipotent_matrix(
        i, eval_rel_word(right[1])
    )


# --- T1-T7 ------------------------------------------------------------------------


T_FAMILIES = ("T1", "T2", "T3", "T4", "T5", "T6", "T7")


def _require_maximal(F: FormIdeal):
    if not F.is_maximal:
        raise PreconditionError("Gamma = I required", F.describe())


class _VDraw(Draw):
    def column(self, orth=()) -> ElemColumn:
        # a quarter of the draws use a bare basis column so the exact U_i check applies
        if self.rng.random() < 0.25:
            return basis_column(self.ring, self.l, self.rng.choice(indices(self.l)))
        return random_elementary_column(self.ring, self.l, self.rng.randint(1, 6), self.rng, 3)

    def column_pair(self, opposite_ok: bool = False) -> Tuple[ElemColumn, ElemColumn, int, int]:
        """Two columns E e_i, E e_j of one elementary matrix with j != -i (orthogonal)."""
        word = random_elementary_column(self.ring, self.l, self.rng.randint(0, 6), self.rng, 3).word
        i = self.rng.choice(indices(self.l))
        j = self.rng.choice([x for x in indices(self.l) if x not in (i, -i)])
        return ElemColumn.from_word(word, i), ElemColumn.from_word(word, j), i, j


def _t_families(F: FormIdeal, l: int):
    ring = F.ring

    def G(u, v, a, b, s=1):
        return VdKWord(ring, l, (VdKGen(u, v, a, b, s),))

    def t1(d):
        u = d.column()
        v = d.vec((), [u.vector])
        a, b, r = d.ideal(), d.ideal(), d.r()
        return {"u": u, "v": v, "a": a, "b": b, "r": r}, G(u, v.scale(r), a, b), G(u, v, a * r, b)

    def t2(d):
        u = d.column()
        v, w = d.vec((), [u.vector]), d.vec((), [u.vector])
        a, b, c = d.ideal(), d.ideal(), d.ideal()
        lhs = G(u, v, a, b) * G(u, w, a, c)
        rhs = G(u, v + w, a, b + c + a * a * form(v, w))
        return {"u": u, "v": v, "w": w, "a": a, "b": b, "c": c}, lhs, rhs

    def t3(d):
        u = d.column()
        v = d.vec((), [u.vector])
        a, b = d.ideal(), d.ideal()
        return {"u": u, "v": v, "a": a, "b": b}, G(u, v, a, 0) * G(u, v, b, 0), G(u, v, a + b, 0)

    def t4(d):
        u, v, _, _ = d.column_pair()
        a = d.ideal()
        return {"u": u, "v": v, "a": a}, G(u, v.vector, a, 0), G(v, u.vector, a, 0)

    def t5(d):
        u, u1 = d.column(), d.column()
        v, v1 = d.vec((), [u.vector]), d.vec((), [u1.vector])
        a, b, a1, b1 = d.ideal(), d.ideal(), d.ideal(), d.ideal()
        outer = G(u1, v1, a1, b1)
        lhs = outer * G(u, v, a, b) * outer.inverse()
        p = EsdParams(u1.vector, v1.scale(a1), b1)
        rhs = vdk_act(p, G(u, v, a, b), witness=u1)
        binding = {"u": u, "v": v, "a": a, "b": b, "u'": u1, "v'": v1, "a'": a1, "b'": b1}
        return binding, lhs, rhs

    def t6(d):
        u = d.column()
        a = d.ideal()
        return {"u": u, "a": a}, G(u, u.vector, a, 0), G(u, HVector.zero(ring, l), 0, 2 * a)

    def t7(d):
        u, v, i, j = d.column_pair()
        r, a = d.r(), d.ideal()
        # u + v r = E X_ji(r) e_i is again a column of an elementary matrix
        sum_word = u.word * AbsWord.x(ring, l, j, i, r)
        s = ElemColumn.from_word(sum_word, i)
        assert s.vector == u.vector + v.vector.scale(r)
        zero = HVector.zero(ring, l)
        lhs = G(s, zero, 0, a)
        rhs = G(u, zero, 0, a) * G(v, zero, 0, a * r * r) * G(v, u.vector, a * r, 0)
        return {"u": u, "v": v, "r": r, "a": a}, lhs, rhs

    return {"T1": t1, "T2": t2, "T3": t3, "T4": t4, "T5": t5, "T6": t6, "T7": t7}


def _binding(d: Dict) -> Dict:
    out = {}
    for k, v in d.items():
        out[k] = str(v) if isinstance(v, (HVector, ElemColumn, AbsWord)) else v
    return out


def verify_t_relations(
    ring: Ring, F: FormIdeal, l: int, trials: int, seed: int, via: str = "esd", families: Optional[Iterable[str]] = None
) -> Report:
    """T1-T7 on images; rows whose sides decompose inside one U_i are also checked exactly."""
    check_rank(l)
    if F.ring != ring:
        raise RingMismatch("form ideal over %s, expected %s" % (F.ring, ring))
    _require_maximal(F)
    rng = make_rng(seed)
    report = Report("t")
    fams = _t_families(F, l)
    for name in families or T_FAMILIES:
        d = _VDraw(rng, F, l)
        for _ in range(trials):
            binding, lhs, rhs = fams[name](d)
            ok = vdk_eval(lhs, via) == vdk_eval(rhs, via)
            exact = exact_radical_equal(lhs, rhs)
            if exact is None:
                report.add(name, _binding(binding), ok, IMAGE)
            else:
                report.add(name, _binding(binding), ok and exact, EXACT)
    return report


def verify_kl_for_vdk(ring: Ring, F: FormIdeal, l: int, trials: int, seed: int, bound: int = 8) -> Report:
    """KL0-KL7 with Y_ij(a) replaced by _ij(a) and the action by the vdK action."""
    check_rank(l)
    if F.ring != ring:
        raise RingMismatch("form ideal over %s, expected %s" % (F.ring, ring))
    _require_maximal(F)
    rng = make_rng(seed)
    report = Report("kl-vdk")
    fams = _kl_families(F, l)
    for name in KL_FAMILIES:
        arity, pred, build = fams[name]
        for idx in stratified(rng, l, arity, pred, trials):
            binding, lhs, rhs = build(rng, *idx, bound)
            ok = vdk_eval(rho_map(lhs)) == vdk_eval(rho_map(rhs))
            report.add(name, {"indices": list(idx), **binding}, ok)
    return report


# --- round trips ------------------------------------------------------------------


def random_vdk_gen(d: Draw) -> VdKGen:
    u = random_elementary_column(d.ring, d.l, d.rng.randint(0, 6), d.rng, 3)
    v = d.vec((), [u.vector])
    return VdKGen(u, v, d.ideal(), d.ideal(), d.rng.choice((1, -1)))


def random_y_gen(d: Draw) -> RelWord:
    idx = indices(d.l)
    i = d.rng.choice(idx)
    j = d.rng.choice([x for x in idx if x != i])
    g = AbsWord(d.ring, d.l, ()) if d.rng.random() < 0.5 else d.abs_word(lambda k, h: True)
    y = RelWord.y(d.ring, d.l, i, j, d.ideal(), d.rng.choice((1, -1)))
    return RelWord(d.ring, d.l, tuple(RelAtom(g.letters, at.x, at.sign) for at in y.atoms))


def verify_round_trips(ring: Ring, F: FormIdeal, l: int, trials: int, seed: int) -> Report:
    """pi rho fixes images of relative generators; rho pi fixes images of vdK generators."""
    check_rank(l)
    _require_maximal(F)
    rng = make_rng(seed)
    report = Report("roundtrip")
    d = Draw(rng, F, l)
    for _ in range(trials):
        y = random_y_gen(d)
        ok = eval_rel_word(pi_map(rho_map(y))) == eval_rel_word(y)
        report.add("pi-rho", {"word": str(y)}, ok)
    for _ in range(trials):
        g = random_vdk_gen(d)
        w = VdKWord(ring, l, (g,))
        z = pi_map(w)
        ok = eval_rel_word(z) == vdk_eval(w) and vdk_eval(rho_map(z)) == vdk_eval(w)
        report.add("rho-pi", {"gen": str(g)}, ok)
    return report
