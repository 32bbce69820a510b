"""Word builders for the ESD-type relative elements Y(e_i, v, a), Y_(i)(u, v, a), Z_(i)(u, w, a),
Z(u, 0, a), Z(u, v, a, b), and the absolute X(u, v, a).

Every builder returns a RelWord whose image is the corresponding ESD
transformation. Zero-parameter generators are left out of the words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .relative import RelAtom, RelGen, RelWord, box_left, eval_rel_word
from .ring import FormIdeal, Ring, gamma_member, ideal_member
from .space import HVector, form, indices, pm_form, sgn
from .words import AbsGen, AbsWord, ElemColumn, abs_esd_word, eval_abs_inverse


class PreconditionError(ValueError):
    """A builder hypothesis failed; ``hypothesis`` names it."""

    def __init__(self, hypothesis: str, detail: str = ""):
        super().__init__(hypothesis + (": " + detail if detail else ""))
        self.hypothesis = hypothesis


@dataclass(frozen=True)
class PivotContext:
    i: int
    j: Optional[int] = None
    k: Optional[int] = None

    def __post_init__(self):
        used = [x for x in (self.i, self.j, self.k) if x is not None]
        if 0 in used:
            raise ValueError("indices are nonzero")
        pairs = {abs(x) for x in used}
        if len(pairs) != len(used):
            raise PreconditionError("pivot indices must lie in distinct pairs +-i, +-j, +-k")


Pivot = Union[int, PivotContext]


def _pivot(ctx: Pivot) -> int:
    return ctx.i if isinstance(ctx, PivotContext) else ctx


def _require(ok: bool, hypothesis: str, detail: str = ""):
    if not ok:
        raise PreconditionError(hypothesis, detail)


def _check_vector(v: HVector, F: FormIdeal, name: str = "v"):
    _require(v.ring == F.ring, "%s over %s, form ideal over %s" % (name, v.ring, F.ring))
    _require(v.all_in(F.level), "%s not in I^2l" % name, str(v))


def _check_long(a: int, v: HVector, F: FormIdeal, name: str = "v"):
    d = F.ring.reduce(a - pm_form(v))
    _require(gamma_member(d, F), "a - <%s_-, %s_+> not in Gamma" % (name, name), "difference %d" % d)


def zero_pair(u: HVector, i: int) -> bool:
    return not u[i] and not u[-i]


def default_pivot(*vs: HVector, exclude=()) -> int:
    """Smallest i in the order -l < ... < l with u_i = u_{-i} = 0 for all given vectors."""
    l = vs[0].l
    for i in indices(l):
        if abs(i) in {abs(x) for x in exclude}:
            continue
        if all(zero_pair(v, i) for v in vs):
            return i
    raise PreconditionError("no admissible pivot", "every pair +-i is used by %s" % ", ".join(map(str, vs)))


def _single(ring: Ring, l: int, i: int, j: int, a: int) -> RelWord:
    a = ring.reduce(a)
    if not a:
        return RelWord.empty(ring, l)
    return RelWord(ring, l, (RelAtom((), RelGen(i, j, a), 1),))


# --- Y(e_i, v, a) ---------------------------------------------------------------


def y_word(i: int, v: HVector, a, F: FormIdeal, check: bool = True) -> RelWord:
    """The U_i-word with image T(e_i, v, a).

    Y_{i,-i}(a + 2v_i - <v_-, v_+>) followed by Y_{j,-i}(v_j eps_i), j != +-i.
    """
    ring, l = v.ring, v.l
    a = ring.coerce(a)
    if check:
        _check_vector(v, F)
        _require(not v[-i], "v_{-i} != 0", "v_%d = %d" % (-i, v[-i]))
        _check_long(a, v, F)
    e = sgn(i)
    w = _single(ring, l, i, -i, a + 2 * v[i] - pm_form(v))
    atoms = list(w.atoms)
    for j in indices(l):
        if j not in (i, -i) and v[j]:
            atoms.append(RelAtom((), RelGen(j, -i, ring.reduce(v[j] * e)), 1))
    return RelWord(ring, l, tuple(atoms))


# --- Y_(i)(u, v, a) -------------------------------------------------------------


def y_commutator_word(ctx: Pivot, u: HVector, v: HVector, a, F: FormIdeal) -> RelWord:
    """[[X(e_i, u, 0), Y(e_{-i}, v eps_i, a)] Y(e_{-i}, u a eps_{-i}, 0), image T(u, v, a)."""
    i = _pivot(ctx)
    ring = u.ring
    a = ring.coerce(a)
    u._same(v)
    _check_vector(v, F)
    _require(form(u, v) == 0, "<u, v> != 0", str(form(u, v)))
    _require(zero_pair(u, i), "u_i, u_{-i} must vanish", "pivot %d, u = %s" % (i, u))
    _require(zero_pair(v, i), "v_i, v_{-i} must vanish", "pivot %d, v = %s" % (i, v))
    _check_long(a, v, F)
    g = abs_esd_word(i, u, 0)
    h = y_word(-i, v.scale(sgn(i)), a, F)
    tail = y_word(-i, u.scale(a * sgn(-i)), 0, F)
    return box_left(g, h) * tail


def y_extended_word(ctx: Pivot, u: HVector, v: HVector, a, F: FormIdeal) -> RelWord:
    """Y_(i) with v_{+-i} allowed: Y_(i)(u, v~, a~) Y(e_i, u v_i, 0) Y(e_{-i}, u v_{-i}, 0)."""
    i = _pivot(ctx)
    ring = u.ring
    a = ring.coerce(a)
    u._same(v)
    _check_vector(v, F)
    _require(zero_pair(u, i), "u_i, u_{-i} must vanish", "pivot %d, u = %s" % (i, u))
    _require(form(u, v) == 0, "<u, v> != 0", str(form(u, v)))
    _check_long(a, v, F)
    vt = v.drop(i, -i)
    at = ring.reduce(a - v[i] * v[-i] * sgn(i))
    return (
        y_commutator_word(i, u, vt, at, F)
        * y_word(i, u.scale(v[i]), 0, F)
        * y_word(-i, u.scale(v[-i]), 0, F)
    )


def y_any(u: HVector, v: HVector, a, F: FormIdeal, pivot: Optional[int] = None) -> RelWord:
    """Y(u, v, a) = Y_(i)(u, v, a) at the default (or given) pivot."""
    i = default_pivot(u) if pivot is None else pivot
    return y_extended_word(i, u, v, a, F)


# --- Z ----------------------------------------------------------------------------


def z_pivot_word(i: int, u: HVector, w: HVector, a, F: FormIdeal) -> RelWord:
    """Z_(i)(u, w, a) = Y_(i)(u~, w, a) Y(p, w, a) Y(p, u~ a, 0), p = e_i u_i + e_{-i} u_{-i}, u~ = u - p.

    The image is T(u~, w, a) T(p, w, a) T(p, u~ a, 0); for w = 0 this is T(u, 0, a).
    """
    ring = u.ring
    a = ring.coerce(a)
    u._same(w)
    _check_vector(w, F, "w")
    _require(form(u, w) == 0, "<u, w> != 0", str(form(u, w)))
    _require(zero_pair(w, i), "w_i, w_{-i} must vanish", "pivot %d, w = %s" % (i, w))
    _check_long(a, w, F, "w")
    p = u.keep(i, -i)
    ut = u.drop(i, -i)
    return (
        y_extended_word(i, ut, w, a, F)
        * y_any(p, w, a, F)
        * y_any(p, ut.scale(a), 0, F)
    )


def _require_maximal(F: FormIdeal):
    _require(F.is_maximal, "Gamma = I required", F.describe())


def z_long_word(u: HVector, a, F: FormIdeal, pivot: Optional[int] = None) -> RelWord:
    """Z(u, 0, a), image T(u, 0, a); pivot defaults to -l (w = 0 makes every index admissible)."""
    _require_maximal(F)
    a = u.ring.coerce(a)
    _require(ideal_member(a, F), "a not in I", str(a))
    i = indices(u.l)[0] if pivot is None else pivot
    return z_pivot_word(i, u, HVector.zero(u.ring, u.l), a, F)


def z_short_word(u: HVector, v: HVector, a, F: FormIdeal) -> RelWord:
    """Z(u, v, a, 0) = Z(u, 0, -a) Z(v, 0, -a) Z(u + v, 0, a)."""
    _require_maximal(F)
    a = u.ring.coerce(a)
    _require(form(u, v) == 0, "<u, v> != 0", str(form(u, v)))
    _require(ideal_member(a, F), "a not in I", str(a))
    return z_long_word(u, -a, F) * z_long_word(v, -a, F) * z_long_word(u + v, a, F)


def z_full_word(u: HVector, v: HVector, a, b, F: FormIdeal) -> RelWord:
    """Z(u, v, a, b) = Z(u, v, a, 0) Z(u, 0, b); image T(u, v a, b)."""
    b = u.ring.coerce(b)
    _require(ideal_member(b, F), "b not in I", str(b))
    return z_short_word(u, v, a, F) * z_long_word(u, b, F)


def rel_gen_from_z(j: int, k: int, a, F: FormIdeal, l: int, pivot: Optional[int] = None) -> RelWord:
    """Y_jk(a) written through long Z-elements:
    Z_(i)(-e_j eps_k, 0, -a) Z_(i)(e_{-k}, 0, -a) Z_(i)(e_{-k} - e_j eps_k, 0, a)."""
    ring = F.ring
    _require(j not in (k, -k), "j in {+-k}", "j = %d, k = %d" % (j, k))
    _require_maximal(F)
    a = ring.coerce(a)
    _require(ideal_member(a, F), "a not in I", str(a))
    if pivot is None:
        pivot = next(i for i in indices(l) if abs(i) not in (abs(j), abs(k)))
    zero = HVector.zero(ring, l)
    x = HVector.basis(ring, l, j, -sgn(k))
    y = HVector.basis(ring, l, -k)
    return (
        z_pivot_word(pivot, x, zero, -a, F)
        * z_pivot_word(pivot, y, zero, -a, F)
        * z_pivot_word(pivot, x + y, zero, a, F)
    )


def generator_from_z(j: int, k: int, a, F: FormIdeal, l: int) -> RelWord:
    """Y_jk(a) from Z-elements for every root: long roots are Z(e_j, 0, a)."""
    if k == -j:
        return z_long_word(HVector.basis(F.ring, l, j), a, F)
    return rel_gen_from_z(j, k, a, F, l)


# --- absolute words -----------------------------------------------------------


def flatten(w: RelWord) -> AbsWord:
    """Absolute word for a relative word over (R, R): each atom (g, x)^s becomes g X^s g^-1."""
    letters = []
    for at in w.atoms:
        g = at.g
        letters.extend(g)
        letters.append((AbsGen(at.x.i, at.x.j, at.x.a), at.sign))
        letters.extend((x, -s) for x, s in reversed(g))
    return AbsWord(w.ring, w.l, tuple(letters)).reduced()


def abs_x_word(u: Union[HVector, ElemColumn], v: HVector, a=0) -> AbsWord:
    """An absolute word with image T(u, v, a).

    Basis u gives the unipotent form directly; an elementary column u = E e_k
    is conjugated from T(e_k, E^-1 v, a); a vector with a zero pair goes
    through the extended Y_(i) over (R, R).
    """
    ring, l = v.ring, v.l
    a = ring.coerce(a)
    if isinstance(u, ElemColumn):
        col = u
        u = col.vector
    else:
        col = None
    _require(form(u, v) == 0, "<u, v> != 0", str(form(u, v)))
    supp = u.support()
    if len(supp) == 1 and u[supp[0]] == 1:
        return abs_esd_word(supp[0], v, a)
    if col is not None:
        x = eval_abs_inverse(col.word).apply(v)
        inner = abs_esd_word(col.base_index, x, a)
        return (col.word * inner * col.word.inverse()).reduced()
    if u.is_zero():
        return AbsWord.empty(ring, l)
    pairs = [i for i in indices(l) if zero_pair(u, i)]
    _require(bool(pairs), "unsatisfiable zero-pattern", "u = %s has no zero pair and no witness" % u)
    return flatten(y_extended_word(pairs[0], u, v, a, FormIdeal.maximal(ring)))


def image(w: RelWord):
    return eval_rel_word(w)
