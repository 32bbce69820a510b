"""Relative Steinberg words: formal conjugates ^g Y_ij(a), the absolute action, KL0-KL7,
and exact normal forms on the unipotent radicals U_i."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from .report import Report, make_rng, stratified
from .ring import FormIdeal, Ring, RingMismatch, gamma_member, ideal_member
from .space import HVector, check_rank, form, indices, sgn
from .transvections import SpMatrix, transvection_delta
from .words import AbsWord, Letter, _check_indices, prefix_node


class RelGen(NamedTuple):
    i: int
    j: int
    a: int

    @property
    def is_long(self) -> bool:
        return self.j == -self.i


class RelAtom(NamedTuple):
    """The formal conjugate ^g x, raised to ``sign``; g is stored as its letter tuple."""

    g: Tuple[Letter, ...]
    x: RelGen
    sign: int


def check_rel_gen(x: RelGen, F: FormIdeal) -> None:
    if x.is_long:
        if not gamma_member(x.a, F):
            raise ValueError("Y_{%d,%d}(%d): long root parameter not in Gamma" % (x.i, x.j, x.a))
    elif not ideal_member(x.a, F):
        raise ValueError("Y_{%d,%d}(%d): parameter not in I" % (x.i, x.j, x.a))


@dataclass(frozen=True)
class RelWord:
    ring: Ring
    l: int
    atoms: Tuple[RelAtom, ...] = ()

    def __post_init__(self):
        check_rank(self.l)
        for at in self.atoms:
            _check_indices(at.x.i, at.x.j, self.l)

    @classmethod
    def empty(cls, ring: Ring, l: int) -> "RelWord":
        return cls(ring, l, ())

    @classmethod
    def y(cls, ring: Ring, l: int, i: int, j: int, a, sign: int = 1, F: Optional[FormIdeal] = None) -> "RelWord":
        """The single generator Y_ij(a) (zero parameters give the empty word)."""
        x = RelGen(i, j, ring.coerce(a))
        _check_indices(i, j, l)
        if F is not None:
            check_rel_gen(x, F)
        if not x.a:
            return cls(ring, l, ())
        return cls(ring, l, (RelAtom((), x, sign),))

    def _same(self, other: "RelWord"):
        if other.ring != self.ring:
            raise RingMismatch("words over %s and %s" % (self.ring, other.ring))
        if other.l != self.l:
            raise ValueError("rank mismatch: %d vs %d" % (self.l, other.l))

    def __mul__(self, other: "RelWord") -> "RelWord":
        self._same(other)
        return RelWord(self.ring, self.l, self.atoms + other.atoms)

    def inverse(self) -> "RelWord":
        return RelWord(self.ring, self.l, tuple(RelAtom(a.g, a.x, -a.sign) for a in reversed(self.atoms)))

    __invert__ = inverse

    def reduced(self) -> "RelWord":
        out: List[RelAtom] = []
        for at in self.atoms:
            g = AbsWord(self.ring, self.l, at.g).reduced().letters
            at = RelAtom(g, at.x, at.sign)
            if out and out[-1].g == at.g and out[-1].x == at.x and out[-1].sign == -at.sign:
                out.pop()
            else:
                out.append(at)
        return RelWord(self.ring, self.l, tuple(out))

    def __len__(self):
        return len(self.atoms)

    def __iter__(self) -> Iterator[RelAtom]:
        return iter(self.atoms)

    def eval(self) -> SpMatrix:
        return eval_rel_word(self)

    def __str__(self):
        if not self.atoms:
            return "1"
        parts = []
        for at in self.atoms:
            y = "Y(%d,%d;%d)%s" % (at.x.i, at.x.j, at.x.a, "" if at.sign == 1 else "^-1")
            if at.g:
                y = "<%s> |> %s" % (AbsWord(self.ring, self.l, at.g), y)
            parts.append(y)
        return " ".join(parts)


def product(words: Iterable[RelWord], ring: Ring, l: int) -> RelWord:
    atoms: List[RelAtom] = []
    for w in words:
        atoms.extend(w.atoms)
    return RelWord(ring, l, tuple(atoms))


def eval_rel_word(w: RelWord) -> SpMatrix:
    """phi(w): product over atoms of (phi(g) T_x phi(g)^-1)^sign."""
    ring, l = w.ring, w.l
    red = ring.reduce
    n = 2 * l
    acc = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    for at in w.atoms:
        x = at.x
        delta = transvection_delta(ring, l, x.i, x.j, red(at.sign * x.a))
        if not delta:
            continue
        if at.g:
            node = prefix_node(ring, l, at.g)
            gcols, ginv = node.cols, node.rows_inv
            updates = []
            for a, b, d in delta:
                col = gcols[a]
                xs = [sum(p * q for p, q in zip(row, col)) for row in acc]
                updates.append((xs, ginv[b], d))
            for xs, grow, d in updates:
                for r in range(n):
                    f = xs[r] * d
                    if f:
                        row = acc[r]
                        for c in range(n):
                            if grow[c]:
                                row[c] += f * grow[c]
        else:
            updates = [([row[a] for row in acc], b, d) for a, b, d in delta]
            for xs, b, d in updates:
                for r in range(n):
                    acc[r][b] += d * xs[r]
        if ring.modulus is not None:
            m = ring.modulus
            acc = [[v % m for v in row] for row in acc]
    return SpMatrix(ring, l, tuple(tuple(red(v) for v in row) for row in acc))


def act(f: AbsWord, w: RelWord) -> RelWord:
    """^f w: prefix f onto every atom, (g, x) -> (fg, x), freely reducing the prefix."""
    if f.ring != w.ring or f.l != w.l:
        raise RingMismatch("action by a word over a different ring or rank")
    if not f.letters:
        return w
    out = []
    for at in w.atoms:
        g = AbsWord(w.ring, w.l, f.letters + at.g).reduced().letters
        out.append(RelAtom(g, at.x, at.sign))
    return RelWord(w.ring, w.l, tuple(out))


def box_left(g: AbsWord, h: RelWord) -> RelWord:
    """[[g, h] = ^g h . h^-1."""
    return act(g, h) * h.inverse()


def box_right(h: RelWord, g: AbsWord) -> RelWord:
    """[h, g]] = h . ^g h^-1."""
    return h * act(g, h.inverse())


def rel_conj(x: RelWord, y: RelWord) -> RelWord:
    return x * y * x.inverse()


def rel_comm(x: RelWord, y: RelWord) -> RelWord:
    return x * y * x.inverse() * y.inverse()


# --- KL0-KL7 ------------------------------------------------------------------


KL_FAMILIES = ("KL0", "KL1", "KL2", "KL3", "KL4", "KL5", "KL6", "KL7")


def _kl_families(F: FormIdeal, l: int):
    ring = F.ring
    red = ring.reduce
    e = sgn

    def X(i, j, r):
        return AbsWord.x(ring, l, i, j, r)

    def Y(i, j, a, s=1):
        return RelWord.y(ring, l, i, j, a, s, F)

    def param(rng, i, j, bound):
        return F.random_gamma(rng, bound) if j == -i else F.random_ideal(rng, bound)

    def kl0(rng, i, j, bound):
        a = param(rng, i, j, bound)
        return {"a": a}, Y(i, j, a), Y(-j, -i, red(-a * e(i) * e(j)))

    def kl1(rng, i, j, bound):
        a, b = param(rng, i, j, bound), param(rng, i, j, bound)
        return {"a": a, "b": b}, Y(i, j, a) * Y(i, j, b), Y(i, j, red(a + b))

    def kl2(rng, i, j, h, k, bound):
        r, a = ring.random(rng, bound), param(rng, h, k, bound)
        return {"r": r, "a": a}, box_left(X(i, j, r), Y(h, k, a)), RelWord.empty(ring, l)

    def kl3(rng, i, j, k, bound):
        r, a = ring.random(rng, bound), F.random_ideal(rng, bound)
        return {"r": r, "a": a}, box_left(X(i, j, r), Y(j, k, a)), Y(i, k, red(r * a))

    def kl4(rng, i, j, bound):
        r, a = ring.random(rng, bound), F.random_ideal(rng, bound)
        lhs = box_left(X(i, -i, r), Y(-i, j, a))
        rhs = Y(i, j, red(r * a * e(i))) * Y(-j, j, red(-r * a * a))
        return {"r": r, "a": a}, lhs, rhs

    def kl5(rng, i, j, bound):
        alpha, r = F.random_gamma(rng, bound), ring.random(rng, bound)
        lhs = box_right(Y(i, -i, alpha), X(-i, j, r))
        rhs = Y(i, j, red(alpha * r * e(i))) * Y(-j, j, red(-alpha * r * r))
        return {"alpha": alpha, "r": r}, lhs, rhs

    def kl6(rng, i, j, bound):
        r, a = ring.random(rng, bound), F.random_ideal(rng, bound)
        return {"r": r, "a": a}, box_left(X(i, j, r), Y(j, -i, a)), Y(i, -i, red(2 * r * a * e(i)))

    def kl7(rng, i, j, h, k, bound):
        a, b = param(rng, i, j, bound), param(rng, h, k, bound)
        lhs = act(X(i, j, a), Y(h, k, b))
        rhs = rel_conj(Y(i, j, a), Y(h, k, b))
        return {"a": a, "b": b}, lhs, rhs

    s2 = lambda i, j, h, k: i != j and h != k and h not in (j, -i) and k not in (i, -j)
    s3 = lambda i, j, k: len({i, j, k}) == 3 and i not in (-j, -k) and j != -k
    short = lambda i, j: j not in (i, -i)
    return {
        "KL0": (2, lambda i, j: i != j, kl0),
        "KL1": (2, lambda i, j: i != j, kl1),
        "KL2": (4, s2, kl2),
        "KL3": (3, s3, kl3),
        "KL4": (2, short, kl4),
        "KL5": (2, short, kl5),
        "KL6": (2, short, kl6),
        "KL7": (4, lambda i, j, h, k: i != j and h != k, kl7),
    }


def verify_kl_relations(
    ring: Ring, F: FormIdeal, l: int, trials: int, seed: int, bound: int = 8, families: Optional[Iterable[str]] = None
) -> Report:
    """Check KL0-KL7 on matrix images for random stratified draws."""
    check_rank(l)
    if F.ring != ring:
        raise RingMismatch("form ideal over %s, expected %s" % (F.ring, ring))
    rng = make_rng(seed)
    report = Report("kl")
    fams = _kl_families(F, l)
    for name in families or KL_FAMILIES:
        arity, pred, build = fams[name]
        for idx in stratified(rng, l, arity, pred, trials):
            binding, lhs, rhs = build(rng, *idx, bound)
            binding = {"indices": list(idx), **binding}
            report.add(name, binding, eval_rel_word(lhs) == eval_rel_word(rhs))
    return report


# --- unipotent radicals -------------------------------------------------------


class NotUnipotent(ValueError):
    """Recognition failed; ``kind`` is 'image' (not in phi(U_i)) or 'membership'."""

    def __init__(self, message: str, kind: str):
        super().__init__(message)
        self.kind = kind


def radical_indices(i: int, l: int) -> List[int]:
    """Second indices j of the short generators Y_{i,j} of U_i, in normal-form order."""
    return [j for j in indices(l) if j not in (i, -i)]


def rebuild_unipotent(i: int, alpha: int, coeffs: Dict[int, int], ring: Ring, l: int) -> RelWord:
    """Y_{i,-i}(alpha) Y_{i,-l}(a_{-l}) ... Y_{i,l}(a_l), skipping j = +-i and zero factors."""
    atoms = []
    if ring.reduce(alpha):
        atoms.append(RelAtom((), RelGen(i, -i, ring.reduce(alpha)), 1))
    for j in radical_indices(i, l):
        a = ring.reduce(coeffs.get(j, 0))
        if a:
            atoms.append(RelAtom((), RelGen(i, j, a), 1))
    return RelWord(ring, l, tuple(atoms))


def recognize_unipotent_matrix(i: int, M: SpMatrix, F: Optional[FormIdeal] = None) -> Tuple[int, Dict[int, int]]:
    """Normal-form coefficients (alpha, {j: a_j}) of M in phi(U_i).

    Every element of phi(U_i) is T(e_i, w, c) with w_{+-i} = 0, and
    T(e_i, w, c) e_{-i} = e_{-i} + e_i c eps_i + w eps_i, so column -i
    carries all the data: a_j = w_{-j} eps_{-j} and alpha is c minus the
    cross terms <w^(j), w^(k)>, j before k, of the normal-form product.
    The candidate is rebuilt and compared with M; if F is given the
    coefficients must also lie in I and Gamma.
    """
    ring, l = M.ring, M.l
    ei = sgn(i)
    col = M.column(-i)
    c = ring.reduce(ei * col[i])
    coeffs = {}
    parts = []
    for j in radical_indices(i, l):
        wj = ring.reduce(ei * col[-j])
        coeffs[j] = ring.reduce(wj * sgn(-j))
        parts.append(HVector.basis(ring, l, -j, wj))
    cross = 0
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            cross += form(parts[a], parts[b])
    alpha = ring.reduce(c - cross)
    if eval_rel_word(rebuild_unipotent(i, alpha, coeffs, ring, l)) != M:
        raise NotUnipotent("matrix is not in phi(U_%d)" % i, "image")
    if F is not None:
        if F.ring != ring:
            raise RingMismatch("form ideal over %s, matrix over %s" % (F.ring, ring))
        if not gamma_member(alpha, F):
            raise NotUnipotent("long coefficient %d not in Gamma" % alpha, "membership")
        bad = [j for j, a in coeffs.items() if not ideal_member(a, F)]
        if bad:
            raise NotUnipotent("coefficients at %s not in I" % bad, "membership")
    return alpha, coeffs


def in_radical_syntactic(i: int, w: RelWord) -> bool:
    """Every atom is an untwisted generator Y_{i,j} or Y_{k,-i} of U_i."""
    for at in w.atoms:
        if at.g:
            return False
        x = at.x
        if x.i != i and x.j != -i:
            return False
    return True


def radical_pivots(w: RelWord) -> List[int]:
    """All i for which w is syntactically a word in U_i."""
    return [i for i in indices(w.l) if in_radical_syntactic(i, w)]


def unipotent_normal_form(i: int, w: RelWord, F: Optional[FormIdeal] = None) -> Tuple[int, Dict[int, int]]:
    return recognize_unipotent_matrix(i, eval_rel_word(w), F)


def same_in_radical(lhs: RelWord, rhs: RelWord) -> Optional[bool]:
    """Exact group equality for two words lying in a common U_i, else None.

    phi is injective on U_i, so equal normal forms of the images means the
    words are equal in the relative Steinberg group.
    """
    common = [i for i in radical_pivots(lhs) if in_radical_syntactic(i, rhs)]
    if not common:
        return None
    i = common[0]
    try:
        return unipotent_normal_form(i, lhs) == unipotent_normal_form(i, rhs)
    except NotUnipotent:
        return False


# --- parabolic and Levi subgroups -------------------------------------------------


def parabolic_member(i: int, w: AbsWord) -> bool:
    """Every letter X_kh satisfies i not in {h, -k} (sufficient, not necessary)."""
    return all(i != g.j and i != -g.i for g, _ in w.letters)


def levi_member(i: int, w: AbsWord) -> bool:
    return parabolic_member(i, w) and parabolic_member(-i, w)
