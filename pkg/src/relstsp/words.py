"""Absolute Steinberg words: letters X_ij(r), free reduction, commutators, evaluation phi."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .report import Report, make_rng, stratified
from .ring import Ring, RingMismatch
from .space import HVector, check_rank, indices, pm_form, sgn, slot
from .transvections import SpMatrix, transvection_delta


class AbsGen(NamedTuple):
    i: int
    j: int
    r: int


Letter = Tuple[AbsGen, int]


def _check_indices(i: int, j: int, l: int) -> None:
    if i == j:
        raise ValueError("X_ij needs i != j, got i = j = %d" % i)
    slot(i, l)
    slot(j, l)


@dataclass(frozen=True)
class AbsWord:
    ring: Ring
    l: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        check_rank(self.l)
        for g, s in self.letters:
            _check_indices(g.i, g.j, self.l)
            if s not in (1, -1):
                raise ValueError("letter sign must be +1 or -1")

    @classmethod
    def empty(cls, ring: Ring, l: int) -> "AbsWord":
        return cls(ring, l, ())

    @classmethod
    def x(cls, ring: Ring, l: int, i: int, j: int, r, sign: int = 1) -> "AbsWord":
        return cls(ring, l, ((AbsGen(i, j, ring.coerce(r)), sign),))

    def _same(self, other: "AbsWord"):
        if other.ring != self.ring:
            raise RingMismatch("words over %s and %s" % (self.ring, other.ring))
        if other.l != self.l:
            raise ValueError("rank mismatch: %d vs %d" % (self.l, other.l))

    def __mul__(self, other: "AbsWord") -> "AbsWord":
        self._same(other)
        return AbsWord(self.ring, self.l, self.letters + other.letters)

    def inverse(self) -> "AbsWord":
        return AbsWord(self.ring, self.l, tuple((g, -s) for g, s in reversed(self.letters)))

    __invert__ = inverse

    def reduced(self) -> "AbsWord":
        out: List[Letter] = []
        for g, s in self.letters:
            if out and out[-1][0] == g and out[-1][1] == -s:
                out.pop()
            else:
                out.append((g, s))
        return AbsWord(self.ring, self.l, tuple(out))

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def eval(self) -> SpMatrix:
        return eval_abs_word(self)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(
            "X(%d,%d;%d)%s" % (g.i, g.j, g.r, "" if s == 1 else "^-1") for g, s in self.letters
        )


def mul(w1: AbsWord, w2: AbsWord) -> AbsWord:
    return w1 * w2


def inv(w: AbsWord) -> AbsWord:
    return w.inverse()


def conj(g: AbsWord, h: AbsWord) -> AbsWord:
    """g h g^-1."""
    return g * h * g.inverse()


def comm(x: AbsWord, y: AbsWord) -> AbsWord:
    """Left-normed commutator x y x^-1 y^-1."""
    return x * y * x.inverse() * y.inverse()


# --- evaluation -------------------------------------------------------------
#
# phi(g) and phi(g)^-1 are cached per prefix in a trie, so words sharing a
# prefix (every atom produced by the action on relative words does) pay only
# for their new letters. Each letter is I + D with D the sparse delta of an
# elementary transvection; the inverse letter is the transvection with the
# negated parameter.


class _Node:
    __slots__ = ("cols", "rows_inv", "children")

    def __init__(self, cols, rows_inv):
        self.cols = cols
        self.rows_inv = rows_inv
        self.children: Dict[Letter, "_Node"] = {}


_TRIE_LIMIT = 400_000
_tries: Dict[Tuple[Ring, int], _Node] = {}
_trie_size = [0]


def clear_cache() -> None:
    _tries.clear()
    _trie_size[0] = 0


def _root(ring: Ring, l: int) -> _Node:
    key = (ring, l)
    node = _tries.get(key)
    if node is None:
        n = 2 * l
        ident = tuple(tuple(1 if a == b else 0 for a in range(n)) for b in range(n))
        node = _tries[key] = _Node(ident, ident)
    return node


def _step(ring: Ring, l: int, node: _Node, letter: Letter) -> _Node:
    g, s = letter
    red = ring.reduce
    delta = transvection_delta(ring, l, g.i, g.j, red(s * g.r))
    cols = list(node.cols)
    for a, b, d in delta:
        src = node.cols[a]
        cols[b] = tuple(red(x + d * y) for x, y in zip(cols[b], src))
    inv_delta = transvection_delta(ring, l, g.i, g.j, red(-s * g.r))
    rows = list(node.rows_inv)
    for a, b, d in inv_delta:
        src = node.rows_inv[b]
        rows[a] = tuple(red(x + d * y) for x, y in zip(rows[a], src))
    return _Node(tuple(cols), tuple(rows))


def prefix_node(ring: Ring, l: int, letters: Sequence[Letter]) -> _Node:
    if _trie_size[0] > _TRIE_LIMIT:
        clear_cache()
    node = _root(ring, l)
    for letter in letters:
        child = node.children.get(letter)
        if child is None:
            child = _step(ring, l, node, letter)
            node.children[letter] = child
            _trie_size[0] += 1
        node = child
    return node


def eval_abs_word(w: AbsWord) -> SpMatrix:
    """phi(w): product of T_ij(r)^(+-1) in letter order."""
    node = prefix_node(w.ring, w.l, w.letters)
    return SpMatrix(w.ring, w.l, tuple(zip(*node.cols)))


def eval_abs_inverse(w: AbsWord) -> SpMatrix:
    """phi(w)^-1, accumulated from the inverse letters."""
    node = prefix_node(w.ring, w.l, w.letters)
    return SpMatrix(w.ring, w.l, node.rows_inv)


# --- structured words -------------------------------------------------------


def abs_esd_word(i: int, v: HVector, a) -> AbsWord:
    """Word with image T(e_i, v, a), for v_{-i} = 0.

    X_{i,-i}(a + 2 v_i - <v_-, v_+>) followed by X_{j,-i}(v_j eps_i) for
    j != +-i in basis order. Zero-parameter letters are left out.
    """
    ring, l = v.ring, v.l
    a = ring.coerce(a)
    if v[-i]:
        raise ValueError("abs_esd_word needs v_{-i} = 0, got %d" % v[-i])
    letters: List[Letter] = []
    long = ring.reduce(a + 2 * v[i] - pm_form(v))
    if long:
        letters.append((AbsGen(i, -i, long), 1))
    e = sgn(i)
    for j in indices(l):
        if j in (i, -i) or not v[j]:
            continue
        letters.append((AbsGen(j, -i, ring.reduce(v[j] * e)), 1))
    return AbsWord(ring, l, tuple(letters))


@dataclass(frozen=True)
class ElemColumn:
    """A column phi(word) e_base of an elementary matrix, carrying its witness word."""

    word: AbsWord
    base_index: int
    vector: HVector

    @classmethod
    def from_word(cls, word: AbsWord, base_index: int) -> "ElemColumn":
        e = HVector.basis(word.ring, word.l, base_index)
        return cls(word, base_index, eval_abs_word(word).apply(e))

    @classmethod
    def basis(cls, ring: Ring, l: int, i: int) -> "ElemColumn":
        return cls(AbsWord.empty(ring, l), i, HVector.basis(ring, l, i))

    def check(self) -> bool:
        e = HVector.basis(self.word.ring, self.word.l, self.base_index)
        return eval_abs_word(self.word).apply(e) == self.vector

    def matrix(self) -> SpMatrix:
        return eval_abs_word(self.word)

    def __str__(self):
        return "(word=%s, i=%d)" % (self.word, self.base_index)


def random_abs_word(rng: random.Random, ring: Ring, l: int, length: int, bound: int = 8) -> AbsWord:
    idx = indices(l)
    letters = []
    for _ in range(length):
        i = rng.choice(idx)
        j = rng.choice([x for x in idx if x != i])
        letters.append((AbsGen(i, j, ring.random(rng, bound)), rng.choice((1, -1))))
    return AbsWord(ring, l, tuple(letters))


def random_elementary_column(ring: Ring, l: int, length: int, seed, bound: int = 8) -> ElemColumn:
    """Random witness word of ``length`` letters and base index; ``seed`` may be an int or a Random."""
    if length < 0:
        raise ValueError("length must be >= 0")
    rng = seed if isinstance(seed, random.Random) else make_rng(seed)
    word = random_abs_word(rng, ring, l, length, bound)
    return ElemColumn.from_word(word, rng.choice(indices(l)))


# --- Steinberg relations ------------------------------------------------------


def _x(ring, l, i, j, r, s=1) -> AbsWord:
    return AbsWord.x(ring, l, i, j, r, s)


def _steinberg_families(ring: Ring, l: int):
    red = ring.reduce
    e = sgn

    def s0(i, j, r, s):
        return _x(ring, l, i, j, r), _x(ring, l, -j, -i, red(-r * e(i) * e(j)))

    def s1(i, j, r, s):
        return _x(ring, l, i, j, r) * _x(ring, l, i, j, s), _x(ring, l, i, j, red(r + s))

    def s2(i, j, h, k, r, s):
        return comm(_x(ring, l, i, j, r), _x(ring, l, h, k, s)), AbsWord.empty(ring, l)

    def s3(i, j, k, r, s):
        return comm(_x(ring, l, i, j, r), _x(ring, l, j, k, s)), _x(ring, l, i, k, red(r * s))

    def s4(i, j, r, s):
        lhs = comm(_x(ring, l, i, -i, r), _x(ring, l, -i, j, s))
        rhs = _x(ring, l, i, j, red(r * s * e(i))) * _x(ring, l, -j, j, red(-r * s * s))
        return lhs, rhs

    def s5(i, j, r, s):
        return comm(_x(ring, l, i, j, r), _x(ring, l, j, -i, s)), _x(ring, l, i, -i, red(2 * r * s * e(i)))

    return {
        "S0": (2, lambda i, j: i != j, s0),
        "S1": (2, lambda i, j: i != j, s1),
        "S2": (4, lambda i, j, h, k: i != j and h != k and h not in (j, -i) and k not in (i, -j), s2),
        "S3": (3, lambda i, j, k: len({i, j, k}) == 3 and i not in (-j, -k) and j != -k, s3),
        "S4": (2, lambda i, j: j not in (i, -i), s4),
        "S5": (2, lambda i, j: j not in (i, -i), s5),
    }


STEINBERG_FAMILIES = ("S0", "S1", "S2", "S3", "S4", "S5")


def verify_steinberg_relations(
    ring: Ring,
    l: int,
    trials: int,
    seed: int,
    exhaustive: bool = False,
    bound: int = 8,
    families: Optional[Iterable[str]] = None,
) -> Report:
    """Check S0-S5 on random stratified draws by comparing matrix images.

    With ``exhaustive`` (finite rings only) every (r, s) pair is additionally
    swept for one fixed index tuple per family.
    """
    check_rank(l)
    rng = make_rng(seed)
    report = Report("steinberg")
    fams = _steinberg_families(ring, l)
    for name in families or STEINBERG_FAMILIES:
        arity, pred, build = fams[name]
        for idx in stratified(rng, l, arity, pred, trials):
            r, s = ring.random(rng, bound), ring.random(rng, bound)
            lhs, rhs = build(*idx, r, s)
            ok = eval_abs_word(lhs) == eval_abs_word(rhs)
            report.add(name, {"indices": list(idx), "r": r, "s": s}, ok)
        if exhaustive:
            if not ring.is_finite:
                raise ValueError("exhaustive sweep needs a finite ring")
            from .report import index_tuples

            idx = index_tuples(l, arity, pred)[0]
            for r in ring.elements():
                for s in ring.elements():
                    lhs, rhs = build(*idx, r, s)
                    ok = eval_abs_word(lhs) == eval_abs_word(rhs)
                    report.add(name, {"indices": list(idx), "r": r, "s": s, "sweep": True}, ok)
    return report
