"""ESD transformations T(u, v, a), elementary transvections and exact matrices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from operator import mul
import random
from typing import List, Tuple

from .report import Report, make_rng
from .ring import Ring, RingMismatch
from .space import HVector, check_rank, form, indices, sgn, slot


class NotSymplectic(ArithmeticError):
    pass


@dataclass(frozen=True)
class SpMatrix:
    """A 2l x 2l matrix; column s is the image of the basis vector in slot s."""

    ring: Ring
    l: int
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        check_rank(self.l)
        n = 2 * self.l
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError("expected a %dx%d matrix" % (n, n))

    @classmethod
    def from_rows(cls, ring: Ring, l: int, rows) -> "SpMatrix":
        return cls(ring, l, tuple(tuple(ring.reduce(int(x)) for x in r) for r in rows))

    @classmethod
    def identity(cls, ring: Ring, l: int) -> "SpMatrix":
        return cls(ring, l, _identity_rows(2 * l))

    @classmethod
    def from_columns(cls, cols) -> "SpMatrix":
        cols = list(cols)
        v0 = cols[0]
        return cls(v0.ring, v0.l, tuple(zip(*(c.coords for c in cols))))

    @property
    def n(self) -> int:
        return 2 * self.l

    def _same(self, other: "SpMatrix"):
        if other.ring != self.ring:
            raise RingMismatch("matrices over %s and %s" % (self.ring, other.ring))
        if other.l != self.l:
            raise ValueError("rank mismatch: %d vs %d" % (self.l, other.l))

    def __matmul__(self, other):
        if isinstance(other, HVector):
            return self.apply(other)
        self._same(other)
        cols = tuple(zip(*other.rows))
        m = self.ring.modulus
        if m is None:
            rows = tuple(tuple(sum(map(mul, r, c)) for c in cols) for r in self.rows)
        else:
            rows = tuple(tuple(sum(map(mul, r, c)) % m for c in cols) for r in self.rows)
        return SpMatrix(self.ring, self.l, rows)

    def apply(self, v: HVector) -> HVector:
        if v.ring != self.ring:
            raise RingMismatch("matrix over %s applied to vector over %s" % (self.ring, v.ring))
        if v.l != self.l:
            raise ValueError("rank mismatch")
        return HVector(self.ring, self.l, tuple(sum(a * b for a, b in zip(r, v.coords)) for r in self.rows))

    def column(self, i: int) -> HVector:
        s = slot(i, self.l)
        return HVector(self.ring, self.l, tuple(r[s] for r in self.rows))

    def entry(self, i: int, j: int) -> int:
        """Coordinate i of the image of e_j."""
        return self.rows[slot(i, self.l)][slot(j, self.l)]

    def transpose(self) -> "SpMatrix":
        return SpMatrix(self.ring, self.l, tuple(zip(*self.rows)))

    def is_identity(self) -> bool:
        return self.rows == _identity_rows(self.n)

    def is_symplectic(self) -> bool:
        return gram_check(self)

    def to_dict(self) -> dict:
        return {
            "ring": str(self.ring),
            "rank": self.l,
            "rows": [[str(x) for x in r] for r in self.rows],
        }

    def __str__(self):
        width = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)


@lru_cache(maxsize=None)
def _identity_rows(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def gram_matrix(ring: Ring, l: int) -> SpMatrix:
    """J with J[s, t] = <e_s, e_t>."""
    idx = indices(l)
    rows = tuple(tuple(ring.reduce(sgn(i) if i == -j else 0) for j in idx) for i in idx)
    return SpMatrix(ring, l, rows)


def gram_check(M: SpMatrix) -> bool:
    """True iff M^T J M = J exactly, i.e. <M e_s, M e_t> = <e_s, e_t> for all s < t."""
    n, l, m = M.n, M.l, M.ring.modulus
    cols = list(zip(*M.rows))
    # <x, y> = sum_p x_p (Jy)_p with (Jy)_p = y_{n-1-p} on the positive half and -y_{n-1-p} below
    jcols = [tuple(-y[n - 1 - p] for p in range(l)) + tuple(y[n - 1 - p] for p in range(l, n)) for y in cols]
    for s in range(n):
        x = cols[s]
        for t in range(s + 1, n):
            val = sum(map(mul, x, jcols[t]))
            if t == n - 1 - s:
                val += 1  # <e_{-k}, e_k> = -1
            if val if m is None else val % m:
                return False
    return True


@dataclass(frozen=True)
class EsdParams:
    u: HVector
    v: HVector
    a: int

    def __post_init__(self):
        self.u._same(self.v)
        object.__setattr__(self, "a", self.u.ring.coerce(self.a))
        if form(self.u, self.v) != 0:
            raise ValueError("ESD parameters need <u, v> = 0, got %d" % form(self.u, self.v))

    @property
    def ring(self) -> Ring:
        return self.u.ring

    @property
    def l(self) -> int:
        return self.u.l

    def inverse(self) -> "EsdParams":
        return EsdParams(self.u, -self.v, -self.a)


def apply_esd(p: EsdParams, w: HVector) -> HVector:
    """w + u(<v,w> + a<u,w>) + v<u,w>."""
    uw = form(p.u, w)
    return w + p.u.scale(form(p.v, w) + p.a * uw) + p.v.scale(uw)


def esd_matrix(p: EsdParams) -> SpMatrix:
    ring, l = p.ring, p.l
    n = 2 * l
    # column t is apply_esd(p, e_t); <x, e_t> = eps_{-t} x_{-t}, and slot(-t) = n - 1 - slot(t)
    uc, vc, a = p.u.coords, p.v.coords, p.a
    fu = [uc[n - 1 - c] if c < l else -uc[n - 1 - c] for c in range(n)]
    fv = [vc[n - 1 - c] if c < l else -vc[n - 1 - c] for c in range(n)]
    coef = [fv[c] + a * fu[c] for c in range(n)]
    rows = tuple(
        tuple((r == c) + us * coef[c] + vs * fu[c] for c in range(n))
        for r, (us, vs) in enumerate(zip(p.u.coords, p.v.coords))
    )
    if ring.modulus is not None:
        m = ring.modulus
        rows = tuple(tuple(x % m for x in row) for row in rows)
    M = SpMatrix(ring, l, rows)
    if not gram_check(M):
        raise NotSymplectic("T(u, v, a) failed the Gram check; <u, v> must be 0")
    return M


def esd(u: HVector, v: HVector, a=0) -> SpMatrix:
    return esd_matrix(EsdParams(u, v, a))


def transvection_params(ring: Ring, l: int, i: int, j: int, a) -> EsdParams:
    """(u, v, a) with T(u, v, a) = T_ij(a)."""
    if i == j:
        raise ValueError("elementary transvection needs i != j")
    a = ring.coerce(a)
    if j == -i:
        return EsdParams(HVector.basis(ring, l, i), HVector.zero(ring, l), a)
    return EsdParams(HVector.basis(ring, l, i), HVector.basis(ring, l, -j, a * sgn(-j)), 0)


@lru_cache(maxsize=1 << 14)
def elementary_transvection(ring: Ring, l: int, i: int, j: int, a) -> SpMatrix:
    """T_ij(a) = T(e_i, e_{-j} a eps_{-j}, 0) for j != -i, T_{i,-i}(a) = T(e_i, 0, a)."""
    return esd_matrix(transvection_params(ring, l, i, j, a))


@lru_cache(maxsize=1 << 16)
def transvection_delta(ring: Ring, l: int, i: int, j: int, a: int) -> Tuple[Tuple[int, int, int], ...]:
    """Nonzero entries (row slot, col slot, value) of T_ij(a) - 1."""
    M = elementary_transvection(ring, l, i, j, a)
    out: List[Tuple[int, int, int]] = []
    for s, row in enumerate(M.rows):
        for t, x in enumerate(row):
            d = ring.reduce(x - (1 if s == t else 0))
            if d:
                out.append((s, t, d))
    return tuple(out)


# --- randomized ESD laws ----------------------------------------------------------

ESD_LAWS = ("symplectic", "identity", "inverse", "composition", "symmetry", "conjugation", "commutator", "fixed-point")


def random_vector(rng: random.Random, ring: Ring, l: int, bound: int = 8) -> HVector:
    return HVector(ring, l, tuple(ring.random(rng, bound) for _ in range(2 * l)))


def random_orthogonal(rng: random.Random, u: HVector, bound: int = 3) -> HVector:
    """Random combination of vectors orthogonal to u: u itself and <u,e_t> e_s - <u,e_s> e_t."""
    ring, l = u.ring, u.l
    n = 2 * l
    uc = u.coords
    # <u, e_t> by slot
    fu = [uc[n - 1 - c] if c < l else -uc[n - 1 - c] for c in range(n)]
    k = ring.random(rng, bound)
    out = [x * k for x in uc]
    for _ in range(3):
        s, t = rng.sample(range(n), 2)
        c = ring.random(rng, bound)
        out[s] += c * fu[t]
        out[t] -= c * fu[s]
    return HVector(ring, l, tuple(out))


def random_transvection_product(rng: random.Random, ring: Ring, l: int, length: int, bound: int = 3):
    """(g, g^-1) for a product of ``length`` random elementary transvections."""
    idx = indices(l)
    g = g_inv = SpMatrix.identity(ring, l)
    for _ in range(length):
        i, j = rng.sample(idx, 2)
        a = ring.random(rng, bound)
        g = g @ elementary_transvection(ring, l, i, j, a)
        g_inv = elementary_transvection(ring, l, i, j, -a) @ g_inv
    return g, g_inv


def verify_esd_laws(ring: Ring, l: int, trials: int, seed: int, bound: int = 8) -> Report:
    """Randomized check of the basic ESD identities, each against explicit matrices."""
    check_rank(l)
    rng = make_rng(seed)
    report = Report("esd")
    r = lambda: ring.random(rng, bound)
    vec = lambda: random_vector(rng, ring, l, bound)
    one = SpMatrix.identity(ring, l)

    for _ in range(trials):
        u = vec()
        v, w = random_orthogonal(rng, u), random_orthogonal(rng, u)
        a, b = r(), r()
        T = esd(u, v, a)
        bind = {"u": str(u), "v": str(v), "w": str(w), "a": a, "b": b}
        report.add("symplectic", bind, gram_check(T))
        report.add("identity", {"u": str(u)}, esd(u, HVector.zero(ring, l), 0).is_identity())
        report.add("inverse", bind, (esd(u, -v, -a) @ T).is_identity() and (T @ esd(u, -v, -a)).is_identity())
        report.add("composition", bind, T @ esd(u, w, b) == esd(u, v + w, a + b + form(v, w)))
        report.add("symmetry", bind, esd(u, v.scale(a), 0) == esd(v, u.scale(a), 0))

        g, g_inv = random_transvection_product(rng, ring, l, rng.randint(0, 5))
        ok = (g @ g_inv) == one and g @ T @ g_inv == esd(g @ u, g @ v, a)
        report.add("conjugation", dict(bind, g=str(g.rows)), ok)

        i = rng.choice(indices(l))
        ei, emi = HVector.basis(ring, l, i), HVector.basis(ring, l, -i)
        x = vec().drop(i, -i)
        y = random_orthogonal(rng, x).drop(i, -i)
        A, B = esd(ei, x, 0), esd(emi, y, a)
        lhs = A @ B @ esd(ei, -x, 0) @ esd(emi, -y, -a)
        rhs = esd(x, y.scale(sgn(i)), a) @ esd(emi, x.scale(-a * sgn(-i)), 0)
        report.add("commutator", {"i": i, "u": str(x), "v": str(y), "a": a}, lhs == rhs)

        z = random_orthogonal(rng, u)
        fixed = [t for t in (z, random_orthogonal(rng, v)) if form(u, t) == 0 and form(v, t) == 0]
        ok = all(apply_esd(EsdParams(u, v, a), t) == t for t in fixed)
        report.add("fixed-point", dict(bind, w=[str(t) for t in fixed]), ok)
    return report
