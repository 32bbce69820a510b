"""V = R^{2l} with the hyperbolic basis e_{-l}, ..., e_{-1}, e_1, ..., e_l.

Storage order is fixed: slot 0 holds e_{-l}, slot l-1 holds e_{-1}, slot l
holds e_1 and slot 2l-1 holds e_l. Every module goes through ``slot`` and
``indices`` so there is exactly one mapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

from .ring import Ring, RingMismatch


MIN_RANK = 3


def sgn(i: int) -> int:
    return 1 if i > 0 else -1


def indices(l: int) -> Tuple[int, ...]:
    return tuple(range(-l, 0)) + tuple(range(1, l + 1))


def slot(i: int, l: int) -> int:
    if i == 0 or abs(i) > l:
        raise IndexError("index %d out of range for rank %d" % (i, l))
    return i + l if i < 0 else i + l - 1


def index_of(s: int, l: int) -> int:
    return s - l if s < l else s - l + 1


def check_rank(l: int) -> None:
    if l < MIN_RANK:
        raise ValueError("rank l must be >= %d, got %d" % (MIN_RANK, l))


@dataclass(frozen=True)
class HVector:
    ring: Ring
    l: int
    coords: Tuple[int, ...]

    def __post_init__(self):
        check_rank(self.l)
        if len(self.coords) != 2 * self.l:
            raise ValueError("expected %d coordinates, got %d" % (2 * self.l, len(self.coords)))
        m = self.ring.modulus
        coords = tuple(map(int, self.coords))
        object.__setattr__(self, "coords", coords if m is None else tuple(c % m for c in coords))

    @classmethod
    def zero(cls, ring: Ring, l: int) -> "HVector":
        return cls(ring, l, (0,) * (2 * l))

    @classmethod
    def basis(cls, ring: Ring, l: int, i: int, a=1) -> "HVector":
        c = [0] * (2 * l)
        c[slot(i, l)] = ring.coerce(a)
        return cls(ring, l, tuple(c))

    @classmethod
    def from_map(cls, ring: Ring, l: int, entries) -> "HVector":
        c = [0] * (2 * l)
        for i, a in dict(entries).items():
            c[slot(i, l)] = ring.coerce(a)
        return cls(ring, l, tuple(c))

    def __getitem__(self, i: int) -> int:
        return self.coords[slot(i, self.l)]

    def items(self) -> Iterator[Tuple[int, int]]:
        return zip(indices(self.l), self.coords)

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, c in self.items() if c)

    def _same(self, other: "HVector"):
        if not isinstance(other, HVector):
            raise TypeError("expected HVector, got %r" % (other,))
        if other.ring != self.ring:
            raise RingMismatch("vectors over %s and %s" % (self.ring, other.ring))
        if other.l != self.l:
            raise ValueError("rank mismatch: %d vs %d" % (self.l, other.l))

    def __add__(self, other: "HVector") -> "HVector":
        self._same(other)
        return HVector(self.ring, self.l, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "HVector") -> "HVector":
        self._same(other)
        return HVector(self.ring, self.l, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "HVector":
        return HVector(self.ring, self.l, tuple(-a for a in self.coords))

    def scale(self, a) -> "HVector":
        """Right scalar multiplication v*a."""
        a = self.ring.coerce(a)
        return HVector(self.ring, self.l, tuple(c * a for c in self.coords))

    __mul__ = scale

    def with_coord(self, i: int, a) -> "HVector":
        c = list(self.coords)
        c[slot(i, self.l)] = self.ring.coerce(a)
        return HVector(self.ring, self.l, tuple(c))

    def drop(self, *idx: int) -> "HVector":
        """Copy with the given coordinates set to zero."""
        c = list(self.coords)
        for i in idx:
            c[slot(i, self.l)] = 0
        return HVector(self.ring, self.l, tuple(c))

    def keep(self, *idx: int) -> "HVector":
        c = [0] * (2 * self.l)
        for i in idx:
            s = slot(i, self.l)
            c[s] = self.coords[s]
        return HVector(self.ring, self.l, tuple(c))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def all_in(self, d: int) -> bool:
        """Every coordinate lies in the principal ideal dR."""
        return all(self.ring.in_principal(c, d) for c in self.coords)

    def __str__(self):
        terms = []
        for i, c in self.items():
            if c:
                terms.append("e(%d)" % i if c == 1 else "e(%d)*%d" % (i, c))
        return " + ".join(terms) if terms else "0"

    def dense(self) -> str:
        return "[" + ",".join(str(c) for c in self.coords) + "]"


def form(u: HVector, v: HVector) -> int:
    """The symplectic form <u, v> = sum_{i>0} (u_i v_{-i} - u_{-i} v_i)."""
    u._same(v)
    l = u.l
    cu, cv = u.coords, v.coords
    total = 0
    for s in range(l, 2 * l):
        m = 2 * l - 1 - s  # slot of -i when s is the slot of i
        total += cu[s] * cv[m] - cu[m] * cv[s]
    return u.ring.reduce(total)


def split_pm(v: HVector) -> Tuple[HVector, HVector]:
    """(v_-, v_+): the parts supported on negative and positive indices."""
    l = v.l
    neg = v.coords[:l] + (0,) * l
    pos = (0,) * l + v.coords[l:]
    return HVector(v.ring, l, neg), HVector(v.ring, l, pos)


def pm_form(v: HVector) -> int:
    """<v_-, v_+>, which shows up in every membership side condition."""
    return form(*split_pm(v))


def gamma_defect(M, v: HVector, F) -> Tuple[int, bool]:
    """<(Mv)_-, (Mv)_+> - <v_-, v_+> and whether it lies in Gamma."""
    from .ring import gamma_member

    if v.ring != F.ring:
        raise RingMismatch("vector over %s, form ideal over %s" % (v.ring, F.ring))
    if not v.all_in(F.level):
        raise ValueError("v must have all coordinates in I")
    if not M.is_symplectic():
        raise ValueError("M is not symplectic")
    fv = M.apply(v)
    d = v.ring.reduce(pm_form(fv) - pm_form(v))
    return d, gamma_member(d, F)


def vector_sum(vs: Iterable[HVector], ring: Ring, l: int) -> HVector:
    total = HVector.zero(ring, l)
    for v in vs:
        total = total + v
    return total
