"""Exact scalar rings (integers, integers mod m) and form ideals (I, Gamma)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator, Optional, Union


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    """The ring Z (``modulus=None``) or Z/mZ.

    Elements are handled internally as canonical Python ints; ``Scalar``
    wraps one together with its ring for the public API.
    """

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be >= 2, got %r" % self.modulus)

    @classmethod
    def integers(cls) -> "Ring":
        return cls(None)

    @classmethod
    def zmod(cls, m: int) -> "Ring":
        return cls(m)

    @classmethod
    def parse(cls, text: str) -> "Ring":
        text = text.strip().lower()
        if text in ("z", "zz", "int", "integers"):
            return cls(None)
        if text.startswith("zmod:"):
            try:
                m = int(text[5:])
            except ValueError:
                raise ValueError("bad modulus in ring spec %r" % text) from None
            return cls(m)
        raise ValueError("unknown ring spec %r (expected 'z' or 'zmod:<m>')" % text)

    @property
    def kind(self) -> str:
        return "integers" if self.modulus is None else "integers-mod-m"

    @property
    def is_finite(self) -> bool:
        return self.modulus is not None

    def __str__(self):
        return "z" if self.modulus is None else "zmod:%d" % self.modulus

    def reduce(self, x: int) -> int:
        return x if self.modulus is None else x % self.modulus

    def coerce(self, x: Union[int, "Scalar"]) -> int:
        if isinstance(x, Scalar):
            if x.ring != self:
                raise RingMismatch("scalar from %s used in %s" % (x.ring, self))
            return x.value
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError("expected int or Scalar, got %r" % (x,))
        return self.reduce(x)

    def __call__(self, x: Union[int, "Scalar"]) -> "Scalar":
        return Scalar(self.coerce(x), self)

    def elements(self) -> Iterator[int]:
        if self.modulus is None:
            raise ValueError("cannot enumerate the integers")
        return iter(range(self.modulus))

    def random(self, rng: random.Random, bound: int = 8) -> int:
        """Uniform in [-bound, bound] over Z, uniform over Z/m."""
        if self.modulus is None:
            return rng.randint(-bound, bound)
        return rng.randrange(self.modulus)

    def is_unit(self, x: int) -> bool:
        if self.modulus is None:
            return x in (1, -1)
        return gcd(x, self.modulus) == 1

    def fmt(self, x: int) -> str:
        return str(self.reduce(x))

    def principal(self, gens: Iterable[int]) -> int:
        """Canonical generator d of the ideal generated by ``gens``.

        Over Z/m every ideal is principal and equals dZ/m with d | m.
        Returns 0 for the zero ideal of Z (and m for the zero ideal of Z/m).
        """
        d = 0 if self.modulus is None else self.modulus
        for g in gens:
            d = gcd(d, int(g))
        return d

    def in_principal(self, x: int, d: int) -> bool:
        x = self.reduce(x)
        if d == 0:
            return x == 0
        return x % d == 0


@dataclass(frozen=True)
class Scalar:
    value: int
    ring: Ring

    def __post_init__(self):
        if self.ring.reduce(self.value) != self.value:
            raise ValueError("non-canonical representative %r for %s" % (self.value, self.ring))

    def _other(self, other) -> int:
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise RingMismatch("cannot combine %s and %s scalars" % (self.ring, other.ring))
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.ring.reduce(self.value + o), self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.ring.reduce(self.value - o), self.ring)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.ring.reduce(o - self.value), self.ring)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.ring.reduce(self.value * o), self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.ring.reduce(-self.value), self.ring)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        return Scalar(self.ring.reduce(self.value**n), self.ring)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise RingMismatch("cannot compare %s and %s scalars" % (self.ring, other.ring))
            return self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.ring.reduce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ring))

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


GAMMA_MODES = ("maximal", "minimal", "explicit")


@dataclass(frozen=True)
class FormIdeal:
    """A pair (I, Gamma): an ideal I and a relative form parameter of level I.

    ``gamma_mode`` is ``maximal`` (Gamma = I), ``minimal`` (the smallest
    admissible Gamma, generated additively by 2I and R*I^2) or ``explicit``
    (the additive closure of ``gamma_generators`` under multiplication by
    squares). Over both supported rings every such Gamma turns out to be a
    principal ideal dR, so membership reduces to divisibility by
    ``gamma_level``.
    """

    ring: Ring
    ideal_generators: tuple = (1,)
    gamma_mode: str = "maximal"
    gamma_generators: tuple = field(default=())

    def __post_init__(self):
        if self.gamma_mode not in GAMMA_MODES:
            raise ValueError("gamma_mode must be one of %s" % (GAMMA_MODES,))
        object.__setattr__(
            self, "ideal_generators", tuple(self.ring.coerce(g) for g in self.ideal_generators)
        )
        object.__setattr__(
            self, "gamma_generators", tuple(self.ring.coerce(g) for g in self.gamma_generators)
        )

    @classmethod
    def maximal(cls, ring: Ring, *gens) -> "FormIdeal":
        return cls(ring, tuple(gens) or (1,), "maximal")

    @classmethod
    def minimal(cls, ring: Ring, *gens) -> "FormIdeal":
        return cls(ring, tuple(gens) or (1,), "minimal")

    @classmethod
    def explicit(cls, ring: Ring, ideal_gens, gamma_gens) -> "FormIdeal":
        return cls(ring, tuple(ideal_gens), "explicit", tuple(gamma_gens))

    @cached_property
    def level(self) -> int:
        """Canonical generator of I."""
        return self.ring.principal(self.ideal_generators)

    @cached_property
    def gamma_level(self) -> int:
        """Canonical generator of Gamma (as an additive subgroup it is dR)."""
        ring = self.ring
        if self.gamma_mode == "maximal":
            return self.level
        if self.gamma_mode == "minimal":
            if not ring.is_finite:
                # 2I + I^2 Z with I = dZ is gcd(2d, d^2) Z = d*gcd(2, d) Z
                d = self.level
                return d * gcd(2, d)
            m = ring.modulus
            ideal = [x for x in range(m) if ring.in_principal(x, self.level)]
            seeds = [2 * a for a in ideal]
            seeds += [r * a * a for r in range(m) for a in ideal]
            return ring.principal(seeds)
        if not ring.is_finite:
            # r = 1 already yields each generator; every g r^2 is a multiple
            return ring.principal(self.gamma_generators)
        m = ring.modulus
        return ring.principal(g * r * r for g in self.gamma_generators for r in range(m))

    @property
    def is_maximal(self) -> bool:
        """True when Gamma = I as sets (whatever mode produced it)."""
        return self.gamma_level == self.level

    def ideal_elements(self) -> list:
        return [x for x in self.ring.elements() if self.ring.in_principal(x, self.level)]

    def gamma_elements(self) -> list:
        return [x for x in self.ring.elements() if self.ring.in_principal(x, self.gamma_level)]

    def random_ideal(self, rng: random.Random, bound: int = 8) -> int:
        return self.ring.reduce(self.level * self.ring.random(rng, bound))

    def random_gamma(self, rng: random.Random, bound: int = 8) -> int:
        return self.ring.reduce(self.gamma_level * self.ring.random(rng, bound))

    def describe(self) -> str:
        ideal = ",".join(str(g) for g in self.ideal_generators)
        if self.gamma_mode == "explicit":
            gamma = ",".join(str(g) for g in self.gamma_generators)
        else:
            gamma = self.gamma_mode[:3]
        return "I=(%s) gamma=%s over %s" % (ideal, gamma, self.ring)


def _check_ring(x, F: FormIdeal) -> int:
    return F.ring.coerce(x)


def ideal_member(x, F: FormIdeal) -> bool:
    return F.ring.in_principal(_check_ring(x, F), F.level)


def gamma_member(x, F: FormIdeal) -> bool:
    return F.ring.in_principal(_check_ring(x, F), F.gamma_level)


@dataclass
class FormIdealReport:
    form_ideal: FormIdeal
    exhaustive: bool
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_form_ideal(F: FormIdeal, samples: int = 200, seed: int = 0, bound: int = 8) -> FormIdealReport:
    """Check Gamma <= I and the three closure axioms.

    Finite rings are checked exhaustively; over Z ``samples`` random
    instances per axiom are drawn.
    """
    ring = F.ring
    report = FormIdealReport(F, exhaustive=ring.is_finite)

    def violate(axiom, **witness):
        report.violations.append({"axiom": axiom, **witness})

    if ring.is_finite:
        I = F.ideal_elements()
        G = F.gamma_elements()
        R = list(ring.elements())
        subset = [(g,) for g in G]
        ax_a = [(a,) for a in I]
        ax_b = [(r, a) for r in R for a in I]
        ax_c = [(g, r) for g in G for r in R]
    else:
        rng = random.Random(seed)
        subset = [(F.random_gamma(rng, bound),) for _ in range(samples)]
        ax_a = [(F.random_ideal(rng, bound),) for _ in range(samples)]
        ax_b = [(ring.random(rng, bound), F.random_ideal(rng, bound)) for _ in range(samples)]
        ax_c = [(F.random_gamma(rng, bound), ring.random(rng, bound)) for _ in range(samples)]

    for (g,) in subset:
        report.checked += 1
        if not ideal_member(g, F):
            violate("subset", alpha=g)
    for (a,) in ax_a:
        report.checked += 1
        if not gamma_member(ring.reduce(2 * a), F):
            violate("a", a=a)
    for r, a in ax_b:
        report.checked += 1
        if not gamma_member(ring.reduce(r * a * a), F):
            violate("b", r=r, a=a)
    for g, r in ax_c:
        report.checked += 1
        if not gamma_member(ring.reduce(g * r * r), F):
            violate("c", alpha=g, r=r)
    return report


def parse_form_ideal(ring: Ring, ideal: str = "1", gamma: str = "max") -> FormIdeal:
    """Build a FormIdeal from CLI-style text, e.g. ``ideal='2,6'``, ``gamma='min'``."""
    try:
        gens = tuple(int(t) for t in ideal.split(",") if t.strip())
    except ValueError:
        raise ValueError("bad ideal generator list %r" % ideal) from None
    if not gens:
        raise ValueError("empty ideal generator list")
    g = gamma.strip().lower()
    if g in ("max", "maximal"):
        return FormIdeal(ring, gens, "maximal")
    if g in ("min", "minimal"):
        return FormIdeal(ring, gens, "minimal")
    try:
        ggens = tuple(int(t) for t in g.split(",") if t.strip())
    except ValueError:
        raise ValueError("bad gamma spec %r (expected max, min or a list)" % gamma) from None
    return FormIdeal(ring, gens, "explicit", ggens)
