"""Text syntax for vectors, absolute/relative/vdK words and matrices.

    vector    e(-2)*3 + e(1) - e(3)*2  |  [c_{-l}, ..., c_l]  |  0
    abs word  X(1,2;3) X(2,-2;1)^-1   (empty or "1" is the identity)
    rel word  <X(1,2;1)> |> Y(1,2;2) Y(2,-2;4)^-1
    vdK word  (word=X(1,2;1), i=1, v=e(2)*3, a=2, b=0)^-1 ...
    matrix    JSON list of rows
"""

from __future__ import annotations

import json
import re
from typing import Tuple

from .relative import RelAtom, RelGen, RelWord
from .ring import Ring
from .space import HVector, slot
from .transvections import SpMatrix
from .words import AbsGen, AbsWord, ElemColumn


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__("%s at position %d: %r" % (message, pos, text[pos:pos + 20]))
        self.text = text
        self.pos = pos


_INT = re.compile(r"[+-]?\s*\d+")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def done(self) -> bool:
        self.ws()
        return self.pos >= len(self.text)

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def take(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.take(s):
            self.fail("expected %r" % s)

    def int(self) -> int:
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group().replace(" ", ""))

    def fail(self, msg: str):
        raise ParseError(msg, self.text, self.pos)


def _inverse_mark(c: _Cursor) -> int:
    if c.take("^"):
        c.expect("-1")
        return -1
    return 1


def _index(c: _Cursor, l: int) -> int:
    start = c.pos
    i = c.int()
    if i == 0 or abs(i) > l:
        c.pos = start
        c.fail("index %d out of range for rank %d" % (i, l))
    return i


# --- vectors ----------------------------------------------------------------------


def _vector(c: _Cursor, ring: Ring, l: int) -> HVector:
    c.ws()
    if c.take("["):
        vals = []
        if not c.peek("]"):
            vals.append(c.int())
            while c.take(","):
                vals.append(c.int())
        c.expect("]")
        if len(vals) != 2 * l:
            c.fail("dense vector needs %d entries, got %d" % (2 * l, len(vals)))
        return HVector(ring, l, tuple(vals))
    coords = [0] * (2 * l)
    sign = 1
    if c.take("-"):
        sign = -1
    first = True
    while True:
        c.ws()
        if c.peek("e("):
            c.expect("e(")
            i = _index(c, l)
            c.expect(")")
            k = 1
            if c.take("*"):
                k = c.int()
            coords[slot(i, l)] += sign * k
        elif first and re.match(r"\d", c.text[c.pos:c.pos + 1] or " "):
            start = c.pos
            if c.int() != 0:
                c.pos = start
                c.fail("a bare scalar is only allowed as the zero vector")
        else:
            c.fail("expected e(i) term")
        first = False
        if c.take("+"):
            sign = 1
        elif c.take("-"):
            sign = -1
        else:
            break
    return HVector(ring, l, tuple(coords))


def parse_vector(text: str, ring: Ring, l: int) -> HVector:
    c = _Cursor(text)
    v = _vector(c, ring, l)
    if not c.done():
        c.fail("trailing input")
    return v


# --- words ------------------------------------------------------------------------


def _abs_letters(c: _Cursor, ring: Ring, l: int, stop: Tuple[str, ...] = ()) -> AbsWord:
    letters = []
    c.ws()
    if c.peek("1") and not c.text[c.pos + 1:c.pos + 2].isdigit():
        c.take("1")
        return AbsWord.empty(ring, l)
    while not c.done() and not any(c.peek(s) for s in stop):
        c.expect("X(")
        start = c.pos
        i = _index(c, l)
        c.expect(",")
        j = _index(c, l)
        if i == j:
            c.pos = start
            c.fail("X_ij needs i != j")
        c.expect(";")
        r = c.int()
        c.expect(")")
        letters.append((AbsGen(i, j, ring.reduce(r)), _inverse_mark(c)))
    return AbsWord(ring, l, tuple(letters))


def parse_abs_word(text: str, ring: Ring, l: int) -> AbsWord:
    c = _Cursor(text)
    w = _abs_letters(c, ring, l)
    if not c.done():
        c.fail("trailing input")
    return w


def parse_rel_word(text: str, ring: Ring, l: int) -> RelWord:
    c = _Cursor(text)
    atoms = []
    if c.peek("1") and c.text.strip() == "1":
        return RelWord.empty(ring, l)
    while not c.done():
        g: tuple = ()
        if c.take("<"):
            g = _abs_letters(c, ring, l, (">",)).letters
            c.expect(">")
            c.expect("|>")
        c.expect("Y(")
        start = c.pos
        i = _index(c, l)
        c.expect(",")
        j = _index(c, l)
        if i == j:
            c.pos = start
            c.fail("Y_ij needs i != j")
        c.expect(";")
        a = c.int()
        c.expect(")")
        atoms.append(RelAtom(g, RelGen(i, j, ring.reduce(a)), _inverse_mark(c)))
    return RelWord(ring, l, tuple(atoms))


def _vdk_gen(c: _Cursor, ring: Ring, l: int):
    from .vdk import VdKGen

    start = c.pos
    c.expect("(")
    fields = {}
    while True:
        c.ws()
        m = re.match(r"[a-z]+", c.text[c.pos:])
        if not m:
            c.fail("expected a field name")
        name = m.group()
        c.pos += len(name)
        c.expect("=")
        if name == "word":
            fields[name] = _abs_letters(c, ring, l, (",", ")"))
        elif name == "i":
            fields[name] = _index(c, l)
        elif name == "v":
            fields[name] = _vector(c, ring, l)
        elif name in ("a", "b"):
            fields[name] = c.int()
        else:
            c.fail("unknown field %r" % name)
        if not c.take(","):
            break
    c.expect(")")
    missing = [k for k in ("i", "v", "a", "b") if k not in fields]
    if missing:
        c.pos = start
        c.fail("missing fields %s" % ", ".join(missing))
    word = fields.get("word", AbsWord.empty(ring, l))
    col = ElemColumn.from_word(word, fields["i"])
    try:
        return VdKGen(col, fields["v"], fields["a"], fields["b"], _inverse_mark(c))
    except ValueError as exc:
        c.pos = start
        c.fail(str(exc))


def parse_vdk_gen(text: str, ring: Ring, l: int):
    c = _Cursor(text)
    g = _vdk_gen(c, ring, l)
    if not c.done():
        c.fail("trailing input")
    return g


def parse_vdk_word(text: str, ring: Ring, l: int):
    from .vdk import VdKWord

    c = _Cursor(text)
    gens = []
    if text.strip() in ("", "1"):
        return VdKWord(ring, l, ())
    while not c.done():
        gens.append(_vdk_gen(c, ring, l))
    return VdKWord(ring, l, tuple(gens))


# --- matrices ---------------------------------------------------------------------


def parse_matrix(text: str, ring: Ring, l: int) -> SpMatrix:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("bad JSON: %s" % exc.msg, text, exc.pos) from None
    n = 2 * l
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError("expected %d rows" % n, text, 0)
    for r in rows:
        if not isinstance(r, list) or len(r) != n or not all(isinstance(x, (int, str)) for x in r):
            raise ParseError("each row needs %d integers" % n, text, 0)
    try:
        return SpMatrix.from_rows(ring, l, [[int(x) for x in r] for r in rows])
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from None
