"""Line-delimited report records and the seeded sampling helpers shared by all suites.

All randomness comes from ``random.Random(seed)`` (MT19937, seeded from the
integer seed). Its integer seeding and ``randrange``/``randint``/``shuffle``
are stable across CPython versions and platforms, so a seed fully determines
a report.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .space import indices, sgn


PASS, FAIL, SKIP = "pass", "fail", "skip"
EXACT, IMAGE = "exact", "image-level"


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


@dataclass
class Record:
    suite: str
    entry: str
    binding: Dict[str, object]
    result: str
    exactness: str = IMAGE
    detail: str = ""

    def to_json(self) -> str:
        d = {
            "suite": self.suite,
            "entry": self.entry,
            "binding": self.binding,
            "result": self.result,
            "exactness": self.exactness,
        }
        if self.detail:
            d["detail"] = self.detail
        return json.dumps(d, sort_keys=True, separators=(",", ":"))


@dataclass
class Report:
    suite: str
    records: List[Record] = field(default_factory=list)

    def add(self, entry: str, binding: Dict[str, object], ok: bool, exactness: str = IMAGE, detail: str = "") -> Record:
        rec = Record(self.suite, entry, binding, PASS if ok else FAIL, exactness, detail)
        self.records.append(rec)
        return rec

    def skip(self, entry: str, binding: Dict[str, object], detail: str = "") -> Record:
        rec = Record(self.suite, entry, binding, SKIP, IMAGE, detail)
        self.records.append(rec)
        return rec

    def extend(self, other: "Report") -> "Report":
        self.records.extend(other.records)
        return self

    @property
    def failures(self) -> List[Record]:
        return [r for r in self.records if r.result == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def count(self, entry: str = None, result: str = PASS, exactness: str = None) -> int:
        return sum(
            1
            for r in self.records
            if (entry is None or r.entry == entry)
            and r.result == result
            and (exactness is None or r.exactness == exactness)
        )

    def entries(self) -> List[str]:
        seen = {}
        for r in self.records:
            seen.setdefault(r.entry, None)
        return list(seen)

    def lines(self) -> Iterable[str]:
        for r in self.records:
            yield r.to_json()

    def to_jsonl(self) -> str:
        return "".join(line + "\n" for line in self.lines())

    def summary(self) -> Dict[str, Dict[str, int]]:
        out: Dict[str, Dict[str, int]] = {}
        for r in self.records:
            d = out.setdefault(r.entry, {PASS: 0, FAIL: 0, SKIP: 0})
            d[r.result] += 1
        return out


def pattern_key(t: Sequence[int]) -> Tuple:
    """Stratum of an index tuple: its sign pattern plus which entries are negatives of each other."""
    signs = tuple(sgn(x) for x in t)
    opposite = tuple(t[a] == -t[b] for a, b in itertools.combinations(range(len(t)), 2))
    equal = tuple(t[a] == t[b] for a, b in itertools.combinations(range(len(t)), 2))
    return signs + opposite + equal


def index_tuples(l: int, arity: int, pred: Callable[..., bool]) -> List[Tuple[int, ...]]:
    return [t for t in itertools.product(indices(l), repeat=arity) if pred(*t)]


def stratified(rng: random.Random, l: int, arity: int, pred: Callable[..., bool], count: int) -> List[Tuple[int, ...]]:
    """``count`` index tuples satisfying ``pred``, cycling through all strata.

    Strata are keyed by ``pattern_key`` so every sign pattern and every
    j = -i style coincidence allowed by ``pred`` gets drawn.
    """
    groups: Dict[Tuple, List[Tuple[int, ...]]] = {}
    for t in index_tuples(l, arity, pred):
        groups.setdefault(pattern_key(t), []).append(t)
    if not groups:
        return []
    keys = sorted(groups)
    rng.shuffle(keys)
    out = []
    for n in range(count):
        out.append(rng.choice(groups[keys[n % len(keys)]]))
    return out
