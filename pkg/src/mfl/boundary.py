"""Boundary types of stable pointed curves and their admissible subsets.

A hyperbolic pair ``(g, n)`` determines the index set ``T_{g,n}`` of boundary
types: the symbol ``irr`` together with classes ``[tau, I]`` of pairs
``(tau, I)`` (``0 <= tau <= g``, ``I`` a subset of ``{1..n}``) modulo
``(tau, I) ~ (g - tau, I^c)``, with ``(0, {})`` and ``(g, {1..n})`` left out.

Index sets are encoded as bitmasks: point ``i`` is bit ``i - 1``.  Every class
is stored through its canonical representative, the one with the smaller
``tau``; when both representatives share ``tau`` the smaller mask wins.

Typical use::

    >>> p = HyperbolicPair(5, 0)
    >>> [format_class(p, c) for c in enumerate_classes(p)]
    ['irr', '1:{}', '2:{}']
    >>> T = parse_typeset(p, "irr,1:{}")
    >>> format_typeset(p, adm_closure(p, T))
    'irr'
"""
from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import ExcludedClass, NotHyperbolic, OutOfRange, TypeSetSyntaxError

DEFAULT_N_CAP = 16


def n_cap():
    """Largest number of marked points accepted (``MFL_N_CAP`` overrides)."""
    return int(os.environ.get("MFL_N_CAP", DEFAULT_N_CAP))


@dataclass(frozen=True, order=True)
class HyperbolicPair:
    g: int
    n: int

    def __post_init__(self):
        if self.g < 0 or self.n < 0:
            raise NotHyperbolic(f"(g,n)=({self.g},{self.n}) has a negative entry")
        if 2 * self.g - 2 + self.n <= 0:
            raise NotHyperbolic(f"(g,n)=({self.g},{self.n}) violates 2g-2+n>0")
        if self.n > n_cap():
            raise OutOfRange(f"n={self.n} exceeds the cap {n_cap()} (set MFL_N_CAP)")

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    def __str__(self):
        return f"({self.g},{self.n})"


class _Irr:
    """The boundary type ``irr``; a singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "IRR"

    def __reduce__(self):
        return (_Irr, ())

    def sort_key(self):
        return (-1, -1)


IRR = _Irr()


@dataclass(frozen=True, order=True)
class BridgeClass:
    """A class ``[tau, I]`` stored by its canonical representative."""

    tau: int
    mask: int

    def sort_key(self):
        return (self.tau, self.mask)

    @property
    def points(self):
        return mask_to_points(self.mask)

    def __repr__(self):
        return f"[{self.tau},{{{','.join(map(str, self.points))}}}]"


def sort_key(elem):
    return elem.sort_key()


def mask_to_points(mask):
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def points_to_mask(p: HyperbolicPair, points: Iterable[int]) -> int:
    mask = 0
    for i in points:
        if not 1 <= i <= p.n:
            raise OutOfRange(f"marked point {i} not in 1..{p.n}")
        mask |= 1 << (i - 1)
    return mask


def _representatives(p, tau, mask):
    return (tau, mask), (p.g - tau, p.full_mask ^ mask)


def class_of(p: HyperbolicPair, tau: int, mask: int) -> BridgeClass | None:
    """Class of ``(tau, mask)``, or None when the pair is out of range or excluded."""
    if not 0 <= tau <= p.g or mask & ~p.full_mask:
        return None
    if (tau, mask) in ((0, 0), (p.g, p.full_mask)):
        return None
    return BridgeClass(*min(_representatives(p, tau, mask)))


def canonicalize(p: HyperbolicPair, tau: int, points: Iterable[int] = ()) -> BridgeClass:
    if not 0 <= tau <= p.g:
        raise OutOfRange(f"tau={tau} not in [0,{p.g}]")
    mask = points_to_mask(p, points)
    c = class_of(p, tau, mask)
    if c is None:
        raise ExcludedClass(f"({tau},{set(mask_to_points(mask)) or '{}'}) is excluded from T_{{{p.g},{p.n}}}")
    return c


def representatives(p: HyperbolicPair, c: BridgeClass):
    """Both representatives of ``c`` (equal when the class is self-paired)."""
    return _representatives(p, c.tau, c.mask)


@lru_cache(maxsize=None)
def enumerate_classes(p: HyperbolicPair) -> tuple:
    """``irr`` followed by every ``[tau, I]`` class, ordered by ``(tau, mask)``."""
    found = set()
    for tau in range(p.g + 1):
        for mask in range(p.full_mask + 1):
            c = class_of(p, tau, mask)
            if c is not None:
                found.add(c)
    return (IRR,) + tuple(sorted(found))


def pair_classes(p):
    return enumerate_classes(p)[1:]


def one_empty(p: HyperbolicPair) -> BridgeClass | None:
    """The class ``[1, {}]`` of elliptic tails (absent when g = 0)."""
    return class_of(p, 1, 0)


def point_class(p: HyperbolicPair, i: int) -> BridgeClass:
    return canonicalize(p, 0, (i,))


def one_point_classes(p: HyperbolicPair) -> frozenset:
    """The classes ``[1, {j}]`` for j = 1..n that exist."""
    out = set()
    for j in range(1, p.n + 1):
        c = class_of(p, 1, 1 << (j - 1))
        if c is not None:
            out.add(c)
    return frozenset(out)


def is_point_class(p: HyperbolicPair, c) -> bool:
    """True for the classes ``[0, {i}]`` of the point bundles."""
    if c is IRR:
        return False
    return any(t == 0 and m and not m & (m - 1) for t, m in representatives(p, c))


def neighbors(p: HyperbolicPair, c: BridgeClass) -> tuple:
    """The classes of ``(tau - 1, I)`` and ``(tau + 1, I)`` that exist."""
    out = []
    for t in (c.tau - 1, c.tau + 1):
        d = class_of(p, t, c.mask)
        if d is not None and d not in out:
            out.append(d)
    return tuple(out)


# ---------------------------------------------------------------------------
# Type sets


@dataclass(frozen=True)
class TypeSet:
    members: frozenset = frozenset()

    @classmethod
    def of(cls, *elems):
        return cls(frozenset(elems))

    @property
    def contains_irr(self):
        return IRR in self.members

    @property
    def classes(self):
        return frozenset(m for m in self.members if m is not IRR)

    def sorted(self):
        return sorted(self.members, key=sort_key)

    def __iter__(self) -> Iterator:
        return iter(self.sorted())

    def __len__(self):
        return len(self.members)

    def __contains__(self, item):
        return item in self.members

    def __or__(self, other):
        return TypeSet(self.members | other.members)

    def __and__(self, other):
        return TypeSet(self.members & other.members)

    def __sub__(self, other):
        return TypeSet(self.members - other.members)

    def __le__(self, other):
        return self.members <= other.members

    def __lt__(self, other):
        return self.members < other.members

    def __repr__(self):
        return "TypeSet(" + ", ".join(map(repr, self.sorted())) + ")"


EMPTY = TypeSet()


def full_typeset(p: HyperbolicPair) -> TypeSet:
    return TypeSet(frozenset(enumerate_classes(p)))


def check_typeset(p: HyperbolicPair, T: TypeSet) -> None:
    valid = set(enumerate_classes(p))
    for m in T.members:
        if m not in valid:
            raise OutOfRange(f"{m!r} is not a class of T_{{{p.g},{p.n}}}")


# ---------------------------------------------------------------------------
# Pair types (elliptic bridge types, i.e. minimal subsets)


@dataclass(frozen=True)
class PairType:
    """``{irr}`` (both fields None) or ``{[tau, I], [tau+1, I]}``.

    The two classes are stored sorted; they coincide for the self-paired
    bridge that exists when n = 0 and g is odd.
    """

    lower: BridgeClass | None = None
    upper: BridgeClass | None = None

    @classmethod
    def bridge(cls, a: BridgeClass, b: BridgeClass):
        lo, hi = sorted((a, b))
        return cls(lo, hi)

    @property
    def is_irr(self):
        return self.lower is None

    @property
    def members(self) -> frozenset:
        if self.is_irr:
            return frozenset((IRR,))
        return frozenset((self.lower, self.upper))

    def as_typeset(self):
        return TypeSet(self.members)

    def sort_key(self):
        if self.is_irr:
            return ((-1, -1), (-1, -1))
        return (self.lower.sort_key(), self.upper.sort_key())

    def __repr__(self):
        if self.is_irr:
            return "{irr}"
        return f"{{{self.lower!r},{self.upper!r}}}"


IRR_TYPE = PairType()


def is_bridge_pair(p: HyperbolicPair, t: PairType) -> bool:
    """Whether ``t`` is the type of an elliptic bridge curve on (g, n)."""
    if t.is_irr:
        return p.g >= 2
    valid = set(pair_classes(p))
    if t.lower not in valid or t.upper not in valid:
        return False
    if one_empty(p) in (t.lower, t.upper):
        return False
    return t.upper in neighbors(p, t.lower)


@lru_cache(maxsize=None)
def minimal_subsets(p: HyperbolicPair) -> tuple:
    """The minimal subsets of ``T_{g,n}``, i.e. the elliptic bridge types."""
    out = set()
    excluded = one_empty(p)
    for c in pair_classes(p):
        if c == excluded:
            continue
        for d in neighbors(p, c):
            if d != excluded:
                out.add(PairType.bridge(c, d))
    ordered = sorted(out, key=PairType.sort_key)
    if p.g >= 2:
        ordered.insert(0, IRR_TYPE)
    return tuple(ordered)


def minimal_subsets_in(p: HyperbolicPair, T: TypeSet) -> tuple:
    return tuple(m for m in minimal_subsets(p) if m.members <= T.members)


# ---------------------------------------------------------------------------
# Admissibility


def _stripped(p, T):
    drop = {one_empty(p)}
    if p.g <= 1:
        drop.add(IRR)
    return T.members - drop


def is_admissible(p: HyperbolicPair, T: TypeSet) -> bool:
    if one_empty(p) in T.members:
        return False
    if p.g <= 1 and T.contains_irr:
        return False
    return all(any(d in T.members for d in neighbors(p, c)) for c in T.classes)


def adm_closure(p: HyperbolicPair, T: TypeSet) -> TypeSet:
    """The admissible part: strip ``[1,{}]`` (and irr if g <= 1), then drop
    in one pass every class with no neighbour left."""
    kept = _stripped(p, T)
    out = {c for c in kept if c is IRR or any(d in kept for d in neighbors(p, c))}
    return TypeSet(frozenset(out))


def divisorial_part(p: HyperbolicPair, T: TypeSet) -> TypeSet:
    if (p.g, p.n) in ((1, 1), (2, 1)):
        return EMPTY
    out = set()
    for i in range(1, p.n + 1):
        a, b = class_of(p, 0, 1 << (i - 1)), class_of(p, 1, 1 << (i - 1))
        if a is not None and b is not None and a in T.members and b in T.members:
            out.update((a, b))
    return TypeSet(frozenset(out))


class Comparison(enum.Enum):
    EQUAL = "Equal"
    T_IN_S = "TinS"
    S_IN_T = "SinT"
    INCOMPARABLE = "Incomparable"


def compare_typesets(p: HyperbolicPair, T: TypeSet, S: TypeSet) -> Comparison:
    """How the stacks of T- and S-semistable curves sit inside each other."""
    a, b = adm_closure(p, T), adm_closure(p, S)
    if a == b:
        return Comparison.EQUAL
    if a <= b:
        return Comparison.T_IN_S
    if b <= a:
        return Comparison.S_IN_T
    return Comparison.INCOMPARABLE


# ---------------------------------------------------------------------------
# Text and JSON forms

_ITEM = re.compile(r"\s*(?:(irr)|(-?\d+)\s*:\s*\{\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\})\s*")


def parse_typeset(p: HyperbolicPair, text: str) -> TypeSet:
    """Parse ``irr,0:{1},1:{1}``; ``full`` and the empty string are accepted."""
    if text.strip() == "full":
        return full_typeset(p)
    members = set()
    pos = 0
    if not text.strip():
        return EMPTY
    while True:
        m = _ITEM.match(text, pos)
        if m is None or m.end() == m.start():
            raise TypeSetSyntaxError("expected 'irr' or 'tau:{i,...}'", text, pos)
        if m.group(1):
            members.add(IRR)
        else:
            pts = [int(x) for x in m.group(3).split(",")] if m.group(3).strip() else []
            members.add(canonicalize(p, int(m.group(2)), pts))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != ",":
            raise TypeSetSyntaxError("expected ','", text, pos)
        pos += 1
    return TypeSet(frozenset(members))


def format_class(p: HyperbolicPair, c) -> str:
    if c is IRR:
        return "irr"
    return f"{c.tau}:{{{','.join(map(str, c.points))}}}"


def format_typeset(p: HyperbolicPair, T: TypeSet) -> str:
    return ",".join(format_class(p, c) for c in T)


def format_pair_type(p: HyperbolicPair, t: PairType) -> str:
    if t.is_irr:
        return "{irr}"
    return "{" + format_class(p, t.lower) + "," + format_class(p, t.upper) + "}"


def typeset_to_json(T: TypeSet) -> dict:
    return {
        "irr": T.contains_irr,
        "pairs": [[c.tau, list(c.points)] for c in sorted(T.classes)],
    }


def typeset_from_json(p: HyperbolicPair, obj: dict) -> TypeSet:
    members = {canonicalize(p, tau, pts) for tau, pts in obj.get("pairs", [])}
    if obj.get("irr"):
        members.add(IRR)
    return TypeSet(frozenset(members))
