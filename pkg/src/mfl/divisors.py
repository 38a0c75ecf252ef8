"""Rational Picard groups as explicit quotient spaces.

Every space considered here has ``Pic(...)_Q`` presented as a quotient of the
space freely spanned by ``lambda``, ``delta_irr`` and one ``delta_{i,I}`` per
class ``[i, I]``: some generators are killed (boundary divisors that are not
in the open substack) and, in genus 1 and 2, a few linear relations hold.

A :class:`DivisorClass` stores the coefficients with killed generators set to
zero; :func:`reduce` further applies the relations to give a canonical coset
representative.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import boundary as bd
from .boundary import IRR, HyperbolicPair, TypeSet
from .errors import (ExcludedClass, GenusZeroUnsupported, UnknownName,
                     WrongSpace)
from .linalg import Echelon, dot, sparse

LAMBDA = "lambda"


@dataclass(frozen=True)
class Space:
    """One of ``ulci``, ``bar``, ``ps``, ``t`` or ``tplus``; the last two carry T."""

    kind: str
    typeset: TypeSet | None = None

    def __post_init__(self):
        if self.kind not in ("ulci", "bar", "ps", "t", "tplus"):
            raise UnknownName(f"unknown space {self.kind!r}")
        if (self.kind in ("t", "tplus")) != (self.typeset is not None):
            raise ValueError(f"space {self.kind!r} needs a type set iff it is t or tplus")

    @property
    def uses_ps_presentation(self):
        return self.kind in ("ps", "t")

    def __str__(self):
        return self.kind if self.typeset is None else f"{self.kind}[{len(self.typeset)}]"


ULCI = Space("ulci")
BAR = Space("bar")
PS = Space("ps")


def space_t(T: TypeSet) -> Space:
    return Space("t", T)


def space_tplus(T: TypeSet) -> Space:
    return Space("tplus", T)


def space_from_name(name: str, T: TypeSet | None = None) -> Space:
    name = name.lower()
    if name in ("t", "tplus"):
        return Space(name, T if T is not None else bd.EMPTY)
    return Space(name)


@dataclass(frozen=True)
class Presentation:
    pair: HyperbolicPair
    generators: tuple
    killed: frozenset
    relations: tuple  # dense rows of Fractions, columns = generators
    index: dict = field(compare=False, repr=False)
    echelon: Echelon = field(compare=False, repr=False)

    @property
    def rank(self):
        if self.pair.g == 0:
            raise GenusZeroUnsupported("genus 0 relations are not encoded")
        return len(self.generators) - self.echelon.rank

    def vector(self, L: "DivisorClass") -> dict:
        v = {}
        if L.a:
            v[0] = L.a
        if L.b_irr:
            v[1] = L.b_irr
        for c, x in L.b:
            v[self.index[c]] = x
        return v

    def subspace_rows(self):
        """Rows spanning what is quotiented out: killed unit vectors and relations."""
        rows = [{self.index[c]: Fraction(1)} for c in sorted(self.killed, key=bd.sort_key)]
        rows.extend(sparse(r) for r in self.relations)
        return rows

    def free_columns(self):
        """Non-pivot generators; their images form a basis of the quotient."""
        return [c for c in range(len(self.generators)) if c not in self.echelon.rows]


def _killed(p, s: Space):
    if s.kind in ("ulci", "bar"):
        return frozenset()
    out = set()
    e = bd.one_empty(p)
    if e is not None:
        out.add(e)
    if s.kind == "tplus":
        T = s.typeset
        for i in range(1, p.n + 1):
            a, b = bd.class_of(p, 0, 1 << (i - 1)), bd.class_of(p, 1, 1 << (i - 1))
            if a is not None and b is not None and a in T and b in T:
                out.add(b)
    return frozenset(out)


def _relations(p, gens, index):
    rows = []
    width = len(gens)
    if p.g == 2:
        row = [Fraction(0)] * width
        row[0] = Fraction(10)
        row[1] = Fraction(-1)
        for c in gens[2:]:
            if any(t == 1 for t, _ in bd.representatives(p, c)):
                row[index[c]] -= 2
        rows.append(tuple(row))
    elif p.g == 1:
        row = [Fraction(0)] * width
        row[0], row[1] = Fraction(12), Fraction(-1)
        rows.append(tuple(row))
        for pt in range(1, p.n + 1):
            row = [Fraction(0)] * width
            row[1] = Fraction(1)
            bit = 1 << (pt - 1)
            for c in gens[2:]:
                if any(t == 0 and m & bit for t, m in bd.representatives(p, c)):
                    row[index[c]] += 12
            rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=4096)
def presentation(p: HyperbolicPair, s: Space) -> Presentation:
    if s.typeset is not None:
        bd.check_typeset(p, s.typeset)
    gens = (LAMBDA,) + bd.enumerate_classes(p)
    index = {g: i for i, g in enumerate(gens)}
    killed = _killed(p, s)
    relations = _relations(p, gens, index)
    rows = [{index[c]: Fraction(1)} for c in sorted(killed, key=bd.sort_key)]
    rows.extend(sparse(r) for r in relations)
    return Presentation(p, gens, killed, relations, index, Echelon(rows))


def rank(p: HyperbolicPair, s: Space) -> int:
    return presentation(p, s).rank


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DivisorClass:
    """``a*lambda + b_irr*delta_irr + sum b[c]*delta_c`` on a given space."""

    pair: HyperbolicPair
    space: Space
    a: Fraction = Fraction(0)
    b_irr: Fraction = Fraction(0)
    b: tuple = ()  # sorted (BridgeClass, Fraction) items, nonzero only

    @classmethod
    def build(cls, p, s, a=0, b_irr=0, b=None):
        killed = presentation(p, s).killed
        items = {}
        for c, x in (b or {}).items():
            x = Fraction(x)
            if x and c not in killed:
                items[c] = items.get(c, 0) + x
        return cls(p, s, Fraction(a), Fraction(b_irr),
                   tuple(sorted((c, x) for c, x in items.items() if x)))

    @classmethod
    def from_vector(cls, p, s, v: dict):
        gens = presentation(p, s).generators
        return cls.build(p, s, v.get(0, 0), v.get(1, 0),
                         {gens[i]: x for i, x in v.items() if i >= 2})

    def coeff(self, c) -> Fraction:
        if c == LAMBDA:
            return self.a
        if c is IRR:
            return self.b_irr
        for k, x in self.b:
            if k == c:
                return x
        return Fraction(0)

    @property
    def bmap(self) -> dict:
        return dict(self.b)

    def is_zero(self):
        return not (self.a or self.b_irr or self.b)

    def _combine(self, other, sign):
        if other.pair != self.pair or other.space != self.space:
            raise WrongSpace(f"cannot combine classes on {self.space} and {other.space}")
        b = self.bmap
        for c, x in other.b:
            b[c] = b.get(c, 0) + sign * x
        return DivisorClass.build(self.pair, self.space, self.a + sign * other.a,
                                  self.b_irr + sign * other.b_irr, b)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, k):
        k = Fraction(k)
        return DivisorClass.build(self.pair, self.space, self.a * k, self.b_irr * k,
                                  {c: x * k for c, x in self.b})

    __rmul__ = __mul__

    def on(self, s: Space) -> "DivisorClass":
        """The same coefficients read on another space (killed ones dropped)."""
        return DivisorClass.build(self.pair, s, self.a, self.b_irr, self.bmap)

    def __repr__(self):
        parts = [f"{self.a}*lambda", f"{self.b_irr}*delta_irr"]
        parts += [f"{x}*delta{c!r}" for c, x in self.b]
        return f"DivisorClass<{self.space}>(" + " + ".join(parts) + ")"


def zero(p, s):
    return DivisorClass.build(p, s)


def reduce(p: HyperbolicPair, s: Space, L: DivisorClass) -> DivisorClass:
    pres = presentation(p, s)
    return DivisorClass.from_vector(p, s, pres.echelon.reduce(pres.vector(L.on(s))))


def classes_equal(p, s, L1, L2) -> bool:
    return reduce(p, s, L1.on(s) - L2.on(s)).is_zero()


# ---------------------------------------------------------------------------
# Named classes


def _delta(p, s, c):
    return DivisorClass.build(p, s, b={c: 1})


def named_class(p: HyperbolicPair, s: Space, name: str, arg=None) -> DivisorClass:
    """Standard classes: ``lambda``, ``delta_irr``, ``delta`` (with ``arg=(tau, I)``
    the single boundary class), ``psi`` (with ``arg=i`` a single point),
    ``delta_hat``, ``K``, ``K_plus_psi``, ``N``."""
    classes = bd.pair_classes(p)
    if name == "lambda":
        return DivisorClass.build(p, s, a=1)
    if name == "delta_irr":
        return DivisorClass.build(p, s, b_irr=1)
    if name == "delta" and arg is not None:
        tau, pts = arg
        return _delta(p, s, bd.canonicalize(p, tau, pts))
    if name == "psi" and arg is not None:
        return DivisorClass.build(p, s, b={bd.point_class(p, arg): -1})
    if name == "psi":
        return DivisorClass.build(p, s, b={bd.point_class(p, i): -1 for i in range(1, p.n + 1)})
    if name == "delta":
        return DivisorClass.build(p, s, b_irr=1,
                                  b={c: 1 for c in classes if not bd.is_point_class(p, c)})
    if name == "delta_hat":
        return DivisorClass.build(p, s, b_irr=1, b={c: 1 for c in classes})
    if name == "K":
        return (13 * named_class(p, s, "lambda") - 2 * named_class(p, s, "delta")
                + named_class(p, s, "psi"))
    if name == "K_plus_psi":
        return 13 * named_class(p, s, "lambda") - 2 * named_class(p, s, "delta_hat")
    if name == "N":
        return Fraction(13, 10) * (10 * named_class(p, s, "lambda") - named_class(p, s, "delta_hat"))
    raise UnknownName(f"unknown divisor name {name!r}")


PRESETS = {
    "lambda": "lambda", "delta_irr": "delta_irr", "psi": "psi", "delta": "delta",
    "delta_hat": "delta_hat", "K": "K", "K+psi": "K_plus_psi", "K_plus_psi": "K_plus_psi",
    "N": "N",
}

_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?"
    r"(K\+psi|K_plus_psi|delta_hat|delta_irr|lambda|delta:-?\d+:\{[\d,\s]*\}|psi:\d+|psi|delta|K|N)\s*"
)


def parse_divisor(p: HyperbolicPair, s: Space, text: str) -> DivisorClass:
    """Parse a preset (``K+psi``), a combination (``10*lambda - delta_hat``,
    ``delta:2:{}``, ``psi:1``) or the JSON form."""
    text = text.strip()
    if text.startswith("{"):
        return divisor_from_json(p, s, json.loads(text))
    total = zero(p, s)
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or (not first and m.group(1) is None):
            raise UnknownName(f"cannot parse divisor at position {pos}: {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        k = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        total = total + (sign * k) * _term(p, s, m.group(3))
        pos = m.end()
        first = False
    if first:
        raise UnknownName("empty divisor")
    return total


def _term(p, s, word):
    if word.startswith("delta:"):
        tau, pts = word.split(":", 2)[1:]
        pts = [int(x) for x in pts.strip("{}").split(",") if x.strip()]
        return named_class(p, s, "delta", (int(tau), pts))
    if word.startswith("psi:"):
        i = int(word.split(":")[1])
        if not 1 <= i <= p.n:
            raise ExcludedClass(f"no marked point {i}")
        return named_class(p, s, "psi", i)
    return named_class(p, s, PRESETS[word])


def fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def divisor_to_json(L: DivisorClass) -> dict:
    p = L.pair
    return {
        "lambda": fmt_rational(L.a),
        "irr": fmt_rational(L.b_irr),
        "classes": {bd.format_class(p, c): fmt_rational(x) for c, x in L.b},
    }


def divisor_from_json(p, s, obj) -> DivisorClass:
    b = {}
    for key, val in obj.get("classes", {}).items():
        c = bd.parse_typeset(p, key).sorted()
        if len(c) != 1 or c[0] is IRR:
            raise ExcludedClass(f"bad class key {key!r}")
        b[c[0]] = Fraction(val)
    return DivisorClass.build(p, s, Fraction(obj.get("lambda", 0)), Fraction(obj.get("irr", 0)), b)


def pullback_upsilon(p: HyperbolicPair, L: DivisorClass) -> DivisorClass:
    """Pull a class on the pseudostable space back along the contraction of
    elliptic tails: lambda and delta_irr pick up delta_{1,{}} terms."""
    if L.space != PS:
        raise WrongSpace(f"pullback needs a class on ps, got {L.space}")
    b = L.bmap
    e = bd.one_empty(p)
    if e is not None:
        b[e] = b.get(e, 0) + L.a + 12 * L.b_irr
    return DivisorClass.build(p, BAR, L.a, L.b_irr, b)


def basis(p: HyperbolicPair, s: Space) -> list[DivisorClass]:
    """Unit classes of the free generators; a basis of ``Pic(s)_Q``."""
    pres = presentation(p, s)
    return [DivisorClass.from_vector(p, s, {c: Fraction(1)}) for c in pres.free_columns()]


def spanning_set(p: HyperbolicPair, s: Space) -> list[DivisorClass]:
    """Every non-killed generator as a class."""
    pres = presentation(p, s)
    return [DivisorClass.from_vector(p, s, {i: Fraction(1)})
            for i, g in enumerate(pres.generators) if g not in pres.killed]


def pairing_value(functional: dict, pres: Presentation, L: DivisorClass):
    return dot(functional, pres.vector(L))
