"""Intersection numbers of divisor classes with the test curves.

Each curve is turned into a linear functional on the generator coordinates
(``lambda``, ``delta_irr``, ``delta_c``...).  Before a functional is used on
a space it is checked against that space's killed generators and relations;
a functional that does not vanish there would not be well defined on the
quotient and raises :class:`IllPosedPairing`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import boundary as bd
from .boundary import IRR_TYPE, BridgeClass, HyperbolicPair, PairType
from .divisors import BAR, DivisorClass, Presentation, presentation
from .errors import (ForbiddenTacnodalType, IllPosedPairing, InvalidCurveType,
                     OutOfRange, WrongSpace)
from .linalg import dot

LAMBDA_COL, IRR_COL = 0, 1


@dataclass(frozen=True)
class CurveClass:
    """A test curve: ``kind`` is ``"C"`` (bridge), ``"Ctilde"`` (bridge on the
    stable model) or ``"D"`` (tacnodal)."""

    kind: str
    type: PairType


@dataclass(frozen=True)
class RosaryType:
    """Length-3 rosary type; ``c0..c2`` are None for the irr rosary."""

    c0: BridgeClass | None = None
    c1: BridgeClass | None = None
    c2: BridgeClass | None = None

    @property
    def is_irr(self):
        return self.c0 is None

    def __repr__(self):
        return "R(irr)" if self.is_irr else f"R({self.c0!r},{self.c1!r},{self.c2!r})"


IRR_ROSARY = RosaryType()


def _col(p, c):
    return presentation(p, BAR).index[c]


# ---------------------------------------------------------------------------
# Validation


def check_bridge_type(p: HyperbolicPair, t: PairType) -> None:
    if not bd.is_bridge_pair(p, t):
        raise InvalidCurveType(f"{t!r} is not an elliptic bridge type on {p}")


def is_tacnodal_type(p: HyperbolicPair, t: PairType) -> bool:
    if not bd.is_bridge_pair(p, t):
        return False
    if t.is_irr:
        return True
    return not (t.members & bd.one_point_classes(p))


def check_tacnodal_type(p: HyperbolicPair, t: PairType) -> None:
    check_bridge_type(p, t)
    if not is_tacnodal_type(p, t):
        raise ForbiddenTacnodalType(f"no tacnodal curve of type {t!r}: it contains a class [1,{{j}}]")


# ---------------------------------------------------------------------------
# Functionals


def bridge_functional(p: HyperbolicPair, t: PairType) -> dict:
    """Degree of a class on the elliptic bridge curve of type ``t``."""
    check_bridge_type(p, t)
    if t.is_irr:
        return {LAMBDA_COL: Fraction(1), IRR_COL: Fraction(10)}
    f = {LAMBDA_COL: Fraction(1), IRR_COL: Fraction(12)}
    for c in (t.lower, t.upper):
        k = _col(p, c)
        f[k] = f.get(k, 0) - 1
    return f


def upstairs_functional(p: HyperbolicPair, t: PairType) -> dict:
    """Degree on the bridge curve of the stable model (``lambda`` does not enter)."""
    check_bridge_type(p, t)
    e = _col(p, bd.one_empty(p))
    if t.is_irr:
        f = {IRR_COL: Fraction(-2), e: Fraction(1)}
    else:
        f = {e: Fraction(1)}
        for c in (t.lower, t.upper):
            k = _col(p, c)
            f[k] = f.get(k, 0) - 1
    return {k: v for k, v in f.items() if v}


def tacnodal_functional(p: HyperbolicPair, t: PairType) -> dict:
    check_tacnodal_type(p, t)
    return {k: -v for k, v in bridge_functional(p, t).items()}


def rosary_functional(p: HyperbolicPair, r: RosaryType) -> dict:
    """Weight of the rosary one-parameter subgroup, generator by generator:
    ``lambda`` and ``delta_irr`` weigh 0, ``delta`` at the start weighs -1 and
    at the end +1."""
    if r.is_irr:
        return {}
    f = {}
    for c, w in ((r.c0, -1), (r.c2, 1)):
        k = _col(p, c)
        f[k] = f.get(k, 0) + w
    return {k: Fraction(v) for k, v in f.items() if v}


_checked: dict = {}


def ensure_well_posed(pres: Presentation, functional: dict, label="") -> None:
    """Raise IllPosedPairing unless ``functional`` vanishes on every killed
    generator and relation of ``pres``."""
    key = (pres.pair, pres.killed, tuple(sorted(functional.items())))
    if key in _checked:
        return
    for row in pres.subspace_rows():
        v = dot(functional, row)
        if v:
            raise IllPosedPairing(f"{label or 'functional'} takes value {v} on a relation of {pres.pair}")
    _checked[key] = True


def _evaluate(p, L, functional, allowed, label):
    if L.pair != p:
        raise WrongSpace(f"class lives on {L.pair}, expected {p}")
    if L.space.kind not in allowed:
        raise WrongSpace(f"{label} needs a class on {'/'.join(allowed)}, got {L.space}")
    pres = presentation(p, L.space)
    ensure_well_posed(pres, functional, label)
    return dot(functional, pres.vector(L))


def pair_bridge(p: HyperbolicPair, t: PairType, L: DivisorClass) -> Fraction:
    """``C(t) . L`` on the pseudostable space (or on the T-space)."""
    return _evaluate(p, L, bridge_functional(p, t), ("ps", "t"), "bridge pairing")


def pair_bridge_upstairs(p: HyperbolicPair, t: PairType, L: DivisorClass) -> Fraction:
    return _evaluate(p, L, upstairs_functional(p, t), ("bar",), "upstairs bridge pairing")


def pair_tacnodal(p: HyperbolicPair, t: PairType, L: DivisorClass) -> Fraction:
    return _evaluate(p, L, tacnodal_functional(p, t), ("tplus",), "tacnodal pairing")


def rosary_weight(p: HyperbolicPair, r: RosaryType, L: DivisorClass) -> Fraction:
    if L.space.kind != "tplus":
        raise WrongSpace(f"rosary weights need a class on tplus, got {L.space}")
    return dot(rosary_functional(p, r), presentation(p, L.space).vector(L))


def pair_curve(p: HyperbolicPair, curve: CurveClass, L: DivisorClass) -> Fraction:
    fn = {"C": pair_bridge, "Ctilde": pair_bridge_upstairs, "D": pair_tacnodal}[curve.kind]
    return fn(p, curve.type, L)


# ---------------------------------------------------------------------------
# Rosary types


@lru_cache(maxsize=None)
def rosary_types(p: HyperbolicPair) -> tuple:
    """Every triple ``([tau,I],[tau+1,I],[tau+2,I])`` of existing classes, once
    per unordered orientation (the reversed triple has opposite weights)."""
    out = set()
    for tau in range(p.g - 1):
        for mask in range(p.full_mask + 1):
            cs = [bd.class_of(p, tau + k, mask) for k in range(3)]
            if None in cs:
                continue
            if cs[2].sort_key() < cs[0].sort_key():
                cs.reverse()
            out.add(RosaryType(*cs))
    return tuple(sorted(out, key=lambda r: (r.c0.sort_key(), r.c1.sort_key(), r.c2.sort_key())))


def rosary_is_admissible(p: HyperbolicPair, r: RosaryType) -> bool:
    """Endpoints avoid ``[1,{}]`` and every ``[1,{j}]``."""
    if r.is_irr:
        return True
    bad = bd.one_point_classes(p) | {bd.one_empty(p)}
    return r.c0 not in bad and r.c2 not in bad


# ---------------------------------------------------------------------------
# Text forms

_CURVE = re.compile(r"^\s*(C|Ctilde|D|R)\s*:\s*(irr|(-?\d+)\s*:\s*\{([\d,\s]*)\})\s*$")


def _parse_rep(p, tau_s, pts_s):
    tau = int(tau_s)
    pts = [int(x) for x in pts_s.split(",") if x.strip()]
    return tau, bd.points_to_mask(p, pts)


def parse_curve(p: HyperbolicPair, text: str):
    """``C:irr``, ``C:tau:{...}``, ``Ctilde:...``, ``D:...`` give a CurveClass;
    ``R:irr`` / ``R:tau:{...}`` give a RosaryType.  Pair types are named by
    their lower representative ``(tau, I)``."""
    m = _CURVE.match(text)
    if m is None:
        raise InvalidCurveType(f"cannot parse curve {text!r}")
    kind = m.group(1)
    if m.group(2) == "irr":
        return IRR_ROSARY if kind == "R" else CurveClass(kind, IRR_TYPE)
    tau, mask = _parse_rep(p, m.group(3), m.group(4))
    if kind == "R":
        cs = [bd.class_of(p, tau + k, mask) for k in range(3)]
        if None in cs:
            raise OutOfRange(f"rosary starting at ({tau},{m.group(4)}) leaves T_{{{p.g},{p.n}}}")
        return RosaryType(*cs)
    lo, hi = bd.class_of(p, tau, mask), bd.class_of(p, tau + 1, mask)
    if lo is None or hi is None:
        raise InvalidCurveType(f"({tau},{{{m.group(4)}}}) does not start a bridge type")
    return CurveClass(kind, PairType.bridge(lo, hi))


def start_representative(p: HyperbolicPair, first: BridgeClass, second: BridgeClass):
    """A representative ``(tau, mask)`` of ``first`` with ``(tau+1, mask)`` in ``second``."""
    for tau, mask in bd.representatives(p, first):
        if bd.class_of(p, tau + 1, mask) == second:
            return tau, mask
    raise InvalidCurveType(f"{second!r} does not follow {first!r}")


def _fmt_rep(tau, mask):
    return f"{tau}:{{{','.join(map(str, bd.mask_to_points(mask)))}}}"


def format_curve(p: HyperbolicPair, curve) -> str:
    if isinstance(curve, RosaryType):
        if curve.is_irr:
            return "R:irr"
        return "R:" + _fmt_rep(*start_representative(p, curve.c0, curve.c1))
    if curve.type.is_irr:
        return f"{curve.kind}:irr"
    return f"{curve.kind}:" + _fmt_rep(*start_representative(p, curve.type.lower, curve.type.upper))
