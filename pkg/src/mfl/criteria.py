"""Predicates on the contraction f_T and its flip f_T^+, and the aggregate report.

Verdicts that the underlying results leave open for particular pairs are
returned as :class:`TriState` values with ``NotApplicable`` and a short
citation naming the statement that excludes the pair.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from . import boundary as bd
from .boundary import HyperbolicPair, PairType, TypeSet
from .divisors import PS, DivisorClass, named_class, presentation, space_tplus
from .errors import GenusZeroUnsupported, NotApplicable, OutOfRange
from .faces import face_dim_closed_form, ray_functionals
from .linalg import Echelon
from .pairing import (RosaryType, ensure_well_posed, is_tacnodal_type,
                      pair_bridge, tacnodal_functional)

SPECIAL_PAIRS = ((2, 0), (1, 2))
GOR_EXCEPTIONS = ((3, 1), (3, 2), (2, 2))

CITE_FIBRES = ("fibres of f_T are described only for (g,n) != (2,0), (1,2): for (1,2) "
               "f_T is the map to a point and for (2,0) the good moduli space of the "
               "irr-stack is not known to exist")
CITE_FLIP = ("descent to the T+ space and the flip statement assume (g,n) != (2,0), (1,2): "
             "the (1,2) T+ stack is empty and the (2,0) T+ stack is not open")
CITE_GEOM_T = "Q-factoriality of the T-space is characterised only for (g,n) != (2,0)"
NOTE_11 = "M^ps_{1,1} is empty: every T has empty admissible part and f_T is the identity"
NOTE_G0 = "genus 0: Picard relations are not encoded; rank queries are refused"
NOTE_20 = ("(2,0): the pseudostable space is only an adequate moduli space and the "
           "T+ stack is not defined; all predicates are NotApplicable")
NOTE_12 = "(1,2): f_T is the map to a point and the T+ stack is empty"


class Verdict(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class TriState:
    verdict: Verdict
    cite: str = ""

    @classmethod
    def of(cls, flag: bool):
        return cls(Verdict.YES if flag else Verdict.NO)

    @classmethod
    def na(cls, cite):
        return cls(Verdict.NOT_APPLICABLE, cite)

    @property
    def applicable(self):
        return self.verdict is not Verdict.NOT_APPLICABLE

    def __bool__(self):
        return self.verdict is Verdict.YES

    def to_json(self):
        return {"verdict": self.verdict.value, "cite": self.cite}


def _special(p):
    return (p.g, p.n) in SPECIAL_PAIRS


# ---------------------------------------------------------------------------
# T+ compatibility


def _bad_endpoints(p):
    return bd.one_point_classes(p) | {bd.one_empty(p)}


def triples_in(p: HyperbolicPair, T: TypeSet, distinct=False) -> list[RosaryType]:
    """Triples ``[tau,I],[tau+1,I],[tau+2,I]`` inside T whose endpoints avoid
    ``[1,{}]`` and ``[1,{j}]``, one per orientation pair."""
    bad = _bad_endpoints(p)
    out = {}
    for tau in range(p.g - 1):
        for mask in range(p.full_mask + 1):
            cs = [bd.class_of(p, tau + k, mask) for k in range(3)]
            if None in cs or not all(c in T for c in cs):
                continue
            if cs[0] in bad or cs[2] in bad:
                continue
            if distinct and cs[0] == cs[2]:
                continue
            key = frozenset(((cs[0], cs[2]), (cs[2], cs[0])))
            out.setdefault(key, RosaryType(*cs))
    return sorted(out.values(), key=lambda r: (r.c0.sort_key(), r.c2.sort_key()))


def _as_tplus(p, T, L):
    s = space_tplus(T)
    return L if L.space == s else L.on(s)


def tplus_compatible(p: HyperbolicPair, T: TypeSet, L: DivisorClass):
    """``(True, None)`` or ``(False, offending triple)``.  Classes on other
    spaces are restricted first (killed coefficients dropped)."""
    L = _as_tplus(p, T, L)
    for r in triples_in(p, T):
        if L.coeff(r.c0) != L.coeff(r.c2):
            return False, r
    return True, None


descends = tplus_compatible


def tplus_constraints(p: HyperbolicPair, T: TypeSet) -> list[dict]:
    pres = presentation(p, space_tplus(T))
    rows = []
    for r in triples_in(p, T, distinct=True):
        row = {pres.index[r.c0]: Fraction(1), pres.index[r.c2]: Fraction(-1)}
        ensure_well_posed(pres, row, f"T+ constraint {r!r}")
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Picard numbers


def _kd(a, b):
    return 1 if a == b else 0


def closed_rank_t(p):
    """Picard number of the full T-space (the 7/10 log canonical model)."""
    g, n = p.g, p.n
    if g < 1:
        return None
    if n == 0:
        if g >= 3:
            return 1 if g % 2 else 2
        return None
    return 2 ** (n - 1) + 1 - _kd(2, g) - (n + 1) * _kd(1, g)


def closed_rel_t(p):
    if p.g < 1 or (p.n == 0 and p.g < 3):
        return None
    return face_dim_closed_form(p)


def closed_rank_tplus(p):
    g, n = p.g, p.n
    if g < 1 or _special(p):
        return None
    if n == 0:
        if g >= 3:
            return 3 - _kd(3, g) if g % 2 else 4 - _kd(4, g)
        return None
    return 2 ** n + 2 - (n + 2) * _kd(2, g) - (2 * n + 2) * _kd(1, g)


def closed_rel_tplus(p):
    g, n = p.g, p.n
    if g < 1 or _special(p):
        return None
    if n == 0:
        if g >= 3:
            return 2 - _kd(3, g) if g % 2 else 2 - _kd(4, g)
        return None
    return 2 ** (n - 1) + 1 - (n + 1) * _kd(2, g) - (n + 1) * _kd(1, g)


@dataclass(frozen=True)
class PicardReport:
    pair: HyperbolicPair
    typeset: TypeSet
    rank_ps: int
    rank_t: int
    rank_tplus: int
    rank_tplus_presentation: int
    face_dim: int
    n_tacnodal_rays: int
    tacnodal_span: int
    closed_forms: dict = field(default_factory=dict)

    @property
    def agreement(self) -> dict:
        direct = {"rank_t": self.rank_t, "rel_t": self.face_dim,
                  "rank_tplus": self.rank_tplus, "rel_tplus": self.rank_tplus - self.rank_t}
        return {k: (None if v is None else v == direct[k]) for k, v in self.closed_forms.items()}

    @property
    def rel_tplus(self):
        return self.rank_tplus - self.rank_t

    def to_json(self):
        return {
            "rank_ps": self.rank_ps,
            "rank_t": self.rank_t,
            "rank_tplus": self.rank_tplus,
            "rank_tplus_presentation": self.rank_tplus_presentation,
            "face_dim": self.face_dim,
            "n_tacnodal_rays": self.n_tacnodal_rays,
            "tacnodal_span": self.tacnodal_span,
            "closed_forms": self.closed_forms,
            "agreement": self.agreement,
        }


def picard_number_report(p: HyperbolicPair, T: TypeSet) -> PicardReport:
    if p.g == 0:
        raise GenusZeroUnsupported("genus 0 Picard relations are not encoded")
    bd.check_typeset(p, T)
    rank_ps = presentation(p, PS).rank
    rays = bd.minimal_subsets_in(p, bd.adm_closure(p, T))
    rank_t = rank_ps - Echelon(ray_functionals(p, rays)).rank

    pres_tp = presentation(p, space_tplus(T))
    constraints = tplus_constraints(p, T)
    ech = Echelon(constraints)
    rank_tplus = pres_tp.rank - ech.rank
    tac = [t for t in rays if is_tacnodal_type(p, t)]
    base = ech.rank
    for t in tac:
        f = tacnodal_functional(p, t)
        ensure_well_posed(pres_tp, f, f"tacnodal pairing {t!r}")
        ech.add(f)
    span = ech.rank - base

    closed = {}
    if T == bd.full_typeset(p) or bd.adm_closure(p, T) == bd.adm_closure(p, bd.full_typeset(p)):
        closed = {"rank_t": closed_rank_t(p), "rel_t": closed_rel_t(p),
                  "rank_tplus": closed_rank_tplus(p), "rel_tplus": closed_rel_tplus(p)}
    return PicardReport(p, T, rank_ps, rank_t, rank_tplus, pres_tp.rank, len(rays),
                        len(tac), span, closed)


# ---------------------------------------------------------------------------
# Geometry of f_T and f_T^+


class LocusKind(str, enum.Enum):
    ELL_BRIDGE = "EllBridgeLocus"
    TACNODE = "TacnodeLocus"


@dataclass(frozen=True)
class ExceptionalComponent:
    kind: LocusKind
    type: PairType
    codim: int
    is_divisor: bool

    def to_json(self, p):
        return {"kind": self.kind.value, "type": bd.format_pair_type(p, self.type),
                "codim": self.codim, "is_divisor": self.is_divisor}


def _divisorial_rays(p):
    out = set()
    if (p.g, p.n) in ((1, 1), (2, 1)):
        return out
    for i in range(1, p.n + 1):
        a, b = bd.class_of(p, 0, 1 << (i - 1)), bd.class_of(p, 1, 1 << (i - 1))
        if a is not None and b is not None:
            out.add(frozenset((a, b)))
    return out


def is_fT_small(p: HyperbolicPair, T: TypeSet) -> TriState:
    if _special(p):
        return TriState.na(CITE_FIBRES)
    return TriState.of(not bd.divisorial_part(p, bd.adm_closure(p, T)).members)


def exceptional_loci_fT(p: HyperbolicPair, T: TypeSet) -> list[ExceptionalComponent]:
    if _special(p):
        raise NotApplicable(CITE_FIBRES)
    div = _divisorial_rays(p)
    out = []
    for t in bd.minimal_subsets_in(p, bd.adm_closure(p, T)):
        is_div = t.members in div
        out.append(ExceptionalComponent(LocusKind.ELL_BRIDGE, t, 1 if is_div else 2, is_div))
    return out


def exceptional_loci_fTplus(p: HyperbolicPair, T: TypeSet) -> list[ExceptionalComponent]:
    if _special(p):
        raise NotApplicable(CITE_FLIP)
    return [ExceptionalComponent(LocusKind.TACNODE, t, 2, False)
            for t in bd.minimal_subsets_in(p, bd.adm_closure(p, T)) if is_tacnodal_type(p, t)]


def is_fTplus_iso(p: HyperbolicPair, T: TypeSet) -> TriState:
    if _special(p):
        return TriState.na(CITE_FLIP)
    return TriState.of(bd.adm_closure(p, T) == bd.divisorial_part(p, T))


def q_factorial_MT(p: HyperbolicPair, T: TypeSet) -> TriState:
    """Same condition decides Q-Gorenstein for the T-space."""
    if (p.g, p.n) == (2, 0):
        return TriState.na(CITE_GEOM_T)
    return TriState.of(bd.adm_closure(p, T) == bd.divisorial_part(p, T))


q_gorenstein_MT = q_factorial_MT


def q_factorial_MTplus(p: HyperbolicPair, T: TypeSet) -> TriState:
    if _special(p):
        return TriState.na(CITE_FLIP)
    return TriState.of(not triples_in(p, T, distinct=True))


def q_gorenstein_MTplus(p: HyperbolicPair, T: TypeSet) -> TriState:
    if _special(p):
        return TriState.na(CITE_FLIP)
    if (p.g, p.n) in GOR_EXCEPTIONS:
        return TriState.of(True)
    for j in range(1, p.n + 1):
        cs = [bd.class_of(p, k, 1 << (j - 1)) for k in range(3)]
        if None not in cs and all(c in T for c in cs):
            return TriState.of(False)
    return TriState.of(True)


@dataclass(frozen=True)
class FlipVerdict:
    fT_antiample: bool
    antiample_witness: tuple | None
    restriction_tplus_compatible: bool
    tplus_witness: RosaryType | None
    is_L_flip: TriState


def flip_verdict(p: HyperbolicPair, T: TypeSet, L: DivisorClass) -> FlipVerdict:
    """Whether f_T^+ is the L-flip of f_T: L negative on every ray of F_T and
    its restriction to the T+ stack descends."""
    L = L if L.space.uses_ps_presentation else L.on(PS)
    witness = None
    for t in bd.minimal_subsets_in(p, bd.adm_closure(p, T)):
        v = pair_bridge(p, t, L)
        if v >= 0:
            witness = (t, v)
            break
    anti = witness is None
    compat, bad = tplus_compatible(p, T, L)
    verdict = TriState.na(CITE_FLIP) if _special(p) else TriState.of(anti and compat)
    return FlipVerdict(anti, witness, compat, bad, verdict)


class HKModel(str, enum.Enum):
    MBAR = "Mbar"
    PS = "PS"
    TFULL = "TFull"
    TFULL_PLUS = "TFullPlus"
    BELOW_RANGE = "BelowRange"


def hk_model(alpha) -> HKModel:
    """Stage of the log canonical model ``Mbar(alpha)``."""
    a = Fraction(alpha)
    if a > 1 or a < 0:
        raise OutOfRange(f"alpha={a} outside [0,1]")
    if a > Fraction(9, 11):
        return HKModel.MBAR
    if a > Fraction(7, 10):
        return HKModel.PS
    if a == Fraction(7, 10):
        return HKModel.TFULL
    if a > Fraction(2, 3):
        return HKModel.TFULL_PLUS
    return HKModel.BELOW_RANGE


# ---------------------------------------------------------------------------
# Aggregate report


@dataclass(frozen=True)
class FullReport:
    pair: HyperbolicPair
    typeset: TypeSet
    adm: TypeSet
    tdiv: TypeSet
    face_dim: int
    picard: PicardReport | None
    fT_small: TriState
    fT_exceptional: list | None
    fTplus_iso: TriState
    fTplus_exceptional: list | None
    qfact_MT: TriState
    qgor_MT: TriState
    qfact_MTplus: TriState
    qgor_MTplus: TriState
    kflip_ok: TriState
    kpsi_flip_ok: TriState
    applicability_notes: tuple

    def to_json(self) -> dict:
        p = self.pair
        fmt = bd.format_typeset
        loci = (lambda xs: None if xs is None else [x.to_json(p) for x in xs])
        return {
            "schema": "report/1",
            "g": p.g,
            "n": p.n,
            "T": fmt(p, self.typeset),
            "adm": fmt(p, self.adm),
            "tdiv": fmt(p, self.tdiv),
            "face_dim": self.face_dim,
            "picard": None if self.picard is None else self.picard.to_json(),
            "fT_small": self.fT_small.to_json(),
            "fT_exceptional": loci(self.fT_exceptional),
            "fTplus_iso": self.fTplus_iso.to_json(),
            "fTplus_exceptional": loci(self.fTplus_exceptional),
            "qfact_MT": self.qfact_MT.to_json(),
            "qgor_MT": self.qgor_MT.to_json(),
            "qfact_MTplus": self.qfact_MTplus.to_json(),
            "qgor_MTplus": self.qgor_MTplus.to_json(),
            "kflip_ok": self.kflip_ok.to_json(),
            "kpsi_flip_ok": self.kpsi_flip_ok.to_json(),
            "applicability_notes": list(self.applicability_notes),
        }


def full_report(p: HyperbolicPair, T: TypeSet) -> FullReport:
    bd.check_typeset(p, T)
    notes = []
    if (p.g, p.n) == (1, 1):
        notes.append(NOTE_11)
    if (p.g, p.n) == (2, 0):
        notes.append(NOTE_20)
    if (p.g, p.n) == (1, 2):
        notes.append(NOTE_12)
    adm = bd.adm_closure(p, T)
    face_dim = len(bd.minimal_subsets_in(p, adm))
    if p.g == 0:
        notes.append(NOTE_G0)
        picard = None
    else:
        picard = picard_number_report(p, T)

    def loci(fn):
        try:
            return fn(p, T)
        except NotApplicable:
            return None

    if p.g == 0:
        kflip = kpsi = TriState.of(True)
    else:
        kflip = flip_verdict(p, T, named_class(p, PS, "K")).is_L_flip
        kpsi = flip_verdict(p, T, named_class(p, PS, "K_plus_psi")).is_L_flip
    qfact_mt = q_factorial_MT(p, T)
    if (p.g, p.n) == (2, 0):
        kflip = kpsi = TriState.na(CITE_FLIP)
    return FullReport(
        pair=p, typeset=T, adm=adm, tdiv=bd.divisorial_part(p, T), face_dim=face_dim,
        picard=picard,
        fT_small=is_fT_small(p, T), fT_exceptional=loci(exceptional_loci_fT),
        fTplus_iso=is_fTplus_iso(p, T), fTplus_exceptional=loci(exceptional_loci_fTplus),
        qfact_MT=qfact_mt, qgor_MT=q_gorenstein_MT(p, T),
        qfact_MTplus=q_factorial_MTplus(p, T), qgor_MTplus=q_gorenstein_MTplus(p, T),
        kflip_ok=kflip, kpsi_flip_ok=kpsi, applicability_notes=tuple(notes),
    )


def format_report(r: FullReport) -> str:
    """Plain-text rendering, one field per line."""
    p = r.pair
    w = 20

    def row(label, value):
        return f"{label:<{w}}{value}"

    lines = [
        row("pair", f"({p.g},{p.n})"),
        row("T", bd.format_typeset(p, r.typeset) or "{}"),
        row("T^adm", bd.format_typeset(p, r.adm) or "{}"),
        row("T^div", bd.format_typeset(p, r.tdiv) or "{}"),
        row("dim F_T", r.face_dim),
    ]
    if r.picard is not None:
        pic = r.picard
        lines.append(row("rank ps/T/T+", f"{pic.rank_ps}/{pic.rank_t}/{pic.rank_tplus}"))
        for k, v in pic.closed_forms.items():
            if v is not None:
                lines.append(row(f"  closed {k}", f"{v}  agrees={pic.agreement[k]}"))
    for name in ("fT_small", "fTplus_iso", "qfact_MT", "qgor_MT", "qfact_MTplus",
                 "qgor_MTplus", "kflip_ok", "kpsi_flip_ok"):
        ts = getattr(r, name)
        lines.append(row(name, ts.verdict.value + (f"  ({ts.cite})" if ts.cite else "")))
    for name in ("fT_exceptional", "fTplus_exceptional"):
        xs = getattr(r, name)
        if xs is not None:
            body = ", ".join(f"{x.kind.value} {bd.format_pair_type(p, x.type)} codim {x.codim}"
                             for x in xs)
            lines.append(row(name, body or "-"))
    lines.extend(f"note: {n}" for n in r.applicability_notes)
    return "\n".join(lines)
