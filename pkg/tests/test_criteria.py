import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mfl import criteria as cr
from mfl import divisors as dv
from mfl.boundary import EMPTY, IRR, IRR_TYPE, HyperbolicPair, PairType, TypeSet, canonicalize, full_typeset
from mfl.criteria import HKModel, LocusKind, Verdict
from mfl.divisors import PS, named_class, space_tplus
from mfl.errors import GenusZeroUnsupported, NotApplicable, OutOfRange
from mfl.pairing import rosary_weight

from conftest import pair_and_typeset

YES, NO, NA = Verdict.YES, Verdict.NO, Verdict.NOT_APPLICABLE


def P(g, n):
    return HyperbolicPair(g, n)


def C(p, tau, *pts):
    return canonicalize(p, tau, pts)


# -- T+ compatibility ------------------------------------------------------------

def test_tplus_examples():
    p = P(7, 0)
    T = full_typeset(p)
    s = space_tplus(T)
    assert cr.tplus_compatible(p, T, named_class(p, s, "K_plus_psi")) == (True, None)
    ok, witness = cr.tplus_compatible(p, T, named_class(p, s, "delta", (2, [])))
    assert not ok
    assert (witness.c0, witness.c1, witness.c2) == (C(p, 2), C(p, 3), C(p, 4))
    assert cr.tplus_compatible(p, T, dv.zero(p, s)) == (True, None)
    assert cr.descends is cr.tplus_compatible


@given(pair_and_typeset(6, 3, g_min=1), st.data())
def test_descent_matches_rosary_weights(pt, data):
    p, T = pt
    s = space_tplus(T)
    basis = dv.basis(p, s)
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
    L = sum((k * b for k, b in zip(coeffs, basis)), dv.zero(p, s))
    ok, _ = cr.tplus_compatible(p, T, L)
    assert ok == all(rosary_weight(p, r, L) == 0 for r in cr.triples_in(p, T))


# -- Picard numbers ----------------------------------------------------------------

def test_picard_examples():
    assert cr.picard_number_report(P(5, 0), full_typeset(P(5, 0))).rank_t == 1
    assert cr.picard_number_report(P(7, 0), full_typeset(P(7, 0))).rank_tplus == 3
    r = cr.picard_number_report(P(3, 1), full_typeset(P(3, 1)))
    assert r.rank_tplus == 3
    assert r.closed_forms["rank_tplus"] == 4 and r.agreement["rank_tplus"] is False
    with pytest.raises(GenusZeroUnsupported):
        cr.picard_number_report(P(0, 5), EMPTY)


def test_closed_forms_on_anchor_set():
    for g in range(3, 9):
        r = cr.picard_number_report(P(g, 0), full_typeset(P(g, 0)))
        assert all(r.agreement.values()), (g, r.to_json())
    r = cr.picard_number_report(P(3, 2), full_typeset(P(3, 2)))
    assert all(r.agreement.values())


def test_closed_forms_only_for_full_t():
    p = P(5, 0)
    assert cr.picard_number_report(p, TypeSet.of(IRR)).closed_forms == {}


@given(pair_and_typeset(5, 3, g_min=1))
def test_picard_consistency(pt):
    p, T = pt
    r = cr.picard_number_report(p, T)
    assert r.rank_ps - r.rank_t == r.face_dim
    assert 0 <= r.tacnodal_span <= r.n_tacnodal_rays
    if not cr._special(p) and cr.q_factorial_MTplus(p, T):
        assert r.rank_tplus == r.rank_tplus_presentation


# -- contraction and flip predicates -------------------------------------------------

def test_small_examples():
    assert cr.is_fT_small(P(4, 1), TypeSet.of(IRR)).verdict is YES
    p = P(3, 1)
    assert cr.is_fT_small(p, TypeSet.of(C(p, 0, 1), C(p, 1, 1))).verdict is NO
    ts = cr.is_fT_small(P(1, 2), full_typeset(P(1, 2)))
    assert ts.verdict is NA and "map to a point" in ts.cite


def test_exceptional_examples():
    p = P(3, 1)
    T = full_typeset(p)
    loci = cr.exceptional_loci_fT(p, T)
    assert [(x.kind, x.type, x.codim, x.is_divisor) for x in loci] == [
        (LocusKind.ELL_BRIDGE, IRR_TYPE, 2, False),
        (LocusKind.ELL_BRIDGE, PairType.bridge(C(p, 0, 1), C(p, 1, 1)), 1, True),
    ]
    plus = cr.exceptional_loci_fTplus(p, T)
    assert [(x.kind, x.type, x.codim) for x in plus] == [(LocusKind.TACNODE, IRR_TYPE, 2)]
    q = P(4, 0)
    assert cr.exceptional_loci_fT(q, TypeSet.of(C(q, 1))) == []
    assert cr.exceptional_loci_fTplus(q, TypeSet.of(C(q, 1))) == []
    with pytest.raises(NotApplicable):
        cr.exceptional_loci_fT(P(2, 0), TypeSet.of(IRR))


def test_iso_and_qfactorial_examples():
    p = P(3, 1)
    pair = TypeSet.of(C(p, 0, 1), C(p, 1, 1))
    assert cr.is_fTplus_iso(P(4, 0), TypeSet.of(C(P(4, 0), 1))).verdict is YES
    assert cr.is_fTplus_iso(p, pair).verdict is YES
    assert cr.is_fTplus_iso(P(5, 0), TypeSet.of(IRR)).verdict is NO
    assert cr.q_factorial_MT(P(5, 0), full_typeset(P(5, 0))).verdict is NO
    assert cr.q_factorial_MT(p, EMPTY).verdict is YES
    assert cr.q_factorial_MT(p, pair).verdict is YES
    assert cr.q_gorenstein_MT is cr.q_factorial_MT
    assert cr.q_factorial_MT(P(2, 0), EMPTY).verdict is NA


def test_tplus_geometry_examples():
    assert cr.q_factorial_MTplus(P(6, 0), full_typeset(P(6, 0))).verdict is YES
    assert cr.q_factorial_MTplus(P(7, 0), full_typeset(P(7, 0))).verdict is NO
    for g in range(3, 9):
        assert cr.q_gorenstein_MTplus(P(g, 0), full_typeset(P(g, 0))).verdict is YES
    assert cr.q_gorenstein_MTplus(P(4, 1), full_typeset(P(4, 1))).verdict is NO
    assert cr.q_gorenstein_MTplus(P(3, 2), full_typeset(P(3, 2))).verdict is YES
    assert cr.q_factorial_MTplus(P(1, 2), EMPTY).verdict is NA


def test_flip_examples():
    p = P(5, 1)
    T = full_typeset(p)
    v = cr.flip_verdict(p, T, named_class(p, PS, "K_plus_psi"))
    assert v.fT_antiample and v.restriction_tplus_compatible and v.is_L_flip.verdict is YES
    v = cr.flip_verdict(p, T, dv.parse_divisor(p, PS, "10*lambda - delta_hat"))
    assert not v.fT_antiample and v.antiample_witness == (IRR_TYPE, 0)
    assert v.is_L_flip.verdict is NO
    v = cr.flip_verdict(P(2, 0), TypeSet.of(IRR), named_class(P(2, 0), PS, "K_plus_psi"))
    assert v.is_L_flip.verdict is NA


@given(pair_and_typeset(6, 3, g_min=1))
def test_flip_invariants(pt):
    p, T = pt
    if cr._special(p):
        return
    kp = cr.flip_verdict(p, T, named_class(p, PS, "K_plus_psi"))
    assert kp.is_L_flip.verdict is YES
    k = cr.flip_verdict(p, T, named_class(p, PS, "K"))
    assert k.is_L_flip.verdict == cr.q_gorenstein_MTplus(p, T).verdict


def test_hk_examples():
    assert cr.hk_model(Fraction(9, 11)) is HKModel.PS
    assert cr.hk_model(Fraction(7, 10)) is HKModel.TFULL
    assert cr.hk_model(1) is HKModel.MBAR
    assert cr.hk_model(Fraction(4, 5)) is HKModel.PS
    assert cr.hk_model(Fraction(2, 3)) is HKModel.BELOW_RANGE
    assert cr.hk_model(Fraction(69, 100)) is HKModel.TFULL_PLUS
    assert cr.hk_model(0) is HKModel.BELOW_RANGE
    for bad in (Fraction(101, 100), Fraction(-1, 5)):
        with pytest.raises(OutOfRange):
            cr.hk_model(bad)


@given(st.fractions(Fraction(2, 3), 1), st.fractions(Fraction(2, 3), 1))
def test_hk_monotone(a, b):
    order = [HKModel.BELOW_RANGE, HKModel.TFULL_PLUS, HKModel.TFULL, HKModel.PS, HKModel.MBAR]
    if a <= b:
        assert order.index(cr.hk_model(a)) <= order.index(cr.hk_model(b))


# -- aggregate report --------------------------------------------------------------

def test_report_examples():
    r = cr.full_report(P(5, 0), TypeSet.of(IRR))
    assert r.fT_small.verdict is YES and r.face_dim == 1 and r.picard.rank_t == 2
    r = cr.full_report(P(1, 1), full_typeset(P(1, 1)))
    assert r.face_dim == 0 and any("M^ps_{1,1} is empty" in n for n in r.applicability_notes)
    r = cr.full_report(P(2, 0), TypeSet.of(IRR))
    for name in ("fT_small", "fTplus_iso", "qfact_MT", "qgor_MT", "qfact_MTplus",
                 "qgor_MTplus", "kflip_ok"):
        ts = getattr(r, name)
        assert ts.verdict is NA and ts.cite, name


def test_report_json_is_stable():
    p = P(4, 1)
    a = json.dumps(cr.full_report(p, full_typeset(p)).to_json())
    b = json.dumps(cr.full_report(p, full_typeset(p)).to_json())
    assert a == b
    js = json.loads(a)
    assert js["schema"] == "report/1"
    assert js["qfact_MTplus"] == {"verdict": "No", "cite": ""}


def test_report_genus_zero():
    r = cr.full_report(P(0, 5), full_typeset(P(0, 5)))
    assert r.picard is None
    assert any("genus 0" in n for n in r.applicability_notes)
