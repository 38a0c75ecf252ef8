import pytest
from hypothesis import given

from mfl import boundary as bd
from mfl.boundary import (EMPTY, IRR, IRR_TYPE, Comparison, HyperbolicPair, PairType,
                          TypeSet, adm_closure, canonicalize, compare_typesets,
                          divisorial_part, enumerate_classes, full_typeset, is_admissible,
                          minimal_subsets, parse_typeset)
from mfl.errors import ExcludedClass, NotHyperbolic, OutOfRange, TypeSetSyntaxError

from conftest import pair_and_typeset, small_pairs


def P(g, n):
    return HyperbolicPair(g, n)


def C(p, tau, *pts):
    return canonicalize(p, tau, pts)


def names(p, classes):
    return [bd.format_class(p, c) for c in classes]


# -- enumeration and canonical form -------------------------------------------

def test_enumerate_examples():
    assert names(P(3, 0), enumerate_classes(P(3, 0))) == ["irr", "1:{}"]
    p = P(2, 1)
    assert enumerate_classes(p) == (IRR, C(p, 0, 1), C(p, 1))
    assert C(p, 1, 1) == C(p, 1) and C(p, 2) == C(p, 0, 1)
    p = P(1, 1)
    assert enumerate_classes(p) == (IRR, C(p, 1))
    assert C(p, 0, 1) == C(p, 1)


def test_enumeration_count_matches_orbit_count():
    # Orbits of the involution on {0..g} x 2^[n] minus the two excluded pairs.
    for g in range(0, 7):
        for n in range(0, 5):
            if 2 * g - 2 + n <= 0:
                continue
            p = P(g, n)
            total = (g + 1) * 2 ** n - 2
            fixed = 1 if (g % 2 == 0 and n == 0) else 0
            assert len(enumerate_classes(p)) - 1 == (total + fixed) // 2


def test_canonicalize_examples():
    assert canonicalize(P(5, 0), 4) == canonicalize(P(5, 0), 1)
    assert canonicalize(P(5, 0), 4).tau == 1
    c = canonicalize(P(2, 2), 2, [1])
    assert (c.tau, c.points) == (0, (2,))
    with pytest.raises(ExcludedClass):
        canonicalize(P(3, 0), 0)
    with pytest.raises(ExcludedClass):
        canonicalize(P(3, 2), 3, [1, 2])
    with pytest.raises(OutOfRange):
        canonicalize(P(3, 0), 4)
    with pytest.raises(OutOfRange):
        canonicalize(P(3, 1), 1, [2])


def test_tie_break_uses_smaller_mask():
    p = P(4, 2)
    c = canonicalize(p, 2, [2])
    assert (c.tau, c.points) == (2, (1,))


def test_not_hyperbolic():
    for g, n in [(0, 0), (0, 1), (0, 2), (1, 0)]:
        with pytest.raises(NotHyperbolic):
            HyperbolicPair(g, n)


@given(small_pairs(6, 4))
def test_canonicalize_respects_involution(p):
    for tau in range(p.g + 1):
        for mask in range(p.full_mask + 1):
            a = bd.class_of(p, tau, mask)
            b = bd.class_of(p, p.g - tau, p.full_mask ^ mask)
            assert a == b


# -- minimal subsets -----------------------------------------------------------

def test_minimal_examples():
    p = P(5, 0)
    assert minimal_subsets(p) == (IRR_TYPE, PairType.bridge(C(p, 2), C(p, 3)))
    p = P(2, 2)
    ms = minimal_subsets(p)
    assert len(ms) == 3 and ms[0] == IRR_TYPE
    assert set(ms[1:]) == {PairType.bridge(C(p, 0, 1), C(p, 1, 1)),
                           PairType.bridge(C(p, 0, 2), C(p, 1, 2))}
    assert minimal_subsets(P(1, 1)) == ()


def test_singleton_pair_for_odd_genus():
    # (3,{}) and (4,{}) are the same class on (7,0): the type has one member.
    p = P(7, 0)
    ms = minimal_subsets(p)
    assert [len(m.members) for m in ms] == [1, 2, 1]
    assert ms[2].members == {C(p, 3)}


# -- admissibility ---------------------------------------------------------------

def test_is_admissible_examples():
    p = P(5, 0)
    assert is_admissible(p, TypeSet.of(IRR, C(p, 2)))
    p = P(3, 1)
    assert not is_admissible(p, TypeSet.of(C(p, 0, 1)))
    assert is_admissible(p, EMPTY)
    assert not is_admissible(P(1, 2), TypeSet.of(IRR))


def test_adm_closure_examples():
    p = P(3, 1)
    T = TypeSet.of(C(p, 0, 1), C(p, 1, 1), IRR)
    assert adm_closure(p, T) == T
    p = P(5, 0)
    assert adm_closure(p, TypeSet.of(C(p, 1), IRR)) == TypeSet.of(IRR)
    assert adm_closure(P(4, 0), EMPTY) == EMPTY


def test_divisorial_examples():
    p = P(3, 1)
    pair = TypeSet.of(C(p, 0, 1), C(p, 1, 1))
    assert divisorial_part(p, full_typeset(p)) == pair
    p = P(2, 1)
    assert divisorial_part(p, full_typeset(p)) == EMPTY
    p = P(5, 0)
    assert divisorial_part(p, full_typeset(p)) == EMPTY


def test_compare_examples():
    p = P(4, 1)
    assert compare_typesets(p, TypeSet.of(C(p, 1)), EMPTY) is Comparison.EQUAL
    assert compare_typesets(p, TypeSet.of(IRR), full_typeset(p)) is Comparison.T_IN_S
    assert compare_typesets(p, full_typeset(p), TypeSet.of(IRR)) is Comparison.S_IN_T
    T = TypeSet.of(IRR, C(p, 0, 1))
    assert compare_typesets(p, T, T) is Comparison.EQUAL
    a = TypeSet.of(IRR)
    b = TypeSet.of(C(p, 0, 1), C(p, 1, 1))
    assert compare_typesets(p, a, b) is Comparison.INCOMPARABLE


def _closure_fixed_point(p, T):
    """Independent oracle: iterate the neighbour pruning to a fixed point."""
    cur = set(T.members) - {bd.one_empty(p)}
    if p.g <= 1:
        cur.discard(IRR)
    while True:
        nxt = {c for c in cur if c is IRR or any(d in cur for d in bd.neighbors(p, c))}
        if nxt == cur:
            return TypeSet(frozenset(cur))
        cur = nxt


@given(pair_and_typeset(6, 3))
def test_closure_laws(pt):
    p, T = pt
    A = adm_closure(p, T)
    assert adm_closure(p, A) == A
    union = frozenset().union(*(m.members for m in bd.minimal_subsets_in(p, T)))
    assert A.members == union
    assert A == _closure_fixed_point(p, T)
    assert is_admissible(p, T) == (A == T)
    D = divisorial_part(p, T)
    assert D <= A and is_admissible(p, D)


# -- text and JSON forms -------------------------------------------------------------

def test_parse_examples():
    p = P(3, 1)
    assert parse_typeset(p, "irr,0:{1},1:{1}") == TypeSet.of(IRR, C(p, 0, 1), C(p, 1, 1))
    assert parse_typeset(P(5, 0), "2:{}") == TypeSet.of(C(P(5, 0), 2))
    with pytest.raises(ExcludedClass):
        parse_typeset(P(5, 0), "0:{}")
    with pytest.raises(TypeSetSyntaxError) as err:
        parse_typeset(P(5, 0), "irr;2:{}")
    assert err.value.position == 3
    assert parse_typeset(P(5, 0), "full") == full_typeset(P(5, 0))
    assert parse_typeset(P(5, 0), "") == EMPTY


@given(pair_and_typeset(6, 3))
def test_text_and_json_round_trip(pt):
    p, T = pt
    assert parse_typeset(p, bd.format_typeset(p, T)) == T
    assert bd.typeset_from_json(p, bd.typeset_to_json(T)) == T


def test_json_form():
    p = P(3, 1)
    T = parse_typeset(p, "irr,1:{1},0:{1}")
    assert bd.typeset_to_json(T) == {"irr": True, "pairs": [[0, [1]], [1, [1]]]}
