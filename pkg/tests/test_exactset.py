from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meanset.errors import DomainError, ParseError
from meanset.exactset import (
    EMPTY,
    Interval,
    IntervalSet,
    avg,
    bounds_stats,
    combine,
    format_set,
    measure,
    minkowski,
    normalize,
    parse_set,
    reflect,
    restrict,
    scale,
    set_from_json,
    set_to_json,
    symmetry_center,
    topo,
    transform,
    translate,
)

from conftest import intervals, interval_sets, massive_sets, rationals

P = parse_set


def raw_member(parts, x):
    return any(c.contains(x) for c in parts)


def probes(S, T=EMPTY):
    # every endpoint, every midpoint between consecutive endpoints and two outer points
    ends = sorted({e for X in (S, T) for c in X.components for e in (c.lo, c.hi)})
    if not ends:
        return [F(0)]
    pts = list(ends) + [(a + b) / 2 for a, b in zip(ends, ends[1:])]
    return pts + [ends[0] - 1, ends[-1] + 1]


def assert_canonical(S):
    comps = S.components
    for c in comps:
        assert c.lo < c.hi or (c.lo_closed and c.hi_closed)
    for a, b in zip(comps, comps[1:]):
        assert a.hi <= b.lo
        if a.hi == b.lo:
            # touching components must leave the common endpoint out
            assert not a.hi_closed and not b.lo_closed


# -- worked examples ------------------------------------------------------------


@pytest.mark.parametrize("text, expected", [
    ("[0,1) U {1} U [2,3]", "[0,1] U [2,3]"),
    ("(1,2) U {2} U (2,3)", "(1,3)"),
    ("{5} U [0,2]", "[0,2] U {5}"),
    ("[2,0]", "[0,2]"),
    ("(2,0]", "[0,2)"),
])
def test_normalize_examples(text, expected):
    assert format_set(P(text)) == expected


@pytest.mark.parametrize("text, m", [("[0,2] U [5,6]", 3), ("{1,2,3}", 0), ("[0,2] U [3,4] U [5,6]", 4)])
def test_measure_examples(text, m):
    assert measure(P(text)) == m


@pytest.mark.parametrize("text, a", [("[0,2] U [5,6]", F(5, 2)), ("[3,4] U [5,6]", F(9, 2)), ("{1,2,6}", 3)])
def test_avg_examples(text, a):
    assert avg(P(text)) == a


def test_avg_empty_raises():
    with pytest.raises(DomainError):
        avg(EMPTY)


def test_bounds_stats_examples():
    b = bounds_stats(P("[0,1] U {5}"))
    assert (b.inf, b.sup, b.liminf, b.limsup) == (0, 5, 0, 1)
    b = bounds_stats(P("(0,1)"))
    assert (b.inf, b.sup, b.liminf, b.limsup) == (0, 1, 0, 1)
    b = bounds_stats(P("{1,2}"))
    assert (b.inf, b.sup, b.liminf, b.limsup) == (1, 2, None, None)
    with pytest.raises(DomainError):
        bounds_stats(EMPTY)


def test_topo_examples():
    assert topo(P("[0,1) U {5}"), "derived") == P("[0,1]")
    assert topo(P("(0,1) U {2}"), "interior") == P("(0,1)")
    assert topo(P("(0,1) U (1,2)"), "closure") == P("[0,2]")
    with pytest.raises(ValueError):
        topo(P("[0,1]"), "boundary")


def test_transform_examples():
    assert translate(P("[0,1]"), 2) == P("[2,3]")
    assert reflect(P("[0,1] U {3}"), 0) == P("{-3} U [-1,0]")
    assert scale(P("(0,2]"), F(-1, 2)) == P("[-1,0)")
    assert transform(P("[0,1]"), "scale", 3) == P("[0,3]")
    with pytest.raises(DomainError):
        scale(P("[0,1]"), 0)


def test_combine_examples():
    assert minkowski(P("[0,2]"), P("[5,6]")) == P("[5,8]")
    assert combine(P("(0,1)"), P("{3}"), "minkowski") == P("(3,4)")
    assert combine(P("[0,1]"), P("(0,1]"), "minkowski") == P("(0,2]")
    assert combine(P("[0,2]"), P("[1,3]"), "symdiff") == P("[0,1) U (2,3]")
    assert combine(P("[0,2]"), P("(1,3)"), "diff") == P("[0,1]")
    with pytest.raises(ValueError):
        combine(P("[0,1]"), P("[0,1]"), "xor")


def test_restrict_examples():
    assert restrict(P("[0,2] U [5,6]"), 3, "minus") == P("[0,2]")
    assert restrict(P("[0,2]"), 1, "plus") == P("[1,2]")
    assert restrict(P("{0,1,2}"), 1, "minus") == P("{0,1}")
    assert restrict(P("[0,1)"), 1, "minus") == P("[0,1)")


def test_symmetry_center_examples():
    assert symmetry_center(P("[0,1] U [2,3]")) == F(3, 2)
    assert symmetry_center(P("[0,1] U [2,4]")) is None
    assert symmetry_center(P("{0}")) == 0
    with pytest.raises(DomainError):
        symmetry_center(EMPTY)


def test_interval_construction():
    assert Interval(2, 0) == Interval(0, 2)
    assert Interval(2, 0, True, False) == Interval(0, 2, False, True)
    with pytest.raises(ValueError):
        Interval(1, 1, True, False)


@pytest.mark.parametrize("text, pos", [("[0,1", 4), ("[0;1]", 2), ("[0,1] V [2,3]", 6), ("[1/0,2]", 1)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_set(text)
    assert e.value.position == pos


def test_empty_set_literal():
    assert parse_set("{}") == EMPTY
    assert format_set(EMPTY) == "{}"
    assert parse_set("{} U [0,1]") == P("[0,1]")


# -- properties -------------------------------------------------------------------


@given(st.lists(intervals(), max_size=6))
def test_normalize_is_canonical_and_pointwise_exact(parts):
    S = normalize(parts)
    assert_canonical(S)
    assert normalize(S.components) == S
    for x in probes(S):
        assert (x in S) == raw_member(parts, x)


@given(st.lists(intervals(), max_size=5), st.permutations(range(5)))
def test_normalize_ignores_order(parts, perm):
    shuffled = [parts[i] for i in perm if i < len(parts)]
    assert normalize(parts) == normalize(shuffled)


@given(interval_sets(), interval_sets())
def test_point_set_equality_iff_structural(S, T):
    same_points = all((x in S) == (x in T) for x in probes(S, T))
    assert same_points == (S == T)


@given(interval_sets(), interval_sets())
def test_boolean_operations_by_membership(S, T):
    U, I = combine(S, T, "union"), combine(S, T, "intersect")
    D, X = combine(S, T, "diff"), combine(S, T, "symdiff")
    for R in (U, I, D, X):
        assert_canonical(R)
    for x in probes(S, T):
        a, b = x in S, x in T
        assert (x in U) == (a or b)
        assert (x in I) == (a and b)
        assert (x in D) == (a and not b)
        assert (x in X) == (a != b)


@given(interval_sets(), interval_sets())
def test_inclusion_exclusion(S, T):
    assert measure(combine(S, T, "union")) + measure(combine(S, T, "intersect")) == measure(S) + measure(T)


@given(massive_sets(), rationals(), rationals(0, 5).filter(lambda a: a > 0))
def test_avg_affine_and_internal(S, x, alpha):
    assert avg(translate(S, x)) == avg(S) + x
    assert avg(scale(S, alpha)) == alpha * avg(S)
    assert S.inf <= avg(S) <= S.sup


@given(st.lists(rationals(), min_size=1, max_size=6))
def test_avg_of_points_is_arithmetic_mean(xs):
    S = IntervalSet.of_points(*xs)
    pts = sorted(set(xs))
    assert avg(S) == sum(pts) / len(pts)


@given(interval_sets())
def test_derived_is_idempotent(S):
    d = topo(S, "derived")
    assert topo(d, "derived") == d


@given(interval_sets())
def test_topology_laws(S):
    cl, it, d = topo(S, "closure"), topo(S, "interior"), topo(S, "derived")
    assert it.issubset(S) and S.issubset(cl)
    assert topo(cl, "closure") == cl and topo(it, "interior") == it
    assert d.issubset(cl)
    assert measure(cl) == measure(it) == measure(S)


@given(interval_sets(), interval_sets(), st.data())
def test_minkowski_membership(S, T, data):
    M = minkowski(S, T)
    for _ in range(5):
        c1 = data.draw(st.sampled_from(S.components))
        c2 = data.draw(st.sampled_from(T.components))
        p = sample_point(c1, data)
        q = sample_point(c2, data)
        assert p + q in M
    # points outside M have no decomposition across any component pair
    for r in probes(M):
        if r in M:
            continue
        for a in S.components:
            for b in T.components:
                assert not pair_reaches(a, b, r)


def sample_point(c, data):
    if c.lo == c.hi:
        return c.lo
    t = data.draw(st.fractions(0, 1, max_denominator=12))
    x = c.lo + t * (c.hi - c.lo)
    if not c.contains(x):
        x = (c.lo + c.hi) / 2
    return x


def pair_reaches(a, b, r):
    # is there p in a, q in b with p + q = r
    lo, hi = a.lo + b.lo, a.hi + b.hi
    if r < lo or r > hi:
        return False
    if r == lo:
        return a.lo_closed and b.lo_closed
    if r == hi:
        return a.hi_closed and b.hi_closed
    return True


@given(interval_sets(), rationals())
def test_reflect_is_involution(S, s):
    assert reflect(reflect(S, s), s) == S
    assert reflect(S, s) == translate(scale(S, -1), 2 * s)


@given(interval_sets(), rationals())
def test_restrict_halves_cover(S, y):
    lo, hi = restrict(S, y, "minus"), restrict(S, y, "plus")
    assert combine(lo, hi, "union") == S
    assert combine(lo, hi, "intersect") == (IntervalSet.of_points(y) if y in S else EMPTY)


@given(interval_sets(min_size=0))
def test_text_and_json_round_trip(S):
    assert parse_set(format_set(S)) == S
    assert set_from_json(set_to_json(S)) == S


@given(interval_sets())
def test_symmetry_center_is_a_true_center(S):
    s = symmetry_center(S)
    sym = reflect(S, (S.inf + S.sup) / 2) == S
    assert (s is not None) == sym
