from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meanset import core, operators
from meanset.errors import CompositionError, DomainError, IterationError
from meanset.exactset import EMPTY, IntervalSet, combine, measure, parse_set, reflect, scale, translate
from meanset.piecewise import PiecewiseLinear

from conftest import interval_sets, massive_sets, open_sets, rationals

P = parse_set


def mirror_mass(S, z):
    """Independent g oracle: half the total overlap of S with its mirror image through z."""
    total = F(0)
    for a in S.components:
        for b in S.components:
            lo, hi = max(a.lo, 2 * z - b.hi), min(a.hi, 2 * z - b.lo)
            total += max(F(0), hi - lo)
    return total / 2


def mass_below(S, x):
    return sum((max(F(0), min(c.hi, x) - c.lo) for c in S.components), F(0))


def midpoint_member(S, p):
    # p in ms_aa(S) iff 2p = u + v for u, v in some pair of components
    r = 2 * p
    for a in S.components:
        for b in S.components:
            lo, hi = a.lo + b.lo, a.hi + b.hi
            if lo < r < hi:
                return True
            if r == lo and a.lo_closed and b.lo_closed:
                return True
            if r == hi and a.hi_closed and b.hi_closed:
                return True
    return False


# -- worked examples ------------------------------------------------------------


@pytest.mark.parametrize("S, expected", [
    ("[0,2] U [5,6]", "[0,2] U [5/2,4] U [5,6]"),
    ("{-1,0,1}", "{-1,-1/2,0,1/2,1}"),
    ("{0} U [2,3]", "{0} U [1,3/2] U [2,3]"),
])
def test_ms_aa_examples(S, expected):
    assert core.ms_aa(P(S)) == P(expected)


@pytest.mark.parametrize("S, expected", [
    ("{-1,0,1}", "{-1/2,0,1/2}"),
    ("{-1,2}", "{1/2}"),
    # 0 and 1 are midpoints of the diagonal pair only
    ("[0,1]", "(0,1)"),
    ("[0,1] U {3}", "(0,1) U [3/2,2]"),
    ("{0} U [1,2]", "[1/2,1] U (1,2)"),
])
def test_ms_aas_examples(S, expected):
    assert core.ms_aas(P(S)) == P(expected)


def test_empty_inputs_rejected():
    for fn in (core.ms_aa, core.ms_aas, core.g_argmax, core.ms_hf):
        with pytest.raises(DomainError):
            fn(EMPTY)


G_TABLE = {
    F(1, 2): F(1, 2), F(1): F(1), F(3, 2): F(1, 2), F(9, 4): F(0), F(11, 4): F(1, 2),
    F(3): F(1), F(13, 4): F(1), F(15, 4): F(1, 2), F(21, 4): F(1, 4), F(11, 2): F(1, 2),
    F(23, 4): F(1, 4),
}


def test_g_table():
    g = core.g_function(P("[0,2] U [5,6]"))
    for z, v in G_TABLE.items():
        assert g(z) == v, z
    assert g(-1) == 0 and g(7) == 0
    assert g.is_continuous()


def test_g_small_examples():
    g = core.g_function(P("[0,1]"))
    assert (g(F(1, 2)), g(0), g(1)) == (F(1, 2), 0, 0)
    g0 = core.g_function(P("{0,1}"))
    assert g0 == PiecewiseLinear.zero() and g0(F(1, 2)) == 0


@pytest.mark.parametrize("S, top, where", [
    ("[0,2] U [5,6]", F(1), "{1} U [3,7/2]"),
    ("[0,1]", F(1, 2), "{1/2}"),
    # the whole set is mirrored onto itself through 3/2
    ("[0,1] U [2,3]", F(1), "{3/2}"),
    # measure zero: g vanishes, every point of ms_aa is a maximizer
    ("{0,1}", F(0), "{0,1/2,1}"),
])
def test_g_argmax_examples(S, top, where):
    assert core.g_argmax(P(S)) == (top, P(where))


def test_z_sets_examples():
    S = P("[0,2] U [5,6]")
    assert core.z_sets(S, 3) == (P("[0,1]"), P("[5,6]"))
    assert core.z_sets(P("[0,1]"), F(1, 2)) == (P("[0,1/2]"), P("[1/2,1]"))
    assert core.z_sets(P("[0,1]"), 2) == (EMPTY, EMPTY)


@pytest.mark.parametrize("S, expected", [
    ("[0,2] U [3,4] U [5,6]", "[2,3]"),
    ("[0,1]", "{1/2}"),
    ("[0,1] U [2,3]", "[1,2]"),
    ("[0,1] U {5}", "{1/2}"),
])
def test_ms_hf_examples(S, expected):
    assert core.ms_hf(P(S)) == P(expected)


def test_ms_hf_rejects_null_sets():
    with pytest.raises(DomainError):
        core.ms_hf(P("{1,2}"))
    assert not operators.hf_operator().accepts(P("{1,2}"))


def test_hf_avg_examples():
    r = core.hf_avg_test(P("[0,2] U [3,4] U [5,6]"))
    assert not r.equal and (r.avg_lower, r.avg_upper) == (1, F(9, 2))
    assert core.hf_avg_test(P("[0,1] U [2,3]")).equal
    r = core.hf_avg_test(P("[0,2] U [5,6]"))
    assert not r.equal and r.avg_hf == F(3, 2) and r.avg_set == F(5, 2)


def test_topological_operators():
    assert operators.topo_operator("interior")(P("(0,1) U {2}")) == P("(0,1)")
    assert operators.topo_operator("derived")(P("[0,1) U {5}")) == P("[0,1]")
    with pytest.raises(ValueError):
        operators.topo_operator("frontier")


def test_compose_examples():
    it, cl = operators.topo_operator("interior"), operators.topo_operator("closure")
    assert operators.compose(it, cl)(P("(0,1) U (1,2)")) == P("(0,2)")
    aa = operators.aa_operator()
    S = P("[0,2] U [5,6]")
    assert operators.compose(operators.identity, aa)(S) == aa(S)
    mt = operators.middle_third_operator()
    two = operators.compose(mt, mt)(P("(0,1)"))
    assert two == P("(0,1/9) U (2/9,1/3) U (2/3,7/9) U (8/9,1)")


def test_compose_reports_failing_stage():
    op = operators.compose(operators.hf_operator(), operators.topo_operator("derived"))
    with pytest.raises(CompositionError) as e:
        op(P("{1,2}"))
    assert e.value.stage == "ms_hf"


def test_iterate_examples():
    rep = operators.iterate(operators.aas_operator(), P("{-1,0,1}"), n_max=3)
    assert rep.trajectory[1:] == (P("{-1/2,0,1/2}"), P("{-1/4,0,1/4}"), P("{-1/8,0,1/8}"))
    assert rep.fixpoint_index is None
    rep = operators.iterate(operators.aa_operator(), P("{0,1}"), n_max=2)
    assert rep.trajectory[2] == IntervalSet.of_points(*(F(k, 4) for k in range(5)))
    # two equal maximal components: the first step drops (0,1), then (2,3) is fixed
    rep = operators.iterate(operators.max_interval_operator(), P("(0,1) U (2,3)"))
    assert rep.fixpoint_index == 1 and rep.trajectory[-1] == P("(2,3)")
    assert operators.iterate(operators.max_interval_operator(), P("(0,2)")).fixpoint_index == 0


def test_iterate_domain_exit_is_reported():
    op = operators.compose(operators.topo_operator("derived"), operators.hf_operator())
    with pytest.raises(IterationError) as e:
        operators.iterate(op, P("[0,1]"), n_max=3)
    assert e.value.index == 1


def test_middle_third_examples():
    assert core.middle_third(P("(0,3)")) == P("(0,1) U (2,3)")
    assert core.middle_third(P("(0,1) U (2,5)")) == P("(0,1/3) U (2/3,1) U (2,3) U (4,5)")
    traj = operators.iterate(operators.middle_third_operator(), P("(0,1)"), n_max=8).trajectory
    assert len(set(traj)) == 9
    with pytest.raises(DomainError):
        core.middle_third(P("[0,1]"))


def test_max_interval_examples():
    assert core.max_interval(P("(0,1) U (2,4) U (5,7)")) == P("(5,7)")
    assert core.max_interval(P("(0,2)")) == P("(0,2)")
    rep = operators.iterate(operators.max_interval_operator(), P("(0,1) U (2,3) U (4,5) U (6,7)"))
    assert rep.fixpoint_index == 3
    with pytest.raises(DomainError):
        core.max_interval(P("(0,1) U {2}"))


def test_invertibility_examples():
    corpus = [P("(0,1)"), P("(0,1) U {2}"), P("[0,3]"), P("{1,2}")]
    assert not operators.invertibility_check(operators.topo_operator("interior"), corpus).ok
    assert operators.invertibility_check(operators.identity, corpus).ok


# -- properties -------------------------------------------------------------------

OPS = [
    operators.topo_operator("interior"), operators.topo_operator("closure"),
    operators.topo_operator("derived"), operators.aa_operator(), operators.aas_operator(),
    operators.hf_operator(),
]


@given(interval_sets(), st.sampled_from(OPS))
def test_operators_are_internal(S, op):
    if not op.accepts(S):
        return
    R = op(S)
    assert R.is_empty or (S.inf <= R.inf and R.sup <= S.sup)


@given(open_sets())
def test_open_set_operators_are_internal(S):
    for fn in (core.middle_third, core.max_interval):
        R = fn(S)
        assert S.inf <= R.inf and R.sup <= S.sup and R.is_open


@given(interval_sets(max_size=3), st.data())
def test_ms_aa_membership_oracle(S, data):
    M = core.ms_aa(S)
    assert S.issubset(M)
    ends = sorted({e for c in M.components for e in (c.lo, c.hi)} | {c.lo for c in S.components})
    pts = ends + [(a + b) / 2 for a, b in zip(ends, ends[1:])]
    pts.append(data.draw(rationals()))
    for p in pts:
        assert (p in M) == midpoint_member(S, p)


@given(st.lists(rationals(), min_size=1, max_size=6))
def test_ms_aas_on_point_sets_enumerates(xs):
    S = IntervalSet.of_points(*xs)
    pts = S.points()
    want = {(x + y) / 2 for x in pts for y in pts if x != y}
    assert core.ms_aas(S) == IntervalSet.of_points(*want)


@given(interval_sets(), rationals(), rationals(1, 4))
def test_ms_aa_equivariance(S, x, alpha):
    M = core.ms_aa(S)
    assert core.ms_aa(translate(S, x)) == translate(M, x)
    assert core.ms_aa(reflect(S, x)) == reflect(M, x)
    assert core.ms_aa(scale(S, alpha)) == scale(M, alpha)


@given(interval_sets())
def test_ms_aas_inside_ms_aa(S):
    assert core.ms_aas(S).issubset(core.ms_aa(S))


@given(interval_sets(), st.lists(rationals(), min_size=1, max_size=10))
def test_g_matches_mirror_mass(S, zs):
    g = core.g_function(S)
    assert g.is_continuous()
    for z in zs:
        assert g(z) == mirror_mass(S, z) == core.g_direct(S, z)
        lo, hi = core.z_sets(S, z)
        assert measure(lo) == measure(hi) == g(z)


@given(massive_sets(max_size=3), massive_sets(max_size=3))
def test_g_stability(S, T):
    d = measure(combine(S, T, "symdiff"))
    gS, gT = core.g_function(S), core.g_function(T)
    for z in set(gS.breakpoints) | set(gT.breakpoints):
        assert abs(gS(z) - gT(z)) <= d


@given(massive_sets())
def test_g_argmax_is_the_maximum(S):
    top, where = core.g_argmax(S)
    g = core.g_function(S)
    assert all(g(b) <= top for b in g.breakpoints)
    assert not where.is_empty
    for c in where.components:
        assert g(c.lo) == top and g(c.hi) == top
    assert not combine(where, core.ms_aa(S), "intersect").is_empty


@given(massive_sets())
def test_ms_hf_structure(S):
    R = core.ms_hf(S)
    a, b = R.inf, R.sup
    assert R == IntervalSet.closed(a, b)
    half = measure(S) / 2
    assert mass_below(S, a) == mass_below(S, b) == half
    assert mass_below(S, a - F(1, 1000)) < half < mass_below(S, b + F(1, 1000))
    d = [c for c in S.components if c.lo < c.hi]
    assert d[0].lo <= a and b <= d[-1].hi
    # no mass strictly inside the result
    if a < b:
        assert measure(combine(S, P(f"({a},{b}]"), "intersect")) == 0


@given(massive_sets())
def test_ms_hf_degeneracy_criterion(S):
    R = core.ms_hf(S)
    p = R.inf
    left = any(c.lo < p <= c.hi for c in S.components)
    right = any(c.lo <= p < c.hi for c in S.components)
    assert (R.inf == R.sup) == (left and right)


@given(interval_sets())
def test_hf_avg_identity(S):
    if measure(S) == 0:
        return
    r = core.hf_avg_test(S)
    assert r.equal == (r.avg_hf == r.avg_set)


@given(interval_sets(max_size=3), st.lists(st.sampled_from(OPS[:5]), min_size=3, max_size=3))
def test_compose_associativity_and_unit(S, ops):
    a, b, c = ops
    left = operators.compose(operators.compose(a, b), c)
    right = operators.compose(a, operators.compose(b, c))
    try:
        want = left(S)
    except DomainError:
        with pytest.raises(DomainError):
            right(S)
        return
    assert right(S) == want
    assert operators.compose(operators.identity, a)(S) == a(S) == operators.compose(a, operators.identity)(S)


@given(open_sets())
def test_middle_third_preserves_bounds(S):
    R = core.middle_third(S)
    assert (R.inf, R.sup) == (S.inf, S.sup)
    assert measure(R) == measure(S) * F(2, 3)
