from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from meanset.exactset import Interval, IntervalSet

settings.register_profile(
    "default", max_examples=150, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def rationals(lo=-10, hi=10, max_den=6):
    return st.builds(
        Fraction, st.integers(lo * max_den, hi * max_den), st.just(max_den)
    ).map(lambda q: q.limit_denominator(max_den))


@st.composite
def intervals(draw, lo=-10, hi=10):
    a = draw(rationals(lo, hi))
    if draw(st.integers(0, 4)) == 0:
        return Interval.point(a)
    b = draw(rationals(lo, hi).filter(lambda x: x != a))
    return Interval(a, b, draw(st.booleans()), draw(st.booleans()))


@st.composite
def interval_sets(draw, min_size=1, max_size=4, lo=-10, hi=10):
    return IntervalSet(draw(st.lists(intervals(lo, hi), min_size=min_size, max_size=max_size)))


def massive_sets(**kw):
    return interval_sets(**kw).filter(lambda S: any(c.lo < c.hi for c in S.components))


@st.composite
def open_sets(draw, max_size=4):
    parts = []
    for _ in range(draw(st.integers(1, max_size))):
        a = draw(rationals())
        b = draw(rationals().filter(lambda x: x != a))
        parts.append(Interval.open(a, b))
    return IntervalSet(parts)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
