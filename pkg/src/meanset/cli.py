"""``meanset`` command line.

Exit status: 0 success, 1 domain or input error, 2 property-suite mismatch
(argparse usage errors also exit 2).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import core, exactset, means, operators
from . import countable as cnt
from .axioms import profiles as prof
from .axioms import properties as props
from .errors import MeansetError
from .exactset import format_rat, format_set, parse_set, set_to_json
from .piecewise import _dec

SET_OPERATORS = ("interior", "closure", "derived", "ms_aa", "ms_aas", "ms_hf",
                 "middle_third", "max_interval", "id")
MEAN_OPERATORS = ("ms_aa_K", "kbar", "compound", "kf", "hf_avg", "avg", "measure")
COUNTABLE_OPS = ("derived", "enumerate", "ms_a", "ms_as", "ms_axs", "oracle")


class _Fail(Exception):
    def __init__(self, message, code=1):
        super().__init__(message)
        self.code = code


def _seed(default: int) -> int:
    env = os.environ.get("MEANSET_SEED", "").strip()
    if not env:
        return default
    try:
        return int(env)
    except ValueError:
        raise _Fail(f"MEANSET_SEED must be an integer, got {env!r}") from None


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _num(v) -> str:
    if isinstance(v, Fraction):
        return format_rat(v)
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def _emit_set(S, fmt):
    if fmt == "json":
        return _dumps({"set": format_set(S), **set_to_json(S)})
    if fmt == "tsv":
        rows = ["lo\thi\tlo_closed\thi_closed\tlo_dec\thi_dec"]
        rows += [f"{format_rat(c.lo)}\t{format_rat(c.hi)}\t{int(c.lo_closed)}\t{int(c.hi_closed)}"
                 f"\t{_dec(c.lo)}\t{_dec(c.hi)}" for c in S.components]
        return "\n".join(rows) + "\n"
    return format_set(S) + "\n"


def _operator(name: str) -> operators.MeanSetOperator:
    if name == "id":
        return operators.identity
    return prof.operator_by_name(name)


def _interval_ends(S):
    if S.is_empty or S.inf == S.sup:
        raise _Fail("expected an interval [a,b] with a < b or a point pair {a,b}")
    return S.inf, S.sup


# -- verbs --------------------------------------------------------------------


def cmd_eval(a) -> str:
    S = parse_set(a.set)
    op = a.operator
    if op in SET_OPERATORS:
        return _emit_set(_operator(op)(S), a.format)
    if op == "avg":
        v = exactset.avg(S)
        return _dumps({"avg": format_rat(v)}) if a.format == "json" else format_rat(v) + "\n"
    if op == "measure":
        v = exactset.measure(S)
        return _dumps({"measure": format_rat(v)}) if a.format == "json" else format_rat(v) + "\n"
    if op == "hf_avg":
        r = core.hf_avg_test(S)
        d = {"equal": r.equal, "lhs": format_rat(r.lhs), "rhs": format_rat(r.rhs),
             "avg_lower": format_rat(r.avg_lower), "avg_upper": format_rat(r.avg_upper),
             "avg_hf": format_rat(r.avg_hf), "avg_set": format_rat(r.avg_set)}
        if a.format == "json":
            return _dumps(d)
        return "".join(f"{k}={'true' if v is True else 'false' if v is False else v}\n"
                       for k, v in d.items())
    K = means.mean_from_name(a.mean)
    if op == "ms_aa_K":
        return _emit_set(means.ms_aa_K(K, S), a.format)
    lo, hi = _interval_ends(S)
    if op == "kbar":
        r = means.kbar_iterate(K, lo, hi, a.n)
        if a.format == "json":
            return _dumps({"points": [_num(p) for p in r.points], "max_gap": _num(r.max_gap)})
        return "points " + " ".join(_num(p) for p in r.points) + f"\nmax_gap {_num(r.max_gap)}\n"
    if op == "compound":
        K2 = means.mean_from_name(a.mean2)
        tr = means.compound(K, K2, lo, hi, tol=a.tol)
        d = {"limit": repr(tr.limit_estimate), "converged": tr.converged,
             "error_bound": repr(tr.error_bound), "steps": tr.steps}
        if a.format == "json":
            return _dumps(d)
        if a.format == "tsv":
            return "step\ta\tb\n" + "".join(f"{i}\t{x!r}\t{y!r}\n" for i, (x, y) in enumerate(tr.pairs))
        return "".join(f"{k} {str(v).lower() if isinstance(v, bool) else v}\n" for k, v in d.items())
    if op == "kf":
        roots = means.k_f_roots(K, a.f, lo, hi, tol=a.tol)
        if a.format == "json":
            return _dumps({"roots": [{"lo": float(r.lo), "hi": float(r.hi), "kind": r.kind}
                                     for r in roots]})
        return "".join(f"[{float(r.lo)!r}, {float(r.hi)!r}] {r.kind}\n" for r in roots)
    raise _Fail(f"unknown operator {op!r}")


def _linear(m, c) -> str:
    if m == 0:
        return format_rat(c)
    lead = {1: "z", -1: "-z"}.get(m, f"{format_rat(m)}*z")
    if c == 0:
        return lead
    return f"{lead} {'+' if c > 0 else '-'} {format_rat(abs(c))}"


def cmd_g(a) -> str:
    S = parse_set(a.set)
    g = core.g_function(S)
    if a.format == "tsv":
        return g.to_tsv()
    if a.format == "json":
        return _dumps(g.to_json())
    lines = []
    bps = g.breakpoints
    for k, (m, c) in enumerate(g.segments):
        if m == 0 and c == 0:
            continue
        lines.append(f"[{format_rat(bps[k])},{format_rat(bps[k + 1])}]  g(z) = {_linear(m, c)}")
    return "\n".join(lines) + ("\n" if lines else "g = 0\n")


def cmd_argmax(a) -> str:
    S = parse_set(a.set)
    top, where = core.g_argmax(S)
    if a.format == "json":
        return _dumps({"max": format_rat(top), "argmax": format_set(where)})
    return f"max={format_rat(top)} argmax={format_set(where)}\n"


def cmd_iterate(a) -> str:
    op = _operator(a.operator)
    rep = operators.iterate(op, parse_set(a.set), n_max=a.n)
    if a.format == "json":
        return _dumps({
            "trajectory": [format_set(t) for t in rep.trajectory],
            "fixpoint_index": rep.fixpoint_index,
            "truncated_union": format_set(rep.truncated_union),
            "max_gap": format_rat(rep.max_gap),
        })
    if a.format == "tsv":
        return "n\tset\n" + "".join(f"{i}\t{format_set(t)}\n" for i, t in enumerate(rep.trajectory))
    lines = [f"{i}: {format_set(t)}" for i, t in enumerate(rep.trajectory)]
    fix = "none" if rep.fixpoint_index is None else str(rep.fixpoint_index)
    lines.append(f"fixpoint_index: {fix}")
    lines.append(f"max_gap: {format_rat(rep.max_gap)}")
    return "\n".join(lines) + "\n"


def cmd_countable(a) -> str:
    D = cnt.parse_desc(a.descriptor)
    op = a.operator
    if op in ("ms_a", "ms_as", "ms_axs"):
        return _emit_set(getattr(cnt, op)(D), a.format)
    if op == "enumerate":
        return _emit_set(cnt.enumerate_desc(D, a.n), a.format)
    if op == "derived":
        Hd = cnt.derived_set(D)
        ext = [format_rat(x) for x in Hd.extremes] if Hd.extremes else None
        body = format_set(Hd.points) if Hd.is_finite else cnt.format_desc(Hd.desc)
        if a.format == "json":
            return _dumps({"derived": body, "finite": Hd.is_finite,
                           "second_derived": format_set(Hd.second), "extremes": ext})
        out = f"derived: {body}\n"
        if not Hd.is_finite:
            out += f"second derived: {format_set(Hd.second)}\n"
        out += "extremes: " + (" ".join(ext) if ext else "undefined (fewer than two points)") + "\n"
        return out
    if op == "oracle":
        if a.x is None:
            raise _Fail("countable oracle needs --x")
        tr = cnt.balanced_oracle(D, exactset.rat(a.x), steps=a.steps, tol=a.tol)
        d = {"x": format_rat(tr.x), "converged": tr.converged, "final_error": tr.final_error,
             "final_mean": float(tr.running_means[-1]), "counts_ok": tr.counts_ok,
             "truncated": tr.truncated, "steps": len(tr.running_means)}
        if a.format == "json":
            return _dumps(d)
        return "".join(f"{k} {str(v).lower() if isinstance(v, bool) else v}\n" for k, v in d.items())
    raise _Fail(f"unknown countable operation {op!r}")


def cmd_check(a) -> tuple:
    seed = _seed(a.seed)
    prop, cap = props.parse_property(a.property)
    op = prof.operator_by_name(a.operator)
    corpus = prof.corpus_for(a.operator, seed, a.count)
    entries = [e for e in prof.expected_profile(a.operator) if e.prop is prop]
    if entries:
        e = entries[0]
        if cap is not None:
            e = prof.ProfileEntry(e.prop, e.status, e.claim, e.reason, e.witnesses, cap)
        res = prof.run_entry(op, e, corpus, seed)
        rep, expected, ok = res.report, e.status, res.ok
    else:
        rep = props.check(op, prop, corpus, props.Aux(seed=seed, cap=cap or props.DEFAULT_CAP))
        expected, ok = None, True
    if a.format == "json":
        body = rep.to_json() if rep is not None else {"property": str(prop), "operator": op.name}
        body["expected"] = expected
        body["matches_expected"] = ok
        out = _dumps(body)
    else:
        out = (rep.table() + "\n") if rep is not None else ""
        if expected is not None:
            out += f"expected: {expected} -> {'match' if ok else 'MISMATCH'}\n"
            if expected == prof.UNTESTABLE:
                out += f"reason: {entries[0].reason}\n"
    return out, 0 if ok else 2


def cmd_paper_suite(a) -> tuple:
    from .paper_suite import paper_suite

    rep = paper_suite(seed=_seed(a.seed), count=a.count, profiles=not a.no_profiles)
    out = rep.dumps() if a.format == "json" else rep.text()
    return out, 0 if rep.ok else 2


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="meanset", description="Exact mean-sets of real sets.")
    sub = p.add_subparsers(dest="verb", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json", "tsv"), default="text")

    e = sub.add_parser("eval", help="apply an operator to a set")
    e.add_argument("operator", choices=SET_OPERATORS + MEAN_OPERATORS)
    e.add_argument("set")
    e.add_argument("--mean", default="arithmetic", help="arithmetic|geometric|harmonic|power:p")
    e.add_argument("--mean2", default="arithmetic", help="second mean for compound")
    e.add_argument("--n", type=int, default=1, help="rounds for kbar")
    e.add_argument("--f", default="identity", choices=tuple(means.F_CATALOG), help="function for kf")
    e.add_argument("--tol", type=float, default=means.DEFAULT_TOL)
    fmt(e)

    g = sub.add_parser("g", help="the mirror-measure function g of a set")
    g.add_argument("set")
    fmt(g)

    m = sub.add_parser("argmax", help="maximum of g and its maximizers")
    m.add_argument("set")
    fmt(m)

    it = sub.add_parser("iterate", help="iterate an operator")
    it.add_argument("operator", choices=SET_OPERATORS)
    it.add_argument("set")
    it.add_argument("--n", type=int, default=10)
    fmt(it)

    c = sub.add_parser("countable", help="mean-sets of a ladder descriptor")
    c.add_argument("operator", choices=COUNTABLE_OPS)
    c.add_argument("descriptor")
    c.add_argument("--n", type=int, default=4, help="stage for enumerate")
    c.add_argument("--x", help="balance point for oracle")
    c.add_argument("--steps", type=int, default=100_000)
    c.add_argument("--tol", type=float, default=1e-3)
    fmt(c)

    k = sub.add_parser("check", help="test a property of an operator on a random corpus")
    k.add_argument("operator", choices=prof.OPERATOR_NAMES)
    k.add_argument("property", help="property id, e.g. convex or finite_order:8")
    k.add_argument("--count", type=int, default=500)
    k.add_argument("--seed", type=int, default=0)
    fmt(k)

    s = sub.add_parser("paper-suite", help="run the worked examples and property tables")
    s.add_argument("--count", type=int, default=500)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--no-profiles", action="store_true")
    fmt(s)
    return p


_VERBS = {
    "eval": cmd_eval, "g": cmd_g, "argmax": cmd_argmax, "iterate": cmd_iterate,
    "countable": cmd_countable, "check": cmd_check, "paper-suite": cmd_paper_suite,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        res = _VERBS[args.verb](args)
    except _Fail as e:
        print(f"meanset: {e}", file=stderr)
        return e.code
    except (MeansetError, ValueError, ZeroDivisionError) as e:
        print(f"meanset: {e}", file=stderr)
        return 1
    out, code = res if isinstance(res, tuple) else (res, 0)
    stdout.write(out)
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
