"""One-variable definable sets: normal form, set algebra, topology, cuts."""

import random

from oagkit.parser import parse_formula
from oagkit.qe import eliminate_all, evaluate
from oagkit.scalar import QuadScalar, Rational, compare, rational_between
from oagkit.sets import (
    NEG_INF,
    POS_INF,
    DefinableSet1D,
    OpenInterval,
    Point,
    closure,
    complement,
    contains,
    cut_analysis,
    fin,
    finite_points,
    from_components,
    interior,
    intersect,
    intervals,
    is_pseudo_finite,
    normalize,
    pick_point,
    render_set,
    union,
)
from oagkit.structures import parse_structure
from oagkit.terms import Var

X = Var("x")

QSQRT2 = parse_structure(
    "domain = Q\nradicand = 2\npred C : cut sqrt(2)\n", "qsqrt2"
)
Q3 = parse_structure("domain = Q\npred D : range 3\n", "q3")

EMPTY = DefinableSet1D(())
FULL = DefinableSet1D((OpenInterval(NEG_INF, POS_INF),))


def nz(text, s=None):
    return normalize(parse_formula(text), s) if s else normalize(parse_formula(text))


def rand_set(rng) -> DefinableSet1D:
    comps = []
    for _ in range(rng.randint(0, 4)):
        if rng.random() < 0.4:
            comps.append(Point(Rational(rng.randint(-12, 12), rng.randint(1, 4))))
        else:
            a = Rational(rng.randint(-12, 12), rng.randint(1, 4))
            b = a + Rational(rng.randint(1, 8), rng.randint(1, 4))
            lo = NEG_INF if rng.random() < 0.15 else fin(a)
            hi = POS_INF if rng.random() < 0.15 else fin(b)
            comps.append(OpenInterval(lo, hi))
    return from_components(comps)


def probe_points(rng, sets, n=120):
    pts = [Rational(rng.randint(-60, 60), rng.randint(1, 8)) for _ in range(n)]
    for d in sets:
        for c in d.components:
            if isinstance(c, Point):
                pts.append(c.value)
            else:
                if c.lo.kind == "fin":
                    pts.append(c.lo.value)
                    if c.hi.kind == "fin":
                        pts.append(rational_between(c.lo.value, c.hi.value))
                if c.hi.kind == "fin":
                    pts.append(c.hi.value)
    return pts


def same_set(a, b, rng) -> bool:
    return all(contains(a, p) == contains(b, p) for p in probe_points(rng, [a, b]))


def test_normalize_fixed_examples():
    d = nz("0 < x & x < 1 | x = 2")
    assert d.components == (OpenInterval(fin(0), fin(1)), Point(Rational(2)))
    d = nz("~(x = 0)")
    assert d.components == (
        OpenInterval(NEG_INF, fin(0)),
        OpenInterval(fin(0), POS_INF),
    )
    d = nz("D(x)", Q3)
    assert d.components == tuple(Point(Rational(k)) for k in range(4))
    assert nz("x < x").components == ()
    assert nz("x = x") == FULL


def test_normal_form_is_canonical():
    pairs = [
        ("0 < x & x < 2 | 1 < x & x < 3", "0 < x & x < 3"),
        ("x < 1 | x = 1", "~(1 < x)"),
        ("0 <= x & x <= 1 | 1 < x & x < 2", "0 <= x & x < 2"),
        ("x = 1 | x = 1", "x = 1"),
        ("E u (u < x & x < u + 1)", "x = x"),
    ]
    for lhs, rhs in pairs:
        assert nz(lhs) == nz(rhs), (lhs, rhs)


def test_normalize_agrees_with_pointwise_evaluation():
    rng = random.Random(61)
    texts = [
        "0 < x & x < 1 | x = 2",
        "~(x = 0) & x < 3",
        "x < 1 | 2 < x & x < 5/2",
        "2*x = 3 | 3*x = 1",
        "x <= 0 | 1 <= x",
        "E u (x < u & u < 2*x)",
    ]
    for text in texts:
        f = parse_formula(text)
        d = normalize(f)
        qf = eliminate_all(f).formula
        for p in probe_points(rng, [d]):
            assert contains(d, p) == evaluate(qf, {X: p}), (text, p)


def test_boolean_algebra_laws():
    rng = random.Random(62)
    for _ in range(120):
        a, b = rand_set(rng), rand_set(rng)
        # Canonical form makes semantic equality plain structural equality.
        assert complement(complement(a)) == a
        assert union(a, b) == union(b, a)
        assert intersect(a, complement(a)) == EMPTY
        assert union(a, complement(a)) == FULL
        assert complement(union(a, b)) == intersect(complement(a), complement(b))
        assert union(a, a) == a
        assert intersect(a, b) == complement(union(complement(a), complement(b)))
        assert same_set(union(a, b), union(b, a), rng)


def test_closure_and_interior():
    rng = random.Random(63)
    d = nz("0 < x & x < 1")
    c = closure(d)
    assert c.components == (Point(Rational(0)), OpenInterval(fin(0), fin(1)), Point(Rational(1)))
    assert interior(nz("x = 2")) == EMPTY
    assert complement(EMPTY) == FULL
    for _ in range(80):
        a = rand_set(rng)
        ca, ia = closure(a), interior(a)
        assert closure(ca) == ca
        assert interior(ia) == ia
        assert intersect(a, ca) == a  # extensive
        assert union(a, ia) == a  # intensive
        # Duality: interior is the complement of the closure of the complement.
        assert interior(a) == complement(closure(complement(a)))


def test_intervals_view():
    d = nz("0 <= x & x <= 1 | x = 3")
    ivs = intervals(d)
    assert len(ivs) == 2
    assert ivs[0].lo_closed and ivs[0].hi_closed
    assert ivs[1].is_singleton()


def test_pseudo_finite_reports():
    rep = is_pseudo_finite(nz("x = 0 | x = 1 | x = 2"))
    assert rep.discrete and rep.closed and rep.bounded and rep.verdict
    rep = is_pseudo_finite(nz("0 < x & x < 1"))
    assert not rep.discrete and not rep.verdict
    rep = is_pseudo_finite(nz("x < 0"))
    assert not rep.bounded and not rep.verdict
    assert is_pseudo_finite(EMPTY).verdict
    # Discrete and bounded but not closed cannot arise in normal form; a
    # half-open interval is neither discrete nor closed.
    rep = is_pseudo_finite(nz("0 <= x & x < 1"))
    assert not rep.closed and not rep.discrete


def test_finite_points():
    assert finite_points(nz("x = 1 | x = 1/2")) == (Rational(1, 2), Rational(1))
    assert finite_points(EMPTY) == ()
    assert finite_points(nz("0 < x & x < 1")) is None


def test_pseudo_finite_iff_finite_points_on_random_sets():
    rng = random.Random(64)
    for _ in range(200):
        d = rand_set(rng)
        assert is_pseudo_finite(d).verdict == (finite_points(d) is not None)


def test_cut_analysis():
    rep = cut_analysis(nz("x < 3"), Q3)
    assert rep.kind == "proper_cut_with_lub"
    assert rep.lub == Rational(3)
    rep = cut_analysis(nz("C(x)", QSQRT2), QSQRT2)
    assert rep.kind == "gap"
    assert rep.lub is None
    assert cut_analysis(nz("x = x"), Q3).kind == "whole_group"
    assert cut_analysis(nz("x < x"), Q3).kind == "not_a_cut"
    assert cut_analysis(nz("0 < x"), Q3).kind == "not_a_cut"
    assert cut_analysis(nz("x = 0"), Q3).kind == "not_a_cut"
    # Lub membership does not matter, only existence.
    rep = cut_analysis(nz("x <= 3"), Q3)
    assert rep.kind == "proper_cut_with_lub" and rep.lub == Rational(3)


def test_render_set():
    assert render_set(EMPTY) == "{}"
    assert render_set(FULL) == "(-inf,inf)"
    assert render_set(nz("0 < x & x < 1 | x = 2")) == "(0,1) u {2}"
    assert render_set(nz("0 <= x & x <= 1")) == "{0} u (0,1) u {1}"
    assert render_set(nz("C(x)", QSQRT2)) == "(-inf,sqrt(2))"


def test_contains_and_pick_point():
    rng = random.Random(65)
    assert pick_point(EMPTY) is None
    for _ in range(120):
        d = rand_set(rng)
        p = pick_point(d)
        if d.components:
            assert p is not None and contains(d, p)
        else:
            assert p is None


def test_quad_endpoints_order_correctly():
    s2 = QuadScalar(0, 1, 2)
    d = from_components([OpenInterval(fin(Rational(1)), fin(s2))])
    assert contains(d, Rational(14, 10))
    assert not contains(d, Rational(3, 2))
    assert compare(s2, Rational(3, 2)) < 0
