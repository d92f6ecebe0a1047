"""Induction schemas, gap audits, covers, compactness, uniform continuity."""

import pytest

from oagkit.errors import (
    CoverAuditError,
    DegenerateIntervalError,
    IllFormedSchemaError,
    InvalidCoverError,
    NotAFunctionError,
    ResourceLimitError,
)
from oagkit.formulas import Forall, free_vars
from oagkit.induction import (
    DefinableFamily,
    check_bci,
    check_dci,
    compactness_certificate,
    completeness_audit,
    extract_subcover,
    family_audit,
    uniform_continuity_check,
)
from oagkit.parser import parse_formula
from oagkit.qe import decide, evaluate
from oagkit.scalar import QuadScalar, Rational, compare
from oagkit.schemas import build_bci, build_dci
from oagkit.sets import render_set
from oagkit.structures import parse_structure
from oagkit.terms import LinearTerm, Var

V, W, X, Y, A, T = Var("v"), Var("w"), Var("x"), Var("y"), Var("a"), Var("t")

QSQRT2 = parse_structure(
    "domain = Q\nradicand = 2\npred C : cut sqrt(2)\n", "qsqrt2"
)
QN16 = parse_structure("domain = Q\npred D : range 16\n", "qn16")

R = Rational
SQRT2 = QuadScalar(0, 1, 2)


def fam(text, param="a", point="x"):
    return DefinableFamily(parse_formula(text), Var(param), Var(point))


# Schema builders


def test_build_dci_emits_a_sentence():
    phi = parse_formula("v < w")
    sentence = build_dci(phi, V, [W])
    assert not free_vars(sentence)
    assert isinstance(sentence, Forall)


def test_build_dci_validates_body():
    with pytest.raises(IllFormedSchemaError):
        build_dci(parse_formula("w < 0"), V, [W])
    # force lets a vacuous instance through; it is still a sentence.
    s = build_dci(parse_formula("w < 0"), V, [W], force=True)
    assert not free_vars(s)
    with pytest.raises(IllFormedSchemaError):
        build_dci(parse_formula("v < w"), V, [])  # missing param
    with pytest.raises(IllFormedSchemaError):
        build_dci(parse_formula("v < 0"), V, [W])  # extra param
    with pytest.raises(IllFormedSchemaError):
        build_dci(parse_formula("v < w"), V, [W, W])  # duplicate


def test_build_bci_quantifies_variable_endpoints():
    phi = parse_formula("v < 1")
    s = build_bci(phi, V, LinearTerm.of_var(A), LinearTerm.of_var(Var("b")), [])
    assert not free_vars(s)
    s2 = build_bci(
        phi, V, LinearTerm.of_const(R(0)), LinearTerm.of_const(R(1)), []
    )
    assert not free_vars(s2)
    assert decide(s2) is True


# Induction instances


def test_check_dci_rational_cuts_hold():
    for text in ["v < 5", "0 < v", "v = 2", "v < w", "v < 1 | 3 < v"]:
        rep = check_dci(parse_formula(text), V)
        assert rep.verdict is True, text
        assert rep.counterexample_params is None
        assert rep.check == "dci"


def test_check_dci_irrational_cut_fails_with_witness():
    rep = check_dci(parse_formula("C(v)"), V, QSQRT2)
    assert rep.verdict is False
    assert rep.counterexample_params == ()
    assert rep.structure == "qsqrt2"


def test_check_dci_parameterized_witness():
    rep = check_dci(parse_formula("C(v) | v < w"), V, QSQRT2)
    assert rep.verdict is False
    ((var, val),) = rep.counterexample_params
    assert var == W
    # Only parameters below the cut leave the gap exposed.
    assert compare(val, SQRT2) < 0


def test_check_bci_interval_validation():
    with pytest.raises(DegenerateIntervalError):
        check_bci(parse_formula("v < 1"), V, R(1), R(1))
    with pytest.raises(DegenerateIntervalError):
        check_bci(parse_formula("v < 1"), V, R(2), R(0))


def test_dci_bci_agree_when_cut_is_inside_the_window():
    cases = [
        ("x < 1/2", None, True),
        ("C(2*x)", QSQRT2, False),
        ("C(3*x)", QSQRT2, False),
        ("C(x) & x < 1/4", QSQRT2, True),
    ]
    for text, s, want in cases:
        phi = parse_formula(text)
        d = check_dci(phi, X) if s is None else check_dci(phi, X, s)
        b = (
            check_bci(phi, X, R(0), R(1))
            if s is None
            else check_bci(phi, X, R(0), R(1), s)
        )
        assert d.verdict == b.verdict == want, text


# Completeness audit


def test_completeness_audit_gap():
    rep = completeness_audit(parse_formula("C(x)"), QSQRT2)
    assert rep.kind == "gap"
    assert rep.lub is None
    assert rep.lub_sentence_true is False
    assert render_set(rep.definable_set) == "(-inf,sqrt(2))"


def test_completeness_audit_rational_cut():
    rep = completeness_audit(parse_formula("x < 3"))
    assert rep.kind == "proper_cut_with_lub"
    assert rep.lub == R(3)
    assert rep.lub_sentence_true is True


def test_completeness_audit_degenerate_sets():
    assert completeness_audit(parse_formula("x < x")).kind == "not_a_cut"
    assert completeness_audit(parse_formula("x = x")).kind == "whole_group"
    assert completeness_audit(parse_formula("0 < x")).kind == "not_a_cut"


# Definable families


def test_family_needs_distinct_vars_and_no_strays():
    with pytest.raises(InvalidCoverError):
        DefinableFamily(parse_formula("a < x"), A, A)
    with pytest.raises(InvalidCoverError):
        DefinableFamily(parse_formula("a < x & y < 1"), A, X)
    # Constant families are legitimate.
    DefinableFamily(parse_formula("0 < x"), A, X)


def test_family_audit_open_cover():
    rep = family_audit(fam("a - 1/4 < x & x < a + 1/4"), "open_cover", a=R(0), b=R(1))
    assert rep.all_fibers_open and rep.covers and rep.passed()
    rep = family_audit(
        fam("a - 1/4 < x & x < a + 1/4 & x < 1/2"), "open_cover", a=R(0), b=R(1)
    )
    assert rep.all_fibers_open and not rep.covers and not rep.passed()
    rep = family_audit(fam("a - 1/4 <= x & x <= a + 1/4"), "open_cover", a=R(0), b=R(1))
    assert not rep.all_fibers_open and not rep.passed()


def test_family_audit_exhaustion():
    rep = family_audit(fam("D(4*x)", param="t"), "exhaustion", QN16)
    assert rep.directed and rep.all_fibers_pseudo_finite and rep.passed()
    rep = family_audit(fam("x = 0 | x = t", param="t"), "exhaustion")
    assert not rep.directed and not rep.passed()
    rep = family_audit(fam("x < t", param="t"), "exhaustion")
    assert rep.directed and not rep.all_fibers_pseudo_finite and not rep.passed()


def test_family_audit_argument_validation():
    with pytest.raises(ValueError):
        family_audit(fam("a < x"), "mystery")
    with pytest.raises(DegenerateIntervalError):
        family_audit(fam("a < x"), "open_cover")  # endpoints required


# Subcovers and compactness


def test_extract_subcover_width_half():
    cert = extract_subcover(fam("a - 1/4 < x & x < a + 1/4"), R(0), R(1))
    assert cert.verified is True
    assert 1 <= len(cert.params) <= 3
    assert cert.steps == len(cert.params)
    # Certificate parameters really do cover: spot-check a grid by hand.
    f = parse_formula("a - 1/4 < x & x < a + 1/4")
    for k in range(0, 33):
        p = R(k, 32)
        assert any(
            evaluate(f, {A: q, X: p}) for q in cert.params
        ), f"{p} uncovered"


def test_extract_subcover_rejects_non_covers():
    with pytest.raises(CoverAuditError):
        extract_subcover(fam("0 < a & x - x < a - a"), R(0), R(1))
    with pytest.raises(CoverAuditError):
        extract_subcover(fam("x = a"), R(0), R(1))


def test_extract_subcover_step_budget():
    with pytest.raises(ResourceLimitError):
        extract_subcover(
            fam("a - 1/16 < x & x < a + 1/16"), R(0), R(1), max_steps=1
        )


def test_extract_subcover_interval_validation():
    with pytest.raises(DegenerateIntervalError):
        extract_subcover(fam("a - 1 < x & x < a + 1"), R(1), R(0))


def test_compactness_verified():
    grid = fam("D(4*a) & a - 3/8 < x & x < a + 3/8")
    exh = fam("D(4*x)", param="t")
    res = compactness_certificate(grid, exh, R(0), R(1), QN16)
    assert res.t0 is not None
    assert res.verified is True
    assert res.exhaustion_audit.passed()
    assert res.certificate.verified is True


def test_compactness_insufficient_stage():
    width = fam("a - 1/4 < x & x < a + 1/4")
    exh = fam("x = 0", param="t")
    res = compactness_certificate(width, exh, R(0), R(1))
    assert res.t0 is None
    assert res.verified is False


def test_compactness_rejects_bad_exhaustion():
    width = fam("a - 1/4 < x & x < a + 1/4")
    with pytest.raises(CoverAuditError):
        compactness_certificate(width, fam("x = t", param="t"), R(0), R(1))


# Uniform continuity


def test_ucont_continuous_graphs_are_uniform():
    tent = parse_formula("(x < 1/2 & y = 2*x) | (x >= 1/2 & y = 2 - 2*x)")
    rep = uniform_continuity_check(tent, X, Y, R(0), R(1))
    assert rep.continuous and rep.uniformly_continuous and rep.implication_holds


def test_ucont_flags_jumps():
    jump = parse_formula("(x < 1/2 & y = 0) | (x >= 1/2 & y = 1)")
    rep = uniform_continuity_check(jump, X, Y, R(0), R(1))
    assert not rep.continuous
    assert not rep.uniformly_continuous
    assert rep.implication_holds  # vacuously


def test_ucont_requires_a_function():
    with pytest.raises(NotAFunctionError):
        uniform_continuity_check(
            parse_formula("x < 1/2 & y = 0"), X, Y, R(0), R(1)
        )  # partial
    with pytest.raises(NotAFunctionError):
        uniform_continuity_check(
            parse_formula("y = 0 | y = 1"), X, Y, R(0), R(1)
        )  # double-valued
    with pytest.raises(NotAFunctionError):
        uniform_continuity_check(parse_formula("x = x"), X, X, R(0), R(1))
    with pytest.raises(NotAFunctionError):
        uniform_continuity_check(parse_formula("y = x + z"), X, Y, R(0), R(1))
    with pytest.raises(DegenerateIntervalError):
        uniform_continuity_check(parse_formula("y = x"), X, Y, R(1), R(1))
