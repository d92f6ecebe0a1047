"""Structure descriptions: parsing, predicate expansion, domain membership."""

import pytest

from oagkit.errors import (
    DomainMismatchError,
    ResourceLimitError,
    StructureFormatError,
    UnknownPredicateError,
)
from oagkit.formulas import Eq0, Lt0, Or
from oagkit.parser import parse_formula
from oagkit.qe import decide
from oagkit.scalar import QuadScalar, Rational
from oagkit.sets import is_pseudo_finite, normalize
from oagkit.structures import (
    PURE_Q,
    bind_structure,
    expand_pred,
    in_domain,
    load_structure,
    parse_structure,
)
from oagkit.terms import LinearTerm, Var

X = Var("x")
TX = LinearTerm.of_var(X)


def test_parse_structure_happy_path():
    s = parse_structure(
        "# comment\ndomain = Q\nradicand = 2\npred C : cut sqrt(2)\npred D : range 3\n",
        "demo",
    )
    assert s.id == "demo"
    assert s.radicand == 2
    assert s.pred_names() == ("C", "D")


def test_parse_structure_rejects_bad_input():
    with pytest.raises(StructureFormatError):
        parse_structure("radicand = 2\n")  # missing domain line
    with pytest.raises(StructureFormatError):
        parse_structure("domain = R\n")
    with pytest.raises(StructureFormatError):
        parse_structure("domain = Q\nflavor = vanilla\n")
    with pytest.raises(StructureFormatError):
        parse_structure("domain = Q\npred C : cut 3/2\n")  # rational cut
    with pytest.raises(StructureFormatError):
        parse_structure("domain = Q\npred D : range -1\n")
    with pytest.raises(StructureFormatError):
        parse_structure("domain = Q\npred D : range 1\npred D : range 2\n")
    with pytest.raises(StructureFormatError):
        parse_structure("domain = Q\npred C\n")
    with pytest.raises(ResourceLimitError):
        parse_structure("domain = Q\npred D : range 100\n")  # above default cap


def test_range_cap_is_configurable():
    s = parse_structure("domain = Q\npred D : range 100\n", range_cap=200)
    assert s.pred("D").n == 100


def test_load_structure_q_shortcut():
    assert load_structure("Q") is PURE_Q


def test_expand_discrete_range():
    s = parse_structure("domain = Q\npred D : range 3\n", "q3")
    f = expand_pred("D", TX, s)
    assert f == Or(tuple(Eq0(TX - LinearTerm.of_const(k)) for k in range(4)))
    s0 = parse_structure("domain = Q\npred D : range 0\n", "q0")
    assert expand_pred("D", TX, s0) == Eq0(TX)


def test_expand_cut():
    s = parse_structure("domain = Q\nradicand = 2\npred C : cut sqrt(2)\n", "qs")
    f = expand_pred("C", TX, s)
    assert f == Lt0(TX - LinearTerm.of_const(QuadScalar(0, 1, 2)))


def test_expand_unknown_predicate():
    with pytest.raises(UnknownPredicateError):
        expand_pred("Z", TX, PURE_Q)


def test_bind_structure_checks_constants():
    s = parse_structure("domain = Q\nradicand = 2\npred C : cut sqrt(2)\n", "qs")
    f = parse_formula("x < sqrt(2)")
    assert bind_structure(f, s) == f
    with pytest.raises(DomainMismatchError):
        bind_structure(f, PURE_Q)


def test_in_domain_is_rationality():
    s = parse_structure("domain = Q\nradicand = 2\npred C : cut sqrt(2)\n", "qs")
    assert in_domain(Rational(3, 4), s)
    assert in_domain(QuadScalar(2, 0, 2), s)
    assert not in_domain(QuadScalar(0, 1, 2), s)


def test_discrete_predicate_sets_are_small_and_finite():
    for n in (0, 1, 4, 16):
        s = parse_structure(f"domain = Q\npred D : range {n}\n", f"q{n}")
        d = normalize(parse_formula("D(x)"), s)
        assert len(d.components) == n + 1
        assert is_pseudo_finite(d).verdict


def test_nested_ranges_are_directed():
    # With W the wider range, every D point is a W point but not conversely.
    s = parse_structure("domain = Q\npred D : range 2\npred W : range 5\n", "q25")
    assert decide(parse_formula("A x (D(x) -> W(x))"), s) is True
    assert decide(parse_formula("A x (W(x) -> D(x))"), s) is False
    assert decide(parse_formula("A x (D(x) -> D(x))"), s) is True


def test_cut_radicand_must_match_structure():
    with pytest.raises(StructureFormatError):
        parse_structure("domain = Q\nradicand = 3\npred C : cut sqrt(2)\n")
