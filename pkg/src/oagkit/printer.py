"""Pretty-printer emitting the concrete formula syntax.

Guarantee: parse_formula(print_formula(f)) is alpha-equivalent to f. Atoms
are rendered with positive monomials split across the comparison, so
Lt0(v - w) prints as "v < w" rather than "v - w < 0".
"""

from .formulas import (
    And,
    Bottom,
    Eq0,
    Exists,
    Forall,
    Formula,
    Implies,
    Lt0,
    Not,
    Or,
    PredAtom,
    Top,
)
from .scalar import QuadScalar, Rational
from .terms import LinearTerm

_QUANT, _IMPL, _DISJ, _CONJ, _NEG = 0, 1, 2, 3, 4


def _rat_str(r: Rational) -> str:
    return str(r.num) if r.den == 1 else f"{r.num}/{r.den}"


def _monos(t: LinearTerm):
    """Signed monomial list [(positive_text, sign)] covering items and constant."""
    out = []
    one = Rational(1)
    for v, c in t.items:
        if abs(c) == one:
            text = v.name
        else:
            text = f"{_rat_str(abs(c))}*{v.name}"
        out.append((text, c.sign()))
    k = t.const
    if isinstance(k, QuadScalar):
        if k.rat.num != 0:
            out.append((_rat_str(abs(k.rat)), k.rat.sign()))
        if k.coef.num != 0:
            out.append(
                (f"{_rat_str(abs(k.coef))}*sqrt({k.radicand})", k.coef.sign())
            )
    elif k.num != 0:
        out.append((_rat_str(abs(k)), k.sign()))
    return out


def _join_monos(monos) -> str:
    if not monos:
        return "0"
    first_text, first_sign = monos[0]
    parts = [first_text if first_sign > 0 else f"-{first_text}"]
    for text, s in monos[1:]:
        parts.append(f" + {text}" if s > 0 else f" - {text}")
    return "".join(parts)


def render_term(t: LinearTerm) -> str:
    return _join_monos(_monos(t))


def _atom_str(t: LinearTerm, op: str) -> str:
    pos = []
    neg = []
    for text, s in _monos(t):
        (pos if s > 0 else neg).append((text, 1))
    return f"{_join_monos(pos)} {op} {_join_monos(neg)}"


def _level(f: Formula) -> int:
    if isinstance(f, (Exists, Forall)):
        return _QUANT
    if isinstance(f, Implies):
        return _IMPL
    if isinstance(f, Or):
        return _DISJ
    if isinstance(f, And):
        return _CONJ
    if isinstance(f, Not):
        return _NEG
    return _NEG + 1


def _print(f: Formula) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Lt0):
        return _atom_str(f.term, "<")
    if isinstance(f, Eq0):
        return _atom_str(f.term, "=")
    if isinstance(f, PredAtom):
        return f"{f.name}({render_term(f.term)})"
    if isinstance(f, Not):
        # Negated comparisons have first-class surface forms.
        if isinstance(f.body, Eq0):
            return _atom_str(f.body.term, "!=")
        if isinstance(f.body, Lt0):
            return _atom_str(f.body.term, ">=")
        return "~" + _wrap(f.body, _NEG)
    if isinstance(f, And):
        # A nested And must keep its parens or reparsing would flatten it.
        return " & ".join(
            "(" + _print(a) + ")" if isinstance(a, And) else _wrap(a, _CONJ)
            for a in f.args
        )
    if isinstance(f, Or):
        return " | ".join(
            "(" + _print(a) + ")" if isinstance(a, Or) else _wrap(a, _DISJ)
            for a in f.args
        )
    if isinstance(f, Implies):
        # Right-associative; a quantified right side still needs parens
        # because the grammar only admits quantifiers at the top of a
        # (sub)formula, not as an implication operand.
        return f"{_wrap(f.lhs, _DISJ)} -> {_wrap(f.rhs, _IMPL)}"
    if isinstance(f, Exists):
        return f"exists {f.var.name} {_print(f.body)}"
    if isinstance(f, Forall):
        return f"forall {f.var.name} {_print(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def _wrap(f: Formula, required: int) -> str:
    if _level(f) < required:
        return "(" + _print(f) + ")"
    return _print(f)


def print_formula(f: Formula) -> str:
    return _print(f)
