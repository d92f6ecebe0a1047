"""Recursive-descent parser for the ASCII formula syntax.

Precedence, weakest first: quantifiers, ->, |, &, ~. Implication is
right-associative. Derived comparisons are normalized at parse time:
a <= b becomes ~(b < a), a != b becomes ~(a = b), and >, >= mirror to <, <=.
Unicode connectives are accepted as aliases for the ASCII spellings.
"""

from dataclasses import dataclass
from typing import List, Optional

from .errors import DomainMismatchError, ParseError
from .formulas import (
    And,
    BOTTOM,
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
    TOP,
)
from .scalar import QuadScalar, Rational
from .terms import LinearTerm, Var


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT NUM SYM EOF
    text: str
    span: SourceSpan


_SYMBOL_ALIASES = {
    "∀": "forall",  # forall sign
    "∃": "exists",  # exists sign
    "⊤": "true",
    "⊥": "false",
}
_OP_ALIASES = {
    "∧": "&",
    "∨": "|",
    "¬": "~",
    "→": "->",
    "≤": "<=",
    "≥": ">=",
    "≠": "!=",
}
_TWO_CHAR_OPS = ("->", "<=", ">=", "!=")
_ONE_CHAR_OPS = "<>=&|~()+-*"

# Words with fixed meaning; they can never name a variable or predicate.
KEYWORDS = {"forall", "exists", "A", "E", "true", "false", "sqrt"}


def _ident_start(ch: str) -> bool:
    return ch.isalpha() or ch in "_$"


def _ident_cont(ch: str) -> bool:
    return ch.isalnum() or ch in "_$"


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    i = 0
    line = 1
    col = 1
    n = len(text)

    def span(start, end, sline, scol):
        return SourceSpan(start, end, sline, scol)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start, sline, scol = i, line, col
        if ch in _SYMBOL_ALIASES:
            tokens.append(_Token("IDENT", _SYMBOL_ALIASES[ch], span(i, i + 1, sline, scol)))
            i += 1
            col += 1
            continue
        if ch in _OP_ALIASES:
            tokens.append(_Token("SYM", _OP_ALIASES[ch], span(i, i + 1, sline, scol)))
            i += 1
            col += 1
            continue
        if text[i : i + 2] in _TWO_CHAR_OPS:
            tokens.append(_Token("SYM", text[i : i + 2], span(i, i + 2, sline, scol)))
            i += 2
            col += 2
            continue
        if ch in _ONE_CHAR_OPS:
            tokens.append(_Token("SYM", ch, span(i, i + 1, sline, scol)))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            tokens.append(_Token("NUM", text[i:j], span(i, j, sline, scol)))
            col += j - i
            i = j
            continue
        if _ident_start(ch):
            j = i
            while j < n and _ident_cont(text[j]):
                j += 1
            tokens.append(_Token("IDENT", text[i:j], span(i, j, sline, scol)))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", span(i, i + 1, sline, scol))
    tokens.append(_Token("EOF", "", span(n, n, line, col)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: Optional[_Token] = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.span)

    def eat_sym(self, sym: str) -> bool:
        tok = self.peek()
        if tok.kind == "SYM" and tok.text == sym:
            self.next()
            return True
        return False

    def expect_sym(self, sym: str):
        if not self.eat_sym(sym):
            self.fail(f"expected {sym!r}")

    # formula := quantified
    def formula(self) -> Formula:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.text in ("forall", "exists", "A", "E"):
            self.next()
            name = self.peek()
            if name.kind != "IDENT" or name.text in KEYWORDS:
                self.fail("expected a variable name after the quantifier")
            self.next()
            body = self.formula()
            if tok.text in ("forall", "A"):
                return Forall(Var(name.text), body)
            return Exists(Var(name.text), body)
        return self.implication()

    def implication(self) -> Formula:
        lhs = self.disjunction()
        if self.eat_sym("->"):
            # right-associative; a quantifier may start the consequent
            return Implies(lhs, self.formula())
        return lhs

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.eat_sym("|"):
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.negation()]
        while self.eat_sym("&"):
            parts.append(self.negation())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def negation(self) -> Formula:
        tok = self.peek()
        if tok.kind == "SYM" and tok.text == "~":
            self.next()
            return Not(self.negation())
        if tok.kind == "SYM" and tok.text == "(":
            self.next()
            inner = self.formula()
            self.expect_sym(")")
            return inner
        if tok.kind == "IDENT" and tok.text == "true":
            self.next()
            return TOP
        if tok.kind == "IDENT" and tok.text == "false":
            self.next()
            return BOTTOM
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if (
            tok.kind == "IDENT"
            and tok.text not in KEYWORDS
            and self.peek(1).kind == "SYM"
            and self.peek(1).text == "("
        ):
            self.next()
            self.expect_sym("(")
            arg = self.term()
            self.expect_sym(")")
            return PredAtom(tok.text, arg)
        lhs = self.term()
        op = self.peek()
        if op.kind != "SYM" or op.text not in ("<", "<=", "=", "!=", ">", ">="):
            self.fail("expected a comparison operator")
        self.next()
        rhs = self.term()
        if op.text == "<":
            return Lt0(lhs - rhs)
        if op.text == ">":
            return Lt0(rhs - lhs)
        if op.text == "=":
            return Eq0(lhs - rhs)
        if op.text == "!=":
            return Not(Eq0(lhs - rhs))
        if op.text == "<=":
            return Not(Lt0(rhs - lhs))
        return Not(Lt0(lhs - rhs))  # >=

    def term(self) -> LinearTerm:
        t = self.mono()
        while True:
            if self.eat_sym("+"):
                t = t + self.mono()
            elif self.eat_sym("-"):
                t = t - self.mono()
            else:
                return t

    def _sqrt_const(self, coef: Rational) -> LinearTerm:
        # caller consumed the `sqrt` identifier
        self.expect_sym("(")
        num = self.peek()
        if num.kind != "NUM" or "/" in num.text:
            self.fail("expected an integer radicand")
        self.next()
        self.expect_sym(")")
        try:
            value = QuadScalar(0, coef, int(num.text))
        except DomainMismatchError as exc:
            raise ParseError(str(exc), num.span) from None
        return LinearTerm.of_const(value)

    def mono(self) -> LinearTerm:
        tok = self.peek()
        if tok.kind == "SYM" and tok.text == "-":
            self.next()
            return -self.mono()
        if tok.kind == "NUM":
            self.next()
            num_s, _, den_s = tok.text.partition("/")
            r = Rational(int(num_s), int(den_s) if den_s else 1)
            if self.eat_sym("*"):
                nxt = self.peek()
                if nxt.kind != "IDENT":
                    self.fail("expected a variable or sqrt after '*'")
                self.next()
                if nxt.text == "sqrt":
                    return self._sqrt_const(r)
                if nxt.text in KEYWORDS:
                    self.fail(f"{nxt.text!r} cannot be used as a variable", nxt)
                return LinearTerm.of_var(Var(nxt.text), r)
            return LinearTerm.of_const(r)
        if tok.kind == "IDENT" and tok.text == "sqrt":
            self.next()
            return self._sqrt_const(Rational(1))
        if tok.kind == "IDENT" and tok.text not in KEYWORDS:
            self.next()
            return LinearTerm.of_var(Var(tok.text))
        self.fail("expected a term")


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    tail = p.peek()
    if tail.kind != "EOF":
        p.fail(f"unexpected trailing input {tail.text!r}", tail)
    return f
