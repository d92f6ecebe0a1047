"""Variables and linear terms over the group language.

A LinearTerm denotes sum(c_i * v_i) + k with rational coefficients c_i and a
scalar constant k (rational, or quadratic-irrational when a structure licenses
a radicand). Terms are immutable and kept canonical: no zero coefficients,
entries sorted by variable name.
"""

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping, Optional, Tuple

from .errors import MissingAssignmentError
from .scalar import (
    ONE,
    ZERO,
    QuadScalar,
    Rational,
    Scalar,
    as_scalar,
    is_rational_scalar,
)


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be nonempty")

    def __repr__(self):
        return f"Var({self.name!r})"


class LinearTerm:
    """Immutable linear combination of variables plus a constant."""

    __slots__ = ("items", "const")

    def __init__(self, coeffs=(), const=0):
        if isinstance(coeffs, Mapping):
            coeffs = coeffs.items()
        cleaned = {}
        for v, c in coeffs:
            if not isinstance(v, Var):
                raise TypeError(f"coefficient key must be Var, got {v!r}")
            c = c if isinstance(c, Rational) else Rational(c)
            if v in cleaned:
                c = cleaned[v] + c
            if c.num == 0:
                cleaned.pop(v, None)
            else:
                cleaned[v] = c
        object.__setattr__(
            self, "items", tuple(sorted(cleaned.items(), key=lambda kv: kv[0].name))
        )
        object.__setattr__(self, "const", as_scalar(const))

    def __setattr__(self, name, value):
        raise AttributeError("LinearTerm is immutable")

    @staticmethod
    def of_var(v: Var, coeff=1) -> "LinearTerm":
        return LinearTerm([(v, coeff)])

    @staticmethod
    def of_const(c) -> "LinearTerm":
        return LinearTerm((), c)

    @property
    def coeffs(self) -> dict:
        return dict(self.items)

    def coeff(self, v: Var) -> Rational:
        for var, c in self.items:
            if var == v:
                return c
        return ZERO

    def vars(self) -> Tuple[Var, ...]:
        return tuple(v for v, _ in self.items)

    def is_const(self) -> bool:
        return not self.items

    def __add__(self, other: "LinearTerm") -> "LinearTerm":
        return LinearTerm(
            list(self.items) + list(other.items), self.const + other.const
        )

    def __sub__(self, other: "LinearTerm") -> "LinearTerm":
        return self + (-other)

    def __neg__(self) -> "LinearTerm":
        return LinearTerm([(v, -c) for v, c in self.items], -self.const)

    def scale(self, r) -> "LinearTerm":
        r = r if isinstance(r, Rational) else Rational(r)
        if r.num == 0:
            return LinearTerm((), 0)
        return LinearTerm([(v, c * r) for v, c in self.items], self.const * r)

    def drop(self, v: Var) -> "LinearTerm":
        return LinearTerm([(w, c) for w, c in self.items if w != v], self.const)

    def subst(self, v: Var, t: "LinearTerm") -> "LinearTerm":
        c = self.coeff(v)
        if c.num == 0:
            return self
        return self.drop(v) + t.scale(c)

    def solve_for(self, v: Var) -> Optional["LinearTerm"]:
        """Term t with self = 0 equivalent to v = t, or None if v absent."""
        c = self.coeff(v)
        if c.num == 0:
            return None
        return self.drop(v).scale(Rational(-1) / c)

    def evaluate(self, assignment: Mapping[Var, Scalar]) -> Scalar:
        total = self.const
        for v, c in self.items:
            if v not in assignment:
                raise MissingAssignmentError(f"no value for {v.name}")
            total = total + c * as_scalar(assignment[v])
        return total

    def __eq__(self, other):
        if not isinstance(other, LinearTerm):
            return NotImplemented
        return self.items == other.items and self.const == other.const

    def __hash__(self):
        return hash((self.items, self.const))

    def __repr__(self):
        parts = [f"{c!r}*{v.name}" for v, c in self.items]
        parts.append(repr(self.const))
        return "LinearTerm(" + " + ".join(parts) + ")"


def _const_dens(c: Scalar) -> Iterable[int]:
    if isinstance(c, QuadScalar):
        return (c.rat.den, c.coef.den)
    return (c.den,)


def _const_nums(c: Scalar) -> Iterable[int]:
    if isinstance(c, QuadScalar):
        return (c.rat.num, c.coef.num)
    return (c.num,)


def pos_canonical(t: LinearTerm) -> LinearTerm:
    """Scale by a positive rational to integer entries with gcd 1.

    Canonical representative of t's ray; valid for inequality literals.
    """
    lcm = 1
    for _, c in t.items:
        lcm = lcm * c.den // gcd(lcm, c.den)
    for d in _const_dens(t.const):
        lcm = lcm * d // gcd(lcm, d)
    scaled = t.scale(Rational(lcm)) if lcm != 1 else t
    g = 0
    for _, c in scaled.items:
        g = gcd(g, abs(c.num))
    for n in _const_nums(scaled.const):
        g = gcd(g, abs(n))
    if g > 1:
        scaled = scaled.scale(Rational(1, g))
    return scaled


def _leading_sign(t: LinearTerm) -> int:
    if t.items:
        return t.items[0][1].sign()
    return as_scalar(t.const).sign()


def sign_canonical(t: LinearTerm) -> LinearTerm:
    """Canonical representative of t's line; valid for (dis)equality literals."""
    t = pos_canonical(t)
    if _leading_sign(t) < 0:
        t = -t
    return t


def term_radicand(t: LinearTerm) -> Optional[int]:
    """The radicand of t's constant when irrational, else None."""
    c = t.const
    if isinstance(c, QuadScalar) and not is_rational_scalar(c):
        return c.radicand
    return None
