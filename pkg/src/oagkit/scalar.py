"""Scalar backend selection plus helpers shared by both backends.

The compiled extension ``_scalar_c`` is preferred; ``_scalar_py`` is the
drop-in fallback. Set OAGKIT_BACKEND=python or OAGKIT_BACKEND=c to force a
choice (forcing "c" raises if the extension is missing rather than falling
back silently).
"""

import math
import os
import re
from typing import Union

from .errors import DomainMismatchError

_forced = os.environ.get("OAGKIT_BACKEND")
if _forced == "python":
    from . import _scalar_py as _backend
elif _forced == "c":
    from . import _scalar_c as _backend  # type: ignore[no-redef]
elif _forced:
    raise ImportError(
        f"OAGKIT_BACKEND must be 'c' or 'python', got {_forced!r}"
    )
else:
    try:
        from . import _scalar_c as _backend  # type: ignore[no-redef]
    except ImportError:
        from . import _scalar_py as _backend  # type: ignore[no-redef]

Rational = _backend.Rational
QuadScalar = _backend.QuadScalar
BACKEND: str = _backend.BACKEND

Scalar = Union[Rational, QuadScalar]

ZERO = Rational(0)
ONE = Rational(1)

LT, EQ, GT = -1, 0, 1


def as_scalar(value) -> Scalar:
    if isinstance(value, (Rational, QuadScalar)):
        return value
    if isinstance(value, int):
        return Rational(value)
    raise TypeError(f"not a scalar: {value!r}")


def is_rational_scalar(x: Scalar) -> bool:
    if isinstance(x, Rational):
        return True
    return x.is_rational()


def rational_value(x: Scalar) -> Rational:
    """The Rational a rational-valued scalar denotes."""
    if isinstance(x, Rational):
        return x
    if x.is_rational():
        return x.rat
    raise DomainMismatchError(f"{x!r} is not rational")


def compare(a: Scalar, b: Scalar) -> int:
    """Total-order verdict: -1 (LT), 0 (EQ), or 1 (GT)."""
    return as_scalar(a).compare(as_scalar(b))


def sign(x: Scalar) -> int:
    return as_scalar(x).sign()


def scalar_min(a: Scalar, b: Scalar) -> Scalar:
    return a if compare(a, b) <= 0 else b


def scalar_max(a: Scalar, b: Scalar) -> Scalar:
    return a if compare(a, b) >= 0 else b


def midpoint(a: Scalar, b: Scalar) -> Scalar:
    return (a + b) * Rational(1, 2)


def scalar_floor(x: Scalar) -> int:
    """Exact floor. A float estimate seeds the search; exact compares fix it up."""
    if isinstance(x, Rational):
        return x.num // x.den
    n = math.floor(x.approx())
    while x.compare(Rational(n + 1)) >= 0:
        n += 1
    while x.compare(Rational(n)) < 0:
        n -= 1
    return n


def rational_between(a: Scalar, b: Scalar) -> Rational:
    """Some rational strictly between a and b (midpoint when both rational).

    Requires a < b. Deterministic: the result depends only on a and b.
    """
    if compare(a, b) >= 0:
        raise ValueError("rational_between requires a < b")
    if is_rational_scalar(a) and is_rational_scalar(b):
        return rational_value(midpoint(a, b))
    # floor(a*n) + 1 lands strictly inside (a, b) once n exceeds 2/(b - a).
    n = 1
    while True:
        m = scalar_floor(a * Rational(n)) + 1
        cand = Rational(m, n)
        if compare(cand, b) < 0:
            return cand
        n *= 2


def rational_below(x: Scalar) -> Rational:
    return Rational(scalar_floor(x) - 1)


def rational_above(x: Scalar) -> Rational:
    f = scalar_floor(x)
    return Rational(f + 1) if compare(Rational(f + 1), x) > 0 else Rational(f + 2)


def format_scalar(x: Scalar) -> str:
    return repr(as_scalar(x))


_RAT_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")
_SQRT_RE = re.compile(r"^(?:((?:-?\d+)(?:/\d+)?)\*)?sqrt\((\d+)\)$")


def parse_scalar(text: str) -> Scalar:
    """Parse `p/q`, `p/q*sqrt(d)`, `sqrt(d)`, and sums/differences of those."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar literal")
    # Split into signed chunks at top-level + and - (unary leading sign kept).
    chunks = []
    start = 0
    for i in range(1, len(s)):
        if s[i] in "+-" and s[i - 1] not in "+-*/(":
            chunks.append(s[start:i])
            start = i
    chunks.append(s[start:])
    total: Scalar = ZERO
    for chunk in chunks:
        neg = False
        body = chunk
        while body and body[0] in "+-":
            if body[0] == "-":
                neg = not neg
            body = body[1:]
        m = _RAT_RE.match(body)
        if m:
            part: Scalar = Rational(int(m.group(1)), int(m.group(2) or 1))
        else:
            m = _SQRT_RE.match(body)
            if not m:
                raise ValueError(f"bad scalar literal: {text!r}")
            coef = Rational(1)
            if m.group(1):
                cnum, _, cden = m.group(1).partition("/")
                coef = Rational(int(cnum), int(cden or 1))
            part = QuadScalar(0, coef, int(m.group(2)))
        if neg:
            part = -part
        total = total + part
    return total
