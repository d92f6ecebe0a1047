# cython: language_level=3
"""Compiled scalar arithmetic: normalized rationals and quadratic irrationals.

Compiled twin of ``_scalar_py``; the two must stay behaviorally identical.
Numerators and denominators are Python ints, so values never overflow; the
speedup comes from C-level attribute access and compiled method dispatch.
"""

from math import gcd

from .errors import DomainMismatchError

BACKEND = "c"

_SMALL_PRIMES = (2, 3, 5, 7)


cdef _check_radicand(d):
    # Square factors of d <= 97 can only come from primes <= 9.
    if not isinstance(d, int) or d < 2 or d > 97:
        raise DomainMismatchError(f"radicand must be an integer in 2..97, got {d!r}")
    for p in _SMALL_PRIMES:
        if d % (p * p) == 0:
            raise DomainMismatchError(f"radicand must be square-free, got {d}")


cdef class Rational:
    """Exact fraction kept normalized: gcd(num, den) == 1 and den > 0."""

    cdef readonly object num
    cdef readonly object den

    def __init__(self, num, den=1):
        if den == 0:
            raise ZeroDivisionError("rational with zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(num, den)
        if g > 1:
            num //= g
            den //= g
        self.num = num
        self.den = den

    cpdef int sign(self):
        if self.num > 0:
            return 1
        if self.num < 0:
            return -1
        return 0

    def is_zero(self):
        return self.num == 0

    def is_integer(self):
        return self.den == 1

    def compare(self, other):
        cdef Rational o = _as_rational(other)
        if o is None:
            if isinstance(other, QuadScalar):
                return -other.compare(self)
            raise TypeError("cannot compare Rational with that type")
        lhs = self.num * o.den
        rhs = o.num * self.den
        return (lhs > rhs) - (lhs < rhs)

    def approx(self):
        return self.num / self.den

    def __add__(self, other):
        cdef Rational o = _as_rational(other)
        if o is None:
            return NotImplemented
        return Rational(self.num * o.den + o.num * self.den, self.den * o.den)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        cdef Rational o = _as_rational(other)
        if o is None:
            return NotImplemented
        return Rational(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        cdef Rational o = _as_rational(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        cdef Rational o = _as_rational(other)
        if o is None:
            return NotImplemented
        return Rational(self.num * o.num, self.den * o.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        cdef Rational o = _as_rational(other)
        if o is None:
            return NotImplemented
        if o.num == 0:
            raise ZeroDivisionError("division by zero rational")
        return Rational(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        cdef Rational o = _as_rational(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Rational(-self.num, self.den)

    def __abs__(self):
        return Rational(abs(self.num), self.den)

    def __richcmp__(self, other, int op):
        cdef int c
        if op == 2 or op == 3:
            if isinstance(other, Rational):
                eq = (
                    self.num == (<Rational>other).num
                    and self.den == (<Rational>other).den
                )
            elif isinstance(other, int):
                eq = self.den == 1 and self.num == other
            else:
                return NotImplemented
            return eq if op == 2 else not eq
        # Defer to QuadScalar's reflected comparison for mixed operands.
        if _as_rational(other) is None:
            return NotImplemented
        c = self.compare(other)
        if op == 0:
            return c < 0
        if op == 1:
            return c <= 0
        if op == 4:
            return c > 0
        return c >= 0

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return self.num != 0

    def __repr__(self):
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"


cdef Rational _as_rational(value):
    if isinstance(value, Rational):
        return <Rational>value
    if isinstance(value, int):
        return Rational(value)
    return None


cdef class QuadScalar:
    """Number of the form rat + coef*sqrt(radicand), both parts Rational.

    The radicand is a square-free integer in 2..97. A QuadScalar with a zero
    coefficient still carries its radicand, compares equal to the matching
    Rational, and hashes like it.
    """

    cdef readonly Rational rat
    cdef readonly Rational coef
    cdef readonly int radicand

    def __init__(self, rat, coef, radicand):
        _check_radicand(radicand)
        r = _as_rational(rat)
        c = _as_rational(coef)
        if r is None or c is None:
            raise TypeError("QuadScalar parts must be Rational or int")
        self.rat = r
        self.coef = c
        self.radicand = radicand

    def is_rational(self):
        return self.coef.num == 0

    cpdef int sign(self):
        cdef int sa = self.rat.sign()
        cdef int sb = self.coef.sign()
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # Opposite signs: compare rat^2 against radicand*coef^2.
        delta = self.coef * self.coef * self.radicand - self.rat * self.rat
        return sb * (<Rational>delta).sign()

    def is_zero(self):
        return self.rat.num == 0 and self.coef.num == 0

    def compare(self, other):
        diff = self - other
        if diff is NotImplemented:
            raise TypeError("cannot compare QuadScalar with that type")
        return (<QuadScalar>diff).sign()

    def approx(self):
        return self.rat.approx() + self.coef.approx() * self.radicand ** 0.5

    cdef QuadScalar _merge(self, other):
        """Return other as a QuadScalar over a common radicand, or None."""
        cdef QuadScalar q
        if isinstance(other, QuadScalar):
            q = <QuadScalar>other
            if q.radicand == self.radicand:
                return q
            if q.coef.num == 0:
                return QuadScalar(q.rat, 0, self.radicand)
            if self.coef.num == 0:
                return q  # caller re-anchors on q.radicand
            raise DomainMismatchError(
                f"mixed radicands {self.radicand} and {q.radicand}"
            )
        r = _as_rational(other)
        if r is None:
            return None
        return QuadScalar(r, 0, self.radicand)

    def __add__(self, other):
        cdef QuadScalar o = self._merge(other)
        if o is None:
            return NotImplemented
        d = o.radicand if self.coef.num == 0 else self.radicand
        return QuadScalar(self.rat + o.rat, self.coef + o.coef, d)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        cdef QuadScalar o = self._merge(other)
        if o is None:
            return NotImplemented
        d = o.radicand if self.coef.num == 0 else self.radicand
        return QuadScalar(self.rat - o.rat, self.coef - o.coef, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        cdef QuadScalar o = self._merge(other)
        if o is None:
            return NotImplemented
        d = o.radicand if self.coef.num == 0 else self.radicand
        rat = self.rat * o.rat + self.coef * o.coef * d
        coef = self.rat * o.coef + self.coef * o.rat
        return QuadScalar(rat, coef, d)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        cdef QuadScalar o = self._merge(other)
        if o is None:
            return NotImplemented
        norm = o.rat * o.rat - o.coef * o.coef * o.radicand
        if (<Rational>norm).num == 0:
            if o.is_zero():
                raise ZeroDivisionError("division by zero scalar")
            raise DomainMismatchError("non-square-free norm, cannot invert")
        inv = QuadScalar(o.rat / norm, -o.coef / norm, o.radicand)
        return self * inv

    def __rtruediv__(self, other):
        r = _as_rational(other)
        if r is None:
            return NotImplemented
        return QuadScalar(r, 0, self.radicand) / self

    def __neg__(self):
        return QuadScalar(-self.rat, -self.coef, self.radicand)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __richcmp__(self, other, int op):
        cdef QuadScalar q
        cdef int c
        if op == 2 or op == 3:
            if isinstance(other, QuadScalar):
                q = <QuadScalar>other
                if self.radicand != q.radicand:
                    eq = (
                        self.coef.num == 0
                        and q.coef.num == 0
                        and self.rat == q.rat
                    )
                else:
                    eq = self.rat == q.rat and self.coef == q.coef
            elif isinstance(other, (Rational, int)):
                eq = self.coef.num == 0 and self.rat == other
            else:
                return NotImplemented
            return eq if op == 2 else not eq
        c = self.compare(other)
        if op == 0:
            return c < 0
        if op == 1:
            return c <= 0
        if op == 4:
            return c > 0
        return c >= 0

    def __hash__(self):
        if self.coef.num == 0:
            return hash(self.rat)
        return hash((self.rat.num, self.rat.den, self.coef.num, self.coef.den, self.radicand))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.coef.num == 0:
            return repr(self.rat)
        if self.coef == 1:
            tail = f"sqrt({self.radicand})"
        elif self.coef == -1:
            tail = f"-sqrt({self.radicand})"
        else:
            tail = f"{self.coef!r}*sqrt({self.radicand})"
        if self.rat.num == 0:
            return tail
        if tail.startswith("-"):
            return f"{self.rat!r} - {tail[1:]}"
        return f"{self.rat!r} + {tail}"
