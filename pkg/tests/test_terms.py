"""Linear-combination algebra and canonical forms."""

import random

import pytest

from oagkit.scalar import QuadScalar, Rational
from oagkit.terms import LinearTerm, Var, pos_canonical, sign_canonical, term_radicand

X, Y, Z = Var("x"), Var("y"), Var("z")


def t_of(*pairs, const=0):
    t = LinearTerm.of_const(const)
    for v, c in pairs:
        t = t + LinearTerm.of_var(v).scale(Rational(c))
    return t


def test_construction_and_lookup():
    t = t_of((X, 2), (Y, -3), const=5)
    assert t.coeff(X) == Rational(2)
    assert t.coeff(Y) == Rational(-3)
    assert t.coeff(Z) == Rational(0)
    assert t.const == Rational(5)
    assert t.vars() == (X, Y)
    assert not t.is_const()
    assert LinearTerm.of_const(7).is_const()


def test_zero_coefficients_dropped():
    t = t_of((X, 1)) - t_of((X, 1))
    assert t.is_const()
    assert t.vars() == ()


def test_vector_space_laws():
    rng = random.Random(21)
    vs = [X, Y, Z]
    def rand_term():
        t = LinearTerm.of_const(Rational(rng.randint(-9, 9), rng.randint(1, 5)))
        for v in vs:
            if rng.random() < 0.7:
                t = t + LinearTerm.of_var(v).scale(Rational(rng.randint(-6, 6)))
        return t
    for _ in range(200):
        a, b = rand_term(), rand_term()
        k = Rational(rng.randint(-5, 5), rng.randint(1, 3))
        assert a + b == b + a
        assert (a + b) - b == a
        assert -a == LinearTerm.of_const(0) - a
        assert (a + b).scale(k) == a.scale(k) + b.scale(k)


def test_subst_and_drop():
    t = t_of((X, 2), (Y, 1), const=-1)
    # x := z + 3 turns 2x + y - 1 into 2z + y + 5
    s = t.subst(X, t_of((Z, 1), const=3))
    assert s == t_of((Z, 2), (Y, 1), const=5)
    assert t.drop(X) == t_of((Y, 1), const=-1)


def test_solve_for():
    # 2x + y - 1 = 0 gives x = (1 - y)/2
    t = t_of((X, 2), (Y, 1), const=-1)
    sol = t.solve_for(X)
    assert sol == t_of((Y, 1), const=-1).scale(Rational(-1, 2))
    # Substituting the solution back kills x.
    assert t.subst(X, sol).is_const()
    assert t.subst(X, sol).const == Rational(0)


def test_evaluate():
    t = t_of((X, 2), (Y, -1), const=3)
    env = {X: Rational(1, 2), Y: Rational(4)}
    assert t.evaluate(env) == Rational(0)
    with pytest.raises(Exception):
        t.evaluate({X: Rational(1)})


def test_evaluate_with_quad_constant():
    t = LinearTerm.of_var(X) - LinearTerm.of_const(QuadScalar(0, 1, 2))
    v = t.evaluate({X: Rational(3, 2)})
    assert v == QuadScalar(Rational(3, 2), Rational(-1), 2)


def test_pos_canonical_integerizes_with_unit_gcd():
    t = t_of((X, -2), (Y, 4), const=6)
    c = pos_canonical(t)
    assert c == t.scale(Rational(1, 2))
    # Positive rescalings land on the same representative.
    assert pos_canonical(t.scale(Rational(7, 3))) == c
    # Fractions are cleared.
    u = t_of((X, 1), const=0) + LinearTerm.of_const(Rational(1, 2))
    assert pos_canonical(u) == u.scale(Rational(2))


def test_sign_canonical_identifies_negations():
    t = t_of((X, 3), (Y, -1), const=2)
    assert sign_canonical(t) == sign_canonical(-t)
    assert sign_canonical(t) in (pos_canonical(t), pos_canonical(-t))


def test_term_radicand():
    assert term_radicand(t_of((X, 1))) is None
    q = LinearTerm.of_const(QuadScalar(0, 1, 3))
    assert term_radicand(t_of((X, 1)) + q) == 3
