"""Reference decision procedure used to cross-check the main engine.

Implements substitution-free model checking over the rationals: collect every
linear term in the sentence, close the set under pairwise variable
elimination, and evaluate quantifiers by sampling one rational per cell of
the induced arrangement. No code is shared with oagkit.qe; agreement between
the two is what the soundness tests assert.
"""

from functools import cmp_to_key
from typing import Dict, FrozenSet, List, Set

from oagkit.errors import NotASentenceError, PredicateLeakError, ResourceLimitError
from oagkit.formulas import (
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
    free_vars,
)
from oagkit.scalar import (
    Rational,
    Scalar,
    ZERO,
    compare,
    is_rational_scalar,
    rational_above,
    rational_below,
    rational_between,
)
from oagkit.structures import PURE_Q, StructureSpec, bind_structure
from oagkit.terms import LinearTerm, Var, sign_canonical

_MAX_TERMS = 20000


def _collect(f: Formula, terms: Set[LinearTerm], qvars: Set[Var]) -> None:
    if isinstance(f, (Lt0, Eq0)):
        t = sign_canonical(f.term)
        if t.items:
            terms.add(t)
    elif isinstance(f, PredAtom):
        raise PredicateLeakError(f"unexpanded predicate {f.name!r}")
    elif isinstance(f, Not):
        _collect(f.body, terms, qvars)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            _collect(a, terms, qvars)
    elif isinstance(f, Implies):
        _collect(f.lhs, terms, qvars)
        _collect(f.rhs, terms, qvars)
    elif isinstance(f, (Exists, Forall)):
        qvars.add(f.var)
        _collect(f.body, terms, qvars)


def _eliminant(t1: LinearTerm, t2: LinearTerm, w: Var) -> LinearTerm:
    a = t1.coeff(w)
    b = t2.coeff(w)
    return t1.scale(b) - t2.scale(a)


def _closure(terms: Set[LinearTerm], qvars: Set[Var]) -> FrozenSet[LinearTerm]:
    # Fixpoint over all quantified variables at once; a superset of what any
    # single elimination order needs, which keeps this sound regardless of
    # quantifier nesting in the input.
    pool = set(terms)
    frontier = list(pool)
    while frontier:
        fresh: List[LinearTerm] = []
        for w in qvars:
            with_w = [t for t in pool if not t.coeff(w).is_zero()]
            new_from = [t for t in frontier if not t.coeff(w).is_zero()]
            for t1 in new_from:
                for t2 in with_w:
                    e = _eliminant(t1, t2, w)
                    if not e.items:
                        continue
                    e = sign_canonical(e)
                    if e not in pool:
                        pool.add(e)
                        fresh.append(e)
                        if len(pool) > _MAX_TERMS:
                            raise ResourceLimitError(
                                f"oracle term closure exceeded {_MAX_TERMS}"
                            )
        frontier = fresh
    return frozenset(pool)


def _samples(v: Var, pool: FrozenSet[LinearTerm], env: Dict[Var, Scalar]) -> List[Scalar]:
    bound = set(env) | {v}
    roots: List[Scalar] = []
    for t in pool:
        c = t.coeff(v)
        if c.is_zero():
            continue
        if any(u not in bound for u, _ in t.items):
            continue
        rest = t.drop(v)
        val = rest.evaluate(env) if rest.items else rest.const
        roots.append(val * (Rational(-1) / c))
    if not roots:
        return [ZERO]
    roots.sort(key=cmp_to_key(compare))
    distinct: List[Scalar] = [roots[0]]
    for r in roots[1:]:
        if compare(r, distinct[-1]) != 0:
            distinct.append(r)
    pts: List[Scalar] = [rational_below(distinct[0])]
    for i, r in enumerate(distinct):
        if is_rational_scalar(r):
            pts.append(r)
        if i + 1 < len(distinct):
            pts.append(rational_between(r, distinct[i + 1]))
    pts.append(rational_above(distinct[-1]))
    return pts


def _eval(f: Formula, env: Dict[Var, Scalar], pool: FrozenSet[LinearTerm]) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Lt0):
        return f.term.evaluate(env).sign() < 0
    if isinstance(f, Eq0):
        return f.term.evaluate(env).sign() == 0
    if isinstance(f, Not):
        return not _eval(f.body, env, pool)
    if isinstance(f, And):
        return all(_eval(a, env, pool) for a in f.args)
    if isinstance(f, Or):
        return any(_eval(a, env, pool) for a in f.args)
    if isinstance(f, Implies):
        return (not _eval(f.lhs, env, pool)) or _eval(f.rhs, env, pool)
    if isinstance(f, Exists):
        return any(
            _eval(f.body, {**env, f.var: p}, pool)
            for p in _samples(f.var, pool, env)
        )
    if isinstance(f, Forall):
        return all(
            _eval(f.body, {**env, f.var: p}, pool)
            for p in _samples(f.var, pool, env)
        )
    raise TypeError(f"unknown formula node: {f!r}")


class Oracle:
    """Reusable evaluator for one formula: the term closure is computed once,
    then any number of assignments can be checked cheaply."""

    def __init__(self, f: Formula, structure: StructureSpec = PURE_Q):
        self.formula = bind_structure(f, structure)
        self.free = free_vars(self.formula)
        terms: Set[LinearTerm] = set()
        qvars: Set[Var] = set()
        _collect(self.formula, terms, qvars)
        self.pool = _closure(terms, qvars)

    def truth(self, env: Dict[Var, Scalar]) -> bool:
        missing = self.free - set(env)
        if missing:
            names = ", ".join(sorted(v.name for v in missing))
            raise NotASentenceError(f"assignment missing {names}")
        return _eval(self.formula, dict(env), self.pool)


def oracle_decide(f: Formula, structure: StructureSpec = PURE_Q) -> bool:
    """Truth value of the sentence f over the structure's domain."""
    o = Oracle(f, structure)
    if o.free:
        raise NotASentenceError("oracle_decide needs a sentence")
    return o.truth({})
