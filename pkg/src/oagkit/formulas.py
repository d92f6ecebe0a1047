"""First-order formula trees and the syntactic operations on them.

Atoms are kept in two arithmetic kinds only, t < 0 and t = 0, plus registered
unary predicate applications. The derived comparisons (<=, >=, >, !=) are
normalized away by the parser, so everything downstream handles two kinds.
"""

from dataclasses import dataclass
from typing import Iterator, Mapping, Tuple, Union

from .errors import NotQuantifierFreeError, PredicateLeakError
from .terms import LinearTerm, Var


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True)
class Lt0:
    """Atom: term < 0."""

    term: LinearTerm


@dataclass(frozen=True)
class Eq0:
    """Atom: term = 0."""

    term: LinearTerm


@dataclass(frozen=True)
class PredAtom:
    """Atom: name(term) for a structure-registered unary predicate."""

    name: str
    term: LinearTerm


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    args: Tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    args: Tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"


Formula = Union[
    Top, Bottom, Lt0, Eq0, PredAtom, Not, And, Or, Implies, Exists, Forall
]

ATOM_TYPES = (Lt0, Eq0, PredAtom)


def make_and(parts) -> Formula:
    """Conjunction with flattening, unit/absorber folding, and deduping."""
    flat = []
    seen = set()
    for p in parts:
        if isinstance(p, Top):
            continue
        if isinstance(p, Bottom):
            return BOTTOM
        subs = p.args if isinstance(p, And) else (p,)
        for q in subs:
            if q not in seen:
                seen.add(q)
                flat.append(q)
    if not flat:
        return TOP
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def make_or(parts) -> Formula:
    flat = []
    seen = set()
    for p in parts:
        if isinstance(p, Bottom):
            continue
        if isinstance(p, Top):
            return TOP
        subs = p.args if isinstance(p, Or) else (p,)
        for q in subs:
            if q not in seen:
                seen.add(q)
                flat.append(q)
    if not flat:
        return BOTTOM
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, ATOM_TYPES):
        return frozenset(f.term.vars())
    if isinstance(f, (Top, Bottom)):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        out = frozenset()
        for a in f.args:
            out |= free_vars(a)
        return out
    if isinstance(f, Implies):
        return free_vars(f.lhs) | free_vars(f.rhs)
    return free_vars(f.body) - {f.var}


def bound_vars(f: Formula) -> frozenset:
    if isinstance(f, (Top, Bottom) + ATOM_TYPES):
        return frozenset()
    if isinstance(f, Not):
        return bound_vars(f.body)
    if isinstance(f, (And, Or)):
        out = frozenset()
        for a in f.args:
            out |= bound_vars(a)
        return out
    if isinstance(f, Implies):
        return bound_vars(f.lhs) | bound_vars(f.rhs)
    return bound_vars(f.body) | {f.var}


def fresh_var(base: Var, avoid) -> Var:
    names = {v.name for v in avoid}
    k = 1
    while f"{base.name}_{k}" in names:
        k += 1
    return Var(f"{base.name}_{k}")


def substitute(f: Formula, v: Var, t: LinearTerm) -> Formula:
    """Replace free occurrences of v by t, renaming binders that would capture."""
    if v not in free_vars(f):
        return f
    if isinstance(f, ATOM_TYPES):
        new_term = f.term.subst(v, t)
        if isinstance(f, PredAtom):
            return PredAtom(f.name, new_term)
        return type(f)(new_term)
    if isinstance(f, Not):
        return Not(substitute(f.body, v, t))
    if isinstance(f, And):
        return And(tuple(substitute(a, v, t) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(substitute(a, v, t) for a in f.args))
    if isinstance(f, Implies):
        return Implies(substitute(f.lhs, v, t), substitute(f.rhs, v, t))
    # Quantifier with v free in the body (v != f.var since v is free in f).
    u, body = f.var, f.body
    if u in t.vars():
        u2 = fresh_var(u, free_vars(body) | set(t.vars()) | {v})
        body = substitute(body, u, LinearTerm.of_var(u2))
        u = u2
    return type(f)(u, substitute(body, v, t))


def to_nnf(f: Formula, negate: bool = False) -> Formula:
    """Negation normal form.

    Negated arithmetic atoms are resolved by trichotomy: not(t<0) becomes
    -t<0 | t=0, and not(t=0) becomes t<0 | -t<0. A negated predicate atom
    stays as a negated leaf (its meaning is structure-dependent).
    """
    if isinstance(f, Top):
        return BOTTOM if negate else TOP
    if isinstance(f, Bottom):
        return TOP if negate else BOTTOM
    if isinstance(f, Lt0):
        if not negate:
            return f
        return make_or([Lt0(-f.term), Eq0(f.term)])
    if isinstance(f, Eq0):
        if not negate:
            return f
        return make_or([Lt0(f.term), Lt0(-f.term)])
    if isinstance(f, PredAtom):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return to_nnf(f.body, not negate)
    if isinstance(f, And):
        parts = [to_nnf(a, negate) for a in f.args]
        return make_or(parts) if negate else make_and(parts)
    if isinstance(f, Or):
        parts = [to_nnf(a, negate) for a in f.args]
        return make_and(parts) if negate else make_or(parts)
    if isinstance(f, Implies):
        if negate:
            return make_and([to_nnf(f.lhs), to_nnf(f.rhs, True)])
        return make_or([to_nnf(f.lhs, True), to_nnf(f.rhs)])
    if isinstance(f, Exists):
        cls = Forall if negate else Exists
        return cls(f.var, to_nnf(f.body, negate))
    cls = Exists if negate else Forall
    return cls(f.var, to_nnf(f.body, negate))


def formula_size(f: Formula) -> int:
    if isinstance(f, (Top, Bottom) + ATOM_TYPES):
        return 1
    if isinstance(f, Not):
        return 1 + formula_size(f.body)
    if isinstance(f, (And, Or)):
        return 1 + sum(formula_size(a) for a in f.args)
    if isinstance(f, Implies):
        return 1 + formula_size(f.lhs) + formula_size(f.rhs)
    return 1 + formula_size(f.body)


def quantifier_depth(f: Formula) -> int:
    if isinstance(f, (Top, Bottom) + ATOM_TYPES):
        return 0
    if isinstance(f, Not):
        return quantifier_depth(f.body)
    if isinstance(f, (And, Or)):
        return max(quantifier_depth(a) for a in f.args)
    if isinstance(f, Implies):
        return max(quantifier_depth(f.lhs), quantifier_depth(f.rhs))
    return 1 + quantifier_depth(f.body)


def iter_atoms(f: Formula) -> Iterator[Formula]:
    if isinstance(f, ATOM_TYPES):
        yield f
    elif isinstance(f, Not):
        yield from iter_atoms(f.body)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            yield from iter_atoms(a)
    elif isinstance(f, Implies):
        yield from iter_atoms(f.lhs)
        yield from iter_atoms(f.rhs)
    elif isinstance(f, (Exists, Forall)):
        yield from iter_atoms(f.body)


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, (Exists, Forall)):
        return False
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    if isinstance(f, (And, Or)):
        return all(is_quantifier_free(a) for a in f.args)
    if isinstance(f, Implies):
        return is_quantifier_free(f.lhs) and is_quantifier_free(f.rhs)
    return True


def contains_pred(f: Formula) -> bool:
    return any(isinstance(a, PredAtom) for a in iter_atoms(f))


def ensure_quantifier_free(f: Formula) -> None:
    if not is_quantifier_free(f):
        raise NotQuantifierFreeError("quantifier-free formula required")


def ensure_pred_free(f: Formula) -> None:
    for a in iter_atoms(f):
        if isinstance(a, PredAtom):
            raise PredicateLeakError(
                f"predicate {a.name!r} not expanded; bind a structure first"
            )


def _canon_bound(f: Formula, env: Mapping[Var, Var], depth: int) -> Formula:
    if isinstance(f, ATOM_TYPES):
        t = f.term
        renamed = LinearTerm([(env.get(v, v), c) for v, c in t.items], t.const)
        if isinstance(f, PredAtom):
            return PredAtom(f.name, renamed)
        return type(f)(renamed)
    if isinstance(f, (Top, Bottom)):
        return f
    if isinstance(f, Not):
        return Not(_canon_bound(f.body, env, depth))
    if isinstance(f, And):
        return And(tuple(_canon_bound(a, env, depth) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(_canon_bound(a, env, depth) for a in f.args))
    if isinstance(f, Implies):
        return Implies(
            _canon_bound(f.lhs, env, depth), _canon_bound(f.rhs, env, depth)
        )
    fresh = Var(f"@{depth}")
    env2 = dict(env)
    env2[f.var] = fresh
    return type(f)(fresh, _canon_bound(f.body, env2, depth + 1))


def alpha_equal(f: Formula, g: Formula) -> bool:
    """Structural equality up to renaming of bound variables."""
    return _canon_bound(f, {}, 0) == _canon_bound(g, {}, 0)
