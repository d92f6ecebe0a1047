"""Builders for the continuous-induction sentence schemas.

build_dci emits, for a body phi(v, params):

    forall params (
        (exists s forall v (v < s -> phi)
         & forall v (forall s (s < v -> phi[v:=s])
                     -> exists u (v < u & forall s (s < u -> phi[v:=s]))))
        -> forall v phi)

build_bci emits the half-open-interval relativization on [a, b): an initial
segment exists, every initial segment strictly extends, hence the whole of
[a, b) is covered. When a or b is a variable it is universally quantified
behind an a < b guard; concrete endpoint terms are inlined instead.

Helper variables use the reserved "$s"/"$u" name prefixes with a shared
numeric suffix chosen to avoid every name in sight, so output is reproducible.
"""

from typing import List, Optional, Sequence

from .errors import IllFormedSchemaError
from .formulas import (
    And,
    Exists,
    Forall,
    Formula,
    Implies,
    Lt0,
    Not,
    bound_vars,
    free_vars,
    substitute,
)
from .terms import LinearTerm, Var


def _lt(a: LinearTerm, b: LinearTerm) -> Formula:
    return Lt0(a - b)


def _le(a: LinearTerm, b: LinearTerm) -> Formula:
    return Not(Lt0(b - a))


def _fresh_suffix(names, prefixes) -> int:
    k = 1
    while any(f"{p}{k}" in names for p in prefixes):
        k += 1
    return k


def _check_body(phi: Formula, v: Var, params: Sequence[Var], force: bool):
    if not force and v not in free_vars(phi):
        raise IllFormedSchemaError(
            f"{v.name} is not free in the schema body; pass force=True to emit anyway"
        )
    rest = free_vars(phi) - {v}
    if len(set(params)) != len(params):
        raise IllFormedSchemaError("duplicate schema parameter")
    if set(params) != rest:
        missing = ", ".join(sorted(w.name for w in rest - set(params)))
        extra = ", ".join(sorted(w.name for w in set(params) - rest))
        raise IllFormedSchemaError(
            f"params must be exactly the remaining free variables "
            f"(missing: [{missing}] extra: [{extra}])"
        )


def build_dci(
    phi: Formula, v: Var, params: Sequence[Var], force: bool = False
) -> Formula:
    _check_body(phi, v, params, force)
    names = {w.name for w in free_vars(phi) | bound_vars(phi) | {v}}
    k = _fresh_suffix(names, ("$s", "$u"))
    s = Var(f"$s{k}")
    u = Var(f"$u{k}")
    tv = LinearTerm.of_var(v)
    ts = LinearTerm.of_var(s)
    tu = LinearTerm.of_var(u)
    phi_s = substitute(phi, v, ts)

    def seg_below(bound: LinearTerm) -> Formula:
        # forall s (s < bound -> phi(s))
        return Forall(s, Implies(_lt(ts, bound), phi_s))

    # exists s forall v (v < s -> phi(v))
    base = Exists(s, Forall(v, Implies(_lt(tv, ts), phi)))
    extend = Forall(
        v,
        Implies(
            seg_below(tv),
            Exists(u, And((_lt(tv, tu), seg_below(tu)))),
        ),
    )
    sentence: Formula = Implies(And((base, extend)), Forall(v, phi))
    for w in reversed(list(params)):
        sentence = Forall(w, sentence)
    return sentence


def _is_plain_var(t: LinearTerm) -> Optional[Var]:
    if len(t.items) == 1 and t.const.sign() == 0:
        var, coeff = t.items[0]
        if coeff.num == 1 and coeff.den == 1:
            return var
    return None


def build_bci(
    phi: Formula,
    v: Var,
    a: LinearTerm,
    b: LinearTerm,
    params: Sequence[Var],
    force: bool = False,
) -> Formula:
    _check_body(phi, v, params, force)
    quantify: List[Var] = []
    for endpoint in (a, b):
        var = _is_plain_var(endpoint)
        if var is not None and var not in free_vars(phi) and var not in quantify:
            quantify.append(var)
    names = {w.name for w in free_vars(phi) | bound_vars(phi) | {v}}
    names.update(w.name for w in quantify)
    for t in (a, b):
        names.update(w.name for w in t.vars())
    k = _fresh_suffix(names, ("$s", "$u"))
    x = Var(f"$s{k}")
    y = Var(f"$u{k}")
    tv = LinearTerm.of_var(v)
    tx = LinearTerm.of_var(x)
    ty = LinearTerm.of_var(y)

    def seg(upper: LinearTerm) -> Formula:
        # [a, upper) inside the covered class
        return Forall(v, Implies(And((_le(a, tv), _lt(tv, upper))), phi))

    grows = And((_lt(a, tx), seg(tx)))
    base = Exists(x, grows)
    extend = Forall(x, Implies(grows, Exists(y, And((_lt(tx, ty), seg(ty))))))
    sentence: Formula = Implies(
        _lt(a, b), Implies(And((base, extend)), seg(b))
    )
    for w in reversed(quantify):
        sentence = Forall(w, sentence)
    for w in reversed(list(params)):
        sentence = Forall(w, sentence)
    if free_vars(sentence):
        loose = ", ".join(sorted(w.name for w in free_vars(sentence)))
        raise IllFormedSchemaError(f"schema instance is not a sentence ({loose})")
    return sentence
