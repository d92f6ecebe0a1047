"""Canonical one-variable definable sets: finite unions of points and open
intervals, with order-topology operations, pseudo-finiteness, and cut/gap
analysis.

Representation-level operations (union, closure, ...) are carrier-blind; they
manipulate component lists over the ambient ordered line. normalize() is the
carrier-aware entry point: since quantification ranges over the rationals, it
drops irrational points and merges intervals that only a missing irrational
point kept apart, so canonical form equals extensional equality over the
domain.
"""

from dataclasses import dataclass
from functools import cmp_to_key
from typing import List, Optional, Tuple, Union

from .errors import NotASentenceError
from .formulas import (
    And,
    Bottom,
    Eq0,
    Formula,
    Implies,
    Lt0,
    Not,
    Or,
    Top,
    free_vars,
)
from .qe import DEFAULT_MAX_NODES, eliminate_all
from .scalar import (
    Scalar,
    ZERO,
    as_scalar,
    compare,
    format_scalar,
    rational_above,
    rational_below,
    rational_between,
)
from .structures import PURE_Q, StructureSpec, in_domain
from .terms import Var


@dataclass(frozen=True)
class Endpoint:
    kind: str  # "ninf" | "fin" | "pinf"
    value: Optional[Scalar] = None

    def __repr__(self):
        if self.kind == "fin":
            return f"Endpoint({self.value!r})"
        return "NEG_INF" if self.kind == "ninf" else "POS_INF"


NEG_INF = Endpoint("ninf")
POS_INF = Endpoint("pinf")


def fin(x) -> Endpoint:
    return Endpoint("fin", as_scalar(x))


def ep_cmp(a: Endpoint, b: Endpoint) -> int:
    order = {"ninf": 0, "fin": 1, "pinf": 2}
    ka, kb = order[a.kind], order[b.kind]
    if ka != kb:
        return -1 if ka < kb else 1
    if a.kind != "fin":
        return 0
    return compare(a.value, b.value)


@dataclass(frozen=True)
class Point:
    value: Scalar


@dataclass(frozen=True)
class OpenInterval:
    lo: Endpoint
    hi: Endpoint


Component = Union[Point, OpenInterval]


@dataclass(frozen=True)
class Interval:
    """Maximal connected piece: endpoints plus closedness flags.

    The unit the sweep and merge logic works in; DefinableSet1D's public
    component list is derived from these.
    """

    lo: Endpoint
    lo_closed: bool
    hi: Endpoint
    hi_closed: bool

    def is_singleton(self) -> bool:
        return (
            self.lo.kind == "fin"
            and self.hi.kind == "fin"
            and ep_cmp(self.lo, self.hi) == 0
        )


def _iv_ok(iv: Interval) -> bool:
    c = ep_cmp(iv.lo, iv.hi)
    if c < 0:
        return iv.lo.kind != "pinf" and iv.hi.kind != "ninf"
    if c == 0:
        return iv.lo.kind == "fin" and iv.lo_closed and iv.hi_closed
    return False


def _iv_cmp(a: Interval, b: Interval) -> int:
    c = ep_cmp(a.lo, b.lo)
    if c != 0:
        return c
    if a.lo_closed != b.lo_closed:
        return -1 if a.lo_closed else 1
    return ep_cmp(a.hi, b.hi)


def _merge_ivs(ivs: List[Interval]) -> List[Interval]:
    ivs = [iv for iv in ivs if _iv_ok(iv)]
    ivs.sort(key=cmp_to_key(_iv_cmp))
    out: List[Interval] = []
    for iv in ivs:
        if not out:
            out.append(iv)
            continue
        cur = out[-1]
        c = ep_cmp(cur.hi, iv.lo)
        touches = c > 0 or (c == 0 and (cur.hi_closed or iv.lo_closed))
        if not touches:
            out.append(iv)
            continue
        hc = ep_cmp(iv.hi, cur.hi)
        if hc > 0:
            hi, hi_closed = iv.hi, iv.hi_closed
        elif hc < 0:
            hi, hi_closed = cur.hi, cur.hi_closed
        else:
            hi, hi_closed = cur.hi, cur.hi_closed or iv.hi_closed
        out[-1] = Interval(cur.lo, cur.lo_closed, hi, hi_closed)
    return out


class DefinableSet1D:
    """Canonical finite union of points and open intervals."""

    __slots__ = ("components",)

    def __init__(self, components: Tuple[Component, ...]):
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("DefinableSet1D is immutable")

    def __eq__(self, other):
        if not isinstance(other, DefinableSet1D):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def is_empty(self) -> bool:
        return not self.components

    def __repr__(self):
        return f"DefinableSet1D({render_set(self)!r})"


EMPTY_SET = DefinableSet1D(())
FULL_LINE = DefinableSet1D((OpenInterval(NEG_INF, POS_INF),))


def _to_ivs(d: DefinableSet1D) -> List[Interval]:
    out = []
    for comp in d.components:
        if isinstance(comp, Point):
            e = fin(comp.value)
            out.append(Interval(e, True, e, True))
        else:
            out.append(Interval(comp.lo, False, comp.hi, False))
    return out


def _from_ivs(ivs: List[Interval]) -> DefinableSet1D:
    comps: List[Component] = []
    for iv in ivs:
        if iv.is_singleton():
            comps.append(Point(iv.lo.value))
            continue
        if iv.lo_closed:
            comps.append(Point(iv.lo.value))
        comps.append(OpenInterval(iv.lo, iv.hi))
        if iv.hi_closed:
            comps.append(Point(iv.hi.value))
    return DefinableSet1D(tuple(comps))


def from_components(components) -> DefinableSet1D:
    """Canonicalize an arbitrary component list (sort, merge, dedupe)."""
    ivs = _to_ivs(DefinableSet1D(tuple(components)))
    merged = _merge_ivs(ivs)
    return _from_ivs(merged)


def union(a: DefinableSet1D, b: DefinableSet1D) -> DefinableSet1D:
    merged = _merge_ivs(_to_ivs(a) + _to_ivs(b))
    return _from_ivs(merged)


def complement(a: DefinableSet1D) -> DefinableSet1D:
    ivs = _merge_ivs(_to_ivs(a))
    out: List[Interval] = []
    cursor = NEG_INF
    cursor_closed = False
    for iv in ivs:
        gap = Interval(cursor, cursor_closed, iv.lo, not iv.lo_closed)
        if _iv_ok(gap):
            out.append(gap)
        cursor = iv.hi
        cursor_closed = not iv.hi_closed
    tail = Interval(cursor, cursor_closed, POS_INF, False)
    if _iv_ok(tail):
        out.append(tail)
    return _from_ivs(out)


def intersect(a: DefinableSet1D, b: DefinableSet1D) -> DefinableSet1D:
    return complement(union(complement(a), complement(b)))


def closure(a: DefinableSet1D) -> DefinableSet1D:
    ivs = []
    for iv in _to_ivs(a):
        ivs.append(
            Interval(
                iv.lo,
                iv.lo_closed or iv.lo.kind == "fin",
                iv.hi,
                iv.hi_closed or iv.hi.kind == "fin",
            )
        )
    merged = _merge_ivs(ivs)
    return _from_ivs(merged)


def interior(a: DefinableSet1D) -> DefinableSet1D:
    # Canonical components are maximal, so interiors are componentwise.
    out = []
    for iv in _merge_ivs(_to_ivs(a)):
        if iv.is_singleton():
            continue
        out.append(Interval(iv.lo, False, iv.hi, False))
    return _from_ivs(out)


def intervals(d: DefinableSet1D) -> Tuple[Interval, ...]:
    """The maximal connected pieces of d, in order."""
    merged = _merge_ivs(_to_ivs(d))
    return tuple(merged)


def contains(d: DefinableSet1D, x: Scalar) -> bool:
    x = as_scalar(x)
    for iv in _to_ivs(d):
        lo_ok = ep_cmp(iv.lo, fin(x)) < 0 or (iv.lo_closed and ep_cmp(iv.lo, fin(x)) == 0)
        hi_ok = ep_cmp(fin(x), iv.hi) < 0 or (iv.hi_closed and ep_cmp(fin(x), iv.hi) == 0)
        if lo_ok and hi_ok:
            return True
    return False


@dataclass(frozen=True)
class PseudoFiniteReport:
    discrete: bool
    closed: bool
    bounded: bool
    verdict: bool


def is_pseudo_finite(d: DefinableSet1D) -> PseudoFiniteReport:
    discrete = all(isinstance(c, Point) for c in d.components)
    is_closed = closure(d) == d
    if d.is_empty():
        bounded = True
    else:
        ivs = intervals(d)
        bounded = ivs[0].lo.kind == "fin" and ivs[-1].hi.kind == "fin"
    return PseudoFiniteReport(
        discrete=discrete,
        closed=is_closed,
        bounded=bounded,
        verdict=discrete and is_closed and bounded,
    )


def finite_points(d: DefinableSet1D) -> Optional[Tuple[Scalar, ...]]:
    """The point list when d is a finite set of points, else None."""
    if all(isinstance(c, Point) for c in d.components):
        return tuple(c.value for c in d.components)
    return None


@dataclass(frozen=True)
class CutReport:
    kind: str  # "not_a_cut" | "proper_cut_with_lub" | "gap" | "whole_group"
    lub: Optional[Scalar] = None


def cut_analysis(d: DefinableSet1D, s: StructureSpec) -> CutReport:
    """Classify d as a Dedekind cut of the structure's domain.

    A cut is nonempty, downward closed, and proper. The candidate least upper
    bound is the cut's right endpoint; the verdict is a gap exactly when that
    endpoint lies outside the quantification domain.
    """
    if d.is_empty():
        return CutReport("not_a_cut")
    ivs = intervals(d)
    if len(ivs) != 1:
        return CutReport("not_a_cut")
    iv = ivs[0]
    if iv.lo.kind != "ninf":
        return CutReport("not_a_cut")
    if iv.hi.kind == "pinf":
        return CutReport("whole_group")
    c = iv.hi.value
    if in_domain(c, s):
        return CutReport("proper_cut_with_lub", lub=c)
    return CutReport("gap", lub=None)


def render_set(d: DefinableSet1D) -> str:
    if not d.components:
        return "{}"
    parts = []
    for comp in d.components:
        if isinstance(comp, Point):
            parts.append("{" + format_scalar(comp.value) + "}")
        else:
            lo = "-inf" if comp.lo.kind == "ninf" else format_scalar(comp.lo.value)
            hi = "inf" if comp.hi.kind == "pinf" else format_scalar(comp.hi.value)
            parts.append(f"({lo},{hi})")
    return " u ".join(parts)


def _domain_filter(ivs: List[Interval], s: StructureSpec) -> List[Interval]:
    """Extensional cleanup over the quantification domain.

    Points outside the domain denote nothing; two open intervals separated
    only by a non-domain scalar denote one interval of domain elements.
    """
    kept: List[Interval] = []
    for iv in ivs:
        if iv.is_singleton() and not in_domain(iv.lo.value, s):
            continue
        lo_closed = iv.lo_closed and (iv.lo.kind != "fin" or in_domain(iv.lo.value, s))
        hi_closed = iv.hi_closed and (iv.hi.kind != "fin" or in_domain(iv.hi.value, s))
        kept.append(Interval(iv.lo, lo_closed, iv.hi, hi_closed))
    out: List[Interval] = []
    for iv in kept:
        if out:
            cur = out[-1]
            if (
                ep_cmp(cur.hi, iv.lo) == 0
                and cur.hi.kind == "fin"
                and not in_domain(cur.hi.value, s)
            ):
                out[-1] = Interval(cur.lo, cur.lo_closed, iv.hi, iv.hi_closed)
                continue
        out.append(iv)
    return out


def _atom_set(f: Formula, x: Var) -> DefinableSet1D:
    t = f.term if isinstance(f, (Lt0, Eq0)) else None
    assert t is not None
    c = t.coeff(x)
    if c.is_zero():
        truth = t.const.sign() < 0 if isinstance(f, Lt0) else t.const.sign() == 0
        return FULL_LINE if truth else EMPTY_SET
    root = t.solve_for(x).const
    if isinstance(f, Eq0):
        return DefinableSet1D((Point(root),))
    if c.sign() > 0:
        return DefinableSet1D((OpenInterval(NEG_INF, fin(root)),))
    return DefinableSet1D((OpenInterval(fin(root), POS_INF),))


def _formula_set(f: Formula, x: Var) -> DefinableSet1D:
    if isinstance(f, Top):
        return FULL_LINE
    if isinstance(f, Bottom):
        return EMPTY_SET
    if isinstance(f, (Lt0, Eq0)):
        return _atom_set(f, x)
    if isinstance(f, Not):
        return complement(_formula_set(f.body, x))
    if isinstance(f, And):
        out = FULL_LINE
        for a in f.args:
            out = intersect(out, _formula_set(a, x))
        return out
    if isinstance(f, Or):
        out = EMPTY_SET
        for a in f.args:
            out = union(out, _formula_set(a, x))
        return out
    if isinstance(f, Implies):
        return union(
            complement(_formula_set(f.lhs, x)), _formula_set(f.rhs, x)
        )
    raise TypeError(f"not a quantifier-free formula: {f!r}")


def normalize(
    f: Formula,
    s: StructureSpec = PURE_Q,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> DefinableSet1D:
    """O-minimal normal form of the set f defines over the domain of s."""
    fv = sorted(free_vars(f), key=lambda v: v.name)
    if len(fv) > 1:
        raise NotASentenceError(
            f"normalize needs at most one free variable, got {len(fv)}"
        )
    qf = eliminate_all(f, s, max_nodes).formula
    if not free_vars(qf):
        from .qe import evaluate

        return FULL_LINE if evaluate(qf, {}) else EMPTY_SET
    x = fv[0]
    raw = _formula_set(qf, x)
    ivs = _domain_filter(list(intervals(raw)), s)
    return _from_ivs(ivs)


def pick_point(d: DefinableSet1D) -> Optional[Scalar]:
    """Deterministic witness from a canonical set; None when empty.

    Takes the leftmost component: a point's value, a rational strictly
    inside an interval, zero for the whole line.
    """
    if not d.components:
        return None
    comp = d.components[0]
    if isinstance(comp, Point):
        return comp.value
    if comp.lo.kind == "ninf" and comp.hi.kind == "pinf":
        return ZERO
    if comp.lo.kind == "ninf":
        return rational_below(comp.hi.value)
    if comp.hi.kind == "pinf":
        return rational_above(comp.lo.value)
    return rational_between(comp.lo.value, comp.hi.value)
