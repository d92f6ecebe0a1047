"""Quantifier elimination and sentence decision over dense divisible
ordered group structures.

Strategy: bind the structure (macro-expand predicates), push negations to
literals, then eliminate innermost quantifiers first. Each quantifier body is
converted to a disjunction of cubes; existentials are resolved per cube by
equality substitution or lower/upper bound pairing (dense order, no
endpoints), universals by double negation. No global prenexing: the deeply
nested induction schemas stay tractable only because each block is eliminated
and simplified before the next one is touched.

Cubes keep their literals in a solved normal form, one group per linear form:
at most one upper bound, one lower bound or one equality, plus surviving
disequalities. Bounds carry strictness: negated strict inequalities stay
single weak literals instead of splitting into (< or =), which is what keeps
alternating-quantifier sentences from doubling at every negation. Everything
downstream relies on that form being canonical.
"""

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    MissingAssignmentError,
    NotASentenceError,
    NotQuantifierFreeError,
    PredicateLeakError,
    ResourceLimitError,
)
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
    Top,
    contains_pred,
    free_vars,
    is_quantifier_free,
    make_and,
    make_or,
)
from .scalar import QuadScalar, Rational, Scalar, ZERO, as_scalar
from .structures import PURE_Q, StructureSpec, bind_structure
from .terms import LinearTerm, Var, pos_canonical, sign_canonical

DEFAULT_MAX_NODES = 10**6

# Subsumption pruning is quadratic; skip it for cube lists beyond this size.
_SUBSUME_LIMIT = 400
_DISJOINT_LIMIT = 2000


@dataclass(frozen=True)
class QfFormula:
    """A formula checked to be quantifier-free and predicate-free."""

    formula: Formula

    def __post_init__(self):
        if not is_quantifier_free(self.formula):
            raise NotQuantifierFreeError("QfFormula requires quantifier-free input")
        if contains_pred(self.formula):
            raise PredicateLeakError("QfFormula requires predicate-free input")


def _ckey(c: Scalar):
    if isinstance(c, QuadScalar):
        return (1, c.rat.num, c.rat.den, c.coef.num, c.coef.den, c.radicand)
    return (0, c.num, c.den)


def _tkey(t: LinearTerm):
    return (
        tuple((v.name, c.num, c.den) for v, c in t.items),
        _ckey(t.const),
    )


def _irr_part_nonzero(c: Scalar) -> bool:
    return isinstance(c, QuadScalar) and c.coef.num != 0


def _entry_sig(e):
    """Hashable faithful encoding of one groups_view entry."""
    key, _form, up, lo, pin, nes = e
    return (
        key,
        None if up is None else (_ckey(up[0]), up[1]),
        None if lo is None else (_ckey(lo[0]), lo[1]),
        None if pin is None else _ckey(pin),
        tuple(_ckey(n) for n in nes),
    )


def _entry_excludes(be, n: Scalar) -> bool:
    """Does the region described by entry be rule out the value n?"""
    _, _, b_up, b_lo, b_pin, b_nes = be
    if b_pin is not None:
        return b_pin.compare(n) != 0
    for m in b_nes:
        if m.compare(n) == 0:
            return True
    if b_up is not None:
        c = n.compare(b_up[0])
        if c > 0 or (c == 0 and b_up[1]):
            return True
    if b_lo is not None:
        c = n.compare(b_lo[0])
        if c < 0 or (c == 0 and b_lo[1]):
            return True
    return False


def _quick_disjoint(a: "Cube", b: "Cube") -> bool:
    """Cheap sound emptiness test for the intersection of two cubes.

    True only when some shared form has non-overlapping regions; a False
    answer says nothing.
    """
    am, bm = a.gmap(), b.gmap()
    if len(bm) < len(am):
        am, bm = bm, am
    for key, e in am.items():
        o = bm.get(key)
        if o is None:
            continue
        _, _, up, lo, pin, _nes = e
        if pin is not None:
            if _entry_excludes(o, pin):
                return True
            continue
        _, _, oup, olo, opin, _ones = o
        if opin is not None:
            if _entry_excludes(e, opin):
                return True
            continue
        if up is not None and olo is not None:
            c = up[0].compare(olo[0])
            if c < 0 or (c == 0 and (up[1] or olo[1])):
                return True
        if oup is not None and lo is not None:
            c = oup[0].compare(lo[0])
            if c < 0 or (c == 0 and (oup[1] or lo[1])):
                return True
    return False


def _region_le(bm: Dict, am: Dict) -> bool:
    """Is the cube region of bm contained in that of am (per-form check)?"""
    for key, e in am.items():
        _, _, up, lo, pin, nes = e
        be = bm.get(key)
        if be is None:
            return False
        _, _, b_up, b_lo, b_pin, b_nes = be
        if pin is not None:
            if b_pin is None or b_pin.compare(pin) != 0:
                return False
            continue
        if up is not None:
            if b_pin is not None:
                c = b_pin.compare(up[0])
                if c > 0 or (c == 0 and up[1]):
                    return False
            elif b_up is None:
                return False
            else:
                c = b_up[0].compare(up[0])
                if c > 0 or (c == 0 and up[1] and not b_up[1]):
                    return False
        if lo is not None:
            if b_pin is not None:
                c = b_pin.compare(lo[0])
                if c < 0 or (c == 0 and lo[1]):
                    return False
            elif b_lo is None:
                return False
            else:
                c = b_lo[0].compare(lo[0])
                if c < 0 or (c == 0 and lo[1] and not b_lo[1]):
                    return False
        for n in nes:
            if not _entry_excludes(be, n):
                return False
    return True


def _terms_from_entries(entries):
    lt: List[LinearTerm] = []
    le: List[LinearTerm] = []
    eq: List[LinearTerm] = []
    ne: List[LinearTerm] = []
    for _key, form, up, lo, pin, nes in entries:
        if pin is not None:
            eq.append(form - LinearTerm.of_const(pin))
            continue
        if up is not None:
            (lt if up[1] else le).append(form - LinearTerm.of_const(up[0]))
        if lo is not None:
            (lt if lo[1] else le).append(LinearTerm.of_const(lo[0]) - form)
        for n in nes:
            ne.append(form - LinearTerm.of_const(n))
    return lt, le, eq, ne


def _iv_start_cmp(a, b) -> int:
    alo, blo = a[0], b[0]
    if alo is None:
        return 0 if blo is None else -1
    if blo is None:
        return 1
    c = alo[0].compare(blo[0])
    if c:
        return c
    return int(alo[1]) - int(blo[1])  # closed start sorts first


def _iv_join_or_none(cur, nxt):
    """Union of two start-sorted intervals if it is one interval, else None."""
    clo, chi = cur
    nlo, nhi = nxt
    if chi is not None and nlo is not None:
        c = nlo[0].compare(chi[0])
        if c > 0:
            return None
        if c == 0 and nlo[1] and chi[1]:
            return None  # open endpoints on both sides leave a hole
    if chi is None:
        hi = None
    elif nhi is None:
        hi = None
    else:
        c = chi[0].compare(nhi[0])
        if c > 0:
            hi = chi
        elif c < 0:
            hi = nhi
        else:
            hi = chi if not chi[1] else nhi  # weak endpoint reaches further
    return (clo, hi)


class _Group:
    """Constraints on one linear form: bounds, pin, excluded values.

    Bounds are (value, strict) pairs; strict=False means the bound itself
    is attainable.
    """

    __slots__ = ("form", "upper", "lower", "pin", "nes")

    def __init__(self, form: LinearTerm):
        self.form = form  # sign-canonical items, zero constant
        self.upper: Optional[Tuple[Scalar, bool]] = None
        self.lower: Optional[Tuple[Scalar, bool]] = None
        self.pin: Optional[Scalar] = None  # value = pin
        self.nes: List[Scalar] = []  # value != each


def _tighter_upper(cur, new):
    if cur is None:
        return new
    c = new[0].compare(cur[0])
    if c < 0 or (c == 0 and new[1] and not cur[1]):
        return new
    return cur


def _tighter_lower(cur, new):
    if cur is None:
        return new
    c = new[0].compare(cur[0])
    if c > 0 or (c == 0 and new[1] and not cur[1]):
        return new
    return cur


class Cube:
    """Conjunction of literals t<0, t<=0, t=0, t!=0 in solved normal form.

    Build through Cube.of(); it returns None for a cube simplified to false.
    An empty cube is the true conjunction.
    """

    __slots__ = ("lt", "le", "eq", "ne", "groups_view", "_gmap")

    def __init__(
        self,
        lt: Tuple[LinearTerm, ...],
        le: Tuple[LinearTerm, ...],
        eq: Tuple[LinearTerm, ...],
        ne: Tuple[LinearTerm, ...],
        groups_view: tuple = (),
    ):
        self.lt = lt
        self.le = le
        self.eq = eq
        self.ne = ne
        # Per linear form: (key, form, upper, lower, pin, nes); the solved
        # interval view the pruning passes reason over.
        self.groups_view = groups_view
        self._gmap = None

    def gmap(self) -> Dict:
        m = self._gmap
        if m is None:
            m = {e[0]: e for e in self.groups_view}
            self._gmap = m
        return m

    @staticmethod
    def of(
        lt: Sequence[LinearTerm] = (),
        le: Sequence[LinearTerm] = (),
        eq: Sequence[LinearTerm] = (),
        ne: Sequence[LinearTerm] = (),
    ) -> Optional["Cube"]:
        groups: Dict[tuple, _Group] = {}

        def group_for(t: LinearTerm):
            """(group, mu, bound) with t = mu*form + const, bound = -const/mu.

            Ground literals return (None, None, const) instead.
            """
            if t.is_const():
                return None, None, t.const
            canon = sign_canonical(LinearTerm(t.items, 0))
            key = _tkey(canon)
            g = groups.get(key)
            if g is None:
                g = _Group(canon)
                groups[key] = g
            mu = t.items[0][1] / canon.items[0][1]
            bound = t.const * (Rational(-1) / mu)
            return g, mu, as_scalar(bound)

        for strict, batch in ((True, lt), (False, le)):
            for t in batch:
                g, mu, bound = group_for(t)
                if g is None:
                    s = bound.sign()
                    if s < 0 or (s == 0 and not strict):
                        continue  # ground literal holds
                    return None
                if mu.sign() > 0:  # value < bound, or <= for weak
                    g.upper = _tighter_upper(g.upper, (bound, strict))
                else:
                    g.lower = _tighter_lower(g.lower, (bound, strict))
        for t in eq:
            g, mu, bound = group_for(t)
            if g is None:
                if bound.sign() != 0:
                    return None
                continue
            if g.pin is not None and g.pin.compare(bound) != 0:
                return None
            g.pin = bound
        for t in ne:
            g, mu, bound = group_for(t)
            if g is None:
                if bound.sign() == 0:
                    return None
                continue
            g.nes.append(bound)

        out_lt: List[LinearTerm] = []
        out_le: List[LinearTerm] = []
        out_eq: List[LinearTerm] = []
        out_ne: List[LinearTerm] = []
        entries = []
        for key in sorted(groups):
            g = groups[key]
            if g.pin is not None:
                if g.upper is not None:
                    c = g.pin.compare(g.upper[0])
                    if c > 0 or (c == 0 and g.upper[1]):
                        return None
                if g.lower is not None:
                    c = g.pin.compare(g.lower[0])
                    if c < 0 or (c == 0 and g.lower[1]):
                        return None
                for n in g.nes:
                    if n.compare(g.pin) == 0:
                        return None
                out_eq.append(pos_canonical(g.form - LinearTerm.of_const(g.pin)))
                entries.append((key, g.form, None, None, g.pin, ()))
                continue
            nes = []
            seen = set()
            for n in g.nes:
                k = _ckey(n)
                if k not in seen:
                    seen.add(k)
                    nes.append(n)
            survivors = []
            for n in nes:
                # An excluded value sitting exactly on a weak bound just
                # makes that bound strict.
                if g.upper is not None and not g.upper[1] and n.compare(g.upper[0]) == 0:
                    g.upper = (g.upper[0], True)
                    continue
                if g.lower is not None and not g.lower[1] and n.compare(g.lower[0]) == 0:
                    g.lower = (g.lower[0], True)
                    continue
                survivors.append(n)
            if g.upper is not None and g.lower is not None:
                c = g.lower[0].compare(g.upper[0])
                if c > 0:
                    return None
                if c == 0:
                    if g.lower[1] or g.upper[1]:
                        return None
                    # lower <= value <= lower collapses to a pin
                    for n in survivors:
                        if n.compare(g.lower[0]) == 0:
                            return None
                    out_eq.append(
                        pos_canonical(g.form - LinearTerm.of_const(g.lower[0]))
                    )
                    entries.append((key, g.form, None, None, g.lower[0], ()))
                    continue
            if g.upper is not None:
                t = pos_canonical(g.form - LinearTerm.of_const(g.upper[0]))
                (out_lt if g.upper[1] else out_le).append(t)
            if g.lower is not None:
                t = pos_canonical(LinearTerm.of_const(g.lower[0]) - g.form)
                (out_lt if g.lower[1] else out_le).append(t)
            kept = []
            for n in survivors:
                if g.upper is not None and n.compare(g.upper[0]) >= 0:
                    continue
                if g.lower is not None and n.compare(g.lower[0]) <= 0:
                    continue
                kept.append(n)
                out_ne.append(sign_canonical(g.form - LinearTerm.of_const(n)))
            entries.append(
                (key, g.form, g.upper, g.lower, None, tuple(sorted(kept, key=_ckey)))
            )
        out_ne.sort(key=_tkey)
        return Cube(
            tuple(out_lt),
            tuple(out_le),
            tuple(out_eq),
            tuple(out_ne),
            tuple(entries),
        )

    def merge(self, other: "Cube") -> Optional["Cube"]:
        return Cube.of(
            self.lt + other.lt,
            self.le + other.le,
            self.eq + other.eq,
            self.ne + other.ne,
        )

    def subtract(self, other: "Cube") -> List["Cube"]:
        """Pairwise-disjoint cubes covering the points of self outside other.

        Standard ordered difference: with other = l1 & ... & lk, the pieces
        are self & l1 & ... & l(i-1) & not(li) for each i.
        """
        pieces: List[Cube] = []
        pref_lt: List[LinearTerm] = []
        pref_le: List[LinearTerm] = []
        pref_eq: List[LinearTerm] = []
        pref_ne: List[LinearTerm] = []

        def emit(xlt=(), xle=(), xeq=(), xne=()):
            c = Cube.of(
                self.lt + tuple(pref_lt) + tuple(xlt),
                self.le + tuple(pref_le) + tuple(xle),
                self.eq + tuple(pref_eq) + tuple(xeq),
                self.ne + tuple(pref_ne) + tuple(xne),
            )
            if c is not None:
                pieces.append(c)

        for t in other.lt:
            emit(xle=(-t,))  # not(t < 0) is -t <= 0
            pref_lt.append(t)
        for t in other.le:
            emit(xlt=(-t,))  # not(t <= 0) is -t < 0
            pref_le.append(t)
        for t in other.eq:
            emit(xne=(t,))
            pref_eq.append(t)
        for t in other.ne:
            emit(xeq=(t,))
            pref_ne.append(t)
        return pieces

    def literal_set(self) -> frozenset:
        return frozenset(
            [("lt", _tkey(t)) for t in self.lt]
            + [("le", _tkey(t)) for t in self.le]
            + [("eq", _tkey(t)) for t in self.eq]
            + [("ne", _tkey(t)) for t in self.ne]
        )

    def size(self) -> int:
        return len(self.lt) + len(self.le) + len(self.eq) + len(self.ne)

    def to_formula(self) -> Formula:
        parts: List[Formula] = [Lt0(t) for t in self.lt]
        parts += [Not(Lt0(-t)) for t in self.le]  # t <= 0 as not(0 < t)
        parts += [Eq0(t) for t in self.eq]
        parts += [Not(Eq0(t)) for t in self.ne]
        return make_and(parts)

    def __repr__(self):
        return (
            f"Cube(lt={list(self.lt)!r}, le={list(self.le)!r}, "
            f"eq={list(self.eq)!r}, ne={list(self.ne)!r})"
        )


def _nnf_diseq(f: Formula, negate: bool = False) -> Formula:
    """NNF that keeps negated equalities and inequalities as literals."""
    if isinstance(f, Top):
        return BOTTOM if negate else TOP
    if isinstance(f, Bottom):
        return TOP if negate else BOTTOM
    if isinstance(f, (Lt0, Eq0)):
        return Not(f) if negate else f
    if isinstance(f, PredAtom):
        raise PredicateLeakError(f"predicate {f.name!r} reached the eliminator")
    if isinstance(f, Not):
        return _nnf_diseq(f.body, not negate)
    if isinstance(f, And):
        parts = [_nnf_diseq(a, negate) for a in f.args]
        return make_or(parts) if negate else make_and(parts)
    if isinstance(f, Or):
        parts = [_nnf_diseq(a, negate) for a in f.args]
        return make_and(parts) if negate else make_or(parts)
    if isinstance(f, Implies):
        if negate:
            return make_and([_nnf_diseq(f.lhs), _nnf_diseq(f.rhs, True)])
        return make_or([_nnf_diseq(f.lhs, True), _nnf_diseq(f.rhs)])
    if isinstance(f, Exists):
        cls = Forall if negate else Exists
        return cls(f.var, _nnf_diseq(f.body, negate))
    cls = Exists if negate else Forall
    return cls(f.var, _nnf_diseq(f.body, negate))


class Eliminator:
    def __init__(self, structure: StructureSpec = PURE_Q, max_nodes: int = DEFAULT_MAX_NODES):
        if max_nodes <= 0:
            raise ValueError("max_nodes must be positive")
        self.structure = structure
        self.max_nodes = max_nodes
        self.nodes = 0

    def _charge(self, n: int):
        self.nodes += n
        if self.nodes > self.max_nodes:
            raise ResourceLimitError(
                f"elimination exceeded the {self.max_nodes}-node budget"
            )

    def run(self, f: Formula) -> Formula:
        g = bind_structure(f, self.structure)
        g = _nnf_diseq(g)
        return self._elim(g)

    def _elim(self, f: Formula) -> Formula:
        if isinstance(f, (Top, Bottom, Lt0, Eq0)):
            return f
        if isinstance(f, Not):  # != or >= literal, by NNF shape
            if not isinstance(f.body, (Eq0, Lt0)):
                raise TypeError("eliminator saw a negation that survived NNF")
            return f
        if isinstance(f, And):
            return make_and([self._elim(a) for a in f.args])
        if isinstance(f, Or):
            return make_or([self._elim(a) for a in f.args])
        if isinstance(f, Exists):
            body = self._elim(f.body)
            return self._exists(f.var, body)
        if isinstance(f, Forall):
            body = self._elim(f.body)
            negated = _nnf_diseq(body, negate=True)
            inner = self._exists(f.var, negated)
            return _nnf_diseq(inner, negate=True)
        raise TypeError(f"unexpected node in eliminator: {f!r}")

    def _exists(self, v: Var, qf: Formula) -> Formula:
        if v not in free_vars(qf):
            return qf
        if isinstance(qf, And):
            # Conjuncts without the variable commute with the quantifier;
            # pulling them out keeps them clear of the DNF conversion.
            outside = [a for a in qf.args if v not in free_vars(a)]
            if outside:
                inside = [a for a in qf.args if v in free_vars(a)]
                return make_and(outside + [self._exists(v, make_and(inside))])
        cubes = self._dnf(qf)
        out: List[Cube] = []
        for c in cubes:
            out.extend(self._exists_cube(v, c))
        out = self._prune(out)
        return make_or([c.to_formula() for c in out])

    def _exists_cube(self, v: Var, cube: Cube) -> List[Cube]:
        pin = None
        for e in cube.eq:
            if e.coeff(v).num != 0:
                pin = e
                break
        if pin is not None:
            sol = pin.solve_for(v)
            # Quantified variables range over the rationals; a solution with
            # an irrational constant part is never attained there.
            if _irr_part_nonzero(sol.const):
                return []
            lt = [t.subst(v, sol) for t in cube.lt]
            le = [t.subst(v, sol) for t in cube.le]
            eq = [t.subst(v, sol) for t in cube.eq if t is not pin]
            ne = [t.subst(v, sol) for t in cube.ne]
            self._charge(len(lt) + len(le) + len(eq) + len(ne) + 1)
            r = Cube.of(lt, le, eq, ne)
            return [r] if r is not None else []
        rest_lt: List[LinearTerm] = []
        rest_le: List[LinearTerm] = []
        lowers: List[Tuple[LinearTerm, bool]] = []
        uppers: List[Tuple[LinearTerm, bool]] = []
        for strict, batch in ((True, cube.lt), (False, cube.le)):
            rest = rest_lt if strict else rest_le
            for t in batch:
                c = t.coeff(v)
                if c.num == 0:
                    rest.append(t)
                elif c.sign() > 0:
                    uppers.append((t.solve_for(v), strict))  # v < or <= bound
                else:
                    lowers.append((t.solve_for(v), strict))  # bound < or <= v
        nes_v = [t for t in cube.ne if t.coeff(v).num != 0]
        rest_ne = [t for t in cube.ne if t.coeff(v).num == 0]
        if (
            nes_v
            and any(not s for _, s in uppers)
            and any(not s for _, s in lowers)
        ):
            # Weak bounds on both sides can pinch the region to one point,
            # where an excluded value matters; split it and retry.
            t0 = nes_v[0]
            out: List[Cube] = []
            for branch in (t0, -t0):
                c2 = Cube.of(
                    cube.lt + (branch,),
                    cube.le,
                    cube.eq,
                    tuple(t for t in cube.ne if t is not t0),
                )
                if c2 is not None:
                    out.extend(self._exists_cube(v, c2))
            return out
        # Remaining disequalities in v vanish: the region is infinite when
        # nonempty, and finitely many excluded points cannot exhaust it.
        pairs_lt: List[LinearTerm] = []
        pairs_le: List[LinearTerm] = []
        for lo, ls in lowers:
            for up, us in uppers:
                (pairs_lt if ls or us else pairs_le).append(lo - up)
        self._charge(
            len(pairs_lt) + len(pairs_le) + len(rest_lt) + len(rest_le) + len(rest_ne) + 1
        )
        r = Cube.of(rest_lt + pairs_lt, rest_le + pairs_le, cube.eq, rest_ne)
        return [r] if r is not None else []

    def _dnf(self, f: Formula) -> List[Cube]:
        if isinstance(f, Top):
            empty = Cube.of()
            assert empty is not None
            return [empty]
        if isinstance(f, Bottom):
            return []
        if isinstance(f, Lt0):
            c = Cube.of(lt=[f.term])
            return [c] if c is not None else []
        if isinstance(f, Eq0):
            c = Cube.of(eq=[f.term])
            return [c] if c is not None else []
        if isinstance(f, Not):
            if isinstance(f.body, Eq0):
                c = Cube.of(ne=[f.body.term])
                return [c] if c is not None else []
            if isinstance(f.body, Lt0):
                c = Cube.of(le=[-f.body.term])  # not(t < 0) is -t <= 0
                return [c] if c is not None else []
            raise TypeError("negation of a non-atom inside the eliminator")
        if isinstance(f, Or):
            # Accumulate a pairwise-disjoint union: each incoming cube is
            # split against what is already covered.  Overlap between
            # branches otherwise multiplies through every later product.
            acc: List[Cube] = []
            for a in f.args:
                for c in self._dnf(a):
                    frontier = [c]
                    if len(acc) <= _DISJOINT_LIMIT:
                        for b in acc:
                            nfront: List[Cube] = []
                            for d in frontier:
                                if _quick_disjoint(d, b) or d.merge(b) is None:
                                    nfront.append(d)
                                else:
                                    ps = d.subtract(b)
                                    self._charge(sum(p.size() for p in ps) + 1)
                                    nfront.extend(ps)
                            frontier = nfront
                            if not frontier:
                                break
                    self._charge(len(frontier))
                    acc.extend(frontier)
            return self._prune(acc)
        if isinstance(f, And):
            acc = self._dnf(f.args[0])
            for a in f.args[1:]:
                nxt = self._dnf(a)
                merged: List[Cube] = []
                for left in acc:
                    for right in nxt:
                        m = left.merge(right)
                        if m is not None:
                            self._charge(m.size() + 1)
                            merged.append(m)
                acc = self._prune(merged)
                if not acc:
                    return []
            return acc
        raise TypeError(f"cannot convert to cubes: {f!r}")

    def _prune(self, cubes: List[Cube]) -> List[Cube]:
        out = self._dedupe(cubes)
        if len(out) > _SUBSUME_LIMIT:
            return out
        while len(out) > 1:
            n0 = len(out)
            out = self._drop_contained(out)
            out = self._merge_adjacent(out)
            if len(out) == n0:
                break
            out = self._dedupe(out)
            self._charge(len(out))
        return out

    @staticmethod
    def _dedupe(cubes: List[Cube]) -> List[Cube]:
        seen = {}
        for c in cubes:
            if not c.size():
                return [c]  # a true cube absorbs the whole disjunction
            key = c.literal_set()
            if key not in seen:
                seen[key] = c
        return list(seen.values())

    @staticmethod
    def _drop_contained(cubes: List[Cube]) -> List[Cube]:
        """Drop any cube whose region sits inside another cube's region."""
        maps = [{e[0]: e for e in c.groups_view} for c in cubes]
        keysets = [frozenset(m) for m in maps]
        keep: List[Cube] = []
        for i, ci in enumerate(cubes):
            contained = False
            for j in range(len(cubes)):
                if j == i:
                    continue
                if keysets[j] <= keysets[i] and _region_le(maps[i], maps[j]):
                    contained = True
                    break
            if not contained:
                keep.append(ci)
        return keep

    def _merge_adjacent(self, cubes: List[Cube]) -> List[Cube]:
        """Join cubes differing only in one form's bounds when their union
        along that form is a single interval."""
        form_keys: List[tuple] = []
        seen_k = set()
        for c in cubes:
            for e in c.groups_view:
                if e[0] not in seen_k:
                    seen_k.add(e[0])
                    form_keys.append(e[0])
        result = cubes
        for fk in form_keys:
            if len(result) <= 1:
                break
            buckets: Dict[tuple, list] = {}
            order: List[tuple] = []
            passthrough: List[Cube] = []
            for c in result:
                target = None
                for e in c.groups_view:
                    if e[0] == fk:
                        target = e
                        break
                if target is not None and target[5]:
                    passthrough.append(c)  # excluded points: not an interval
                    continue
                rest = tuple(_entry_sig(e) for e in c.groups_view if e[0] != fk)
                if rest not in buckets:
                    buckets[rest] = []
                    order.append(rest)
                if target is None:
                    iv = (None, None)
                elif target[4] is not None:  # pin
                    iv = ((target[4], False), (target[4], False))
                else:
                    iv = (target[3], target[2])  # (lower, upper)
                buckets[rest].append((iv, target, c))
            new: List[Cube] = list(passthrough)
            for rest in order:
                items = buckets[rest]
                if len(items) == 1:
                    new.append(items[0][2])
                    continue
                items.sort(key=cmp_to_key(lambda a, b: _iv_start_cmp(a[0], b[0])))
                merged = [items[0][0]]
                for iv, _t, _c in items[1:]:
                    j = _iv_join_or_none(merged[-1], iv)
                    if j is None:
                        merged.append(iv)
                    else:
                        merged[-1] = j
                if len(merged) == len(items):
                    new.extend(c for _iv, _t, c in items)
                    continue
                form = next((t[1] for _iv, t, _c in items if t is not None), None)
                rest_entries = [
                    e for e in items[0][2].groups_view if e[0] != fk
                ]
                for lo, hi in merged:
                    lt, le, eq, ne = _terms_from_entries(rest_entries)
                    if form is None or (lo is None and hi is None):
                        pass  # no constraint left on this form
                    elif lo is not None and hi is not None and lo[0].compare(hi[0]) == 0:
                        eq.append(form - LinearTerm.of_const(lo[0]))
                    else:
                        if hi is not None:
                            (lt if hi[1] else le).append(
                                form - LinearTerm.of_const(hi[0])
                            )
                        if lo is not None:
                            (lt if lo[1] else le).append(
                                LinearTerm.of_const(lo[0]) - form
                            )
                    c2 = Cube.of(lt, le, eq, ne)
                    if c2 is not None:
                        new.append(c2)
            result = new
        return result


def eliminate_exists(v: Var, cube: Cube, structure: StructureSpec = PURE_Q) -> QfFormula:
    """Eliminate exists-v from a single cube. Standalone entry point."""
    elim = Eliminator(structure)
    rs = elim._exists_cube(v, cube)
    return QfFormula(make_or([r.to_formula() for r in rs]))


def eliminate_all(
    f: Formula,
    structure: StructureSpec = PURE_Q,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> QfFormula:
    elim = Eliminator(structure, max_nodes)
    return QfFormula(elim.run(f))


def decide(
    sentence: Formula,
    structure: StructureSpec = PURE_Q,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> bool:
    loose = free_vars(sentence)
    if loose:
        names = ", ".join(sorted(v.name for v in loose))
        raise NotASentenceError(f"free variables present: {names}")
    qf = eliminate_all(sentence, structure, max_nodes)
    return evaluate(qf, {})


def evaluate(f, assignment) -> bool:
    """Truth of a quantifier-free formula under a total assignment."""
    if isinstance(f, QfFormula):
        f = f.formula
    return _eval(f, assignment)


def _eval(f: Formula, sigma) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Lt0):
        return f.term.evaluate(sigma).sign() < 0
    if isinstance(f, Eq0):
        return f.term.evaluate(sigma).sign() == 0
    if isinstance(f, PredAtom):
        raise PredicateLeakError(f"predicate {f.name!r} in evaluation")
    if isinstance(f, Not):
        return not _eval(f.body, sigma)
    if isinstance(f, And):
        return all(_eval(a, sigma) for a in f.args)
    if isinstance(f, Or):
        return any(_eval(a, sigma) for a in f.args)
    if isinstance(f, Implies):
        return (not _eval(f.lhs, sigma)) or _eval(f.rhs, sigma)
    raise NotQuantifierFreeError("evaluate requires a quantifier-free formula")


def sample_point(
    f: Formula,
    structure: StructureSpec = PURE_Q,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> Optional[Scalar]:
    """A domain element satisfying f (one free variable), or None.

    Deterministic: picks from the leftmost component of the normalized set.
    """
    from . import sets  # local import; sets builds on this module

    d = sets.normalize(f, structure, max_nodes=max_nodes)
    return sets.pick_point(d)
