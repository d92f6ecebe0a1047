"""Induction, completeness, compactness, and continuity checks.

Every operation here turns a claim about a definable set or family into
closed first-order sentences, decides them by quantifier elimination, and
packages the verdicts with witnesses into report objects. Nothing is proved
schematically: each call checks one instance.
"""

import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import (
    CoverAuditError,
    DegenerateIntervalError,
    InvalidCoverError,
    NotAFunctionError,
    OagError,
    ResourceLimitError,
)
from .formulas import (
    And,
    Eq0,
    Exists,
    Forall,
    Formula,
    Implies,
    Lt0,
    Not,
    Or,
    PredAtom,
    bound_vars,
    free_vars,
    fresh_var,
    make_and,
    make_or,
    substitute,
)
from .qe import DEFAULT_MAX_NODES, decide, sample_point
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
from .schemas import build_bci, build_dci
from .sets import DefinableSet1D, Point, cut_analysis, intervals, normalize
from .structures import PURE_Q, StructureSpec
from .terms import LinearTerm, Var

DEFAULT_MAX_STEPS = 10000

_v = LinearTerm.of_var
_c = LinearTerm.of_const


def _lt(l: LinearTerm, r: LinearTerm) -> Formula:
    return Lt0(l - r)


def _le(l: LinearTerm, r: LinearTerm) -> Formula:
    return Not(Lt0(r - l))


def _pos(v: Var) -> Formula:
    return Lt0(-_v(v))


def _abs_lt(t: LinearTerm, c: Var) -> Formula:
    # |t| < c without an absolute-value symbol
    return And((Lt0(t - _v(c)), Lt0(-t - _v(c))))


def _between(v: Var, a: Scalar, b: Scalar) -> Formula:
    return And((_le(_c(a), _v(v)), _le(_v(v), _c(b))))


def _ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def _param_order(phi: Formula, exclude: Var) -> List[Var]:
    """Free variables of phi except `exclude`, ordered by first occurrence.

    Within one atom the order is the term's own (alphabetical); across the
    formula it is a left-to-right walk. Deterministic, so reports are stable.
    """
    seen: List[Var] = []

    def walk(f: Formula, bound: frozenset):
        if isinstance(f, (Lt0, Eq0, PredAtom)):
            for u, _ in f.term.items:
                if u not in bound and u != exclude and u not in seen:
                    seen.append(u)
        elif isinstance(f, Not):
            walk(f.body, bound)
        elif isinstance(f, (And, Or)):
            for a in f.args:
                walk(a, bound)
        elif isinstance(f, Implies):
            walk(f.lhs, bound)
            walk(f.rhs, bound)
        elif isinstance(f, (Exists, Forall)):
            walk(f.body, bound | {f.var})

    walk(phi, frozenset())
    return seen


@dataclass(frozen=True)
class DciReport:
    check: str  # "dci" | "bci"
    instance: Formula
    structure: str
    verdict: bool
    counterexample_params: Optional[Tuple[Tuple[Var, Scalar], ...]]
    timing_ms: float


@dataclass(frozen=True)
class GapReport:
    structure: str
    formula: Formula
    definable_set: DefinableSet1D
    kind: str  # cut_analysis verdicts
    lub: Optional[Scalar]
    lub_sentence_true: bool
    timing_ms: float


@dataclass(frozen=True)
class DefinableFamily:
    """One-parameter family of subsets: fibers {x : formula(param, x)}."""

    formula: Formula
    param_var: Var
    point_var: Var

    def __post_init__(self):
        if self.param_var == self.point_var:
            raise InvalidCoverError("family needs distinct parameter and point variables")
        extra = free_vars(self.formula) - {self.param_var, self.point_var}
        if extra:
            names = ", ".join(sorted(v.name for v in extra))
            raise InvalidCoverError(f"family formula has stray free variables: {names}")

    def fiber(self, u: Scalar) -> Formula:
        return substitute(self.formula, self.param_var, _c(as_scalar(u)))


@dataclass(frozen=True)
class FamilyAudit:
    role: str  # "open_cover" | "exhaustion"
    all_fibers_open: bool
    covers: bool
    directed: Optional[bool]
    all_fibers_pseudo_finite: Optional[bool]
    sentences: Tuple[Tuple[str, Formula], ...]

    def passed(self) -> bool:
        if self.role == "open_cover":
            return self.all_fibers_open and self.covers
        # Coverage of the whole group is reported but not gated on: an
        # o-minimal carrier has no directed pseudo-finite family covering
        # everything, so requiring it would make every exhaustion unusable.
        return bool(self.directed) and bool(self.all_fibers_pseudo_finite)


@dataclass(frozen=True)
class SubcoverCertificate:
    a: Scalar
    b: Scalar
    family: DefinableFamily
    params: Tuple[Scalar, ...]
    verified: bool
    steps: int
    timing_ms: float


@dataclass(frozen=True)
class CompactnessResult:
    certificate: SubcoverCertificate
    exhaustion_audit: FamilyAudit
    t0: Optional[Scalar]  # None: no exhaustion fiber contains the subcover
    verified: bool
    timing_ms: float


@dataclass(frozen=True)
class UcontReport:
    structure: str
    continuous: bool
    uniformly_continuous: bool
    implication_holds: bool
    timing_ms: float


def _strip_foralls(sentence: Formula, count: int) -> Formula:
    f = sentence
    for _ in range(count):
        if not isinstance(f, Forall):
            raise OagError("schema sentence lost its parameter prefix")
        f = f.body
    return f


def _extract_params(
    sentence: Formula,
    params: List[Var],
    s: StructureSpec,
    max_nodes: int,
) -> Tuple[Tuple[Var, Scalar], ...]:
    """Parameter tuple falsifying the schema matrix, sampled left to right."""
    matrix = _strip_foralls(sentence, len(params))
    cur: Formula = Not(matrix)
    vals: List[Tuple[Var, Scalar]] = []
    for i, w in enumerate(params):
        g = cur
        for u in reversed(params[i + 1 :]):
            g = Exists(u, g)
        val = sample_point(g, s, max_nodes)
        if val is None:
            raise OagError("falsified schema yielded no parameter witness")
        vals.append((w, val))
        cur = substitute(cur, w, _c(val))
    if not decide(cur, s, max_nodes):
        raise OagError("extracted parameters failed the re-check")
    return tuple(vals)


def check_dci(
    phi: Formula,
    v: Var,
    s: StructureSpec = PURE_Q,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> DciReport:
    """Decide the definable-induction instance for phi along v."""
    start = time.perf_counter()
    params = _param_order(phi, exclude=v)
    sentence = build_dci(phi, v, params)
    verdict = decide(sentence, s, max_nodes)
    cx = None
    if not verdict:
        cx = _extract_params(sentence, params, s, max_nodes)
    return DciReport("dci", sentence, s.id, verdict, cx, _ms(start))


def check_bci(
    phi: Formula,
    v: Var,
    a: Scalar,
    b: Scalar,
    s: StructureSpec = PURE_Q,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> DciReport:
    """Decide the bounded-induction instance for phi along v on [a, b)."""
    start = time.perf_counter()
    a, b = as_scalar(a), as_scalar(b)
    if compare(a, b) >= 0:
        raise DegenerateIntervalError(
            f"need a < b, got [{format_scalar(a)}, {format_scalar(b)})"
        )
    params = _param_order(phi, exclude=v)
    sentence = build_bci(phi, v, _c(a), _c(b), params)
    verdict = decide(sentence, s, max_nodes)
    cx = None
    if not verdict:
        cx = _extract_params(sentence, params, s, max_nodes)
    return DciReport("bci", sentence, s.id, verdict, cx, _ms(start))


def completeness_audit(
    f: Formula,
    s: StructureSpec = PURE_Q,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> GapReport:
    """Cut-classify the set f defines and cross-check the verdict against the
    first-order least-upper-bound sentence."""
    start = time.perf_counter()
    d = normalize(f, s, max_nodes)
    cut = cut_analysis(d, s)

    fv = sorted(free_vars(f), key=lambda u: u.name)
    x = fv[0] if fv else Var("x")
    avoid = free_vars(f) | bound_vars(f) | {x}
    big = fresh_var(Var("L"), avoid)
    other = fresh_var(Var("M"), avoid | {big})

    def upper_bound(w: Var) -> Formula:
        return Forall(x, Implies(f, _le(_v(x), _v(w))))

    lub_sentence = Exists(
        big,
        And(
            (
                upper_bound(big),
                Forall(other, Implies(upper_bound(other), _le(_v(big), _v(other)))),
            )
        ),
    )
    lub_true = decide(lub_sentence, s, max_nodes)
    if cut.kind == "proper_cut_with_lub" and not lub_true:
        raise OagError("cut analysis found a lub the sentence denies")
    if cut.kind == "gap" and lub_true:
        raise OagError("cut analysis found a gap the sentence denies")
    return GapReport(s.id, f, d, cut.kind, cut.lub, lub_true, _ms(start))


def _openness_sentence(fam: DefinableFamily) -> Formula:
    avoid = free_vars(fam.formula) | bound_vars(fam.formula) | {fam.param_var, fam.point_var}
    eps = fresh_var(Var("eps"), avoid)
    y = fresh_var(Var("y"), avoid | {eps})
    x = fam.point_var
    phi_y = substitute(fam.formula, x, _v(y))
    near = And((Lt0(_v(x) - _v(eps) - _v(y)), Lt0(_v(y) - _v(x) - _v(eps))))
    inner = Forall(y, Implies(near, phi_y))
    return Forall(
        fam.param_var,
        Forall(x, Implies(fam.formula, Exists(eps, And((_pos(eps), inner))))),
    )


def _coverage_sentence(fam: DefinableFamily, a: Optional[Scalar], b: Optional[Scalar]) -> Formula:
    exists_fiber = Exists(fam.param_var, fam.formula)
    if a is None:
        return Forall(fam.point_var, exists_fiber)
    return Forall(fam.point_var, Implies(_between(fam.point_var, a, b), exists_fiber))


def _directedness_sentence(fam: DefinableFamily) -> Formula:
    avoid = free_vars(fam.formula) | bound_vars(fam.formula) | {fam.param_var, fam.point_var}
    t1 = fresh_var(Var("t"), avoid)
    t2 = fresh_var(Var("t"), avoid | {t1})
    f1 = substitute(fam.formula, fam.param_var, _v(t1))
    f2 = substitute(fam.formula, fam.param_var, _v(t2))
    return Forall(
        t1,
        Forall(
            t2,
            Implies(_lt(_v(t1), _v(t2)), Forall(fam.point_var, Implies(f1, f2))),
        ),
    )


def _pseudo_finite_fibers_sentence(fam: DefinableFamily) -> Formula:
    avoid = free_vars(fam.formula) | bound_vars(fam.formula) | {fam.param_var, fam.point_var}
    eps = fresh_var(Var("eps"), avoid)
    y = fresh_var(Var("y"), avoid | {eps})
    lo = fresh_var(Var("m"), avoid | {eps, y})
    hi = fresh_var(Var("M"), avoid | {eps, y, lo})
    x = fam.point_var
    psi = fam.formula
    psi_y = substitute(psi, x, _v(y))
    near = And((Lt0(_v(x) - _v(eps) - _v(y)), Lt0(_v(y) - _v(x) - _v(eps))))

    discrete = Forall(
        x,
        Implies(
            psi,
            Exists(
                eps,
                And(
                    (
                        _pos(eps),
                        Forall(
                            y,
                            Implies(And((near, Not(Eq0(_v(y) - _v(x))))), Not(psi_y)),
                        ),
                    )
                ),
            ),
        ),
    )
    closed = Forall(
        x,
        Implies(
            Not(psi),
            Exists(eps, And((_pos(eps), Forall(y, Implies(near, Not(psi_y)))))),
        ),
    )
    bounded = Exists(
        lo,
        Exists(hi, Forall(x, Implies(psi, And((_lt(_v(lo), _v(x)), _lt(_v(x), _v(hi))))))),
    )
    return Forall(fam.param_var, And((discrete, closed, bounded)))


def family_audit(
    fam: DefinableFamily,
    role: str,
    s: StructureSpec = PURE_Q,
    a: Optional[Scalar] = None,
    b: Optional[Scalar] = None,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> FamilyAudit:
    """Decide the audit sentences for a family used as an open cover of
    [a, b] or as a directed exhaustion of the whole group."""
    if role not in ("open_cover", "exhaustion"):
        raise ValueError(f"unknown family role: {role!r}")
    sentences: List[Tuple[str, Formula]] = []

    open_s = _openness_sentence(fam)
    sentences.append(("all_fibers_open", open_s))
    fibers_open = decide(open_s, s, max_nodes)

    if role == "open_cover":
        if a is None or b is None:
            raise DegenerateIntervalError("open_cover audit needs interval endpoints")
        a, b = as_scalar(a), as_scalar(b)
        if compare(a, b) >= 0:
            raise DegenerateIntervalError(
                f"need a < b, got [{format_scalar(a)}, {format_scalar(b)}]"
            )
        cov_s = _coverage_sentence(fam, a, b)
        sentences.append(("covers", cov_s))
        covers = decide(cov_s, s, max_nodes)
        return FamilyAudit("open_cover", fibers_open, covers, None, None, tuple(sentences))

    cov_s = _coverage_sentence(fam, None, None)
    sentences.append(("covers", cov_s))
    covers = decide(cov_s, s, max_nodes)
    dir_s = _directedness_sentence(fam)
    sentences.append(("directed", dir_s))
    directed = decide(dir_s, s, max_nodes)
    pf_s = _pseudo_finite_fibers_sentence(fam)
    sentences.append(("all_fibers_pseudo_finite", pf_s))
    pf = decide(pf_s, s, max_nodes)
    return FamilyAudit("exhaustion", fibers_open, covers, directed, pf, tuple(sentences))


def _pick_high(d: DefinableSet1D) -> Optional[Scalar]:
    """Witness biased toward the supremum of the rightmost component.

    The sweep's step length is the chosen fiber's reach, so a pick close to
    the best parameter keeps the greedy certificate near the optimal size.
    """
    if not d.components:
        return None
    comp = d.components[-1]
    if isinstance(comp, Point):
        return comp.value
    lo, hi = comp.lo, comp.hi
    if lo.kind == "ninf" and hi.kind == "pinf":
        return ZERO
    if hi.kind == "pinf":
        return rational_above(lo.value)
    if lo.kind == "ninf":
        return rational_below(hi.value)
    x = rational_between(lo.value, hi.value)
    for _ in range(4):
        x = rational_between(x, hi.value)
    return x


def extract_subcover(
    fam: DefinableFamily,
    a: Scalar,
    b: Scalar,
    s: StructureSpec = PURE_Q,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> SubcoverCertificate:
    """Greedy left-to-right sweep extracting a finite subcover of [a, b].

    Each round first tries to finish with one fiber; otherwise it computes
    the supremum of the reach extendable from r, targets a rational short of
    it, picks a parameter whose fiber covers that much, and advances r to the
    end of the picked fiber's component. The final parameter list is
    re-verified by a single coverage sentence.
    """
    start = time.perf_counter()
    a, b = as_scalar(a), as_scalar(b)
    if compare(a, b) >= 0:
        raise DegenerateIntervalError(
            f"need a < b, got [{format_scalar(a)}, {format_scalar(b)}]"
        )
    audit = family_audit(fam, "open_cover", s, a=a, b=b, max_nodes=max_nodes)
    if not audit.passed():
        raise CoverAuditError(audit)

    param, point = fam.param_var, fam.point_var
    avoid = free_vars(fam.formula) | bound_vars(fam.formula) | {param, point}
    ev = fresh_var(Var("e"), avoid)

    params: List[Scalar] = []
    r: Scalar = a
    steps = 0
    while True:
        steps += 1
        if steps > max_steps:
            raise ResourceLimitError(f"subcover sweep exceeded {max_steps} steps")

        # One fiber through b finishes the sweep.
        finish_body = Forall(point, Implies(_between(point, r, b), fam.formula))
        if decide(Exists(param, finish_body), s, max_nodes):
            u = sample_point(finish_body, s, max_nodes)
            if u is None:
                raise InvalidCoverError("finish fiber vanished during sampling")
            params.append(u)
            break

        # Supremum of the single-fiber reach from r.
        seg = And((_le(_c(r), _v(point)), Lt0(_v(point) - _v(ev))))
        ext = Exists(param, Forall(point, Implies(seg, fam.formula)))
        d_e = normalize(ext, s, max_nodes)
        ivs = intervals(d_e)
        if not ivs or ivs[0].lo.kind != "ninf" or ivs[0].hi.kind == "pinf":
            raise InvalidCoverError("extension region is not a downward cut")
        e_star = ivs[0].hi.value
        if compare(e_star, r) <= 0:
            raise InvalidCoverError(
                f"cover audit passed but the sweep stalls at {format_scalar(r)}"
            )
        e_t = rational_between(r, e_star)

        reach_body = Forall(
            point,
            Implies(And((_le(_c(r), _v(point)), Lt0(_v(point) - _c(e_t)))), fam.formula),
        )
        d_u = normalize(reach_body, s, max_nodes)
        u = _pick_high(d_u)
        if u is None:
            raise InvalidCoverError("reachable parameter region is empty")
        params.append(u)

        fiber_set = normalize(fam.fiber(u), s, max_nodes)
        comp = None
        for iv in intervals(fiber_set):
            lo_ok = iv.lo.kind == "ninf" or compare(iv.lo.value, r) < 0 or (
                iv.lo_closed and compare(iv.lo.value, r) == 0
            )
            hi_ok = iv.hi.kind == "pinf" or compare(r, iv.hi.value) < 0 or (
                iv.hi_closed and compare(r, iv.hi.value) == 0
            )
            if lo_ok and hi_ok:
                comp = iv
                break
        if comp is None:
            raise InvalidCoverError("picked fiber does not contain the reach point")
        if comp.hi.kind == "pinf" or compare(comp.hi.value, b) > 0:
            break  # b sits strictly inside this fiber
        new_r = comp.hi.value
        if compare(new_r, r) <= 0:
            raise InvalidCoverError("sweep failed to make progress")
        r = new_r

    cover = make_or([fam.fiber(u) for u in params])
    ver_sentence = Forall(point, Implies(_between(point, a, b), cover))
    verified = decide(ver_sentence, s, max_nodes)
    return SubcoverCertificate(a, b, fam, tuple(params), verified, steps, _ms(start))


def compactness_certificate(
    fam: DefinableFamily,
    exhaustion: DefinableFamily,
    a: Scalar,
    b: Scalar,
    s: StructureSpec = PURE_Q,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> CompactnessResult:
    """Subcover extraction followed by indexing the parameters inside one
    fiber of the exhaustion: t0 with params ⊆ exhaustion(t0, G), re-verified
    as a cover of [a, b]."""
    start = time.perf_counter()
    ex_audit = family_audit(exhaustion, "exhaustion", s, max_nodes=max_nodes)
    if not ex_audit.passed():
        raise CoverAuditError(ex_audit)
    cert = extract_subcover(fam, a, b, s, max_nodes, max_steps)

    member = make_and(
        [substitute(exhaustion.formula, exhaustion.point_var, _c(p)) for p in cert.params]
    )
    if not decide(Exists(exhaustion.param_var, member), s, max_nodes):
        return CompactnessResult(cert, ex_audit, None, False, _ms(start))
    t0 = sample_point(member, s, max_nodes)
    if t0 is None:
        raise OagError("exhaustion index vanished during sampling")

    indexed = substitute(exhaustion.formula, exhaustion.param_var, _c(t0))
    if exhaustion.point_var != fam.param_var:
        indexed = substitute(indexed, exhaustion.point_var, _v(fam.param_var))
    ver = Forall(
        fam.point_var,
        Implies(
            _between(fam.point_var, as_scalar(a), as_scalar(b)),
            Exists(fam.param_var, And((indexed, fam.formula))),
        ),
    )
    verified = decide(ver, s, max_nodes)
    return CompactnessResult(cert, ex_audit, t0, verified, _ms(start))


def uniform_continuity_check(
    graph: Formula,
    x: Var,
    y: Var,
    a: Scalar,
    b: Scalar,
    s: StructureSpec = PURE_Q,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> UcontReport:
    """For a definable function graph(x, y) on [a, b]: decide pointwise and
    uniform continuity, plus the implication between them."""
    start = time.perf_counter()
    a, b = as_scalar(a), as_scalar(b)
    if compare(a, b) >= 0:
        raise DegenerateIntervalError(
            f"need a < b, got [{format_scalar(a)}, {format_scalar(b)}]"
        )
    if x == y:
        raise NotAFunctionError("graph needs distinct argument and value variables")
    extra = free_vars(graph) - {x, y}
    if extra:
        names = ", ".join(sorted(v.name for v in extra))
        raise NotAFunctionError(f"graph has stray free variables: {names}")

    avoid = free_vars(graph) | bound_vars(graph) | {x, y}
    z = fresh_var(Var("z"), avoid)
    eps = fresh_var(Var("eps"), avoid | {z})
    delta = fresh_var(Var("delta"), avoid | {z, eps})
    x2 = fresh_var(Var("x"), avoid | {z, eps, delta})
    y1 = fresh_var(Var("y"), avoid | {z, eps, delta, x2})
    y2 = fresh_var(Var("y"), avoid | {z, eps, delta, x2, y1})

    functional = Forall(
        x,
        Implies(
            _between(x, a, b),
            Exists(
                y,
                And(
                    (
                        graph,
                        Forall(
                            z,
                            Implies(substitute(graph, y, _v(z)), Eq0(_v(z) - _v(y))),
                        ),
                    )
                ),
            ),
        ),
    )
    if not decide(functional, s, max_nodes):
        raise NotAFunctionError("graph is not single-valued on the interval")

    g_here = substitute(graph, y, _v(y1))
    g_there = substitute(substitute(graph, x, _v(x2)), y, _v(y2))
    # Single-valuedness was just verified, so the value pair is unique and
    # the existential phrasing is equivalent; it also eliminates much faster
    # because each branch pins y1 and y2 by equations.
    values_close = Exists(
        y1,
        Exists(y2, And((g_here, g_there, _abs_lt(_v(y2) - _v(y1), eps)))),
    )

    continuous_sentence = Forall(
        x,
        Implies(
            _between(x, a, b),
            Forall(
                eps,
                Implies(
                    _pos(eps),
                    Exists(
                        delta,
                        And(
                            (
                                _pos(delta),
                                Forall(
                                    x2,
                                    Implies(
                                        And(
                                            (
                                                _between(x2, a, b),
                                                _abs_lt(_v(x2) - _v(x), delta),
                                            )
                                        ),
                                        values_close,
                                    ),
                                ),
                            )
                        ),
                    ),
                ),
            ),
        ),
    )
    uniform_sentence = Forall(
        eps,
        Implies(
            _pos(eps),
            Exists(
                delta,
                And(
                    (
                        _pos(delta),
                        Forall(
                            x,
                            Forall(
                                x2,
                                Implies(
                                    And(
                                        (
                                            _between(x, a, b),
                                            _between(x2, a, b),
                                            _abs_lt(_v(x2) - _v(x), delta),
                                        )
                                    ),
                                    values_close,
                                ),
                            ),
                        ),
                    )
                ),
            ),
        ),
    )
    continuous = decide(continuous_sentence, s, max_nodes)
    uniformly = decide(uniform_sentence, s, max_nodes)
    return UcontReport(
        s.id,
        continuous,
        uniformly,
        (not continuous) or uniformly,
        _ms(start),
    )
