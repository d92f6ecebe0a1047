"""Concrete model descriptions: the pure rationals, discrete-range expansions,
and irrational-cut expansions.

Quantifiers always range over the rationals. A declared radicand only licenses
sqrt constants inside formulas and cut predicates; it never widens the domain.
That asymmetry is what makes an irrational cut a definable gap.
"""

import os
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .errors import (
    DomainMismatchError,
    ResourceLimitError,
    StructureFormatError,
    UnknownPredicateError,
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
    make_or,
)
from .scalar import (
    QuadScalar,
    Scalar,
    is_rational_scalar,
    parse_scalar,
)
from .terms import LinearTerm

DEFAULT_RANGE_CAP = 64


@dataclass(frozen=True)
class DiscreteRange:
    """Predicate true exactly on the integer points 0..n."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise StructureFormatError("discrete range bound must be >= 0")


@dataclass(frozen=True)
class CutBelow:
    """Predicate true exactly below an irrational threshold."""

    value: QuadScalar

    def __post_init__(self):
        if self.value.is_rational():
            raise StructureFormatError("cut threshold must be irrational")


PredSemantics = Union[DiscreteRange, CutBelow]


@dataclass(frozen=True)
class StructureSpec:
    id: str
    radicand: Optional[int]
    preds: Tuple[Tuple[str, PredSemantics], ...] = ()
    range_cap: int = DEFAULT_RANGE_CAP

    def __post_init__(self):
        names = [name for name, _ in self.preds]
        if len(names) != len(set(names)):
            raise StructureFormatError("duplicate predicate name")
        if self.radicand is not None:
            QuadScalar(0, 1, self.radicand)  # validates square-free 2..97
        for name, sem in self.preds:
            if isinstance(sem, CutBelow) and sem.value.radicand != self.radicand:
                raise StructureFormatError(
                    f"cut predicate {name!r} uses radicand {sem.value.radicand}, "
                    f"structure declares {self.radicand}"
                )

    def pred(self, name: str) -> PredSemantics:
        for n, sem in self.preds:
            if n == name:
                return sem
        raise UnknownPredicateError(f"predicate {name!r} not in structure {self.id!r}")

    def pred_names(self):
        return tuple(name for name, _ in self.preds)


PURE_Q = StructureSpec("Q", None)


def in_domain(x: Scalar, s: StructureSpec) -> bool:
    """Quantification-domain membership; always the rationals (see module doc)."""
    return is_rational_scalar(x)


def expand_pred(name: str, t: LinearTerm, s: StructureSpec) -> Formula:
    sem = s.pred(name)
    if isinstance(sem, DiscreteRange):
        if sem.n > s.range_cap:
            raise ResourceLimitError(
                f"discrete range {sem.n} exceeds cap {s.range_cap}"
            )
        return make_or(
            [Eq0(t - LinearTerm.of_const(k)) for k in range(sem.n + 1)]
        )
    return Lt0(t - LinearTerm.of_const(sem.value))


def _check_const(t: LinearTerm, s: StructureSpec) -> None:
    c = t.const
    if isinstance(c, QuadScalar) and not c.is_rational() and c.radicand != s.radicand:
        raise DomainMismatchError(
            f"constant with radicand {c.radicand} not licensed by structure {s.id!r}"
        )


def bind_structure(f: Formula, s: StructureSpec) -> Formula:
    """Expand every predicate atom and validate constants against s."""
    if isinstance(f, PredAtom):
        _check_const(f.term, s)
        return expand_pred(f.name, f.term, s)
    if isinstance(f, (Lt0, Eq0)):
        _check_const(f.term, s)
        return f
    if isinstance(f, Not):
        return Not(bind_structure(f.body, s))
    if isinstance(f, And):
        return And(tuple(bind_structure(a, s) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(bind_structure(a, s) for a in f.args))
    if isinstance(f, Implies):
        return Implies(bind_structure(f.lhs, s), bind_structure(f.rhs, s))
    if isinstance(f, (Exists, Forall)):
        return type(f)(f.var, bind_structure(f.body, s))
    return f


def parse_structure(
    text: str, struct_id: str = "anonymous", range_cap: int = DEFAULT_RANGE_CAP
) -> StructureSpec:
    radicand = None
    domain_seen = False
    preds = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        def bad(msg):
            raise StructureFormatError(f"{struct_id}:{lineno}: {msg}")

        if line.startswith("pred"):
            head, sep, body = line.partition(":")
            if not sep:
                bad("predicate line needs ':'")
            fields = head.split()
            if len(fields) != 2 or fields[0] != "pred":
                bad("expected 'pred NAME : ...'")
            name = fields[1]
            spec = body.split(None, 1)
            if not spec:
                bad("missing predicate semantics")
            if spec[0] == "range":
                if len(spec) != 2 or not spec[1].strip().isdigit():
                    bad("expected 'range N'")
                n = int(spec[1])
                if n > range_cap:
                    raise ResourceLimitError(
                        f"{struct_id}:{lineno}: range {n} exceeds cap {range_cap}"
                    )
                preds.append((name, DiscreteRange(n)))
            elif spec[0] == "cut":
                if len(spec) != 2:
                    bad("expected 'cut VALUE'")
                try:
                    value = parse_scalar(spec[1])
                except (ValueError, DomainMismatchError) as exc:
                    bad(str(exc))
                if is_rational_scalar(value):
                    bad("cut threshold must be irrational")
                if radicand is None:
                    radicand = value.radicand
                preds.append((name, CutBelow(value)))
            else:
                bad(f"unknown predicate kind {spec[0]!r}")
        elif "=" in line:
            key, _, val = line.partition("=")
            key = key.strip()
            val = val.strip()
            if key == "domain":
                if val != "Q":
                    bad(f"unsupported domain {val!r}; only Q")
                domain_seen = True
            elif key == "radicand":
                if not val.isdigit():
                    bad("radicand must be a positive integer")
                radicand = int(val)
            else:
                bad(f"unknown key {key!r}")
        else:
            bad(f"unrecognized line {line!r}")
    if not domain_seen:
        raise StructureFormatError(f"{struct_id}: missing 'domain = Q' line")
    return StructureSpec(struct_id, radicand, tuple(preds), range_cap)


def load_structure(path: str, range_cap: int = DEFAULT_RANGE_CAP) -> StructureSpec:
    if path == "Q":
        return PURE_Q
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    struct_id = os.path.splitext(os.path.basename(path))[0]
    return parse_structure(text, struct_id, range_cap)
