"""Regenerate the shipped corpus.

Every expected verdict here is fixed by construction or by the underlying
mathematics (rational cuts have rational least upper bounds, irrational cuts
do not, finite unions of points are pseudo-finite, open-interval families of
width w need about 1/w fibers, and so on). The generator never consults the
decision engine for a label, so a corpus failure always points at the engine
rather than at the corpus.

Usage: python3 scripts/gen_corpus.py [--root corpus]
"""

import argparse
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "tests"))

from oagkit.formulas import And, Eq0, Exists, Lt0, Not, Or
from oagkit.printer import print_formula
from oagkit.scalar import Rational
from oagkit.terms import LinearTerm, Var

from gen import random_term


def write(root, sub, name, header, body):
    d = os.path.join(root, sub)
    os.makedirs(d, exist_ok=True)
    keys = " ".join(f"{k}={v}" for k, v in header)
    with open(os.path.join(d, name), "w", encoding="utf-8") as fh:
        fh.write(f"# {keys}\n{body}\n")


def emit_structures(root):
    d = os.path.join(root, "structures")
    os.makedirs(d, exist_ok=True)
    with open(os.path.join(d, "qsqrt2.struct"), "w", encoding="utf-8") as fh:
        fh.write("domain = Q\nradicand = 2\npred C : cut sqrt(2)\n")
    for n in range(17):
        with open(os.path.join(d, f"qn{n}.struct"), "w", encoding="utf-8") as fh:
            fh.write(f"domain = Q\npred D : range {n}\n")


# Predicate-free induction instances over the rationals. Divisible dense
# order makes every one of these true; the suite asserts exactly that.
DCI_Q = [
    "v < 5",
    "v < -3",
    "v < 1/2",
    "0 < v",
    "v = 2",
    "v = -1/3",
    "~(v = 0)",
    "~(v < 0)",
    "v <= 7/2",
    "v >= 1",
    "v < 1 | v < 2",
    "v < 1 & v < 2",
    "v < 1 | 3 < v",
    "v < 1 & 3 < v",
    "0 < v & v < 1",
    "0 <= v & v <= 1",
    "v = 0 | v = 1 | v = 2",
    "~(v = 1/2) & v < 5",
    "v < w",
    "w < v",
    "v <= w",
    "v = w",
    "~(v = w)",
    "v < 2*w + 1",
    "3*v < w - 2",
    "v + w < 1",
    "v - w < u",
    "v < w & v < u",
    "v < w | v < u",
    "w < v -> v < w + 1",
    "v < w -> v < u",
    "(v < w & w < u) -> v < u",
    "E s (v < s & s < w)",
    "E s (v < s)",
    "A s (s < v -> s < v + 1)",
    "A s (s < v -> s < w) | v < w",
    "E s (v = 2*s)",
    "E s (s < v & w < s)",
    "A s (v < s | s < w)",
    "1/2*v < w",
    "2*v + 3*w < u + 1",
    "v < 1/3 & ~(v = 0)",
    "v < w | v = w",
    "~(v < w)",
    "(0 < v -> v < w) & (v <= 0 -> v < 1)",
]


def emit_dci_q(root, rng):
    for i, body in enumerate(DCI_Q):
        write(root, "dci_q", f"d{i:03d}.fml", [("check", "dci"), ("var", "v"), ("expect", "true")], body)
    # A few generator-random instances on top of the fixed list.
    v, w = Var("v"), Var("w")
    n = 0
    while n < 8:
        atoms = []
        for _ in range(rng.randint(2, 4)):
            t = random_term(rng, [v, w])
            atoms.append(rng.choice([Lt0(t), Eq0(t), Not(Lt0(t)), Not(Eq0(t))]))
        f = Or((And(tuple(atoms[:2])),) + tuple(atoms[2:])) if len(atoms) > 2 else And(tuple(atoms))
        if v not in {u for a in atoms for u in _vars_of(a)}:
            continue
        write(
            root,
            "dci_q",
            f"r{n:03d}.fml",
            [("check", "dci"), ("var", "v"), ("expect", "true")],
            print_formula(f),
        )
        n += 1


def _vars_of(atom):
    t = atom.body.term if isinstance(atom, Not) else atom.term
    return set(t.vars())


def emit_dci_qn(root):
    shapes = ["D(v)", "D(v) & v < w", "D(v) | v < 0", "D(2*v)", "~D(v) & v < 3"]
    for n in range(17):
        st = f"../structures/qn{n}.struct"
        for j, body in enumerate(shapes[: 2 if n % 4 else 5]):
            write(
                root,
                "dci_qn",
                f"n{n:02d}_{j}.fml",
                [("check", "dci"), ("var", "v"), ("structure", st), ("expect", "true")],
                body,
            )


# Cut variants over the sqrt(2) structure: each defines a downward-closed
# set with an irrational supremum, so the audit reports a gap and the
# induction instance fails. The rational twins put the supremum back in the
# domain, and both verdicts flip.
GAP_IRRATIONAL = [
    "C(x)",
    "C(2*x)",
    "C(4*x)",
    "C(x + 1)",
    "C(x - 2)",
    "~C(-x)",
    "C(2*x + 1)",
]
GAP_RATIONAL = [
    "x < 3/2",
    "2*x < 3/2",
    "4*x < 3/2",
    "x + 1 < 3/2",
    "x - 2 < 3/2",
    "~(-x < 3/2)",
    "2*x + 1 < 3/2",
]


def emit_gap(root):
    st = "../structures/qsqrt2.struct"
    for i, body in enumerate(GAP_IRRATIONAL):
        write(root, "gap", f"g{i:02d}_gap.fml", [("check", "gap"), ("structure", st), ("expect", "gap")], body)
        write(root, "gap", f"g{i:02d}_dci.fml", [("check", "dci"), ("var", "x"), ("structure", st), ("expect", "false")], body)
    for i, body in enumerate(GAP_RATIONAL):
        write(root, "gap", f"q{i:02d}_gap.fml", [("check", "gap"), ("expect", "proper_cut_with_lub")], body)
        write(root, "gap", f"q{i:02d}_dci.fml", [("check", "dci"), ("var", "x"), ("expect", "true")], body)
    write(root, "gap", "z00_empty.fml", [("check", "gap"), ("expect", "not_a_cut")], "x < x")
    write(root, "gap", "z01_full.fml", [("check", "gap"), ("expect", "whole_group")], "x = x")
    write(root, "gap", "z02_upward.fml", [("check", "gap"), ("expect", "not_a_cut")], "0 < x")
    write(root, "gap", "z03_point.fml", [("check", "gap"), ("expect", "not_a_cut")], "x = 0")


# Downward-closed instances whose cut (if any) lies inside (0,1), so the
# bounded and unbounded schemas must agree on [0,1].
BCI_PAIRS = [
    ("C(2*x)", "../structures/qsqrt2.struct", "false"),
    ("C(3*x)", "../structures/qsqrt2.struct", "false"),
    ("C(4*x)", "../structures/qsqrt2.struct", "false"),
    ("C(2*x) | x < 0", "../structures/qsqrt2.struct", "false"),
    ("C(x) & x < 1/4", "../structures/qsqrt2.struct", "true"),
    ("x < 1/2", "Q", "true"),
    ("x < 9/10", "Q", "true"),
    ("x < 5", "Q", "true"),
    ("x < 0 | x < 1/4", "Q", "true"),
]


def emit_bci_pairs(root):
    for i, (body, st, expect) in enumerate(BCI_PAIRS):
        hdr = [("check", "dci"), ("var", "x")]
        if st != "Q":
            hdr.append(("structure", st))
        write(root, "bci_pairs", f"p{i:02d}_dci.fml", hdr + [("expect", expect)], body)
        hdr2 = [("check", "bci"), ("var", "x"), ("from", "0"), ("to", "1")]
        if st != "Q":
            hdr2.append(("structure", st))
        write(root, "bci_pairs", f"p{i:02d}_bci.fml", hdr2 + [("expect", expect)], body)


# (family body, symmetric width or None, expected corpus verdict)
COVERS = [
    ("a - 1/4 < x & x < a + 1/4", "1/2", "verified"),
    ("a - 1/8 < x & x < a + 1/8", "1/4", "verified"),
    ("a - 1/16 < x & x < a + 1/16", "1/8", "verified"),
    ("a - 1/2 < x & x < a + 1/2", "1", "verified"),
    ("a < x", None, "verified"),
    ("x < a", None, "verified"),
    ("a - 1/3 < x & x < a + 1/6", None, "verified"),
    ("a - 1/16 < x & x < a + 1/4", None, "verified"),
    ("2*a - 1/4 < x & x < 2*a + 1/4", None, "verified"),
    ("(a - 1/4 < x & x < a + 1/4) | (a + 1/2 < x & x < a + 1)", None, "verified"),
    ("a < x & x < a + 1/2", None, "verified"),
]
NON_COVERS = [
    ("0 < a & x - x < a - a", "rejected"),
    ("a - 1/4 < x & x < a + 1/4 & x < 1/2", "rejected"),
    ("a - 1/4 <= x & x <= a + 1/4", "rejected"),
    ("x = a", "rejected"),
]


def _cap_for_width(w: str) -> int:
    num, _, den = w.partition("/")
    wq = Rational(int(num), int(den or "1"))
    # ceil(1/w) + 1 with w = num/den
    inv_num, inv_den = wq.den, wq.num
    return -(-inv_num // inv_den) + 1


def emit_covers(root):
    for i, (body, width, expect) in enumerate(COVERS):
        hdr = [("check", "subcover"), ("param", "a"), ("point", "x"), ("from", "0"), ("to", "1")]
        if width is not None:
            hdr.append(("max_params", str(_cap_for_width(width))))
        write(root, "covers", f"c{i:02d}.fml", hdr + [("expect", expect)], body)
    for i, (body, expect) in enumerate(NON_COVERS):
        hdr = [("check", "subcover"), ("param", "a"), ("point", "x"), ("from", "0"), ("to", "1")]
        write(root, "covers", f"x{i:02d}.fml", hdr + [("expect", expect)], body)
    write(
        root,
        "covers",
        "a00_audit.fml",
        [("check", "audit"), ("param", "a"), ("point", "x"), ("role", "open_cover"), ("from", "0"), ("to", "1"), ("expect", "true")],
        "a - 1/4 < x & x < a + 1/4",
    )
    write(
        root,
        "covers",
        "a01_audit.fml",
        [("check", "audit"), ("param", "t"), ("point", "x"), ("role", "exhaustion"), ("expect", "false")],
        "x = 0 | x = t",
    )
    write(
        root,
        "covers",
        "a02_audit.fml",
        [("check", "audit"), ("param", "t"), ("point", "x"), ("role", "exhaustion"), ("structure", "../structures/qn16.struct"), ("expect", "true")],
        "D(4*x)",
    )


def emit_compact(root):
    grid_fam = "D(4*a) & a - 3/8 < x & x < a + 3/8"
    width_fam = "a - 1/4 < x & x < a + 1/4"
    st16 = [("structure", "../structures/qn16.struct")]
    base = [("check", "compact"), ("param", "a"), ("point", "x"), ("exh_param", "t"), ("exh_point", "x"), ("from", "0"), ("to", "1")]
    write(root, "compact", "k00_grid.fml", base + st16 + [("expect", "verified")], grid_fam + "\n---\nD(4*x)")
    write(root, "compact", "k01_fine.fml", base + st16 + [("expect", "verified")], grid_fam + "\n---\nD(16*x)")
    write(root, "compact", "k02_coarse.fml", base + st16 + [("expect", "insufficient")], grid_fam + "\n---\nD(x)")
    write(root, "compact", "k03_point.fml", base + [("expect", "insufficient")], width_fam + "\n---\nx = 0")
    write(root, "compact", "k04_undirected.fml", base + [("expect", "rejected")], width_fam + "\n---\nx = t")


def emit_pf(root):
    entries = []  # (body, structure or None, expect)
    # Finite sets: points, small unions, grids, demonstrably empty sets.
    for k in range(-3, 4):
        entries.append((f"x = {k}", None, "true"))
    for k in range(4):
        entries.append((f"x = {k} | x = {k} + 1/2", None, "true"))
    for k in range(3):
        entries.append((f"x = -{k + 1} | x = 0 | x = {k + 1}", None, "true"))
    entries.append(("x = 1/3 & x < 2", None, "true"))
    entries.append(("0 < x & x < 1 & x = 1/2", None, "true"))
    entries.append(("x = 0 & x = 1", None, "true"))
    entries.append(("x < 0 & 0 < x", None, "true"))
    entries.append(("x = 2/3 | x = 5/7 | x = 1", None, "true"))
    for n in (4, 8, 16):
        entries.append(("D(x)", f"qn{n}", "true"))
    entries.append(("D(2*x)", "qn8", "true"))
    entries.append(("D(x) & x < 5", "qn16", "true"))
    entries.append(("D(x) & 3 < x", "qn16", "true"))
    entries.append(("D(x) | x = 1/2", "qn16", "true"))
    entries.append(("C(x) & ~C(x)", "qsqrt2", "true"))
    entries.append(("x = sqrt(2)", "qsqrt2", "true"))
    entries.append(("x = sqrt(2) | x = 1", "qsqrt2", "true"))
    entries.append(("2*x = 3 | 3*x = 1", None, "true"))
    # Infinite sets: intervals, rays, punctured lines, mixed unions.
    for k in range(-2, 3):
        entries.append((f"{k} < x & x < {k} + 1", None, "false"))
        entries.append((f"x < {k}", None, "false"))
        entries.append((f"{k} < x", None, "false"))
    entries.append(("x = x", None, "false"))
    entries.append(("~(x = 0)", None, "false"))
    entries.append(("0 < x & x < 1 & ~(x = 1/2)", None, "false"))
    entries.append(("0 <= x & x <= 1", None, "false"))
    entries.append(("0 < x & x <= 1", None, "false"))
    entries.append(("x <= 0 | 1 <= x", None, "false"))
    entries.append(("C(x)", "qsqrt2", "false"))
    entries.append(("~C(x)", "qsqrt2", "false"))
    entries.append(("D(x) | 0 < x & x < 1/2", "qn8", "false"))
    entries.append(("D(x) | x < 0", "qn4", "false"))
    for k in range(1, 15):
        entries.append((f"x < {k}/4 & -{k}/4 < x", None, "false"))
        entries.append((f"x = {k}/8 | {k} < x", None, "false"))
    for k in range(1, 10):
        entries.append((f"x = {k}/6 | x = {k}/6 + 1 | x = {k}/6 + 2", None, "true"))
        entries.append((f"~(x = {k}/6) & 0 < x & x < 3", None, "false"))
    for i, (body, st, expect) in enumerate(entries):
        hdr = [("check", "pf")]
        if st is not None:
            hdr.append(("structure", f"../structures/{st}.struct"))
        write(root, "pf_sets", f"s{i:03d}.fml", hdr + [("expect", expect)], body)


# (graph body, continuous?) on [0,1]; implication holds for every entry.
UCONT = [
    ("y = x", True),
    ("y = 2*x", True),
    ("y = 1/2*x + 1/4", True),
    ("y = 1 - x", True),
    ("y = -x", True),
    ("y = 0", True),
    ("y = 3/4", True),
    ("(x < 1/2 & y = 2*x) | (x >= 1/2 & y = 2 - 2*x)", True),
    ("(x < 1/2 & y = x) | (x >= 1/2 & y = 1/2)", True),
    ("(x < 1/4 & y = 0) | (x >= 1/4 & y = x - 1/4)", True),
    ("(x < 1/2 & y = 1/2 - x) | (x >= 1/2 & y = x - 1/2)", True),
    ("(x < 1/2 & y = 3*x) | (x >= 1/2 & y = 3 - 3*x)", True),
    ("(x < 1/2 & y = 0) | (x >= 1/2 & y = 1)", False),
    ("(x < 1/3 & y = 1/4) | (x >= 1/3 & y = 3/4)", False),
    ("(x < 1/2 & y = x) | (x >= 1/2 & y = x + 1/2)", False),
]


def emit_ucont(root):
    for i, (body, cont) in enumerate(UCONT):
        write(
            root,
            "ucont",
            f"u{i:02d}.fml",
            [
                ("check", "ucont"),
                ("from", "0"),
                ("to", "1"),
                ("expect_cont", "true" if cont else "false"),
                ("expect", "true"),
            ],
            body,
        )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--root", default=os.path.join(os.path.dirname(__file__), os.pardir, "corpus"))
    ap.add_argument("--seed", type=int, default=20260816)
    args = ap.parse_args()
    root = os.path.normpath(args.root)
    rng = random.Random(args.seed)
    emit_structures(root)
    emit_dci_q(root, rng)
    emit_dci_qn(root)
    emit_gap(root)
    emit_bci_pairs(root)
    emit_covers(root)
    emit_compact(root)
    emit_pf(root)
    emit_ucont(root)
    total = sum(len(files) for _, _, files in os.walk(root))
    print(f"corpus written under {root}: {total} files")


if __name__ == "__main__":
    main()
