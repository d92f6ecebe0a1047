"""Command-line front end.

Commands: decide, dci, bci, gap, subcover, compact, ucont, audit, corpus.
Exit codes: 0 claim holds, 1 claim fails, 2 error, 3 resource limit hit while
running a corpus. JSON output has sorted keys and, unless --timings is given,
a null timing_ms, so identical inputs produce byte-identical reports.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import CoverAuditError, OagError, ResourceLimitError
from .induction import (
    DEFAULT_MAX_STEPS,
    DefinableFamily,
    check_bci,
    check_dci,
    compactness_certificate,
    completeness_audit,
    extract_subcover,
    family_audit,
    uniform_continuity_check,
)
from .parser import parse_formula
from .printer import print_formula
from .qe import DEFAULT_MAX_NODES, decide
from .scalar import Scalar, format_scalar, parse_scalar
from .sets import finite_points, is_pseudo_finite, normalize, render_set
from .structures import StructureSpec, load_structure
from .terms import Var

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2
EXIT_RESOURCE = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    structure_path: str
    fmt: str  # "text" | "json"
    max_nodes: int
    max_steps: int
    seed: int
    timings: bool


def _log(msg: str):
    if os.environ.get("OAG_LOG"):
        print(f"oagkit: {msg}", file=sys.stderr)


def _emit(cfg: RunConfig, report: Dict, text_lines: List[str]):
    if cfg.fmt == "json":
        out = dict(report)
        out["seed"] = cfg.seed
        if not cfg.timings:
            out["timing_ms"] = None
        elif "timing_ms" in out and out["timing_ms"] is not None:
            out["timing_ms"] = round(out["timing_ms"], 3)
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _verdict_exit(v: bool) -> int:
    return EXIT_TRUE if v else EXIT_FALSE


def _witness_map(pairs) -> Optional[Dict[str, str]]:
    if pairs is None:
        return None
    return {w.name: format_scalar(val) for w, val in pairs}


def _cmd_decide(cfg: RunConfig, s: StructureSpec, args) -> int:
    f = parse_formula(args.formula)
    verdict = decide(f, s, cfg.max_nodes)
    report = {
        "check": "decide",
        "structure": s.id,
        "instance": print_formula(f),
        "verdict": verdict,
        "timing_ms": None,
    }
    _emit(cfg, report, [f"verdict: {str(verdict).lower()}"])
    return _verdict_exit(verdict)


def _cmd_dci(cfg: RunConfig, s: StructureSpec, args) -> int:
    f = parse_formula(args.formula)
    rep = check_dci(f, Var(args.var), s, cfg.max_nodes)
    report = {
        "check": "dci",
        "structure": rep.structure,
        "instance": print_formula(rep.instance),
        "verdict": rep.verdict,
        "witness": _witness_map(rep.counterexample_params),
        "timing_ms": rep.timing_ms,
    }
    lines = [f"verdict: {str(rep.verdict).lower()}"]
    if rep.counterexample_params is not None:
        for w, val in rep.counterexample_params:
            lines.append(f"counterexample: {w.name} = {format_scalar(val)}")
    _emit(cfg, report, lines)
    return _verdict_exit(rep.verdict)


def _cmd_bci(cfg: RunConfig, s: StructureSpec, args) -> int:
    f = parse_formula(args.formula)
    a = parse_scalar(args.lo)
    b = parse_scalar(args.hi)
    rep = check_bci(f, Var(args.var), a, b, s, cfg.max_nodes)
    report = {
        "check": "bci",
        "structure": rep.structure,
        "instance": print_formula(rep.instance),
        "verdict": rep.verdict,
        "witness": _witness_map(rep.counterexample_params),
        "timing_ms": rep.timing_ms,
    }
    _emit(cfg, report, [f"verdict: {str(rep.verdict).lower()}"])
    return _verdict_exit(rep.verdict)


def _cmd_gap(cfg: RunConfig, s: StructureSpec, args) -> int:
    f = parse_formula(args.formula)
    rep = completeness_audit(f, s, cfg.max_nodes)
    report = {
        "check": "gap",
        "structure": rep.structure,
        "instance": print_formula(f),
        "verdict": rep.kind,
        "components": render_set(rep.definable_set),
        "witness": format_scalar(rep.lub) if rep.lub is not None else None,
        "lub_sentence_true": rep.lub_sentence_true,
        "timing_ms": rep.timing_ms,
    }
    lines = [f"verdict: {rep.kind}", f"set: {render_set(rep.definable_set)}"]
    if rep.lub is not None:
        lines.append(f"lub: {format_scalar(rep.lub)}")
    _emit(cfg, report, lines)
    return EXIT_TRUE if rep.kind == "gap" else EXIT_FALSE


def _family_from_args(formula: str, param: str, point: str) -> DefinableFamily:
    return DefinableFamily(parse_formula(formula), Var(param), Var(point))


def _cmd_audit(cfg: RunConfig, s: StructureSpec, args) -> int:
    fam = _family_from_args(args.family, args.param, args.point)
    a = parse_scalar(args.lo) if args.lo is not None else None
    b = parse_scalar(args.hi) if args.hi is not None else None
    rep = family_audit(fam, args.role, s, a=a, b=b, max_nodes=cfg.max_nodes)
    verdict = rep.passed()
    report = {
        "check": "audit",
        "structure": s.id,
        "instance": print_formula(fam.formula),
        "verdict": verdict,
        "all_fibers_open": rep.all_fibers_open,
        "covers": rep.covers,
        "directed": rep.directed,
        "all_fibers_pseudo_finite": rep.all_fibers_pseudo_finite,
        "timing_ms": None,
    }
    lines = [
        f"verdict: {str(verdict).lower()}",
        f"all_fibers_open: {str(rep.all_fibers_open).lower()}",
        f"covers: {str(rep.covers).lower()}",
    ]
    if rep.directed is not None:
        lines.append(f"directed: {str(rep.directed).lower()}")
        lines.append(f"all_fibers_pseudo_finite: {str(rep.all_fibers_pseudo_finite).lower()}")
    _emit(cfg, report, lines)
    return _verdict_exit(verdict)


def _cmd_subcover(cfg: RunConfig, s: StructureSpec, args) -> int:
    fam = _family_from_args(args.family, args.param, args.point)
    a = parse_scalar(args.lo)
    b = parse_scalar(args.hi)
    try:
        cert = extract_subcover(fam, a, b, s, cfg.max_nodes, cfg.max_steps)
    except CoverAuditError as e:
        report = {
            "check": "subcover",
            "structure": s.id,
            "instance": print_formula(fam.formula),
            "verdict": False,
            "audit_failed": True,
            "all_fibers_open": e.audit.all_fibers_open,
            "covers": e.audit.covers,
            "timing_ms": None,
        }
        _emit(cfg, report, ["verdict: false", "audit failed; extraction skipped"])
        return EXIT_FALSE
    report = {
        "check": "subcover",
        "structure": s.id,
        "instance": print_formula(fam.formula),
        "verdict": cert.verified,
        "params": [format_scalar(u) for u in cert.params],
        "steps": cert.steps,
        "timing_ms": cert.timing_ms,
    }
    lines = [
        f"verdict: {str(cert.verified).lower()}",
        f"params: [{', '.join(format_scalar(u) for u in cert.params)}]",
        f"steps: {cert.steps}",
    ]
    _emit(cfg, report, lines)
    return _verdict_exit(cert.verified)


def _cmd_compact(cfg: RunConfig, s: StructureSpec, args) -> int:
    fam = _family_from_args(args.family, args.param, args.point)
    exh = _family_from_args(args.exhaustion, args.exh_param, args.exh_point)
    a = parse_scalar(args.lo)
    b = parse_scalar(args.hi)
    try:
        res = compactness_certificate(fam, exh, a, b, s, cfg.max_nodes, cfg.max_steps)
    except CoverAuditError as e:
        report = {
            "check": "compact",
            "structure": s.id,
            "instance": print_formula(fam.formula),
            "verdict": False,
            "audit_failed": True,
            "audit_role": e.audit.role,
            "timing_ms": None,
        }
        _emit(cfg, report, ["verdict: false", f"{e.audit.role} audit failed"])
        return EXIT_FALSE
    report = {
        "check": "compact",
        "structure": s.id,
        "instance": print_formula(fam.formula),
        "verdict": res.verified,
        "witness": format_scalar(res.t0) if res.t0 is not None else None,
        "params": [format_scalar(u) for u in res.certificate.params],
        "steps": res.certificate.steps,
        "timing_ms": res.timing_ms,
    }
    lines = [f"verdict: {str(res.verified).lower()}"]
    if res.t0 is None:
        lines.append("no exhaustion fiber contains the extracted parameters")
    else:
        lines.append(f"t0: {format_scalar(res.t0)}")
    _emit(cfg, report, lines)
    return _verdict_exit(res.verified)


def _cmd_ucont(cfg: RunConfig, s: StructureSpec, args) -> int:
    graph = parse_formula(args.formula)
    a = parse_scalar(args.lo)
    b = parse_scalar(args.hi)
    rep = uniform_continuity_check(
        graph, Var(args.arg), Var(args.val), a, b, s, cfg.max_nodes
    )
    report = {
        "check": "ucont",
        "structure": rep.structure,
        "instance": print_formula(graph),
        "verdict": rep.implication_holds,
        "continuous": rep.continuous,
        "uniformly_continuous": rep.uniformly_continuous,
        "timing_ms": rep.timing_ms,
    }
    lines = [
        f"continuous: {str(rep.continuous).lower()}",
        f"uniformly_continuous: {str(rep.uniformly_continuous).lower()}",
        f"verdict: {str(rep.implication_holds).lower()}",
    ]
    _emit(cfg, report, lines)
    return _verdict_exit(rep.implication_holds)


# ---------------------------------------------------------------------------
# Corpus runner


def _parse_header(line: str) -> Dict[str, str]:
    if not line.startswith("#"):
        raise OagError("corpus file must start with a '# key=value ...' header")
    out: Dict[str, str] = {}
    for token in line.lstrip("#").split():
        key, sep, value = token.partition("=")
        if not sep:
            raise OagError(f"bad header token {token!r}")
        out[key] = value
    return out


def _split_corpus_body(body: str) -> Tuple[str, Optional[str]]:
    if "\n---\n" in body:
        first, second = body.split("\n---\n", 1)
        return first, second
    return body, None


def _scalar_or(h: Dict[str, str], key: str, default: str) -> Scalar:
    return parse_scalar(h.get(key, default))


def _run_corpus_entry(path: str, cfg: RunConfig, structures: Dict[str, StructureSpec]):
    """Returns (status, expect, got) with status in pass|fail|error|resource."""
    with open(path, "r", encoding="utf-8") as fh:
        content = fh.read()
    lines = content.splitlines()
    if not lines:
        raise OagError("empty corpus file")
    header = _parse_header(lines[0])
    body = "\n".join(lines[1:])
    check = header.get("check")
    expect = header.get("expect")
    if check is None:
        raise OagError("header missing check=")

    sp = header.get("structure", "Q")
    if sp not in structures:
        candidate = sp if sp == "Q" else os.path.join(os.path.dirname(path), sp)
        structures[sp] = load_structure(candidate)
    s = structures[sp]

    def bool_str(v: bool) -> str:
        return "true" if v else "false"

    if check == "decide":
        got = bool_str(decide(parse_formula(body), s, cfg.max_nodes))
    elif check == "dci":
        rep = check_dci(parse_formula(body), Var(header["var"]), s, cfg.max_nodes)
        got = bool_str(rep.verdict)
    elif check == "bci":
        rep = check_bci(
            parse_formula(body),
            Var(header["var"]),
            _scalar_or(header, "from", "0"),
            _scalar_or(header, "to", "1"),
            s,
            cfg.max_nodes,
        )
        got = bool_str(rep.verdict)
    elif check == "gap":
        got = completeness_audit(parse_formula(body), s, cfg.max_nodes).kind
    elif check == "pf":
        d = normalize(parse_formula(body), s, cfg.max_nodes)
        rep = is_pseudo_finite(d)
        finite_form = finite_points(d) is not None
        if rep.verdict != finite_form:
            return ("fail", expect, f"verdict {rep.verdict} vs finite-form {finite_form}")
        got = bool_str(rep.verdict)
    elif check == "subcover":
        first, _ = _split_corpus_body(body)
        fam = DefinableFamily(
            parse_formula(first), Var(header["param"]), Var(header["point"])
        )
        try:
            cert = extract_subcover(
                fam,
                _scalar_or(header, "from", "0"),
                _scalar_or(header, "to", "1"),
                s,
                cfg.max_nodes,
                cfg.max_steps,
            )
        except CoverAuditError:
            got = "rejected"
        else:
            got = "verified" if cert.verified else "unverified"
            cap = header.get("max_params")
            if got == "verified" and cap is not None and len(cert.params) > int(cap):
                return ("fail", expect, f"{len(cert.params)} params exceed cap {cap}")
    elif check == "compact":
        first, second = _split_corpus_body(body)
        if second is None:
            raise OagError("compact corpus file needs a '---' separated exhaustion")
        fam = DefinableFamily(
            parse_formula(first), Var(header["param"]), Var(header["point"])
        )
        exh = DefinableFamily(
            parse_formula(second), Var(header["exh_param"]), Var(header["exh_point"])
        )
        try:
            res = compactness_certificate(
                fam,
                exh,
                _scalar_or(header, "from", "0"),
                _scalar_or(header, "to", "1"),
                s,
                cfg.max_nodes,
                cfg.max_steps,
            )
        except CoverAuditError:
            got = "rejected"
        else:
            if res.t0 is None:
                got = "insufficient"
            else:
                got = "verified" if res.verified else "unverified"
    elif check == "ucont":
        rep = uniform_continuity_check(
            parse_formula(body),
            Var(header.get("arg", "x")),
            Var(header.get("val", "y")),
            _scalar_or(header, "from", "0"),
            _scalar_or(header, "to", "1"),
            s,
            cfg.max_nodes,
        )
        want_cont = header.get("expect_cont")
        if want_cont is not None and bool_str(rep.continuous) != want_cont:
            return ("fail", f"cont={want_cont}", f"cont={bool_str(rep.continuous)}")
        got = bool_str(rep.implication_holds)
    elif check == "audit":
        fam = DefinableFamily(
            parse_formula(body), Var(header["param"]), Var(header["point"])
        )
        role = header.get("role", "open_cover")
        a = _scalar_or(header, "from", "0") if role == "open_cover" else None
        b = _scalar_or(header, "to", "1") if role == "open_cover" else None
        rep = family_audit(fam, role, s, a=a, b=b, max_nodes=cfg.max_nodes)
        got = bool_str(rep.passed())
    else:
        raise OagError(f"unknown corpus check {check!r}")

    if expect is None:
        raise OagError("header missing expect=")
    return ("pass" if got == expect else "fail", expect, got)


def _cmd_corpus(cfg: RunConfig, args) -> int:
    root = args.dir
    if not os.path.isdir(root):
        print(f"error: not a directory: {root}", file=sys.stderr)
        return EXIT_ERROR
    files = sorted(
        f for f in os.listdir(root) if f.endswith(".fml")
    )
    if not files:
        print(f"error: no .fml files in {root}", file=sys.stderr)
        return EXIT_ERROR

    structures: Dict[str, StructureSpec] = {}
    rows = []
    counts = {"pass": 0, "fail": 0, "error": 0, "resource": 0}
    for name in files:
        path = os.path.join(root, name)
        try:
            status, expect, got = _run_corpus_entry(path, cfg, structures)
        except ResourceLimitError as e:
            status, expect, got = "resource", None, str(e)
        except (OagError, ValueError, KeyError) as e:
            status, expect, got = "error", None, f"{type(e).__name__}: {e}"
        counts[status] += 1
        rows.append({"name": name, "status": status, "expect": expect, "got": got})
        _log(f"{name}: {status}")

    verdict = counts["fail"] == 0 and counts["error"] == 0 and counts["resource"] == 0
    report = {
        "check": "corpus",
        "structure": os.path.basename(os.path.normpath(root)),
        "instance": None,
        "verdict": verdict,
        "files": rows,
        "passed": counts["pass"],
        "failed": counts["fail"],
        "errors": counts["error"],
        "resource": counts["resource"],
        "timing_ms": None,
    }
    lines = []
    for row in rows:
        if row["status"] == "pass":
            lines.append(f"PASS {row['name']}")
        else:
            lines.append(
                f"{row['status'].upper()} {row['name']}: expected {row['expect']}, got {row['got']}"
            )
    lines.append(
        f"{counts['pass']} passed, {counts['fail']} failed, "
        f"{counts['error']} errors, {counts['resource']} resource-limited"
    )
    _emit(cfg, report, lines)
    if counts["resource"]:
        return EXIT_RESOURCE
    if counts["error"]:
        return EXIT_ERROR
    if counts["fail"]:
        return EXIT_FALSE
    return EXIT_TRUE


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--structure", default="Q", help="structure file path, or Q")
    shared.add_argument("--format", choices=("text", "json"), default="text")
    shared.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    shared.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    shared.add_argument("--seed", type=int, default=0)
    shared.add_argument("--timings", action="store_true", help="real timing_ms in JSON")

    p = argparse.ArgumentParser(prog="oagkit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", parents=[shared], help="decide a sentence")
    d.add_argument("formula")

    for name in ("dci", "bci"):
        q = sub.add_parser(name, parents=[shared], help=f"check a {name} instance")
        q.add_argument("formula")
        q.add_argument("--var", required=True, help="induction variable")
        if name == "bci":
            q.add_argument("--from", dest="lo", default="0")
            q.add_argument("--to", dest="hi", default="1")

    g = sub.add_parser("gap", parents=[shared], help="cut/gap analysis of a set")
    g.add_argument("formula")

    a = sub.add_parser("audit", parents=[shared], help="audit a definable family")
    a.add_argument("--family", required=True)
    a.add_argument("--param", required=True)
    a.add_argument("--point", required=True)
    a.add_argument("--role", choices=("open_cover", "exhaustion"), default="open_cover")
    a.add_argument("--from", dest="lo", default=None)
    a.add_argument("--to", dest="hi", default=None)

    sc = sub.add_parser("subcover", parents=[shared], help="extract a finite subcover")
    sc.add_argument("--family", required=True)
    sc.add_argument("--param", required=True)
    sc.add_argument("--point", required=True)
    sc.add_argument("--from", dest="lo", required=True)
    sc.add_argument("--to", dest="hi", required=True)

    c = sub.add_parser("compact", parents=[shared], help="compactness certificate")
    c.add_argument("--family", required=True)
    c.add_argument("--param", required=True)
    c.add_argument("--point", required=True)
    c.add_argument("--exhaustion", required=True)
    c.add_argument("--exh-param", dest="exh_param", required=True)
    c.add_argument("--exh-point", dest="exh_point", required=True)
    c.add_argument("--from", dest="lo", required=True)
    c.add_argument("--to", dest="hi", required=True)

    u = sub.add_parser("ucont", parents=[shared], help="uniform continuity check")
    u.add_argument("formula", help="graph formula in two variables")
    u.add_argument("--arg", default="x", help="argument variable")
    u.add_argument("--val", default="y", help="value variable")
    u.add_argument("--from", dest="lo", required=True)
    u.add_argument("--to", dest="hi", required=True)

    co = sub.add_parser("corpus", parents=[shared], help="run a corpus directory")
    co.add_argument("dir")

    return p


_DISPATCH = {
    "decide": _cmd_decide,
    "dci": _cmd_dci,
    "bci": _cmd_bci,
    "gap": _cmd_gap,
    "audit": _cmd_audit,
    "subcover": _cmd_subcover,
    "compact": _cmd_compact,
    "ucont": _cmd_ucont,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.max_nodes <= 0 or args.max_steps <= 0:
        print("error: caps must be positive", file=sys.stderr)
        return EXIT_ERROR
    cfg = RunConfig(
        command=args.command,
        structure_path=args.structure,
        fmt=args.format,
        max_nodes=args.max_nodes,
        max_steps=args.max_steps,
        seed=args.seed,
        timings=args.timings,
    )
    try:
        if args.command == "corpus":
            return _cmd_corpus(cfg, args)
        s = load_structure(args.structure)
        _log(f"structure {s.id} loaded")
        return _DISPATCH[args.command](cfg, s, args)
    except OagError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
