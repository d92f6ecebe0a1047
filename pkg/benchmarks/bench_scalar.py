"""Compare the compiled scalar kernels against the pure-Python fallback.

Each workload runs in a fresh subprocess with OAGKIT_BACKEND pinned, so the
two implementations are measured under identical import-time conditions.
Usage: python3 benchmarks/bench_scalar.py [--scale N] [--repeat N]
"""

import argparse
import json
import os
import statistics
import subprocess
import sys
import time


def w_rational_arith(scale: int) -> int:
    from oagkit.scalar import Rational

    acc = Rational(0)
    for k in range(1, scale):
        acc = acc + Rational(k, k + 1) * Rational(k + 2, k) - Rational(1, k + 1)
    # force normalization of a wide fraction at the end
    return len(str(acc))


def w_quad_compare(scale: int) -> int:
    from oagkit.scalar import QuadScalar, Rational, compare

    # convergents of sqrt(2) give near-tie comparisons, the worst case
    vals = []
    num, den = 1, 1
    for k in range(40):
        num, den = num + 2 * den, num + den
        vals.append(QuadScalar(Rational(num, den), Rational((-1) ** k), 2))
    hits = 0
    for _ in range(scale):
        for a in vals:
            for b in vals:
                if compare(a, b) < 0:
                    hits += 1
    return hits


def w_qe_decide(scale: int) -> int:
    from oagkit.parser import parse_formula
    from oagkit.qe import decide

    sentences = [
        "A x A y (x < y -> E u (x < u & u < y))",
        "E x E y (x < y & 2*x = y + 1 & x < 4)",
        "A x E y (y < x & ~(3*y = x))",
        "E x (x < 7/2 & 3 < x)",
        "A a E b A c (a < c -> b < c)",
    ]
    parsed = [parse_formula(s) for s in sentences]
    n = 0
    for _ in range(scale):
        for f in parsed:
            n += int(decide(f))
    return n


WORKLOADS = {
    "rational-arith": (w_rational_arith, 20000),
    "quad-compare": (w_quad_compare, 30),
    "qe-decide": (w_qe_decide, 40),
}


def run_worker(name: str, scale: int) -> None:
    from oagkit.scalar import BACKEND

    fn, base = WORKLOADS[name]
    start = time.perf_counter()
    sink = fn(base * scale)
    elapsed = time.perf_counter() - start
    print(json.dumps({"backend": BACKEND, "seconds": elapsed, "sink": sink}))


def time_backend(backend: str, name: str, scale: int, repeat: int) -> float:
    env = dict(os.environ, OAGKIT_BACKEND=backend)
    times = []
    sinks = set()
    for _ in range(repeat):
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__),
             "--worker", name, "--scale", str(scale)],
            env=env, capture_output=True, text=True, check=True,
            cwd=os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
        )
        rec = json.loads(out.stdout)
        if rec["backend"] != backend:
            raise SystemExit(f"backend {backend!r} unavailable, got {rec['backend']!r}")
        times.append(rec["seconds"])
        sinks.add(rec["sink"])
    if len(sinks) != 1:
        raise SystemExit(f"{name}: nondeterministic result across runs: {sinks}")
    return statistics.median(times)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scale", type=int, default=1, help="workload multiplier")
    ap.add_argument("--repeat", type=int, default=3, help="runs per measurement")
    ap.add_argument("--worker", choices=sorted(WORKLOADS), help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.worker:
        run_worker(args.worker, args.scale)
        return 0

    rows = []
    for name in WORKLOADS:
        py = time_backend("python", name, args.scale, args.repeat)
        cc = time_backend("c", name, args.scale, args.repeat)
        rows.append((name, py, cc))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'python':>10}  {'compiled':>10}  {'speedup':>7}")
    for name, py, cc in rows:
        print(
            f"{name:<{width}}  {py * 1000:>8.1f}ms  {cc * 1000:>8.1f}ms  "
            f"{py / cc:>6.2f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
