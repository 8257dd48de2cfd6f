"""Time the compiled kernels against the numpy fallback on the same inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from newton_zeta import _kernels_py

try:
    from newton_zeta import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def box_case():
    # a 3x3 generator block with a large cyclic group
    c = np.array([[1, 7, 3], [5, 2, 11], [13, 4, 1]], dtype=np.int64)
    d = np.array([60, 60, 42], dtype=np.int64)
    D = 420
    vmask = np.array([1, 1, 0], dtype=np.uint8)
    return (c, d, D, vmask, True)


def torus_case(p=101, d=3):
    # y^2 - x^3 + x*z and its three logarithmic derivatives over F_p
    g = next(a for a in range(2, p) if all(pow(a, (p - 1) // r, p) != 1 for r in _factors(p - 1)))
    exp_tab = np.array([pow(g, k, p) for k in range(p - 1)], dtype=np.int64)
    log = {int(v): k for k, v in enumerate(exp_tab)}
    exps = np.array([[0, 2, 0], [3, 0, 0], [1, 0, 1]], dtype=np.int64)
    coefs = [[1, p - 1, 1], [0, p - 3, 1], [2, 0, 0], [0, 0, 1]]
    logs = np.array([[log[c % p] if c % p else -1 for c in row] for row in coefs], dtype=np.int64)
    return (exps, logs, p, p, exp_tab, None)


def _factors(m):
    out, i = [], 2
    while i * i <= m:
        if m % i == 0:
            out.append(i)
            while m % i == 0:
                m //= i
        i += 1
    return out + ([m] if m > 1 else [])


def timed(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        res = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, res


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    cases = [("box_residues", "box_residues", box_case()), ("torus_scan", "torus_scan", torus_case())]
    print(f"{'kernel':14} {'numpy (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for label, name, inp in cases:
        tp, rp = timed(getattr(_kernels_py, name), inp, args.repeat)
        if compiled is None:
            print(f"{label:14} {tp:10.4f} {'n/a':>13} {'n/a':>8}")
            continue
        tc, rc = timed(getattr(compiled, name), inp, args.repeat)
        same = np.array_equal(np.asarray(rp), np.asarray(rc)) if not isinstance(rp, tuple) else tuple(rp) == tuple(rc)
        assert same, f"{label}: backends disagree"
        print(f"{label:14} {tp:10.4f} {tc:13.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
