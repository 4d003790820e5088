"""Compare the compiled sweep kernels against the pure-Python twins.

Run:  python benchmarks/bench_kernels.py [--full]

Both backends execute identical sweeps and must return identical
results; the table reports wall time and the speedup.  --full runs the
complete 3x3 exhaustive sweeps (the acceptance workload) instead of the
default trimmed slices.
"""

import argparse
import importlib
import time

from systema._kernels import _pure, op_tables
from systema.instances import resolve

try:
    from systema._kernels import _ext
except ImportError:
    _ext = None


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - t0


def row(label, pure_fn, ext_fn, *args, **kwargs):
    r_pure, t_pure = timed(pure_fn, *args, **kwargs)
    if ext_fn is None:
        print(f"{label:44s} pure {t_pure:8.3f}s   (no compiled backend)")
        return
    r_ext, t_ext = timed(ext_fn, *args, **kwargs)
    agree = "ok" if r_pure == r_ext else "MISMATCH"
    speedup = t_pure / t_ext if t_ext > 0 else float("inf")
    print(f"{label:44s} pure {t_pure:8.3f}s   ext {t_ext:8.3f}s   "
          f"x{speedup:7.1f}   results {agree}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--full", action="store_true",
                        help="run the complete 3x3 sweeps")
    args = parser.parse_args()

    if _ext is None:
        print("compiled backend unavailable; timing the pure twin only")

    sb = op_tables(resolve("symmetrized:boolean"))
    st1 = op_tables(resolve("supertropical:chain:1"))
    sign = op_tables(resolve("sign"))

    ext = _ext
    print("kernel benchmark (identical sweeps, identical results "
          "required)\n")
    row("laplace identity, symmetrized boolean 2x2",
        _pure.sweep_laplace_identity,
        ext.sweep_laplace_identity if ext else None, 2, sb)
    row("laplace identity, supertropical chain1 2x2",
        _pure.sweep_laplace_identity,
        ext.sweep_laplace_identity if ext else None, 2, st1)
    limit = None if args.full else 20000
    suffix = "" if args.full else f" (first {limit} matrices)"
    row(f"laplace identity, symmetrized boolean 3x3{suffix}",
        _pure.sweep_laplace_identity,
        ext.sweep_laplace_identity if ext else None, 3, sb, 0, limit)
    row(f"laplace identity, supertropical chain1 3x3{suffix}",
        _pure.sweep_laplace_identity,
        ext.sweep_laplace_identity if ext else None, 3, st1, 0, limit)
    row("rank gap scan, sign 3x3 (exhaustive)",
        _pure.sweep_rank_gap,
        ext.sweep_rank_gap if ext else None, 3, 3, sign)
    row("rank gap scan, sign 3x4 (to first witness)",
        _pure.sweep_rank_gap,
        ext.sweep_rank_gap if ext else None, 3, 4, sign)


if __name__ == "__main__":
    main()
