"""Compare the compiled echelon kernel against the pure-python fallback.

Builds the stacked multiplication matrices that dominate the real
workloads (ideal span plus a shifted linear form) and times full-rank
elimination on each backend.  Both kernels destroy their input, so every
run gets a fresh copy.
"""

from __future__ import annotations

import random
import time

import numpy as np

from wlpci import _gfrank_py
from wlpci.exactcore import DEFAULT_PRIME, random_form, span_matrix

try:
    from wlpci import _gfrank
except ImportError:
    _gfrank = None


def build_case(d: int, t: int, seed: int = 1) -> np.ndarray:
    rng = random.Random(seed)
    forms = [random_form(4, d, DEFAULT_PRIME, rng) for _ in range(4)]
    linear = random_form(4, 1, DEFAULT_PRIME, rng)
    ideal = span_matrix(forms, t)
    shifted = span_matrix([linear], t)
    return np.vstack([ideal.entries, shifted.entries])


def time_kernel(kernel, a: np.ndarray, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        work = np.ascontiguousarray(a.copy())
        t0 = time.perf_counter()
        kernel.echelon_rank(work, DEFAULT_PRIME)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    cases = [(2, 3), (3, 5), (4, 7), (5, 9), (6, 11)]
    print(f"{'case':>12} {'shape':>12} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for d, t in cases:
        a = build_case(d, t)
        repeats = 3 if a.shape[0] * a.shape[1] < 2_000_000 else 1
        pure = time_kernel(_gfrank_py, a, repeats)
        label = f"d={d} t={t}"
        shape = f"{a.shape[0]}x{a.shape[1]}"
        if _gfrank is None:
            print(f"{label:>12} {shape:>12} {pure:>10.4f} {'(missing)':>13} {'-':>8}")
            continue
        fast = time_kernel(_gfrank, a, repeats)
        print(f"{label:>12} {shape:>12} {pure:>10.4f} {fast:>13.4f} {pure / fast:>8.1f}")


if __name__ == "__main__":
    main()
