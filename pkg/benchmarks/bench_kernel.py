"""Compare the compiled and pure-Python binomial-transform kernels.

    python benchmarks/bench_kernel.py [--steps 3000] [--width 1400] [--repeat 3]

Each run pushes the same random fixed-point sequence (with the per-step
shifts used by the inner sums at w = 4) through a fresh transform and
reports the best wall time.  Results are checked to be bit-identical.
"""

from __future__ import annotations

import argparse
import math
import random
import time

from bernzeta import kernel


def workload(steps: int, width: int, seed: int = 1):
    rng = random.Random(seed)
    alpha = math.log2(8 * math.pi)
    shifts = [0] + [math.floor(m * alpha) - math.floor((m - 1) * alpha) for m in range(1, steps)]
    coeffs = [rng.randrange(-(2 ** (width // 2)), 2 ** (width // 2)) for _ in range(steps)]
    return coeffs, shifts


def run(name: str, coeffs, shifts, width: int) -> tuple[float, int]:
    t = kernel.get_backend(name)(width)
    t0 = time.perf_counter()
    last = 0
    for c, d in zip(coeffs, shifts):
        last = t.push(c, d)
    return time.perf_counter() - t0, last


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--steps", type=int, default=3000)
    ap.add_argument("--width", type=int, default=1400)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    coeffs, shifts = workload(args.steps, args.width)
    print(f"steps={args.steps} width={args.width} bits, best of {args.repeat}")
    timings, outputs = {}, {}
    for name in kernel.available_backends():
        best = math.inf
        for _ in range(args.repeat):
            dt, last = run(name, coeffs, shifts, args.width)
            best = min(best, dt)
        timings[name], outputs[name] = best, last
        print(f"  {name:<8} {best * 1e3:10.1f} ms")
    if len(set(outputs.values())) != 1:
        raise SystemExit("backends disagree")
    if "cython" in timings:
        print(f"  speedup  {timings['python'] / timings['cython']:10.1f}x")


if __name__ == "__main__":
    main()
