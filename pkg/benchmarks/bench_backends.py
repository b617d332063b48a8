"""Compare the compiled grid kernels against the pure-Python fallback.

Runs each low-level kernel on identical inputs under both backends, then
times a full restricted supremum through the public engine with the
backend pinned via LRPOSSIB_BACKEND. Prints a table of per-call times
and speedups. Usage:

    python3 benchmarks/bench_backends.py
"""

from __future__ import annotations

import os
import subprocess
import sys
import time

import numpy as np

import lrpossib._gridcore_py as pyk

try:
    import lrpossib._gridcore as cyk
except ImportError:
    cyk = None


def bench(fn, *args, repeat: int = 7) -> float:
    """Best-of-repeat wall time for one call, in seconds."""
    fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_cases():
    rng = np.random.default_rng(7)
    n = 400_000
    theta = rng.uniform(1e-6, 1.0 - 1e-6, n)
    lam = rng.uniform(1e-6, 40.0, n)
    mu = rng.uniform(-5.0, 5.0, n)
    s2 = rng.uniform(1e-3, 9.0, n)
    t1 = rng.uniform(1e-6, 0.5, n)
    t3 = rng.uniform(1e-6, 0.5, n)
    vals = rng.normal(size=n)
    yield "binom_loglik", (theta, 3.0, 8.0, 0.0)
    yield "poisson_loglik", (lam, 5.0, 0.0)
    yield "normal_loglik", (mu, s2, 1.2, 2.0, 20.0)
    yield "trinom_loglik", (t1, t3, 12.0, 30.0, 18.0, 0.0)
    yield "max_argmax", (vals,)


def engine_seconds(backend: str) -> float:
    """Time a 2-D restricted supremum in a subprocess with the backend pinned."""
    code = """
import time
import lrpossib.kernels as k
from lrpossib import NormalStats, OptConfig, box, make_model, restricted_sup

assert k.BACKEND == {backend!r}, k.BACKEND
m = make_model("normal", {{}}, None)
x = NormalStats(mean=0.4, var=1.7, n=25)
r = box((-0.5, 0.2), (2.0, 5.0))
cfg = OptConfig(use_closed_form=False, grid_base=161, refine_rounds=3)
restricted_sup(m, x, r, cfg)
best = float("inf")
for _ in range(5):
    t0 = time.perf_counter()
    restricted_sup(m, x, r, cfg)
    best = min(best, time.perf_counter() - t0)
print(best)
""".format(backend=backend)
    env = dict(os.environ, LRPOSSIB_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    return float(out.stdout.strip().splitlines()[-1])


def main() -> None:
    if cyk is None:
        print("compiled backend not built; only the fallback is available")
        return
    rows = []
    for name, args in kernel_cases():
        t_cy = bench(getattr(cyk, name), *args)
        t_py = bench(getattr(pyk, name), *args)
        rows.append((name, t_cy, t_py))
    rows.append(("restricted_sup 2d", engine_seconds("cython"), engine_seconds("python")))

    width = max(len(r[0]) for r in rows)
    header = f"{'case':<{width}}  {'compiled':>10}  {'fallback':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, t_cy, t_py in rows:
        print(f"{name:<{width}}  {t_cy * 1e3:>8.3f}ms  {t_py * 1e3:>8.3f}ms  {t_py / t_cy:>7.2f}x")


if __name__ == "__main__":
    main()
