"""Compare the compiled and pure-Python support-enumeration kernels.

Each backend runs in its own interpreter because the backend is fixed at
import time. Usage::

    python3 benchmarks/bench_kernels.py [--sizes 5 6 7] [--games 5] [--seed 0]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, sys, time
from farnash import BACKEND
from farnash.game import BimatrixGame
from farnash.solve import enumerate_nash

sizes, games, seed = json.loads(sys.argv[1])
out = {"backend": BACKEND, "timings": {}}
for n in sizes:
    rng = random.Random(seed + n)
    batch = [
        BimatrixGame.from_matrices(
            [[rng.randint(-100, 100) for _ in range(n)] for _ in range(n)],
            [[rng.randint(-100, 100) for _ in range(n)] for _ in range(n)],
        )
        for _ in range(games)
    ]
    start = time.perf_counter()
    found = sum(len(enumerate_nash(g)) for g in batch)
    out["timings"][n] = (time.perf_counter() - start, found)
print(json.dumps(out))
"""


def run_backend(pure: bool, sizes, games, seed):
    env = dict(os.environ, FARNASH_PURE_PYTHON="1" if pure else "0")
    res = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps([sizes, games, seed])],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[5, 6, 7])
    ap.add_argument("--games", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    fast = run_backend(False, a.sizes, a.games, a.seed)
    slow = run_backend(True, a.sizes, a.games, a.seed)
    if fast["backend"] != "cython":
        print("compiled extension not built; both runs use the pure-Python kernels")
    print(f"{'n':>3} {'games':>5} {fast['backend'] + ' s':>10} {'python s':>10} {'speedup':>8} {'equilibria':>10}")
    for n in a.sizes:
        tf, found_f = fast["timings"][str(n)]
        ts, found_s = slow["timings"][str(n)]
        if found_f != found_s:
            raise SystemExit(f"backends disagree at n={n}: {found_f} vs {found_s}")
        print(f"{n:>3} {a.games:>5} {tf:>10.3f} {ts:>10.3f} {ts / tf:>8.2f} {found_f:>10}")


if __name__ == "__main__":
    main()
