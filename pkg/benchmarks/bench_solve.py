"""Compare the compiled and pure-Python solver kernels on random games.

    python benchmarks/bench_solve.py --nodes 20000 --degree 3 --repeat 5
"""

import argparse
import random
import time

import numpy as np

from provgames import GameGraph
from provgames._kernel import available_backends, solve_csr


def random_csr(n, degree, seed):
    rng = random.Random(seed)
    moves = {(rng.randrange(n), rng.randrange(n)) for _ in range(n * degree)}
    g = GameGraph(range(n), moves)
    succ_off, _, pred_off, pred_idx = g.csr()
    return n, np.asarray(succ_off, np.int64), np.asarray(pred_off, np.int64), np.asarray(pred_idx, np.int64)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=20_000)
    ap.add_argument("--degree", type=float, default=2.0)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    n, succ_off, pred_off, pred_idx = random_csr(args.nodes, int(args.degree), args.seed)
    results = {}
    for backend in available_backends():
        results[backend] = solve_csr(n, succ_off, pred_off, pred_idx, backend=backend)
        t = best_of(lambda: solve_csr(n, succ_off, pred_off, pred_idx, backend=backend), args.repeat)
        print(f"{backend:>7}: {t * 1e3:9.2f} ms  ({n} positions, {len(pred_idx)} moves)")
    first, *rest = results.values()
    for other in rest:
        assert first == other, "backends disagree"
    if "cython" not in results:
        print("compiled kernel not built; only the Python fallback was timed")


if __name__ == "__main__":
    main()
