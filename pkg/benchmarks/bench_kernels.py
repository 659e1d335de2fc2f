"""Time the compiled kernels against the pure-Python fallback.

Run from the repository root after building the extension:

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import random
import timeit

from gamemonoid import _purepy
from gamemonoid.games import pacman as pm
from gamemonoid.profiler import simulate
from gamemonoid.registry import agent

try:
    from gamemonoid import _speedups
except ImportError:  # extension not built
    _speedups = None


def tick_workload(traces):
    pairs = [(s, a.tag) for t in traces for s, a in zip(t.states, t.word)]

    def go(impl):
        for s, d in pairs:
            pm.advance(s, d, impl=impl)

    return len(pairs), go


def segment_workload(n_rows, n_calls):
    rng = random.Random(0)
    rows = [([rng.random() < 0.05 for _ in range(n_rows)],
             [rng.random() < 0.8 for _ in range(n_rows)],
             [rng.random() < 0.5 for _ in range(n_rows)]) for _ in range(n_calls)]

    def go(impl):
        for st, wi, pr in rows:
            impl.segment_runs(st, wi, pr)

    return n_rows * n_calls, go


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _speedups is None:
        raise SystemExit("compiled extension not found; run `python setup.py build_ext --inplace` first")

    m = pm.pacman_model()
    traces = [simulate(m, agent("pacman/random"), s, 400) for s in range(20)]
    workloads = {"tick": tick_workload(traces), "segment_runs": segment_workload(400, 200)}

    print(f"{'kernel':<14}{'items':>8}{'python ms':>12}{'cython ms':>12}{'speedup':>9}")
    for name, (items, go) in workloads.items():
        py = min(timeit.repeat(lambda: go(_purepy), number=1, repeat=args.repeat)) * 1e3
        cy = min(timeit.repeat(lambda: go(_speedups), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<14}{items:>8}{py:>12.2f}{cy:>12.2f}{py / cy:>8.1f}x")


if __name__ == "__main__":
    main()
