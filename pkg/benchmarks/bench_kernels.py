"""Compiled vs pure-Python graph kernels.

Times ``minor_flags`` (minor test over every labelled graph on n vertices) and
``has_minor`` on random hosts, for each excluded-minor pattern in the catalogue.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import random
import time

from minorclass import _kernels_py
from minorclass.graphs import LabelledGraph, bowtie, complete_graph, diamond, spoon, triangle

try:
    from minorclass import _kernels
except ImportError:  # extension not built
    _kernels = None

PATTERNS = {"K3": triangle(), "diamond": diamond(), "bowtie": bowtie(), "K4": complete_graph(4), "spoon2": spoon(2)}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def random_hosts(count, n, p, seed=0):
    rng = random.Random(seed)
    hosts = []
    for _ in range(count):
        g = LabelledGraph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p])
        hosts.append(list(g.adj))
    return hosts


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _kernels_py)] + ([("compiled", _kernels)] if _kernels else [])
    if _kernels is None:
        print("compiled extension not available; timing the fallback only")

    print(f"{'task':<34}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    rows = []
    for n in (5, 6):
        for name, h in PATTERNS.items():
            pat = list(h.adj)
            rows.append((f"minor_flags n={n} {name}", lambda m, n=n, pat=pat: m.minor_flags(n, pat)))
    hosts = random_hosts(300, 10, 0.3)
    for name, h in PATTERNS.items():
        pat = list(h.adj)
        rows.append((f"has_minor 300 x G(10,0.3) {name}", lambda m, pat=pat: [m.has_minor(g, pat) for g in hosts]))

    for label, job in rows:
        times = [best_of(lambda m=m: job(m), args.repeat) for _, m in backends]
        speed = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 and times[1] > 0 else ""
        print(f"{label:<34}" + "".join(f"{t:>11.4f}s" for t in times) + speed)

    if _kernels:
        # both backends must agree on what they compute
        for n in (5, 6):
            for h in PATTERNS.values():
                assert bytes(_kernels.minor_flags(n, list(h.adj))) == bytes(_kernels_py.minor_flags(n, list(h.adj)))


if __name__ == "__main__":
    main()
