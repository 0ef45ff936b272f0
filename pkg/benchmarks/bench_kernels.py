"""Time the pure-Python and compiled kernel backends on the package's hot paths.

Usage:
    python benchmarks/bench_kernels.py [--repeat 3] [--backend python --backend compiled]

Each workload is run once per backend to check that both give the same answer,
then timed with ``timeit``; the best of ``--repeat`` runs is reported.
"""
from __future__ import annotations

import argparse
import random
import timeit

from swbcat import chord, kernels, swb
from swbcat.acceptance import load_fixture
from swbcat.cli_io import parse


def _random_data(seed: int, count: int) -> list[swb.SWBDatum]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        th = swb.random_datum(rng, max_rank=3)
        if not swb.has_internal_components(th):
            out.append(th)
    return out


def workloads() -> dict:
    tcds = chord.enumerate_tcd(3)
    data = _random_data(7, 200)
    lhs, rhs = parse(load_fixture("fig9_lhs.json")), parse(load_fixture("fig9_rhs.json"))
    return {
        "GF(2) nullity over TC_3": lambda: [chord.gf2_nullity(chord.intersection_matrix(t)) for t in tcds],
        "boundary count over TC_3": lambda: [chord.boundary_count(t) for t in tcds],
        "caravan normal form over TC_3": lambda: [chord.caravan_normalize(t)[0] for t in tcds],
        "complement count, 200 data": lambda: [swb.complement_count(th) for th in data],
        "isotopy reduction, 200 data": lambda: [swb.isotopy_reduce(th) for th in data],
        "handle-slide search, worked pair": lambda: swb.hs_equivalent(lhs, rhs, 8).outcome,
    }


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--backend", action="append", choices=["python", "compiled"])
    args = ap.parse_args(argv)
    backends = args.backend or kernels.available()
    start = kernels.BACKEND
    try:
        jobs = workloads()
        answers: dict[str, object] = {}
        times: dict[str, dict[str, float]] = {name: {} for name in jobs}
        for b in backends:
            kernels.use(b)
            for name, fn in jobs.items():
                got = fn()
                if answers.setdefault(name, got) != got:
                    raise SystemExit(f"{name}: backends disagree")
                times[name][b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    finally:
        kernels.use(start)
    width = max(map(len, jobs))
    print(f"{'workload':<{width}}  " + "  ".join(f"{b:>10}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name in jobs:
        row = [times[name][b] for b in backends]
        line = f"{name:<{width}}  " + "  ".join(f"{t * 1e3:>8.1f}ms" for t in row)
        if len(row) == 2:
            line += f"  {row[0] / row[1]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
