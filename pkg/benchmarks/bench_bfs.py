"""Wall-clock comparison of the BFS level kernels.

Usage::

    python benchmarks/bench_bfs.py                    # default cases
    python benchmarks/bench_bfs.py --repeat 5 --json

Each case is run once untimed first so numba compilation is excluded, then
``--repeat`` times; the best time is reported. Outputs of the two backends
are compared byte for byte.
"""

from __future__ import annotations

import argparse
import json
import time

from lieexp.wordmetric import BACKENDS, bfs_ball, preset

CASES = [("heisenberg_Z", 24), ("heisenberg_Z", 32), ("sol_lattice", 12), ("free_abelian_2", 200)]


def best_time(fn, repeat: int) -> tuple[float, object]:
    out = fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def run(repeat: int, workers: int) -> list[dict]:
    rows = []
    for name, radius in CASES:
        p = preset(name)
        row = {"preset": name, "radius": radius}
        texts = {}
        for backend in BACKENDS:
            secs, table = best_time(lambda: bfs_ball(p, radius, backend=backend, workers=workers), repeat)
            row[backend] = secs
            row["states"] = len(table)
            texts[backend] = table.to_text()
        row["speedup"] = row["numpy"] / row["numba"]
        row["identical"] = len(set(texts.values())) == 1
        rows.append(row)
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1, help="thread count for the numpy backend")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rows = run(args.repeat, args.workers)
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'preset':<16}{'radius':>7}{'states':>10}{'numba s':>10}{'numpy s':>10}{'speedup':>9}  same")
    for r in rows:
        print(
            f"{r['preset']:<16}{r['radius']:>7}{r['states']:>10}{r['numba']:>10.3f}"
            f"{r['numpy']:>10.3f}{r['speedup']:>8.1f}x  {r['identical']}"
        )
    return 0 if all(r["identical"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
