"""Compare the compiled and pure-numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each kernel is called with inputs taken from a real scenario; the end-to-end
row times a full collection rollout in a subprocess per backend.
"""
import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from skilldrive import _pykernels, drivesim

try:
    from skilldrive import _ckernels
except ImportError:  # extension not built
    _ckernels = None

ROLLOUT = ("import time, torch; torch.set_num_threads(1);"
           "from skilldrive import datastore, kernels;"
           "import tempfile, os;"
           "d = tempfile.mkdtemp(); t = time.perf_counter();"
           "datastore.collect(os.path.join(d, 'x'), {steps}, seed=0);"
           "print(kernels.BACKEND, time.perf_counter() - t)")


def cases():
    sim = drivesim.SimConfig()
    st = drivesim.make_scenario(0, "train", 3, sim)
    others = np.array([p for p, _ in st.background_vehicles()], dtype=np.float64).reshape(-1, 3)
    route = np.ascontiguousarray(st.route.points)
    rng = np.random.default_rng(0)
    pts = np.ascontiguousarray(rng.normal(size=(400, 20)))
    return {
        "project_to_route": lambda k: k.project_to_route(route, st.x, st.y, st.route_index, 4, 24),
        "rasterize": lambda k: k.rasterize(route, st.route_index, st.x, st.y, st.heading, others,
                                           sim.road_half_width, sim.cell, sim.grid, sim.ego_row,
                                           sim.car_length, sim.car_width,
                                           sim.grid * sim.cell * 1.5),
        "greedy_threshold(400x20)": lambda k: k.greedy_threshold(pts, 5.0),
        "max_pairwise_distance(400x20)": lambda k: k.max_pairwise_distance(pts),
    }


def best_of(fn, repeat):
    n, _ = timeit.Timer(fn).autorange()
    return min(timeit.repeat(fn, number=n, repeat=repeat)) / n


def rollout(steps, pure):
    env = dict(os.environ, SKILLDRIVE_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", ROLLOUT.format(steps=steps)], env=env,
                         capture_output=True, text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--rollout-steps", type=int, default=2000)
    ap.add_argument("--json")
    args = ap.parse_args()
    if _ckernels is None:
        sys.exit("compiled backend not available; build with `pip install -e . --no-build-isolation`")
    rows = []
    for name, call in cases().items():
        py = best_of(lambda: call(_pykernels), args.repeat)
        cy = best_of(lambda: call(_ckernels), args.repeat)
        rows.append(dict(kernel=name, python_us=py * 1e6, cython_us=cy * 1e6, speedup=py / cy))
    _, t_py = rollout(args.rollout_steps, pure=True)
    _, t_cy = rollout(args.rollout_steps, pure=False)
    rows.append(dict(kernel=f"collect {args.rollout_steps} steps", python_us=t_py * 1e6,
                     cython_us=t_cy * 1e6, speedup=t_py / t_cy))
    print(f"{'kernel':34s} {'python':>12s} {'cython':>12s} {'speedup':>8s}")
    for r in rows:
        print(f"{r['kernel']:34s} {r['python_us']:10.1f}us {r['cython_us']:10.1f}us "
              f"{r['speedup']:7.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
