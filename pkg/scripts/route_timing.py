"""Time each construction route for both families and confirm they agree.

    python3 scripts/route_timing.py --n 20
"""

import argparse
import time

from delannoy import families as fam
from delannoy.multipoly import binom_poly


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=16)
    args = ap.parse_args()
    N = args.n

    binom_poly.cache_clear()
    routes = {
        "d/def": lambda: [fam.d_def(n) for n in range(N + 1)],
        "d/rec": lambda: [fam.FamilyCache().d(n) for n in range(N + 1)],
        "d/gf": lambda: fam.d_gf_list(N),
        "D/rec": lambda: [fam.FamilyCache().D(n) for n in range(N + 1)],
        "D/from-d": lambda: [fam.D_from_d(n) for n in range(N + 1)],
        "D/egf": lambda: fam.D_egf_list(N),
    }
    results = {}
    for name, fn in routes.items():
        results[name], dt = timed(fn)
        terms = sum(len(p) for p in results[name])
        print(f"{name:9s} {dt:8.3f} s  {terms:7d} terms")
    same_d = results["d/def"] == results["d/rec"] == results["d/gf"]
    same_D = results["D/rec"] == results["D/from-d"] == results["D/egf"]
    print(f"agreement up to n={N}: d {same_d}, D {same_D}")
    return 0 if same_d and same_D else 1


if __name__ == "__main__":
    raise SystemExit(main())
