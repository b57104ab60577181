"""Exhaustive congruence scans on the default grids, with timings.

    python3 scripts/scan_congruences.py --n-max 50 --x 20 --csv-dir out/
"""

import argparse
import json
import pathlib
import sys
import time

from delannoy import congruence as cg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=50)
    ap.add_argument("--r-max", type=int, default=4)
    ap.add_argument("--m-max", type=int, default=3)
    ap.add_argument("--x", type=int, default=20, help="scan x in -X..X")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--csv-dir", type=pathlib.Path)
    args = ap.parse_args()

    xr = (-args.x, args.x)
    jobs = {
        "thm2.5": lambda: cg.check_thm2_5(args.n_max, args.r_max, xr, args.workers),
        "sun1.4": lambda: cg.check_sun_1_4(args.n_max, xr, args.workers),
        "sun1.5": lambda: cg.check_sun_1_5(args.n_max, args.m_max, xr, args.workers),
    }
    ok = True
    for name, job in jobs.items():
        t0 = time.perf_counter()
        scan = job()
        s = scan.summary()
        s["seconds"] = round(time.perf_counter() - t0, 3)
        print(json.dumps(s, sort_keys=True))
        ok &= scan.passed
        if args.csv_dir:
            args.csv_dir.mkdir(parents=True, exist_ok=True)
            (args.csv_dir / f"{name}.csv").write_text(scan.to_csv())
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
