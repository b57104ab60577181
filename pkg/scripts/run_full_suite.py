"""Run every registered identity check and print per-check counts.

    python3 scripts/run_full_suite.py --max 10 --workers 1
"""

import argparse
import json
import sys

from delannoy.verify import run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=10, dest="max_n")
    ap.add_argument("--workers", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="print the summary as JSON")
    args = ap.parse_args()

    res = run_suite(None, args.max_n, args.workers or None)
    if args.json:
        print(json.dumps(res.summary(), indent=2, sort_keys=True))
    else:
        slow = {}
        for r in res.reports:
            slow[r.name] = slow.get(r.name, 0.0) + r.elapsed
        for name, c in sorted(res.counts.items()):
            print(f"{name:24s} {c['pass']:6d} pass {c['fail']:3d} fail {slow[name]:8.3f} s")
        s = res.summary()
        print(f"total {s['passed']}/{s['total']} in {s['wall_time_s']} s")
    return 0 if res.ok else 1


if __name__ == "__main__":
    sys.exit(main())
