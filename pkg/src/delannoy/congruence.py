"""Exhaustive big-integer divisibility scans over finite grids.

Three families of congruences are scanned, all with exact integers:

* ``thm2.5``: (2r+1) prod_{k=-r..r} (x+k)(x+1-k) sum_{k<n} (2k+2r+1) d_k(x)^2
  is divisible by 2 n^2 (n+1)^2 ... (n+2r)^2;
* ``sun1.4``: x(x+1) sum_{k<n} (2k+1) d_k(x)^2 is divisible by 2 n^2 (r = 0);
* ``sun1.5``: sum_{k<n} eps^k (2k+1) d_k(x)^(2m) is divisible by n.

Values d_k(x) come from the cached symbolic polynomials specialized at integer
r and x; each grid row is cross-checked once against the integer recurrence.
"""

from __future__ import annotations

import csv
import io
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .families import CACHE, d_at_r
from .multipoly import eval_int

CHECK_IDS = ("thm2.5", "sun1.4", "sun1.5")
CSV_HEADER = ["check", "n", "r", "x", "m", "eps", "value", "modulus", "divisible"]


class CongruenceError(ArithmeticError):
    """A value that must be an integer was not, or two evaluation paths disagree."""


@dataclass(frozen=True)
class ScanRow:
    check: str
    n: int
    r: Optional[int]
    x: int
    m: Optional[int]
    eps: Optional[int]
    value: int
    modulus: int

    @property
    def divisible(self) -> bool:
        return self.value % self.modulus == 0

    def as_csv(self) -> List[str]:
        def cell(v):
            return "" if v is None else str(v)
        return [self.check, str(self.n), cell(self.r), str(self.x), cell(self.m),
                cell(self.eps), str(self.value), str(self.modulus),
                "true" if self.divisible else "false"]


@dataclass
class CongruenceScan:
    check_id: str
    grid: Dict[str, object]
    rows: List[ScanRow] = field(default_factory=list)
    failures: List[Tuple] = field(default_factory=list)
    oracle_mismatches: List[Tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and not self.oracle_mismatches

    def summary(self) -> dict:
        return {
            "check": self.check_id,
            "grid": {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.grid.items()},
            "rows": len(self.rows),
            "failures": len(self.failures),
            "oracle_mismatches": len(self.oracle_mismatches),
            "counterexamples": [list(f) for f in self.failures[:20]],
        }

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(CSV_HEADER)
        for row in self.rows:
            w.writerow(row.as_csv())
        return buf.getvalue()


# ---------------------------------------------------------------------------
# integer values of d_k at integer points


def _int_value(n: int, r: int, x: int) -> int:
    v = eval_int(d_at_r(n, r), {"x": x})
    if v.denominator != 1:
        raise CongruenceError(f"d_{n}^({r})({x}) = {v} is not an integer")
    return v.numerator


def d_values(n_max: int, r: int, x: int) -> List[int]:
    """[d_0(x), ..., d_{n_max}(x)] at integer r, checked against the recurrence."""
    vals = [_int_value(k, r, x) for k in range(n_max + 1)]
    rec = [1, 2 * x + 1]
    for k in range(1, n_max):
        num = (1 + 2 * x) * rec[k] + (k + 2 * r) * rec[k - 1]
        q, rem = divmod(num, k + 1)
        if rem:
            raise CongruenceError(f"recurrence step {k} at r={r}, x={x} is not integral")
        rec.append(q)
    if rec[: n_max + 1] != vals:
        raise CongruenceError(f"polynomial and recurrence values differ at r={r}, x={x}")
    return vals


def _warm(n_max: int, r_max: int) -> None:
    CACHE.warm(n_max + 1)
    for r in range(r_max + 2):
        for k in range(n_max + 1):
            d_at_r(k, r)


def _square_product(n: int, r: int) -> int:
    out = 2
    for j in range(n, n + 2 * r + 1):
        out *= j * j
    return out


def _x_factor(x: int, r: int) -> int:
    out = 1
    for k in range(-r, r + 1):
        out *= (x + k) * (x + 1 - k)
    return out


def _row_thm2_5(args):
    n_max, r, x = args
    vals = d_values(n_max, r, x)
    shifted = d_values(n_max, r + 1, x)
    rows, mismatches = [], []
    weight = (2 * r + 1) * _x_factor(x, r)
    acc = 0
    for n in range(1, n_max + 1):
        k = n - 1
        acc += (2 * k + 2 * r + 1) * vals[k] ** 2
        closed = n * n * vals[n] ** 2 - 4 * (x - r) * (x + 1 + r) * shifted[n - 1] ** 2
        if (2 * r + 1) * acc != closed:
            mismatches.append(("thm2.5", n, r, x))
        rows.append(ScanRow("thm2.5", n, r, x, None, None, weight * acc,
                            _square_product(n, r)))
    return rows, mismatches


def _row_sun_1_4(args):
    n_max, x = args
    vals = d_values(n_max, 0, x)
    rows = []
    acc = 0
    for n in range(1, n_max + 1):
        k = n - 1
        acc += (2 * k + 1) * vals[k] ** 2
        rows.append(ScanRow("sun1.4", n, None, x, None, None, x * (x + 1) * acc, 2 * n * n))
    return rows, []


def _row_sun_1_5(args):
    n_max, m_max, x = args
    vals = d_values(n_max, 0, x)
    rows = []
    for m in range(1, m_max + 1):
        for eps in (1, -1):
            acc = 0
            for n in range(1, n_max + 1):
                k = n - 1
                acc += eps ** k * (2 * k + 1) * vals[k] ** (2 * m)
                rows.append(ScanRow("sun1.5", n, None, x, m, eps, acc, n))
    return rows, []


def _map_rows(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, tasks))


def _collect(scan: CongruenceScan, results) -> CongruenceScan:
    for rows, mismatches in results:
        scan.rows.extend(rows)
        scan.oracle_mismatches.extend(mismatches)
    scan.rows.sort(key=lambda r: (r.n, r.r or 0, r.x, r.m or 0, -(r.eps or 0)))
    for row in scan.rows:
        if not row.divisible:
            scan.failures.append((row.check, row.n, row.r, row.x, row.m, row.eps))
    return scan


def _check_range(x_range: Tuple[int, int]) -> Tuple[int, int]:
    lo, hi = x_range
    if lo > hi:
        raise ValueError(f"empty x range {lo}..{hi}")
    return lo, hi


def check_thm2_5(n_max: int, r_max: int, x_range: Tuple[int, int],
                 workers: int = 1) -> CongruenceScan:
    if n_max < 1 or r_max < 0:
        raise ValueError("need n_max >= 1 and r_max >= 0")
    lo, hi = _check_range(x_range)
    _warm(n_max, r_max)
    tasks = [(n_max, r, x) for r in range(r_max + 1) for x in range(lo, hi + 1)]
    scan = CongruenceScan("thm2.5", {"n_max": n_max, "r_max": r_max, "x_range": (lo, hi)})
    return _collect(scan, _map_rows(_row_thm2_5, tasks, workers))


def check_sun_1_4(n_max: int, x_range: Tuple[int, int], workers: int = 1) -> CongruenceScan:
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    lo, hi = _check_range(x_range)
    _warm(n_max, 0)
    tasks = [(n_max, x) for x in range(lo, hi + 1)]
    scan = CongruenceScan("sun1.4", {"n_max": n_max, "x_range": (lo, hi)})
    return _collect(scan, _map_rows(_row_sun_1_4, tasks, workers))


def check_sun_1_5(n_max: int, m_max: int, x_range: Tuple[int, int],
                  workers: int = 1) -> CongruenceScan:
    if n_max < 1 or m_max < 1:
        raise ValueError("need n_max >= 1 and m_max >= 1")
    lo, hi = _check_range(x_range)
    _warm(n_max, 0)
    tasks = [(n_max, m_max, x) for x in range(lo, hi + 1)]
    scan = CongruenceScan("sun1.5", {"n_max": n_max, "m_max": m_max, "x_range": (lo, hi)})
    return _collect(scan, _map_rows(_row_sun_1_5, tasks, workers))


def parse_range(text: str) -> Tuple[int, int]:
    """Parse ``"a..b"`` (inclusive)."""
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"malformed range {text!r}; expected a..b")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise ValueError(f"malformed range {text!r}; bounds must be integers") from None
    if a > b:
        raise ValueError(f"empty range {text!r}")
    return a, b
