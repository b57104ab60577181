"""Running catalog checks, sequentially or across worker processes."""

from __future__ import annotations

import multiprocessing
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

from ..families import CACHE, d_def
from .catalog import CATALOG, names
from .report import CheckReport

DEFAULT_MAX_N = 10


class UnknownCheckError(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self):
        return f"unknown check {self.name!r}; valid checks: {', '.join(names())}"


def default_max_n() -> int:
    return int(os.environ.get("DELANNOY_MAX_N", DEFAULT_MAX_N))


def _lookup(name: str):
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownCheckError(name) from None


def run_instance(name: str, params: dict) -> CheckReport:
    check = _lookup(name)
    t0 = time.perf_counter()
    try:
        witness = check.evaluator(**params)
    except ArithmeticError as e:
        # e.g. an imaginary residue where a real polynomial was required
        witness = {"error": f"{type(e).__name__}: {e}"}
    return CheckReport(name, dict(params), "pass" if witness is None else "fail",
                       witness, time.perf_counter() - t0, check.note)


def warm_caches(max_index: int) -> None:
    """Fill the shared family caches before any parallel phase."""
    CACHE.warm(max_index)
    for n in range(max_index + 1):
        d_def(n)


def run_check(name: str, max_n: int) -> List[CheckReport]:
    check = _lookup(name)
    warm_caches(check.warm(max_n))
    return [run_instance(name, p) for p in check.instances(max_n)]


def _run_batch(batch):
    return [run_instance(name, params) for name, params in batch]


@dataclass
class SuiteResult:
    reports: List[CheckReport]
    wall_time: float
    max_n: int
    counts: Dict[str, Dict[str, int]] = field(default_factory=dict)

    @property
    def failures(self) -> List[CheckReport]:
        return [r for r in self.reports if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "max_n": self.max_n,
            "checks": self.counts,
            "total": len(self.reports),
            "passed": len(self.reports) - len(self.failures),
            "failed": len(self.failures),
            "wall_time_s": round(self.wall_time, 3),
        }


def run_suite(selected: Optional[Sequence[str]] = None, max_n: Optional[int] = None,
              workers: Optional[int] = None) -> SuiteResult:
    """Run the named checks (all by default) for every instance up to ``max_n``.

    Caches are filled in this process first; worker processes are forked so
    they inherit them read-only.  Output order does not depend on scheduling.
    """
    max_n = default_max_n() if max_n is None else max_n
    selected = list(selected) if selected else names()
    checks = [_lookup(n) for n in selected]
    workers = workers or os.cpu_count() or 1
    t0 = time.perf_counter()
    warm_caches(max(c.warm(max_n) for c in checks))
    tasks = [(c.name, p) for c in checks for p in c.instances(max_n)]
    if workers <= 1 or len(tasks) < 2:
        reports = _run_batch(tasks)
    else:
        # interleave so heavy instances spread over the workers
        batches = [tasks[i::workers * 4] for i in range(workers * 4)]
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            reports = [r for chunk in pool.map(_run_batch, batches) for r in chunk]
    reports.sort(key=CheckReport.sort_key)
    counts: Dict[str, Dict[str, int]] = {}
    for r in reports:
        c = counts.setdefault(r.name, {"pass": 0, "fail": 0})
        c[r.status] += 1
    return SuiteResult(reports, time.perf_counter() - t0, max_n, counts)
