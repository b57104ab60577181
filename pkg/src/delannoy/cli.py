"""Command-line front end.

Exit codes: 0 everything passed, 1 a mathematical failure was found,
2 usage or configuration error.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import congruence as cg
from .families import ROUTES_D, ROUTES_d, build, delannoy_number
from .multipoly import poly_to_json, pretty
from .verify import CATALOG, check_orthogonality, moment, monomial_to_D_basis, names, run_suite
from .verify.runner import DEFAULT_MAX_N, UnknownCheckError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_ROUTE = {"d": "def", "D": "rec"}


@dataclass
class CliConfig:
    command: str
    family: Optional[str] = None
    n: Optional[int] = None
    max_n: Optional[int] = None
    route: Optional[str] = None
    output: str = "json"
    through: bool = False
    checks: List[str] = field(default_factory=list)
    all_checks: bool = False
    check_id: Optional[str] = None
    n_max: int = 50
    r_max: int = 4
    m_max: int = 3
    x_range: Tuple[int, int] = (-20, 20)
    workers: int = 0
    timings: bool = True


class UsageError(Exception):
    pass


def _env_max_n() -> int:
    raw = os.environ.get("DELANNOY_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"DELANNOY_MAX_N must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="delannoy",
        description="Exact construction and verification of generalized Delannoy "
                    "polynomials and their orthogonal companions.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="print polynomials of one family")
    g.add_argument("family", choices=["d", "D", "delannoy"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--route", help=f"d: {', '.join(ROUTES_d)}; D: {', '.join(ROUTES_D)}")
    g.add_argument("--output", choices=["json", "pretty", "csv"], default="json")
    g.add_argument("--through", action="store_true", help="emit every index 0..n")

    v = sub.add_parser("verify", help="run symbolic identity checks")
    sel = v.add_mutually_exclusive_group(required=True)
    sel.add_argument("--check", action="append", dest="checks", metavar="NAME")
    sel.add_argument("--all", action="store_true", dest="all_checks")
    v.add_argument("--max", type=int, dest="max_n", help="largest index (default 10 or $DELANNOY_MAX_N)")
    v.add_argument("--output", choices=["json", "pretty"], default="json")
    v.add_argument("--workers", type=int, default=0, help="0 = all cores")
    v.add_argument("--no-timings", action="store_true",
                   help="zero all timings so repeated runs are byte-identical")

    c = sub.add_parser("congruence", help="scan integer congruences")
    c.add_argument("--check", dest="check_id", choices=cg.CHECK_IDS, required=True)
    c.add_argument("--n-max", type=int, default=50)
    c.add_argument("--r-max", type=int, default=4)
    c.add_argument("--m-max", type=int, default=3)
    c.add_argument("--x-range", default="-20..20")
    c.add_argument("--output", choices=["csv", "json"], default="csv")
    c.add_argument("--workers", type=int, default=1)

    m = sub.add_parser("moments", help="moments of the functional for the monic family")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--output", choices=["json", "pretty"], default="json")
    m.add_argument("--orthogonality", action="store_true",
                   help="also check L[D_i D_j] for all i, j <= n")

    sub.add_parser("list-checks", help="list the registered identity checks")
    return p


def _normalize_argv(argv: Sequence[str]) -> List[str]:
    # "--x-range -5..5" would otherwise be parsed as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--x-range":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--x-range={nxt}")
        else:
            out.append(tok)
    return out


def parse_config(argv: Sequence[str]) -> CliConfig:
    ns = build_parser().parse_args(_normalize_argv(argv))
    cfg = CliConfig(command=ns.command)
    if ns.command == "gen":
        cfg.family, cfg.n, cfg.output, cfg.through = ns.family, ns.n, ns.output, ns.through
        if cfg.n < 0:
            raise UsageError("--n must be nonnegative")
        if cfg.family != "delannoy":
            cfg.route = ns.route or DEFAULT_ROUTE[cfg.family]
            valid = ROUTES_d if cfg.family == "d" else ROUTES_D
            if cfg.route not in valid:
                raise UsageError(f"route {cfg.route!r} is not valid for family "
                                 f"{cfg.family!r}; choose from {', '.join(valid)}")
    elif ns.command == "verify":
        cfg.checks = ns.checks or []
        cfg.all_checks = ns.all_checks
        cfg.max_n = ns.max_n if ns.max_n is not None else _env_max_n()
        cfg.output, cfg.workers = ns.output, ns.workers
        cfg.timings = not ns.no_timings
        if cfg.max_n < 0:
            raise UsageError("--max must be nonnegative")
    elif ns.command == "congruence":
        cfg.check_id, cfg.n_max, cfg.r_max, cfg.m_max = ns.check_id, ns.n_max, ns.r_max, ns.m_max
        cfg.output, cfg.workers = ns.output, ns.workers
        try:
            cfg.x_range = cg.parse_range(ns.x_range)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if cfg.n_max < 1 or cfg.r_max < 0 or cfg.m_max < 1:
            raise UsageError("need --n-max >= 1, --r-max >= 0, --m-max >= 1")
    elif ns.command == "moments":
        cfg.n, cfg.output = ns.n, ns.output
        cfg.through = ns.orthogonality
        if cfg.n < 0:
            raise UsageError("--n must be nonnegative")
    return cfg


# ---------------------------------------------------------------------------
# commands


def cmd_gen(cfg: CliConfig, out) -> int:
    if cfg.family == "delannoy":
        out.write("m,n,value\n")
        for m in range(cfg.n + 1):
            for n in range(cfg.n + 1):
                out.write(f"{m},{n},{delannoy_number(m, n)}\n")
        return EXIT_OK
    indices = range(cfg.n + 1) if cfg.through else [cfg.n]
    for k in indices:
        poly = build(cfg.family, k, cfg.route)
        if cfg.output == "pretty":
            out.write(pretty(poly) + "\n")
        elif cfg.output == "csv":
            raise UsageError("csv output is only available for the delannoy table")
        else:
            rec = {"family": cfg.family, "n": k, "route": cfg.route, "poly": poly_to_json(poly)}
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_verify(cfg: CliConfig, out) -> int:
    selected = names() if cfg.all_checks else cfg.checks
    for name in selected:
        if name not in CATALOG:
            raise UnknownCheckError(name)
    result = run_suite(selected, cfg.max_n, cfg.workers or None)
    if not cfg.timings:
        result.wall_time = 0.0
        for r in result.reports:
            r.elapsed = 0.0
    if cfg.output == "pretty":
        for name, c in sorted(result.counts.items()):
            mark = "ok  " if c["fail"] == 0 else "FAIL"
            out.write(f"{mark} {name:24s} {c['pass']:6d} pass {c['fail']:4d} fail\n")
        for r in result.failures[:20]:
            out.write(f"  {r.name} {r.params}: {r.witness.get('display', r.witness)}\n")
        s = result.summary()
        out.write(f"{s['passed']}/{s['total']} instances passed in {s['wall_time_s']} s\n")
    else:
        for r in result.reports:
            out.write(r.dumps() + "\n")
        out.write(json.dumps({"summary": result.summary()}, sort_keys=True) + "\n")
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_congruence(cfg: CliConfig, out, err) -> int:
    if cfg.check_id == "thm2.5":
        scan = cg.check_thm2_5(cfg.n_max, cfg.r_max, cfg.x_range, cfg.workers)
    elif cfg.check_id == "sun1.4":
        scan = cg.check_sun_1_4(cfg.n_max, cfg.x_range, cfg.workers)
    else:
        scan = cg.check_sun_1_5(cfg.n_max, cfg.m_max, cfg.x_range, cfg.workers)
    summary = json.dumps(scan.summary(), sort_keys=True)
    if cfg.output == "csv":
        out.write(scan.to_csv())
        err.write(summary + "\n")
    else:
        out.write(summary + "\n")
    return EXIT_OK if scan.passed else EXIT_FAIL


def cmd_moments(cfg: CliConfig, out) -> int:
    status = EXIT_OK
    rows = [(k, moment(k)) for k in range(cfg.n + 1)]
    if cfg.output == "pretty":
        for k, mu in rows:
            out.write(f"mu_{k} = {pretty(mu)}\n")
    else:
        for k, mu in rows:
            basis = monomial_to_D_basis(k)
            out.write(json.dumps({"n": k, "moment": poly_to_json(mu),
                                  "D_basis": [poly_to_json(c) for c in basis]},
                                 sort_keys=True) + "\n")
    if cfg.through:
        reports = check_orthogonality(cfg.n)
        bad = [r for r in reports if not r.passed]
        out.write(json.dumps({"orthogonality": {"pairs": len(reports), "failed": len(bad)}})
                  + "\n")
        if bad:
            status = EXIT_FAIL
    return status


def cmd_list_checks(out) -> int:
    for name in names():
        c = CATALOG[name]
        out.write(f"{name}\t{c.anchor}\t{c.param_domain}\n")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
    except SystemExit as e:  # argparse usage errors
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    except UsageError as e:
        err.write(f"delannoy: {e}\n")
        return EXIT_USAGE
    try:
        if cfg.command == "gen":
            return cmd_gen(cfg, out)
        if cfg.command == "verify":
            return cmd_verify(cfg, out)
        if cfg.command == "congruence":
            return cmd_congruence(cfg, out, err)
        if cfg.command == "moments":
            return cmd_moments(cfg, out)
        return cmd_list_checks(out)
    except UnknownCheckError as e:
        err.write(f"delannoy: {e}\n")
        return EXIT_USAGE
    except UsageError as e:
        err.write(f"delannoy: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
