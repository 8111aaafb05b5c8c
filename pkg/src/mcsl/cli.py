"""Command-line interface: ``mcsl <command> ...``.

Quaternions are given as doubled coordinates ``"d0,d1,d2,d3"`` (so
``"2,2,2,0"`` is ``1+i+j``), or with ``--half`` as plain components, or as
``"(k l m n)"`` / ``"(k l m n)/2"``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import census as cen
from . import csl_engine as eng
from .hquat import gcld, lcrm, make_odd, parse_quat
from .rot3 import rotation_matrix, sigma
from .verify import verify_all

log = logging.getLogger("mcsl")


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    fmt: str = "json"
    cache_dir: Path | None = None
    jobs: int = 1
    verbosity: int = 0

    def __post_init__(self):
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")


def _dump(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _quat(text, half):
    try:
        return parse_quat(text, half=half)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _odd(q):
    if q.is_zero:
        raise UsageError("zero quaternion")
    return make_odd(q)


def cmd_rot(args, cfg):
    q = _quat(args.quat, args.half)
    if q.is_zero:
        raise UsageError("zero quaternion")
    R = rotation_matrix(q)
    return {"quat": list(q.doubled), "matrix": R.to_json(), "sigma": sigma(make_odd(q))}


def cmd_csl(args, cfg):
    return eng.csl_record(_odd(_quat(args.quat, args.half))).to_json()


def cmd_mcsl(args, cfg):
    qs = [_odd(_quat(t, args.half)) for t in args.quats.split(";") if t.strip()]
    return eng.mcsl(qs).to_json()


def cmd_gcld(args, cfg):
    a, b = _quat(args.q1, args.half), _quat(args.q2, args.half)
    func = gcld if args.command == "gcld" else lcrm
    try:
        q = func(a, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return {"quat": list(q.doubled), "norm": q.norm}


def cmd_census(args, cfg):
    if args.kind == "f":
        if args.max is None:
            raise UsageError("census f needs --max")
        sigmas = list(range(1, args.max + 1, 2))
        reps = cen.census_many("f", sigmas, jobs=cfg.jobs, cache=cfg.cache_dir)
    else:
        if args.sigma is not None:
            sigmas = [args.sigma]
        elif args.prime is not None and args.power is not None:
            sigmas = [args.prime**args.power]
        else:
            raise UsageError("census f2 needs --prime and --power, or --sigma")
        if any(s % 2 == 0 for s in sigmas):
            raise UsageError("index must be odd")
        reps = cen.census_many("f2", sigmas, jobs=cfg.jobs, cache=cfg.cache_dir)
    return [r.to_json(timing=args.timing) for r in reps]


def cmd_verify(args, cfg):
    def progress(r):
        log.info("criterion %s %s: %s", r["id"], "PASS" if r["passed"] else "FAIL", r["name"])

    report = verify_all(args.level, progress=progress)
    out = Path(args.out)
    out.write_text(json.dumps(report, sort_keys=True, indent=1) + "\n")
    for r in report["criteria"]:
        print(f"{'PASS' if r['passed'] else 'FAIL'} [{r['id']:>2}] {r['name']}", file=sys.stderr)
    for a in report["anomalies"]:
        print(f"NOTE printed f2({a['p']}^{a['r']}) = {a['formula']} ({a['kind']}), "
              f"brute force {a['brute_force_f2']}", file=sys.stderr)
    return {"passed": report["passed"], "report": str(out), "level": args.level}


def _emit(payload, fmt, stream):
    if fmt == "json":
        stream.write(_dump(payload) + "\n")
        return
    rows = payload if isinstance(payload, list) else [payload]
    if rows and "count" in rows[0]:
        cols = ["sigma", "count", "formula", "match"]
    else:
        cols = sorted({k for r in rows for k in r})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_dump(r[c]) if isinstance(r.get(c), (list, dict)) else r.get(c) for c in cols])
        stream.write(buf.getvalue())
        return
    cells = [[str(r.get(c)) if not isinstance(r.get(c), (list, dict)) else _dump(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    stream.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
    for row in cells:
        stream.write("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() + "\n")


def build_parser():
    p = argparse.ArgumentParser(prog="mcsl", description="Exact CSLs and multiple CSLs of the bcc lattice.")
    p.add_argument("--format", choices=["json", "csv", "table"], default="json")
    p.add_argument("--cache-dir", default=None, help="result cache (default: $MCSL_CACHE_DIR)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.add_argument("--half", action="store_true", help="read quaternions as plain components")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rot", help="rotation matrix and coincidence index")
    s.add_argument("--quat", required=True)
    s.set_defaults(func=cmd_rot)

    s = sub.add_parser("csl", help="CSL of a quaternion")
    s.add_argument("--quat", required=True)
    s.set_defaults(func=cmd_csl)

    s = sub.add_parser("mcsl", help="multiple CSL of several quaternions")
    s.add_argument("--quats", required=True, help="quaternions separated by ';'")
    s.set_defaults(func=cmd_mcsl)

    for name in ("gcld", "lcrm"):
        s = sub.add_parser(name, help=f"{name} of two quaternions")
        s.add_argument("--q1", required=True)
        s.add_argument("--q2", required=True)
        s.set_defaults(func=cmd_gcld)

    s = sub.add_parser("census", help="count CSLs (f) or two-fold MCSLs (f2)")
    s.add_argument("kind", choices=["f", "f2"])
    s.add_argument("--max", type=int)
    s.add_argument("--prime", type=int)
    s.add_argument("--power", type=int)
    s.add_argument("--sigma", type=int)
    s.add_argument("--timing", action="store_true", help="include timing metadata")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("verify", help="run the verification suite")
    s.add_argument("target", choices=["all"])
    s.add_argument("--level", choices=["desk", "deep"], default="desk")
    s.add_argument("--out", default="mcsl-verify.json")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(message)s")
    try:
        cfg = CliConfig(args.format, Path(args.cache_dir) if args.cache_dir else None, args.jobs, args.verbose)
        payload = args.func(args, cfg)
    except UsageError as exc:
        print(f"mcsl: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"mcsl: error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, args.format, stdout)
    if args.command == "verify" and not payload["passed"]:
        return 1
    return 0


def main():
    sys.exit(run())
