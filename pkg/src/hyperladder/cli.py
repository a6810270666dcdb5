"""Command-line front end: ``hyperladder verify|ladder|orbit|report``.

Exit codes: 0 when every selected check passes, 1 when any check fails,
2 on bad flags or internal errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
import traceback
from pathlib import Path

from . import __version__

OUTDIR_ENV = "HYPERLADDER_OUTDIR"
SUITE_NAMES = ("liealg", "reps", "ladders", "props")
CASES = ("elliptic", "parabolic", "hyperbolic")

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _out_path(path: str) -> Path:
    p = Path(path)
    if not p.is_absolute() and os.environ.get(OUTDIR_ENV):
        p = Path(os.environ[OUTDIR_ENV]) / p
    return p


def _atomic_write(path: Path, text: str) -> None:
    """Write to a temporary file next to ``path`` and rename it into place."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _selected(suite: str) -> list[str]:
    if suite == "all":
        return list(SUITE_NAMES)
    if suite == "none":
        return []
    return [suite]


def _report_dict(results, seed: int) -> dict:
    return {
        "version": 1,
        "seed": seed,
        "suites": [
            {"name": name, "checks": [c.as_dict() for c in checks]} for name, checks in results
        ],
    }


def cmd_verify(args) -> int:
    from .verify import run_suites

    results = run_suites(_selected(args.suite), seed=args.seed)
    total = sum(len(c) for _, c in results)
    failed = [c for _, checks in results for c in checks if not c.ok]
    for name, checks in results:
        passed = sum(c.ok for c in checks)
        print(f"{name}: {passed}/{len(checks)} passed")
    for c in failed:
        print(f"FAIL {c.id}: {c.detail}")
    if not total:
        print("no checks selected")
    if args.json:
        _atomic_write(_out_path(args.json), json.dumps(_report_dict(results, args.seed), indent=2) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def _ladder_payload(case: str, algebra: str) -> dict:
    from . import ladders as ld
    from .verify import LADDER_REPS

    p = ld.LadderProblem.case(case, algebra)
    poly = ld.compatibility_polynomial(p)
    sols = ld.solve_ladder(p)
    out = {
        "case": case,
        "algebra": algebra,
        "sigma": p.sigma,
        "hamiltonian": str(p.H),
        "polynomial": f"{poly.as_expr()} = 0",
        "solutions": [],
    }
    for s in sols:
        verified = {rep: ld.ladder_verify(s, rep).is_zero() for rep in LADDER_REPS[case]}
        ops = {rep: str(ld.rho(rep, s.coeffs)) for rep in LADDER_REPS[case]}
        out["solutions"].append({
            "lambda": str(s.lam),
            "family": s.family,
            "ladder": str(s.coeffs),
            "operators": ops,
            "verified": verified,
        })
    return out


def cmd_ladder(args) -> int:
    payload = _ladder_payload(args.case, args.algebra)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"H = {payload['hamiltonian']} (sigma = {payload['sigma']})")
        print(f"compatibility: {payload['polynomial']}")
        for s in payload["solutions"]:
            fam = f"  [family in {s['family']}]" if s["family"] else ""
            print(f"  lambda = {s['lambda']}: L = {s['ladder']}{fam}")
            for rep, op in s["operators"].items():
                status = "ok" if s["verified"][rep] else "FAILED"
                print(f"    {rep}: {op}  [{status}]")
    ok = all(all(s["verified"].values()) for s in payload["solutions"])
    return EXIT_OK if ok else EXIT_FAIL


def orbit_rows(case: str, q0: float, p0: float, t_max: float, steps: int, frame: str):
    """Rows (t, q, p) of the flow; raises if the two computations disagree."""
    from .liealg import flow_hypercomplex, flow_matrix

    rows = []
    for k in range(steps):
        t = t_max * k / (steps - 1)
        m = flow_matrix(case, t, frame)
        q, p = m.a * q0 + m.b * p0, m.c * q0 + m.d * p0
        hq, hp = flow_hypercomplex(case, q0, p0, t, frame)
        scale = max(1.0, abs(q), abs(p))
        if abs(q - hq) > 1e-10 * scale or abs(p - hp) > 1e-10 * scale:
            raise RuntimeError(f"matrix and hypercomplex forms disagree at t={t}")
        rows.append((t, float(q), float(p)))
    return rows


def cmd_orbit(args) -> int:
    for name in ("q0", "p0", "t_max"):
        if not math.isfinite(getattr(args, name)):
            raise UsageError(f"--{name.replace('_', '-')} must be finite")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if args.t_max <= 0:
        raise UsageError("--t-max must be positive")
    rows = orbit_rows(args.case, args.q0, args.p0, args.t_max, args.steps, args.frame)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "q", "p"])
    for t, q, p in rows:
        w.writerow([repr(t), repr(q), repr(p)])
    if args.out:
        _atomic_write(_out_path(args.out), buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def render_report(results, seed: int) -> str:
    from .verify import NOTES, cr_note

    lines = ["# hyperladder verification report", "", f"Seed: {seed}", ""]
    total = sum(len(c) for _, c in results)
    passed = sum(c.ok for _, checks in results for c in checks)
    lines.append(f"{passed}/{total} checks passed.")
    lines.append("")
    if not total:
        lines += ["no checks selected", ""]
    for name, checks in results:
        lines += [f"## {name}", "", "| check | topic | status | detail |", "|---|---|---|---|"]
        for c in checks:
            detail = c.detail.replace("|", "\\|")
            lines.append(f"| `{c.id}` | {c.ref} | {c.status} | {detail} |")
        lines.append("")
    lines += ["## Conventions", ""]
    for title, text in NOTES.items():
        lines.append(f"- **{title}**: {text}")
    lines += ["", "### Cauchy-Riemann type operators", "", cr_note(), ""]
    return "\n".join(lines)


def cmd_report(args) -> int:
    from .verify import run_suites

    results = run_suites(_selected(args.suite), seed=args.seed)
    text = render_report(results, args.seed)
    try:
        _atomic_write(_out_path(args.out), text)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from exc
    print(f"report written to {_out_path(args.out)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    from .verify import DEFAULT_SEED

    parser = _Parser(prog="hyperladder", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=("all", "none") + SUITE_NAMES, default="all")
    v.add_argument("--json", metavar="PATH", help="write a JSON report")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.set_defaults(func=cmd_verify)

    lad = sub.add_parser("ladder", help="solve a ladder problem")
    lad.add_argument("--case", choices=CASES, required=True)
    lad.add_argument("--algebra", choices=("h1", "sp2"), required=True)
    lad.add_argument("--json", action="store_true", help="print JSON instead of text")
    lad.set_defaults(func=cmd_ladder)

    o = sub.add_parser("orbit", help="emit a phase-space orbit as CSV")
    o.add_argument("--case", choices=CASES, required=True)
    o.add_argument("--q0", type=float, required=True)
    o.add_argument("--p0", type=float, required=True)
    o.add_argument("--t-max", type=float, required=True)
    o.add_argument("--steps", type=int, default=100)
    o.add_argument("--frame", choices=("generator", "subgroup"), default="generator")
    o.add_argument("--out", metavar="PATH", help="CSV path (stdout when omitted)")
    o.set_defaults(func=cmd_orbit)

    r = sub.add_parser("report", help="write a markdown report")
    r.add_argument("--out", required=True, metavar="PATH")
    r.add_argument("--suite", choices=("all", "none") + SUITE_NAMES, default="all")
    r.add_argument("--seed", type=int, default=DEFAULT_SEED)
    r.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"hyperladder: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except Exception:
        traceback.print_exc()
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
