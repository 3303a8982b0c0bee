"""Command-line entry point: run verification scenarios, dump fixed-point
tables, emit reports and certificate files, and re-check certificate files.

Exit codes: 0 all selected checks pass; 1 a membership or equality verdict
failed; 2 a data-integrity error (inconsistent fixed-point data, unknown
scenario or table id, malformed certificate file).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import scenarios as sc
from .equiv import FormMonomial, monomials, proj_tangent_weights
from .hilb import (
    blowup_points,
    blowup_tangent_weights,
    fiber_monomials_double,
    fiber_monomials_trinodal,
    hilb2w2_fixed_data,
    hilb2_restrictions,
    hilb3_point_class,
    hilb_fixed_points,
)
from .poly import LinearForm
from .zideal import verify_certificate_line

REPORT_VERSION = "1"


def _forms(ws) -> str:
    return ", ".join(f"({w})" for w in ws)


def dump(table: str, out=sys.stdout) -> int:
    """Print one fixed-point table in the canonical textual format."""
    if table in ("pw2", "pw4"):
        d = 2 if table == "pw2" else 4
        for m in monomials(d):
            ws = proj_tangent_weights(d, m)
            out.write(f"[{m.label()}]  char=({m.character()})  tangent={_forms(ws)}\n")
    elif table in ("hilb2", "hilb3"):
        n = 2 if table == "hilb2" else 3
        for pt in hilb_fixed_points(n):
            ws, extra = pt.tangent_weights()
            gens = ",".join(FormMonomial(g).label() for g in pt.gens)
            prefix = f"{extra}*" if extra != 1 else ""
            out.write(f"{pt.label}  I=({gens})  tangent={prefix}{_forms(ws)}\n")
    elif table == "hilb3-blowup":
        for bp in blowup_points():
            ws = blowup_tangent_weights(bp)
            out.write(
                f"{bp.label}  cubic={bp.cubic_quartic.label()}  tangent={_forms(ws)}\n"
            )
    elif table == "hilb2w2":
        for pt in hilb2w2_fixed_data():
            out.write(
                f"{pt.label}  image=[{pt.image.label()}]  tau=({pt.tau})"
                f"  tangent={_forms(pt.tangent)}\n"
            )
    elif table == "binodal-D":
        for pt in hilb_fixed_points(2):
            h1, s = hilb2_restrictions(pt)
            for f in fiber_monomials_double(pt):
                out.write(
                    f"({pt.label},{f.label()})  h1=({h1})  s=({s})\n"
                )
    elif table == "trinodal-Z":
        count = 0
        for pt in hilb_fixed_points(3):
            if hilb3_point_class(pt) == "noncurvilinear":
                continue
            for f in fiber_monomials_trinodal(pt):
                out.write(f"({pt.label},{f.label()})\n")
                count += 1
        for bp in blowup_points():
            for f in fiber_monomials_trinodal(bp):
                out.write(f"({bp.label},{f.label()})\n")
                count += 1
    elif table == "strata":
        for label, cd in sc.STRATA_D4:
            out.write(f"{label}  codim={cd}\n")
        for a, b in sc.STRATA_D4_EDGES:
            out.write(f"{a} > {b}\n")
    else:
        raise KeyError(table)
    return 0


DUMP_TABLES = (
    "pw2",
    "pw4",
    "hilb2",
    "hilb3",
    "hilb3-blowup",
    "hilb2w2",
    "binodal-D",
    "trinodal-Z",
    "strata",
)


def _write_certificates(verdict: sc.Verdict, cert_dir: str) -> None:
    lines = []
    for row in verdict.rows:
        if row.certificate is not None and row.member:
            lines.append(row.certificate.to_line())
    if not lines:
        return
    path = os.path.join(cert_dir, f"{verdict.scenario}.cert")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    for row in verdict.rows:
        if row.certificate is not None and row.member:
            row.certificate_path = path


def report_dict(verdicts) -> dict:
    return {
        "version": REPORT_VERSION,
        "scenarios": [v.as_dict() for v in verdicts],
    }


def render_markdown(verdicts) -> str:
    lines = ["# verification report", ""]
    for v in verdicts:
        status = "PASS" if v.passed else "FAIL"
        lines.append(f"## {v.scenario} - {status} ({v.seconds:.1f}s)")
        if v.integrity != "ok":
            lines.append(f"* integrity: {v.integrity}")
        for note in v.notes:
            lines.append(f"* note: {note}")
        lines.append("")
        lines.append("| check | target | result |")
        lines.append("|---|---|---|")
        for r in v.rows:
            ok = "pass" if r.passed else "FAIL"
            lines.append(f"| {r.label} | {r.target} | {ok} |")
        lines.append("")
    return "\n".join(lines)


def run(argv) -> int:
    parser = argparse.ArgumentParser(
        prog="qchow", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run verification scenarios")
    p_verify.add_argument("scenario", help="'all' or a scenario id")
    p_verify.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p_verify.add_argument("--report", metavar="PATH", default=None)
    p_verify.add_argument("--cert", metavar="DIR", default=None)
    p_verify.add_argument("--format", choices=("json", "md"), default="json")
    p_verify.add_argument("-v", "--verbose", action="store_true")

    p_dump = sub.add_parser(
        "dump", aliases=["fixed-points"], help="print a fixed-point table"
    )
    p_dump.add_argument("table", help="|".join(DUMP_TABLES))

    p_check = sub.add_parser("check-cert", help="re-verify certificate files")
    p_check.add_argument("files", nargs="+")

    args = parser.parse_args(argv)

    if args.command in ("dump", "fixed-points"):
        try:
            return dump(args.table)
        except KeyError:
            print(f"unknown table id: {args.table}", file=sys.stderr)
            return 2

    if args.command == "check-cert":
        bad = 0
        for path in args.files:
            try:
                with open(path, encoding="utf-8") as fh:
                    for n, line in enumerate(fh, 1):
                        line = line.strip()
                        if not line:
                            continue
                        if verify_certificate_line(line):
                            print(f"{path}:{n}: ok")
                        else:
                            print(f"{path}:{n}: FAILED")
                            bad += 1
            except (OSError, ValueError) as exc:
                print(f"{path}: {exc}", file=sys.stderr)
                return 2
        return 1 if bad else 0

    # verify
    if args.scenario != "all" and args.scenario not in sc.SCENARIOS:
        print(f"unknown scenario: {args.scenario}", file=sys.stderr)
        return 2
    selected = sc.RUN_ORDER if args.scenario == "all" else [args.scenario]

    if args.jobs > 1:
        pool = ProcessPoolExecutor(max_workers=args.jobs)
        mapper = pool.map
    else:
        pool = None
        mapper = map

    verdicts = []
    integrity_failure = False
    try:
        for name in selected:
            verdict = sc.SCENARIOS[name](mapper=mapper)
            verdicts.append(verdict)
            if verdict.integrity != "ok":
                integrity_failure = True
            if args.verbose:
                status = "PASS" if verdict.passed else "FAIL"
                print(
                    f"{name}: {status} ({verdict.seconds:.1f}s,"
                    f" {len(verdict.rows)} rows)",
                    file=sys.stderr,
                )
            if args.cert:
                os.makedirs(args.cert, exist_ok=True)
                _write_certificates(verdict, args.cert)
    finally:
        if pool is not None:
            pool.shutdown()

    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            if args.format == "json":
                json.dump(report_dict(verdicts), fh, indent=2, sort_keys=True)
                fh.write("\n")
            else:
                fh.write(render_markdown(verdicts))
    else:
        if args.format == "json":
            print(json.dumps(report_dict(verdicts), indent=2, sort_keys=True))
        else:
            print(render_markdown(verdicts))

    if integrity_failure:
        return 2
    return 0 if all(v.passed for v in verdicts) else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
