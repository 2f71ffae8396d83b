"""Command line interface: ``simul-latency <command> ...``.

Exit codes: 0 success, 1 validation or mismatch failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import statistics
import sys
from dataclasses import dataclass
from numbers import Integral

from simul_latency import _kernels, generators, metrics, oracle, tables
from simul_latency.core import (
    ActionSequence,
    HardSchedule,
    LatencyReport,
    ScheduleError,
    SoftSchedule,
    require_valid,
    schedule_from_actions,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

CSV_HEADER = ["id", "src_len", "tgt_len", "tau", "gamma", "d", "ap", "cw_mean", "al", "al_simple", "dal"]
SUMMARY_METRICS = ("ap", "cw_mean", "al", "al_simple", "dal")
RECORD_KEYS = {"id", "src_len", "tgt_len", "g", "actions"}
FAMILIES = ("wait-k", "catchup", "antagonistic", "prescient", "offline", "random")


# --------------------------------------------------------------------------
# record (de)serialisation
# --------------------------------------------------------------------------
@dataclass(frozen=True)
class ScheduleRecord:
    id: str | None
    schedule: HardSchedule | SoftSchedule


@dataclass(frozen=True)
class CorpusSummary:
    count: int
    mean: dict
    std: dict

    def as_dict(self) -> dict:
        return {"count": self.count, "mean": self.mean, "std": self.std}


def _length(obj, key, default=None):
    value = obj.get(key, default)
    if value is None:
        raise ScheduleError(f"missing field {key!r}")
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise ScheduleError(f"field {key!r} must be an integer, got {value!r}")
    return value


def parse_record(obj) -> ScheduleRecord:
    """Turn a decoded JSON object into a schedule; integer ``g`` means hard."""
    if not isinstance(obj, dict):
        raise ScheduleError("record must be a JSON object")
    unknown = set(obj) - RECORD_KEYS
    if unknown:
        raise ScheduleError(f"unknown field(s): {', '.join(sorted(unknown))}")
    if ("g" in obj) == ("actions" in obj):
        raise ScheduleError("record must have exactly one of 'g' or 'actions', not both or neither")
    rid = obj.get("id")
    if rid is not None and not isinstance(rid, str):
        raise ScheduleError("field 'id' must be a string")
    src_len = _length(obj, "src_len")

    if "actions" in obj:
        actions = obj["actions"]
        if not isinstance(actions, str):
            raise ScheduleError("field 'actions' must be a string")
        tgt_len = _length(obj, "tgt_len", actions.count("W"))
        s = schedule_from_actions(ActionSequence(actions, src_len, tgt_len))
        return ScheduleRecord(rid, s)

    g = obj["g"]
    if not isinstance(g, list):
        raise ScheduleError("field 'g' must be an array")
    for v in g:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ScheduleError(f"g contains a non-number: {v!r}")
    tgt_len = _length(obj, "tgt_len", len(g))
    if all(isinstance(v, int) for v in g):
        s = HardSchedule(src_len, tgt_len, tuple(g))
    else:
        s = SoftSchedule(src_len, tgt_len, tuple(float(v) for v in g))
    require_valid(s)
    return ScheduleRecord(rid, s)


def schedule_to_record(s, rid: str | None = None) -> dict:
    out = {}
    if rid is not None:
        out["id"] = rid
    out.update(src_len=s.src_len, tgt_len=s.tgt_len, g=list(s.g))
    return out


def fmt_num(x) -> str:
    if isinstance(x, Integral):
        return str(x)
    return repr(float(x))


def summarize(reports: list[LatencyReport]) -> CorpusSummary:
    mean, std = {}, {}
    for key in SUMMARY_METRICS:
        values = [getattr(r, key) for r in reports]
        mean[key] = statistics.fmean(values) if values else None
        std[key] = statistics.pstdev(values) if values else None
    return CorpusSummary(len(reports), mean, std)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------
def _open_input(path):
    if path == "-":
        return sys.stdin
    return open(path, encoding="utf-8")


def cmd_eval(args, out, err) -> int:
    failed = False
    reports = []
    writer = None
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)

    with _open_input(args.input) as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = parse_record(json.loads(line))
                report = metrics.evaluate(rec.schedule, args.d)
            except (ValueError, ScheduleError) as exc:
                print(f"line {lineno}: {exc}", file=err)
                failed = True
                continue
            reports.append(report)
            s = rec.schedule
            if writer:
                writer.writerow(
                    [rec.id or ""]
                    + [fmt_num(v) for v in (s.src_len, s.tgt_len, report.tau, report.gamma, report.d_used)]
                    + [fmt_num(getattr(report, k)) for k in SUMMARY_METRICS]
                )
            else:
                row = {"id": rec.id, "src_len": s.src_len, "tgt_len": s.tgt_len}
                row.update(report.as_dict())
                out.write(json.dumps(row) + "\n")

    summary = summarize(reports)
    if writer:
        means = [
            "" if summary.mean[k] is None else fmt_num(summary.mean[k])
            for k in SUMMARY_METRICS
        ]
        writer.writerow(["summary", "", "", "", "", ""] + means)
    else:
        out.write(json.dumps({"summary": summary.as_dict()}) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def build_family(family: str, k: int, src_len: int, tgt_len: int):
    if family == "wait-k":
        return generators.wait_k(k, src_len, tgt_len)
    if family == "catchup":
        return generators.wait_k_catchup(k, src_len, tgt_len)
    if family == "antagonistic":
        return generators.delayed_final_reads(k, src_len, tgt_len)
    if family == "prescient":
        return generators.prescient(tgt_len, src_len)
    if family == "offline":
        return generators.offline(src_len, tgt_len)
    raise ScheduleError(f"unknown family {family!r}")


def cmd_generate(args, out, err) -> int:
    src_len = args.src_len if args.src_len is not None else args.tgt_len
    tgt_len = args.tgt_len if args.tgt_len is not None else src_len
    if src_len is None:
        raise _Usage("--src-len or --tgt-len is required")
    if args.family == "random":
        rng = random.Random(args.seed)
        for i in range(args.count):
            s = generators.random_schedule(rng, src_len, tgt_len, soft=args.soft)
            out.write(json.dumps(schedule_to_record(s, f"random-{args.seed}-{i}")) + "\n")
        return EXIT_OK
    s = build_family(args.family, args.k, src_len, tgt_len)
    rid = f"{args.family}-k{args.k}-{src_len}x{tgt_len}"
    out.write(json.dumps(schedule_to_record(s, rid)) + "\n")
    return EXIT_OK


def _parse_k_range(text: str, src_len: int) -> range:
    try:
        if "-" in text:
            lo, hi = (int(p) for p in text.split("-", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise _Usage(f"bad k range {text!r}; expected K or LO-HI")
    if not 1 <= lo <= hi <= src_len:
        raise _Usage(f"k range {text!r} must lie within [1, {src_len}]")
    return range(lo, hi + 1)


def cmd_compare(args, out, err) -> int:
    src_len = args.src_len
    tgt_len = args.tgt_len if args.tgt_len is not None else src_len
    ks = _parse_k_range(args.k or f"1-{src_len}", src_len)
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    for f in families:
        if f not in FAMILIES or f == "random":
            raise _Usage(f"unknown family {f!r} for compare")

    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["family", "k", "al", "dal"])
    violations = 0
    for family in families:
        family_ks = [0] if family in ("prescient", "offline") else ks
        for k in family_ks:
            s = build_family(family, k, src_len, tgt_len)
            al, _ = metrics.average_lagging(s)
            d = metrics.dal(s)
            if d < al - 1e-12:
                violations += 1
                print(f"{family} k={k}: DAL {d!r} < AL {al!r}", file=err)
            writer.writerow([family, k, fmt_num(al), fmt_num(d)])
    return EXIT_FAIL if violations else EXIT_OK


def cmd_tables(args, out, err) -> int:
    cells = tables.all_cells()
    out.write(tables.format_report(cells))
    bad = [c for c in cells if not c.ok]
    for c in bad:
        print(f"mismatch: {c.table} / {c.name}: expected {c.expected!r}, got {c.actual!r}", file=err)
    return EXIT_FAIL if bad else EXIT_OK


def sample_tie_free(rng: random.Random, max_src: int, max_tgt: int, d, step, attempts=1000):
    """Draw soft schedules until one has no near-ties in its prefix maxima."""
    for _ in range(attempts):
        src_len = rng.randint(1, max_src)
        tgt_len = rng.randint(1, max_tgt)
        s = generators.random_schedule(rng, src_len, tgt_len, soft=True)
        report = metrics.gradient_check(s, d, step)
        if not report.tie_positions:
            return s, report
    raise ScheduleError(f"no tie-free schedule found in {attempts} draws")


def cmd_gradcheck(args, out, err) -> int:
    rng = random.Random(args.seed)
    worst = 0.0
    worst_sum = 0.0
    for _ in range(args.trials):
        s, report = sample_tie_free(rng, args.src_len, args.tgt_len, args.d, args.step)
        worst = max(worst, report.max_abs_diff)
        worst_sum = max(worst_sum, abs(math.fsum(report.analytic) - 1.0))
    ok = worst <= args.tol and worst_sum <= 1e-12
    out.write(
        f"trials={args.trials} seed={args.seed} step={args.step!r} tol={args.tol!r}\n"
        f"worst_max_abs_diff={worst!r}\n"
        f"worst_sum_error={worst_sum!r}\n"
        f"status={'PASS' if ok else 'FAIL'}\n"
    )
    return EXIT_OK if ok else EXIT_FAIL


def _load_single_record(text: str):
    if text == "-":
        raw = sys.stdin.read()
    elif text.lstrip().startswith("{"):
        raw = text
    elif os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            raw = fh.read()
    else:
        raise ScheduleError(f"{text!r} is neither a JSON record nor a readable file")
    lines = [ln for ln in raw.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise ScheduleError(f"expected exactly one record, found {len(lines)}")
    return parse_record(json.loads(lines[0]))


def cmd_render(args, out, err) -> int:
    rec = _load_single_record(args.record)
    tl = oracle.simulate(rec.schedule, args.d)
    out.write(oracle.render_timeline(tl, resolution=args.resolution, color=args.color))
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------
class _Usage(Exception):
    pass


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simul-latency",
        description="Latency metrics (AP, CW, AL, DAL) for simultaneous translation schedules.",
    )
    parser.add_argument("--version", action="store_true", help="print version and kernel backend")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("eval", help="score a file of line-delimited schedule records")
    p.add_argument("input", nargs="?", default="-", help="records file, '-' for stdin")
    p.add_argument("--d", type=_positive_float, default=None, help="fixed write cost (default |x|/|y|)")
    p.add_argument("--format", choices=("csv", "records"), default="csv")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("generate", help="emit schedule records for a family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--src-len", type=_positive_int)
    p.add_argument("--tgt-len", type=_positive_int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=_positive_int, default=1, help="records to draw (random only)")
    p.add_argument("--soft", action="store_true", help="real-valued delays (random only)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("compare", help="AL vs DAL over a k sweep, as CSV")
    p.add_argument("--src-len", type=_positive_int, required=True)
    p.add_argument("--tgt-len", type=_positive_int)
    p.add_argument("--k", help="K or LO-HI (default 1-src_len)")
    p.add_argument("--families", default="wait-k,antagonistic", help="comma-separated families")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("tables", help="recompute the worked example tables and check every cell")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("gradcheck", help="analytic DAL subgradient vs finite differences")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--src-len", type=_positive_int, default=30, help="maximum source length")
    p.add_argument("--tgt-len", type=_positive_int, default=30, help="maximum target length")
    p.add_argument("--d", type=_positive_float, default=None)
    p.add_argument("--step", type=_positive_float, default=metrics.GRADIENT_STEP)
    p.add_argument("--tol", type=_positive_float, default=metrics.GRADIENT_TOL)
    p.set_defaults(func=cmd_gradcheck)

    p = sub.add_parser("render", help="draw the write timeline of one record")
    p.add_argument("record", help="JSON record, path to a one-record file, or '-'")
    p.add_argument("--d", type=float, default=None, help="write cost (default |x|/|y|; 0 allowed)")
    p.add_argument("--resolution", type=_positive_int, default=2, help="columns per source unit")
    p.add_argument("--color", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.version:
        from simul_latency import __version__

        out.write(f"simul-latency {__version__} (kernels: {_kernels.BACKEND})\n")
        return EXIT_OK
    if args.command is None:
        parser.print_usage(err)
        return EXIT_USAGE
    if args.command == "gradcheck" and args.trials < 1:
        parser.error("--trials must be >= 1")
    try:
        return args.func(args, out, err)
    except _Usage as exc:
        print(f"simul-latency {args.command}: error: {exc}", file=err)
        return EXIT_USAGE
    except (ScheduleError, OSError, json.JSONDecodeError) as exc:
        print(f"simul-latency {args.command}: {exc}", file=err)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
