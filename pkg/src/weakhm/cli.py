"""Command-line front end: ``weakhm <command> ...``.

Each invocation writes one report document to stdout. Exit codes: 0 success,
1 a verification failed, 2 usage error, 3 a resource limit was hit.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .compositions import DEFAULT_ENUM_CAP, Space, enumerate_space
from .constructions import hm_bound, hm_extremal_family
from .errors import ResourceLimitError, WeakHMError
from .intersect import (
    Family,
    classify_family,
    first_violating_pair,
    is_independent,
    is_maximal_t_intersecting,
)
from .reports import FAIL, INCONCLUSIVE, jsonable
from .search import DEFAULT_VERTEX_CAP, max_t_intersecting
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _coord_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text",
                        help="output format (json is the canonical document)")
    common.add_argument("--timing", action="store_true",
                        help="fill in elapsed_ms (otherwise null, keeping output reproducible)")

    parser = argparse.ArgumentParser(prog="weakhm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list P(n, l)")
    p.add_argument("--n", type=_non_negative, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--cap", type=_positive, default=DEFAULT_ENUM_CAP)

    p = sub.add_parser("bound", parents=[common], help="evaluate the extremal bound")
    p.add_argument("--n", type=_non_negative, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)

    p = sub.add_parser("construct", parents=[common], help="build the extremal family")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--T", type=_coord_list, default=None, help="comma-separated t-set, default 1..t")
    p.add_argument("--emit", choices=("family", "summary"), default="summary")

    p = sub.add_parser("check", parents=[common], help="inspect a family file")
    p.add_argument("--family", type=Path, required=True,
                   help="one composition per line, parts comma-separated")
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--cap", type=_positive, default=DEFAULT_ENUM_CAP)

    p = sub.add_parser("search", parents=[common], help="exact maximum t-intersecting family")
    p.add_argument("--n", type=_non_negative, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--constraint", choices=("any", "nontrivial"), default="any")
    p.add_argument("--budget", type=_non_negative, default=None, help="search node limit")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--vertex-cap", type=_positive, default=DEFAULT_VERTEX_CAP)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max-m", type=_positive, default=None)
    p.add_argument("--max-n", type=_positive, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=_non_negative, default=None)
    p.add_argument("--workers", type=_positive, default=1)
    return parser


def read_family(path: Path) -> Family:
    rows = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append(tuple(int(x) for x in line.split(",")))
        except ValueError:
            raise UsageError(f"{path}:{lineno}: not a comma-separated list of integers") from None
    if not rows:
        raise UsageError(f"{path}: no compositions found")
    space = Space(sum(rows[0]), len(rows[0]))
    for row in rows:
        if row not in space:
            raise UsageError(f"{path}: {row} does not lie in {space} like the first line")
    if len(set(rows)) != len(rows):
        raise UsageError(f"{path}: duplicate compositions")
    return Family(space, tuple(rows))


def _cmd_enumerate(args):
    comps = enumerate_space(Space(args.n, args.l), args.cap)
    return {"n": args.n, "l": args.l}, [list(u) for u in comps], 0


def _cmd_bound(args):
    b = hm_bound(args.n, args.l, args.t)
    return {"n": args.n, "l": args.l, "t": args.t}, [b.to_dict()], 0


def _cmd_construct(args):
    family = hm_extremal_family(args.n, args.l, args.t, args.T)
    T = args.T if args.T is not None else list(range(1, args.t + 1))
    params = {"n": args.n, "l": args.l, "t": args.t, "T": sorted(T), "emit": args.emit}
    if args.emit == "family":
        return params, [list(u) for u in family], 0
    violation = first_violating_pair(family, args.t)
    summary = {
        "size": len(family),
        "bound": hm_bound(args.n, args.l, args.t).value,
        "t_intersecting": violation is None,
        "classification": classify_family(family, args.t).to_dict() if violation is None else None,
    }
    return params, [summary], 0 if violation is None else 1


def _cmd_check(args):
    family = read_family(args.family)
    violation = first_violating_pair(family, args.t)
    result = {
        "space": {"n": family.space.n, "l": family.space.l},
        "size": len(family),
        "t_intersecting": violation is None,
        "counterexample": [list(u) for u in violation] if violation else None,
        "independent": is_independent(family),
        "classification": None,
        "maximal": None,
    }
    if violation is None:
        result["classification"] = classify_family(family, args.t).to_dict()
        result["maximal"] = is_maximal_t_intersecting(family, args.t, args.cap)
    return {"family": str(args.family), "t": args.t}, [result], 0 if violation is None else 1


def _cmd_search(args):
    constraint = "no-t-fixation" if args.constraint == "nontrivial" else "any"
    result = max_t_intersecting(Space(args.n, args.l), args.t, constraint, args.budget,
                                args.workers, args.vertex_cap)
    params = {"n": args.n, "l": args.l, "t": args.t, "constraint": constraint, "budget": args.budget,
              "workers": args.workers}
    return params, [result.to_dict()], 0


def _cmd_verify(args):
    reports = run_suite(args.suite, args.max_m, args.max_n, args.seed, args.budget, args.workers)
    params = {"suite": args.suite, "max_m": args.max_m, "max_n": args.max_n, "seed": args.seed,
              "budget": args.budget, "workers": args.workers}
    return params, [r.to_dict() for r in reports], sum(r.status == FAIL for r in reports)


_COMMANDS = {
    "enumerate": _cmd_enumerate, "bound": _cmd_bound, "construct": _cmd_construct,
    "check": _cmd_check, "search": _cmd_search, "verify": _cmd_verify,
}


def _exit_code(command: str, results: list, failures: int) -> int:
    if failures:
        return EXIT_FAILED
    if command == "search" and results and results[0]["budget_hit"]:
        return EXIT_RESOURCE
    if command == "verify" and any(r["status"] == INCONCLUSIVE for r in results):
        return EXIT_RESOURCE
    return EXIT_OK


def render_text(doc: dict) -> str:
    command, results = doc["command"], doc["results"]
    if "error" in doc:
        return f"error: {doc['error']}\n"
    lines: list[str] = []
    if command in ("enumerate",) or (command == "construct" and doc["params"]["emit"] == "family"):
        lines = [",".join(str(x) for x in u) for u in results]
    elif command == "bound":
        lines = [str(results[0]["value"])]
    elif command in ("construct", "check"):
        lines = [f"{k}: {json.dumps(v)}" for k, v in results[0].items()]
    elif command == "search":
        res = results[0]
        lines = [f"best_size: {res['best_size']}", f"optimal: {json.dumps(res['optimal'])}",
                 f"nodes_explored: {res['nodes_explored']}", "witness:"]
        lines += ["  " + ",".join(str(x) for x in u) for u in res["witness"]]
    elif command == "verify":
        tally: dict[str, dict[str, int]] = {}
        for r in results:
            counts = tally.setdefault(r["case_id"], {})
            counts[r["status"]] = counts.get(r["status"], 0) + 1
        for case_id in sorted(tally):
            parts = ", ".join(f"{n} {status}" for status, n in sorted(tally[case_id].items()))
            lines.append(f"{case_id}: {parts}")
        for r in results:
            if r["status"] == FAIL:
                lines.append(f"FAIL {r['case_id']} {json.dumps(r['params'])}: "
                             f"{r['lhs']} {r['relation']} {r['rhs']} does not hold")
        for r in results:
            if r["case_id"] == "MAIN_SMALL" and r["status"] != "hypothesis-not-met":
                d = r["detail"]
                lines.append(f"MAIN_SMALL {json.dumps(r['params'])}: best={r['lhs']} "
                             f"bound={d.get('bound')} versus_bound={d.get('versus_bound')}")
        lines.append(f"failures: {doc['failures']}")
    return "\n".join(lines) + "\n"


def render_csv(doc: dict) -> str:
    rows = doc["results"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows and isinstance(rows[0], list):
        writer.writerows(rows)
        return buf.getvalue()
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([v if isinstance(v, (int, str)) and not isinstance(v, bool) else json.dumps(v)
                         for v in (row.get(c) for c in columns)])
    return buf.getvalue()


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        return render_csv(doc)
    return render_text(doc)


def run_command(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    started = time.perf_counter()
    doc = {"command": args.command, "params": {}, "results": [], "failures": 0, "elapsed_ms": None}
    try:
        params, results, failures = _COMMANDS[args.command](args)
        doc.update(params=jsonable(params), results=jsonable(results), failures=failures)
        code = _exit_code(args.command, doc["results"], failures)
    except ResourceLimitError as exc:
        doc["error"], code = str(exc), EXIT_RESOURCE
    except (UsageError, WeakHMError, ValueError, OSError) as exc:
        doc["error"], code = str(exc), EXIT_USAGE
    if args.timing:
        doc["elapsed_ms"] = round((time.perf_counter() - started) * 1000)
    out = render(doc, args.format)
    if "error" in doc and args.format == "text":
        sys.stderr.write(out)
    else:
        stdout.write(out)
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
