"""ringlab command line: inspect rings, decompose elements, check properties, verify claims."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import limits
from .analysis import jacobson_radical, jstar_radical, prime_radical, special_sets
from .cache import SetCache
from .decompositions import Kind, find_decomposition
from .expr import RingSyntaxError
from .literals import LiteralError
from .predicates import PREDICATES, check_property
from .rings import Ring, RingBuildError, build_ring
from .theorems import REGISTRY, TheoremReport, run_all, run_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

SETS = {
    "idempotents": lambda R: special_sets(R).idempotents,
    "neg-idempotents": lambda R: special_sets(R).neg_idempotents,
    "units": lambda R: special_sets(R).units,
    "nilpotents": lambda R: special_sets(R).nilpotents,
    "jacobson": jacobson_radical,
    "jstar": jstar_radical,
    "prime-radical": prime_radical,
}

DESCRIBE_FLAGS = ("commutative", "abelian", "local", "boolean", "semiprime")


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("engine options")
    g.add_argument("--jobs", type=_positive, default=argparse.SUPPRESS, help="worker processes for verify/report")
    g.add_argument("--max-order", type=_positive, default=argparse.SUPPRESS, help="largest ring to enumerate")
    g.add_argument("--lattice-budget", type=_positive, default=argparse.SUPPRESS, help="largest ring for ideal lattices")
    g.add_argument("--cache-dir", default=argparse.SUPPRESS, help="special-set cache (default $RINGLAB_CACHE_DIR)")
    g.add_argument("--no-cache", action="store_true", default=argparse.SUPPRESS, help="neither read nor write the cache")
    g.add_argument("--format", choices=("json", "csv", "table"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="ringlab", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("describe", parents=[common], help="order, characteristic and basic flags")
    d.add_argument("ring")

    s = sub.add_parser("sets", parents=[common], help="list a special subset of a ring")
    s.add_argument("ring")
    s.add_argument("which", choices=sorted(SETS))

    dc = sub.add_parser("decompose", parents=[common], help="find a decomposition of one element")
    dc.add_argument("ring")
    dc.add_argument("element")
    dc.add_argument("kind", help=", ".join(k.value for k in Kind))

    c = sub.add_parser("check", parents=[common], help="decide a ring property")
    c.add_argument("ring")
    c.add_argument("property", help=", ".join(sorted(PREDICATES)))

    v = sub.add_parser("verify", parents=[common], help="run registry checks")
    v.add_argument("target", help="check id or 'all'")
    v.add_argument("--params", help="JSON object overriding the default instances of one check")

    r = sub.add_parser("report", parents=[common], help="per-check summary of the full registry run")
    r.add_argument("--output", help="also write the full JSON report here")
    return p


DEFAULTS = {"jobs": 1, "max_order": None, "lattice_budget": None, "cache_dir": None, "no_cache": False, "format": "json"}


def _config(ns: argparse.Namespace) -> argparse.Namespace:
    for k, v in DEFAULTS.items():
        if not hasattr(ns, k):
            setattr(ns, k, v)
    return ns


# ---------------------------------------------------------------------------
# output


def _emit(rows: list[dict], fmt: str, out, columns: list[str] | None = None, payload=None) -> None:
    if fmt == "json":
        json.dump(rows if payload is None else payload, out, indent=2, ensure_ascii=False)
        out.write("\n")
        return
    columns = columns or (list(rows[0]) if rows else [])
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        w.writerows(cells)
        return
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() + "\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v, ensure_ascii=False, separators=(",", ":"))
    return str(v)


# ---------------------------------------------------------------------------
# commands


def _ring(ns, text: str) -> Ring:
    R = build_ring(text)
    if not ns.no_cache:
        limits.require(R.order, "max_order", "special sets")
        SetCache(ns.cache_dir).sets_for(R)
    return R


def cmd_describe(ns, out) -> int:
    R = _ring(ns, ns.ring)
    info = {"ring": R.name, "order": R.order, "characteristic": R.characteristic}
    for name in DESCRIBE_FLAGS:
        try:
            info[name] = check_property(R, name).value
        except limits.BudgetExceeded:
            info[name] = "unavailable"
    rows = [{"field": k, "value": v} for k, v in info.items()]
    _emit(rows, ns.format, out, ["field", "value"], payload=info)
    return EXIT_OK


def cmd_sets(ns, out) -> int:
    R = _ring(ns, ns.ring)
    elems = [R.format(int(x)) for x in SETS[ns.which](R)]
    payload = {"ring": R.name, "set": ns.which, "size": len(elems), "elements": elems}
    _emit([{"element": e} for e in elems], ns.format, out, ["element"], payload=payload)
    return EXIT_OK


def cmd_decompose(ns, out) -> int:
    R = _ring(ns, ns.ring)
    try:
        kind = Kind.parse(ns.kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    a = R.parse(ns.element)
    d = find_decomposition(R, a, kind)
    payload = {"ring": R.name, "element": R.format(a), "kind": kind.value, "decomposition": None}
    if d is not None:
        payload["decomposition"] = d.to_json(R)
    row = {"ring": R.name, "element": R.format(a), "kind": kind.value}
    row.update(d.to_json(R) if d is not None else {"sign": None, "e": "none", "u": None, "w": None})
    _emit([row], ns.format, out, ["ring", "element", "kind", "sign", "e", "u", "w"], payload=payload)
    return EXIT_OK if d is not None else EXIT_FAIL


def cmd_check(ns, out) -> int:
    R = _ring(ns, ns.ring)
    if ns.property not in PREDICATES:
        raise UsageError(f"unknown property {ns.property!r}; choose from {', '.join(sorted(PREDICATES))}")
    res = check_property(R, ns.property)
    witness = None
    if res.witness is not None:
        witness = [R.format(w) for w in res.witness]
        witness = witness[0] if len(witness) == 1 else witness
    payload = {"property": ns.property, "ring": R.name, "value": res.value, "witness": witness}
    _emit([payload], ns.format, out, ["property", "ring", "value", "witness"], payload=payload)
    return EXIT_OK if res.value else EXIT_FAIL


def _run_reports(ns, ids, params=None) -> list[TheoremReport]:
    if params is not None:
        return [run_check(ids[0], params)]
    return run_all(ids, jobs=ns.jobs)


REPORT_COLUMNS = ["id", "params", "verdict", "witnesses"]


def _status(reports) -> int:
    return EXIT_OK if all(r.verdict != "fail" for r in reports) else EXIT_FAIL


def cmd_verify(ns, out) -> int:
    if ns.target == "all":
        ids = None
        if ns.params:
            raise UsageError("--params needs a single check id")
    elif ns.target in REGISTRY:
        ids = [ns.target]
    else:
        raise UsageError(f"unknown check {ns.target!r}; known: {', '.join(REGISTRY)}")
    params = None
    if ns.params:
        try:
            params = json.loads(ns.params)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--params is not JSON: {exc}") from None
        if not isinstance(params, dict):
            raise UsageError("--params must be a JSON object")
    reports = _run_reports(ns, ids, params)
    rows = [r.to_json() for r in reports]
    _emit(rows, ns.format, out, REPORT_COLUMNS)
    return _status(reports)


def cmd_report(ns, out) -> int:
    reports = run_all(None, jobs=ns.jobs)
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    rows = []
    for cid, check in REGISTRY.items():
        mine = [r for r in reports if r.id == cid]
        rows.append({
            "id": cid,
            "covers": list(check.covers),
            "instances": len(mine),
            "pass": sum(r.verdict == "pass" for r in mine),
            "fail": sum(r.verdict == "fail" for r in mine),
            "skipped": sum(r.verdict == "skipped" for r in mine),
        })
    _emit(rows, ns.format, out, ["id", "covers", "instances", "pass", "fail", "skipped"])
    return _status(reports)


COMMANDS = {
    "describe": cmd_describe,
    "sets": cmd_sets,
    "decompose": cmd_decompose,
    "check": cmd_check,
    "verify": cmd_verify,
    "report": cmd_report,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = _config(parser.parse_args(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    overrides = {}
    if ns.max_order is not None:
        overrides["max_order"] = ns.max_order
    if ns.lattice_budget is not None:
        overrides["lattice_budget"] = ns.lattice_budget
    try:
        with limits.using(**overrides):
            return COMMANDS[ns.command](ns, out)
    except limits.BudgetExceeded as exc:
        print(f"ringlab: budget exceeded: {exc}", file=err)
        return EXIT_BUDGET
    except (RingSyntaxError, LiteralError, RingBuildError, UsageError) as exc:
        print(f"ringlab: {exc}", file=err)
        return EXIT_USAGE
    except BrokenPipeError:
        # reader went away (e.g. `| head`); silence the flush at exit
        if out is sys.stdout:
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_FAIL


def render_to_string(argv) -> tuple[int, str]:
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()
