"""Command-line interface: ``rm-srr {gen,recovery,hypergraph,bounds,check,verify}``.

Exit codes: 0 on success, 1 on invalid input (or a failed verify suite),
2 when a request exceeds an enumeration ceiling.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .exceptions import CapacityError, ValidationError
from .hypergraph import GEOMETRIC_POLICY, POLICIES, build_hypergraph, induced_subgraph
from .lp import fractional_matching
from .recovery import oracle_all_recovery_sets, recovery_to_json
from .rm import RmParams, matrix_to_csv, matrix_to_json, matrix_to_table, object_order
from .srr import bounds_report, default_policy, fraction_str, membership
from .validation import parse_rate_list
from .verify import FAIL, run_suite, suite_passed

FORMATS = ("json", "csv", "table")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _params(args) -> RmParams:
    return RmParams(args.r, args.m)


def _objects(p: RmParams, args) -> list[int]:
    if args.j is not None and args.order is not None:
        raise ValidationError("give at most one of -j and --order")
    if args.j is not None:
        object_order(p, args.j)
        return [args.j]
    if args.order is not None:
        lo, hi = p.order_range(args.order)
        return list(range(lo, hi + 1))
    return list(range(1, p.k + 1))


def cmd_gen(args) -> tuple[str, int]:
    p = _params(args)
    if not p.has_dual:
        print(f"warning: {p} has a trivial dual; recovery and bound commands will refuse it", file=sys.stderr)
    if args.format == "json":
        return _dump_json(matrix_to_json(p)), 0
    if args.format == "csv":
        return matrix_to_csv(p), 0
    return matrix_to_table(p), 0


def _recovery_entry(p: RmParams, j: int, policy: str) -> dict:
    if policy == GEOMETRIC_POLICY:
        return recovery_to_json(p, j)
    obj = object_order(p, j)
    return {
        "objectIndex": j,
        "order": obj.order,
        "symbol": obj.monomial.symbol,
        "all": [list(R.columns) for R in oracle_all_recovery_sets(p, j)],
    }


def cmd_recovery(args) -> tuple[str, int]:
    p = _params(args)
    p.require_dual()
    policy = args.policy or GEOMETRIC_POLICY
    entries = [_recovery_entry(p, j, policy) for j in _objects(p, args)]
    if args.format == "json":
        return _dump_json({"params": {"r": p.r, "m": p.m}, "policy": policy, "objects": entries}), 0
    rows = []
    for e in entries:
        j = e["objectIndex"]
        if policy == GEOMETRIC_POLICY:
            rows.append((j, "smallest", len(e["smallest"]), e["smallest"]))
            rows += [(j, "second-smallest", len(s), s) for s in e["secondSmallest"]]
        else:
            rows += [(j, "minimal", len(s), s) for s in e["all"]]
    if args.format == "csv":
        return _csv([("object", "kind", "size", "servers")] + [
            (j, kind, size, " ".join(map(str, s))) for j, kind, size, s in rows
        ]), 0
    lines = [f"{j:>3}  {kind:<16} {size:>3}  {{{', '.join(map(str, s))}}}" for j, kind, size, s in rows]
    return "\n".join(lines) + "\n", 0


def cmd_hypergraph(args) -> tuple[str, int]:
    p = _params(args)
    policy = args.policy or default_policy(p)
    if policy == GEOMETRIC_POLICY:
        p.require_dual()
    objects = _objects(p, args)
    g = build_hypergraph(p, policy, objects)
    if args.j is not None or args.order is not None:
        g = induced_subgraph(g, objects)
    if args.format == "json":
        out = g.to_json()
        out["policy"] = policy
        if args.lp:
            res = fractional_matching(g)
            out["matchingNumber"] = fraction_str(res.value)
            out["matching"] = [fraction_str(x) for x in res.weights]
        return _dump_json(out), 0
    if args.format == "csv":
        return g.to_csv(), 0
    text = g.to_table()
    if args.lp:
        text += f"matching number {fraction_str(fractional_matching(g).value)}\n"
    return text, 0


def cmd_bounds(args) -> tuple[str, int]:
    p = _params(args)
    report = bounds_report(p, args.policy)
    if args.format == "json":
        return _dump_json(report), 0
    header = ("j", "order", "symbol", "lambdaMax", "numSecondSmallest", "replication")
    rows = [tuple(o[h] for h in header) for o in report["perObject"]]
    if args.format == "csv":
        return _csv([header] + rows), 0
    lines = [f"{p}  policy={report['policy']}"]
    lines += [f"  j={j:<3} order {o}  {s:<6} lambda_max {lm:<6} second-smallest {ns:<4} replication {rep}"
              for j, o, s, lm, ns, rep in rows]
    for b in report["perOrderBound"]:
        lines.append(f"  order {b['order']}: same-order bound {b['sameOrderBound']}, total bound {b['totalBound']}")
    lines.append(f"  enclosing simplex: sum <= {report['simplices']['Omega']['sumBound']}")
    if "nuStar" in report:
        lines.append(f"  nu* = {report['nuStar']}")
    return "\n".join(lines) + "\n", 0


def _read_demand(args):
    if (args.demand is None) == (args.demand_file is None):
        raise ValidationError("give exactly one of --demand and --demand-file")
    if args.demand is not None:
        return parse_rate_list(args.demand)
    text = Path(args.demand_file).read_text()
    stripped = text.strip()
    if stripped.startswith("[") or stripped.startswith("{"):
        data = json.loads(stripped)
        if isinstance(data, dict):
            data = data.get("demand", data.get("lambda"))
        if not isinstance(data, list):
            raise ValidationError("demand file must hold a JSON list of rates")
        return parse_rate_list(" ".join(str(x) for x in data))
    return parse_rate_list(text)


def cmd_check(args) -> tuple[str, int]:
    p = _params(args)
    p.require_dual()
    lam = _read_demand(args)
    result = membership(p, lam, args.policy)
    out = {"params": {"r": p.r, "m": p.m}, "demand": [fraction_str(x) for x in lam]}
    out.update(result.to_json())
    if not result.exact:
        out["note"] = "inner approximation: outside means not servable with smallest and second-smallest sets"
    if args.format == "json":
        return _dump_json(out), 0
    if args.format == "csv":
        rows = [("object", "servers", "rate")]
        for part in out.get("allocation", []):
            rows += [(part["object"], " ".join(map(str, s["servers"])), s["rate"]) for s in part["sets"]]
        return _csv([("verdict", out["verdict"])] + rows), 0
    lines = [f"{out['verdict']} ({out['policy']} policy)"]
    for part in out.get("allocation", []):
        for s in part["sets"]:
            lines.append(f"  object {part['object']}: {s['rate']} on {{{', '.join(map(str, s['servers']))}}}")
    if "certificate" in out:
        lines.append(f"  max scaling {out['maxScale']}; server weights {out['certificate']['serverWeights']}")
    return "\n".join(lines) + "\n", 0


def cmd_verify(args) -> tuple[str, int]:
    p = _params(args)
    results = run_suite(p)
    code = 0 if suite_passed(results) else 1
    if args.format == "json":
        body = {"params": {"r": p.r, "m": p.m}, "passed": code == 0, "checks": [r.to_json() for r in results]}
        return _dump_json(body), code
    if args.format == "csv":
        return _csv([("check", "status", "detail")] + [(r.name, r.status, r.detail) for r in results]), code
    lines = [f"{r.status.upper():<5} {r.name}: {r.detail}" for r in results]
    failed = sum(r.status == FAIL for r in results)
    lines.append(f"{p}: {'all checks passed' if not failed else f'{failed} check(s) failed'}")
    return "\n".join(lines) + "\n", code


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rm-srr", description="Reed-Muller recovery sets and service rate regions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(name, help_text, fmt_default="json"):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("-r", type=int, required=True, help="code order")
        sp.add_argument("-m", type=int, required=True, help="number of variables (length 2**m)")
        sp.add_argument("--format", choices=FORMATS, default=fmt_default)
        sp.add_argument("--out", type=Path, help="write output here instead of stdout")
        return sp

    sp = common("gen", "generator matrix")
    sp.set_defaults(func=cmd_gen)

    for name, func, help_text in (
        ("recovery", cmd_recovery, "recovery sets per object"),
        ("hypergraph", cmd_hypergraph, "recovery hypergraph"),
    ):
        sp = common(name, help_text)
        sp.add_argument("-j", type=int, help="single object index")
        sp.add_argument("--order", type=int, help="all objects of this order")
        sp.add_argument("--policy", choices=POLICIES)
        sp.set_defaults(func=func)
        if name == "hypergraph":
            sp.add_argument("--lp", action="store_true", help="also solve the fractional matching LP")

    sp = common("bounds", "closed-form bounds and simplices")
    sp.add_argument("--policy", choices=POLICIES)
    sp.set_defaults(func=cmd_bounds)

    sp = common("check", "service rate region membership of a demand vector")
    sp.add_argument("--demand", help='rates such as "1,1/2,0.5"')
    sp.add_argument("--demand-file", help="file with rates (JSON list or separated text)")
    sp.add_argument("--policy", choices=POLICIES)
    sp.set_defaults(func=cmd_check)

    sp = common("verify", "run the structural self-check suite", fmt_default="table")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
