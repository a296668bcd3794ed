"""``ckintervals`` command line.

Exit codes: 0 success, 1 a proven negative result (no square root, operands
not signed, ...), 2 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction

from .errors import CKError, NegativeResult
from .exact import parse_number
from .interval import minkowski_sum, product_envelope, signed_case, signed_product
from .literals import emit_interval, emit_space, emit_value, parse_interval
from .obstruction import SCENARIOS, certify_nonfactorable, thm32_closure_witness
from .oracle import formula_vs_oracle, real_product_check, sum_oracle_check
from .selector import demo_rows
from .sqrt import sqrt_branch, interval_sqrt, necessity_check, verify_square

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2

DEFAULT_EPS = tuple(Fraction(1, 10**i) for i in range(1, 7))


class InputError(Exception):
    pass


# -- commands ---------------------------------------------------------------


def _interval_arg(args, name):
    raw = getattr(args, name, None)
    if raw is None:
        raise InputError(f"--{name} is required")
    if isinstance(raw, str) and raw.startswith("@"):
        with open(raw[1:], encoding="utf-8") as fh:
            raw = json.load(fh)
    return parse_interval(raw)


def cmd_canonical(args):
    I = _interval_arg(args, "interval")
    return {"result": emit_interval(I), "empty": I.empty}


def cmd_sum(args):
    I, J = _interval_arg(args, "lhs"), _interval_arg(args, "rhs")
    return {"result": emit_interval(minkowski_sum(I, J))}


def cmd_product(args):
    I, J = _interval_arg(args, "lhs"), _interval_arg(args, "rhs")
    if I.space.is_discrete:
        try:
            case = signed_case(I, J)
        except NegativeResult:
            # every real function on a discrete space is continuous: pointwise products
            return {"result": emit_interval(product_envelope(I, J)), "case": "discrete"}
        return {"result": emit_interval(signed_product(I, J)), "case": case}
    case = signed_case(I, J)
    return {"result": emit_interval(signed_product(I, J)), "case": case}


def cmd_sqrt(args):
    I = _interval_arg(args, "interval")
    ok, point = necessity_check(I)
    if not ok:
        report = {"error": "NoSquareRoot", "necessity": False, "point": _point(point)}
        return report, EXIT_NEGATIVE
    branch = sqrt_branch(I)
    pair = interval_sqrt(I)
    rep = verify_square(pair.principal, I, seed=args.seed)
    return {
        "branch": branch,
        "principal": emit_interval(pair.principal),
        "mirrored": emit_interval(pair.mirrored),
        "verified": rep.to_json(),
    }


def _point(p):
    return p if p is None or isinstance(p, int) else str(p)


def cmd_selector_demo(args):
    ts = [parse_number(args.t)] if args.t is not None else None
    rows = demo_rows(args.grid or 5, ts=tuple(ts)) if ts else demo_rows(args.grid or 5)
    out = []
    for r in rows:
        out.append({k: (emit_value(v) if not isinstance(v, (bool, str)) else v) for k, v in r.items()})
    return {"rows": out, "count": len(out)}


def cmd_counterexample(args):
    depth = args.depth or 1000
    sc = SCENARIOS[args.name](depth)
    cert = certify_nonfactorable(sc, depth)
    report = {"certificate": cert.to_json(per_index=not args.summary), "space": emit_space(sc.space)}
    if args.name == "thm32":
        eps = [Fraction(parse_number(args.eps))] if args.eps is not None else list(DEFAULT_EPS)
        report["closure_witnesses"] = [thm32_closure_witness(sc, e).to_json() for e in eps]
    code = EXIT_OK if cert.conclusive else EXIT_NEGATIVE
    return report, code


def cmd_oracle_check(args):
    if args.profile == "sum":
        return sum_oracle_check(args.trials, args.size, args.seed)
    if args.profile == "real":
        return real_product_check(args.trials, args.grid or 1000, args.seed)
    return formula_vs_oracle(args.trials, args.size, args.profile, args.seed)


COMMANDS = {
    "canonical": cmd_canonical,
    "sum": cmd_sum,
    "product": cmd_product,
    "sqrt": cmd_sqrt,
    "selector-demo": cmd_selector_demo,
    "counterexample": cmd_counterexample,
    "oracle-check": cmd_oracle_check,
}


# -- output -----------------------------------------------------------------


def _rows_for_csv(command, report):
    if command == "selector-demo":
        return report["rows"]
    if command == "counterexample":
        cert = report["certificate"]
        if "per_index" in cert:
            return [{"n": n, "set": json.dumps(s, sort_keys=True)} for n, s in cert["per_index"]]
        return [{"key": k, "value": json.dumps(v, sort_keys=True)} for k, v in sorted(cert.items())]
    return [{"key": k, "value": json.dumps(v, sort_keys=True)} for k, v in sorted(report.items())]


def render(command, report, fmt):
    if fmt == "csv":
        rows = _rows_for_csv(command, report)
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue()
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".ckintervals-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- parser -----------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", default=None, help="write the report here (atomically)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--grid", type=int, default=None)
    common.add_argument("--depth", type=int, default=None)
    common.add_argument("--eps", default=None)
    common.add_argument("--t", default=None)
    common.add_argument("--scenario", default=None, help="JSON file whose keys supply arguments")

    p = argparse.ArgumentParser(prog="ckintervals", description="Exact interval algebra in C(K).")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("canonical", "sqrt"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--interval")
    for name in ("sum", "product"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--lhs")
        s.add_argument("--rhs")
    sub.add_parser("selector-demo", parents=[common])
    s = sub.add_parser("counterexample", parents=[common])
    s.add_argument("name", choices=sorted(SCENARIOS))
    s.add_argument("--summary", action="store_true", help="omit per-index feasible sets")
    s = sub.add_parser("oracle-check", parents=[common])
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--size", type=int, default=3)
    s.add_argument(
        "--profile",
        default="signed+",
        choices=("signed+", "signed-", "3.1", "3.2", "3.3", "3.4", "nonneg", "mixed", "sum", "real"),
    )
    return p


def _apply_scenario(args):
    if not args.scenario:
        return
    with open(args.scenario, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise InputError("scenario file must hold a JSON object")
    for key, val in data.items():
        attr = key.replace("-", "_")
        if attr in ("command", "name") and getattr(args, attr, val) != val:
            raise InputError(f"scenario {key}={val!r} does not match the invocation")
        if getattr(args, attr, None) is None:
            setattr(args, attr, val)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or ("csv" if args.command == "selector-demo" else "json")
    try:
        _apply_scenario(args)
        result = COMMANDS[args.command](args)
        report, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    except NegativeResult as exc:
        report = {"error": type(exc).__name__, "message": str(exc), "point": _point(exc.point)}
        report.update({k: emit_value(v) for k, v in exc.details.items()})
        code = EXIT_NEGATIVE
    except (InputError, CKError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"ckintervals: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render(args.command, report, fmt)
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
