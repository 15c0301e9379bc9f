"""Command-line front end: JSON in, JSON (or a text table) out."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .arrangements import LineArrangement, addition_deletion, freeness
from .catalog import build, list_entries
from .curves import curve_CP, decomposed_curve, parametrize, syzygy_min_degree
from .errors import OracleMismatch, ParseError, ToolkitError
from .exactfield import parse_field
from .invariants import unexpected_report
from .lefschetz import PowerIdeal, power_ideal_hf_table, quotient_hf_table, slp_at, slp_table, terao_surjectivity
from .schemes import FatPointSweep, GenericMode, PointConfig, ProjPoint, dual_lines, dual_points

SCHEMA = "1"
SEED_ENV = "UNEXPCURVES_SEED"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument plumbing


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {SEED_ENV} must be an integer, got {raw!r}")


def _common(p: argparse.ArgumentParser, inputs: bool = True):
    p.add_argument("--field", help="Q, Fp:<p>; defaults to the file's or catalog entry's field")
    p.add_argument("--mode", choices=("probe", "symbolic"), default="probe")
    p.add_argument("--samples", type=int, default=2)
    p.add_argument("--bound", type=int, default=10**4)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "table"), default="json")
    if inputs:
        p.add_argument("--in", dest="infile", help="JSON file with points or lines")
        p.add_argument("--catalog", help="catalog entry name")
        p.add_argument("--params", default="", help="catalog parameters, e.g. a=3,b=13")


def _parse_params(text: str) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"--params: expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        v = v.strip()
        if ":" in v:
            out[k.strip()] = [int(x) for x in v.split(":")]
        else:
            try:
                out[k.strip()] = int(v)
            except ValueError:
                out[k.strip()] = v
    return out


def _mode(args) -> GenericMode:
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if args.bound < 1:
        raise UsageError("--bound must be >= 1")
    return GenericMode(args.mode, args.samples, args.bound, args.seed)


def _field(args, fallback: str | None):
    text = args.field or fallback or "Q"
    try:
        return parse_field(text)
    except ParseError as exc:
        raise UsageError(f"--field: {exc}")


def _load(args, want: str):
    """A PointConfig (want="points") or LineArrangement (want="lines") from --in or --catalog."""
    if bool(args.infile) == bool(args.catalog):
        raise UsageError("give exactly one of --in and --catalog")
    if args.catalog:
        from .catalog import entry

        e = entry(args.catalog)
        field = _field(args, e.default_field)
        obj = build(args.catalog, _parse_params(args.params), field)
    else:
        path = Path(args.infile)
        if not path.exists():
            raise UsageError(f"--in: no such file {args.infile}")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise UsageError(f"--in: not valid JSON ({exc})")
        fallback = data.get("field") if isinstance(data, dict) else None
        field = _field(args, fallback)
        if isinstance(data, dict) and "points" in data:
            obj = PointConfig.from_json(field, data["points"])
        elif isinstance(data, dict) and "lines" in data:
            obj = LineArrangement.from_json(field, data["lines"])
        elif isinstance(data, list):
            obj = PointConfig.from_json(field, data) if want == "points" else LineArrangement.from_json(field, data)
        else:
            raise UsageError("--in: expected a list or an object with \"points\" or \"lines\"")
    if want == "points":
        return obj if isinstance(obj, PointConfig) else dual_points(obj)
    return obj if isinstance(obj, LineArrangement) else dual_lines(obj)


def _point(text: str, field) -> ProjPoint:
    parts = [x.strip() for x in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"--P: expected three comma-separated coordinates, got {text!r}")
    try:
        return ProjPoint(field, [field.coerce(x) for x in parts])
    except (ValueError, ToolkitError) as exc:
        raise UsageError(f"--P: {exc}")


def _pair(text: str, flag: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{flag}: expected two integers a,b, got {text!r}")
    return a, b


# ---------------------------------------------------------------------------
# subcommands


def cmd_invariants(args) -> dict:
    Z = _load(args, "points")
    rep = unexpected_report(Z, _mode(args))
    return {"field": str(Z.field), "points": Z.to_json(), **rep.to_json()}


def cmd_curve(args) -> dict:
    Z = _load(args, "points")
    mode = _mode(args)
    P = _point(args.P, Z.field) if args.P else None
    rec = curve_CP(Z, P, mode=mode)
    out = {"field": str(Z.field)}
    if args.decompose or args.param:
        if rec.F is None:
            raise UsageError("--decompose/--param: C_P is a pencil here (a_Z = b_Z)")
        rec = decomposed_curve(Z, P, rec.m_Z, mode)
    out["curve"] = rec.to_json()
    if args.param:
        par, _ = parametrize(Z, rec=rec, mode=mode)
        out["parametrization"] = par.to_json()
    return out


def cmd_param(args) -> dict:
    Z = _load(args, "points")
    mode = _mode(args)
    P = _point(args.P, Z.field) if args.P else None
    par, rec = parametrize(Z, P, mode=mode)
    return {"field": str(Z.field), "curve": rec.to_json(), "parametrization": par.to_json()}


def cmd_arrangement(args) -> dict:
    A = _load(args, "lines")
    fr = freeness(A, GenericMode.symbolic() if args.mode == "symbolic" else _mode(args))
    out = {"field": str(A.field), "lines": A.to_json(), "d": str(len(A)), **fr.to_json()}
    if args.delete is not None:
        claims = {}
        if args.claim_a:
            claims["A"] = _pair(args.claim_a, "--claim-a")
        if args.claim_prime:
            claims["A_prime"] = _pair(args.claim_prime, "--claim-prime")
        if not claims:
            claims["A"] = fr.splitting
        if not 0 <= args.delete < len(A):
            raise UsageError(f"--delete: index {args.delete} out of range 0..{len(A) - 1}")
        out["addition_deletion"] = {k: (list(map(str, v)) if isinstance(v, tuple) else str(v))
                                    for k, v in addition_deletion(A, args.delete, claims).items()}
    if args.syzygy is not None:
        syz = syzygy_min_degree(A.f, None, args.syzygy)
        out["syzygy"] = None if syz is None else syz.to_json()
    return out


def _slp_forms(args):
    if args.forms:
        args.infile = args.forms
    return _load(args, "lines")


def cmd_slp(args) -> dict:
    A = _slp_forms(args)
    if args.exp < 1:
        raise UsageError("--exp must be >= 1")
    if args.range < 0:
        raise UsageError("--range must be >= 0")
    PI = PowerIdeal.uniform(A.linear_forms(), args.exp, A.field)
    mode = _mode(args)
    out = {"field": str(A.field), "exp": str(args.exp), "range": str(args.range),
           "hilbert_function": [str(v) for v in power_ideal_hf_table(PI)],
           "hilbert_function_mod_L": [str(v) for v in quotient_hf_table(PI, args.range, mode)]}
    reps = [slp_at(PI, args.range, args.deg, mode=mode)] if args.deg is not None else slp_table(PI, args.range, mode)
    out["slp"] = [r.to_json() for r in reps]
    out["maximal_rank_everywhere"] = all(r.maximal_rank for r in reps)
    return out


def cmd_terao(args) -> dict:
    A = _slp_forms(args)
    a, b = _pair(args.type, "--type")
    if a > b:
        raise UsageError("--type: need a <= b")
    return {"field": str(A.field), "type": [str(a), str(b)],
            "surjective": terao_surjectivity(A.linear_forms(), a, b, _mode(args))}


def cmd_catalog(args) -> dict:
    if args.list or not args.name:
        return {"entries": [{"name": e.name, "kind": e.kind, "defaults": {k: _jsonable(v) for k, v in e.defaults.items()},
                             "default_field": e.default_field, "constraints": e.constraints, "note": e.note,
                             "coordinates_required": e.coordinates_required} for e in list_entries()]}
    from .catalog import entry

    e = entry(args.name)
    field = _field(args, e.default_field)
    obj = build(args.name, _parse_params(args.params), field)
    key = "points" if isinstance(obj, PointConfig) else "lines"
    return {"field": str(field), "name": args.name, key: obj.to_json()}


def _jsonable(v):
    if v is None or isinstance(v, bool):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def cmd_verify(args) -> dict:
    from .verify import run_all

    selected = set(args.only.split(",")) if args.only else None
    kwargs = {"n": args.n, "seed": args.seed}
    results = run_all(selected, **kwargs)
    return {"criteria": [r.to_json() for r in results], "all_passed": all(r.passed for r in results)}


def cmd_oracle(args) -> dict:
    Z = _load(args, "points")
    if len(Z) > 25:
        raise UsageError("--in: the oracle is limited to 25 points")
    sym = FatPointSweep(Z, GenericMode.symbolic())
    probe = FatPointSweep(Z, GenericMode.probe(args.samples, args.bound, args.seed))
    rows = []
    for j in range(0, args.maxj + 1):
        s, _ = sym.value(j, j + 1)
        p, cert = probe.value(j, j + 1)
        if p < s:
            raise OracleMismatch(f"probe value {p} below symbolic value {s} at j={j}")
        rows.append({"j": str(j), "symbolic": str(s), "probe": str(p), "match": p == s, "probe_certificate": cert.level})
    return {"field": str(Z.field), "rows": rows, "all_match": all(r["match"] for r in rows)}


# ---------------------------------------------------------------------------
# output


def _table(obj, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                        (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{prefix}{k}:")
                lines += _table(v, prefix + "  ")
            else:
                lines.append(f"{prefix}{k}: {_flat(v)}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            lines.append(f"{prefix}- [{i}]")
            lines += _table(v, prefix + "  ")
    else:
        lines.append(f"{prefix}{_flat(obj)}")
    return lines


def _flat(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def _verify_table(report: dict) -> list[str]:
    lines = []
    for c in report["criteria"]:
        status = "PASS" if c["passed"] else "FAIL"
        lines.append(f"[{status}] criterion {c['criterion']}: {c['title']} ({c['seconds']} s)")
        if c["error"]:
            lines.append(f"    error: {c['error']}")
        for ch in c["checks"]:
            mark = "ok" if ch["passed"] else "MISMATCH"
            lines.append(f"    {mark:8} {ch['name']}: expected {_flat(ch['expected'])}, got {_flat(ch['actual'])}"
                         f"  [{ch['citation']}]")
    lines.append("all criteria passed" if report["all_passed"] else "some criteria failed")
    return lines


COMMANDS = {
    "invariants": cmd_invariants, "curve": cmd_curve, "param": cmd_param, "arrangement": cmd_arrangement,
    "slp": cmd_slp, "terao": cmd_terao, "catalog": cmd_catalog, "verify-paper": cmd_verify, "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unexpcurves", description="Unexpected curves, splitting types and "
                                     "freeness of line arrangements in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="t_Z, m_Z, u_Z, splitting type and unexpectedness of a point set")
    _common(p)
    for name in ("curve", "param"):
        p = sub.add_parser(name, help="the curve C_P(Z)" if name == "curve" else "parametrize C_P(Z) via a syzygy")
        _common(p)
        p.add_argument("--P", help="base point a,b,c (default: a general point)")
        if name == "curve":
            p.add_argument("--decompose", action="store_true")
            p.add_argument("--param", action="store_true")
    p = sub.add_parser("arrangement", help="freeness and Chern class of a line arrangement")
    _common(p)
    p.add_argument("--delete", type=int, help="apply addition-deletion to this line index")
    p.add_argument("--claim-a", help="claimed exponents a,b of the arrangement")
    p.add_argument("--claim-prime", help="claimed exponents of the arrangement minus the line")
    p.add_argument("--syzygy", type=int, help="search a global Jacobian syzygy of this degree")
    p = sub.add_parser("slp", help="Lefschetz ranks of a power ideal of linear forms")
    _common(p)
    p.add_argument("--forms", help="JSON file of linear forms (same as --in)")
    p.add_argument("--exp", type=int, required=True)
    p.add_argument("--range", type=int, default=2)
    p.add_argument("--deg", type=int, help="source degree (default: every degree)")
    p = sub.add_parser("terao", help="surjectivity condition for a claimed splitting type")
    _common(p)
    p.add_argument("--forms", help="JSON file of linear forms (same as --in)")
    p.add_argument("--type", required=True, help="a,b")
    p = sub.add_parser("catalog", help="list or build named configurations")
    _common(p, inputs=False)
    p.add_argument("--name")
    p.add_argument("--params", default="")
    p.add_argument("--list", action="store_true")
    p = sub.add_parser("verify-paper", help="run the acceptance suite and print the pass/fail table")
    _common(p, inputs=False)
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("-n", type=int, default=100, help="instances per property suite")
    p = sub.add_parser("oracle", help="symbolic versus probe generic dimensions")
    _common(p)
    p.add_argument("--maxj", type=int, default=10)
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"unexpcurves {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ToolkitError, ValueError, ArithmeticError) as exc:
        print(f"unexpcurves {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    report = {"schema": SCHEMA, "command": args.command, "seed": str(args.seed),
              "mode": getattr(args, "mode", None), **report}
    if args.format == "table":
        lines = _verify_table(report) if args.command == "verify-paper" else _table(report)
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    if args.command == "verify-paper" and not report["all_passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())
