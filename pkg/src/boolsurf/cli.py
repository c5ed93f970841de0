"""Command-line front end.

Subcommands: analyze, tail, partition, restrict, boundary, verify, sweep.
Reports are deterministic: one (spec, options, worker count) triple always
produces byte-identical output.  JSON floats use Python's shortest
round-trip form; CSV floats carry 17 significant digits with a '.'
decimal point, no locale.

Exit codes: 0 success, 2 malformed input, 3 capacity exceeded,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import boundary as boundary_mod
from . import partition as partition_mod
from . import restriction as restriction_mod
from . import verify as verify_mod
from .core import (EXACT_CAP, TruthTable, bsa, bsa_via_tails, fractional_moment,
                   noise_sensitivity, sensitivity_profile, total_influence)
from .errors import (BoolsurfError, CapacityError, InputError, ParseError,
                     VerificationError)
from .ptf import ALPHA_EXACT_CAP, SparsePolynomial, alpha_estimate, alpha_exact, generate, sign_table

DEFAULT_MOMENTS = "0.25,0.5,0.75,1"
DEFAULT_DELTAS = "0.05,0.1,0.25"


# ------------------------------------------------------------ function specs

@dataclass
class FunctionSpec:
    """A parsed function source: generator family, inline polynomial, or table file."""

    text: str
    kind: str
    polynomial: SparsePolynomial | None = None
    table: TruthTable | None = None

    def require_polynomial(self) -> SparsePolynomial:
        if self.polynomial is None:
            raise InputError(f"{self.kind} specs carry no polynomial; this command needs one")
        return self.polynomial

    def resolve_table(self) -> tuple[TruthTable, int | None]:
        """Truth table plus the zero-evaluation count (None for table sources)."""
        if self.table is not None:
            return self.table, None
        table, zero_hits = sign_table(self.polynomial)
        return table, zero_hits


def _parse_kv_int(pairs: str, allowed: dict[str, bool], what: str) -> dict[str, int]:
    """Parse 'k=v,k=v' with integer values; `allowed` maps key -> required."""
    out: dict[str, int] = {}
    for chunk in pairs.split(","):
        if not chunk:
            continue
        key, sep, value = chunk.partition("=")
        if not sep or key not in allowed:
            raise ParseError(f"bad parameter {chunk!r} in {what} spec")
        try:
            out[key] = int(value)
        except ValueError:
            raise ParseError(f"parameter {key} in {what} spec needs an integer, got {value!r}")
    missing = [k for k, required in allowed.items() if required and k not in out]
    if missing:
        raise ParseError(f"{what} spec is missing {', '.join(missing)}")
    return out


def _parse_generator(text: str) -> FunctionSpec:
    name, _, rest = text.partition(":")
    name = name.lower()
    if name in ("maj", "majority", "harm", "harmonic"):
        try:
            n = int(rest)
        except ValueError:
            raise ParseError(f"{name} spec needs a variable count, got {rest!r}",
                             position=len(name) + 1)
        kind = "majority" if name.startswith("maj") else "harmonic"
        return FunctionSpec(text, kind, polynomial=generate(kind, n))
    if name in ("par", "parity"):
        head, sep, subset_text = rest.partition(":")
        if not sep:
            raise ParseError("parity spec is par:<n>:<v1,v2,...>", position=len(name) + 1)
        try:
            n = int(head)
            variables = [int(v) for v in subset_text.split(",") if v]
        except ValueError:
            raise ParseError(f"parity spec needs integers, got {rest!r}",
                             position=len(name) + 1)
        mask = 0
        for v in variables:
            if not 1 <= v <= n:
                raise InputError(f"parity variable {v} out of range 1..{n}")
            bit = 1 << (v - 1)
            if mask & bit:
                raise ParseError(f"parity variable {v} repeated")
            mask |= bit
        return FunctionSpec(text, "parity", polynomial=generate("parity", n, subset=mask))
    if name == "rand":
        params = _parse_kv_int(rest, {"d": True, "n": True, "seed": False}, "rand")
        poly = generate("random", params["n"], degree=params["d"],
                        seed=params.get("seed", 0))
        return FunctionSpec(text, "random", polynomial=poly)
    if name == "rands":
        params = _parse_kv_int(rest, {"d": True, "n": True, "terms": True, "seed": False},
                               "rands")
        poly = generate("random-sparse", params["n"], degree=params["d"],
                        nterms=params["terms"], seed=params.get("seed", 0))
        return FunctionSpec(text, "random-sparse", polynomial=poly)
    raise ParseError(f"unknown generator {name!r}", position=0)


def parse_table_text(content: str) -> TruthTable:
    """Truth-table file format: first line n=<int>, second line 2^n signs in {+,-}."""
    lines = [line.strip() for line in content.splitlines() if line.strip()]
    if len(lines) != 2 or not lines[0].startswith("n="):
        raise ParseError("table file needs two lines: 'n=<int>' then the sign row")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise ParseError(f"bad variable count {lines[0][2:]!r}", position=2)
    if n < 0 or n > EXACT_CAP:
        raise CapacityError(f"table files support 0 <= n <= {EXACT_CAP}, got {n}")
    row = lines[1]
    if len(row) != 1 << n:
        raise ParseError(f"sign row has {len(row)} characters, expected {1 << n}")
    bad = set(row) - {"+", "-"}
    if bad:
        raise ParseError(f"sign row contains {sorted(bad)}; only '+' and '-' are allowed",
                         position=min(row.index(ch) for ch in bad))
    values = np.frombuffer(row.encode("ascii"), dtype=np.uint8)
    return TruthTable(n, np.where(values == ord("+"), 1, -1).astype(np.int8))


def format_table_text(table: TruthTable) -> str:
    row = "".join("+" if v == 1 else "-" for v in table.values)
    return f"n={table.n}\n{row}\n"


def parse_function_spec(text: str) -> FunctionSpec:
    """Resolve a spec string: generator shorthand, inline polynomial JSON,
    or @path to a polynomial-JSON or truth-table file."""
    text = text.strip()
    if not text:
        raise ParseError("empty function spec", position=0)
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad polynomial JSON: {exc.msg}", position=exc.pos)
        return FunctionSpec(text, "polynomial",
                            polynomial=SparsePolynomial.from_json_dict(data))
    if text.startswith("@"):
        path = text[1:]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                content = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}")
        stripped = content.lstrip()
        if stripped.startswith("n="):
            return FunctionSpec(text, "table", table=parse_table_text(content))
        if stripped.startswith("{"):
            try:
                data = json.loads(content)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad polynomial JSON in {path}: {exc.msg}",
                                 position=exc.pos)
            return FunctionSpec(text, "polynomial",
                                polynomial=SparsePolynomial.from_json_dict(data))
        raise ParseError(f"{path} is neither a table file nor polynomial JSON")
    return _parse_generator(text)


# ------------------------------------------------------------ list parsing

def parse_int_list(text: str) -> list[int]:
    """Integers from 'a,b,c' with 'lo..hi' range chunks, e.g. '1..4,8'."""
    out: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        lo, sep, hi = chunk.partition("..")
        try:
            if sep:
                start, stop = int(lo), int(hi)
                if stop < start:
                    raise InputError(f"empty range {chunk!r}")
                out.extend(range(start, stop + 1))
            else:
                out.append(int(chunk))
        except ValueError:
            raise ParseError(f"bad integer chunk {chunk!r}")
    if not out:
        raise ParseError(f"no integers in {text!r}")
    return out


def parse_float_list(text: str) -> list[float]:
    try:
        out = [float(chunk) for chunk in text.split(",") if chunk.strip()]
    except ValueError:
        raise ParseError(f"bad float list {text!r}")
    if not out:
        raise ParseError(f"no floats in {text!r}")
    return out


def _check_precision_option(precision: int) -> int:
    if not 10 <= precision <= 50:
        raise InputError(f"precision must lie in 10..50 digits, got {precision}")
    return precision


# ------------------------------------------------------------ output plumbing

def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)

def render_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def render_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_payload(command: str, spec_text: str | None, header: list[str],
                  rows: list[list]) -> dict:
    body = [dict(zip(header, row)) for row in rows]
    payload = {"command": command}
    if spec_text is not None:
        payload["spec"] = spec_text
    payload["rows"] = body
    return payload


def _emit_table(args, command: str, spec_text: str | None, header: list[str],
                rows: list[list]) -> None:
    if args.format == "json":
        emit(render_json(_rows_payload(command, spec_text, header, rows)), args.out)
    else:
        emit(render_csv(header, rows), args.out)


# ------------------------------------------------------------ commands

def _cmd_analyze(args) -> int:
    if args.format != "json":
        raise InputError("analyze reports are JSON only")
    spec = parse_function_spec(args.spec)
    table, zero_hits = spec.resolve_table()
    profile = sensitivity_profile(table)
    influence = total_influence(table)
    moments = parse_float_list(args.moments)
    deltas = parse_float_list(args.deltas)
    report = {
        "command": "analyze",
        "spec": spec.text,
        "kind": spec.kind,
        "n": table.n,
        "influence_total": float(influence.total),
        "influence_per_coordinate": [float(v) for v in influence.per_coordinate],
        "bsa": float(profile.bsa()),
        "bsa_via_tails": float(bsa_via_tails(table)),
        "vertex_boundary_fraction": profile.count_ge(1) / profile.points,
        "sensitivity_counts": [int(c) for c in profile.counts],
        "fractional_moments": {repr(a): float(fractional_moment(table, a)) for a in moments},
        "noise_sensitivity": {repr(d): float(noise_sensitivity(table, d)) for d in deltas},
    }
    if zero_hits is not None:
        report["zero_sign_evaluations"] = zero_hits
    emit(render_json(report), args.out)
    return 0


def _cmd_tail(args) -> int:
    spec = parse_function_spec(args.spec)
    table, _ = spec.resolve_table()
    levels = parse_int_list(args.m) if args.m else list(range(1, table.n + 1))
    header = ["m", "p_e", "coupling_lb", "bound_ratio", "floor",
              "p_e_exact", "coupling_lb_exact"]
    rows = []
    for m in levels:
        r = restriction_mod.tail_coupling_check(table, m)
        rows.append([r.m, float(r.p_e), float(r.coupling_lb),
                     None if r.bound_ratio is None else float(r.bound_ratio),
                     float(r.floor), str(r.p_e), str(r.coupling_lb)])
    _emit_table(args, "tail", spec.text, header, rows)
    return 0


_PARTITION_HEADER = ["n", "k", "sizes", "A", "B", "gap", "gap_bound",
                     "pass_lower", "pass_upper", "pass_gap"]


def _partition_row(report: partition_mod.SandwichReport) -> list:
    spec = report.spec
    return [spec.n, spec.k, "-".join(str(s) for s in spec.sizes),
            float(report.sqrt_total), float(report.block_average), float(report.gap),
            None if report.gap_bound is None else float(report.gap_bound),
            report.pass_lower, report.pass_upper, report.pass_gap]


def _cmd_partition(args) -> int:
    precision = _check_precision_option(args.precision)
    rows = []
    failures = 0
    if args.sizes:
        sizes = tuple(int(s) for s in args.sizes.split("-") if s)
        n = sum(sizes)
        ks = parse_int_list(args.k) if args.k else list(range(0, n + 1))
        cases = [(n, k, sizes) for k in ks]
    else:
        cases = []
        for n in parse_int_list(args.n):
            for b in range(1, n + 1):
                sizes = partition_mod.near_equal_sizes(n, b)
                for k in range(0, n + 1):
                    cases.append((n, k, sizes))
    for n, k, sizes in cases:
        report = partition_mod.sandwich_check(
            partition_mod.BlockPartitionSpec(n, k, sizes), precision)
        if not report.all_passed:
            failures += 1
        rows.append(_partition_row(report))
    _emit_table(args, "partition", None, _PARTITION_HEADER, rows)
    if failures:
        print(f"partition: {failures} of {len(rows)} cases failed certification",
              file=sys.stderr)
        return 4
    return 0


def _cmd_restrict(args) -> int:
    spec = parse_function_spec(args.spec)
    poly = spec.require_polynomial()
    rates = parse_float_list(args.rate)
    deltas = parse_float_list(args.delta)
    header = ["rate", "delta", "trials", "estimate", "stderr", "rejection_rate"]
    rows = []
    for rate in rates:
        for delta in deltas:
            r = restriction_mod.restriction_failure_prob(
                poly, rate, delta, args.trials, seed=args.seed, workers=args.workers)
            rows.append([float(rate), float(delta), r.trials,
                         float(r.estimate), float(r.stderr), float(r.rejection_rate)])
    _emit_table(args, "restrict", spec.text, header, rows)
    return 0


def _cmd_boundary(args) -> int:
    if args.format != "json":
        raise InputError("boundary reports are JSON only (levels go to --levels-csv)")
    spec = parse_function_spec(args.spec)
    table, _ = spec.resolve_table()
    report = boundary_mod.boundary_report(table)
    payload = {
        "command": "boundary",
        "spec": spec.text,
        "n": report.n,
        "is_constant": report.is_constant,
        "influence": report.influence,
        "bsa": report.bsa,
        "var_sqrt_sens": report.var_sqrt_sens,
        "vertex_boundary_fraction": report.vertex_boundary_fraction,
        "threshold": report.threshold,
        "edge_biased_prob": report.edge_biased_prob,
    }
    if not report.is_constant:
        check = boundary_mod.edge_threshold_check(table)
        payload["threshold_check"] = {"passed": check.passed, "margin": check.margin}
    payload["level_sign_counts"] = [list(row) for row in boundary_mod.level_sign_counts(table)]
    emit(render_json(payload), args.out)
    if args.levels_csv:
        rows = [list(row) for row in boundary_mod.level_sign_counts(table)]
        emit(render_csv(["level", "plus", "minus"], rows), args.levels_csv)
    return 0


def _cmd_verify(args) -> int:
    if args.list:
        for cid, title, budget, _ in verify_mod._REGISTRY:
            limit = f" (budget {budget:g}s)" if budget else ""
            print(f"{cid}: {title}{limit}")
        return 0
    only = args.only.split(",") if args.only else None
    if only:
        unknown = set(only) - set(verify_mod.criteria_ids())
        if unknown:
            raise InputError(f"unknown criteria: {', '.join(sorted(unknown))}")
    results = verify_mod.run_all(only)
    for result in results:
        print(verify_mod.format_result(result))
    failed = [r.cid for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return 4
    return 0


def _family_table(family: str, n: int) -> TruthTable:
    family = family.lower()
    if family == "maj":
        return TruthTable.majority(n)
    if family == "harm":
        return sign_table(generate("harmonic", n))[0]
    if family == "sqrtpar":
        return TruthTable.parity(n, (1 << math.isqrt(n)) - 1)
    raise InputError(f"unknown sweep family {family!r} (use maj, harm, or sqrtpar)")


def _cmd_sweep(args) -> int:
    if args.kind == "bsa":
        header = ["family", "n", "bsa", "bsa_via_tails", "influence_total",
                  "vertex_boundary_fraction"]
        rows = []
        for family in args.family.split(","):
            for n in parse_int_list(args.n):
                table = _family_table(family, n)
                profile = sensitivity_profile(table)
                rows.append([family, n, profile.bsa(), bsa_via_tails(table),
                             profile.moment(1.0), profile.count_ge(1) / profile.points])
        _emit_table(args, "sweep", None, header, rows)
        return 0
    if args.kind == "ns":
        header = ["family", "n", "delta", "t", "ns", "ns_over_sqrt_t"]
        rows = []
        for family in args.family.split(","):
            for n in parse_int_list(args.n):
                table = _family_table(family, n)
                for delta in parse_float_list(args.delta):
                    t = -math.log(1.0 - 2.0 * delta)
                    ns = noise_sensitivity(table, delta)
                    rows.append([family, n, float(delta), t, ns, ns / math.sqrt(t)])
        _emit_table(args, "sweep", None, header, rows)
        return 0
    if args.kind == "alpha":
        header = ["n", "degree", "seed", "alpha", "stderr", "alpha_exact"]
        rows = []
        for n in parse_int_list(args.n):
            for seed in parse_int_list(args.seeds):
                poly = generate("random", n, degree=args.degree, seed=seed)
                est = alpha_estimate(poly, args.trials, seed=seed, workers=args.workers)
                exact = None
                if args.exact:
                    if n > ALPHA_EXACT_CAP:
                        raise CapacityError(
                            f"--exact alpha needs n <= {ALPHA_EXACT_CAP}, got {n}")
                    exact = alpha_exact(poly)
                rows.append([n, args.degree, seed, est.estimate, est.stderr, exact])
        _emit_table(args, "sweep", None, header, rows)
        return 0
    raise InputError(f"unknown sweep kind {args.kind!r}")


# ------------------------------------------------------------ parser / main

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolsurf",
        description="Sensitivity, surface area, and boundary geometry of Boolean "
                    "functions; exact at small n, seeded Monte Carlo beyond.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, default_format):
        p.add_argument("--out", help="write the report to this path instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default=default_format)

    p = sub.add_parser("analyze", help="exact sensitivity/surface-area report")
    p.add_argument("spec", help="maj:5 | harm:8 | par:5:1,2 | rand:d=2,n=12,seed=7 | "
                                "rands:d=2,n=16,terms=20,seed=7 | inline JSON | @file")
    p.add_argument("--moments", default=DEFAULT_MOMENTS,
                   help="fractional-moment orders (comma list)")
    p.add_argument("--deltas", default=DEFAULT_DELTAS,
                   help="noise rates (comma list)")
    add_output(p, "json")

    p = sub.add_parser("tail", help="exact tail masses and coupling floors by level")
    p.add_argument("spec")
    p.add_argument("--m", help="levels, e.g. 1..9 or 2,4,6 (default 1..n)")
    add_output(p, "csv")

    p = sub.add_parser("partition", help="certified block-partition sandwich sweep")
    p.add_argument("--n", default="1..12", help="population sizes, e.g. 1..12")
    p.add_argument("--sizes", help="explicit dash-joined block sizes, e.g. 3-2-2")
    p.add_argument("--k", help="zero counts to sweep with --sizes (default 0..n)")
    p.add_argument("--precision", type=int, default=15, help="decimal digits (10..50)")
    add_output(p, "csv")

    p = sub.add_parser("restrict", help="Monte Carlo restriction-collapse grid")
    p.add_argument("spec")
    p.add_argument("--rate", default="0.25,0.0625,0.015625",
                   help="free-coordinate rates (comma list)")
    p.add_argument("--delta", default="0.0625",
                   help="closeness thresholds (comma list)")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None)
    add_output(p, "csv")

    p = sub.add_parser("boundary", help="boundary geometry report and threshold check")
    p.add_argument("spec")
    p.add_argument("--levels-csv", help="also write per-level sign counts to this path")
    add_output(p, "json")

    p = sub.add_parser("verify", help="run the acceptance criteria suite")
    p.add_argument("--only", help="comma list of criterion ids, e.g. c1,c6")
    p.add_argument("--list", action="store_true", help="list criteria and exit")

    p = sub.add_parser("sweep", help="parameter sweeps with one CSV row per cell")
    p.add_argument("--kind", choices=("bsa", "ns", "alpha"), required=True)
    p.add_argument("--family", default="maj",
                   help="bsa/ns sweeps: comma list of maj, harm, sqrtpar")
    p.add_argument("--n", default="3,5,7,9,11,13,15")
    p.add_argument("--delta", default="0.01,0.02,0.05,0.1",
                   help="ns sweep noise rates")
    p.add_argument("--degree", type=int, default=2, help="alpha sweep degree")
    p.add_argument("--seeds", default="0..4", help="alpha sweep seeds")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--exact", action="store_true",
                   help="alpha sweep: also enumerate the exact average")
    add_output(p, "csv")

    return parser


_DISPATCH = {
    "analyze": _cmd_analyze,
    "tail": _cmd_tail,
    "partition": _cmd_partition,
    "restrict": _cmd_restrict,
    "boundary": _cmd_boundary,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, CapacityError):
        return 3
    if isinstance(exc, VerificationError):
        return 4
    if isinstance(exc, (InputError, BoolsurfError)):
        return 2
    raise exc


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help and bad flags
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except (BoolsurfError,) as exc:
        print(f"boolsurf {args.command}: {exc}", file=sys.stderr)
        return exit_code_for(exc)
