"""Command-line front end: every pipeline with JSON in/out.

Inputs come from --input as a file path, inline JSON (anything starting with
'{' or '['), or '-' for stdin.  Outputs go to --output or stdout and are
byte-stable for identical inputs.  Exit codes: 2 for malformed input JSON,
3 for violated operation preconditions, 4 for NotFound results under
--strict.

The report command chains generation -> Newton polytopes -> fitting ->
slope prediction and writes, next to its JSON bundle, a CSV summary plus
rendered figures (and optionally the polygon-sequence SVG via --svg).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from polyrec.algebra import LaurentPoly, RatFn
from polyrec.elimination import EliminationInstance, theorem1_report
from polyrec.polytope import Polytope
from polyrec.quasifit import (
    fit_polygon_model,
    fit_quasipoly,
    shear_polygons,
    zero_pattern,
)
from polyrec.recurrence import (
    Recurrence,
    char_poly_recurrence,
    generate_terms,
    guess_recurrence,
    matrix_from_json,
    trace_sequence,
)
from polyrec.render import report_figures, write_svg
from polyrec.valuation import predicted_vs_empirical, slope_fan


class SchemaError(ValueError):
    """Input did not match the expected JSON schema (exit code 2)."""


class NotFoundResult(Exception):
    """A fit/guess came back empty while --strict was set (exit code 4)."""


def worker_count() -> int:
    """Worker cap from POLYREC_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("POLYREC_THREADS", "1")))
    except ValueError:
        return 1


def _load_input(arg: Optional[str]):
    if arg is None:
        raise SchemaError("--input is required for this command")
    try:
        if arg == "-":
            text = sys.stdin.read()
        elif arg.lstrip().startswith(("{", "[")):
            text = arg
        else:
            with open(arg, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read input: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"input is not valid JSON: {exc}") from exc


def _dump(data, output: Optional[str]) -> None:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_omega(text: Optional[str], nvars: int) -> tuple[int, ...]:
    if text is None:
        return (1,) * nvars
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise SchemaError(f"--omega must be comma-separated integers: {text}") from exc
    if len(parts) != nvars:
        raise SchemaError(f"--omega needs {nvars} components, got {len(parts)}")
    return parts


def _schema(fn, *args):
    """Run a from_json-style parser, mapping failures to SchemaError."""
    try:
        return fn(*args)
    except SchemaError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise SchemaError(str(exc)) from exc


def _sequence_from_json(data) -> list:
    if not isinstance(data, dict) or "sequence" not in data:
        raise SchemaError("expected {'sequence': [...]} input")
    out = []
    for v in data["sequence"]:
        if v is None:
            out.append(None)
        elif isinstance(v, int):
            out.append(Fraction(v))
        elif isinstance(v, str):
            out.append(Fraction(v))
        else:
            raise SchemaError(f"sequence entries must be int, string, or null: {v!r}")
    return out


def _polytopes_from_json(data) -> list[Polytope]:
    if not isinstance(data, dict) or "polytopes" not in data:
        raise SchemaError("expected {'polytopes': [...]} input")
    return [_schema(Polytope.from_json, p) for p in data["polytopes"]]


def _gen_input(data) -> tuple[Recurrence, list[LaurentPoly]]:
    if not isinstance(data, dict) or "recurrence" not in data or "init" not in data:
        raise SchemaError("expected {'recurrence': ..., 'init': [...]} input")
    rec = _schema(Recurrence.from_json, data["recurrence"])
    init = [_schema(LaurentPoly.from_json, p) for p in data["init"]]
    return rec, init


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def cmd_gen(args) -> dict:
    rec, init = _gen_input(_load_input(args.input))
    if args.n_max is None:
        raise SchemaError("--n-max is required for gen")
    terms = generate_terms(rec, init, args.n_max)
    return {
        "vars": rec.vars,
        "terms": [p.to_json() for p in terms.polys],
        "denominatorFree": terms.denominator_free,
    }


def cmd_newton(args) -> dict:
    data = _load_input(args.input)
    if isinstance(data, dict) and "terms" in data:
        polys = [_schema(LaurentPoly.from_json, t) for t in data["terms"]]
        hulls = [Polytope.newton(p) for p in polys]
        if args.svg:
            write_svg(args.svg, hulls)
        return {"polytopes": [h.to_json() for h in hulls]}
    poly = _schema(LaurentPoly.from_json, data)
    hull = Polytope.newton(poly)
    if args.svg:
        write_svg(args.svg, [hull])
    return hull.to_json()


def cmd_count(args) -> dict:
    data = _load_input(args.input)
    if isinstance(data, dict) and "polytopes" in data:
        polys = _polytopes_from_json(data)
        return {
            "counts": [
                {"count": p.lattice_count(), "area": str(p.area())} for p in polys
            ]
        }
    poly = _schema(Polytope.from_json, data)
    return {"count": poly.lattice_count(), "area": str(poly.area())}


def cmd_fit(args) -> dict:
    data = _load_input(args.input)
    if isinstance(data, dict) and "polytopes" in data:
        polys = _polytopes_from_json(data)
        model = fit_polygon_model(polys, args.deg_max, args.m_max, args.prefix_budget)
        if model is None:
            if args.strict:
                raise NotFoundResult("no polygon model found")
            return {"found": False}
        return model.to_json()
    seq = _sequence_from_json(data)
    fit = fit_quasipoly(seq, args.deg_max, args.m_max, args.prefix_budget)
    if fit is None:
        if args.strict:
            raise NotFoundResult("no quasi-polynomial found")
        return {"found": False}
    return fit.to_json()


def cmd_zeros(args) -> dict:
    seq = _sequence_from_json(_load_input(args.input))
    return zero_pattern(seq, args.m_max, args.prefix_budget).to_json()


def cmd_guess(args) -> dict:
    data = _load_input(args.input)
    if not isinstance(data, dict) or "terms" not in data:
        raise SchemaError("expected {'vars': r, 'terms': [...]} input")
    terms = [_schema(LaurentPoly.from_json, t) for t in data["terms"]]
    rec = guess_recurrence(terms, args.d_max)
    if rec is None:
        if args.strict:
            raise NotFoundResult("no recurrence found")
        return {"found": False}
    return rec.to_json()


def cmd_eliminate(args) -> dict:
    inst = _schema(EliminationInstance.from_json, _load_input(args.input))
    if args.n_max is None:
        raise SchemaError("--n-max is required for eliminate")
    report = theorem1_report(inst, args.n_max, args.d_max)
    data = report.to_json()
    if args.strict and (report.recurrence is None or report.model is None):
        raise NotFoundResult("elimination report has NotFound parts")
    return data


def cmd_trace(args) -> dict:
    data = _load_input(args.input)
    if not isinstance(data, dict) or "A" not in data or "B" not in data:
        raise SchemaError("expected {'A': matrix, 'B': matrix} input")
    A = _schema(matrix_from_json, data["A"])
    B = _schema(matrix_from_json, data["B"])
    if args.n_max is None:
        raise SchemaError("--n-max is required for trace")
    traces = trace_sequence(A, B, args.n_max)
    rec = char_poly_recurrence(B)
    return {
        "traces": [t.to_json() for t in traces],
        "recurrence": rec.to_json(),
    }


def cmd_fan(args) -> dict:
    poly = _schema(LaurentPoly.from_json, _load_input(args.input))
    return slope_fan(poly).to_json()


def cmd_shear(args) -> dict:
    polys = _polytopes_from_json(_load_input(args.input))
    sheared = shear_polygons(polys, args.f)
    if args.svg:
        write_svg(args.svg, sheared)
    return {"polytopes": [p.to_json() for p in sheared]}


def cmd_report(args) -> dict:
    rec, init = _gen_input(_load_input(args.input))
    if args.n_max is None:
        raise SchemaError("--n-max is required for report")
    omega = _parse_omega(args.omega, rec.vars)
    terms = generate_terms(rec, init, args.n_max)
    polys: list[Optional[Polytope]] = []
    vstar_seq: list = []
    v_seq: list = []
    counts: list = []
    areas: list = []
    for p in terms.polys:
        if p.is_zero:
            polys.append(None)
            vstar_seq.append(None)
            v_seq.append(None)
            counts.append(None)
            areas.append(None)
            continue
        hull = Polytope.newton(p) if p.vars <= 2 else None
        polys.append(hull)
        u = p.specialize(omega)
        if u.is_zero:
            vstar_seq.append(None)
            v_seq.append(None)
        else:
            lo, hi = u.valuations()
            vstar_seq.append(lo)
            v_seq.append(hi)
        if hull is not None:
            counts.append(hull.lattice_count())
            areas.append(hull.area())
        else:
            counts.append(None)
            areas.append(None)
    fit_upto = args.fit_upto if args.fit_upto is not None else args.n_max
    empirical = predicted_vs_empirical(
        rec,
        init,
        omega,
        args.n_max,
        deg_max=args.deg_max,
        m_max=args.m_max,
        prefix_budget=args.prefix_budget,
        fit_upto=fit_upto,
        terms=terms,
    )
    model = None
    if all(p is not None for p in polys):
        model = fit_polygon_model(
            list(polys), max(1, args.deg_max), args.m_max, args.prefix_budget
        )
    count_fit = None
    area_fit = None
    if all(c is not None for c in counts):
        count_fit = fit_quasipoly(counts, args.deg_max, args.m_max, args.prefix_budget)
        area_fit = fit_quasipoly(
            areas, min(2, args.deg_max + 1), args.m_max, args.prefix_budget
        )
    bundle = {
        "nMax": args.n_max,
        "omega": list(omega),
        "recurrence": rec.to_json(),
        "init": [p.to_json() for p in init],
        "denominatorFree": terms.denominator_free,
        "terms": [p.to_json() for p in terms.polys],
        "polytopes": [None if p is None else p.to_json() for p in polys],
        "series": {
            "vstar": [None if v is None else int(v) for v in vstar_seq],
            "v": [None if v is None else int(v) for v in v_seq],
            "count": [None if c is None else int(c) for c in counts],
            "area": [None if a is None else str(a) for a in areas],
        },
        "fits": {
            "polygonModel": None if model is None else model.to_json(),
            "count": None if count_fit is None else count_fit.to_json(),
            "area": None if area_fit is None else area_fit.to_json(),
        },
        "empirical": empirical.to_json(),
    }
    artifacts = {"csv": None, "figures": [], "svg": None}
    if args.output and args.output != "-":
        stem = args.output[:-5] if args.output.endswith(".json") else args.output
        csv_path = stem + ".csv"
        _write_report_csv(csv_path, vstar_seq, v_seq, counts, areas)
        artifacts["csv"] = os.path.basename(csv_path)
        drawable = [p for p in polys if p is not None]
        if drawable:
            figures = report_figures(stem, vstar_seq, v_seq,
                                     [c or 0 for c in counts],
                                     [a if a is not None else Fraction(0) for a in areas],
                                     drawable)
            artifacts["figures"] = [os.path.basename(f) for f in figures]
    if args.svg:
        drawable = [p for p in polys if p is not None]
        labels = [n for n, p in enumerate(polys) if p is not None]
        if drawable:
            write_svg(args.svg, drawable, labels)
            artifacts["svg"] = os.path.basename(args.svg)
    bundle["artifacts"] = artifacts
    if args.strict and (model is None or empirical.vstar.fit is None):
        raise NotFoundResult("report has NotFound parts")
    return bundle


def _write_report_csv(path, vstar_seq, v_seq, counts, areas) -> None:
    lines = ["n,vstar,v,count,area"]
    for n in range(len(counts)):
        def cell(v):
            return "" if v is None else str(v)

        lines.append(
            f"{n},{cell(vstar_seq[n])},{cell(v_seq[n])},{cell(counts[n])},{cell(areas[n])}"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

_COMMANDS = {
    "gen": cmd_gen,
    "newton": cmd_newton,
    "fit": cmd_fit,
    "zeros": cmd_zeros,
    "guess": cmd_guess,
    "eliminate": cmd_eliminate,
    "trace": cmd_trace,
    "fan": cmd_fan,
    "shear": cmd_shear,
    "count": cmd_count,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyrec",
        description="Recurrent Laurent-polynomial sequences and their Newton polytopes",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="path, inline JSON, or - for stdin")
        p.add_argument("--output", help="path or - for stdout (default stdout)")
        p.add_argument("--n-max", type=int, default=None)
        p.add_argument("--m-max", type=int, default=6)
        p.add_argument("--deg-max", type=int, default=1)
        p.add_argument("--d-max", type=int, default=3)
        p.add_argument("--prefix-budget", type=int, default=8)
        p.add_argument("--fit-upto", type=int, default=None)
        p.add_argument("--omega", default=None, help="comma-separated integers")
        p.add_argument("--f", type=int, default=0)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--strict", action="store_true")
        p.add_argument("--svg", default=None, help="write polygon frames here")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = _COMMANDS[args.command](args)
    except SchemaError as exc:
        print(f"polyrec: schema error: {exc}", file=sys.stderr)
        return 2
    except NotFoundResult as exc:
        print(f"polyrec: not found: {exc}", file=sys.stderr)
        return 4
    except (ValueError, ZeroDivisionError) as exc:
        print(f"polyrec: precondition failed: {exc}", file=sys.stderr)
        return 3
    _dump(result, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
