"""Batch front-end: read a JSON job, evaluate invariants over a range of ``n``.

Exit status: 0 when every cross-check agrees, 1 on a mismatch, 2 on an
input or evaluation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import jsonschema
from jsonschema.exceptions import best_match

from ._schema import JOB_SCHEMA, N_MAX, ROUTE_NAMES
from .charclass import BundleClass, trivial
from .families import (BlowupMode, BlowupSpec, FibreProductSpec, ProjectivisationSpec,
                       family_form, kahler_data)
from .fswcore import KahlerFamilyData, Route, fsw_general, fsw_terms
from .ring import (GradedClass, Ring, RingSpecError, point_ring, projective_space,
                   surface_ring, truncated_polynomial_ring)

__all__ = ["SpecError", "JobSpec", "Report", "parse_spec", "serialize", "run",
           "render_text", "render_json", "main"]

EXIT_OK, EXIT_MISMATCH, EXIT_ERROR = 0, 1, 2

_VALIDATOR = jsonschema.Draft202012Validator(JOB_SCHEMA)


class SpecError(ValueError):
    """Invalid job file; ``path`` is a JSON pointer to the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"
        self.message = message


def _ptr(*parts) -> str:
    return "".join(f"/{p}" for p in parts)


def _ptr_join(path: str, *parts) -> str:
    return path + _ptr(*parts)


# -- classes and bundles ---------------------------------------------------------

def _parse_term(ring: Ring, term: Sequence, path: str) -> GradedClass:
    if isinstance(term[-1], bool) or not isinstance(term[-1], int):
        raise SpecError(path, "last entry of a term must be an integer coefficient")
    coeff = term[-1]
    body = term[:-1]
    try:
        if len(body) == 1 and isinstance(body[0], str):
            return coeff * ring.parse_monomial(body[0])
        if len(body) % 2 == 0:
            mono = ring.one
            for name, e in zip(body[::2], body[1::2]):
                if not isinstance(name, str) or isinstance(e, bool) or not isinstance(e, int):
                    raise ValueError("flat terms alternate generator names and exponents")
                if e < 0:
                    raise ValueError(f"negative exponent for {name!r}")
                mono = mono * ring.parse_monomial(name) ** e
            return coeff * mono
    except ValueError as exc:
        raise SpecError(path, str(exc)) from None
    raise SpecError(path, "expected [monomial, coeff] or [gen, exp, ..., coeff]")


def _parse_class(ring: Ring, terms: Sequence, path: str) -> GradedClass:
    out = ring.zero
    for i, term in enumerate(terms):
        out = out + _parse_term(ring, term, _ptr_join(path, i))
    return out


def _parse_bundle(ring: Ring, obj, rank: int, path: str) -> BundleClass:
    if obj is None:
        return trivial(ring, rank)
    total = obj
    if isinstance(obj, dict):
        if "rank" in obj and obj["rank"] != rank:
            raise SpecError(_ptr_join(path, "rank"), f"rank {obj['rank']} given, expected {rank}")
        total = obj["chern"]
        path = _ptr_join(path, "chern")
    pieces = [ring.one] + [_parse_class(ring, p, _ptr_join(path, i + 1))
                           for i, p in enumerate(total[1:])]
    try:
        return BundleClass(ring, rank, pieces)
    except ValueError as exc:
        raise SpecError(path, str(exc)) from None


def class_to_json(x: GradedClass) -> List[List[Any]]:
    return [[x.ring.format_monomial(m), c] for m, c in x.sorted_terms()]


def bundle_to_json(B: BundleClass) -> List[Any]:
    pieces: List[Any] = [1] + [class_to_json(c) for c in B.chern[1:]]
    while len(pieces) > 1 and not pieces[-1]:
        pieces.pop()
    return pieces


# -- base and family -------------------------------------------------------------

def _build_ring(base: Dict[str, Any]) -> Tuple[Ring, Dict[str, Any]]:
    kind = base["type"]
    try:
        if kind == "point":
            return point_ring(), {"type": "point"}
        if kind == "projective_space":
            gen = base.get("generator", "t")
            return (projective_space(base["n"], gen),
                    {"type": kind, "n": base["n"], "generator": gen})
        if kind == "truncated_polynomial":
            gens = [tuple(g) for g in base["generators"]]
            nil = base.get("nilpotence")
            ring = truncated_polynomial_ring(gens, base["truncation_degree"], nil)
            canon = {"type": kind, "generators": [list(g) for g in gens],
                     "truncation_degree": base["truncation_degree"]}
            if nil is not None:
                canon["nilpotence"] = list(nil)
            return ring, canon
        ring = surface_ring(base["intersection_matrix"], base.get("generators"))
        return ring, {"type": kind, "intersection_matrix": [list(r) for r in base["intersection_matrix"]],
                      "generators": list(ring.names)}
    except (RingSpecError, ValueError) as exc:
        raise SpecError("/base", str(exc)) from None


def _build_family(ring: Ring, fam: Dict[str, Any]):
    kind = fam["type"]
    at = lambda *p: _ptr("family", *p)  # noqa: E731
    try:
        if kind == "generic":
            ranks = {"V0": fam["h0"], "V1": fam["h1"], "V2": fam["h2"], "H20": fam["rho_g"]}
            bundles = {k: _parse_bundle(ring, fam.get(k), r, at(k)) for k, r in ranks.items()}
            model = KahlerFamilyData(ring, fam["h0"], fam["h1"], fam["h2"], fam["rho_g"], **bundles)
            canon = {"type": kind, "h0": model.h0, "h1": model.h1, "h2": model.h2,
                     "rho_g": model.rho_g}
            canon.update({k: bundle_to_json(b) for k, b in bundles.items()})
            return model, canon
        if kind == "projectivisation":
            model = ProjectivisationSpec(ring, _parse_bundle(ring, fam["V"], 3, at("V")), fam["k"],
                                         _parse_bundle(ring, fam.get("L"), 1, at("L")))
            return model, {"type": kind, "V": bundle_to_json(model.V), "k": model.k,
                           "L": bundle_to_json(model.L)}
        if kind == "fibre_product":
            model = FibreProductSpec(ring, _parse_bundle(ring, fam["V1"], 2, at("V1")),
                                     _parse_bundle(ring, fam["V2"], 2, at("V2")),
                                     fam["k"], fam["l"],
                                     _parse_bundle(ring, fam.get("L"), 1, at("L")))
            return model, {"type": kind, "V1": bundle_to_json(model.V1),
                           "V2": bundle_to_json(model.V2), "k": model.k, "l": model.l,
                           "L": bundle_to_json(model.L)}
        L1 = _parse_class(ring, fam.get("L1", []), at("L1"))
        cot = fam.get("cotangent")
        cot = None if cot is None else _parse_bundle(ring, cot, 2, at("cotangent"))
        canonical = fam.get("canonical")
        canonical = None if canonical is None else _parse_class(ring, canonical, at("canonical"))
        model = BlowupSpec(ring, L1, _parse_bundle(ring, fam.get("L2"), 1, at("L2")),
                           fam["p0"], fam["p1"], fam["p2"], fam["rho_g"],
                           BlowupMode(fam["mode"]), fam.get("k"), cot, canonical)
        canon = {"type": kind, "L1": class_to_json(model.L1), "L2": bundle_to_json(model.L2),
                 "p0": model.p0, "p1": model.p1, "p2": model.p2, "rho_g": model.rho_g,
                 "mode": model.mode.value, "k": model.k}
        if model.cotangent is not None:
            canon["cotangent"] = bundle_to_json(model.cotangent)
        if model.canonical is not None:
            canon["canonical"] = class_to_json(model.canonical)
        return model, canon
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError("/family", str(exc)) from None


# -- job -------------------------------------------------------------------------

@dataclass(frozen=True)
class JobSpec:
    """A validated job in canonical form; ``model`` is the built family."""

    base: Dict[str, Any]
    family: Dict[str, Any]
    n_range: Tuple[int, int]
    routes: Tuple[str, ...]
    output: str = "text"
    spec_version: int = 1
    model: Any = field(default=None, compare=False, repr=False)
    data: Optional[KahlerFamilyData] = field(default=None, compare=False, repr=False)

    @property
    def family_type(self) -> str:
        return self.family["type"]

    def to_json(self) -> Dict[str, Any]:
        return {"spec_version": self.spec_version, "base": self.base, "family": self.family,
                "n_range": list(self.n_range), "routes": list(self.routes), "output": self.output}


def _best_error(errors) -> SpecError:
    err = best_match(errors)
    parts = list(err.absolute_path)
    if err.validator == "required":
        missing = [p for p in err.validator_value if p not in err.instance]
        if missing:
            return SpecError(_ptr(*parts, missing[0]), f"missing required field {missing[0]!r}")
    if err.validator == "additionalProperties" and isinstance(err.instance, dict):
        allowed = set(err.schema.get("properties", {}))
        extra = sorted(k for k in err.instance if k not in allowed)
        if extra:
            return SpecError(_ptr(*parts, extra[0]), f"unknown field {extra[0]!r}")
    return SpecError(_ptr(*parts), err.message)


def _canonical_routes(routes) -> Tuple[str, ...]:
    return tuple(r for r in ROUTE_NAMES if r in set(routes))


def _check_routes(routes: Tuple[str, ...], family_type: str):
    if not routes:
        raise SpecError("/routes", "at least one route must be selected")
    if "family_form" in routes and family_type == "generic":
        raise SpecError("/routes", "route 'family_form' needs a named family, not 'generic'")


def job_from_dict(doc: Any) -> JobSpec:
    errors = list(_VALIDATOR.iter_errors(doc))
    if errors:
        raise _best_error(errors)
    a, b = doc["n_range"]
    if a > b:
        raise SpecError("/n_range", f"empty range [{a}, {b}]")
    ring, base = _build_ring(doc["base"])
    model, family = _build_family(ring, doc["family"])
    routes = _canonical_routes(doc.get("routes", ["closed"]))
    _check_routes(routes, family["type"])
    try:
        data = kahler_data(model)
    except ValueError as exc:
        raise SpecError("/family", str(exc)) from None
    return JobSpec(base, family, (a, b), routes, doc.get("output", "text"),
                   doc.get("spec_version", 1), model, data)


def parse_spec(source) -> JobSpec:
    """Parse a job from bytes, text or a binary/text stream."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecError("/", f"input is not UTF-8: {exc}") from None
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise SpecError("/", f"malformed JSON: {exc}") from None
    return job_from_dict(doc)


def serialize(job: JobSpec) -> str:
    return json.dumps(job.to_json(), sort_keys=True, indent=2) + "\n"


def with_overrides(job: JobSpec, routes=None, n_range=None, output=None, check=False) -> JobSpec:
    changes: Dict[str, Any] = {}
    if check:
        routes = [r for r in ROUTE_NAMES if r != "family_form" or job.family_type != "generic"]
    if routes:
        changes["routes"] = _canonical_routes(routes)
        _check_routes(changes["routes"], job.family_type)
    if n_range is not None:
        a, b = n_range
        if not (0 <= a <= b <= N_MAX):
            raise SpecError("/n_range", f"range {a}..{b} must satisfy 0 <= a <= b <= {N_MAX}")
        changes["n_range"] = (a, b)
    if output is not None:
        changes["output"] = output
    return replace(job, **changes)


# -- evaluation ------------------------------------------------------------------

@dataclass(frozen=True)
class TraceRow:
    m: int
    delta: int
    h20_chern: GradedClass
    gamma: GradedClass


@dataclass(frozen=True)
class Row:
    n: int
    degree: int
    values: Tuple[Tuple[str, GradedClass], ...]
    trace: Tuple[TraceRow, ...] = ()

    @property
    def verdict(self) -> Optional[str]:
        if len(self.values) < 2:
            return None
        first = self.values[0][1]
        return "equal" if all(v == first for _, v in self.values[1:]) else "mismatch"


@dataclass(frozen=True)
class Report:
    job: JobSpec
    rows: Tuple[Row, ...]

    @property
    def mismatches(self) -> int:
        return sum(r.verdict == "mismatch" for r in self.rows)

    @property
    def exit_code(self) -> int:
        return EXIT_MISMATCH if self.mismatches else EXIT_OK


class EvaluationError(RuntimeError):
    def __init__(self, route: str, n: int, message: str):
        super().__init__(f"route={route} n={n}: {message}")


def _evaluate(job: JobSpec, route: str, n: int) -> GradedClass:
    try:
        if route == "family_form":
            return family_form(job.model, n)
        return fsw_general(job.data, n, Route(route))
    except ValueError as exc:
        raise EvaluationError(route, n, str(exc)) from None


def run(job: JobSpec, trace: bool = False) -> Report:
    data = job.data
    rows = []
    a, b = job.n_range
    for n in range(a, b + 1):
        degree = 2 * (data.obstruction_rank + n - data.h0 + 1)
        values = tuple((r, _evaluate(job, r, n)) for r in job.routes)
        tr: Tuple[TraceRow, ...] = ()
        if trace:
            tr = tuple(TraceRow(m, g.delta, c, g.value) for m, c, g in fsw_terms(data, n))
        rows.append(Row(n, degree, values, tr))
    return Report(job, tuple(rows))


# -- rendering -------------------------------------------------------------------

def _scalar_summary(d: Dict[str, Any], skip=("type",)) -> str:
    parts = []
    for k in sorted(d):
        if k in skip:
            continue
        v = d[k]
        if isinstance(v, (int, str)):
            parts.append(f"{k}={v}")
        elif k in ("intersection_matrix", "generators", "nilpotence"):
            parts.append(f"{k}={json.dumps(v, separators=(',', ':'))}")
    return " ".join([d["type"]] + parts)


def render_text(report: Report) -> str:
    job, data = report.job, report.job.data
    width = max(len(r) for r in job.routes + ("verdict",))
    lines = [
        f"base    {_scalar_summary(job.base)}",
        f"family  {_scalar_summary(job.family)}",
        f"ranks   h0={data.h0} h1={data.h1} h2={data.h2} rho_g={data.rho_g} "
        f"M={data.obstruction_rank}",
        f"routes  {' '.join(job.routes)}",
    ]
    for row in report.rows:
        lines.append("")
        lines.append(f"n={row.n}  degree {row.degree}")
        for route, value in row.values:
            lines.append(f"  {route:<{width}}  {value}")
        if row.verdict is not None:
            lines.append(f"  {'verdict':<{width}}  {row.verdict}")
        for t in row.trace:
            lines.append(f"  trace m={t.m} delta={t.delta} c(H20)={t.h20_chern} Gamma={t.gamma}")
    lines.append("")
    status = "mismatch" if report.mismatches else "ok"
    count, bad = len(report.rows), report.mismatches
    lines.append(f"status  {status} ({count} value{'s' * (count != 1)} of n, "
                 f"{bad} mismatch{'es' * (bad != 1)})")
    return "\n".join(lines) + "\n"


def _class_json(x: GradedClass) -> Dict[str, Any]:
    return {"text": str(x), "terms": class_to_json(x)}


def render_json(report: Report) -> str:
    job, data = report.job, report.job.data
    rows = []
    for row in report.rows:
        entry: Dict[str, Any] = {
            "n": row.n,
            "degree": row.degree,
            "values": {r: _class_json(v) for r, v in row.values},
            "verdict": row.verdict,
        }
        if row.trace:
            entry["trace"] = [{"m": t.m, "delta": t.delta, "h20_chern": _class_json(t.h20_chern),
                               "gamma": _class_json(t.gamma)} for t in row.trace]
        rows.append(entry)
    doc = {
        "spec_version": 1,
        "base": job.base,
        "family": job.family_type,
        "ranks": {"h0": data.h0, "h1": data.h1, "h2": data.h2, "rho_g": data.rho_g,
                  "M": data.obstruction_rank},
        "routes": list(job.routes),
        "results": rows,
        "status": "mismatch" if report.mismatches else "ok",
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- entry point -----------------------------------------------------------------

def _parse_n(text: str) -> Tuple[int, int]:
    a, sep, b = text.partition("..")
    try:
        lo = int(a)
        hi = int(b) if sep else lo
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b or a single integer, got {text!r}") from None
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fswcalc",
        description="Evaluate families Seiberg-Witten invariants of Kähler families from a JSON job.")
    p.add_argument("--spec", default="-", help="job file (JSON); '-' reads stdin")
    p.add_argument("--route", action="append", choices=ROUTE_NAMES,
                   help="evaluation route, repeatable; overrides the file")
    p.add_argument("--n", type=_parse_n, metavar="A..B", help="range of n; overrides the file")
    p.add_argument("--format", choices=("text", "json"), help="output format; overrides the file")
    p.add_argument("--check", action="store_true",
                   help="evaluate every applicable route and report verdicts")
    p.add_argument("--trace", action="store_true",
                   help="also print the Gamma_{m,n} table of the m-decomposition")
    return p


def main(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.spec == "-":
            raw = stdin.buffer.read() if hasattr(stdin, "buffer") else stdin.read()
        else:
            try:
                with open(args.spec, "rb") as fh:
                    raw = fh.read()
            except OSError as exc:
                raise SpecError("/", f"cannot read {args.spec}: {exc.strerror}") from None
        job = parse_spec(raw)
        job = with_overrides(job, args.route, args.n, args.format, args.check)
        report = run(job, trace=args.trace)
    except (SpecError, EvaluationError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ERROR
    stdout.write(render_json(report) if job.output == "json" else render_text(report))
    return report.exit_code


def main_entry():
    sys.exit(main())
