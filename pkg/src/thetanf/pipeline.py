"""Corpus ingestion, per-field analysis, grouping by discriminant and reporting."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from pathlib import Path

from . import linalg, modular, numfield, qform
from .errors import (
    DegreeOutOfRange,
    InvariantViolation,
    NonMonic,
    NotMaximal,
    ParseError,
    ThetaNFError,
)
from .numfield import FieldRecord, Polynomial

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
HARD_CHECKS = ("lemma_det", "even_diagonal")


@dataclass(frozen=True)
class RunConfig:
    precision: int = 200
    min_degree: int = 2
    max_degree: int = 7
    delta: Fraction = Fraction(3, 4)
    require_fundamental: bool = False
    require_coprime: bool = False
    galois: str | None = None
    output_format: str = "json"
    min_group_size: int = 1
    workers: int = 1
    display_precision: int | None = None

    def __post_init__(self):
        if self.precision < 30:
            raise ValueError("precision must be at least 30")
        if not 2 <= self.min_degree <= self.max_degree <= 7:
            raise ValueError("degree range must sit inside 2..7")
        if self.output_format not in ("json", "text"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        object.__setattr__(self, "delta", Fraction(self.delta))

    def as_dict(self):
        return {
            "precision": self.precision,
            "degrees": [self.min_degree, self.max_degree],
            "delta": str(self.delta),
            "require_fundamental": self.require_fundamental,
            "require_coprime": self.require_coprime,
            "galois": self.galois,
            "min_group_size": self.min_group_size,
        }


# -- input --

def _parse_rational(x, lineno):
    if isinstance(x, bool):
        raise ParseError(lineno, f"bad basis entry {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            raise ParseError(lineno, f"bad basis entry {x!r}") from None
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, int) for v in x) and x[1]:
        return Fraction(x[0], x[1])
    raise ParseError(lineno, f"bad basis entry {x!r}")


def parse_record(obj, lineno: int, config: RunConfig = RunConfig()) -> FieldRecord:
    if not isinstance(obj, dict):
        raise ParseError(lineno, "expected a JSON object")
    coeffs = obj.get("poly")
    if not isinstance(coeffs, list) or not coeffs or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in coeffs):
        raise ParseError(lineno, "'poly' must be a non-empty list of integers")
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    degree = len(coeffs) - 1
    if coeffs[-1] != 1:
        raise NonMonic(f"line {lineno}: leading coefficient {coeffs[-1]} is not 1")
    if not config.min_degree <= degree <= config.max_degree:
        raise DegreeOutOfRange(
            f"line {lineno}: degree {degree} outside {config.min_degree}..{config.max_degree}")
    basis = obj.get("basis")
    if basis is not None:
        if not isinstance(basis, list) or not all(isinstance(r, list) for r in basis):
            raise ParseError(lineno, "'basis' must be a list of rows")
        basis = tuple(tuple(_parse_rational(x, lineno) for x in row) for row in basis)
    disc = obj.get("disc")
    if disc is not None and (not isinstance(disc, int) or isinstance(disc, bool)):
        raise ParseError(lineno, "'disc' must be an integer")
    for key in ("label", "galois"):
        if obj.get(key) is not None and not isinstance(obj[key], str):
            raise ParseError(lineno, f"'{key}' must be a string")
    try:
        return FieldRecord(Polynomial(tuple(coeffs)), basis=basis, label=obj.get("label"),
                           galois_group=obj.get("galois"), claimed_disc=disc)
    except ThetaNFError as exc:
        raise ParseError(lineno, str(exc)) from exc


def load_corpus(path, config: RunConfig = RunConfig()) -> list[FieldRecord]:
    """Read a JSON Lines corpus; blank lines and ``#`` comments are ignored."""
    records = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(lineno, f"invalid JSON ({exc.msg})") from None
            records.append(parse_record(obj, lineno, config))
    return records


# -- per-field analysis --

@dataclass(frozen=True)
class Validation:
    accepted: bool
    reasons: tuple[str, ...] = ()
    order: numfield.OrderBasis | None = None


def validate_field(rec: FieldRecord, config: RunConfig = RunConfig()) -> Validation:
    """Accept a record or explain why it is skipped. Skips are data, never exceptions."""
    try:
        real = numfield.count_real_roots(rec.poly)
    except ThetaNFError as exc:
        return Validation(False, (f"{type(exc).__name__}",))
    if real != rec.degree:
        return Validation(False, ("NotTotallyReal",))
    if not numfield.is_irreducible(rec.poly):
        return Validation(False, ("Reducible",))
    try:
        order = numfield.make_order(rec)
    except NotMaximal as exc:
        return Validation(False, (f"NotMaximal at {exc.p}",))
    except ThetaNFError as exc:
        return Validation(False, (f"{type(exc).__name__}: {exc}",))
    reasons = []
    if config.require_fundamental and not modular.is_fundamental(order.disc):
        reasons.append("NotFundamental")
    if config.require_coprime and gcd(rec.degree, order.disc) != 1:
        reasons.append("NotCoprime")
    if config.galois and rec.galois_group is not None and rec.galois_group != config.galois:
        reasons.append(f"Galois {rec.galois_group} != {config.galois}")
    if reasons:
        return Validation(False, tuple(reasons), order)
    return Validation(True, (), order)


@dataclass(frozen=True)
class FieldResult:
    record: FieldRecord
    order: numfield.OrderBasis
    lattice: numfield.TraceZeroLattice
    invariants: qform.FormInvariants
    theta: qform.ThetaSeries
    metadata: modular.ThetaMetadata
    checks: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return self.record.name

    @property
    def form(self) -> qform.QuadraticForm:
        return qform.QuadraticForm(self.lattice.gram)

    @property
    def smallest_prime(self):
        return qform.smallest_represented_prime(self.theta)


def _checks(rec, order, lattice, inv, meta, config):
    n, d, m = rec.degree, order.disc, lattice.m
    sign = (-1) ** ((n - 1) * (n - 2) // 2)
    expected = n * d
    lemma_ok = inv.det * m * m == expected and inv.disc == sign * abs(inv.det)
    checks = {
        "lemma_det": "pass" if lemma_ok else "fail",
        "even_diagonal": "pass" if all(lattice.gram[i][i] % 2 == 0 for i in range(n - 1)) else "fail",
        "level_divides_2nd": "pass" if meta.level % inv.level == 0 else "flag",
        "coprimality": "pass" if gcd(n, d) == 1 else "flag",
        "fundamental_disc": "pass" if modular.is_fundamental(d) else "flag",
    }
    if config.galois:
        checks["galois"] = "pass" if rec.galois_group == config.galois else "flag"
    return checks


def analyze_field(rec: FieldRecord, config: RunConfig = RunConfig()) -> FieldResult:
    """Full invariant bundle and theta series of one validated record."""
    try:
        order = numfield.make_order(rec)
        lattice = numfield.trace_zero_lattice(order)
        F = qform.QuadraticForm(lattice.gram)
        inv = qform.invariants(F)
        theta = qform.theta_series(F, config.precision, config.delta)
        meta = modular.theta_metadata(rec.degree, order.disc)
    except ThetaNFError as exc:
        exc.args = (f"{rec.name}: {exc}",)
        raise
    checks = _checks(rec, order, lattice, inv, meta, config)
    failed = [name for name in HARD_CHECKS if checks[name] != "pass"]
    if failed:
        raise InvariantViolation(f"{rec.name}: hard check(s) failed: {', '.join(failed)}")
    return FieldResult(rec, order, lattice, inv, theta, meta, checks)


@dataclass(frozen=True)
class Comparison:
    equal: bool
    witness: list | None = None


def theta_equal(r1: FieldResult, r2: FieldResult, B: int) -> bool:
    return r1.theta.truncate(B) == r2.theta.truncate(B)


def compare_fields(r1: FieldResult, r2: FieldResult, B: int) -> Comparison:
    """Theta comparison; equal ternary (or smaller) forms also get an isometry witness."""
    if not theta_equal(r1, r2, B):
        return Comparison(False)
    witness = None
    if r1.form.rank == r2.form.rank and r1.form.rank <= 3:
        witness = qform.isometry(r1.form, r2.form)
        if witness is None:
            log.warning("theta series of %s and %s agree to q^%d but no isometry exists",
                        r1.label, r2.label, B)
    return Comparison(True, witness)


# -- grouping --

@dataclass(frozen=True)
class Independence:
    independent: bool
    rank: int
    precision: int

    @property
    def verdict(self) -> str:
        return "independent" if self.independent else "undetermined"


@dataclass(frozen=True)
class Collision:
    kind: str  # "prime" or "minimum"
    value: int
    fields: tuple[str, str]


@dataclass(frozen=True)
class GroupReport:
    disc: int
    degree: int
    labels: tuple[str, ...]
    independence: Independence
    collisions: tuple[Collision, ...]
    dim_bound: modular.DimBound | None


def independence(results, B: int) -> Independence:
    rows = [list(r.theta.truncate(B).coeffs) for r in results]
    rank = linalg.rank_exact(rows)
    return Independence(rank == len(rows), rank, B)


def collisions(results) -> list[Collision]:
    out = []
    for a, b in combinations(results, 2):
        pa, pb = a.smallest_prime, b.smallest_prime
        if pa is not None and pa == pb:
            out.append(Collision("prime", pa, (a.label, b.label)))
        if a.invariants.minimum == b.invariants.minimum:
            out.append(Collision("minimum", a.invariants.minimum, (a.label, b.label)))
    return out


def _dim_bound(d, n):
    if n != 4:
        return None
    try:
        return modular.dim_lower_bound(d, "paper")
    except ThetaNFError:
        return None


def group_and_report(results, config: RunConfig = RunConfig()) -> list[GroupReport]:
    groups: dict[tuple[int, int], list[FieldResult]] = {}
    for r in results:
        groups.setdefault((r.order.disc, r.record.degree), []).append(r)
    reports = []
    for (d, n), members in sorted(groups.items()):
        if len(members) < config.min_group_size:
            continue
        reports.append(GroupReport(
            disc=d,
            degree=n,
            labels=tuple(r.label for r in members),
            independence=independence(members, config.precision),
            collisions=tuple(collisions(members)),
            dim_bound=_dim_bound(d, n),
        ))
    return reports


@dataclass
class RunOutput:
    results: list[FieldResult]
    skipped: list[tuple[FieldRecord, tuple[str, ...]]]
    groups: list[GroupReport]


def _analyze_one(args):
    rec, config = args
    v = validate_field(rec, config)
    if not v.accepted:
        return rec, v.reasons, None
    return rec, (), analyze_field(rec, config)


def run(records, config: RunConfig = RunConfig()) -> RunOutput:
    """Validate and analyze every record, then group. Output order follows input order."""
    jobs = [(rec, config) for rec in records]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            outcomes = list(pool.map(_analyze_one, jobs))
    else:
        outcomes = [_analyze_one(job) for job in jobs]
    results, skipped = [], []
    for rec, reasons, res in outcomes:
        if res is None:
            log.info("skipping %s: %s", rec.name, "; ".join(reasons))
            skipped.append((rec, reasons))
        else:
            results.append(res)
    return RunOutput(results, skipped, group_and_report(results, config))


# -- output --

def _frac(x: Fraction) -> str:
    return str(x)


def _dim_bound_dict(b: modular.DimBound | None):
    if b is None:
        return None
    return {
        "d": b.d,
        "N": b.N,
        "mode": b.mode,
        "heuristic": b.heuristic,
        "main_term": _frac(b.main_term),
        "lambda_product": b.lambda_product,
        "sol_count": b.sol_count,
        "lower_bound": _frac(b.lower_bound),
        "quartic_count_curve": round(modular.quartic_count_curve(b.d), 3),
    }


def field_dict(r: FieldResult) -> dict:
    inv, meta = r.invariants, r.metadata
    return {
        "label": r.label,
        "poly": list(r.record.poly.coeffs),
        "degree": r.record.degree,
        "disc": r.order.disc,
        "m": r.lattice.m,
        "gram": [list(row) for row in r.lattice.gram],
        "invariants": {
            "det": inv.det,
            "disc": inv.disc,
            "level": inv.level,
            "minimum": inv.minimum,
            "character_disc": inv.character_disc,
        },
        "smallest_prime": r.smallest_prime,
        "metadata": {
            "weight": _frac(meta.weight),
            "level": meta.level,
            "character_disc": meta.character_disc,
        },
        "checks": dict(r.checks),
        "theta": {"precision": r.theta.precision, "coeffs": list(r.theta.coeffs)},
    }


def group_dict(g: GroupReport) -> dict:
    return {
        "disc": g.disc,
        "degree": g.degree,
        "fields": list(g.labels),
        "independence": {
            "verdict": g.independence.verdict,
            "rank": g.independence.rank,
            "precision": g.independence.precision,
        },
        "collisions": [
            {"kind": c.kind, "value": c.value, "fields": list(c.fields)} for c in g.collisions
        ],
        "dim_bound": _dim_bound_dict(g.dim_bound),
    }


def report_dict(out: RunOutput, config: RunConfig) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "config": config.as_dict(),
        "fields": [field_dict(r) for r in out.results],
        "skipped": [
            {"label": rec.name, "poly": list(rec.poly.coeffs), "reasons": list(reasons)}
            for rec, reasons in out.skipped
        ],
        "groups": [group_dict(g) for g in out.groups],
    }


def render_json(out: RunOutput, config: RunConfig) -> str:
    return json.dumps(report_dict(out, config), indent=2) + "\n"


def _table(header, rows):
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).ljust(w) for x, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip())
    return lines


def render_text(out: RunOutput, config: RunConfig) -> str:
    below = config.display_precision
    lines = [f"# thetanf report (schema {SCHEMA_VERSION}, precision B={config.precision})", ""]
    rows = []
    for r in out.results:
        inv = r.invariants
        flags = ",".join(k for k, v in r.checks.items() if v != "pass") or "-"
        rows.append((str(r.record.poly), r.order.disc, r.lattice.m, inv.det, inv.level,
                     inv.minimum, flags, r.theta.format(below)))
    lines += _table(("polynomial", "disc", "m", "det", "level", "min", "flags", "theta"), rows)
    if out.skipped:
        lines += ["", "skipped:"]
        lines += [f"  {rec.name}: {'; '.join(reasons)}" for rec, reasons in out.skipped]
    if out.groups:
        lines += ["", "groups:"]
        grows = []
        for g in out.groups:
            coll = "; ".join(f"{c.kind} {c.value}: {c.fields[0]} / {c.fields[1]}"
                             for c in g.collisions) or "-"
            bound = "-" if g.dim_bound is None else _frac(g.dim_bound.lower_bound)
            grows.append((g.disc, g.degree, len(g.labels),
                          f"{g.independence.verdict}({g.independence.rank}, B={g.independence.precision})",
                          bound, coll))
        lines += _table(("disc", "n", "fields", "independence", "dim_lower_bound", "collisions"), grows)
    return "\n".join(lines) + "\n"


def emit_reports(out: RunOutput, config: RunConfig, out_dir=None) -> str | Path:
    """Render the report; write it under ``out_dir`` when given and return the path."""
    text = render_json(out, config) if config.output_format == "json" else render_text(out, config)
    if out_dir is None:
        return text
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / ("report.json" if config.output_format == "json" else "report.txt")
    path.write_text(text)
    return path
