"""JSON, CSV and plain-text renderings of analyses, trajectories and verdicts.

Exact values are encoded as ``{"num": "<int>", "den": "<int>"}`` with
string integers; empirical values as decimal strings.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import jsonschema

from .laws import DegreeLawReport, draw_covariance
from .seed import AdmissibleDegreeLedger
from .simulate import Trajectory
from .stats import RunStats, Verdict

ANALYSIS_SCHEMA_ID = "hooknet.analysis/1"
TRAJECTORY_SCHEMA_ID = "hooknet.trajectory/1"
VERDICT_SCHEMA_ID = "hooknet.verdict/1"

_RATIONAL = {
    "type": "object",
    "properties": {
        "num": {"type": "string", "pattern": "^-?[0-9]+$"},
        "den": {"type": "string", "pattern": "^[1-9][0-9]*$"},
    },
    "required": ["num", "den"],
    "additionalProperties": False,
}

ANALYSIS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "$defs": {
        "rational": _RATIONAL,
        "vector": {"type": "array", "items": {"$ref": "#/$defs/rational"}},
        "matrix": {"type": "array", "items": {"$ref": "#/$defs/vector"}},
    },
    "required": ["schema", "profile", "ledger", "urn", "spectrum", "covariance", "degree_laws", "flags"],
    "properties": {
        "schema": {"const": ANALYSIS_SCHEMA_ID},
        "profile": {
            "type": "object",
            "required": ["m", "k", "degrees", "counts", "hook_index", "hook_degree", "tau0"],
            "properties": {
                "m": {"type": "integer", "minimum": 1},
                "k": {"type": "integer", "minimum": 1},
                "degrees": {"type": "array", "items": {"type": "integer"}},
                "counts": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "hook_index": {"type": "integer", "minimum": 1},
                "hook_degree": {"type": "integer"},
                "tau0": {"type": "integer", "minimum": 2},
            },
        },
        "ledger": {
            "type": "object",
            "required": ["labels", "collision_groups"],
            "properties": {
                "labels": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["j", "s", "degree", "active"],
                        "properties": {
                            "j": {"type": "integer", "minimum": 1},
                            "s": {"type": "integer", "minimum": 0},
                            "degree": {"type": "integer"},
                            "active": {"type": "boolean"},
                        },
                    },
                },
                "collision_groups": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["degree", "labels"],
                        "properties": {
                            "degree": {"type": "integer"},
                            "labels": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                        },
                    },
                },
            },
        },
        "urn": {
            "type": "object",
            "required": ["A", "X0", "lambda1"],
            "properties": {
                "A": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                "X0": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "lambda1": {"type": "integer"},
            },
        },
        "spectrum": {
            "type": "object",
            "required": ["eigenvalues", "v1", "verified"],
            "properties": {
                "eigenvalues": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["value", "multiplicity", "det_shifted"],
                        "properties": {
                            "value": {"type": "integer"},
                            "multiplicity": {"type": "integer", "minimum": 1},
                            "det_shifted": {"type": "string"},
                        },
                    },
                },
                "v1": {"$ref": "#/$defs/vector"},
                "verified": {"type": "boolean"},
            },
        },
        "covariance": {
            "type": "object",
            "required": ["Q", "residual_zero", "method", "draw_covariance"],
            "properties": {
                "Q": {"$ref": "#/$defs/matrix"},
                "draw_covariance": {"$ref": "#/$defs/matrix"},
                "residual_zero": {"type": "boolean"},
                "method": {"enum": ["halfvec", "polynomial"]},
            },
        },
        "degree_laws": {
            "type": "object",
            "required": ["D_star", "Sigma_D", "plain_degrees", "plain_D_star", "plain_Sigma"],
            "properties": {
                "D_star": {"$ref": "#/$defs/vector"},
                "Sigma_D": {"$ref": "#/$defs/matrix"},
                "plain_degrees": {"type": "array", "items": {"type": "integer"}},
                "plain_D_star": {"$ref": "#/$defs/vector"},
                "plain_Sigma": {"$ref": "#/$defs/matrix"},
                "undivided_D_star": {"$ref": "#/$defs/vector"},
            },
        },
        "flags": {
            "type": "object",
            "required": ["degenerate", "invertible", "clt_applicable"],
            "properties": {
                "degenerate": {"type": "boolean"},
                "invertible": {"type": "boolean"},
                "clt_applicable": {"type": "boolean"},
            },
        },
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}


def rational(x) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def from_rational(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def rational_vector(v) -> list[dict]:
    return [rational(x) for x in v]


def rational_matrix(a) -> list[list[dict]]:
    return [rational_vector(row) for row in a]


def decimal(x: float) -> str:
    return repr(float(x))


def _ledger_document(ledger: AdmissibleDegreeLedger) -> dict:
    return {
        "labels": [
            {"j": j + 1, "s": s, "degree": ledger.label_degree[(j, s)], "active": s < ledger.m}
            for j, s in ledger.history_labels
        ],
        "collision_groups": [
            {"degree": ledger.label_degree[g[0]], "labels": [ledger.index(lab) for lab in g]}
            for g in ledger.collision_groups
        ],
    }


def report_notes(report: DegreeLawReport) -> list[str]:
    notes = []
    if report.degenerate:
        notes.append(
            "degenerate: v1 has zero components (a single seed vertex has the hook's degree); "
            "limiting covariance cross-validated by simulation only"
        )
    if report.profile.m > 1:
        notes.append(
            "strong-law limits of active classes are ball limits divided by the remaining "
            "positions per node (m - s); they sum to tau0 - 1"
        )
    return notes


def analysis_document(report: DegreeLawReport, verbose: bool = False) -> dict:
    p = report.profile
    from .urn import verify_spectrum

    checks = verify_spectrum(report.model, report.spectrum).checks
    laws = {
        "D_star": rational_vector(report.D_star),
        "Sigma_D": rational_matrix(report.Sigma_D),
        "plain_degrees": list(report.ledger.plain_degrees),
        "plain_D_star": rational_vector(report.plain_D_star),
        "plain_Sigma": rational_matrix(report.plain_Sigma),
    }
    if verbose:
        laws["undivided_D_star"] = rational_vector(report.undivided_D_star)
    return {
        "schema": ANALYSIS_SCHEMA_ID,
        "profile": {
            "m": p.m,
            "k": p.k,
            "degrees": list(p.degrees),
            "counts": list(p.counts),
            "hook_index": p.hook_index + 1,
            "hook_degree": p.hook_degree,
            "tau0": p.tau0,
        },
        "ledger": _ledger_document(report.ledger),
        "urn": {
            "A": [list(row) for row in report.model.A],
            "X0": list(report.model.X0),
            "lambda1": report.model.lambda1,
        },
        "spectrum": {
            "eigenvalues": [
                {"value": c.eigenvalue, "multiplicity": c.multiplicity, "det_shifted": str(c.determinant)}
                for c in checks
            ],
            "v1": rational_vector(report.spectrum.v1),
            "verified": report.spectrum_verified,
        },
        "covariance": {
            "Q": rational_matrix(report.covariance.Q),
            "draw_covariance": rational_matrix(draw_covariance(report.model, report.covariance.Q)),
            "residual_zero": report.covariance.residual_zero,
            "method": report.covariance.method,
        },
        "degree_laws": laws,
        "flags": {
            "degenerate": report.degenerate,
            "invertible": report.invertible,
            "clt_applicable": report.clt_applicable,
        },
        "notes": report_notes(report),
    }


def validate_analysis(doc: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``doc`` is not a valid analysis report."""
    jsonschema.validate(doc, ANALYSIS_SCHEMA)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _fmt(x, precision: int) -> str:
    return f"{float(x):.{precision}g}"


def analysis_csv(report: DegreeLawReport, precision: int = 12) -> str:
    """Long-format CSV: one row per vector or matrix entry."""
    ledger = report.ledger
    names = [ledger.describe(lab) for lab in ledger.history_labels]
    plain = [str(d) for d in ledger.plain_degrees]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["quantity", "row", "col", "row_label", "col_label", "exact", "value"])
    for a, x in enumerate(report.D_star):
        w.writerow(["D_star", a, "", names[a], "", str(x), _fmt(x, precision)])
    for a, x in enumerate(report.plain_D_star):
        w.writerow(["plain_D_star", a, "", plain[a], "", str(x), _fmt(x, precision)])
    for quantity, mat, lab in (("Sigma_D", report.Sigma_D, names), ("plain_Sigma", report.plain_Sigma, plain)):
        for a, row in enumerate(mat):
            for b, x in enumerate(row):
                w.writerow([quantity, a, b, lab[a], lab[b], str(x), _fmt(x, precision)])
    for a, x in enumerate(report.spectrum.v1):
        w.writerow(["v1", a, "", f"color {a + 1}", "", str(x), _fmt(x, precision)])
    for a, row in enumerate(report.covariance.Q):
        for b, x in enumerate(row):
            w.writerow(["Q", a, b, f"color {a + 1}", f"color {b + 1}", str(x), _fmt(x, precision)])
    return buf.getvalue()


def _matrix_lines(mat, indent: str = "  ") -> list[str]:
    cells = [[str(x) for x in row] for row in mat]
    width = max((len(c) for row in cells for c in row), default=1)
    return [indent + " ".join(c.rjust(width) for c in row) for row in cells]


def analysis_table(report: DegreeLawReport, verbose: bool = False) -> str:
    p = report.profile
    lines = [
        f"m-ary hooking network: m={p.m}, tau0={p.tau0}, degrees={list(p.degrees)}, "
        f"counts={list(p.counts)}, hook degree={p.hook_degree}",
        f"flags: degenerate={report.degenerate} invertible={report.invertible} "
        f"clt_applicable={report.clt_applicable}",
        "",
        f"replacement matrix A (lambda1 = {report.model.lambda1}):",
        *_matrix_lines(report.model.A),
        "eigenvalues: " + ", ".join(f"{v} (x{m})" for v, m in report.spectrum.eigenvalues)
        + ("  [verified by exact determinants]" if report.spectrum_verified else "  [VERIFICATION FAILED]"),
        "v1 = (" + ", ".join(str(x) for x in report.spectrum.v1) + ")",
        "",
        "limit of Cov[X_n]/n (Q):",
        *_matrix_lines(report.covariance.Q),
        "",
        "strong-law limits D_n/n -> D*:",
    ]
    ledger = report.ledger
    for lab, x, u in zip(ledger.history_labels, report.D_star, report.undivided_D_star):
        extra = f"   undivided: {u}" if verbose else ""
        lines.append(f"  {ledger.describe(lab):<28} {str(x):>12}{extra}")
    lines += ["", "limiting covariance of (D_n - n D*)/sqrt(n):", *_matrix_lines(report.Sigma_D)]
    lines += ["", "plain degrees " + str(list(ledger.plain_degrees)) + ":"]
    lines.append("  limits: (" + ", ".join(str(x) for x in report.plain_D_star) + ")")
    lines += ["  covariance:", *_matrix_lines(report.plain_Sigma, "    ")]
    notes = report_notes(report)
    if notes:
        lines += [""] + [f"note: {n}" for n in notes]
    return "\n".join(lines) + "\n"


def trajectory_document(traj: Trajectory) -> dict:
    doc = {
        "schema": TRAJECTORY_SCHEMA_ID,
        "mode": traj.mode,
        "steps": traj.n,
        "rng_seed": traj.rng_seed,
        "rng_algorithm": traj.rng_algorithm,
        "X": traj.X,
        "Y": traj.Y,
        "D": traj.D,
        "checkpoints": [{"step": s.step, "X": list(s.X), "D": list(s.D)} for s in traj.snapshots],
    }
    if traj.coupling_held is not None:
        doc["coupling_held"] = traj.coupling_held
    if traj.node_count is not None:
        doc["node_count"] = traj.node_count
    return doc


def trajectory_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    c = len(traj.X)
    w.writerow(["step"] + [f"X{a + 1}" for a in range(c)] + [f"D{a + 1}" for a in range(len(traj.D))])
    rows = traj.snapshots or []
    if not rows or rows[-1].step != traj.n:
        w.writerows([[s.step, *s.X, *s.D] for s in rows])
        w.writerow([traj.n, *traj.X, *traj.D])
    else:
        w.writerows([[s.step, *s.X, *s.D] for s in rows])
    return buf.getvalue()


def trajectory_table(traj: Trajectory, ledger: AdmissibleDegreeLedger) -> str:
    lines = [f"mode={traj.mode} steps={traj.n} rng_seed={traj.rng_seed}", f"X = {traj.X}", f"D = {traj.D}"]
    for lab, d in zip(ledger.history_labels, traj.D):
        lines.append(f"  {ledger.describe(lab):<28} {d}")
    if traj.node_count is not None:
        lines.append(f"nodes: {traj.node_count}")
    if traj.coupling_held is not None:
        lines.append(f"coupling held: {'true' if traj.coupling_held else 'false'}")
    return "\n".join(lines) + "\n"


def verdict_document(verdict: Verdict, stats: RunStats) -> dict:
    return {
        "schema": VERDICT_SCHEMA_ID,
        "passed": verdict.passed,
        "n": stats.n,
        "replicates": stats.R,
        "rng_seed": stats.rng_seed,
        "rng_algorithm": stats.rng_algorithm,
        "policy": {
            "mean_tol": decimal(verdict.policy.mean_tol),
            "cov_tol": decimal(verdict.policy.cov_tol),
            "description": verdict.policy.describe(),
        },
        "checks": [
            {"name": c.name, "value": decimal(c.value), "tolerance": decimal(c.tolerance), "passed": c.passed}
            for c in verdict.checks
        ],
        "entries": [
            {
                "level": e.level,
                "row": e.row,
                "col": e.col,
                "theory": decimal(e.theory),
                "empirical": decimal(e.empirical),
                "abs_dev": decimal(e.abs_dev),
                "rel_dev": None if e.rel_dev is None else decimal(e.rel_dev),
                "structural_zero": e.structural_zero,
            }
            for e in verdict.entries
        ],
        "warnings": verdict.warnings,
        "notes": verdict.notes,
    }


def verdict_csv(verdict: Verdict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["level", "row", "col", "theory", "empirical", "abs_dev", "rel_dev", "structural_zero"])
    for e in verdict.entries:
        w.writerow([
            e.level, e.row, e.col, decimal(e.theory), decimal(e.empirical), decimal(e.abs_dev),
            "" if e.rel_dev is None else decimal(e.rel_dev), int(e.structural_zero),
        ])
    return buf.getvalue()


def verdict_table(verdict: Verdict, stats: RunStats) -> str:
    lines = [
        f"verdict: {'PASS' if verdict.passed else 'FAIL'}  (n={stats.n}, R={stats.R}, rng_seed={stats.rng_seed})",
        f"policy: {verdict.policy.describe()}",
        "",
    ]
    for c in verdict.checks:
        lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name:<40} {c.value:.6g} (tol {c.tolerance:g})")
    lines += ["", f"  {'level':<9}{'row':<30}{'col':<30}{'theory':>12}{'empirical':>12}{'abs dev':>11}"]
    for e in verdict.entries:
        mark = " *" if e.structural_zero else ""
        lines.append(
            f"  {e.level:<9}{e.row:<30}{e.col:<30}{e.theory:>12.5g}{e.empirical:>12.5g}{e.abs_dev:>11.3g}{mark}"
        )
    if any(e.structural_zero for e in verdict.entries):
        lines.append("  (* theory row/column identically zero: checked absolutely)")
    for w in verdict.warnings:
        lines.append(f"warning: {w}")
    for n in verdict.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"
