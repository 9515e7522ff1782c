"""Bundled example seeds and manifests of their published values.

Each manifest entry carries a provenance tag:

* ``published``: a value printed in the source publication, transcribed as is;
* ``derived``: a value computed here with no printed counterpart, or a
  corrected replacement for a printed value that fails a check.

Every entry also records the value this package computes and whether the
two agree, so known misprints stay visible instead of being silently fixed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

from .laws import DegreeLawReport, analyze, draw_covariance
from .report import rational, rational_matrix, rational_vector
from .seed import SeedSpec, degree_profile, seed_from_document

MANIFEST_SCHEMA_ID = "hooknet.manifest/1"

# K4 on {hook, x, y, z} plus two loops at y: three vertices of degree 3
# (the hook among them) and one of degree 7
LOOPED_K4_SEED = {
    "vertices": ["hook", "x", "y", "z"],
    "edges": [
        ["hook", "x"], ["hook", "y"], ["hook", "z"],
        ["x", "y"], ["x", "z"], ["y", "z"],
        ["y", "y"], ["y", "y"],
    ],
    "hook": "hook",
    "multigraph": True,
}

# pendant hook on a triangle: degrees 1, 2, 2, 3 with the hook the only degree-1 vertex
DEGENERATE_SEED = {
    "vertices": ["hook", "b", "c", "d"],
    "edges": [["hook", "b"], ["b", "c"], ["c", "d"], ["d", "b"]],
    "hook": "hook",
}


def _m(scale, rows):
    return [[F(scale) * x for x in row] for row in rows]


def _v(scale, xs):
    return [F(scale) * x for x in xs]


@dataclass(frozen=True)
class Printed:
    quantity: str
    description: str
    value: object
    note: str = ""


@dataclass(frozen=True)
class Example:
    name: str
    seed_document: dict
    m: int
    description: str
    printed: tuple[Printed, ...]

    @property
    def seed(self) -> SeedSpec:
        return seed_from_document(self.seed_document)

    def profile(self):
        return degree_profile(self.seed, self.m)


EXAMPLES = {
    "unary-5.2": Example(
        "unary-5.2",
        LOOPED_K4_SEED,
        1,
        "unary network from the four-vertex seed with degrees 3, 3, 3, 7 (hook of degree 3)",
        (
            Printed("A", "replacement matrix", [[1, 1], [2, 0]]),
            Printed("D_star", "limits of (D3, D7, D6, D10)/n", _v(F(1, 3), [4, 2, 2, 1])),
            Printed("Q[0][0]", "limit of Var[X_{n,1}]/n", F(1, 9)),
            Printed(
                "Sigma_D",
                "limiting covariance of (D3, D7, D6, D10)",
                _m(F(1, 9), [[1, -1, -1, 1], [-1, 1, 1, -1], [-1, 1, 1, -1], [1, -1, -1, 1]]),
            ),
        ),
    ),
    "degenerate-5.3": Example(
        "degenerate-5.3",
        DEGENERATE_SEED,
        1,
        "degenerate unary network: the hook is the only vertex of degree 1",
        (
            Printed("A", "replacement matrix", [[-1, 2, 1], [0, 1, 1], [0, 2, 0]]),
            Printed("ball_limits", "limits of X_n/n", _v(F(1, 3), [0, 4, 2])),
            Printed(
                "D_star",
                "limits of (D1, D2 active, D3 active, D2 inactive, D3 inactive, D4)/n",
                _v(F(1, 3), [0, 4, 2, 0, 2, 1]),
            ),
            Printed("plain_D_star", "limits of (D1, D2, D3, D4)/n", _v(F(1, 3), [0, 4, 4, 1])),
            Printed(
                "draw_covariance",
                "limit of Cov[Y_n]/n",
                _m(F(1, 9), [[0, 0, 0], [0, 1, -1], [0, -1, 1]]),
            ),
            Printed(
                "Sigma_D",
                "history-resolved covariance G",
                _m(
                    F(1, 9),
                    [
                        [0, 0, 0, 0, 0, 0],
                        [0, 1, -1, 0, -1, 1],
                        [0, -1, 1, 0, -1, 1],
                        [0, 0, 0, 0, 0, 0],
                        [0, -1, -1, 0, 1, -1],
                        [0, 1, 1, 0, -1, 1],
                    ],
                ),
                "entries (3,5) and (3,6) have the wrong sign; the printed matrix is not positive semidefinite",
            ),
            Printed(
                "plain_Sigma",
                "limiting covariance of plain degree counts (D1, D2, D3, D4)",
                _m(F(1, 9), [[0, 0, 0, 0], [0, 1, -2, 1], [0, -2, 0, 0], [0, 1, 0, 1]]),
                "printed matrix is not positive semidefinite; follows from the sign errors in G",
            ),
            Printed(
                "plain_Sigma[2][2]",
                "limit of Var[D3]/n (printed as vanishing)",
                F(0),
                "D3 = active + inactive degree-3 counts is not deterministic: its variance grows like 4n/9",
            ),
        ),
    ),
    "binary-5.4": Example(
        "binary-5.4",
        LOOPED_K4_SEED,
        2,
        "binary network from the four-vertex seed with degrees 3, 3, 3, 7",
        (
            Printed("A", "replacement matrix", [[2, 2, 1, 0], [4, 0, 0, 1], [4, 2, -1, 0], [4, 2, 0, -1]]),
            Printed("lambda1", "balance factor", 5),
            Printed("v1", "principal left eigenvector", _v(F(1, 21), [12, 6, 2, 1])),
            Printed(
                "Q",
                "limit of Cov[X_n]/n",
                _m(F(5, 441), [[48, -32, -27, 11], [-32, 40, 11, -19], [-27, 11, 20, -4], [11, -19, -4, 12]]),
            ),
            Printed(
                "draw_covariance",
                "limit of Cov[Y_n]/n",
                _m(F(5, 882), [[24, -16, -3, -5], [-16, 20, -5, 1], [-3, -5, 10, -2], [-5, 1, -2, 6]]),
            ),
            Printed(
                "D_star",
                "limits of (D3, D7, D6, D10, D9, D13)/n",
                _v(F(1, 21), [60, 30, 10, 5, 2, 1]),
                "first two components count insertion positions, not nodes; "
                "dividing by the 2 positions per fresh node gives a vector summing to tau0 - 1 = 3",
            ),
            Printed(
                "Sigma_D",
                "limiting covariance of (D3, D7, D6, D10, D9, D13)",
                _m(
                    F(5, 882),
                    [
                        [24, -16, -27, 11, 3, 5],
                        [-16, 20, 11, -19, 5, -1],
                        [-27, 11, 40, -8, -13, -3],
                        [11, -19, -8, 24, -3, -5],
                        [3, 5, -13, -3, 10, -2],
                        [5, -1, -3, -5, -2, 6],
                    ],
                ),
            ),
        ),
    ),
    "ternary-3": Example(
        "ternary-3",
        LOOPED_K4_SEED,
        3,
        "ternary network from the four-vertex seed with degrees 3, 3, 3, 7",
        (
            Printed(
                "A",
                "replacement matrix",
                [
                    [3, 3, 2, 0, 0, 0],
                    [6, 0, 0, 2, 0, 0],
                    [6, 3, -2, 0, 1, 0],
                    [6, 3, 0, -2, 0, 1],
                    [6, 3, 0, 0, -1, 0],
                    [6, 3, 0, 0, 0, -1],
                ],
            ),
        ),
    ),
}


class UnknownExample(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown example {self.name!r}; available: {', '.join(EXAMPLES)}"


def get_example(name: str) -> Example:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise UnknownExample(name) from None


def computed_value(report: DegreeLawReport, quantity: str):
    """The value this package computes for a manifest quantity name."""
    base, _, index = quantity.partition("[")
    if base == "A":
        value = [list(row) for row in report.model.A]
    elif base == "lambda1":
        value = report.model.lambda1
    elif base == "v1":
        value = list(report.spectrum.v1)
    elif base == "ball_limits":
        value = [report.model.lambda1 * x for x in report.spectrum.v1]
    elif base == "Q":
        value = [list(row) for row in report.covariance.Q]
    elif base == "draw_covariance":
        value = [list(row) for row in draw_covariance(report.model, report.covariance.Q)]
    elif base in ("D_star", "plain_D_star", "undivided_D_star"):
        value = list(getattr(report, base))
    elif base in ("Sigma_D", "plain_Sigma"):
        value = [list(row) for row in getattr(report, base)]
    else:
        raise KeyError(quantity)
    if index:
        for part in ("[" + index).strip("[]").split("]["):
            value = value[int(part)]
    return value


def encode(value):
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return rational_matrix(value)
        return rational_vector(value)
    return rational(value)


def manifest(name: str, report: DegreeLawReport | None = None) -> dict:
    """Published values for an example next to the values computed here."""
    ex = get_example(name)
    if report is None:
        report = analyze(ex.profile())
    entries = []
    printed_ok = {}
    for p in ex.printed:
        computed = computed_value(report, p.quantity)
        agrees = computed == p.value
        printed_ok[p.quantity] = agrees
        entry = {
            "quantity": p.quantity,
            "description": p.description,
            "provenance": "published",
            "value": encode(p.value),
            "agrees": agrees,
        }
        if not agrees:
            entry["computed"] = encode(computed)
        if p.note:
            entry["note"] = p.note
        entries.append(entry)
    entries.append(
        {
            "quantity": "eigenvalues",
            "description": "closed-form spectrum with multiplicities, each confirmed by an exact determinant",
            "provenance": "derived",
            "value": [{"value": v, "multiplicity": mult} for v, mult in report.spectrum.eigenvalues],
            "agrees": report.spectrum_verified,
        }
    )
    for quantity, description in (
        ("D_star", "strong-law limits of history-resolved counts / n"),
        ("plain_D_star", "strong-law limits of plain degree counts / n"),
        ("Sigma_D", "limiting covariance of history-resolved counts"),
        ("plain_Sigma", "limiting covariance of plain degree counts"),
    ):
        # fill in what was not printed, or was printed wrong
        if not printed_ok.get(quantity, False):
            entries.append(
                {
                    "quantity": quantity,
                    "description": description,
                    "provenance": "derived",
                    "value": encode(computed_value(report, quantity)),
                    "agrees": True,
                }
            )
    return {
        "schema": MANIFEST_SCHEMA_ID,
        "example": ex.name,
        "description": ex.description,
        "m": ex.m,
        "seed": ex.seed_document,
        "entries": entries,
    }

