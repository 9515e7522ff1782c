"""Strong-law limits and limiting covariances of history-resolved degree counts.

All results are exact rationals.  The ball-count covariance ``Q`` is the
solution of the linear matrix equation

    lambda1 Q = A^T Q + Q A + lambda1 A^T (Diag(v1) - v1 v1^T) A,

which is then pushed through the linear map from ball counts to degree
counts.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import exact
from .seed import AdmissibleDegreeLedger, DegreeProfile, admissible_degrees
from .urn import (
    NonInvertibleNetwork,
    Spectrum,
    UrnModel,
    build_replacement_matrix,
    principal_eigenvector,
    verify_spectrum,
)

# largest color count solved by the half-vectorized elimination under "auto"
HALFVEC_MAX_COLORS = 10


class CovarianceDefect(AssertionError):
    """The covariance equation could not be solved or failed re-substitution."""


@dataclass(frozen=True)
class CovarianceSolution:
    Q: tuple[tuple[Fraction, ...], ...]
    residual_zero: bool
    method: str


@dataclass(frozen=True)
class DegreeMap:
    """Affine map ``D = L X + offset`` from ball counts to degree counts."""

    L: tuple[tuple[Fraction, ...], ...]
    offset: tuple[Fraction, ...]

    def apply(self, X) -> list[Fraction]:
        return [a + b for a, b in zip(exact.matvec(self.L, X), self.offset)]


@dataclass(frozen=True)
class DegreeLawReport:
    profile: DegreeProfile
    ledger: AdmissibleDegreeLedger
    model: UrnModel
    spectrum: Spectrum
    covariance: CovarianceSolution
    D_star: tuple[Fraction, ...]
    undivided_D_star: tuple[Fraction, ...]
    Sigma_D: tuple[tuple[Fraction, ...], ...]
    plain_D_star: tuple[Fraction, ...]
    plain_Sigma: tuple[tuple[Fraction, ...], ...]
    spectrum_verified: bool

    @property
    def degenerate(self) -> bool:
        return self.spectrum.degenerate

    @property
    def invertible(self) -> bool:
        return self.spectrum.invertible

    @property
    def clt_applicable(self) -> bool:
        return not self.spectrum.degenerate


def _freeze(a) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in a)


def strong_law_limits(spectrum: Spectrum, profile: DegreeProfile) -> tuple[Fraction, ...]:
    """Almost-sure limit of ``D_n / n`` in ledger order.

    Active counts are ball counts divided by the positions each node still
    holds (``m - s``); saturated counts are the last block of ``v1``.
    """
    m, k = profile.m, profile.k
    lam = profile.balance
    if lam <= 0:
        raise NonInvertibleNetwork(profile)
    v1 = spectrum.v1
    limits = [lam * v1[s * k + j] / (m - s) for s in range(m) for j in range(k)]
    limits += list(v1[(m - 1) * k:])
    if sum(limits) != profile.tau0 - 1:
        raise CovarianceDefect(f"strong-law limits do not conserve nodes: sum={sum(limits)}")
    return tuple(limits)


def undivided_limits(spectrum: Spectrum, profile: DegreeProfile) -> tuple[Fraction, ...]:
    """Limit vector with active blocks left as ``lambda1 * v1`` (no ``m - s`` division).

    Kept for comparison only: it counts positions, not nodes, and does not
    sum to ``tau0 - 1`` when ``m > 1``.
    """
    k, lam = profile.k, profile.balance
    return tuple(lam * x for x in spectrum.v1) + tuple(spectrum.v1[(profile.m - 1) * k:])


def noise_matrix(model: UrnModel, spectrum: Spectrum) -> exact.Matrix:
    """``lambda1 * A^T (Diag(v1) - v1 v1^T) A``."""
    v = list(spectrum.v1)
    B = exact.sub(exact.diag(v), exact.outer(v, v))
    At = exact.transpose(model.A)
    return exact.scale(exact.matmul(exact.matmul(At, B), model.A), model.lambda1)


def covariance_residual(model: UrnModel, spectrum: Spectrum, Q) -> exact.Matrix:
    """``A^T Q + Q A + noise - lambda1 Q``; the zero matrix iff Q solves the equation."""
    At = exact.transpose(model.A)
    lhs = exact.add(exact.matmul(At, Q), exact.matmul(Q, model.A))
    lhs = exact.add(lhs, noise_matrix(model, spectrum))
    return exact.sub(lhs, exact.scale(Q, model.lambda1))


def _solve_halfvec(model: UrnModel, spectrum: Spectrum) -> exact.Matrix:
    c = model.colors
    A = model.A
    lam = model.lambda1
    C = noise_matrix(model, spectrum)
    pairs = [(a, b) for a in range(c) for b in range(a, c)]
    col = {p: t for t, p in enumerate(pairs)}

    def unknown(a, b):
        return col[(a, b) if a <= b else (b, a)]

    rows, rhs = [], []
    for a, b in pairs:
        row = [0] * len(pairs)
        row[unknown(a, b)] += lam
        for t in range(c):
            if A[t][a]:
                row[unknown(t, b)] -= A[t][a]
            if A[t][b]:
                row[unknown(a, t)] -= A[t][b]
        rows.append(row)
        rhs.append([C[a][b]])
    try:
        sol = exact.solve(rows, rhs)
    except exact.SingularMatrixError as exc:
        raise CovarianceDefect(f"covariance system is singular: {exc}") from exc
    Q = exact.zeros(c)
    for (a, b), t in col.items():
        Q[a][b] = Q[b][a] = sol[t][0]
    return Q


def _poly_from_roots(roots: list[int]) -> list[int]:
    """Integer coefficients (constant term first) of prod (t - r)."""
    coeffs = [1]
    for r in roots:
        nxt = [0] * (len(coeffs) + 1)
        for d, a in enumerate(coeffs):
            nxt[d + 1] += a
            nxt[d] -= r * a
        coeffs = nxt
    return coeffs


def _poly_eval(q: list[int], M) -> exact.Matrix:
    out = exact.zeros(len(M))
    for a in reversed(q):
        out = exact.matmul(out, M)
        for t in range(len(M)):
            out[t][t] += a
    return out


def _solve_polynomial(model: UrnModel, spectrum: Spectrum) -> exact.Matrix:
    # Sylvester form P Q - Q R = K with P = A^T, R = lambda1 I - A.  With q the
    # characteristic polynomial of R, q(P) Q = sum_i q_i sum_{j<i} P^(i-1-j) K R^j.
    c = model.colors
    lam = model.lambda1
    P = exact.transpose(model.A)
    R = exact.sub(exact.scale(exact.identity(c), lam), model.matrix())
    # distinct roots annihilate R when A is diagonalizable; otherwise fall
    # back to the full characteristic polynomial
    q = _poly_from_roots([lam - mu for mu, _ in spectrum.eigenvalues])
    if not exact.is_zero(_poly_eval(q, R)):
        q = _poly_from_roots([lam - mu for mu, mult in spectrum.eigenvalues for _ in range(mult)])

    K = exact.scale(noise_matrix(model, spectrum), -1)
    den = lcm(*(x.denominator for row in K for x in row))
    K = [[int(x * den) for x in row] for row in K]

    S = K
    KRj = K
    total = exact.scale(S, q[1])
    for i in range(2, len(q)):
        KRj = exact.matmul(KRj, R)
        S = exact.add(exact.matmul(P, S), KRj)
        total = exact.add(total, exact.scale(S, q[i]))

    try:
        Q = exact.solve(_poly_eval(q, P), total)
    except exact.SingularMatrixError as exc:
        raise CovarianceDefect(f"q(A^T) is singular: {exc}") from exc
    return [[x / den for x in row] for row in Q]


def solve_covariance(model: UrnModel, spectrum: Spectrum, method: str = "auto") -> CovarianceSolution:
    """Exact limit of ``Cov[X_n] / n``.

    ``method`` is ``"halfvec"`` (elimination over the c(c+1)/2 entries on
    and above the diagonal), ``"polynomial"`` (characteristic-polynomial
    closed form of the Sylvester equation, practical for many colors), or
    ``"auto"``.  Either way the result is substituted back and must leave a
    zero residual.
    """
    if model.lambda1 <= 0:
        raise NonInvertibleNetwork(model.profile)
    if method == "auto":
        method = "halfvec" if model.colors <= HALFVEC_MAX_COLORS else "polynomial"
    if method == "halfvec":
        Q = _solve_halfvec(model, spectrum)
    elif method == "polynomial":
        Q = _solve_polynomial(model, spectrum)
    else:
        raise ValueError(f"unknown covariance method {method!r}")
    residual_zero = exact.is_zero(covariance_residual(model, spectrum, Q))
    if not residual_zero or not exact.is_symmetric(Q):
        raise CovarianceDefect("covariance solution failed re-substitution")
    return CovarianceSolution(_freeze(Q), residual_zero, method)


def degree_linear_map(model: UrnModel) -> DegreeMap:
    profile = model.profile
    m, k = profile.m, profile.k
    c = model.colors
    At = exact.transpose(model.A)
    try:
        inv = exact.inverse(At)
    except exact.SingularMatrixError:
        raise NonInvertibleNetwork(profile) from None
    L = []
    for s in range(m):
        for j in range(k):
            row = [Fraction(0)] * c
            row[s * k + j] = Fraction(1, m - s)
            L.append(row)
    inactive = inv[(m - 1) * k:]
    L.extend(inactive)
    offset = [Fraction(0)] * (m * k) + [-x for x in exact.matvec(inactive, model.X0)]
    return DegreeMap(_freeze(L), tuple(offset))


def draw_covariance(model: UrnModel, Q) -> tuple[tuple[Fraction, ...], ...]:
    """Limit of ``Cov[Y_n] / n`` for the draw counts ``Y = (A^T)^-1 (X - X0)``."""
    try:
        inv = exact.inverse(exact.transpose(model.A))
    except exact.SingularMatrixError:
        raise NonInvertibleNetwork(model.profile) from None
    return _freeze(exact.matmul(exact.matmul(inv, Q), exact.transpose(inv)))


def degree_covariance(Q, L, ledger: AdmissibleDegreeLedger):
    """Propagate ``Q`` to ``(Sigma_D, plain_Sigma)``."""
    L = L.L if isinstance(L, DegreeMap) else L
    sigma = exact.matmul(exact.matmul(L, Q), exact.transpose(L))
    M = ledger.aggregation_matrix()
    plain = exact.matmul(exact.matmul(M, sigma), exact.transpose(M))
    return _freeze(sigma), _freeze(plain)


def analyze(profile: DegreeProfile, method: str = "auto") -> DegreeLawReport:
    """Full pipeline from a degree profile to the exact degree laws."""
    model = build_replacement_matrix(profile)
    spectrum = principal_eigenvector(model)
    verification = verify_spectrum(model, spectrum)
    if not verification.passed:
        failed = [c.eigenvalue for c in verification.checks if not c.passed]
        raise CovarianceDefect(f"closed-form spectrum failed determinant check at {failed}")
    ledger = admissible_degrees(profile)
    cov = solve_covariance(model, spectrum, method)
    dmap = degree_linear_map(model)
    sigma, plain_sigma = degree_covariance(cov.Q, dmap, ledger)
    d_star = strong_law_limits(spectrum, profile)
    plain_d_star = tuple(exact.matvec(ledger.aggregation_matrix(), d_star))
    return DegreeLawReport(
        profile=profile,
        ledger=ledger,
        model=model,
        spectrum=spectrum,
        covariance=cov,
        D_star=d_star,
        undivided_D_star=undivided_limits(spectrum, profile),
        Sigma_D=sigma,
        plain_D_star=plain_d_star,
        plain_Sigma=plain_sigma,
        spectrum_verified=verification.passed,
    )
