"""The Pólya urn behind an m-ary hooking network: replacement matrix and spectrum.

Colors are numbered ``j + s*k`` (zero-based) for seed-degree index ``j`` and
``s`` hookings received, ``s < m``.  A ball is one free insertion position.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .seed import DegreeProfile


class NonInvertibleNetwork(ValueError):
    """The urn has balance factor 0 (unary network grown from a single edge)."""

    def __init__(self, profile: DegreeProfile):
        super().__init__(
            "non-invertible path network: m=1 with a 2-vertex seed gives "
            f"balance factor 0 (m={profile.m}, tau0={profile.tau0}); "
            "the replacement matrix is singular and the degree laws are not derived"
        )


class SpectrumDefect(AssertionError):
    """A closed-form spectral claim failed its exact cross-check."""


@dataclass(frozen=True)
class UrnModel:
    A: tuple[tuple[int, ...], ...]
    X0: tuple[int, ...]
    lambda1: int
    profile: DegreeProfile

    @property
    def colors(self) -> int:
        return len(self.X0)

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self.A]


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[tuple[int, int], ...]
    v1: tuple[Fraction, ...]
    degenerate: bool
    invertible: bool

    def segment(self, s: int, k: int) -> tuple[Fraction, ...]:
        return self.v1[s * k:(s + 1) * k]


def hook_block(profile: DegreeProfile) -> list[list[int]]:
    """Top-left k x k block: drawing a fresh (never-hooked) position."""
    m, k, i, n = profile.m, profile.k, profile.hook_index, profile.counts
    return [
        [m * n[l] - m * (l == j) - m * (l == i) for l in range(k)]
        for j in range(k)
    ]


def build_replacement_matrix(profile: DegreeProfile) -> UrnModel:
    m, k = profile.m, profile.k
    H = hook_block(profile)
    H_prime = [[H[a][b] + m * (a == b) for b in range(k)] for a in range(k)]
    A = exact.zeros(m * k)
    for r in range(m):
        block = H if r == 0 else H_prime
        for a in range(k):
            row = A[r * k + a]
            row[:k] = block[a]
            if r == 0:
                if m > 1:
                    row[k + a] = m - 1
            else:
                # the m-r remaining positions at the latch recolor to s=r+1
                row[r * k + a] -= m - r
                if r < m - 1:
                    row[(r + 1) * k + a] += m - r - 1
    X0 = [0] * (m * k)
    for j, c in enumerate(profile.counts):
        X0[j] = m * c
    return UrnModel(
        A=tuple(tuple(row) for row in A),
        X0=tuple(X0),
        lambda1=profile.balance,
        profile=profile,
    )


def eigenvalues(profile: DegreeProfile) -> tuple[tuple[int, int], ...]:
    """Closed-form spectrum as ``(eigenvalue, multiplicity)`` pairs.

    Zero-multiplicity entries (``-1`` when k == 1) are dropped.
    """
    m, k = profile.m, profile.k
    spec = [(profile.balance, 1), (-1, k - 1)]
    spec += [(-r, k) for r in range(2, m + 1)]
    merged: dict[int, int] = {}
    for value, mult in spec:
        if mult:
            merged[value] = merged.get(value, 0) + mult
    return tuple(sorted(merged.items(), reverse=True))


@dataclass(frozen=True)
class SpectrumCheck:
    eigenvalue: int
    multiplicity: int
    determinant: int

    @property
    def passed(self) -> bool:
        return self.determinant == 0


@dataclass(frozen=True)
class SpectrumVerification:
    checks: tuple[SpectrumCheck, ...]
    multiplicity_total: int
    size: int

    @property
    def passed(self) -> bool:
        return self.multiplicity_total == self.size and all(c.passed for c in self.checks)


def shifted_determinant(model: UrnModel, value: int) -> int:
    A = model.matrix()
    for a in range(len(A)):
        A[a][a] -= value
    return exact.bareiss_det(A)


def verify_spectrum(model: UrnModel, spectrum) -> SpectrumVerification:
    """Check each claimed eigenvalue by an exact integer determinant.

    ``spectrum`` is either a :class:`Spectrum` or a sequence of
    ``(eigenvalue, multiplicity)`` pairs.
    """
    pairs = spectrum.eigenvalues if isinstance(spectrum, Spectrum) else tuple(spectrum)
    checks = tuple(
        SpectrumCheck(value, mult, shifted_determinant(model, value))
        for value, mult in pairs
    )
    return SpectrumVerification(checks, sum(m for _, m in pairs), model.colors)


def falling(x: int, r: int) -> int:
    out = 1
    for t in range(r):
        out *= x - t
    return out


def principal_eigenvector(model: UrnModel) -> Spectrum:
    profile = model.profile
    m, k, i, n = profile.m, profile.k, profile.hook_index, profile.counts
    lam = model.lambda1
    if lam <= 0:
        raise NonInvertibleNetwork(profile)
    denom = m * profile.tau0 - 1
    y1 = [Fraction(m * (n[j] - (j == i)), denom) for j in range(k)]
    v1: list[Fraction] = []
    for r in range(m):
        ratio = Fraction(falling(m - 1, r), falling(m * profile.tau0 - 2, r))
        v1.extend(ratio * x for x in y1)

    if sum(v1) != 1 or any(x < 0 for x in v1):
        raise SpectrumDefect(f"principal eigenvector not a probability vector: {v1}")
    At = exact.transpose(model.A)
    if exact.matvec(At, v1) != [lam * x for x in v1]:
        raise SpectrumDefect("A^T v1 != lambda1 v1")
    return Spectrum(
        eigenvalues=eigenvalues(profile),
        v1=tuple(v1),
        degenerate=any(x == 0 for x in v1),
        invertible=lam != 0,
    )
