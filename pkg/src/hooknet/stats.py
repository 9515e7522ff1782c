"""Monte-Carlo replicates of network growth compared against the exact laws."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, field

import numpy as np

from .laws import DegreeLawReport
from .seed import DegreeProfile, admissible_degrees
from .simulate import RNG_ALGORITHM, run_batch

# upper bound on replicates advanced in lockstep by one worker task
BLOCK = 4000
MIN_REPLICATES = 30


class ReplicateAborted(RuntimeError):
    def __init__(self, completed: int, requested: int, cause: BaseException):
        super().__init__(
            f"replicate run aborted after {completed} of {requested} replicates: {cause!r}"
        )
        self.completed = completed
        self.requested = requested


@dataclass(frozen=True)
class TolerancePolicy:
    mean_tol: float = 0.02
    cov_tol: float = 0.10

    def describe(self) -> str:
        return (
            f"mean: max |mean(D_n/n) - D*| <= {self.mean_tol} absolute; "
            f"covariance of (D_n - n D*)/sqrt(n): Frobenius relative <= {self.cov_tol}, "
            f"entries in all-zero theory rows/cols <= {self.cov_tol} * max|Sigma| absolute"
        )


@dataclass
class RunStats:
    profile: DegreeProfile
    n: int
    R: int
    rng_seed: int
    empirical_mean: np.ndarray
    empirical_cov: np.ndarray
    plain_mean: np.ndarray
    plain_cov: np.ndarray
    warnings: list[str] = field(default_factory=list)
    rng_algorithm: str = RNG_ALGORITHM

    @classmethod
    def from_samples(cls, profile: DegreeProfile, n: int, D: np.ndarray, rng_seed: int = 0) -> RunStats:
        """Estimators from an ``(R, labels)`` array of final degree counts."""
        D = np.asarray(D, dtype=np.float64)
        R = D.shape[0]
        if R < 2:
            raise ValueError("at least 2 replicates are needed for a covariance estimate")
        M = np.asarray(admissible_degrees(profile).aggregation_matrix(), dtype=np.float64)
        P = D @ M.T
        warnings = []
        if R < MIN_REPLICATES:
            warnings.append(f"insufficient replicates: R={R} < {MIN_REPLICATES}")
        # the n*D* shift does not change a sample covariance; dividing by n
        # after centering keeps identical rows at exactly zero
        scale = n if n else 1
        return cls(
            profile=profile,
            n=n,
            R=R,
            rng_seed=rng_seed,
            empirical_mean=D.mean(axis=0) / scale,
            empirical_cov=np.atleast_2d(np.cov(D, rowvar=False, ddof=1)) / scale,
            plain_mean=P.mean(axis=0) / scale,
            plain_cov=np.atleast_2d(np.cov(P, rowvar=False, ddof=1)) / scale,
            warnings=warnings,
        )


def _batch(args):
    profile, n, seed, start, stop = args
    return run_batch(profile, n, seed, range(start, stop))


def replicate(profile: DegreeProfile, n: int, R: int, base_seed: int, jobs: int = 1) -> RunStats:
    """``R`` independent runs of ``n`` steps; replicate ``r`` uses stream ``r``.

    The result does not depend on ``jobs``: each replicate's stream is fixed
    by ``(base_seed, r)`` and rows are reduced in replicate order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if R < 2:
        raise ValueError("R must be >= 2")
    parts_wanted = max(jobs, math.ceil(R / BLOCK))
    size = math.ceil(R / parts_wanted)
    tasks = [(profile, n, base_seed, a, min(a + size, R)) for a in range(0, R, size)]
    parts: list[np.ndarray] = []
    try:
        if jobs <= 1:
            for t in tasks:
                parts.append(_batch(t))
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for part in pool.map(_batch, tasks):
                    parts.append(part)
    except (MemoryError, BrokenProcessPool) as exc:
        raise ReplicateAborted(sum(len(p) for p in parts), R, exc) from exc
    return RunStats.from_samples(profile, n, np.vstack(parts), base_seed)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class EntryDeviation:
    level: str
    row: str
    col: str
    theory: float
    empirical: float
    structural_zero: bool

    @property
    def abs_dev(self) -> float:
        return abs(self.empirical - self.theory)

    @property
    def rel_dev(self) -> float | None:
        return self.abs_dev / abs(self.theory) if self.theory else None


@dataclass
class Verdict:
    passed: bool
    checks: list[Check]
    entries: list[EntryDeviation]
    warnings: list[str]
    policy: TolerancePolicy
    notes: list[str] = field(default_factory=list)


def _vec(v) -> np.ndarray:
    return np.array([float(x) for x in v])


def _mat(a) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in a])


def _cov_check(emp: np.ndarray, theory: np.ndarray, tol: float) -> tuple[float, float, np.ndarray]:
    zero_lines = np.all(theory == 0, axis=1)
    structural = zero_lines[:, None] | zero_lines[None, :]
    live = ~structural
    denom = np.linalg.norm(theory[live])
    rel = np.linalg.norm((emp - theory)[live]) / denom if denom else float(np.linalg.norm(emp[live]))
    scale = np.abs(theory).max()
    absdev = float(np.abs(emp[structural]).max()) / scale if structural.any() and scale else 0.0
    return float(rel), absdev, structural


def compare_theory(stats: RunStats, report: DegreeLawReport, policy: TolerancePolicy | None = None) -> Verdict:
    """Check simulated means and covariances against the exact degree laws."""
    policy = policy or TolerancePolicy()
    if stats.profile != report.profile:
        raise ValueError("run statistics and law report are for different profiles")
    ledger = report.ledger
    labels = [ledger.describe(lab) for lab in ledger.history_labels]
    plain_labels = [f"deg {d}" for d in ledger.plain_degrees]
    if stats.empirical_mean.shape != (len(labels),) or stats.plain_mean.shape != (len(plain_labels),):
        raise ValueError("dimension mismatch between run statistics and law report")

    checks: list[Check] = []
    entries: list[EntryDeviation] = []
    levels = (
        ("resolved", labels, stats.empirical_mean, stats.empirical_cov, report.D_star, report.Sigma_D),
        ("plain", plain_labels, stats.plain_mean, stats.plain_cov, report.plain_D_star, report.plain_Sigma),
    )
    for level, names, mean, cov, d_star, sigma in levels:
        d_star = _vec(d_star)
        sigma = _mat(sigma)
        mean_dev = float(np.abs(mean - d_star).max())
        checks.append(Check(f"{level} mean", mean_dev, policy.mean_tol, mean_dev <= policy.mean_tol))
        rel, absdev, structural = _cov_check(cov, sigma, policy.cov_tol)
        checks.append(Check(f"{level} covariance (Frobenius rel.)", rel, policy.cov_tol, rel <= policy.cov_tol))
        if structural.any():
            checks.append(
                Check(f"{level} covariance zero rows (abs./max)", absdev, policy.cov_tol, bool(absdev <= policy.cov_tol))
            )
        for a, ra in enumerate(names):
            entries.append(EntryDeviation(level, ra, "mean", float(d_star[a]), float(mean[a]), False))
        for a, ra in enumerate(names):
            for b in range(a, len(names)):
                entries.append(
                    EntryDeviation(level, ra, names[b], float(sigma[a, b]), float(cov[a, b]), bool(structural[a, b]))
                )
    notes = []
    if report.degenerate:
        notes.append("degenerate network: limiting covariance cross-validated by simulation only")
    return Verdict(
        passed=all(c.passed for c in checks),
        checks=checks,
        entries=entries,
        warnings=list(stats.warnings),
        policy=policy,
        notes=notes,
    )


def stats_from_theory(report: DegreeLawReport, n: int = 1, R: int = MIN_REPLICATES) -> RunStats:
    """RunStats whose estimates equal the exact laws (for self-comparison)."""
    return RunStats(
        profile=report.profile,
        n=n,
        R=R,
        rng_seed=0,
        empirical_mean=_vec(report.D_star),
        empirical_cov=_mat(report.Sigma_D),
        plain_mean=_vec(report.plain_D_star),
        plain_cov=_mat(report.plain_Sigma),
    )
