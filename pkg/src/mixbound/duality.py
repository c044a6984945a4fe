"""Pure-birth duals and intertwining links.

For a chain whose eigenvalues are real and nonnegative, the holding
probabilities of the dual pure-birth chain are the non-unit eigenvalues in
increasing order, and the link rows (local equilibria) come from filtering
the initial distribution one eigenvalue at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from . import kernels
from .chain import StationaryDistribution, TransitionMatrix, spectrum, stationary_distribution, validate
from .config import DEFAULT, Tolerances
from .distances import _prob_vector
from .errors import (
    BetaOutOfRange,
    DegenerateGap,
    DimensionMismatch,
    IntertwiningFailure,
    NegativeLinkEntry,
    NegativeSpectrum,
    NotSkipFree,
    NotSorted,
)
from .io import write_table


@dataclass(frozen=True)
class PureBirthChain:
    """Holds at state j with probability ``betas[j]``, otherwise steps to j+1.

    The last state is absorbing, so there are ``len(betas) + 1`` states.
    """

    betas: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.betas) + 1

    @property
    def matrix(self) -> TransitionMatrix:
        n = self.n
        q = np.zeros((n, n))
        b = np.asarray(self.betas, dtype=float)
        idx = np.arange(n - 1)
        q[idx, idx] = b
        q[idx, idx + 1] = 1.0 - b
        q[n - 1, n - 1] = 1.0
        return validate(q, labels=[str(j + 1) for j in range(n)])


def build_pure_birth(betas: Sequence[float]) -> PureBirthChain:
    b = [float(x) for x in betas]
    if any(not (0.0 <= x < 1.0) for x in b):
        raise BetaOutOfRange("holding probabilities must lie in [0, 1)")
    if any(x > y for x, y in zip(b, b[1:])):
        raise NotSorted("holding probabilities must be weakly increasing")
    return PureBirthChain(tuple(b))


@dataclass(frozen=True, eq=False)
class LinkMatrix:
    """Stochastic ``Lambda`` with ``Lambda P = Q Lambda``; row j is the local equilibrium mu_j."""

    rows: np.ndarray
    dual: PureBirthChain

    def __array__(self, dtype=None, copy=None):
        return self.rows if dtype is None else self.rows.astype(dtype)

    def to_csv(self, out: TextIO | None = None, labels: Sequence[str] | None = None) -> str:
        n = self.rows.shape[1]
        header = ["dual_state"] + list(labels or [str(i) for i in range(n)])
        body = ([j + 1] + [float(v) for v in row] for j, row in enumerate(self.rows))
        return write_table(header, body, out)


def dual_betas(P: TransitionMatrix, pi: StationaryDistribution | None = None,
               tol: Tolerances = DEFAULT) -> np.ndarray:
    """Non-unit eigenvalues of ``P`` sorted increasingly, checked to lie in [0, 1)."""
    sp = spectrum(P, tol, pi=pi)
    rest = sp.nonunit
    if not sp.real:
        raise NegativeSpectrum(f"spectrum is not real (max |imag| = {np.abs(rest.imag).max():.3g})")
    rest = np.sort(rest.real)
    if rest.size and rest[0] < -tol.eig:
        raise NegativeSpectrum(f"smallest eigenvalue {rest[0]:.6g} is negative")
    rest = np.clip(rest, 0.0, None)
    if rest.size and rest[-1] >= 1.0 - tol.eig:
        raise DegenerateGap(f"second largest eigenvalue {rest[-1]:.12g} is within tolerance of 1")
    return rest


def link_recursion(P, mu, betas) -> np.ndarray:
    """Raw rows ``mu_{j+1} = (mu_j P - beta_j mu_j) / (1 - beta_j)``, no checks."""
    a = np.asarray(P, dtype=float)
    rows = np.empty((len(betas) + 1, a.shape[0]))
    rows[0] = mu
    for j, b in enumerate(betas):
        rows[j + 1] = (rows[j] @ a - b * rows[j]) / (1.0 - b)
    return rows


def build_link(
    P: TransitionMatrix,
    pi: StationaryDistribution,
    mu,
    *,
    betas: Sequence[float] | None = None,
    tol: Tolerances = DEFAULT,
) -> LinkMatrix:
    """Link between ``P`` and its pure-birth dual with first row ``mu``.

    Entries more negative than ``tol.link`` raise :class:`NegativeLinkEntry`;
    smaller negatives are clamped and the row renormalised. The last row is
    checked against ``pi`` and then set to it.
    """
    a = P.entries if isinstance(P, TransitionMatrix) else np.asarray(P, dtype=float)
    n = a.shape[0]
    mu = _prob_vector(mu, "mu", tol.stationary)
    if mu.size != n:
        raise DimensionMismatch(f"mu has {mu.size} entries, chain has {n} states")
    b = dual_betas(P, pi, tol) if betas is None else np.asarray(betas, dtype=float)
    dual = build_pure_birth(b)
    rows = link_recursion(a, mu, dual.betas)
    w = np.asarray(pi, dtype=float)
    off = float(np.abs(rows[-1] - w).max())
    if off > tol.intertwining:
        raise IntertwiningFailure(f"last link row differs from pi by {off:.3g}")
    worst = np.unravel_index(np.argmin(rows), rows.shape)
    if rows[worst] < -tol.link:
        raise NegativeLinkEntry(int(worst[0]) + 1, int(worst[1]), float(rows[worst]))
    rows = np.clip(rows, 0.0, None)
    rows /= rows.sum(axis=1, keepdims=True)
    rows[-1] = w
    rows.setflags(write=False)
    return LinkMatrix(rows, dual)


def verify_intertwining(link: LinkMatrix | np.ndarray, P, Q) -> float:
    """``max |Lambda P - Q Lambda|``."""
    lam = np.asarray(link, dtype=float)
    a = np.asarray(P, dtype=float)
    q = np.asarray(Q.matrix if isinstance(Q, PureBirthChain) else Q, dtype=float)
    if lam.shape[1] != a.shape[0] or lam.shape[0] != q.shape[0] or q.shape[0] != q.shape[1]:
        raise DimensionMismatch(f"incompatible shapes {lam.shape}, {a.shape}, {q.shape}")
    return float(np.abs(lam @ a - q @ lam).max())


def dual_absorption_profile(Q: PureBirthChain | Sequence[float], t_max: int) -> np.ndarray:
    """``Q^t(1, N)`` for ``t = 0..t_max``."""
    betas = Q.betas if isinstance(Q, PureBirthChain) else Q
    b = np.ascontiguousarray(np.asarray(betas, dtype=float).reshape(-1))
    absorbed, _ = kernels.pure_birth_masses(b, int(t_max))
    return absorbed


@dataclass(frozen=True, eq=False)
class SharpnessReport:
    """Per-step quantities of the birth-death sharpness argument, started at state 1.

    ``identity_residual`` is ``max_t |P^t(1,N) - Q^t(1,N) pi(N)|``;
    ``violations`` counts steps at which
    ``pi(N)(1 - Q^t(1,N)) >= pi(N) TV >= pi(N)(pi(N) - P^t(1,N))``
    or ``TV <= sep <= 1 - Q^t(1,N)`` fails by more than ``slack``;
    ``worst_ratio`` is ``min_t TV / (1 - Q^t(1,N))`` and is at least ``pi(N)``.
    """

    pi_last: float
    tv: np.ndarray
    sep: np.ndarray
    tail: np.ndarray
    hit_last: np.ndarray
    identity_residual: float
    violations: int
    worst_ratio: float


def birth_death_sharpness_check(
    P: TransitionMatrix,
    t_max: int,
    pi: StationaryDistribution | None = None,
    *,
    slack: float = 1e-12,
    tol: Tolerances = DEFAULT,
) -> SharpnessReport:
    a = P.entries if isinstance(P, TransitionMatrix) else np.asarray(P, dtype=float)
    n = a.shape[0]
    if np.any(np.triu(a, 2) != 0.0):
        raise NotSkipFree("chain jumps upward by more than one state")
    pi = pi or stationary_distribution(P, tol)
    w = np.asarray(pi, dtype=float)
    start = np.zeros(n)
    start[0] = 1.0
    link = build_link(P, pi, start, tol=tol)
    _, tail = kernels.pure_birth_masses(np.asarray(link.dual.betas, dtype=float), int(t_max))
    absorbed = 1.0 - tail
    tv = np.empty(t_max + 1)
    sep = np.empty(t_max + 1)
    hit = np.empty(t_max + 1)
    row = start
    for t in range(t_max + 1):
        tv[t] = 0.5 * np.abs(row - w).sum()
        support = w > 0
        sep[t] = max(float((1.0 - row[support] / w[support]).max()), 0.0)
        hit[t] = row[-1]
        row = row @ a
    pn = float(w[-1])
    first = pn - hit
    second = pn * tail
    third = pn * tv
    fourth = pn * first
    residual = float(np.abs(hit - absorbed * pn).max())
    bad = (
        (second < third - slack)
        | (third < fourth - slack)
        | (tv > sep + slack)
        | (sep > tail + slack)
    )
    usable = tail >= 1e-9
    ratio = float((tv[usable] / tail[usable]).min()) if usable.any() else float("nan")
    return SharpnessReport(pn, tv, sep, tail, hit, residual, int(bad.sum()), ratio)
