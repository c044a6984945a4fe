"""Transition matrices, stationary distributions, spectra and reversibilizations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import (
    EigensolverFailure,
    NegativeEntry,
    NonFiniteEntry,
    NonSquare,
    NonUniqueStationary,
    RowSumViolation,
    ZeroStationaryMass,
)


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """A validated row-stochastic matrix over labelled states.

    Build instances with :func:`validate`; the ``entries`` array is read-only.
    """

    labels: tuple[str, ...]
    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __repr__(self) -> str:
        return f"TransitionMatrix(n={self.n})"


@dataclass(frozen=True, eq=False)
class StationaryDistribution:
    weights: np.ndarray

    @property
    def pi_min(self) -> float:
        return float(self.weights.min())

    def __array__(self, dtype=None, copy=None):
        return self.weights if dtype is None else self.weights.astype(dtype)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues of a transition matrix plus derived mixing quantities.

    ``eigenvalues`` is sorted by real part, then imaginary part; for
    reversible chains it is real and the last entry is the unit eigenvalue.
    ``non_ergodic`` is set when ``beta_star`` lies within ``tol.eig`` of 1.
    """

    eigenvalues: np.ndarray
    beta_star: float
    non_ergodic: bool
    real: bool
    unit_index: int = field(repr=False)

    @property
    def gap(self) -> float:
        return 1.0 - self.beta_star

    @property
    def t_rel(self) -> float:
        if self.non_ergodic or self.beta_star >= 1.0:
            return math.inf
        return 1.0 / (1.0 - self.beta_star)

    @property
    def nonunit(self) -> np.ndarray:
        """The N-1 eigenvalues left after removing one unit eigenvalue."""
        return np.delete(self.eigenvalues, self.unit_index)

    @property
    def nonnegative(self) -> bool:
        return self.real and bool(np.all(self.eigenvalues.real >= -DEFAULT.eig))


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def validate(
    matrix: Sequence[Sequence[float]] | np.ndarray,
    labels: Sequence[str] | None = None,
    tol: Tolerances = DEFAULT,
) -> TransitionMatrix:
    """Check that ``matrix`` is square and row-stochastic.

    Entries in ``[-tol.negative_clamp, 0)`` are clamped to zero; anything more
    negative raises :class:`NegativeEntry`.
    """
    if isinstance(matrix, TransitionMatrix):
        return matrix
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise NonSquare(tuple(a.shape))
    bad = np.argwhere(~np.isfinite(a))
    if bad.size:
        raise NonFiniteEntry(int(bad[0, 0]), int(bad[0, 1]))
    neg = np.argwhere(a < -tol.negative_clamp)
    if neg.size:
        r, c = (int(v) for v in neg[0])
        raise NegativeEntry(r, c, float(a[r, c]))
    a[a < 0] = 0.0
    dev = a.sum(axis=1) - 1.0
    worst = int(np.argmax(np.abs(dev)))
    if abs(dev[worst]) > tol.row_sum:
        raise RowSumViolation(worst, float(dev[worst]))
    n = a.shape[0]
    if labels is None:
        labels = [str(i) for i in range(n)]
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise NonSquare((len(labels), n))
    return TransitionMatrix(labels, _readonly(a))


def _as_array(P) -> np.ndarray:
    return P.entries if isinstance(P, TransitionMatrix) else np.asarray(P, dtype=float)


def stationary_distribution(P: TransitionMatrix, tol: Tolerances = DEFAULT) -> StationaryDistribution:
    """Solve ``pi P = pi`` through the null space of ``P^T - I``.

    Raises :class:`NonUniqueStationary` when that null space has dimension
    greater than one.
    """
    a = _as_array(P)
    n = a.shape[0]
    if n == 1:
        return StationaryDistribution(_readonly(np.ones(1)))
    _, s, vh = np.linalg.svd(a.T - np.eye(n))
    nullity = int(np.sum(s <= tol.eig))
    if nullity > 1:
        raise NonUniqueStationary(nullity)
    v = vh[-1]
    v = v / v.sum()
    v[v < 0] = 0.0
    v /= v.sum()
    return StationaryDistribution(_readonly(v))


def is_reversible(P: TransitionMatrix, pi: StationaryDistribution, tol: Tolerances = DEFAULT) -> bool:
    """Detailed balance ``pi(x) P(x,y) = pi(y) P(y,x)`` up to ``tol.reversible``.

    For chains with zero stationary mass somewhere this is only a proxy for
    membership in the closure of the reversible chains with full support.
    """
    a = _as_array(P)
    flow = np.asarray(pi)[:, None] * a
    return bool(np.max(np.abs(flow - flow.T)) < tol.reversible)


def _single_linkage(values: np.ndarray, radius: float) -> list[np.ndarray]:
    n = values.size
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    close = np.abs(values[:, None] - values[None, :]) <= radius
    for i, j in zip(*np.nonzero(np.triu(close, 1))):
        ri, rj = find(int(i)), find(int(j))
        if ri != rj:
            parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [np.array(g) for g in groups.values()]


def _algebraic_multiplicity(a: np.ndarray, lam: complex, k: int, tol: Tolerances) -> int:
    n = a.shape[0]
    b = a - lam * np.eye(n)
    m = np.linalg.matrix_power(b, k)
    s = np.linalg.svd(m, compute_uv=False)
    cutoff = tol.defect_rank * n * np.finfo(float).eps * max(np.linalg.norm(b, 2) ** k, 1e-300)
    return int(np.sum(s <= cutoff))


def _repair_defective(a: np.ndarray, ev: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Collapse eigenvalue clusters produced by rounding a Jordan block.

    A perturbed k-block scatters its eigenvalue on a circle of radius
    ~eps^(1/k) but keeps the cluster mean accurate. The mean replaces the
    cluster only when ``(P - mean I)^k`` has a k-dimensional null space.
    """
    ev = ev.astype(complex)
    for idx in _single_linkage(ev, tol.cluster_radius):
        k = idx.size
        if k < 2:
            continue
        lam = ev[idx].mean()
        if abs(lam.imag) < tol.eig:
            lam = complex(lam.real, 0.0)
        if np.max(np.abs(ev[idx] - lam)) < tol.eig:
            continue
        if _algebraic_multiplicity(a, lam, k, tol) == k:
            ev[idx] = lam
    return ev


def _sort_eigs(ev: np.ndarray) -> np.ndarray:
    return ev[np.lexsort((ev.imag, ev.real))]


def spectrum(P: TransitionMatrix, tol: Tolerances = DEFAULT, pi: StationaryDistribution | None = None) -> Spectrum:
    """Full eigenvalue multiset, absolute spectral gap and relaxation time.

    Reversible chains with full-support stationary distribution are solved
    with a symmetric eigensolver on the similar matrix ``sqrt(P * P^T)``;
    everything else goes through the dense nonsymmetric solver followed by a
    repair step for defective eigenvalues.
    """
    a = _as_array(P)
    n = a.shape[0]
    if pi is None:
        try:
            pi = stationary_distribution(P, tol)
        except NonUniqueStationary:
            pi = None
    try:
        if pi is not None and pi.pi_min > 0 and is_reversible(P, pi, tol):
            # D^{1/2} P D^{-1/2} equals sqrt(P(x,y) P(y,x)) under detailed balance
            ev = np.linalg.eigvalsh(np.sqrt(a * a.T)).astype(complex)
        else:
            ev = np.linalg.eigvals(a)
            if n > 1:
                ev = _repair_defective(a, ev, tol)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise EigensolverFailure(str(exc)) from exc
    if not np.all(np.isfinite(ev)):
        raise EigensolverFailure("eigensolver returned non-finite values")
    real = bool(np.all(np.abs(ev.imag) < tol.eig))
    if real:
        ev = ev.real.astype(complex)
    ev = _sort_eigs(ev)
    unit = int(np.argmin(np.abs(ev - 1.0)))
    rest = np.delete(ev, unit)
    beta_star = float(min(np.abs(rest).max(), 1.0)) if rest.size else 0.0
    eigenvalues = ev.real.copy() if real else ev
    return Spectrum(
        eigenvalues=_readonly(eigenvalues),
        beta_star=beta_star,
        non_ergodic=beta_star >= 1.0 - tol.eig,
        real=real,
        unit_index=unit,
    )


def time_reversal(P: TransitionMatrix, pi: StationaryDistribution) -> TransitionMatrix:
    """``P*(x, y) = pi(y) P(y, x) / pi(x)``."""
    a = _as_array(P)
    w = np.asarray(pi)
    zero = np.flatnonzero(w <= 0)
    if zero.size:
        raise ZeroStationaryMass(int(zero[0]))
    rev = a.T * w[None, :] / w[:, None]
    # rows sum to 1 up to the accuracy of pi; renormalise so the result validates
    rev /= rev.sum(axis=1, keepdims=True)
    labels = P.labels if isinstance(P, TransitionMatrix) else None
    return validate(rev, labels)


class Reversibilizations(NamedTuple):
    additive: TransitionMatrix
    multiplicative: TransitionMatrix
    alpha: float


def reversibilizations(P: TransitionMatrix, pi: StationaryDistribution) -> Reversibilizations:
    """Additive ``(P + P*)/2``, multiplicative ``P* P`` and ``alpha``.

    ``alpha`` is the square root of the second largest eigenvalue of
    ``P* P``; it is 0 for a one-state chain.
    """
    a = _as_array(P)
    star = time_reversal(P, pi).entries
    labels = P.labels if isinstance(P, TransitionMatrix) else None
    additive = (a + star) / 2.0
    mult = star @ a
    mult /= mult.sum(axis=1, keepdims=True)
    if a.shape[0] == 1:
        alpha = 0.0
    else:
        # P* P is self-adjoint in L2(pi): symmetrise with D^{1/2} . D^{-1/2}
        r = np.sqrt(np.asarray(pi))
        sym = r[:, None] * mult / r[None, :]
        ev = np.linalg.eigvalsh((sym + sym.T) / 2.0)
        alpha = math.sqrt(min(max(float(ev[-2]), 0.0), 1.0))
    return Reversibilizations(validate(additive, labels), validate(mult, labels), alpha)


def is_lazy(P: TransitionMatrix) -> bool:
    return bool(np.all(np.diag(_as_array(P)) >= 0.5))


@dataclass(frozen=True, eq=False)
class ChainAnalysis:
    """Everything the bounds need to know about one chain, computed once."""

    matrix: TransitionMatrix
    pi: StationaryDistribution | None
    spectrum: Spectrum
    reversible: bool
    lazy: bool

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def pi_min(self) -> float:
        return self.pi.pi_min if self.pi is not None else 0.0


def analyze(P: TransitionMatrix, tol: Tolerances = DEFAULT) -> ChainAnalysis:
    try:
        pi = stationary_distribution(P, tol)
    except NonUniqueStationary:
        pi = None
    sp = spectrum(P, tol, pi=pi)
    reversible = pi is not None and is_reversible(P, pi, tol)
    return ChainAnalysis(P, pi, sp, reversible, is_lazy(P))
