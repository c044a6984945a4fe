"""Closed-form mixing-time bounds and the quantities they are built from.

All logarithms are natural. Each function evaluates one formula literally;
:func:`evaluate_bounds` collects them for a concrete chain, recording which
hypotheses hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence, TextIO

import numpy as np

from . import kernels
from .chain import ChainAnalysis, StationaryDistribution, TransitionMatrix, analyze, reversibilizations
from .config import DEFAULT, Budget, Tolerances, budget_from_env
from .errors import (
    AlphaOne,
    BetaOutOfRange,
    DeltaNegative,
    EpsilonOutOfRange,
    InfiniteRelaxation,
    MixboundError,
    StateSpaceTooLarge,
    TimeTooSmall,
    ZeroPhi,
    ZeroPiMin,
)
from .io import write_table


def _check_eps(epsilon: float, upper: float = 1.0) -> None:
    if not 0.0 < epsilon < upper:
        raise EpsilonOutOfRange(epsilon, f"(0, {upper:g})")


def _log_inv(x: float) -> float:
    return -math.log(x)


# ---------------------------------------------------------------------------
# spectral bounds
# ---------------------------------------------------------------------------


def l2_lower_bound(t_rel: float, epsilon: float) -> float:
    """``log(1/(2 eps)) (t_rel - 1)``; needs ``0 < eps < 1/2``."""
    _check_eps(epsilon, 0.5)
    if math.isinf(t_rel):
        return math.inf
    return _log_inv(2.0 * epsilon) * (t_rel - 1.0)


def l2_upper_bound(t_rel: float, pi_min: float, epsilon: float) -> float:
    """``ceil((log(1/pi_min)/2 + log(1/(2 eps))) t_rel)`` for reversible chains."""
    _check_eps(epsilon, 0.5)
    if pi_min <= 0.0:
        raise ZeroPiMin()
    if math.isinf(t_rel):
        raise InfiniteRelaxation()
    return float(math.ceil((0.5 * _log_inv(pi_min) + _log_inv(2.0 * epsilon)) * t_rel))


def main_upper_bound(n: int, t_rel: float, epsilon: float) -> float:
    """Bound valid for every chain: ``2N t log t + 4(1+log 2) N t + 2(log(1/eps) - 1) t``."""
    _check_eps(epsilon)
    if math.isinf(t_rel):
        raise InfiniteRelaxation()
    return (
        2.0 * n * t_rel * math.log(t_rel)
        + 4.0 * (1.0 + math.log(2.0)) * n * t_rel
        + 2.0 * (_log_inv(epsilon) - 1.0) * t_rel
    )


def main_bound_threshold(n: int, t_rel: float, epsilon: float) -> float:
    """The time ``t_*`` reached by the general bound, in its proof's arrangement."""
    return 2.0 * t_rel * (_log_inv(epsilon) - 1.0 + 2.0 * (1.0 + math.log(2.0)) * n + n * math.log(t_rel))


def rev_sharpen_upper_bound(n: int, t_rel: float, epsilon: float, nonneg_spectrum: bool) -> float:
    """Reversible-chain bound ``c (N + 2L - 1 + sqrt(2 (N-2) L)) t_rel``, ``L = log(1/eps)``.

    ``c`` is 1 with a nonnegative spectrum and 2 otherwise; ``N - 2`` is
    floored at zero under the root.
    """
    _check_eps(epsilon)
    if math.isinf(t_rel):
        raise InfiniteRelaxation()
    L = _log_inv(epsilon)
    core = (n + 2.0 * L - 1.0 + math.sqrt(2.0 * max(n - 2, 0) * L)) * t_rel
    return core if nonneg_spectrum else 2.0 * core


class TVBound(NamedTuple):
    value: float  # min(raw, 1)
    raw: float
    log_raw: float  # natural log of raw; stays finite where raw under- or overflows


def _log_comb(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def tv_bound_at_time(n: int, beta_star: float, t: int) -> TVBound:
    """Worst-start TV bound from companion-matrix coefficients at time ``t >= N-1``.

    Evaluates ``(N-1) C(t, N-1) sum_k C(N-2, k) b^(t-k) / (t-k)`` in the log
    domain.
    """
    if t < n - 1:
        raise TimeTooSmall(f"t={t} < N-1={n - 1}")
    if not 0.0 <= beta_star < 1.0:
        raise BetaOutOfRange(f"beta_star={beta_star!r} outside [0, 1)")
    if n < 2 or beta_star == 0.0:
        return TVBound(0.0, 0.0, -math.inf)
    lb = math.log(beta_star)
    head = math.log(n - 1) + _log_comb(t, n - 1)
    logs = np.array([
        head + _log_comb(n - 2, k) + (t - k) * lb - math.log(t - k) for k in range(n - 1)
    ])
    top = logs.max()
    log_raw = float(top + math.log(np.exp(logs - top).sum()))
    raw = math.exp(log_raw) if log_raw < 709.0 else math.inf
    return TVBound(min(raw, 1.0), raw, log_raw)


def _log_tv_bound_block(n: int, log_beta: float, t: np.ndarray) -> np.ndarray:
    """Vectorized ``log`` of the raw bound over an array of times ``t >= N-1``."""
    lgamma = np.frompyfunc(math.lgamma, 1, 1)
    tf = t.astype(float)
    head = math.log(n - 1) + (lgamma(tf + 1) - lgamma(tf - n + 2)).astype(float) - math.lgamma(n)
    logs = np.empty((n - 1, t.size))
    for k in range(n - 1):
        logs[k] = _log_comb(n - 2, k) + (tf - k) * log_beta - np.log(tf - k)
    top = logs.max(axis=0)
    return head + top + np.log(np.exp(logs - top).sum(axis=0))


def tv_bound_crossing(n: int, beta_star: float, epsilon: float, t_limit: int | None = None) -> int:
    """First ``t >= N-1`` at which :func:`tv_bound_at_time` is at most ``epsilon``.

    Times are screened in doubling blocks with a vectorized evaluation; the
    answer is confirmed with :func:`tv_bound_at_time` itself.
    """
    _check_eps(epsilon)
    if n < 2:
        return 0
    if beta_star >= 1.0:
        raise InfiniteRelaxation()
    if beta_star == 0.0:
        return n - 1
    if t_limit is None:
        t_rel = 1.0 / (1.0 - beta_star)
        t_limit = int(math.floor(main_upper_bound(n, t_rel, epsilon))) + 2
    log_eps = math.log(epsilon)
    lb = math.log(beta_star)
    lo, size = n - 1, 256
    while lo <= t_limit:
        hi = min(lo + size, t_limit + 1)
        t = np.arange(lo, hi)
        hits = np.flatnonzero(_log_tv_bound_block(n, lb, t) <= log_eps + 1e-9)
        for cand in t[hits]:
            # the screen is slightly generous; the scalar evaluation decides
            if tv_bound_at_time(n, beta_star, int(cand)).raw <= epsilon:
                return int(cand)
        lo, size = hi, size * 2
    raise TimeTooSmall(f"bound does not reach {epsilon} by t={t_limit}")


# ---------------------------------------------------------------------------
# strong stationary times
# ---------------------------------------------------------------------------


def _betas(betas: Sequence[float]) -> np.ndarray:
    b = np.ascontiguousarray(np.asarray(betas, dtype=float).reshape(-1))
    if np.any(~np.isfinite(b)) or np.any(b < 0.0) or np.any(b >= 1.0):
        raise BetaOutOfRange("every holding probability must lie in [0, 1)")
    return b


def sst_tail_profile(betas: Sequence[float], t_max: int) -> np.ndarray:
    """``P(tau_1 + ... + tau_{N-1} > t)`` for ``t = 0..t_max``.

    The tail is accumulated as the mass not yet absorbed by the pure-birth
    chain, which keeps full relative accuracy when it is tiny.
    """
    _, pending = kernels.pure_birth_masses(_betas(betas), int(t_max))
    return pending


def sst_tail(betas: Sequence[float], t: int) -> float:
    """Tail of a sum of independent geometrics with means ``1/(1 - beta_j)``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return float(sst_tail_profile(betas, t)[t])


def sst_crossing(betas: Sequence[float], epsilon: float, t_limit: int = 10_000_000) -> int:
    """First ``t`` with ``sst_tail(betas, t) <= epsilon``."""
    _check_eps(epsilon)
    b = _betas(betas)
    horizon = max(16, 2 * b.size)
    while True:
        tail = sst_tail_profile(b, horizon)
        hits = np.flatnonzero(tail <= epsilon)
        if hits.size:
            return int(hits[0])
        if horizon >= t_limit:
            raise TimeTooSmall(f"tail above {epsilon} through t={t_limit}")
        horizon = min(2 * horizon, t_limit)


def chernoff_negative_binomial_bound(n: int, gap: float, t: int) -> float:
    """``exp(-delta^2 mu / 2)`` with ``mu = gap t`` and ``(1 - delta) mu = N - 2``."""
    mu = gap * t
    if mu < n - 2:
        raise DeltaNegative(f"gap*t={mu:.6g} < N-2={n - 2}")
    if mu == 0.0:
        return 1.0
    delta = 1.0 - (n - 2) / mu
    return math.exp(-delta * delta * mu / 2.0)


# ---------------------------------------------------------------------------
# conductance
# ---------------------------------------------------------------------------


class CheegerResult(NamedTuple):
    phi: float
    subset: tuple[int, ...]


def cheeger_minimizer(
    P: TransitionMatrix,
    pi: StationaryDistribution,
    tol: Tolerances = DEFAULT,
    budget: Budget | None = None,
) -> CheegerResult:
    """Exhaustive search over all state subsets with ``0 < pi(S) <= 1/2``."""
    a = P.entries if isinstance(P, TransitionMatrix) else np.asarray(P, dtype=float)
    n = a.shape[0]
    limit = (budget or budget_from_env()).max_cheeger_states
    if n > limit:
        raise StateSpaceTooLarge(f"N={n} exceeds the exhaustive-search limit {limit}")
    w = np.ascontiguousarray(np.asarray(pi, dtype=float))
    if n < 2:
        return CheegerResult(math.inf, ())
    flows = np.ascontiguousarray(w[:, None] * a)
    phi, mask = kernels.cheeger_search(flows, w, tol.half_mass)
    subset = tuple(i for i in range(n) if (int(mask) >> i) & 1) if mask >= 0 else ()
    return CheegerResult(float(phi), subset)


def cheeger_constant(P: TransitionMatrix, pi: StationaryDistribution, tol: Tolerances = DEFAULT,
                     budget: Budget | None = None) -> float:
    return cheeger_minimizer(P, pi, tol, budget).phi


def cheeger_lazy_upper_bound(phi: float, pi_min: float, epsilon: float) -> float:
    """``ceil((2/phi^2) log(1/(eps pi_min)))`` for lazy chains."""
    _check_eps(epsilon)
    if phi <= 0.0:
        raise ZeroPhi()
    if pi_min <= 0.0:
        raise ZeroPiMin()
    return float(max(math.ceil(2.0 / phi**2 * _log_inv(epsilon * pi_min)), 0))


def multiplicative_upper_bound(alpha: float, pi_min: float, epsilon: float, tol: Tolerances = DEFAULT) -> float:
    """``ceil(log(1/(2 eps sqrt(pi_min))) / (1 - alpha))``."""
    _check_eps(epsilon, 0.5)
    if alpha >= 1.0 - tol.eig:
        raise AlphaOne()
    if pi_min <= 0.0:
        raise ZeroPiMin()
    return float(max(math.ceil(_log_inv(2.0 * epsilon * math.sqrt(pi_min)) / (1.0 - alpha)), 0))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    name: str
    epsilon: float
    value: float
    kind: str = "upper"
    failed: tuple[str, ...] = field(default_factory=tuple)

    @property
    def hypotheses_met(self) -> bool:
        return not self.failed

    def row(self) -> tuple:
        return (self.name, self.epsilon, self.value, self.hypotheses_met)


BOUND_NAMES = (
    "l2_lower",
    "l2_upper",
    "main",
    "rev_sharpen",
    "tv_bound_crossing",
    "sst_tail_crossing",
    "cheeger_lazy",
    "multiplicative",
)


def _attempt(fn, *args) -> tuple[float, tuple[str, ...]]:
    try:
        return fn(*args), ()
    except MixboundError as exc:
        return math.inf, (type(exc).__name__,)


def evaluate_bounds(
    chain: TransitionMatrix | ChainAnalysis,
    epsilons: Iterable[float],
    tol: Tolerances = DEFAULT,
    budget: Budget | None = None,
) -> list[BoundReport]:
    """Every bound of :data:`BOUND_NAMES` at every ``epsilon``.

    Bounds whose hypotheses fail are still listed, with the failures named
    in ``failed``; when the formula itself cannot be evaluated the value is
    ``inf``.
    """
    info = chain if isinstance(chain, ChainAnalysis) else analyze(chain, tol)
    n, sp = info.n, info.spectrum
    t_rel, pi_min = sp.t_rel, info.pi_min
    real_rev = info.reversible and sp.real
    nonneg = sp.nonnegative
    ergodic = ["beta_star < 1"] if math.isinf(t_rel) else []

    phi, phi_fail = math.nan, ()
    if info.lazy and info.pi is not None:
        try:
            phi = cheeger_constant(info.matrix, info.pi, tol, budget)
        except MixboundError as exc:
            phi_fail = (type(exc).__name__,)
    alpha, alpha_fail = math.nan, ()
    if info.pi is not None and pi_min > 0:
        alpha = reversibilizations(info.matrix, info.pi).alpha
    else:
        alpha_fail = ("pi_min > 0",)

    reports: list[BoundReport] = []
    for eps in epsilons:
        def add(name, kind, fn, args, hyp):
            value, err = _attempt(fn, *args)
            failed = tuple(dict.fromkeys(list(hyp) + list(err)))
            reports.append(BoundReport(name, eps, value, kind, failed))

        add("l2_lower", "lower", l2_lower_bound, (t_rel, eps), ergodic)
        add("l2_upper", "upper", l2_upper_bound, (t_rel, pi_min, eps),
            ergodic + ([] if info.reversible else ["reversible"]) + ([] if pi_min > 0 else ["pi_min > 0"]))
        add("main", "upper", main_upper_bound, (n, t_rel, eps), ergodic)
        add("rev_sharpen", "upper", rev_sharpen_upper_bound, (n, t_rel, eps, nonneg),
            ergodic + ([] if real_rev else ["reversible"]))
        add("tv_bound_crossing", "upper", tv_bound_crossing, (n, sp.beta_star, eps), ergodic)
        betas = np.clip(sp.nonunit.real, 0.0, None) if nonneg else np.array([np.nan])
        add("sst_tail_crossing", "upper", sst_crossing, (betas, eps),
            ergodic + ([] if real_rev else ["reversible"]) + ([] if nonneg else ["nonnegative spectrum"]))
        lazy_hyp = ([] if info.lazy else ["lazy"]) + list(phi_fail) + ([] if pi_min > 0 else ["pi_min > 0"])
        if info.lazy and not phi_fail:
            add("cheeger_lazy", "upper", cheeger_lazy_upper_bound, (phi, pi_min, eps), lazy_hyp)
        else:
            reports.append(BoundReport("cheeger_lazy", eps, math.inf, "upper", tuple(lazy_hyp)))
        if alpha_fail:
            reports.append(BoundReport("multiplicative", eps, math.inf, "upper", alpha_fail))
        else:
            add("multiplicative", "upper", multiplicative_upper_bound, (alpha, pi_min, eps, tol), [])
    return reports


def reports_to_csv(reports: Iterable[BoundReport], out: TextIO | None = None) -> str:
    return write_table(("name", "epsilon", "value", "applicable"), (r.row() for r in reports), out)
