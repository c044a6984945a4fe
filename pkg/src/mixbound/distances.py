"""Total variation and separation distances, distance profiles, exact mixing times."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Literal, NamedTuple, TextIO

import numpy as np

from . import kernels
from .chain import StationaryDistribution, TransitionMatrix
from .config import DEFAULT, Budget, Tolerances, budget_from_env
from .errors import BudgetExceeded, DimensionMismatch, HorizonTooShort, NotAProbabilityVector
from .io import write_table


def _prob_vector(v, name: str, tol: float) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.ndim != 1:
        raise NotAProbabilityVector(f"{name} must be one-dimensional")
    if np.any(a < -tol) or abs(a.sum() - 1.0) > tol:
        raise NotAProbabilityVector(f"{name} is not a probability vector")
    return a


def tv_distance(mu, nu, tol: Tolerances = DEFAULT) -> float:
    """Half the L1 distance between two probability vectors."""
    mu = _prob_vector(mu, "mu", tol.stationary)
    nu = _prob_vector(nu, "nu", tol.stationary)
    if mu.shape != nu.shape:
        raise DimensionMismatch(f"lengths differ: {mu.size} vs {nu.size}")
    return min(0.5 * float(np.abs(mu - nu).sum()), 1.0)


def sep_distance(mu, pi, tol: Tolerances = DEFAULT) -> float:
    """``max_x 1 - mu(x)/pi(x)``.

    States with ``pi(x) = 0`` contribute ``1 - mu(x)/0 = -inf`` (or the
    undefined ``0/0``) and are left out of the maximum.
    """
    mu = np.asarray(mu, dtype=float)
    pi = _prob_vector(pi, "pi", tol.stationary)
    if mu.shape != pi.shape:
        raise DimensionMismatch(f"lengths differ: {mu.size} vs {pi.size}")
    support = pi > 0
    return min(max(float((1.0 - mu[support] / pi[support]).max()), 0.0), 1.0)


@dataclass(frozen=True, eq=False)
class DistanceProfile:
    """Worst-start distances ``tv[t]`` and ``sep[t]`` for ``t = 0..horizon``.

    ``complete`` is False when powering stopped early because the total
    variation had already dropped below the stop threshold; every later value
    is then below that threshold too.
    """

    tv: np.ndarray
    sep: np.ndarray
    requested: int
    complete: bool

    @property
    def horizon(self) -> int:
        return self.tv.size - 1

    def to_csv(self, out: TextIO | None = None) -> str:
        rows = ((t, float(a), float(b)) for t, (a, b) in enumerate(zip(self.tv, self.sep)))
        return write_table(("t", "tv", "sep"), rows, out)


def _check_budget(n: int, t_max: int, budget: Budget | None) -> None:
    budget = budget or budget_from_env()
    if n > budget.max_states:
        raise BudgetExceeded(f"N={n} exceeds the state budget {budget.max_states}")
    if t_max > budget.max_steps:
        raise BudgetExceeded(f"t_max={t_max} exceeds the step budget {budget.max_steps}")


def distance_profile(
    P: TransitionMatrix,
    pi: StationaryDistribution,
    t_max: int,
    *,
    starts=None,
    stop_below: float | None = None,
    tol: Tolerances = DEFAULT,
    budget: Budget | None = None,
) -> DistanceProfile:
    """Power ``P`` step by step recording worst-start TV and separation.

    ``starts`` restricts the rows (initial distributions) being tracked; by
    default all point masses are used. Powering stops once both distances are
    below ``tol.tv_stop``, or once TV is below ``stop_below`` when given.
    """
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    a = P.entries if isinstance(P, TransitionMatrix) else np.asarray(P, dtype=float)
    n = a.shape[0]
    _check_budget(n, t_max, budget)
    w = np.ascontiguousarray(np.asarray(pi, dtype=float))
    M = np.eye(n) if starts is None else np.atleast_2d(np.asarray(starts, dtype=float)).copy()
    if M.shape[1] != n:
        raise DimensionMismatch(f"start distributions have {M.shape[1]} states, chain has {n}")
    tv = np.empty(t_max + 1)
    sep = np.empty(t_max + 1)
    last = t_max
    for t in range(t_max + 1):
        tv[t], sep[t] = kernels.worst_tv_sep(M, w)
        if (tv[t] < tol.tv_stop and sep[t] < tol.tv_stop) or (stop_below is not None and tv[t] <= stop_below * (1.0 + tol.crossing)):
            last = t
            break
        if t < t_max:
            M = M @ a
    return DistanceProfile(tv[: last + 1].copy(), sep[: last + 1].copy(), t_max, last == t_max)


class MixingTime(NamedTuple):
    time: int
    stable: bool  # the condition also holds at every later recorded t


def exact_mixing_time(
    profile: DistanceProfile,
    epsilon: float,
    kind: Literal["tv", "sep"] = "tv",
    tol: Tolerances = DEFAULT,
) -> MixingTime:
    """First ``t`` with profile value at most ``epsilon``.

    Values within a relative ``tol.crossing`` of ``epsilon`` count as hits so
    that exact ties are not lost to rounding in the matrix powers.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    values = profile.tv if kind == "tv" else profile.sep
    epsilon = epsilon * (1.0 + tol.crossing)
    hits = np.flatnonzero(values <= epsilon)
    if hits.size == 0:
        raise HorizonTooShort(f"{kind} distance still {values[-1]:.3g} > {epsilon} at t={profile.horizon}")
    t = int(hits[0])
    return MixingTime(t, bool(np.all(values[t:] <= epsilon)))


def mixing_time(P: TransitionMatrix, pi: StationaryDistribution, epsilon: float, t_max: int = 100_000, **kw) -> int:
    """Convenience wrapper: exact worst-start TV mixing time, powering only as far as needed."""
    prof = distance_profile(P, pi, t_max, stop_below=epsilon, **kw)
    return exact_mixing_time(prof, epsilon, tol=kw.get("tol", DEFAULT)).time


def write_profile(profile: DistanceProfile, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        profile.to_csv(fh)
