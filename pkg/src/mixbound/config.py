"""Numerical tolerances and compute budgets shared by every module."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import InputError


@dataclass(frozen=True)
class Tolerances:
    """Every tolerance used by the package, in one place.

    Pass a modified copy (``DEFAULT.with_(tol_eig=1e-8)``) to any operation
    taking a ``tol`` keyword.
    """

    row_sum: float = 1e-12
    negative_clamp: float = 1e-15
    stationary: float = 1e-10
    eig: float = 1e-9
    reversible: float = 1e-10
    link: float = 1e-9
    link_row_sum: float = 1e-9
    intertwining: float = 1e-8
    tv_stop: float = 1e-15
    # a distance within this relative margin of epsilon counts as crossing it;
    # exact ties (dyadic chains) otherwise land a few ulps above epsilon
    crossing: float = 1e-12
    # pi(S) <= 1/2 test in the Cheeger enumeration
    half_mass: float = 1e-10
    # single-linkage radius used to look for split Jordan blocks
    cluster_radius: float = 0.12
    # singular values of (P - lam I)^k below this multiple of N eps ||P - lam I||^k
    # count toward the algebraic multiplicity of lam
    defect_rank: float = 1e3

    def with_(self, **changes: float) -> "Tolerances":
        return replace(self, **changes)


DEFAULT = Tolerances()


@dataclass(frozen=True)
class Budget:
    max_states: int = 512
    max_steps: int = 1_000_000
    max_cheeger_states: int = 24


def budget_from_env(env: dict[str, str] | None = None) -> Budget:
    """Read ``MIXBOUND_BUDGET`` as ``max_states,max_steps[,max_cheeger_states]``."""
    env = os.environ if env is None else env
    raw = env.get("MIXBOUND_BUDGET")
    if not raw:
        return Budget()
    try:
        parts = [int(p) for p in raw.replace(":", ",").split(",") if p.strip()]
    except ValueError:
        raise InputError(f"MIXBOUND_BUDGET must be integers, got {raw!r}") from None
    if not 1 <= len(parts) <= 3 or any(p <= 0 for p in parts):
        raise InputError(f"MIXBOUND_BUDGET must hold 1 to 3 positive integers, got {raw!r}")
    defaults = Budget()
    fields = [defaults.max_states, defaults.max_steps, defaults.max_cheeger_states]
    fields[: len(parts)] = parts
    return Budget(*fields)
