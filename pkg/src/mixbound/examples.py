"""Parametric chains with closed-form spectra and stationary distributions.

Index conventions: the pure-birth and skip-free chains are labelled
``1..N``; the walks on a path are labelled ``0..N-1`` (N states, the
reflecting boundary at 0); hypercube states are bit strings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .chain import TransitionMatrix, validate
from .errors import BetaOutOfRange, DimensionTooLarge, NotAProbabilityTriple, NTooSmall


@dataclass(frozen=True, eq=False)
class ExampleChain:
    name: str
    matrix: TransitionMatrix
    known_spectrum: np.ndarray | None = None
    known_pi: np.ndarray | None = None
    reversible: bool | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)


def _beta(beta: float) -> float:
    if not 0.0 <= beta < 1.0:
        raise BetaOutOfRange(f"beta={beta!r} outside [0, 1)")
    return float(beta)


def _n(n: int, least: int = 1) -> int:
    if int(n) != n or n < least:
        raise NTooSmall(f"N must be an integer >= {least}, got {n!r}")
    return int(n)


def pure_birth(n: int, beta: float) -> ExampleChain:
    """Hold with probability ``beta``, else advance; state N absorbs."""
    n, beta = _n(n), _beta(beta)
    p = np.zeros((n, n))
    idx = np.arange(n - 1)
    p[idx, idx] = beta
    p[idx, idx + 1] = 1.0 - beta
    p[n - 1, n - 1] = 1.0
    pi = np.zeros(n)
    pi[-1] = 1.0
    return ExampleChain(
        "pure-birth",
        validate(p, [str(i + 1) for i in range(n)]),
        known_spectrum=np.array([beta] * (n - 1) + [1.0]),
        known_pi=pi,
        reversible=True,
        notes=("beta is a single eigenvalue with a Jordan block of size N-1", "pi_min = 0"),
    )


def biased_walk(n: int, p: float, q: float, r: float, *, tol: float = 1e-12) -> ExampleChain:
    """Nearest-neighbour walk: left ``p``, stay ``q``, right ``r``, holding at the ends."""
    n = _n(n)
    if min(p, q, r) < 0 or abs(p + q + r - 1.0) > tol:
        raise NotAProbabilityTriple(f"(p, q, r) = ({p}, {q}, {r}) is not a probability triple")
    a = np.zeros((n, n))
    for i in range(n):
        a[i, i] += q
        a[i, max(i - 1, 0)] += p
        a[i, min(i + 1, n - 1)] += r
    notes = []
    if r <= p:
        notes.append("r <= p: drift is not toward the right end")
    pi = np.zeros(n)
    if p == 0.0:
        pi[-1] = 1.0
    elif r == 0.0:
        pi[0] = 1.0
    else:
        # (r/p)^i normalised, in logs so large ratios do not overflow
        logs = np.arange(n) * math.log(r / p)
        w = np.exp(logs - logs.max())
        pi = w / w.sum()
    ev = q + 2.0 * math.sqrt(p * r) * np.cos(np.arange(1, n) * math.pi / n)
    return ExampleChain(
        "biased-walk",
        validate(a),
        known_spectrum=np.sort(np.append(ev, 1.0)),
        known_pi=pi,
        reversible=True,
        notes=tuple(notes),
    )


def sticky_walk(n: int) -> ExampleChain:
    """Lazy walk on a path whose right end leaves only with probability 1/(4(N-1))."""
    n = _n(n, 2)
    a = np.zeros((n, n))
    for i in range(n - 1):
        a[i, max(i - 1, 0)] += 0.25
        a[i, i] += 0.5
        a[i, i + 1] += 0.25
    leave = 1.0 / (4.0 * (n - 1))
    a[n - 1, n - 2] = leave
    a[n - 1, n - 1] = 1.0 - leave
    pi = np.full(n, 1.0 / (2.0 * (n - 1)))
    pi[-1] = 0.5
    return ExampleChain(
        "sticky-walk",
        validate(a),
        known_pi=pi,
        reversible=True,
        notes=("relaxation and mixing times both grow like N^2",),
    )


def skip_free(n: int, beta: float = 0.0) -> ExampleChain:
    """Nonreversible chain with uniform stationary law and a nilpotent non-unit part.

    From ``i < N`` jump to each ``j <= i`` with probability ``1/(i(i+1))`` or
    step up with probability ``i/(i+1)``; from N go anywhere uniformly. With
    ``beta > 0`` the lazy version ``beta I + (1 - beta) P`` is returned.
    """
    n, beta = _n(n), _beta(beta)
    a = np.zeros((n, n))
    for i in range(1, n):
        a[i - 1, :i] = 1.0 / (i * (i + 1))
        a[i - 1, i] = i / (i + 1)
    a[n - 1, :] = 1.0 / n
    a = beta * np.eye(n) + (1.0 - beta) * a
    return ExampleChain(
        "skip-free",
        validate(a, [str(i + 1) for i in range(n)]),
        known_spectrum=np.array([beta] * (n - 1) + [1.0]),
        known_pi=np.full(n, 1.0 / n),
        reversible=n <= 1,
        notes=("beta is a single eigenvalue with a Jordan block of size N-1",),
    )


MAX_HYPERCUBE_DIM = 12


def hypercube(n: int) -> ExampleChain:
    """Lazy walk on ``{0,1}^n``: hold 1/2, else flip a uniform coordinate."""
    n = _n(n)
    if n > MAX_HYPERCUBE_DIM:
        raise DimensionTooLarge(f"n={n} gives a {2**n}-state dense matrix; limit is n={MAX_HYPERCUBE_DIM}")
    size = 1 << n
    a = np.zeros((size, size))
    states = np.arange(size)
    a[states, states] = 0.5
    for k in range(n):
        a[states, states ^ (1 << k)] = 1.0 / (2 * n)
    labels = ["".join(bits) for bits in product("01", repeat=n)]
    ev = np.sort(np.concatenate([np.full(math.comb(n, k), 1.0 - k / n) for k in range(n + 1)]))
    return ExampleChain(
        "hypercube",
        validate(a, labels),
        known_spectrum=ev,
        known_pi=np.full(size, 1.0 / size),
        reversible=True,
        notes=("absolute spectral gap 1/n",),
    )


def cyclic_walk(n: int = 3) -> ExampleChain:
    """Deterministic rotation ``i -> i+1 mod n``; never converges for ``n >= 2``."""
    n = _n(n)
    a = np.roll(np.eye(n), 1, axis=1)
    return ExampleChain(
        "cyclic",
        validate(a),
        known_spectrum=np.exp(2j * np.pi * np.arange(n) / n),
        known_pi=np.full(n, 1.0 / n),
        reversible=n <= 2,
    )


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def random_chain(n: int, rng: np.random.Generator, density: float = 1.0) -> TransitionMatrix:
    """Rows drawn uniformly from the simplex, with entries kept with probability ``density``."""
    a = rng.exponential(size=(n, n))
    if density < 1.0:
        a *= rng.random((n, n)) < density
        a[np.arange(n), rng.integers(0, n, size=n)] += rng.exponential(size=n)
    return validate(a / a.sum(axis=1, keepdims=True))


def random_lazy_reversible(n: int, rng: np.random.Generator, density: float = 1.0) -> TransitionMatrix:
    """``(I + D^-1 A)/2`` for a random symmetric weight matrix ``A``.

    Reversible with respect to ``pi`` proportional to the row sums of ``A``,
    and lazy, so its spectrum lies in [0, 1].
    """
    w = rng.exponential(size=(n, n))
    if density < 1.0:
        w *= rng.random((n, n)) < density
    w = np.triu(w) + np.triu(w, 1).T
    # a path keeps the weight graph connected
    idx = np.arange(n - 1)
    w[idx, idx + 1] += 0.1
    w[idx + 1, idx] += 0.1
    walk = w / w.sum(axis=1, keepdims=True)
    return validate((np.eye(n) + walk) / 2.0)


GENERATORS = {
    "pure-birth": pure_birth,
    "biased-walk": biased_walk,
    "sticky-walk": sticky_walk,
    "skip-free": skip_free,
    "hypercube": hypercube,
    "cyclic": cyclic_walk,
}
