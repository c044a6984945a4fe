"""Companion matrices, hook Schur polynomials and semistandard tableaux.

Entries of powers of a companion matrix are signed hook Schur polynomials
in the roots of its polynomial. Hooks are evaluated from the elementary
symmetric polynomials alone, through the complete homogeneous polynomials
and the Pieri relation ``s(k,1^l) + s(k+1,1^(l-1)) = h_k e_l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .chain import TransitionMatrix, spectrum
from .config import DEFAULT, Tolerances
from .errors import IndexOutOfRange, LegTooLong, TooLarge


class HookShape(NamedTuple):
    """The partition ``(arm, 1, ..., 1)`` with ``leg`` trailing ones."""

    arm: int
    leg: int

    @property
    def partition(self) -> tuple[int, ...]:
        return (self.arm,) + (1,) * self.leg

    @property
    def size(self) -> int:
        return self.arm + self.leg


def _hook(shape) -> HookShape:
    b, c = shape
    if b < 1 or c < 0:
        raise ValueError(f"hook needs arm >= 1 and leg >= 0, got {tuple(shape)}")
    return HookShape(int(b), int(c))


def elementary_symmetric(roots: Sequence[complex]) -> np.ndarray:
    """``e_1..e_m`` of ``roots`` by expanding ``prod(1 + x z)`` one factor at a time."""
    x = np.asarray(roots)
    dtype = np.result_type(x.dtype, float)
    e = np.zeros(x.size + 1, dtype=dtype)
    e[0] = 1.0
    for k, xi in enumerate(x, start=1):
        e[1 : k + 1] = e[1 : k + 1] + xi * e[0:k]
    return e[1:]


def complete_homogeneous(esym: Sequence[float], k_max: int) -> np.ndarray:
    """``h_0..h_{k_max}`` from ``sum_i (-1)^i e_i h_{k-i} = 0`` for ``k >= 1``."""
    e = np.concatenate(([1.0], np.asarray(esym)))
    m = e.size - 1
    h = np.zeros(k_max + 1, dtype=np.result_type(e.dtype, float))
    h[0] = 1.0
    for k in range(1, k_max + 1):
        acc = 0.0
        for i in range(1, min(k, m) + 1):
            acc += (-1) ** (i - 1) * e[i] * h[k - i]
        h[k] = acc
    return h


def hook_schur_from_esym(esym: Sequence[float], m: int, shape) -> float:
    """``s_(b, 1^c)`` at the roots whose elementary symmetric values are ``esym``.

    Unwinding the Pieri relation gives ``sum_{i=0}^{c} (-1)^i h_{b+i} e_{c-i}``.
    A leg of exactly ``m`` needs ``m + 1`` distinct letters and is zero.
    """
    b, c = _hook(shape)
    e = np.asarray(esym)
    if e.size != m:
        raise ValueError(f"expected {m} elementary symmetric values, got {e.size}")
    if c > m:
        raise LegTooLong(f"leg {c} exceeds the number of variables {m}")
    if c == m:
        return 0.0
    h = complete_homogeneous(e, b + c)
    ee = np.concatenate(([1.0], e))
    total = 0.0
    for i in range(c + 1):
        total += (-1) ** i * h[b + i] * ee[c - i]
    return total


def hook_schur_modulus_bound(beta_star: float, m: int, shape) -> float:
    """``s_(b,1^c)(beta_star, ..., beta_star)``, which dominates ``|s_(b,1^c)|`` on the
    polydisc of radius ``beta_star``."""
    b, c = _hook(shape)
    return ssyt_count_hook(b, c, m) * beta_star ** (b + c)


def companion_matrix(esym: Sequence[float]) -> np.ndarray:
    """Companion matrix of ``x^m - e_1 x^(m-1) + ... + (-1)^m e_m``.

    Ones on the subdiagonal, ``(-1)^(m-i) e_(m-i+1)`` in row ``i`` of the last
    column (1-based), zeros elsewhere.
    """
    e = np.asarray(esym)
    m = e.size
    c = np.zeros((m, m), dtype=np.result_type(e.dtype, float))
    c[np.arange(1, m), np.arange(m - 1)] = 1.0
    for i in range(1, m + 1):
        c[i - 1, m - 1] = (-1) ** (m - i) * e[m - i]
    return c


def companion_power_entry(esym: Sequence[float], m: int, t: int, i: int, j: int) -> float:
    """Entry ``(i, j)`` (1-based) of the ``t``-th power of the companion matrix."""
    if not (1 <= i <= m and 1 <= j <= m):
        raise IndexOutOfRange(f"({i}, {j}) outside 1..{m}")
    if t < 0:
        raise IndexOutOfRange("t must be nonnegative")
    arm = t + j - m
    if arm < 1:
        return 1.0 if i == t + j else 0.0
    return (-1) ** (m - i) * hook_schur_from_esym(esym, m, (arm, m - i))


def companion_power(esym: Sequence[float], t: int) -> np.ndarray:
    m = len(esym)
    return np.array([[companion_power_entry(esym, m, t, i, j) for j in range(1, m + 1)]
                     for i in range(1, m + 1)])


def recurrence_coefficients(esym: Sequence[float], n: int, t: int) -> np.ndarray:
    """``c_(t,k)`` with ``P^t - Pi = sum_k c_(t,k) (P^k - Pi)``, ``k = 0..N-2``.

    ``esym`` holds the elementary symmetric values of the ``N - 1`` non-unit
    eigenvalues.
    """
    if n < 2:
        raise ValueError("need at least two states")
    m = n - 1
    return np.array([companion_power_entry(esym, m, t, k + 1, 1) for k in range(m)])


def esym_of_chain(P: TransitionMatrix, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Elementary symmetric values of the non-unit eigenvalues of ``P``.

    Complex eigenvalues come in conjugate pairs, so the result is real up to
    rounding; the imaginary part is dropped.
    """
    e = elementary_symmetric(spectrum(P, tol).nonunit)
    return np.real(e).astype(float)


# ---------------------------------------------------------------------------
# counting and enumeration
# ---------------------------------------------------------------------------


def ssyt_count_hook(b: int, c: int, m: int) -> int:
    """Number of semistandard tableaux of shape ``(b, 1^c)`` on ``{1..m}``."""
    if b < 1 or c < 0 or m < 1:
        raise ValueError("need b >= 1, c >= 0, m >= 1")
    return math.comb(b + c - 1, b - 1) * math.comb(b + m - 1, b + c)


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def weight(self, m: int) -> tuple[int, ...]:
        w = [0] * m
        for r in self.rows:
            for v in r:
                w[v - 1] += 1
        return tuple(w)

    def __str__(self) -> str:
        return "{" + "; ".join("(" + ",".join(map(str, r)) + ")" for r in self.rows) + "}"


MAX_BOXES = 16
MAX_LETTERS = 8


def _check_partition(shape: Sequence[int]) -> tuple[int, ...]:
    shape = tuple(int(k) for k in shape)
    if not shape or any(k < 1 for k in shape) or any(a < b for a, b in zip(shape, shape[1:])):
        raise ValueError(f"not a partition: {shape}")
    return shape


def iter_ssyt(shape: Sequence[int], m: int) -> Iterator[Tableau]:
    """Semistandard tableaux of ``shape`` on ``{1..m}`` in lexicographic order."""
    shape = _check_partition(shape)
    if sum(shape) > MAX_BOXES or m > MAX_LETTERS:
        raise TooLarge(f"enumeration capped at {MAX_BOXES} boxes and {MAX_LETTERS} letters")
    cells = [(r, c) for r, k in enumerate(shape) for c in range(k)]
    grid = [[0] * k for k in shape]

    def fill(pos: int) -> Iterator[Tableau]:
        if pos == len(cells):
            yield Tableau(tuple(tuple(row) for row in grid))
            return
        r, c = cells[pos]
        lo = 1
        if c > 0:
            lo = grid[r][c - 1]
        if r > 0:
            lo = max(lo, grid[r - 1][c] + 1)
        # the rest of the column below needs distinct larger letters
        below = sum(1 for k in shape[r + 1:] if k > c)
        for v in range(lo, m - below + 1):
            grid[r][c] = v
            yield from fill(pos + 1)
        grid[r][c] = 0

    yield from fill(0)


def ssyt_enumerate(shape: Sequence[int], m: int) -> list[Tableau]:
    return list(iter_ssyt(shape, m))


def schur_polynomial(shape: Sequence[int], point: Sequence[float]) -> float:
    """Schur polynomial of ``shape`` at ``point`` as a sum of tableau monomials."""
    x = np.asarray(point)
    total = 0.0
    for tab in iter_ssyt(shape, x.size):
        total += np.prod(x ** np.asarray(tab.weight(x.size)))
    return total
