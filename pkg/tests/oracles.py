"""Exact reference implementations used as test oracles.

Nothing here imports mixbound: every value is recomputed from first
principles with rational or extended-precision arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import mpmath


def frac_matrix(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][l] * b[l][j] for l in range(k)), Fraction(0)) for j in range(m)] for i in range(n)]


def stationary(a) -> list[Fraction]:
    """Unique left fixed vector of a rational stochastic matrix, by Gaussian elimination."""
    n = len(a)
    # unknowns pi_0..pi_{n-1}: (P^T - I) pi = 0, sum pi = 1; drop the last balance row
    rows = [[a[j][i] - (1 if i == j else 0) for j in range(n)] + [Fraction(0)] for i in range(n - 1)]
    rows.append([Fraction(1)] * n + [Fraction(1)])
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def worst_tv_profile(a, t_max: int, pi=None) -> list[Fraction]:
    """max_x TV(P^t(x, .), pi) for t = 0..t_max, exactly."""
    n = len(a)
    pi = pi if pi is not None else stationary(a)
    m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    out = []
    for t in range(t_max + 1):
        out.append(max(sum(abs(m[i][j] - pi[j]) for j in range(n)) / 2 for i in range(n)))
        if t < t_max:
            m = matmul(m, a)
    return out


def first_crossing(profile, eps) -> int:
    eps = Fraction(eps)
    return next(t for t, v in enumerate(profile) if v <= eps)


def tv_bound_exact(n: int, beta: Fraction, t: int) -> Fraction:
    """(N-1) C(t, N-1) sum_k C(N-2, k) beta^(t-k) / (t-k) as an exact rational."""
    s = sum(Fraction(comb(n - 2, k)) * beta ** (t - k) / (t - k) for k in range(n - 1))
    return (n - 1) * comb(t, n - 1) * s


def geometric_sum_tail(betas, t: int) -> Fraction:
    """P(tau_1 + ... + tau_k > t) for independent geometrics on {1, 2, ...} by direct convolution."""
    betas = [Fraction(b) for b in betas]
    dist = {0: Fraction(1)}
    for b in betas:
        new: dict[int, Fraction] = {}
        for s, p in dist.items():
            for k in range(1, t + 2 - s):
                new[s + k] = new.get(s + k, Fraction(0)) + p * (1 - b) * b ** (k - 1)
        dist = new
    return 1 - sum((p for s, p in dist.items() if s <= t), Fraction(0))


def hypercube_tv_profile(n: int, t_max: int, dps: int = 40) -> list:
    """Worst-start TV of the lazy hypercube via the Hamming-weight projection, in mpmath."""
    mpmath.mp.dps = dps
    # weight chain: k -> k+1 w.p. (n-k)/(2n), k -> k-1 w.p. k/(2n), stay 1/2
    v = [mpmath.mpf(0)] * (n + 1)
    v[0] = mpmath.mpf(1)
    out = []
    for t in range(t_max + 1):
        # TV from 0 to uniform on {0,1}^n: sum_k C(n,k) |v_k/C(n,k) - 2^-n| / 2
        out.append(sum(abs(v[k] - mpmath.mpf(comb(n, k)) / 2**n) for k in range(n + 1)) / 2)
        w = [mpmath.mpf(0)] * (n + 1)
        for k in range(n + 1):
            w[k] += v[k] / 2
            if k < n:
                w[k + 1] += v[k] * mpmath.mpf(n - k) / (2 * n)
            if k > 0:
                w[k - 1] += v[k] * mpmath.mpf(k) / (2 * n)
        v = w
    return out
