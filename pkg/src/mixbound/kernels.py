"""Inner loops that dominate runtime, each in a numba and a numpy flavour.

The public names (``worst_tv_sep``, ``pure_birth_masses``, ``cheeger_search``)
dispatch on :data:`mixbound._accel.USE_JIT`. Both flavours are importable so
tests and the benchmark can compare them directly.
"""

from __future__ import annotations

import numpy as np

from ._accel import USE_JIT, njit

# ---------------------------------------------------------------------------
# worst-start total variation and separation of a block of distributions
# ---------------------------------------------------------------------------


@njit(cache=True)
def worst_tv_sep_jit(M, pi):
    n_rows, n = M.shape
    tv = 0.0
    sep = -np.inf
    for x in range(n_rows):
        s = 0.0
        for y in range(n):
            s += abs(M[x, y] - pi[y])
            if pi[y] > 0.0:
                r = 1.0 - M[x, y] / pi[y]
                if r > sep:
                    sep = r
        s *= 0.5
        if s > tv:
            tv = s
    return min(tv, 1.0), min(max(sep, 0.0), 1.0)


def worst_tv_sep_numpy(M, pi):
    tv = 0.5 * np.abs(M - pi).sum(axis=1).max()
    support = pi > 0.0
    sep = (1.0 - M[:, support] / pi[support]).max()
    return min(float(tv), 1.0), min(max(float(sep), 0.0), 1.0)


# ---------------------------------------------------------------------------
# pure-birth forward recursion: v_{t+1}(j) = v_t(j) b_j + v_t(j-1) (1 - b_{j-1})
# ---------------------------------------------------------------------------
# Masses below the smallest normal double are flushed to zero: subnormal
# arithmetic is an order of magnitude slower and carries no usable digits.

_TINY = np.finfo(np.float64).tiny


@njit(cache=True)
def pure_birth_masses_jit(betas, t_max):
    m = betas.shape[0]
    v = np.zeros(m + 1)
    v[0] = 1.0
    absorbed = np.empty(t_max + 1)
    pending = np.empty(t_max + 1)
    for t in range(t_max + 1):
        s = 0.0
        for j in range(m):
            s += v[j]
        pending[t] = s
        absorbed[t] = v[m]
        # update from the top so v[j-1] is still the old value
        v[m] = v[m] + v[m - 1] * (1.0 - betas[m - 1]) if m > 0 else v[m]
        for j in range(m - 1, 0, -1):
            x = v[j] * betas[j] + v[j - 1] * (1.0 - betas[j - 1])
            v[j] = x if x >= _TINY else 0.0
        if m > 0:
            x = v[0] * betas[0]
            v[0] = x if x >= _TINY else 0.0
    return absorbed, pending


def pure_birth_masses_numpy(betas, t_max):
    m = betas.shape[0]
    hold = np.append(betas, 1.0)
    move = 1.0 - betas
    v = np.zeros(m + 1)
    v[0] = 1.0
    absorbed = np.empty(t_max + 1)
    pending = np.empty(t_max + 1)
    for t in range(t_max + 1):
        pending[t] = v[:m].sum()
        absorbed[t] = v[m]
        nxt = v * hold
        nxt[1:] += v[:m] * move
        nxt[nxt < _TINY] = 0.0
        v = nxt
    return absorbed, pending


# ---------------------------------------------------------------------------
# Cheeger constant by exhaustive subset search
# ---------------------------------------------------------------------------
# Subsets are bitmasks over the first N-1 states; the last state is never in
# the enumerated set, its complement covers the other half of the power set.

_RESYNC = 4096


@njit(cache=True)
def _flows_from_scratch(F, pi, in_s):
    n = pi.shape[0]
    p_s = 0.0
    out = 0.0
    inn = 0.0
    for x in range(n):
        if in_s[x]:
            p_s += pi[x]
        for y in range(n):
            if in_s[x] and not in_s[y]:
                out += F[x, y]
            elif in_s[y] and not in_s[x]:
                inn += F[x, y]
    return p_s, out, inn


@njit(cache=True)
def cheeger_search_jit(F, pi, half_tol):
    n = pi.shape[0]
    total = 0.0
    for x in range(n):
        total += pi[x]
    best = np.inf
    best_mask = -1
    in_s = np.zeros(n, dtype=np.bool_)
    p_s = 0.0
    out = 0.0
    inn = 0.0
    gray = 0
    n_sub = 1 << (n - 1)
    for i in range(1, n_sub):
        k = 0
        while not (i >> k) & 1:
            k += 1
        gray ^= 1 << k
        if in_s[k]:
            for y in range(n):
                if y == k:
                    continue
                if in_s[y]:
                    out += F[y, k]
                    inn += F[k, y]
                else:
                    out -= F[k, y]
                    inn -= F[y, k]
            in_s[k] = False
            p_s -= pi[k]
        else:
            for y in range(n):
                if y == k:
                    continue
                if in_s[y]:
                    out -= F[y, k]
                    inn -= F[k, y]
                else:
                    out += F[k, y]
                    inn += F[y, k]
            in_s[k] = True
            p_s += pi[k]
        if i % _RESYNC == 0:
            p_s, out, inn = _flows_from_scratch(F, pi, in_s)
        p_c = total - p_s
        if p_s > 0.0 and p_s <= 0.5 + half_tol:
            r = out / p_s
            if r < best:
                best = r
                best_mask = gray
        if p_c > 0.0 and p_c <= 0.5 + half_tol:
            r = inn / p_c
            if r < best:
                best = r
                best_mask = ((1 << n) - 1) ^ gray
    return best, best_mask


def cheeger_search_numpy(F, pi, half_tol, chunk=1 << 14):
    n = pi.shape[0]
    total = pi.sum()
    best = np.inf
    best_mask = -1
    shifts = np.arange(n - 1, dtype=np.int64)
    full = (1 << n) - 1
    for start in range(1, 1 << (n - 1), chunk):
        masks = np.arange(start, min(start + chunk, 1 << (n - 1)), dtype=np.int64)
        S = np.zeros((masks.size, n))
        S[:, : n - 1] = (masks[:, None] >> shifts) & 1
        C = 1.0 - S
        p_s = S @ pi
        p_c = total - p_s
        out = np.einsum("ij,ij->i", S @ F, C)
        inn = np.einsum("ij,ij->i", C @ F, S)
        with np.errstate(divide="ignore", invalid="ignore"):
            r_s = np.where((p_s > 0) & (p_s <= 0.5 + half_tol), out / p_s, np.inf)
            r_c = np.where((p_c > 0) & (p_c <= 0.5 + half_tol), inn / p_c, np.inf)
        i_s, i_c = int(np.argmin(r_s)), int(np.argmin(r_c))
        if r_s[i_s] < best:
            best, best_mask = float(r_s[i_s]), int(masks[i_s])
        if r_c[i_c] < best:
            best, best_mask = float(r_c[i_c]), full ^ int(masks[i_c])
    return best, best_mask


if USE_JIT:
    worst_tv_sep = worst_tv_sep_jit
    pure_birth_masses = pure_birth_masses_jit
    cheeger_search = cheeger_search_jit
else:
    worst_tv_sep = worst_tv_sep_numpy
    pure_birth_masses = pure_birth_masses_numpy
    cheeger_search = cheeger_search_numpy
