import io

import numpy as np
import pytest
from scipy import stats

from mixbound import duality as du
from mixbound import examples as ex
from mixbound.chain import spectrum, stationary_distribution, validate
from mixbound.distances import distance_profile
from mixbound.errors import (
    BetaOutOfRange,
    DimensionMismatch,
    NegativeLinkEntry,
    NegativeSpectrum,
    NotSkipFree,
    NotSorted,
)


def test_build_pure_birth_matrix():
    Q = du.build_pure_birth([0.3, 0.7]).matrix.entries
    np.testing.assert_allclose(Q, [[0.3, 0.7, 0.0], [0.0, 0.7, 0.3], [0.0, 0.0, 1.0]], atol=1e-15)


def test_build_pure_birth_trivial_and_constant():
    assert du.build_pure_birth([]).matrix.entries.tolist() == [[1.0]]
    np.testing.assert_array_equal(du.build_pure_birth([0.4] * 4).matrix.entries, ex.pure_birth(5, 0.4).matrix.entries)


def test_build_pure_birth_errors():
    with pytest.raises(NotSorted):
        du.build_pure_birth([0.5, 0.2])
    with pytest.raises(BetaOutOfRange):
        du.build_pure_birth([0.2, 1.0])


def test_skip_free_link_rows_are_uniform_prefixes():
    P = ex.skip_free(5).matrix
    link = du.build_link(P, stationary_distribution(P), np.eye(5)[0])
    for j in range(5):
        expected = np.zeros(5)
        expected[: j + 1] = 1 / (j + 1)
        np.testing.assert_allclose(link.rows[j], expected, atol=1e-12)


def test_link_started_at_pi_is_constant():
    P = ex.sticky_walk(6).matrix
    pi = stationary_distribution(P)
    link = du.build_link(P, pi, pi.weights)
    np.testing.assert_allclose(link.rows, np.tile(pi.weights, (6, 1)), atol=1e-12)
    assert du.verify_intertwining(link, P, link.dual) < 1e-12


def test_constant_link_intertwines_any_pure_birth():
    P = ex.sticky_walk(4).matrix
    pi = stationary_distribution(P).weights
    lam = np.tile(pi, (4, 1))
    Q = du.build_pure_birth([0.1, 0.2, 0.9]).matrix
    assert du.verify_intertwining(lam, P, Q) < 1e-15


def test_corrupted_link_has_large_residual():
    P = ex.sticky_walk(5).matrix
    pi = stationary_distribution(P)
    link = du.build_link(P, pi, np.eye(5)[0])
    lam = link.rows.copy()
    lam[1, 0] += 0.1
    assert du.verify_intertwining(lam, P, link.dual) >= 0.01


def test_verify_dimension_mismatch():
    P = ex.sticky_walk(4).matrix
    with pytest.raises(DimensionMismatch):
        du.verify_intertwining(np.ones((4, 3)) / 3, P, du.build_pure_birth([0.1, 0.2]).matrix)


def test_complex_spectrum_rejected():
    P = ex.cyclic_walk(3).matrix
    with pytest.raises(NegativeSpectrum):
        du.build_link(P, stationary_distribution(P), np.eye(3)[0])


def test_negative_eigenvalue_rejected():
    P = validate([[0.1, 0.9], [0.9, 0.1]])
    with pytest.raises(NegativeSpectrum):
        du.build_link(P, stationary_distribution(P), np.array([1.0, 0.0]))


def test_nonreversible_real_spectrum_can_give_negative_link():
    # nonnegative real eigenvalues {0.722.., 0.755.., 1} but no detailed balance
    P = validate([[8 / 9, 0.0, 1 / 9], [1 / 9, 8 / 9, 0.0], [0.1, 0.2, 0.7]])
    pi = stationary_distribution(P)
    assert spectrum(P).real and spectrum(P).nonunit.min() > 0
    with pytest.raises(NegativeLinkEntry) as info:
        du.build_link(P, pi, np.eye(3)[2])
    assert info.value.row == 2
    assert info.value.value == pytest.approx(-0.08)


def _product_form(P, mu, betas):
    rows = [np.asarray(mu, float)]
    n = P.shape[0]
    for j in range(n - 1):
        m = np.eye(n)
        for i in range(j + 1):
            m = m @ (P - betas[i] * np.eye(n)) / (1 - betas[i])
        rows.append(mu @ m)
    return np.array(rows)


def test_link_suite_on_random_lazy_chains(rng):
    for _ in range(200):
        n = int(rng.integers(2, 9))
        P = ex.random_lazy_reversible(n, rng)
        pi = stationary_distribution(P)
        mu = rng.dirichlet(np.ones(n)) if rng.random() < 0.5 else np.eye(n)[rng.integers(n)]
        link = du.build_link(P, pi, mu)
        assert link.rows.min() >= -1e-9
        np.testing.assert_allclose(link.rows.sum(axis=1), 1.0, atol=1e-9)
        assert du.verify_intertwining(link, P, link.dual) < 1e-8
        np.testing.assert_allclose(link.rows[0], mu, atol=1e-12)
        np.testing.assert_allclose(link.rows[-1], pi.weights, atol=1e-8)
        prod = _product_form(P.entries, mu, link.dual.betas)
        np.testing.assert_allclose(prod[:-1], link.rows[:-1], atol=1e-9)


def test_separation_below_sst_tail(rng):
    for _ in range(60):
        n = int(rng.integers(2, 9))
        P = ex.random_lazy_reversible(n, rng)
        pi = stationary_distribution(P)
        mu = rng.dirichlet(np.ones(n))
        link = du.build_link(P, pi, mu)
        prof = distance_profile(P, pi, 100, starts=mu[None, :])
        tail = 1 - du.dual_absorption_profile(link.dual, 100)
        assert np.all(prof.sep <= tail[: prof.sep.size] + 1e-12)


def test_absorption_profile_trivial_chain():
    np.testing.assert_array_equal(du.dual_absorption_profile([], 5), np.ones(6))


def test_absorption_profile_negative_binomial():
    n, beta = 6, 0.6
    got = du.dual_absorption_profile([beta] * (n - 1), 60)
    # number of failures before n-1 successes is at most t-(n-1)
    t = np.arange(61)
    ref = stats.nbinom.cdf(t - (n - 1), n - 1, 1 - beta)
    np.testing.assert_allclose(got, ref, atol=1e-13)


def test_pure_birth_sep_is_dual_tail():
    P = ex.pure_birth(7, 0.4).matrix
    pi = stationary_distribution(P)
    prof = distance_profile(P, pi, 80, starts=np.eye(7)[:1])
    absorbed = du.dual_absorption_profile([0.4] * 6, 80)
    np.testing.assert_allclose(prof.sep, 1 - absorbed[: prof.sep.size], atol=1e-12)


def test_sticky_walk_sharpness():
    rep = du.birth_death_sharpness_check(ex.sticky_walk(6).matrix, 4 * 36)
    assert rep.pi_last == pytest.approx(0.5)
    assert rep.identity_residual < 1e-9
    assert rep.violations == 0
    assert rep.worst_ratio >= rep.pi_last - 1e-12


def test_pure_birth_sharpness_is_equality():
    rep = du.birth_death_sharpness_check(ex.pure_birth(5, 0.5).matrix, 60)
    assert rep.pi_last == pytest.approx(1.0)
    np.testing.assert_allclose(rep.tv, rep.tail, atol=1e-12)
    np.testing.assert_allclose(rep.sep, rep.tail, atol=1e-12)


def test_lazy_unbiased_walk_sharpness():
    rep = du.birth_death_sharpness_check(ex.biased_walk(5, 0.25, 0.5, 0.25).matrix, 200)
    assert rep.violations == 0 and rep.identity_residual < 1e-9


def test_sharpness_requires_skip_free():
    with pytest.raises(NotSkipFree):
        du.birth_death_sharpness_check(ex.hypercube(2).matrix, 10)


def test_link_csv():
    P = ex.skip_free(3).matrix
    link = du.build_link(P, stationary_distribution(P), np.eye(3)[0])
    buf = io.StringIO()
    link.to_csv(buf, P.labels)
    assert buf.getvalue().splitlines()[0] == "dual_state,1,2,3"
    assert buf.getvalue().splitlines()[2] == "2,0.5,0.5,0"
