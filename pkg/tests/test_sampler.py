"""Gibbs conditionals, the MH shape update and full-chain behavior."""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import norm

from lomaxbayes import (
    AugmentedState,
    Dataset,
    DegenerateDataError,
    ImproperPosteriorError,
    LomaxParams,
    McmcConfig,
    PriorKind,
    log_alpha_conditional,
    mh_step_alpha,
    run_chain,
    run_chains,
    sample,
    sample_beta,
    sample_lambda,
)
from lomaxbayes.sampler import _truncation_log_correction

N_DRAWS = 100_000


def _assert_moments_within_3se(draws, mean, var, excess_kurtosis):
    """Check empirical mean and variance against analytic 3-SE bands."""
    n = draws.size
    se_mean = math.sqrt(var / n)
    assert abs(draws.mean() - mean) < 3 * se_mean
    se_var = var * math.sqrt(2.0 / (n - 1) + excess_kurtosis / n)
    assert abs(draws.var(ddof=1) - var) < 3 * se_var


def _batch_means_se(chain, n_batches=400):
    usable = chain[: n_batches * (chain.size // n_batches)]
    batch_means = usable.reshape(n_batches, -1).mean(axis=1)
    return batch_means.std(ddof=1) / math.sqrt(n_batches)


class TestAugmentedState:
    def test_valid(self):
        s = AugmentedState(alpha=1.5, beta=2.0, lam=[1.0, 2.0])
        assert s.lam.shape == (2,)

    @pytest.mark.parametrize("kwargs", [
        dict(alpha=0.0, beta=1.0, lam=[1.0]),
        dict(alpha=1.0, beta=-1.0, lam=[1.0]),
        dict(alpha=1.0, beta=1.0, lam=[1.0, 0.0]),
        dict(alpha=1.0, beta=1.0, lam=[math.nan]),
        dict(alpha=math.inf, beta=1.0, lam=[1.0]),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            AugmentedState(**kwargs)


class TestMcmcConfig:
    def test_retained_arithmetic(self):
        assert McmcConfig(iterations=11000, burn_in=1000, thin=10).retained == 1000
        assert McmcConfig(iterations=80000, burn_in=20000, thin=20).retained == 3000
        # floor division when the post-burn-in stretch is not a multiple
        assert McmcConfig(iterations=1101, burn_in=100, thin=10).retained == 100

    @pytest.mark.parametrize("kwargs", [
        dict(iterations=100, burn_in=100, thin=1),
        dict(iterations=100, burn_in=-1, thin=1),
        dict(iterations=100, burn_in=0, thin=0),
        dict(iterations=100, burn_in=0, thin=1, chains=0),
        dict(iterations=100, burn_in=0, thin=1, tuning=0.0),
        dict(iterations=100, burn_in=99, thin=2),  # zero retained draws
        dict(iterations=100, burn_in=0, thin=1, init_alpha=-1.0),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            McmcConfig(**kwargs)


class TestSampleLambda:
    # (alpha, beta, x) -> latent conditional Gamma(alpha+1, 1 + x/beta)
    @pytest.mark.parametrize("alpha,beta,x", [
        (1.0, 1.0, 1.0),
        (1.5, 2.0, 3.0),
        (2.5, 0.5, 0.2),
    ])
    def test_moments_within_3se(self, alpha, beta, x):
        shape = alpha + 1.0
        rate = 1.0 + x / beta
        d = Dataset(np.full(N_DRAWS, x))
        state = AugmentedState(alpha=alpha, beta=beta, lam=np.ones(N_DRAWS))
        draws = sample_lambda(state, d, np.random.default_rng(101))
        assert draws.shape == (N_DRAWS,)
        _assert_moments_within_3se(
            draws, mean=shape / rate, var=shape / rate**2, excess_kurtosis=6.0 / shape
        )

    def test_trivial_conditional_moments(self):
        # alpha=1, beta=1, x=1: Gamma(2, 2) has mean 1 and variance 0.5
        shape, rate = 2.0, 2.0
        assert shape / rate == 1.0
        assert shape / rate**2 == 0.5


class TestSampleBeta:
    @staticmethod
    def _draws(n, total, n_draws, seed):
        # lam @ x = total with x = 1 and lam = total/n
        d = Dataset(np.ones(n))
        state = AugmentedState(alpha=1.0, beta=1.0, lam=np.full(n, total / n))
        rng = np.random.default_rng(seed)
        return np.array([sample_beta(state, d, rng) for _ in range(n_draws)])

    @pytest.mark.parametrize("n,total", [(5, 8.0), (8, 4.0), (12, 18.0)])
    def test_moments_within_3se(self, n, total):
        draws = self._draws(n, total, N_DRAWS, seed=202)
        mean = total / (n - 1)
        var = total**2 / ((n - 1) ** 2 * (n - 2))
        kurt = (30 * n - 66.0) / ((n - 3) * (n - 4))
        _assert_moments_within_3se(draws, mean=mean, var=var, excess_kurtosis=kurt)

    def test_small_shape_mean(self):
        # InverseGamma(3, 4): mean 4/(3-1) = 2
        draws = self._draws(3, 4.0, N_DRAWS, seed=203)
        var = 16.0 / (4.0 * 1.0)
        assert abs(draws.mean() - 2.0) < 3 * math.sqrt(var / N_DRAWS)

    def test_degenerate_data(self):
        d = Dataset(np.zeros(4))
        state = AugmentedState(alpha=1.0, beta=1.0, lam=np.ones(4))
        with pytest.raises(DegenerateDataError):
            sample_beta(state, d, np.random.default_rng(0))


class TestAlphaConditional:
    def test_reference_values(self):
        assert log_alpha_conditional(PriorKind.REFERENCE, 1.0, [1.0, 1.0]) == 0.0
        assert log_alpha_conditional(PriorKind.REFERENCE, 2.0, [1.0, 1.0]) == pytest.approx(
            -math.log(2.0), rel=1e-14
        )

    def test_dependent_value(self):
        expected = -math.log(2.0) - 0.5 * math.log(3.0)
        got = log_alpha_conditional(PriorKind.JEFFREYS_DEPENDENT, 1.0, [1.0, 1.0])
        assert got == pytest.approx(expected, rel=1e-14)

    def test_rejects_nonpositive_alpha(self):
        with pytest.raises(ValueError):
            log_alpha_conditional(PriorKind.REFERENCE, 0.0, [1.0])


class _PinnedRng:
    """normal() pinned to a constant step; random() pinned too."""

    def __init__(self, step=0.0, uniform=0.5):
        self.step = step
        self.uniform = uniform

    def normal(self, loc=0.0, scale=1.0):
        return self.step

    def random(self):
        return self.uniform


class TestMhStepAlpha:
    def test_proposal_equal_to_current_always_accepted(self):
        new, accepted = mh_step_alpha(
            1.7, PriorKind.REFERENCE, [0.5, 2.0], 1.0, _PinnedRng(step=0.0, uniform=0.999)
        )
        assert accepted and new == 1.7

    def test_truncation_correction_matches_normal_logcdf(self):
        got = _truncation_log_correction(0.4, 1.1, 0.7)
        want = norm.logcdf(0.4 / 0.7) - norm.logcdf(1.1 / 0.7)
        assert got == pytest.approx(want, rel=1e-12)

    def test_truncation_correction_vanishes_far_from_zero(self):
        # both current and proposal many tuning sds above 0: Phi -> 1
        assert _truncation_log_correction(40.0, 41.0, 1.0) == 0.0

    def test_rejects_nonpositive_current(self):
        with pytest.raises(ValueError):
            mh_step_alpha(0.0, PriorKind.REFERENCE, [1.0], 1.0, np.random.default_rng(0))

    def test_stationary_mean_matches_quadrature(self):
        # fixed latents: the chain must hold the conditional's mean
        lam = np.array([0.5, 2.0])
        sum_log = float(np.log(lam).sum())

        def dens(a):
            return math.exp(-math.log(a) - 2.0 * math.lgamma(a) + (a - 1.0) * sum_log)

        z, _ = quad(dens, 0.0, 50.0, limit=200)
        m1, _ = quad(lambda a: a * dens(a), 0.0, 50.0, limit=200)
        target_mean = m1 / z

        rng = np.random.default_rng(123)
        steps = 200_000
        out = np.empty(steps)
        alpha = 1.0
        for i in range(steps):
            alpha, _ = mh_step_alpha(alpha, PriorKind.REFERENCE, lam, 1.0, rng)
            out[i] = alpha
        se = _batch_means_se(out)
        assert abs(out.mean() - target_mean) < 3 * se


def _data(n, seed=0, params=LomaxParams(2.0, 1.5)):
    return sample(params, np.random.default_rng(seed), n)


class TestRunChain:
    def test_retained_draw_counts(self):
        d = _data(5)
        c = run_chain(d, PriorKind.REFERENCE, McmcConfig(iterations=1101, burn_in=100, thin=10, seed=1))
        assert c.alpha.size == c.beta.size == 100
        c = run_chain(d, PriorKind.REFERENCE, McmcConfig(iterations=1100, burn_in=100, thin=10, seed=1))
        assert c.alpha.size == 100

    def test_deterministic_given_seed_and_index(self):
        d = _data(10)
        cfg = McmcConfig(iterations=500, burn_in=100, thin=2, seed=42)
        c1 = run_chain(d, PriorKind.REFERENCE, cfg, chain_index=0)
        c2 = run_chain(d, PriorKind.REFERENCE, cfg, chain_index=0)
        np.testing.assert_array_equal(c1.alpha, c2.alpha)
        np.testing.assert_array_equal(c1.beta, c2.beta)
        np.testing.assert_array_equal(c1.lambda_means, c2.lambda_means)
        assert c1.accepted == c2.accepted

    def test_chain_index_changes_stream(self):
        d = _data(10)
        cfg = McmcConfig(iterations=500, burn_in=100, thin=2, seed=42)
        c0 = run_chain(d, PriorKind.REFERENCE, cfg, chain_index=0)
        c1 = run_chain(d, PriorKind.REFERENCE, cfg, chain_index=1)
        assert not np.array_equal(c0.alpha, c1.alpha)

    def test_state_positivity_and_counts(self):
        d = _data(20)
        cfg = McmcConfig(iterations=800, burn_in=200, thin=3, seed=5)
        c = run_chain(d, PriorKind.JEFFREYS_DEPENDENT, cfg)
        assert np.all(c.alpha > 0) and np.all(c.beta > 0)
        assert c.proposed == 800 and 0 <= c.accepted <= 800
        assert c.lambda_means.shape == (20,)
        assert np.all(c.lambda_means > 0)

    def test_pinned_initial_values_are_used(self):
        d = _data(6)
        cfg = McmcConfig(iterations=10, burn_in=1, thin=1, seed=3,
                         init_alpha=2.5, init_beta=0.7)
        c = run_chain(d, PriorKind.REFERENCE, cfg)
        assert c.alpha.size == 9

    def test_lambda_traces_toggle(self):
        d = _data(6)
        cfg = McmcConfig(iterations=100, burn_in=20, thin=4, seed=3, store_lambda_traces=True)
        c = run_chain(d, PriorKind.REFERENCE, cfg)
        assert c.lambda_draws.shape == (20, 6)
        np.testing.assert_allclose(c.lambda_draws.mean(axis=0), c.lambda_means, rtol=1e-12)

    def test_propriety_guard(self):
        d = Dataset([1.0])
        cfg = McmcConfig(iterations=100, burn_in=10, thin=1, seed=0)
        with pytest.raises(ImproperPosteriorError):
            run_chain(d, PriorKind.REFERENCE, cfg)
        with pytest.raises(ImproperPosteriorError):
            run_chain(d, PriorKind.JEFFREYS_INDEPENDENT, cfg)
        c = run_chain(d, PriorKind.JEFFREYS_DEPENDENT, cfg)
        assert c.alpha.size == 90

    def test_all_zero_data_rejected(self):
        d = Dataset(np.zeros(5))
        cfg = McmcConfig(iterations=100, burn_in=10, thin=1, seed=0)
        with pytest.raises(DegenerateDataError):
            run_chain(d, PriorKind.REFERENCE, cfg)


class TestRunChains:
    def test_pooled_counts_and_distinct_streams(self):
        d = _data(10)
        cfg = McmcConfig(iterations=400, burn_in=100, thin=3, chains=2, seed=9)
        cs = run_chains(d, PriorKind.REFERENCE, cfg)
        assert len(cs) == 2
        assert cs.pooled("alpha").size == 2 * cfg.retained
        assert cs[0].seed != cs[1].seed
        assert not np.array_equal(cs[0].alpha, cs[1].alpha)

    def test_serial_and_concurrent_runs_agree(self):
        d = _data(10)
        cfg = McmcConfig(iterations=400, burn_in=100, thin=3, chains=3, seed=9)
        serial = run_chains(d, PriorKind.REFERENCE, cfg, parallel=False)
        threaded = run_chains(d, PriorKind.REFERENCE, cfg, parallel=True)
        for cs, ct in zip(serial, threaded):
            assert cs.chain_index == ct.chain_index
            np.testing.assert_array_equal(cs.alpha, ct.alpha)
            np.testing.assert_array_equal(cs.beta, ct.beta)
            np.testing.assert_array_equal(cs.lambda_means, ct.lambda_means)


class TestMixingBehavior:
    def test_reference_acceptance_bracket_small_proposal(self):
        # The shape conditional tightens like sqrt(alpha/n), so a unit
        # proposal overshoots at moderate n; a 0.1-scale walk stays in
        # the high-acceptance zone (0.5, 1).
        d = _data(50, seed=31)
        cfg = McmcConfig(iterations=6000, burn_in=500, thin=10, chains=1, seed=7, tuning=0.1)
        c = run_chain(d, PriorKind.REFERENCE, cfg)
        assert 0.5 < c.accepted / c.proposed < 1.0

    def test_posterior_recovery_at_n500(self):
        d = _data(500, seed=2024)
        cfg = McmcConfig(iterations=11000, burn_in=1000, thin=10, chains=2, seed=12)
        cs = run_chains(d, PriorKind.REFERENCE, cfg)
        for param, truth in (("beta", 2.0), ("alpha", 1.5)):
            pooled = cs.pooled(param)
            assert abs(pooled.mean() - truth) < 3 * pooled.std(ddof=1)
