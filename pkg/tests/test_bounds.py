import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bandlim import (AnalyticSignal, InfeasibleBallError, Kernel, SampleSet,
                     build_gram, evaluate, eval_signal, minimax_worstcase,
                     power_function, psi_closed_form, sample_signal,
                     shannon_pointwise_bound, sinc_partition_check, solve,
                     weighted_pointwise_bound, wnorm_sq)

B = 1.0


def make_interp(kernel, signal, T, N):
    samples = sample_signal(signal, T, N)
    return solve(build_gram(kernel, T, N), samples), samples


class TestPowerFunction:
    def test_zero_at_nodes(self, lowpass_kernel):
        gram = build_gram(lowpass_kernel, 1.0 / B, 10)
        assert np.max(power_function(gram, gram.times)) < 1e-6

    def test_nonnegative(self, highpass_kernel):
        gram = build_gram(highpass_kernel, 2.0 / (3 * B), 8)
        t = np.linspace(-12, 12, 301)
        assert np.all(power_function(gram, t) >= 0.0)

    def test_uniform_critical_matches_sinc_formula(self):
        # substituting sinc cardinals gives P = sqrt((1 - sum sinc^2)/T)
        T, N = 0.5, 7
        gram = build_gram(Kernel.uniform(1.0 / (2 * T)), T, N)
        t = np.linspace(-4, 4, 101)
        ssum = np.sum(np.sinc(t[:, None] / T - np.arange(-N, N + 1)) ** 2, axis=1)
        expected = np.sqrt(np.maximum(1.0 - ssum, 0.0) / T)
        np.testing.assert_allclose(power_function(gram, t), expected, atol=1e-9)

    def test_monotone_decrease_with_more_samples(self, lowpass_kernel):
        # monotonicity is checked on P^2: at the nodes both values are true
        # zeros, and sqrt amplifies their roundoff past any fixed tolerance
        T = 1.0 / B
        t = np.linspace(-3, 3, 41)
        psi0 = lowpass_kernel.psi0
        previous = None
        for N in (4, 6, 9):
            p2 = power_function(build_gram(lowpass_kernel, T, N), t) ** 2
            if previous is not None:
                assert np.all(p2 <= previous + 1e-12 * max(1.0, psi0))
            previous = p2


class TestWeightedBound:
    def test_tight_ball_gives_zero_bound(self, lowpass_kernel, lowfreq_signal):
        interp, _ = make_interp(lowpass_kernel, lowfreq_signal, 1.0 / B, 8)
        D = np.sqrt(wnorm_sq(interp))
        report = weighted_pointwise_bound(interp, D, np.linspace(-4, 4, 21))
        assert report.constant == 0.0
        np.testing.assert_array_equal(report.bound_values, 0.0)

    def test_infeasible_ball_rejected(self, lowpass_kernel, lowfreq_signal):
        interp, _ = make_interp(lowpass_kernel, lowfreq_signal, 1.0 / B, 8)
        D = 0.9 * np.sqrt(wnorm_sq(interp))
        with pytest.raises(InfeasibleBallError):
            weighted_pointwise_bound(interp, D, np.zeros(1))

    def test_bound_holds_for_kernel_mixture_truths(self, lowpass_kernel):
        # truths with known norm: z = sum a_k psi(. - tau_k), |z|_W^2 = a' Psi a
        T, N = 1.0 / B, 10
        rng = np.random.default_rng(71)
        tgrid = np.linspace(-(N + 1) * T, (N + 1) * T, 101)
        worst = -np.inf
        for _ in range(10):
            count = int(rng.integers(3, 9))
            taus = rng.uniform(-N * T, N * T, count)
            amps = rng.standard_normal(count)
            z = AnalyticSignal.kernel_mixture(lowpass_kernel, taus, amps)
            gram_tau = psi_closed_form(lowpass_kernel,
                                       taus[:, None] - taus[None, :])
            D = np.sqrt(amps @ gram_tau @ amps)
            samples = sample_signal(z, T, N)
            interp = solve(build_gram(lowpass_kernel, T, N), samples)
            report = weighted_pointwise_bound(interp, D, tgrid)
            err = np.abs(evaluate(interp, tgrid) - eval_signal(z, tgrid))
            worst = max(worst, np.max(err - report.bound_values))
        assert worst <= 1e-8

    def test_reduces_to_classical_bound_at_uniform_critical(self):
        # with W = 1 and critical spacing, the weighted-space ball is the
        # energy ball, and the two bound routes must coincide
        T, N = 0.5, 9
        kernel = Kernel.uniform(1.0 / (2 * T))
        rng = np.random.default_rng(3)
        samples = SampleSet(T, rng.standard_normal(2 * N + 1))
        interp = solve(build_gram(kernel, T, N), samples)
        E = 1.2 * np.sqrt(T * np.sum(samples.values ** 2))
        t = np.linspace(-6, 6, 201)
        weighted = weighted_pointwise_bound(interp, E, t)
        classical = shannon_pointwise_bound(samples, E, t)
        np.testing.assert_allclose(weighted.bound_values,
                                   classical.bound_values, atol=1e-8)
        np.testing.assert_allclose(weighted.constant * weighted.power_values,
                                   weighted.bound_values, rtol=1e-14)


class TestShannonBound:
    def test_zero_at_nodes(self):
        samples = SampleSet(0.7, np.array([1.0, 2.0, 3.0, 2.0, 1.0]))
        report = shannon_pointwise_bound(samples, E=10.0, t_grid=samples.times)
        np.testing.assert_allclose(report.bound_values, 0.0, atol=1e-7)

    def test_exhausted_energy_budget_zeroes_constant(self):
        samples = SampleSet(0.5, np.array([1.0, -2.0, 0.5]))
        E = np.sqrt(0.5 * np.sum(samples.values ** 2))
        report = shannon_pointwise_bound(samples, E, np.array([0.3]))
        assert report.constant == 0.0

    def test_zero_signal_direct_formula(self):
        # x = 0, E = 1, N = 10, t = T/2
        T, N = 1.0, 10
        samples = SampleSet(T, np.zeros(2 * N + 1))
        report = shannon_pointwise_bound(samples, 1.0, np.array([T / 2]))
        ssum = sum(np.sinc(0.5 - n) ** 2 for n in range(-N, N + 1))
        expected = np.sqrt((1 - ssum) / T)
        assert report.bound_values[0] == pytest.approx(expected, rel=1e-12)

    def test_infeasible_energy_rejected(self):
        samples = SampleSet(0.5, np.array([1.0, -2.0, 0.5]))
        with pytest.raises(InfeasibleBallError):
            shannon_pointwise_bound(samples, 0.1, np.zeros(1))


class TestSincPartition:
    def test_exact_at_nodes(self):
        assert sinc_partition_check(0.0, 1.0, 50) == pytest.approx(1.0, abs=1e-12)

    def test_half_sample_converges(self):
        total = sinc_partition_check(0.5, 1.0, 10_000)
        assert abs(total - 1.0) < 1e-4

    @settings(max_examples=20, deadline=None)
    @given(st.floats(-3, 3), st.integers(1, 200))
    def test_monotone_in_truncation(self, t, truncation):
        small = sinc_partition_check(t, 1.0, truncation)
        large = sinc_partition_check(t, 1.0, truncation + 17)
        assert large >= small - 1e-15
        assert large <= 1.0 + 1e-12


class TestMinimaxWorstCase:
    def setup_method(self):
        rng = np.random.default_rng(12)
        self.samples = SampleSet(0.8, rng.standard_normal(21))
        self.energy = 1.5 * np.sqrt(0.8 * np.sum(self.samples.values ** 2))

    def test_attained_matches_analytic(self):
        adv = minimax_worstcase(self.samples, self.energy, t=0.37,
                                tail_range=2000)
        assert adv.attained_error == pytest.approx(adv.analytic_error, abs=1e-10)
        assert adv.truncation_deficit >= 0.0

    def test_phase_invariance(self):
        errors = [minimax_worstcase(self.samples, self.energy, t=0.37,
                                    tail_range=500, phase=phi).attained_error
                  for phi in (0.0, np.pi / 4, np.pi / 2)]
        assert max(errors) - min(errors) < 1e-12

    def test_adversary_energy_budget(self):
        adv = minimax_worstcase(self.samples, self.energy, t=1.1,
                                tail_range=3000)
        spent = self.samples.spacing_T * np.sum(np.abs(adv.coeffs) ** 2)
        assert spent == pytest.approx(adv.constant ** 2, abs=1e-10)

    def test_tail_range_must_exceed_window(self):
        with pytest.raises(ValueError):
            minimax_worstcase(self.samples, self.energy, t=0.3, tail_range=10)
