"""Pointwise interpolation-error bounds.

Two routes are covered: the classical bound for truncated sinc
interpolation of a band- and energy-limited signal, and the weighted-space
bound ``|xhat(t) - x(t)| <= sqrt(D^2 - |xhat|_W^2) P(t)`` built on the
kernel power function

    P^2(t) = psi(0) - 2 sum_n Re(u_n(t) psi(nT - t))
             + sum_{n,m} u_m(t) psi(nT - mT) u_n(t),

which vanishes at the sample nodes. A matched-filter tail adversary
realizes the classical bound on a truncated index set, providing a
constructive worst case.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve

from .interpolate import NotPositiveDefiniteError, truncated_shannon, wnorm_sq
from .kernel import psi_closed_form

POWER_CLAMP = 1e-12
FEASIBILITY_RTOL = 1e-9


class InfeasibleBallError(ValueError):
    """The stated norm budget is smaller than the interpolant's norm."""


class NegativePowerError(ArithmeticError):
    """Computed squared power function is negative beyond roundoff."""


@dataclass(frozen=True)
class BoundReport:
    """Power function and pointwise error bound on an evaluation grid."""

    t_grid: np.ndarray
    power_values: np.ndarray
    bound_values: np.ndarray
    constant: float


@dataclass(frozen=True)
class MinimaxAdversary:
    """Worst-case tail perturbation realizing the classical bound.

    ``coeffs`` are the tail coefficients g[n] on ``indices`` (the truncated
    complement of -N..N); ``attained_error`` is |xhat(t) - z(t)| for the
    adversarial signal z; ``analytic_error`` is the matched-filter value
    (C/sqrt(T)) sqrt(sum tail sinc^2); ``truncation_deficit`` is how far the
    partial partition sum over |n| <= tail_range falls short of 1.
    """

    indices: np.ndarray
    coeffs: np.ndarray
    phase: float
    constant: float
    attained_error: float
    analytic_error: float
    truncation_deficit: float


def power_function(gram, t):
    """Power function P(t) >= 0 of the Gram system, zero at the nodes."""
    if gram.cholesky is None:
        raise NotPositiveDefiniteError(
            "power function needs an invertible Gram matrix",
            condition_estimate=gram.condition_estimate)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    psi0 = float(psi_closed_form(gram.kernel, 0.0))
    # v[:, j] holds psi(t_j - nT); the cardinal values are u = R^{-1} v.
    v = psi_closed_form(gram.kernel, t[None, :] - gram.times[:, None])
    u = cho_solve(gram.cholesky, v)
    p2 = psi0 - 2.0 * np.sum(u * v, axis=0) + np.sum(u * (gram.dense @ u), axis=0)
    floor = -POWER_CLAMP * max(1.0, abs(psi0))
    if np.any(p2 < floor):
        raise NegativePowerError(
            f"squared power function reached {float(np.min(p2)):.3e}, below the "
            f"roundoff floor {floor:.3e}; the Gram system is too ill-conditioned")
    return np.sqrt(np.maximum(p2, 0.0))


def weighted_pointwise_bound(interp, D, t_grid):
    """Bound |xhat(t) - x(t)| for truths with weighted norm at most D."""
    t_grid = np.atleast_1d(np.asarray(t_grid, dtype=float))
    norm_sq = wnorm_sq(interp)
    gap = D * D - norm_sq
    if gap < -FEASIBILITY_RTOL * (1.0 + norm_sq):
        raise InfeasibleBallError(
            f"norm budget D^2 = {D * D:.6g} is below the interpolant norm "
            f"{norm_sq:.6g}; no admissible truth exists")
    constant = float(np.sqrt(max(gap, 0.0)))
    power = power_function(interp.gram, t_grid)
    return BoundReport(t_grid=t_grid, power_values=power,
                       bound_values=constant * power, constant=constant)


def shannon_pointwise_bound(samples, E, t_grid):
    """Classical bound for truncated sinc interpolation under energy <= E^2."""
    t_grid = np.atleast_1d(np.asarray(t_grid, dtype=float))
    T = samples.spacing_T
    constant = _energy_constant(samples, E)
    ssum = _partition_sum(t_grid, T, samples.indices)
    power = np.sqrt(np.maximum(1.0 - ssum, 0.0) / T)
    return BoundReport(t_grid=t_grid, power_values=power,
                       bound_values=constant * power, constant=constant)


def sinc_partition_check(t, T, truncation):
    """Partial sum of sinc^2(t/T - n) over |n| <= truncation.

    The full sum over all integers is 1 for every t; partial sums increase
    monotonically toward it.
    """
    if truncation < 1:
        raise ValueError(f"truncation must be >= 1, got {truncation}")
    n = np.arange(-int(truncation), int(truncation) + 1)
    return float(np.sum(np.sinc(t / T - n) ** 2))


def minimax_worstcase(samples, E, t, tail_range=10_000, phase=0.0):
    """Construct the worst-case tail signal at time ``t``.

    The adversary spends the leftover energy budget C on tail samples
    (|n| > N, truncated at ``tail_range``) shaped by matched filtering
    against the sinc values at ``t``. Its attained error equals the
    truncated analytic bound and is invariant to the free phase.
    """
    N = samples.half_count_N
    if tail_range <= N:
        raise ValueError(f"tail_range must exceed N = {N}, got {tail_range}")
    T = samples.spacing_T
    constant = _energy_constant(samples, E)
    side = np.arange(N + 1, int(tail_range) + 1)
    indices = np.concatenate([-side[::-1], side])
    s = np.sinc(t / T - indices)
    tail_sq = float(np.sum(s * s))
    scale = constant / np.sqrt(T)
    if tail_sq > 0.0:
        coeffs = scale * np.exp(1j * phase) * s / np.sqrt(tail_sq)
    else:
        coeffs = np.zeros(indices.size, dtype=complex)

    xhat = complex(truncated_shannon(samples, t))
    z = xhat + complex(np.sum(coeffs * s))
    attained = abs(xhat - z)
    analytic = scale * np.sqrt(tail_sq)
    deficit = 1.0 - sinc_partition_check(t, T, tail_range)
    return MinimaxAdversary(indices=indices, coeffs=coeffs, phase=phase,
                            constant=constant, attained_error=float(attained),
                            analytic_error=float(analytic),
                            truncation_deficit=float(deficit))


def _energy_constant(samples, E):
    T = samples.spacing_T
    interp_energy = T * float(np.sum(np.abs(samples.values) ** 2))
    gap = E * E - interp_energy
    if gap < -FEASIBILITY_RTOL * (1.0 + interp_energy):
        raise InfeasibleBallError(
            f"energy budget E^2 = {E * E:.6g} is below the interpolant energy "
            f"{interp_energy:.6g}; no admissible truth exists")
    return float(np.sqrt(max(gap, 0.0)))


def _partition_sum(t_grid, T, indices):
    s = np.sinc(t_grid[:, None] / T - indices[None, :])
    return np.sum(s * s, axis=1)
