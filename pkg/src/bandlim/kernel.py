"""Time-domain interpolation kernel attached to a frequency weight.

The kernel is the inverse Fourier transform of the reciprocal weight over
the band, using the ``(1/2pi) integral G(omega) exp(j omega t) domega``
convention. For the B-spline weight family this has the closed form

    psi(t) = (A/pi) sinc(A t / pi)^(K+1) [ d_0 + 2 sum_{m>=1} d_m cos(2 A m t) ]
             + 2 alpha B sinc(2 B t),

real and even because the coefficients are real and symmetric. A degenerate
"uniform" kernel (W = 1 over the band) evaluates to ``2 B sinc(2 B t)``.
An adaptive-quadrature path evaluates the same transform directly from the
reciprocal weight and serves as an independent cross-check.
"""

from dataclasses import dataclass

import numpy as np

from .quadrature import DEFAULT_TOLERANCE, adaptive_simpson
from .weights import WeightSpec


@dataclass(frozen=True)
class Kernel:
    """Interpolation kernel; either spec-backed or uniform over the band."""

    bandwidth_B: float
    spec: WeightSpec | None = None

    def __post_init__(self):
        if self.spec is not None and self.spec.bandwidth_B != self.bandwidth_B:
            raise ValueError("kernel bandwidth must match its weight spec")
        if self.bandwidth_B <= 0:
            raise ValueError(f"bandwidth_B must be positive, got {self.bandwidth_B}")

    @classmethod
    def uniform(cls, bandwidth_B):
        """Kernel for uniform weights W = 1 over the band."""
        return cls(bandwidth_B=bandwidth_B)

    @classmethod
    def from_spec(cls, spec):
        return cls(bandwidth_B=spec.bandwidth_B, spec=spec)

    @property
    def psi0(self):
        """Kernel value at the origin, (1/2pi) times the band integral of G."""
        if self.spec is None:
            return 2.0 * self.bandwidth_B
        s = self.spec
        return float((s.spacing_A / np.pi) * np.sum(s.coeffs_d)
                     + 2.0 * s.floor_alpha * s.bandwidth_B)


def psi_closed_form(kernel, t):
    """Evaluate the kernel at times ``t`` via the closed-form expression."""
    t = np.asarray(t, dtype=float)
    B = kernel.bandwidth_B
    if kernel.spec is None:
        return 2.0 * B * np.sinc(2.0 * B * t)
    spec = kernel.spec
    A = spec.spacing_A
    M = spec.half_count_M
    d = spec.coeffs_d
    envelope = (A / np.pi) * np.sinc(A * t / np.pi) ** (spec.degree_K + 1)
    mix = np.full_like(t, d[M])
    if M > 0:
        m = np.arange(1, M + 1)
        # cos(2 A m t) summed against the symmetric coefficient pairs
        mix = mix + 2.0 * np.tensordot(d[M + 1:], np.cos(2.0 * A * np.multiply.outer(m, t)), axes=(0, 0))
    out = envelope * mix
    if spec.floor_alpha != 0.0:
        out = out + 2.0 * spec.floor_alpha * B * np.sinc(2.0 * B * t)
    return out


def psi_quadrature(kernel, t, tolerance=DEFAULT_TOLERANCE):
    """Evaluate the kernel at a single time by numerical integration.

    Integrates ``(1/2pi) integral_{-2piB}^{2piB} G(omega) cos(omega t)``
    with adaptive composite Simpson, exploiting evenness to cover only
    ``[0, 2piB]``. Independent of `psi_closed_form`; used as its oracle.

    Raises
    ------
    QuadratureError
        If refinement does not converge; carries the achieved estimate and
        an error bound.
    """
    t = float(t)
    edge = 2.0 * np.pi * kernel.bandwidth_B
    if kernel.spec is None:
        integrand = lambda om: np.cos(om * t)
        knots = None
    else:
        spec = kernel.spec
        # The rectangle term is taken at its open-band limit (alpha) so the
        # integrand is continuous up to the edge; the jump there has measure
        # zero and would otherwise defeat length-proportional tolerances.
        integrand = lambda om: _reciprocal_weight_continuous(spec, om) * np.cos(om * t)
        knots = _spline_knots(spec)
    value = adaptive_simpson(integrand, 0.0, edge, tolerance=tolerance,
                             breakpoints=knots)
    return value / np.pi


def shannon_kernel(T, t):
    """Classical interpolation kernel sinc(t/T) with sinc(0) = 1."""
    if T <= 0:
        raise ValueError(f"spacing T must be positive, got {T}")
    return np.sinc(np.asarray(t, dtype=float) / T)


def _reciprocal_weight_continuous(spec, omega):
    # Spline sum plus the constant alpha floor: equals inverse_weight_eval on
    # the open band, continuously extended to the edge.
    from .weights import _spline_mix

    x = np.asarray(omega, dtype=float) / (2.0 * spec.spacing_A)
    return _spline_mix(spec.degree_K, spec.half_count_M, spec.coeffs_d, x) \
        + spec.floor_alpha


def _spline_knots(spec):
    # Piecewise-polynomial breakpoints of the reciprocal weight on [0, edge]:
    # each translated spline has knots at x = m + j - (K+1)/2 in units of 2A.
    K, M, A = spec.degree_K, spec.half_count_M, spec.spacing_A
    offsets = np.arange(K + 2) - 0.5 * (K + 1)
    x = (np.arange(-M, M + 1)[:, None] + offsets[None, :]).ravel()
    return np.unique(2.0 * A * x)
