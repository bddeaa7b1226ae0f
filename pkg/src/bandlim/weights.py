"""Frequency weights parameterized through a B-spline expansion.

A weight function W is represented through its reciprocal

    G(omega) = sum_m d_m beta_K(omega / (2 A) - m) + alpha beta_0(omega / (4 pi B))

on the angular-frequency band ``[-2 pi B, 2 pi B]``, with 2M+1 translated
degree-K splines at spacing ``A = 2 pi B / (K + 2M + 1)`` plus a full-band
rectangle of height ``alpha`` that keeps G strictly positive. Coefficients
are real and symmetric (``d[-m] == d[m]``), which makes the time-domain
kernel real and even.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np

from .bsplines import bspline_eval

VALIDATION_GRID_SIZE = 4096
POSITIVITY_RTOL = 1e-9


class BandError(ValueError):
    """Frequency argument outside the representable band."""


class WeightFitError(RuntimeError):
    """Least-squares weight fit produced a nonpositive reciprocal weight."""


@dataclass(frozen=True)
class WeightSpec:
    """B-spline parameterization of a reciprocal frequency weight.

    Parameters
    ----------
    bandwidth_B : float
        Bandwidth in Hz; the band edge sits at angular frequency 2 pi B.
    degree_K : int
        B-spline degree, >= 0.
    half_count_M : int
        2M+1 splines are used.
    coeffs_d : ndarray
        Real symmetric coefficients for m = -M..M, stored at offsets 0..2M.
    floor_alpha : float
        Coefficient of the full-band rectangle term, >= 0.
    """

    bandwidth_B: float
    degree_K: int
    half_count_M: int
    coeffs_d: np.ndarray
    floor_alpha: float = 0.0

    def __post_init__(self):
        if self.bandwidth_B <= 0:
            raise ValueError(f"bandwidth_B must be positive, got {self.bandwidth_B}")
        if self.degree_K < 0 or self.half_count_M < 0:
            raise ValueError("degree_K and half_count_M must be nonnegative")
        if self.floor_alpha < 0:
            raise ValueError(f"floor_alpha must be >= 0, got {self.floor_alpha}")
        d = np.atleast_1d(np.asarray(self.coeffs_d, dtype=float))
        expected = 2 * self.half_count_M + 1
        if d.shape != (expected,):
            raise ValueError(
                f"coeffs_d must have length 2M+1 = {expected}, got shape {d.shape}")
        if not np.all(np.isfinite(d)):
            raise ValueError("coeffs_d must be finite")
        scale = np.max(np.abs(d)) or 1.0
        if np.max(np.abs(d - d[::-1])) > 1e-12 * scale:
            raise ValueError("coeffs_d must be symmetric: d[-m] == d[m]")
        d.setflags(write=False)
        object.__setattr__(self, "coeffs_d", d)
        lo, hi = self.reciprocal_range()
        if not lo > POSITIVITY_RTOL * hi:
            raise ValueError(
                "reciprocal weight is not strictly positive on the band "
                f"(min {lo:.3e} vs max {hi:.3e})")

    @property
    def spacing_A(self):
        """Spline spacing in angular frequency: 2 pi B / (K + 2M + 1)."""
        return 2.0 * np.pi * self.bandwidth_B / (self.degree_K + 2 * self.half_count_M + 1)

    @property
    def band_edge(self):
        """Band edge in angular frequency, 2 pi B."""
        return 2.0 * np.pi * self.bandwidth_B

    def coeff(self, m):
        """Coefficient d_m for a logical index -M <= m <= M."""
        if abs(m) > self.half_count_M:
            raise IndexError(f"|m| must be <= {self.half_count_M}, got {m}")
        return float(self.coeffs_d[m + self.half_count_M])

    def validation_grid(self):
        """Uniform interior grid on the open band used for positivity checks.

        The spline expansion vanishes continuously at the exact band edges,
        so those two measure-zero points are excluded.
        """
        edge = self.band_edge
        return np.linspace(-edge, edge, VALIDATION_GRID_SIZE + 2)[1:-1]

    def reciprocal_range(self):
        """(min, max) of the reciprocal weight on the validation grid."""
        g = inverse_weight_eval(self, self.validation_grid())
        return float(np.min(g)), float(np.max(g))

    def to_dict(self):
        return {
            "bandwidth_B": self.bandwidth_B,
            "degree_K": self.degree_K,
            "half_count_M": self.half_count_M,
            "coeffs_d": [float(v) for v in self.coeffs_d],
            "floor_alpha": self.floor_alpha,
        }

    @classmethod
    def from_dict(cls, doc):
        try:
            return cls(
                bandwidth_B=float(doc["bandwidth_B"]),
                degree_K=int(doc["degree_K"]),
                half_count_M=int(doc["half_count_M"]),
                coeffs_d=np.asarray(doc["coeffs_d"], dtype=float),
                floor_alpha=float(doc["floor_alpha"]),
            )
        except KeyError as exc:
            raise ValueError(f"weight document missing key {exc}") from exc

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class DensityGrid:
    """Target spectral density sampled on an increasing frequency grid."""

    omegas: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        om = np.atleast_1d(np.asarray(self.omegas, dtype=float))
        va = np.atleast_1d(np.asarray(self.values, dtype=float))
        if om.shape != va.shape or om.ndim != 1:
            raise ValueError("omegas and values must be 1-d arrays of equal length")
        if om.size < 2:
            raise ValueError("density grid needs at least two nodes")
        if not np.all(np.diff(om) > 0):
            raise ValueError("omegas must be strictly increasing")
        if not np.all(np.isfinite(va)) or np.any(va < 0):
            raise ValueError("density values must be finite and nonnegative")
        om.setflags(write=False)
        va.setflags(write=False)
        object.__setattr__(self, "omegas", om)
        object.__setattr__(self, "values", va)

    @classmethod
    def from_csv(cls, path):
        omegas, values = [], []
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise ValueError(f"empty density file: {path}")
            for row in reader:
                if not row:
                    continue
                omegas.append(float(row[0]))
                values.append(float(row[1]))
        return cls(np.asarray(omegas), np.asarray(values))

    def to_csv(self, path):
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["omega", "value"])
            for om, va in zip(self.omegas, self.values):
                writer.writerow([f"{om:.17g}", f"{va:.17g}"])


def identity_transform(tau):
    """Default density transform: pass the target density through unchanged."""
    return np.asarray(tau, dtype=float)


def power_transform(p, eps):
    """Density transform ``tau -> (tau + eps) ** (p/2 - 1)``.

    Increasing for p > 2, compressive/decreasing otherwise; ``eps > 0``
    keeps the transform finite at zero density.
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    exponent = 0.5 * p - 1.0

    def theta(tau):
        return (np.asarray(tau, dtype=float) + eps) ** exponent

    return theta


def inverse_weight_eval(spec, omega):
    """Reciprocal weight G(omega) = 1/W(omega) for in-band frequencies.

    Raises
    ------
    BandError
        If any ``|omega|`` exceeds the band edge 2 pi B, where the weight
        is undefined.
    """
    omega = np.asarray(omega, dtype=float)
    edge = spec.band_edge
    if np.any(np.abs(omega) > edge * (1 + 1e-15)):
        worst = float(np.max(np.abs(omega)))
        raise BandError(f"|omega| = {worst:.6g} outside band edge {edge:.6g}")
    total = _spline_mix(spec.degree_K, spec.half_count_M, spec.coeffs_d,
                        omega / (2.0 * spec.spacing_A))
    if spec.floor_alpha != 0.0:
        total = total + spec.floor_alpha * bspline_eval(0, omega / (2.0 * edge))
    return total


def _spline_mix(degree_K, half_count_M, coeffs, x):
    # Each point sees at most degree_K + 1 translates with nonzero support;
    # gather those coefficients instead of forming the full basis matrix.
    x = np.asarray(x, dtype=float)
    first = np.floor(x - 0.5 * (degree_K + 1)).astype(int) + 1
    total = np.zeros(x.shape)
    for j in range(degree_K + 1):
        m = first + j
        in_range = np.abs(m) <= half_count_M
        dm = np.where(in_range, coeffs[np.clip(m + half_count_M, 0,
                                               2 * half_count_M)], 0.0)
        total += dm * bspline_eval(degree_K, x - m)
    return total


def fit_weights(target, bandwidth_B, degree_K, half_count_M,
                floor_alpha=None, transform=None):
    """Fit symmetric spline coefficients to a transformed target density.

    Ordinary least squares matches ``G(omega) approx theta(Z(omega)) -
    alpha * rect`` at the grid nodes, then symmetrizes the coefficient
    vector and validates strict positivity of the result.

    Parameters
    ----------
    target : DensityGrid
        Density samples covering the band.
    bandwidth_B : float
        Band edge / (2 pi), in Hz.
    degree_K, half_count_M : int
        Basis size parameters.
    floor_alpha : float, optional
        Rectangle-term coefficient. Defaults to 1e-3 * max(theta(Z)).
    transform : callable, optional
        Strictly increasing map applied to the density values (caller's
        responsibility); identity when omitted. See `power_transform`.

    Raises
    ------
    WeightFitError
        If the fitted reciprocal weight is nonpositive anywhere on the
        validation grid (the offending frequency is reported).
    """
    theta = transform if transform is not None else identity_transform
    edge = 2.0 * np.pi * bandwidth_B
    if np.any(np.abs(target.omegas) > edge * (1 + 1e-12)):
        raise BandError("density grid extends beyond the band edge")
    n_basis = 2 * half_count_M + 1
    if target.omegas.size < n_basis:
        raise ValueError(
            f"need at least {n_basis} grid nodes to fit {n_basis} coefficients, "
            f"got {target.omegas.size}")

    y = theta(target.values)
    if floor_alpha is None:
        floor_alpha = 1e-3 * float(np.max(y))
    spacing = edge / (degree_K + 2 * half_count_M + 1)
    x = target.omegas / (2.0 * spacing)
    ms = np.arange(-half_count_M, half_count_M + 1)
    design = np.stack([bspline_eval(degree_K, x - m) for m in ms], axis=1)
    rhs = y - floor_alpha * bspline_eval(0, target.omegas / (2.0 * edge))
    d, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    d = 0.5 * (d + d[::-1])

    _validate_positive(bandwidth_B, degree_K, half_count_M, d, floor_alpha)
    return WeightSpec(bandwidth_B, degree_K, half_count_M, d, floor_alpha)


def weights_from_density(density, bandwidth_B, kind="psd",
                         degree_K=3, half_count_M=11, floor_alpha=None):
    """Fit weights whose reciprocal tracks a PSD or squared filter response.

    With ``kind="psd"`` the reciprocal weight approximates the power
    spectral density S (so W = 1/S); with ``kind="filter_magnitude_sq"``
    it approximates |H|^2. Numerically both are an identity-transform fit.
    """
    if kind not in ("psd", "filter_magnitude_sq"):
        raise ValueError(f"unknown density kind {kind!r}")
    if np.min(density.values) <= 0:
        raise WeightFitError(
            "density contains a zero: the weight would be unbounded, "
            "violating the lower positivity bound")
    return fit_weights(density, bandwidth_B, degree_K, half_count_M,
                       floor_alpha=floor_alpha, transform=identity_transform)


def gaussian_smooth(grid, sigma):
    """Smooth a density grid by discrete convolution with a Gaussian.

    Useful before fitting: features narrower than the spline spacing make
    the least-squares fit ring (and can push the fitted reciprocal weight
    negative), so targets are blurred to the basis resolution first.
    Requires a uniformly spaced grid.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    steps = np.diff(grid.omegas)
    if np.max(steps) - np.min(steps) > 1e-9 * np.max(steps):
        raise ValueError("gaussian_smooth requires a uniform grid")
    step = float(steps[0])
    half = int(np.ceil(4.0 * sigma / step))
    kk = np.arange(-half, half + 1) * step
    kern = np.exp(-0.5 * (kk / sigma) ** 2)
    kern /= kern.sum()
    smoothed = np.convolve(grid.values, kern, mode="same")
    return DensityGrid(grid.omegas, np.maximum(smoothed, 0.0))


def normalized(spec):
    """Rescale a spec so its reciprocal weight peaks at 1 on the band.

    Scaling W by a constant leaves the interpolant unchanged; a unit peak
    keeps kernel amplitudes and norm constants on a common scale.
    """
    _, peak = spec.reciprocal_range()
    return WeightSpec(spec.bandwidth_B, spec.degree_K, spec.half_count_M,
                      spec.coeffs_d / peak, spec.floor_alpha / peak)


def _validate_positive(bandwidth_B, degree_K, half_count_M, d, alpha):
    edge = 2.0 * np.pi * bandwidth_B
    grid = np.linspace(-edge, edge, VALIDATION_GRID_SIZE + 2)[1:-1]
    spacing = edge / (degree_K + 2 * half_count_M + 1)
    g = _spline_mix(degree_K, half_count_M, d, grid / (2.0 * spacing)) + alpha
    floor = POSITIVITY_RTOL * float(np.max(g))
    bad = g <= floor
    if np.any(bad):
        worst = grid[bad][int(np.argmin(g[bad]))]
        raise WeightFitError(
            f"fitted reciprocal weight is nonpositive near omega = {worst:.6g} "
            f"(min {float(np.min(g)):.3e}); raise floor_alpha or smooth the target")
