"""Gram system assembly, coefficient solve, and interpolant evaluation.

Samples x[n] at uniform spacing T for logical indices n = -N..N are matched
by the kernel expansion ``xhat(t) = sum_n c_n psi(t - n T)``. Coefficients
come from the symmetric positive-definite Toeplitz system ``R c = x`` with
``R[m, n] = psi((m - n) T)``, optionally ridge-stabilized to
``(R + sigma^2 I) c = x`` for noisy samples. Logical indices are stored at
array offsets 0..2N throughout.
"""

import csv
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve, toeplitz

from .kernel import psi_closed_form, shannon_kernel

SOLVER_RTOL = 1e-9


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    """Gram matrix is numerically singular or indefinite.

    Carries ``condition_estimate`` so callers can report it and decide to
    retry with a ridge term.
    """

    def __init__(self, message, condition_estimate):
        super().__init__(message)
        self.condition_estimate = condition_estimate


@dataclass(frozen=True)
class SampleSet:
    """Uniform samples x[n], n = -N..N, at spacing T seconds."""

    spacing_T: float
    values: np.ndarray

    def __post_init__(self):
        if self.spacing_T <= 0:
            raise ValueError(f"spacing_T must be positive, got {self.spacing_T}")
        v = np.atleast_1d(np.asarray(self.values))
        if v.ndim != 1 or v.size % 2 == 0:
            raise ValueError(f"values must be 1-d with odd length 2N+1, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("sample values must be finite")
        if not np.iscomplexobj(v):
            v = v.astype(float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def half_count_N(self):
        return (self.values.size - 1) // 2

    @property
    def indices(self):
        n = self.half_count_N
        return np.arange(-n, n + 1)

    @property
    def times(self):
        return self.indices * self.spacing_T

    def value(self, n):
        """Sample at logical index n, -N <= n <= N."""
        if abs(n) > self.half_count_N:
            raise IndexError(f"|n| must be <= {self.half_count_N}, got {n}")
        return self.values[n + self.half_count_N]

    @classmethod
    def from_csv(cls, path, spacing_T):
        """Read samples from CSV rows ``(n, value)`` or ``(n, re, im)``."""
        entries = {}
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            next(reader, None)  # header
            for row in reader:
                if not row:
                    continue
                n = int(row[0])
                if len(row) >= 3:
                    entries[n] = complex(float(row[1]), float(row[2]))
                else:
                    entries[n] = float(row[1])
        if not entries:
            raise ValueError(f"no samples in {path}")
        nmax = max(abs(n) for n in entries)
        if sorted(entries) != list(range(-nmax, nmax + 1)):
            raise ValueError("sample indices must cover -N..N without gaps")
        vals = np.array([entries[n] for n in range(-nmax, nmax + 1)])
        return cls(spacing_T, vals)


@dataclass(frozen=True)
class GramMatrix:
    """Kernel Gram system for one (kernel, T, N) configuration.

    ``first_row`` holds psi(k T) for k = 0..2N (the Toeplitz generator);
    ``dense`` is the expanded symmetric matrix; ``cholesky`` caches the
    lower factor when the matrix is numerically positive definite, else
    None. ``condition_estimate`` is the squared ratio of extreme Cholesky
    diagonal entries (an estimate, not the spectral condition number),
    falling back to an eigenvalue ratio when factorization fails.
    """

    kernel: object
    spacing_T: float
    half_count_N: int
    first_row: np.ndarray
    dense: np.ndarray
    cholesky: object
    condition_estimate: float

    @property
    def size(self):
        return 2 * self.half_count_N + 1

    @property
    def times(self):
        return np.arange(-self.half_count_N, self.half_count_N + 1) * self.spacing_T


@dataclass(frozen=True)
class Interpolant:
    """Solved kernel expansion together with its source system."""

    kernel: object
    spacing_T: float
    half_count_N: int
    coeffs_c: np.ndarray
    ridge_sigma2: float
    condition_estimate: float
    gram: GramMatrix


def build_gram(kernel, T, N, require_pd=True):
    """Assemble the Gram matrix of kernel values psi((m - n) T).

    Raises
    ------
    NotPositiveDefiniteError
        When ``require_pd`` and the Cholesky factorization fails; the error
        carries a condition estimate. Pass ``require_pd=False`` to obtain
        the (factorization-less) matrix anyway, e.g. for a ridge retry.
    """
    if T <= 0:
        raise ValueError(f"spacing T must be positive, got {T}")
    if N < 0:
        raise ValueError(f"half count N must be >= 0, got {N}")
    first_row = np.asarray(psi_closed_form(kernel, np.arange(2 * N + 1) * T))
    dense = toeplitz(first_row)
    try:
        factor = cho_factor(dense, lower=True)
        diag = np.diag(factor[0])
        cond = float((np.max(diag) / np.min(diag)) ** 2)
    except np.linalg.LinAlgError:
        factor = None
        cond = _eig_condition(dense)
        if require_pd:
            raise NotPositiveDefiniteError(
                f"Gram matrix is not numerically positive definite at T={T!r}, "
                f"N={N} (condition estimate {cond:.3e}); consider ridge_sigma2 > 0",
                condition_estimate=cond) from None
    first_row.setflags(write=False)
    dense.setflags(write=False)
    return GramMatrix(kernel=kernel, spacing_T=T, half_count_N=N,
                      first_row=first_row, dense=dense, cholesky=factor,
                      condition_estimate=cond)


def solve(gram, samples, ridge_sigma2=0.0):
    """Solve (R + sigma^2 I) c = x and return the interpolant."""
    if ridge_sigma2 < 0:
        raise ValueError(f"ridge_sigma2 must be >= 0, got {ridge_sigma2}")
    if samples.half_count_N != gram.half_count_N:
        raise ValueError(
            f"sample count mismatch: gram N={gram.half_count_N}, "
            f"samples N={samples.half_count_N}")
    if not np.isclose(samples.spacing_T, gram.spacing_T, rtol=1e-12, atol=0.0):
        raise ValueError("sample spacing does not match the Gram system")
    if ridge_sigma2 > 0:
        try:
            factor = cho_factor(gram.dense + ridge_sigma2 * np.eye(gram.size),
                                lower=True)
        except np.linalg.LinAlgError:
            raise NotPositiveDefiniteError(
                "ridge-augmented Gram matrix failed to factor",
                condition_estimate=gram.condition_estimate) from None
    else:
        if gram.cholesky is None:
            raise NotPositiveDefiniteError(
                "Gram matrix has no Cholesky factorization; solve with "
                "ridge_sigma2 > 0 instead",
                condition_estimate=gram.condition_estimate)
        factor = gram.cholesky
    c = _cho_solve_any(factor, samples.values)
    c.setflags(write=False)
    return Interpolant(kernel=gram.kernel, spacing_T=gram.spacing_T,
                       half_count_N=gram.half_count_N, coeffs_c=c,
                       ridge_sigma2=ridge_sigma2,
                       condition_estimate=gram.condition_estimate, gram=gram)


def evaluate(interp, t):
    """Evaluate the kernel expansion sum_n c_n psi(t - n T) at ``t``."""
    t = np.asarray(t, dtype=float)
    nodes = np.arange(-interp.half_count_N, interp.half_count_N + 1) * interp.spacing_T
    psi_mat = psi_closed_form(interp.kernel, t[..., None] - nodes)
    return psi_mat @ interp.coeffs_c


def cardinal_coeffs(gram, n):
    """Row n of the inverse Gram matrix (solve R p = e_n)."""
    N = gram.half_count_N
    if abs(n) > N:
        raise IndexError(f"|n| must be <= {N}, got {n}")
    if gram.cholesky is None:
        raise NotPositiveDefiniteError(
            "cardinal functions need an invertible Gram matrix",
            condition_estimate=gram.condition_estimate)
    e = np.zeros(gram.size)
    e[n + N] = 1.0
    return cho_solve(gram.cholesky, e)


def cardinal(gram, n, t):
    """Cardinal interpolation function u_n(t), satisfying u_n(mT) = delta[n-m]."""
    p = cardinal_coeffs(gram, n)
    t = np.asarray(t, dtype=float)
    psi_mat = psi_closed_form(gram.kernel, t[..., None] - gram.times)
    return psi_mat @ p


def shift_invariant_approx(gram, samples, t):
    """Approximate interpolant using only shifts of the center cardinal.

    Evaluates ``sum_n x[n] u_0(t - n T)``; exact at the nodes and close to
    the full solve away from the window edges, at the cost of a single
    inverse-row computation.
    """
    if samples.half_count_N != gram.half_count_N:
        raise ValueError("sample count mismatch with the Gram system")
    t = np.asarray(t, dtype=float)
    T = gram.spacing_T
    total = np.zeros(t.shape, dtype=samples.values.dtype)
    p0 = cardinal_coeffs(gram, 0)
    for n, xn in zip(samples.indices, samples.values):
        psi_mat = psi_closed_form(gram.kernel, (t - n * T)[..., None] - gram.times)
        total = total + xn * (psi_mat @ p0)
    return total


def truncated_shannon(samples, t):
    """Classical truncated interpolation sum_n x[n] sinc(t/T - n)."""
    t = np.asarray(t, dtype=float)
    T = samples.spacing_T
    sinc_mat = shannon_kernel(T, t[..., None] - samples.times)
    return sinc_mat @ samples.values


def write_evaluations_csv(path, t, values):
    """Write interpolant evaluations as CSV rows ``(t, re, im)``."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    values = np.atleast_1d(np.asarray(values))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "re", "im"])
        for tv, val in zip(t, values):
            cval = complex(val)
            writer.writerow([f"{tv:.17g}", f"{cval.real:.17g}",
                             f"{cval.imag:.17g}"])


def wnorm_sq(interp):
    """Squared weighted-space norm of the interpolant, Re(c^H R c)."""
    c = interp.coeffs_c
    return float(np.real(np.conj(c) @ (interp.gram.dense @ c)))


def node_residual(interp, samples):
    """Max-norm residual of the (possibly ridged) system at the nodes."""
    lhs = interp.gram.dense @ interp.coeffs_c + interp.ridge_sigma2 * interp.coeffs_c
    return float(np.max(np.abs(lhs - samples.values)))


def _cho_solve_any(factor, rhs):
    if np.iscomplexobj(rhs):
        return cho_solve(factor, rhs.real).astype(complex) + 1j * cho_solve(factor, rhs.imag)
    return cho_solve(factor, rhs)


def _eig_condition(dense):
    eigs = np.abs(np.linalg.eigvalsh(dense))
    smallest = float(np.min(eigs))
    if smallest == 0.0:
        return float("inf")
    return float(np.max(eigs) / smallest)
