"""Centered B-spline basis evaluation.

The degree-``K`` centered B-spline is the (K+1)-fold self-convolution of the
unit rectangle, supported on ``|x| < (K+1)/2``. Degrees 0..3 use explicit
piecewise polynomials; higher degrees use the two-term recurrence seeded at
degree 3 so that no evaluation ever touches the rectangle's jump points.
"""

import numpy as np


def bspline_eval(degree_K, x):
    """Evaluate the centered B-spline of degree ``degree_K`` at ``x``.

    Parameters
    ----------
    degree_K : int
        Spline degree, >= 0.
    x : float or array_like
        Evaluation points.

    Returns
    -------
    ndarray
        Spline values, zero for ``|x| >= (degree_K + 1)/2``. Shape follows
        ``x`` (0-d array for scalar input).
    """
    if degree_K < 0:
        raise ValueError(f"B-spline degree must be >= 0, got {degree_K}")
    x = np.asarray(x, dtype=float)
    if degree_K == 0:
        return np.where(np.abs(x) < 0.5, 1.0, 0.0)
    if degree_K == 1:
        return np.maximum(0.0, 1.0 - np.abs(x))
    if degree_K == 2:
        return _beta2(x)
    if degree_K == 3:
        return _beta3(x)
    return _recurrence(degree_K, x)


def _beta2(x):
    # branchless one-sided-power form: (r(1.5)^2 - 3 r(0.5)^2) / 2,
    # r(h) = max(0, h - |x|)
    ax = np.abs(x)
    outer = np.maximum(1.5 - ax, 0.0)
    inner = np.maximum(0.5 - ax, 0.0)
    return 0.5 * (outer * outer - 3.0 * inner * inner)


def _beta3(x):
    # branchless: (r(2)^3 - 4 r(1)^3) / 6
    ax = np.abs(x)
    outer = np.maximum(2.0 - ax, 0.0)
    inner = np.maximum(1.0 - ax, 0.0)
    return (outer * outer * outer - 4.0 * inner * inner * inner) / 6.0


def _recurrence(k, x):
    # beta^k(x) = [ (h + x) beta^{k-1}(x + 1/2) + (h - x) beta^{k-1}(x - 1/2) ] / k
    # with h = (k+1)/2. Bottoming out at the continuous degree-3 piece keeps
    # every intermediate evaluation away from the degree-0 discontinuity.
    if k == 3:
        return _beta3(x)
    h = 0.5 * (k + 1)
    left = _recurrence(k - 1, x + 0.5)
    right = _recurrence(k - 1, x - 0.5)
    return ((h + x) * left + (h - x) * right) / k
