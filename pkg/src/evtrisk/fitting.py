"""Threshold selection and probability-weighted-moment tail fitting.

The fitting recipe targets very small samples (a few dozen points):

1. take the threshold at the 0.90 empirical quantile (1-based order
   statistic ``ceil(0.90 * m)``), so roughly the top tenth of the sample
   is treated as tail data;
2. count the strict exceedances above the threshold (ties are excluded
   and flagged);
3. estimate the GPD shape and scale of the exceedances from their first
   two probability-weighted moments.

With exceedances ordered largest first, ``e[0] >= e[1] >= ...``, the two
moments are

    P = mean(e)                    (plain average),
    Q = mean((i / k) * e[i])       (weight i/k on the (i+1)-th largest),

and the fitted parameters are ``shape = (P - 4Q)/(P - 2Q)`` and
``scale = 2PQ/(P - 2Q)``.  For strictly positive exceedances ``P - 2Q``
is positive (the weights decrease while the values decrease, so the
weighted sum cannot drop below P/k), which makes the fitted shape
strictly less than 1 and the scale strictly positive -- exactly the
conditions the closed-form risk functionals require.  The plotting-
position variant of the weights ((i - 0.35)/k, Hosking-Wallis) is not
implemented; it loses the guaranteed shape < 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tail_model import TailParams


class FitError(ValueError):
    """The sample cannot support a tail fit (e.g. fewer than 2 exceedances)."""


def _ceil_scaled(x: float) -> int:
    """``ceil(x)`` with snapping for products like 0.9*m that should be integral."""
    nearest = round(x)
    if abs(x - nearest) < 1e-9:
        return int(nearest)
    return int(math.ceil(x))


@dataclass(frozen=True)
class SortedSample:
    """A data set held as ascending order statistics plus its mean.

    Build via :func:`sort_and_summarize`; direct construction validates that
    ``values`` is ascending and finite and that ``mean`` matches.
    """

    values: np.ndarray
    mean: float

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("sample must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(v)):
            raise ValueError("sample contains non-finite values")
        if np.any(np.diff(v) < 0.0):
            raise ValueError("values must be ascending; use sort_and_summarize")
        if not math.isclose(self.mean, float(v.mean()),
                            rel_tol=1e-12, abs_tol=1e-12):
            raise ValueError("mean is inconsistent with values")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def m(self) -> int:
        """Sample size."""
        return int(self.values.size)


@dataclass(frozen=True)
class FitReport:
    """Result of a tail fit: parameters plus bookkeeping."""

    params: TailParams
    exceedances_used: int
    warnings: tuple[str, ...] = ()


def sort_and_summarize(data) -> SortedSample:
    """Sort a raw data sequence ascending and attach its mean."""
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("data must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError("data contains non-finite values")
    ordered = np.sort(arr)
    return SortedSample(values=ordered, mean=float(ordered.mean()))


def select_threshold(sample: SortedSample, q: float = 0.90) -> tuple[float, int]:
    """Pick the tail threshold and count its strict exceedances.

    Parameters
    ----------
    sample : SortedSample
        At least 10 points, so the quantile index is interior.
    q : float, optional
        Empirical quantile level for the threshold; the default 0.90
        makes the threshold an estimate of the cost exceeded 10% of the
        time.

    Returns
    -------
    (threshold, n_exceed) : tuple of float and int
        ``threshold`` is the order statistic at 1-based index
        ``ceil(q * m)``; ``n_exceed`` counts values strictly above it.

    Raises
    ------
    FitError
        If fewer than 2 values exceed the threshold (the moment fit is
        degenerate below that, and impossible with none).
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile level must be in (0, 1), got {q}")
    if sample.m < 10:
        raise ValueError(f"need at least 10 points to place a threshold, got {sample.m}")
    idx = _ceil_scaled(q * sample.m)
    threshold = float(sample.values[idx - 1])
    n_exceed = int(np.count_nonzero(sample.values > threshold))
    if n_exceed == 0:
        raise FitError("no strict exceedances above the threshold")
    if n_exceed < 2:
        raise FitError(
            f"only {n_exceed} exceedance above the threshold; at least 2 are needed"
        )
    return threshold, n_exceed


def pwm_fit(sample: SortedSample, threshold: float, n_exceed: int) -> FitReport:
    """Fit GPD shape and scale to the exceedances by probability-weighted moments.

    ``n_exceed`` must be at least 2 and the top ``n_exceed`` order statistics
    must all exceed ``threshold`` strictly (as produced by
    :func:`select_threshold`).
    """
    k, m = int(n_exceed), sample.m
    if k < 2:
        raise FitError(f"need at least 2 exceedances, got {k}")
    if k >= m:
        raise ValueError(f"exceedance count {k} must be smaller than the sample size {m}")
    top = sample.values[m - k:]
    if not np.all(top > threshold):
        raise ValueError("the top n_exceed values must exceed the threshold strictly")

    excess_desc = top[::-1] - threshold
    p_mom = float(excess_desc.mean())
    q_mom = float(np.mean(np.arange(k) / k * excess_desc))
    denom = p_mom - 2.0 * q_mom
    if denom <= 0.0:
        # Impossible for strictly positive exceedances; a failure here means
        # the inputs violated the contract above.
        raise FitError("degenerate probability-weighted moments (P - 2Q <= 0)")
    shape = (p_mom - 4.0 * q_mom) / denom
    scale = 2.0 * p_mom * q_mom / denom

    warnings = []
    if np.count_nonzero(sample.values == threshold) > 1:
        warnings.append("tied-threshold")

    params = TailParams(k=k, m=m, gamma=shape, threshold=threshold, scale=scale)
    return FitReport(params=params, exceedances_used=k, warnings=tuple(warnings))


def fit_tail(sample: SortedSample, q: float = 0.90) -> FitReport:
    """Select the threshold and fit the tail in one call."""
    threshold, n_exceed = select_threshold(sample, q)
    return pwm_fit(sample, threshold, n_exceed)
