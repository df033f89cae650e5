"""Small dense matrix utilities for Markov jump processes.

An intensity matrix Q is an n-by-n rate matrix: entry (i, j) with i != j is
the rate of jumping from state i to state j per unit time, and the diagonal
holds the negated exit rates, so every row sums to zero.  All matrices here
are tiny (single-digit state counts), so everything is plain dense numpy.
"""

import numpy as np

from . import errors

ROW_SUM_TOL = 1e-12
STOCHASTIC_TOL = 1e-10

# Order of the truncated series applied to the scaled matrix.  After scaling
# the max exit rate to <= 0.5 the series terms decay faster than 1/k!, so 20
# terms are far below float64 resolution.
_SERIES_ORDER = 20
_MAX_SCALED_RATE = 0.5


def validate_intensity(m) -> np.ndarray:
    """Check that `m` is a valid intensity matrix and return it as float64.

    Raises NegativeRate for negative off-diagonal entries and RowSumNonzero
    when any row sum exceeds the 1e-12 tolerance.  Nothing is rescaled.
    """
    q = np.asarray(m, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise errors.DomainMismatch(f"intensity matrix must be square, got shape {q.shape}")
    n = q.shape[0]
    if n < 1:
        raise errors.DomainMismatch("intensity matrix must have at least one state")
    off = q[~np.eye(n, dtype=bool)]
    if off.size and off.min() < 0:
        raise errors.NegativeRate(f"negative off-diagonal rate {off.min()}")
    sums = q.sum(axis=1)
    bad = np.abs(sums).max(initial=0.0)
    if bad > ROW_SUM_TOL:
        raise errors.RowSumNonzero(f"row sums must be 0, worst deviation {bad}")
    out = q.copy()
    out.flags.writeable = False
    return out


def validate_stochastic(m, tol=STOCHASTIC_TOL) -> np.ndarray:
    """Check that `m` is row-stochastic within `tol` and return it."""
    p = np.asarray(m, dtype=float)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise errors.DomainMismatch(f"stochastic matrix must be square, got shape {p.shape}")
    if p.min(initial=0.0) < 0 or p.max(initial=1.0) > 1 + tol:
        raise errors.ValidationError("stochastic entries must lie in [0, 1]")
    dev = np.abs(p.sum(axis=1) - 1.0).max(initial=0.0)
    if dev > tol:
        raise errors.ValidationError(f"rows must sum to 1, worst deviation {dev}")
    return p


def matrix_exp(q, dt: float) -> np.ndarray:
    """Transition probabilities exp(Q*dt) of a jump process over duration dt.

    Scaling and squaring: Q*dt is halved until the largest exit rate is at
    most 0.5, a fixed-order truncated series is evaluated, and the result is
    squared back up.  Round-off negatives are clamped to zero and rows are
    renormalized so the output is always a valid stochastic matrix.
    """
    q = validate_intensity(q)
    if dt < 0:
        raise ValueError(f"duration must be nonnegative, got {dt}")
    n = q.shape[0]
    a = q * dt
    max_rate = float(np.max(-np.diag(a), initial=0.0))
    squarings = 0
    while max_rate > _MAX_SCALED_RATE * (2 ** squarings):
        squarings += 1
    a = a / (2 ** squarings)

    out = np.eye(n)
    term = np.eye(n)
    for k in range(1, _SERIES_ORDER + 1):
        term = term @ a / k
        out = out + term
    for _ in range(squarings):
        out = out @ out

    np.clip(out, 0.0, None, out=out)
    out /= out.sum(axis=1, keepdims=True)
    return out


def embedded_transitions(q) -> np.ndarray:
    """Jump-chain transition probabilities q_ij / q_i with a zero diagonal.

    Raises AbsorbingState if any state has zero exit rate.
    """
    q = validate_intensity(q)
    exit_rates = -np.diag(q)
    if np.any(exit_rates <= 0):
        state = int(np.argmin(exit_rates))
        raise errors.AbsorbingState(f"state {state} has zero exit rate")
    p = q / exit_rates[:, None]
    np.fill_diagonal(p, 0.0)
    return p


def sample_sojourn(rate: float, rng: np.random.Generator) -> float:
    """Draw a sojourn time from the exponential law with the given exit rate."""
    if rate <= 0:
        raise errors.NonpositiveRate(f"sojourn rate must be positive, got {rate}")
    return float(rng.exponential(1.0 / rate))
