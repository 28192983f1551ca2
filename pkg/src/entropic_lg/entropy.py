"""Tsallis entropy kernels for finite discrete distributions.

Entropies are measured in nats (the alpha=1 branch uses natural logs).
The order ``alpha`` must be positive; near ``alpha = 1`` the Shannon
branch is used to avoid cancellation in ``(sum p**alpha - 1) / (1 - alpha)``.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, ParameterError, ValidationError

#: |alpha - 1| below this selects the Shannon branch.
SHANNON_WINDOW = 1e-9
#: accepted deviation of a total probability from one.
NORM_TOL = 1e-9
#: negative entries down to -CLIP_TOL are treated as rounding noise and zeroed.
CLIP_TOL = 1e-12


def is_shannon(alpha: float) -> bool:
    return abs(alpha - 1.0) < SHANNON_WINDOW


def check_order(alpha: float, minimum: float | None = None) -> float:
    """Validate an entropic order and return it as a float.

    ``minimum`` is an inclusive lower bound for operations that are only
    meaningful for ``alpha >= minimum`` (the Leggett-Garg bounds need 1).
    """
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0.0:
        raise ParameterError(f"entropic order must be positive and finite, got {alpha!r}")
    if minimum is not None and alpha < minimum:
        raise ParameterError(f"entropic order must be >= {minimum}, got {alpha!r}")
    return alpha


def as_distribution(p, *, ndim: int | None = None, name: str = "distribution") -> np.ndarray:
    """Return ``p`` as a float array after checking it is a probability distribution.

    Tiny negative entries (rounding dirt from complex arithmetic) are clipped
    to zero; anything else outside ``[0, 1]`` or a total off by more than
    ``NORM_TOL`` raises :class:`ValidationError`.
    """
    arr = np.array(p, dtype=float)
    if ndim is not None and arr.ndim != ndim:
        raise ValidationError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValidationError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} has non-finite entries")
    if np.any(arr < -CLIP_TOL):
        raise ValidationError(f"{name} has negative entries (min {arr.min():.3g})")
    if np.any(arr > 1.0 + NORM_TOL):
        raise ValidationError(f"{name} has entries above one")
    arr[arr < 0.0] = 0.0
    total = arr.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise ValidationError(f"{name} sums to {total!r}, not 1")
    return arr


def alpha_log(xi: float, alpha: float) -> float:
    """Deformed logarithm ``(xi**(1 - alpha) - 1) / (1 - alpha)``; ``ln xi`` at alpha=1."""
    alpha = check_order(alpha)
    if not xi > 0.0:
        raise DomainError(f"alpha-logarithm needs a positive argument, got {xi!r}")
    if is_shannon(alpha):
        return math.log(xi)
    return math.expm1((1.0 - alpha) * math.log(xi)) / (1.0 - alpha)


def _entropy_unchecked(p: np.ndarray, alpha: float) -> float:
    # p is a flat, validated distribution. Zero entries are dropped so that
    # 0**alpha = 0 and 0 ln 0 = 0 hold exactly.
    nz = p[p > 0.0]
    logs = np.log(nz)
    if is_shannon(alpha):
        return float(-(nz * logs).sum())
    return float((np.exp(alpha * logs).sum() - 1.0) / (1.0 - alpha))


def tsallis_entropy(p, alpha: float) -> float:
    """Tsallis alpha-entropy ``(sum p**alpha - 1) / (1 - alpha)`` of a distribution."""
    alpha = check_order(alpha)
    return _entropy_unchecked(as_distribution(p, ndim=1).ravel(), alpha)


def joint_entropy(table, alpha: float) -> float:
    """Entropy of a joint table, i.e. of its flattened distribution."""
    alpha = check_order(alpha)
    return _entropy_unchecked(as_distribution(table, ndim=2, name="joint table").ravel(), alpha)


def conditional_entropy(table, alpha: float, given: str = "columns") -> float:
    """Conditional alpha-entropy ``sum_y p(y)**alpha H_alpha(X|y)``.

    ``table[x, y]`` is a joint distribution; ``given`` names which index is
    conditioned on. With ``given="columns"`` this is H(row | column).
    Outcomes with p(y) = 0 are skipped.
    """
    alpha = check_order(alpha)
    q = as_distribution(table, ndim=2, name="joint table")
    if given == "rows":
        q = q.T
    elif given != "columns":
        raise ParameterError(f"given must be 'rows' or 'columns', got {given!r}")
    total = 0.0
    for y, py in enumerate(q.sum(axis=0)):
        if py <= 0.0:
            continue
        cond = q[:, y] / py
        weight = py if is_shannon(alpha) else py**alpha
        total += weight * _entropy_unchecked(cond, alpha)
    return total


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"efficiency must lie in [0, 1], got {eta!r}")
    return eta


def binary_entropy(eta: float, alpha: float) -> float:
    """Entropy of the two-point distribution ``(eta, 1 - eta)``."""
    eta = _check_eta(eta)
    alpha = check_order(alpha)
    return _entropy_unchecked(np.array([eta, 1.0 - eta]), alpha)


def quaternary_entropy(eta: float, alpha: float) -> float:
    """Entropy of ``(eta**2, eta(1-eta), eta(1-eta), (1-eta)**2)``.

    Equals twice :func:`binary_entropy` in the Shannon case.
    """
    eta = _check_eta(eta)
    alpha = check_order(alpha)
    m = eta * (1.0 - eta)
    return _entropy_unchecked(np.array([eta * eta, m, m, (1.0 - eta) ** 2]), alpha)
