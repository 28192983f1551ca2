"""Numpy implementation of the batch Leggett-Garg kernel.

``c_alpha_batch(p0, T10, T21, T20, alpha)`` returns, for every batch index
``i``, the unscaled quantity

    H(E0,E2) + H(E1) - H(E1,E2) - H(E0,E1)

where the tables are built from the initial distribution ``p0`` (shape
``(d,)``) and column-stochastic transition matrices of shape ``(n, d, d)``
with ``T[i, l, k] = p(l | k)``.
"""
from __future__ import annotations

import numpy as np

SHANNON_WINDOW = 1e-9


def _sums(x: np.ndarray, alpha: float, shannon: bool) -> np.ndarray:
    # sum over all but the batch axis of p**alpha, or of -p ln p
    flat = x.reshape(x.shape[0], -1)
    pos = flat > 0.0
    logs = np.log(np.where(pos, flat, 1.0))
    if shannon:
        terms = -flat * logs
    else:
        terms = np.exp(alpha * logs)
    return np.where(pos, terms, 0.0).sum(axis=1)


def c_alpha_batch(p0, T10, T21, T20, alpha: float) -> np.ndarray:
    p0 = np.ascontiguousarray(p0, dtype=float)
    T10 = np.ascontiguousarray(T10, dtype=float)
    T21 = np.ascontiguousarray(T21, dtype=float)
    T20 = np.ascontiguousarray(T20, dtype=float)
    n, d = T10.shape[0], p0.shape[0]
    if T21.shape[0] != n or T20.shape[0] != n:
        raise ValueError("batch sizes differ")
    if T10.shape[1:] != (d, d) or T21.shape[1:] != (d, d) or T20.shape[1:] != (d, d):
        raise ValueError("dimension mismatch")
    shannon = abs(alpha - 1.0) < SHANNON_WINDOW
    # J[i, k, l] = p_in[k] T[i, l, k]
    J01 = p0[None, :, None] * T10.transpose(0, 2, 1)
    J02 = p0[None, :, None] * T20.transpose(0, 2, 1)
    p1 = J01.sum(axis=1)
    J12 = p1[:, :, None] * T21.transpose(0, 2, 1)
    total = _sums(J02, alpha, shannon) + _sums(p1, alpha, shannon) \
        - _sums(J12, alpha, shannon) - _sums(J01, alpha, shannon)
    if shannon:
        return total
    return total / (1.0 - alpha)
