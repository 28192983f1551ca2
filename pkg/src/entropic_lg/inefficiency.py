"""Lossy detectors: every measurement clicks with probability ``eta``.

A missed detection is recorded as an extra "no-click" outcome, stored as the
last index of the enlarged distribution, so the ordinary entropy kernels
apply unchanged.

With lossy detectors the observed Leggett-Garg quantity is

    C_eta = eta**(2 alpha) C_alpha - Delta_alpha(eta)

where ``Delta`` depends only on ``eta``, ``alpha`` and H(E1). That identity
assumes the t2 marginal of the (E0, E2) table has the same entropy as the t2
marginal of the (E1, E2) table. This holds for any single three-time joint
distribution. It fails for the quantum protocol, where the two marginals
come from different experiments. :func:`lg_inefficient` therefore reports
the direct value, the closed form and the exact mismatch term separately.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import (
    as_distribution, binary_entropy, check_order, joint_entropy, quaternary_entropy,
    tsallis_entropy,
)
from .errors import DomainError
from .lg import EPSILON, lg_report
from .quantum import ProtocolSpec, protocol_joints


def _eta(eta: float) -> float:
    eta = float(eta)
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"efficiency must lie in [0, 1], got {eta!r}")
    return eta


def distort_single(p, eta: float) -> np.ndarray:
    """``(eta p_1, ..., eta p_d, 1 - eta)``."""
    eta = _eta(eta)
    p = as_distribution(p, ndim=1)
    return np.append(eta * p, 1.0 - eta)


def distort_pair(table, eta: float) -> np.ndarray:
    """Joint table of two lossy detectors, with no-click as last row and column."""
    eta = _eta(eta)
    q = as_distribution(table, ndim=2, name="joint table")
    da, db = q.shape
    out = np.empty((da + 1, db + 1))
    m = eta * (1.0 - eta)
    out[:da, :db] = eta * eta * q
    out[:da, db] = m * q.sum(axis=1)
    out[da, :db] = m * q.sum(axis=0)
    out[da, db] = (1.0 - eta) ** 2
    return out


def entropy_single_closed(H: float, eta: float, alpha: float) -> float:
    eta, alpha = _eta(eta), check_order(alpha)
    return eta**alpha * H + binary_entropy(eta, alpha)


def entropy_pair_closed(H_joint: float, H_x: float, H_y: float, eta: float, alpha: float) -> float:
    eta, alpha = _eta(eta), check_order(alpha)
    return (eta ** (2 * alpha) * H_joint
            + eta**alpha * (1.0 - eta) ** alpha * (H_x + H_y)
            + quaternary_entropy(eta, alpha))


def delta(eta: float, alpha: float, H_E1: float) -> float:
    """Penalty term subtracted from the scaled ideal quantity."""
    eta, alpha = _eta(eta), check_order(alpha)
    ea = eta**alpha
    return (ea * (ea + 2.0 * (1.0 - eta) ** alpha - 1.0) * H_E1
            + quaternary_entropy(eta, alpha) - binary_entropy(eta, alpha))


@dataclass(frozen=True)
class InefficiencyReport:
    eta: float
    alpha: float
    C_alpha: float
    #: closed-form value eta**(2 alpha) C_alpha - Delta
    C_eta: float
    #: value computed from the distorted tables
    C_eta_direct: float
    Delta: float
    #: eta^a (1-eta)^a [H(E2 from the t0-t2 table) - H(E2 from the t1-t2 table)]
    marginal_term: float
    ratio: float | None


def inefficient_from_tables(J01, J12, J02, alpha: float, eta: float,
                            epsilon: float = EPSILON) -> InefficiencyReport:
    """Lossy-detector quantities from the three pair tables.

    Rows index the earlier time in every table; H(E1) is taken from the
    column marginal of ``J01``.
    """
    alpha, eta = check_order(alpha, minimum=1.0), _eta(eta)
    J01, J12, J02 = (as_distribution(t, ndim=2, name="joint table") for t in (J01, J12, J02))
    p1 = J01.sum(axis=0)
    h1 = tsallis_entropy(p1, alpha)
    c = joint_entropy(J02, alpha) + h1 - joint_entropy(J12, alpha) - joint_entropy(J01, alpha)
    direct = (joint_entropy(distort_pair(J02, eta), alpha)
              + tsallis_entropy(distort_single(p1, eta), alpha)
              - joint_entropy(distort_pair(J12, eta), alpha)
              - joint_entropy(distort_pair(J01, eta), alpha))
    d = delta(eta, alpha, h1)
    mismatch = eta**alpha * (1.0 - eta) ** alpha * (
        tsallis_entropy(J02.sum(axis=0), alpha) - tsallis_entropy(J12.sum(axis=0), alpha))
    r = d / (eta ** (2 * alpha) * c) if c > epsilon and eta > 0.0 else None
    return InefficiencyReport(eta=eta, alpha=alpha, C_alpha=c,
                              C_eta=eta ** (2 * alpha) * c - d, C_eta_direct=direct,
                              Delta=d, marginal_term=mismatch, ratio=r)


def lg_inefficient(spec: ProtocolSpec, alpha: float, eta: float,
                   epsilon: float = EPSILON) -> InefficiencyReport:
    j = protocol_joints(spec)
    return inefficient_from_tables(j.J01, j.J12, j.J02, alpha, eta, epsilon)


def ratio(spec: ProtocolSpec, alpha: float, eta: float, epsilon: float = EPSILON) -> float:
    """Penalty-to-signal ratio ``Delta / (eta**(2 alpha) C_alpha)``.

    Only defined where the ideal quantity is positive.
    """
    alpha, eta = check_order(alpha, minimum=1.0), _eta(eta)
    rep = lg_report(spec, alpha)
    if rep.C_alpha <= epsilon:
        raise DomainError(f"C_alpha = {rep.C_alpha:.3g} <= {epsilon}: no violation to dilute")
    if eta == 0.0:
        raise DomainError("ratio undefined at eta = 0")
    return delta(eta, alpha, rep.H_E1) / (eta ** (2 * alpha) * rep.C_alpha)
