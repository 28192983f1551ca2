"""Two-point-measurement statistics for a three-time energy protocol.

Each interval unitary is given directly in the ordered energy eigenbases of
the adjacent Hamiltonians, so ``U[l, k] = <e_l^(1)| U |e_k^(0)>`` and the
projective measurements are rank-one projectors onto basis vectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import NORM_TOL, as_distribution
from .errors import ValidationError

UNITARY_TOL = 1e-10


def as_unitary(u, name: str = "U") -> np.ndarray:
    """Return ``u`` as a complex array, raising if it is not unitary to 1e-10."""
    arr = np.array(u, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {arr.shape}")
    resid = np.abs(arr.conj().T @ arr - np.eye(arr.shape[0])).max()
    if not resid <= UNITARY_TOL:
        raise ValidationError(f"{name} is not unitary (residual {resid:.3g})")
    return arr


def as_levels(levels, name: str = "levels") -> np.ndarray:
    arr = np.array(levels, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError(f"{name} must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} has non-finite entries")
    if np.any(np.diff(arr) <= 0.0):
        raise ValidationError(f"{name} must be strictly increasing (non-degenerate)")
    return arr


@dataclass(frozen=True)
class ProtocolSpec:
    """Energy levels at t0, t1, t2, the inverse temperature and the two interval unitaries.

    Units: level gap ``dE = 1`` and ``k_B = 1``, so ``beta`` is ``beta * dE``.
    """

    levels0: np.ndarray
    levels1: np.ndarray
    levels2: np.ndarray
    beta: float
    U10: np.ndarray
    U21: np.ndarray

    def __post_init__(self):
        set_ = object.__setattr__
        for name in ("levels0", "levels1", "levels2"):
            set_(self, name, as_levels(getattr(self, name), name))
        set_(self, "U10", as_unitary(self.U10, "U10"))
        set_(self, "U21", as_unitary(self.U21, "U21"))
        beta = float(self.beta)
        if not math.isfinite(beta) or beta < 0.0:
            raise ValidationError(f"beta must be finite and non-negative, got {self.beta!r}")
        set_(self, "beta", beta)
        dims = {self.levels0.size, self.levels1.size, self.levels2.size,
                self.U10.shape[0], self.U21.shape[0]}
        if len(dims) != 1:
            raise ValidationError("protocol dimensions disagree")

    @property
    def dim(self) -> int:
        return self.levels0.size


@dataclass(frozen=True)
class ProtocolJoints:
    J01: np.ndarray
    J12: np.ndarray
    J02: np.ndarray
    p0: np.ndarray
    p1: np.ndarray
    p2: np.ndarray


def gibbs_distribution(levels, beta: float) -> np.ndarray:
    """Boltzmann weights ``exp(-beta e_k) / Z``, shifted by the lowest level for stability."""
    e = as_levels(levels)
    beta = float(beta)
    if not math.isfinite(beta) or beta < 0.0:
        raise ValidationError(f"beta must be finite and non-negative, got {beta!r}")
    w = np.exp(-beta * (e - e.min()))
    return w / w.sum()


def transition_matrix(U) -> np.ndarray:
    """Unistochastic matrix ``T[l, k] = p(l | k) = |U[l, k]|**2``."""
    u = as_unitary(U)
    return u.real**2 + u.imag**2


def _normalized(table: np.ndarray, name: str) -> np.ndarray:
    total = table.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise ValidationError(f"{name} sums to {total!r}")
    return table / total


def pair_joint_measured(p_in, T) -> np.ndarray:
    """Joint table ``J[k, l] = p_in[k] T[l, k]`` of two successive projective measurements."""
    p = as_distribution(p_in, ndim=1, name="p_in")
    t = np.asarray(T, dtype=float)
    if t.shape != (p.size, p.size):
        raise ValidationError(f"transition matrix shape {t.shape} does not match d={p.size}")
    return _normalized(p[:, None] * t.T, "pair joint")


def skip_joint(p0, U10, U21) -> np.ndarray:
    """Joint of the t0 and t2 outcomes when no measurement is made at t1.

    ``J[k, m] = p0[k] |(U21 U10)[m, k]|**2``.
    """
    p = as_distribution(p0, ndim=1, name="p0")
    u10, u21 = as_unitary(U10, "U10"), as_unitary(U21, "U21")
    if u10.shape[0] != p.size or u21.shape[0] != p.size:
        raise ValidationError("dimension mismatch between p0 and unitaries")
    w = u21 @ u10
    return _normalized(p[:, None] * (np.abs(w) ** 2).T, "skip joint")


def skip_joint_literal(p0, U10, U21) -> np.ndarray:
    """Same quantity as :func:`skip_joint`, by the explicit projector double sum.

    Evaluates ``sum_{l,l'} Tr(P_m U21 P_l U10 P_k U10^+ P_l' U21^+)`` with every
    projector materialised. Slow; kept as a cross-check.
    """
    p = as_distribution(p0, ndim=1, name="p0")
    u10, u21 = as_unitary(U10, "U10"), as_unitary(U21, "U21")
    d = p.size
    if u10.shape[0] != d or u21.shape[0] != d:
        raise ValidationError("dimension mismatch between p0 and unitaries")
    proj = [np.outer(v, v.conj()) for v in np.eye(d, dtype=complex)]
    J = np.zeros((d, d))
    for k in range(d):
        for m in range(d):
            acc = 0.0 + 0.0j
            for l in range(d):
                left = proj[m] @ u21 @ proj[l] @ u10 @ proj[k] @ u10.conj().T
                for lp in range(d):
                    acc += np.trace(left @ proj[lp] @ u21.conj().T)
            J[k, m] = p[k] * acc.real
    return _normalized(J, "skip joint")


def protocol_joints(spec: ProtocolSpec) -> ProtocolJoints:
    """The (E0,E1), (E1,E2) and (E0,E2) joint tables plus measured marginals."""
    p0 = gibbs_distribution(spec.levels0, spec.beta)
    J01 = pair_joint_measured(p0, transition_matrix(spec.U10))
    p1 = J01.sum(axis=0)
    J12 = pair_joint_measured(p1, transition_matrix(spec.U21))
    p2 = J12.sum(axis=0)
    J02 = skip_joint(p0, spec.U10, spec.U21)
    return ProtocolJoints(J01=J01, J12=J12, J02=J02, p0=p0, p1=p1, p2=p2)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a complex Gaussian matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))
