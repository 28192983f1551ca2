"""The qubit and qutrit rotation families with thermal initial states.

Both families use the same rotation angle on the two intervals. Levels are
in units of the ground-to-top gap: qubit ``(0, 1)``, qutrit ``(0, 0.5, 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .quantum import ProtocolSpec

LEVELS = {
    "qubit": np.array([0.0, 1.0]),
    "qutrit": np.array([0.0, 0.5, 1.0]),
}
SYSTEMS = tuple(LEVELS)


def qubit_unitary(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]])


def qutrit_unitary(theta: float) -> np.ndarray:
    """Real rotation by ``theta`` about the axis ``(1/sqrt2, 0, 1/sqrt2)``."""
    c, s = math.cos(theta), math.sin(theta)
    r = math.sqrt(2.0) * s
    return 0.5 * np.array([
        [1.0 + c, -r, 1.0 - c],
        [r, 2.0 * c, -r],
        [1.0 - c, r, 1.0 + c],
    ])


UNITARIES = {"qubit": qubit_unitary, "qutrit": qutrit_unitary}


def check_system(kind: str) -> str:
    if kind not in LEVELS:
        raise ParameterError(f"unknown system {kind!r}; expected one of {SYSTEMS}")
    return kind


@dataclass(frozen=True)
class SystemFamily:
    kind: str
    theta: float
    beta: float
    # None means the same angle on both intervals
    theta21: float | None = None

    def __post_init__(self):
        check_system(self.kind)
        if not math.isfinite(self.theta):
            raise ParameterError(f"theta must be finite, got {self.theta!r}")


def make_protocol(fam: SystemFamily) -> ProtocolSpec:
    levels = LEVELS[fam.kind]
    unitary = UNITARIES[fam.kind]
    theta21 = fam.theta if fam.theta21 is None else fam.theta21
    return ProtocolSpec(
        levels0=levels, levels1=levels, levels2=levels, beta=fam.beta,
        U10=unitary(fam.theta), U21=unitary(theta21),
    )


def family_transitions(kind: str, thetas) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised transition matrices for a batch of angles.

    Returns ``(T, T2)`` with shape ``(n, d, d)``: the single-interval matrix
    ``|U(theta)|**2`` and the two-interval skip matrix ``|U(theta) U(theta)|**2``.
    """
    check_system(kind)
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    if kind == "qubit":
        c, s = np.cos(th / 2.0), np.sin(th / 2.0)
        U = np.empty((th.size, 2, 2))
        U[:, 0, 0] = c
        U[:, 0, 1] = -s
        U[:, 1, 0] = s
        U[:, 1, 1] = c
    else:
        c, s = np.cos(th), np.sin(th)
        r = math.sqrt(2.0) * s
        U = 0.5 * np.stack([
            np.stack([1.0 + c, -r, 1.0 - c], axis=-1),
            np.stack([r, 2.0 * c, -r], axis=-1),
            np.stack([1.0 - c, r, 1.0 + c], axis=-1),
        ], axis=1)
    W = U @ U
    return U * U, W * W
