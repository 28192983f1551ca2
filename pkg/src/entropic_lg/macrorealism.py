"""Classical hidden-variable models over three measurement times.

Any such model satisfies ``C_alpha <= 0`` for ``alpha >= 1``; the fuzzing
helpers here check that numerically.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .entropy import NORM_TOL, as_distribution, check_order, joint_entropy, tsallis_entropy
from .errors import ValidationError

FUZZ_DIMS = (2, 3)
FUZZ_STATES = (1, 2, 4, 8)
FUZZ_ALPHAS = (1.0, 1.5, 2.0, 3.0, 5.0)
#: largest C_alpha tolerated as rounding noise
BOUND_TOL = 1e-12


@dataclass(frozen=True)
class HiddenVariableModel:
    """Weights over L hidden states and, per time, an ``(L, d)`` table of ``P(x | lambda)``."""

    weights: np.ndarray
    conditionals: np.ndarray  # shape (3, L, d)

    def __post_init__(self):
        w = as_distribution(self.weights, ndim=1, name="weights")
        c = np.array(self.conditionals, dtype=float)
        if c.ndim != 3 or c.shape[0] != 3 or c.shape[1] != w.size:
            raise ValidationError(f"conditionals must have shape (3, {w.size}, d), got {c.shape}")
        if np.any(c < 0) or np.any(np.abs(c.sum(axis=2) - 1.0) > NORM_TOL):
            raise ValidationError("every P(.|lambda) must be a probability distribution")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "conditionals", c)

    @property
    def dim(self) -> int:
        return self.conditionals.shape[2]


def joint_from_model(m: HiddenVariableModel) -> np.ndarray:
    """``p(x1, x2, x3) = sum_lambda w(lambda) P1(x1|lambda) P2(x2|lambda) P3(x3|lambda)``."""
    a, b, c = m.conditionals
    return np.einsum("l,li,lj,lk->ijk", m.weights, a, b, c)


def pair_marginals(triple: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The (X1,X2), (X2,X3) and (X1,X3) tables."""
    return triple.sum(axis=2), triple.sum(axis=0), triple.sum(axis=1)


def lg_value(triple: np.ndarray, alpha: float) -> float:
    """``H(X1,X3) + H(X2) - H(X2,X3) - H(X1,X2)`` of a three-time joint."""
    alpha = check_order(alpha, minimum=1.0)
    j12, j23, j13 = pair_marginals(triple)
    return (joint_entropy(j13, alpha) + tsallis_entropy(j12.sum(axis=0), alpha)
            - joint_entropy(j23, alpha) - joint_entropy(j12, alpha))


def lg_check(m: HiddenVariableModel, alpha: float) -> float:
    return lg_value(joint_from_model(m), alpha)


def _simplex(rng: np.random.Generator, shape) -> np.ndarray:
    # normalised exponential variates: flat Dirichlet on the last axis
    x = rng.standard_exponential(shape)
    return x / x.sum(axis=-1, keepdims=True)


def random_model(seed, d: int, L: int) -> HiddenVariableModel:
    """Uniformly random model; ``seed`` may be an int or a ``SeedSequence``."""
    if d < 2 or L < 1:
        raise ValidationError(f"need d >= 2 and L >= 1, got d={d}, L={L}")
    rng = np.random.default_rng(seed)
    return HiddenVariableModel(weights=_simplex(rng, L), conditionals=_simplex(rng, (3, L, d)))


@dataclass(frozen=True)
class FuzzSummary:
    models: int
    dims: tuple[int, ...]
    states: tuple[int, ...]
    alphas: tuple[float, ...]
    seed: int
    max_C_alpha: float | None
    violations: int


def fuzz(models: int, seed: int, dims=FUZZ_DIMS, states=FUZZ_STATES, alphas=FUZZ_ALPHAS,
         tol: float = BOUND_TOL) -> FuzzSummary:
    """Sample ``models`` random models and count ``C_alpha > tol`` occurrences.

    Model ``i`` gets its own child seed of ``seed`` and cycles through the
    (d, L) combinations, so results do not depend on evaluation order.
    """
    alphas = tuple(check_order(a, minimum=1.0) for a in alphas)
    combos = list(itertools.product(dims, states))
    children = np.random.SeedSequence(seed).spawn(models)
    worst = None
    violations = 0
    for i, child in enumerate(children):
        d, L = combos[i % len(combos)]
        triple = joint_from_model(random_model(child, d, L))
        for a in alphas:
            c = lg_value(triple, a)
            worst = c if worst is None else max(worst, c)
            violations += c > tol
    return FuzzSummary(models=models, dims=tuple(dims), states=tuple(states), alphas=alphas,
                       seed=seed, max_C_alpha=worst, violations=int(violations))
