"""Entropic Leggett-Garg quantities for quantum work fluctuations.

For a three-time protocol the violation quantity is

    C_alpha = H(W20) + H(E1) - H(W21) - H(W10)

where H(Wji) is the entropy of the joint (Ei, Ej) table. Macrorealism
forces ``C_alpha <= 0`` for every ``alpha >= 1``. The rescaled value divides
by ``ln_alpha(d)``, the largest a conditional entropy can be.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .entropy import alpha_log, check_order, conditional_entropy, joint_entropy, tsallis_entropy
from .errors import DomainError, ParameterError
from .quantum import ProtocolSpec, gibbs_distribution, protocol_joints
from .systems import LEVELS, family_transitions

#: default threshold for "visible" violation; keeps rounding noise out of domains
EPSILON = 1e-12
THETA_POINTS = 2001
BISECT_TOL = 1e-6 * math.pi
GOLDEN_TOL = 1e-8 * math.pi


def default_alpha_grid() -> np.ndarray:
    return np.round(np.arange(100, 401) * 0.01, 2)


def theta_grid(points: int = THETA_POINTS) -> np.ndarray:
    """``points`` uniform angles on ``[0, pi)``."""
    if points < 2:
        raise ParameterError(f"need at least 2 theta points, got {points}")
    return np.arange(points) * (math.pi / points)


@dataclass(frozen=True)
class LGReport:
    alpha: float
    H_W10: float
    H_W21: float
    H_W20: float
    H_E1: float
    C_alpha: float
    C_tilde: float


def lg_report(spec: ProtocolSpec, alpha: float) -> LGReport:
    alpha = check_order(alpha, minimum=1.0)
    j = protocol_joints(spec)
    h10 = joint_entropy(j.J01, alpha)
    h21 = joint_entropy(j.J12, alpha)
    h20 = joint_entropy(j.J02, alpha)
    h1 = tsallis_entropy(j.p1, alpha)
    c = h20 + h1 - h21 - h10
    return LGReport(alpha=alpha, H_W10=h10, H_W21=h21, H_W20=h20, H_E1=h1,
                    C_alpha=c, C_tilde=c / alpha_log(spec.dim, alpha))


def lg_conditional_form(spec: ProtocolSpec, alpha: float) -> float:
    """``H(E2|E0) - H(E2|E1) - H(E1|E0)``, algebraically equal to ``C_alpha``."""
    alpha = check_order(alpha, minimum=1.0)
    j = protocol_joints(spec)
    return (conditional_entropy(j.J02, alpha, given="rows")
            - conditional_entropy(j.J12, alpha, given="rows")
            - conditional_entropy(j.J01, alpha, given="rows"))


def c_tilde_curve(system: str, beta: float, alpha: float, thetas) -> np.ndarray:
    """Rescaled quantity for the equal-angle family, evaluated on an array of angles."""
    alpha = check_order(alpha, minimum=1.0)
    p0 = gibbs_distribution(LEVELS[system], beta)
    T, T2 = family_transitions(system, thetas)
    c = kernels.c_alpha_batch(p0, T, T, T2, alpha)
    return np.asarray(c) / alpha_log(p0.size, alpha)


@dataclass(frozen=True)
class ViolationDomain:
    intervals: list[tuple[float, float]] = field(default_factory=list)
    epsilon: float = EPSILON

    @property
    def measure(self) -> float:
        return float(sum(b - a for a, b in self.intervals))


def _bisect(f, lo: float, hi: float, lo_inside: bool) -> float:
    # f(lo) and f(hi) sit on opposite sides of the threshold
    while hi - lo > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if f(mid) == lo_inside:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def domain_from_curve(f, grid: np.ndarray, values: np.ndarray, epsilon: float,
                      upper: float = math.pi) -> ViolationDomain:
    """Intervals where ``f > epsilon``, from grid values refined by bisection.

    ``f`` maps a scalar angle to the curve value. ``upper`` closes the scan
    (the grid covers ``[grid[0], upper)``).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ParameterError("empty theta grid")
    if grid.size > 1 and np.any(np.diff(grid) <= 0):
        raise ParameterError("theta grid must be strictly increasing")
    xs = np.append(grid, upper) if upper > grid[-1] else grid
    vals = np.asarray(values, dtype=float)
    if xs.size > vals.size:
        vals = np.append(vals, f(upper))
    inside = vals > epsilon

    def member(x):
        return f(x) > epsilon

    intervals = []
    start = xs[0] if inside[0] else None
    for i in range(1, xs.size):
        if inside[i] == inside[i - 1]:
            continue
        edge = _bisect(member, xs[i - 1], xs[i], bool(inside[i - 1]))
        if inside[i]:
            start = edge
        else:
            intervals.append((float(start), float(edge)))
            start = None
    if start is not None:
        intervals.append((float(start), float(xs[-1])))
    return ViolationDomain(intervals=intervals, epsilon=epsilon)


def violation_domain(system: str, beta: float, alpha: float, grid=THETA_POINTS,
                     epsilon: float = EPSILON) -> ViolationDomain:
    """Angles in ``[0, pi)`` where the rescaled quantity exceeds ``epsilon``.

    ``grid`` is either a point count or an explicit increasing array of angles.
    """
    if epsilon < 0:
        raise ParameterError("epsilon must be non-negative")
    grid = theta_grid(grid) if np.isscalar(grid) else np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ParameterError("empty theta grid")
    vals = c_tilde_curve(system, beta, alpha, grid)

    def f(x):
        return float(c_tilde_curve(system, beta, alpha, [x])[0])

    return domain_from_curve(f, grid, vals, epsilon)


def merge_intervals(intervals) -> list[tuple[float, float]]:
    merged: list[list[float]] = []
    for a, b in sorted(intervals):
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return [(a, b) for a, b in merged]


@dataclass(frozen=True)
class Extension:
    system: str
    beta: float
    alphas: tuple[float, ...]
    epsilon: float
    measure_alpha1: float
    measure_union: float

    @property
    def percent(self) -> float:
        return 100.0 * (self.measure_union - self.measure_alpha1) / self.measure_alpha1


def domains_over_alpha(system: str, beta: float, alphas, grid=THETA_POINTS,
                       epsilon: float = EPSILON, threads: int | None = 1) -> list[ViolationDomain]:
    """Violation domains for each order, computed in input order."""
    def one(a):
        return violation_domain(system, beta, a, grid, epsilon)

    alphas = [float(a) for a in alphas]
    if threads == 1 or len(alphas) < 2:
        return [one(a) for a in alphas]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, alphas))


def domain_extension(system: str, beta: float, alphas=None, grid=THETA_POINTS,
                     epsilon: float = EPSILON, threads: int | None = 1) -> Extension:
    """Relative growth of the union of violation domains over the Shannon domain."""
    alphas = default_alpha_grid() if alphas is None else np.asarray(alphas, dtype=float)
    if not np.any(np.abs(alphas - 1.0) < 1e-12):
        raise ParameterError("alpha grid must include 1.0")
    domains = domains_over_alpha(system, beta, alphas, grid, epsilon, threads)
    base = domains[int(np.argmin(np.abs(alphas - 1.0)))]
    if base.measure <= 0.0:
        raise DomainError("no violation at alpha = 1; extension undefined")
    union = merge_intervals([iv for dom in domains for iv in dom.intervals])
    return Extension(system=system, beta=float(beta), alphas=tuple(float(a) for a in alphas),
                     epsilon=epsilon, measure_alpha1=base.measure,
                     measure_union=float(sum(b - a for a, b in union)))


def argmax_theta(system: str, beta: float, alpha: float, grid=THETA_POINTS) -> tuple[float, float]:
    """Location and value of the maximum of the rescaled curve over the grid.

    The grid maximum (first one on ties) is polished by golden-section search
    between its neighbours. Flat neighbourhoods are left unrefined.
    """
    grid = theta_grid(grid) if np.isscalar(grid) else np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ParameterError("empty theta grid")
    vals = c_tilde_curve(system, beta, alpha, grid)
    i = int(np.argmax(vals))
    best_t, best_v = float(grid[i]), float(vals[i])
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    if hi <= lo or (vals[max(i - 1, 0)] == best_v and vals[min(i + 1, grid.size - 1)] == best_v):
        return best_t, best_v

    def f(x):
        return float(c_tilde_curve(system, beta, alpha, [x])[0])

    g = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    x1, x2 = b - g * (b - a), a + g * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > GOLDEN_TOL:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - g * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + g * (b - a)
            f2 = f(x2)
    x = 0.5 * (a + b)
    v = f(x)
    if v > best_v:
        return x, v
    return best_t, best_v
