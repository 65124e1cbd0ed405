"""Sphere-rod-elastic measurement model parameterized by correlation reach
rho and elastic half-width eps.

Two unit spheres hold point entities joined by a rigid rod. Measuring one
side drags its entity to an outcome pole with probability one half and, via
the rod, displaces the other entity by rho along the measured direction. The
second side's entity then falls onto an elastic spanning its measurement
axis; the elastic breaks uniformly inside [-eps, +eps] and drags the entity
to a pole. rho = 1, eps = 1 reproduces the quantum singlet correlations;
rho = 0 removes all correlation; eps = 0 is the deterministic limit (up to
the unstable equilibrium at projection zero, resolved by a fair coin).

Everything reduces to scalar projection arithmetic: with c = a.b the second
entity sits at -rho*c (first outcome up) or +rho*c (first outcome down), and
the outcome is up exactly when the break point falls below that position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.random import Generator, Philox

from .core import ValidationError

SQRT2 = math.sqrt(2.0)

#: cos 45 degrees, the coincidence geometry that maximizes the statistic
COS_45 = math.cos(math.pi / 4.0)

#: Monte Carlo chunk size; must stay even so chunk starts align with the
#: per-trial stream positions (trial i consumes stream doubles 2i and 2i+1)
MC_CHUNK = 1 << 16


class DegenerateParameterError(ValueError):
    """eps = 0 leaves the conditional break probability undefined."""


@dataclass(frozen=True)
class EpsRhoParams:
    """Correlation reach rho and elastic half-width eps, both in [0, 1]."""

    rho: float
    eps: float

    def __post_init__(self) -> None:
        for name in ("rho", "eps"):
            value = getattr(self, name)
            if not 0.0 <= float(value) <= 1.0:
                raise ValidationError(f"{name} = {value!r} outside [0, 1]")


@dataclass(frozen=True)
class MeasurementDirections:
    """Measurement directions of the two sides, reduced to cos_ab = a.b."""

    cos_ab: float

    def __post_init__(self) -> None:
        c = float(self.cos_ab)
        if math.isnan(c) or abs(c) > 1.0 + 1e-12:
            raise ValidationError(f"cos_ab = {self.cos_ab!r} outside [-1, 1]")
        object.__setattr__(self, "cos_ab", min(1.0, max(-1.0, c)))

    @classmethod
    def from_angle(cls, radians: float) -> "MeasurementDirections":
        return cls(math.cos(radians))

    @classmethod
    def from_vectors(cls, a: Sequence[float], b: Sequence[float]) -> "MeasurementDirections":
        na = math.sqrt(sum(x * x for x in a))
        nb = math.sqrt(sum(x * x for x in b))
        if na == 0.0 or nb == 0.0:
            raise ValidationError("measurement directions must be nonzero vectors")
        dot = sum(x * y for x, y in zip(a, b))
        return cls(dot / (na * nb))


@dataclass(frozen=True)
class ModelState:
    """Positions of the two entities relative to their sphere centers c, -c."""

    s1: tuple[float, float, float]
    s2: tuple[float, float, float]
    c: tuple[float, float, float]

    def within_reach(self, rho: float) -> bool:
        d1 = math.dist(self.s1, self.c)
        d2 = math.dist(self.s2, tuple(-x for x in self.c))
        return d1 <= rho + 1e-12 and d2 <= rho + 1e-12


@dataclass(frozen=True)
class TrialOutcome:
    """One simulated coincidence: both outcomes and the elastic break point."""

    left: str   # "up" or "down"
    right: str  # "up" or "down"
    break_point: float

    @property
    def product(self) -> int:
        return 1 if self.left == self.right else -1


def closed_form_expectation(params: EpsRhoParams, cos_ab: float) -> float:
    """Coincidence expectation of the model.

    -rho*c/eps while the projection rho*c sits inside the breakable interval,
    saturating at -1 (rho*c >= eps) or +1 (rho*c <= -eps). At eps = 0 this
    degenerates to -sign(rho*c), zero at the unstable equilibrium.
    """
    if abs(cos_ab) > 1.0 + 1e-12:
        raise ValidationError(f"cos_ab = {cos_ab!r} outside [-1, 1]")
    x = params.rho * cos_ab
    if params.eps == 0.0:
        if x > 0.0:
            return -1.0
        if x < 0.0:
            return 1.0
        return 0.0
    if x >= params.eps:
        return -1.0
    if x <= -params.eps:
        return 1.0
    return -x / params.eps + 0.0  # + 0.0 normalizes IEEE negative zero


def conditional_up_probability(params: EpsRhoParams, cos_ab: float) -> float:
    """P(second outcome = up) given the first came out up.

    (eps - rho*c) / (2 eps), clamped to {0, 1} when the projection lands on
    an unbreakable segment. Undefined at eps = 0 (use the sign rule of
    closed_form_expectation instead).
    """
    if params.eps == 0.0:
        raise DegenerateParameterError("eps = 0: outcome is set by the projection sign")
    x = params.rho * cos_ab
    return min(1.0, max(0.0, (params.eps - x) / (2.0 * params.eps)))


def chsh_closed_form(params: EpsRhoParams) -> float:
    """CHSH value at the optimal 45/135-degree geometry.

    2*sqrt(2)*rho/eps while eps/rho > sqrt(2)/2, else the algebraic maximum
    4; identically 0 at rho = 0. Both branches meet at eps = rho*sqrt(2)/2
    where each gives 4.
    """
    if params.rho == 0.0:
        return 0.0
    if params.eps / params.rho > SQRT2 / 2.0:
        return 2.0 * SQRT2 * params.rho / params.eps
    return 4.0


def violation_boundary(rho: float) -> float:
    """Largest eps (capped at 1) below which the CHSH bound 2 is violated.

    The violation region is exactly eps < sqrt(2)*rho, so any rho above
    1/sqrt(2) violates for every eps in [0, 1].
    """
    if not 0.0 <= rho <= 1.0:
        raise ValidationError(f"rho = {rho!r} outside [0, 1]")
    if rho == 0.0:
        return 0.0
    return min(SQRT2 * rho, 1.0)


def simulate_pair(
    params: EpsRhoParams, dirs: MeasurementDirections, rng: Generator
) -> TrialOutcome:
    """Simulate one coincidence measurement; consumes exactly two uniforms.

    The first side comes out up or down with probability one half; the rod
    sets the second entity to -/+ rho*a accordingly, so its projection on
    the second axis is x = -/+ rho*(a.b). The elastic break point is uniform
    on [-eps, eps] and the second outcome is up iff the break point falls
    strictly below x (ties resolve to down). eps = 0 uses the sign of x,
    with a fair coin at x = 0.
    """
    u_left = rng.random()
    u_aux = rng.random()
    left_up = u_left < 0.5
    x = -params.rho * dirs.cos_ab if left_up else params.rho * dirs.cos_ab
    if params.eps > 0.0:
        gamma = -params.eps + 2.0 * params.eps * u_aux
        right_up = gamma < x
    else:
        gamma = 0.0
        right_up = x > 0.0 or (x == 0.0 and u_aux < 0.5)
    return TrialOutcome(
        "up" if left_up else "down",
        "up" if right_up else "down",
        gamma,
    )


def _product_sum(
    rho: float,
    eps: float,
    cos_ab: float,
    trials: int,
    seed: int,
    base_trial: int = 0,
    chunk: int = MC_CHUNK,
) -> int:
    """Exact integer sum of the +/-1 outcome products for the given trials.

    Trial i draws stream doubles 2i and 2i+1 of Philox(key=seed), so any
    even-aligned chunking or ordering reproduces identical results.
    """
    if chunk % 2 or chunk <= 0:
        raise ValueError("chunk size must be a positive even integer")
    if base_trial % 2:
        raise ValueError("base_trial must be even to align with the stream")
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    x_when_up = -rho * cos_ab
    total = 0
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        start = base_trial + done
        bits = Philox(key=seed)
        bits.advance((2 * start) // 4)  # advance() skips four doubles per step
        u = Generator(bits).random(2 * m)
        left_up = u[0::2] < 0.5
        x = np.where(left_up, x_when_up, -x_when_up)
        aux = u[1::2]
        if eps > 0.0:
            right_up = (-eps + 2.0 * eps * aux) < x
        else:
            right_up = (x > 0.0) | ((x == 0.0) & (aux < 0.5))
        total += 2 * int(np.count_nonzero(left_up == right_up)) - m
        done += m
    return total


def _mean_and_stderr(total: int, trials: int) -> tuple[float, float]:
    mean = total / trials
    # products are +/-1, so the sample variance follows from the sum alone
    var = max(0.0, (trials - total * total / trials)) / max(trials - 1, 1)
    return mean, math.sqrt(var / trials)


def monte_carlo_expectation(
    params: EpsRhoParams,
    dirs: MeasurementDirections,
    trials: int,
    seed: int,
    *,
    chunk: int = MC_CHUNK,
) -> tuple[float, float]:
    """Estimate the coincidence expectation by simulation.

    Returns (mean of the +/-1 products, standard error). Deterministic for a
    fixed seed: each trial's draws are derived from (seed, trial index), so
    the result does not depend on chunking or evaluation order.
    """
    if trials < 1:
        raise ValueError(f"trials = {trials} must be at least 1")
    total = _product_sum(params.rho, params.eps, dirs.cos_ab, trials, seed, chunk=chunk)
    return _mean_and_stderr(total, trials)


@dataclass(frozen=True)
class SweepRow:
    """One (rho, eps) grid cell of a violation-region sweep."""

    rho: float
    epsilon: float
    e_ab: float
    e_ab2: float
    e_a2b: float
    e_a2b2: float
    chsh: float
    violates: int
    regime: str
    mc_chsh: Optional[float] = None
    mc_stderr: Optional[float] = None


def _regime(rho: float, eps: float) -> str:
    if abs(eps - SQRT2 * rho) <= 1e-9:
        return "boundary"
    if rho == 0.0 or eps == 0.0:
        return "degenerate"
    return "saturated" if eps / rho <= SQRT2 / 2.0 else "linear"


#: cosines of the four coincidence angles (ab, ab', a'b, a'b') at the
#: CHSH-optimal geometry: 45, 135, 45, 45 degrees
SWEEP_COSINES = (COS_45, -COS_45, COS_45, COS_45)


def sweep(
    rho_grid: Sequence[float],
    eps_grid: Sequence[float],
    trials: Optional[int] = None,
    seed: int = 0,
) -> list[SweepRow]:
    """Evaluate the model over a (rho, eps) grid at the CHSH-optimal angles.

    Rows come out in row-major order (rho outer, eps inner). Each row carries
    the four closed-form expectations, the closed-form CHSH value, a
    violation flag (value > 2), and a regime tag: "linear" or "saturated"
    away from the curve eps = sqrt(2)*rho, "boundary" within 1e-9 of it,
    "degenerate" when rho = 0 or eps = 0.

    With `trials` set, each cell additionally carries a Monte Carlo CHSH
    estimate (four independent runs of `trials` coincidences each) and the
    root-sum-square of the four standard errors. All cells draw from one
    long Philox(key=seed) stream indexed by a global trial counter, so the
    output is bit-identical for any worker count or evaluation order.
    """
    if len(rho_grid) == 0 or len(eps_grid) == 0:
        raise ValueError("grids must be nonempty")
    for value in (*rho_grid, *eps_grid):
        if not 0.0 <= float(value) <= 1.0:
            raise ValueError(f"grid value {value!r} outside [0, 1]")
    if trials is not None and trials < 1:
        raise ValueError(f"trials = {trials} must be at least 1")

    # keep per-run stream slices even-aligned for the positioning contract
    stride = trials + (trials % 2) if trials else 0
    rows = []
    for r_idx, rho in enumerate(rho_grid):
        for e_idx, eps in enumerate(eps_grid):
            rho = float(rho)
            eps = float(eps)
            params = EpsRhoParams(rho, eps)
            e_vals = [closed_form_expectation(params, c) for c in SWEEP_COSINES]
            chsh = chsh_closed_form(params)
            mc_chsh = mc_stderr = None
            if trials:
                cell = r_idx * len(eps_grid) + e_idx
                stats = [
                    _mean_and_stderr(
                        _product_sum(
                            rho, eps, c, trials, seed,
                            base_trial=(cell * 4 + k) * stride,
                        ),
                        trials,
                    )
                    for k, c in enumerate(SWEEP_COSINES)
                ]
                (m_ab, s_ab), (m_ab2, s_ab2), (m_a2b, s_a2b), (m_a2b2, s_a2b2) = stats
                mc_chsh = abs(m_ab - m_ab2) + abs(m_a2b + m_a2b2)
                mc_stderr = math.sqrt(s_ab**2 + s_ab2**2 + s_a2b**2 + s_a2b2**2)
            rows.append(
                SweepRow(
                    rho, eps, *e_vals,
                    chsh=chsh,
                    violates=int(chsh > 2.0 + 1e-12),
                    regime=_regime(rho, eps),
                    mc_chsh=mc_chsh,
                    mc_stderr=mc_stderr,
                )
            )
    return rows
