"""Independent reference solutions used for cross-validation.

Two backends that share no code with the series engine:

* the exact classical solution, obtained from the Bernoulli substitution
  v = k**(1-mu) which linearizes dk/dt = p*k**mu - q*k;
* an Adams-Bashforth-Moulton predictor-corrector for the Caputo problem
  (product-rectangle predictor, product-trapezoid corrector, one corrector
  iteration, full history).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from .model import ModelParams, validate_times
from .special import ln_gamma

__all__ = ["Trajectory", "solve_exact_classical", "solve_abm_fractional"]

MIN_ABM_STEPS = 16


@dataclass(frozen=True)
class Trajectory:
    """Sampled (t, k) pairs from one backend."""

    times: tuple[float, ...]
    values: tuple[float, ...]
    method: str

    def __post_init__(self):
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have equal length")

    def at_end(self) -> float:
        return self.values[-1]


def exact_classical_value(params: ModelParams, t: float) -> float:
    """Closed-form k(t) for alpha = 1.

    k(t) = [p/q + (k0**(1-mu) - p/q) * exp(-q*(1-mu)*t)]**(1/(1-mu)).

    Verified against an adaptive ODE integrator in the test suite before
    anything else relies on it.
    """
    one_minus_mu = 1.0 - params.mu
    ratio = params.p / params.q
    v = ratio + (params.k0 ** one_minus_mu - ratio) * math.exp(-params.q * one_minus_mu * t)
    return v ** (1.0 / one_minus_mu)


def solve_exact_classical(params: ModelParams, times: Sequence[float]) -> Trajectory:
    """Exact classical trajectory on the given strictly increasing grid."""
    if params.alpha != 1.0:
        raise ValueError(f"exact classical solver requires alpha = 1, got {params.alpha}")
    ts = validate_times(times)
    vals = [exact_classical_value(params, t) for t in ts]
    return Trajectory(times=tuple(ts), values=tuple(vals), method="exact-classical")


def solve_abm_fractional(
    params: ModelParams,
    t_end: float,
    steps: int,
    refine_check: bool = False,
) -> Trajectory:
    """Adams-Bashforth-Moulton solution of the Caputo initial-value problem.

    Uniform grid of `steps` intervals on [0, t_end].  Full-history memory
    term, O(steps^2) overall; correctness over speed, this is an oracle.
    With refine_check=True a (steps, 2*steps) comparison at t_end emits a
    warning when the two disagree by more than 1e-3 relative.
    """
    if not t_end > 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if steps < MIN_ABM_STEPS:
        raise ValueError(f"steps must be at least {MIN_ABM_STEPS}, got {steps}")

    traj = _abm_run(params, t_end, steps)
    if refine_check:
        fine = _abm_run(params, t_end, 2 * steps)
        rel = abs(fine.values[-1] - traj.values[-1]) / max(abs(fine.values[-1]), 1e-300)
        if rel > 1e-3:
            warnings.warn(
                f"ABM refinement check: steps={steps} vs {2 * steps} differ by "
                f"{rel:.2e} relative at t_end; increase steps",
                stacklevel=2,
            )
    return traj


def _abm_run(params: ModelParams, t_end: float, steps: int) -> Trajectory:
    alpha = params.alpha
    h = t_end / steps
    h_alpha = h ** alpha
    inv_gamma_a = math.exp(-ln_gamma(alpha))
    inv_gamma_a2 = math.exp(-ln_gamma(alpha + 2.0))

    k = [params.k0]
    f = [params.rhs(params.k0)]

    # Power tables reused by both weight families.
    pow_a = [j ** alpha for j in range(steps + 2)]
    pow_a1 = [j ** (alpha + 1.0) for j in range(steps + 2)]

    for n in range(steps):
        # Predictor: product-rectangle rule, weights
        # b_j = (h^a / a) * ((n+1-j)^a - (n-j)^a).
        acc = 0.0
        for j in range(n + 1):
            acc += (pow_a[n + 1 - j] - pow_a[n - j]) * f[j]
        k_pred = params.k0 + inv_gamma_a * (h_alpha / alpha) * acc

        if k_pred <= 0:
            raise ArithmeticError(
                f"ABM predictor produced nonpositive capital {k_pred} at "
                f"t={h * (n + 1):.6g}; the model is only meaningful for k > 0"
            )

        # Corrector: product-trapezoid rule.
        acc = (pow_a1[n] - (n - alpha) * pow_a[n + 1]) * f[0]
        for j in range(1, n + 1):
            acc += (
                pow_a1[n - j + 2] + pow_a1[n - j] - 2.0 * pow_a1[n - j + 1]
            ) * f[j]
        k_next = params.k0 + inv_gamma_a2 * h_alpha * (params.rhs(k_pred) + acc)

        if k_next <= 0:
            raise ArithmeticError(
                f"ABM corrector produced nonpositive capital {k_next} at "
                f"t={h * (n + 1):.6g}; the model is only meaningful for k > 0"
            )
        k.append(k_next)
        f.append(params.rhs(k_next))

    times = tuple(i * h for i in range(steps + 1))
    return Trajectory(times=times, values=tuple(k), method="abm-fractional")
