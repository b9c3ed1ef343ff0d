"""Raising-phase scheduling for the time-dependent protocol.

With the linear coupling ramp f(t) = t/l, the raising evolution is
PiPlus + exp(-i Gamma) PiMinus with Gamma = (2 + 1/l) T^2 / 4. Choosing
Gamma = 2 pi n makes the raising unitary the identity; the free-energy
target c fixes the smallest admissible n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import acos, ceil, log, log2, pi, sqrt


@dataclass(frozen=True)
class RaisingSchedule:
    """Raising window length and accumulated phase, with Gamma = 2 pi n."""

    n: int
    capital_t: float
    gamma: float


class NoValidTheta(ValueError):
    """Raised when beta*l < log 2 leaves no admissible mixing angle."""


def schedule_raising(two_l: int, beta: float, c_target: float) -> RaisingSchedule:
    """Smallest raising window meeting the free-energy fraction ``c_target``.

    n is the smallest integer with
    n >= (2 + 1/l) / (8 pi beta^2) * log(2^(1-c) - 1)^2,
    and T = sqrt(8 pi n / (2 + 1/l)).
    """
    if not 0.0 < c_target < 1.0:
        raise ValueError(f"c_target must lie in (0, 1), got {c_target}")
    if two_l < 1:
        raise ValueError(f"two_l must be >= 1, got {two_l}")
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    l = two_l / 2.0
    coeff = 2.0 + 1.0 / l
    bound = coeff / (8.0 * pi * beta * beta) * log(2.0 ** (1.0 - c_target) - 1.0) ** 2
    n = max(1, ceil(bound - 1e-12))
    capital_t = sqrt(8.0 * pi * n / coeff)
    return RaisingSchedule(n=n, capital_t=capital_t, gamma=2.0 * pi * n)


def theta_bound(two_l: int, beta: float) -> float:
    """Largest mixing angle that can still store kT log 2 in the reference."""
    l = two_l / 2.0
    x = log(2.0) / (beta * l) if l > 0 else float("inf")
    if x > 1.0:
        raise NoValidTheta(
            f"beta*l = {beta * l:.6g} is below log 2; no angle admits kT log 2"
        )
    return acos(x)
