"""Empirical prime counts in the omega and gamma residue classes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .number_theory import first_primes, iter_prime_segments, primorial, primorial_totient

MAX_SCAN = 2**62


@dataclass(frozen=True)
class StatsReport:
    k: int
    x: int
    omega_class_count: int
    gamma_class_count: int
    pi_x: int
    dirichlet_expectation: Fraction

    @property
    def expectation_text(self) -> str:
        return format_fixed(self.dirichlet_expectation, 2)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "x": str(self.x),
            "primorial": str(primorial(self.k).value),
            "omega_class_count": str(self.omega_class_count),
            "gamma_class_count": str(self.gamma_class_count),
            "pi_x": str(self.pi_x),
            "dirichlet_expectation": self.expectation_text,
        }

    def table(self) -> str:
        rows = [(key, value) for key, value in self.to_dict().items()]
        width = max(len(key) for key, _ in rows)
        return "\n".join(f"{key.ljust(width)}  {value}" for key, value in rows)


def format_fixed(q: Fraction, places: int) -> str:
    """Decimal rendering of a non-negative fraction, rounded half up."""
    scale = 10**places
    units = (2 * q.numerator * scale + q.denominator) // (2 * q.denominator)
    whole, frac = divmod(units, scale)
    return f"{whole}.{frac:0{places}d}" if places else str(whole)


def compute_stats(k: int, x: int, workers: Optional[int] = None) -> StatsReport:
    """Count primes q <= x with q = -1 (mod P_k), and those with q + 2 free of primes <= p_k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 2 <= x < MAX_SCAN:
        raise ValueError(f"x must lie in [2, 2**62), got {x}")
    step = primorial(k).value
    small = first_primes(k)
    omega = gamma = pi = 0
    for q in iter_prime_segments(x, workers=workers):
        pi += len(q)
        if step <= x + 1:
            omega += int(np.count_nonzero(q % step == step - 1))
        rough = np.ones(len(q), dtype=bool)
        shifted = q + 2
        for p in small:
            rough &= shifted % p != 0
        gamma += int(np.count_nonzero(rough))
    return StatsReport(k, x, omega, gamma, pi, Fraction(pi, primorial_totient(k)))
