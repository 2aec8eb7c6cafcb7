"""Closed-form edge-probability thresholds and the rainbow-path heuristics.

All logarithms are natural.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import DomainError


def threshold_constant(r: int) -> float:
    """``r**(r-2) / (r-2)!``, evaluated exactly in integers before rounding."""
    if r < 2:
        raise DomainError(f"r must be at least 2, got {r}")
    return float(Fraction(r ** (r - 2), math.factorial(r - 2)))


def _scale(n: float, r: int) -> float:
    return n ** (1.0 - 1.0 / r)


def conjectured_threshold(n: float, r: int, epsilon: float = 0.0) -> float:
    """``(C (1 + eps) log n)^(1/r) / n^(1 - 1/r)`` with ``C = r^(r-2)/(r-2)!``."""
    if r < 3:
        raise DomainError(f"conjectured threshold needs r >= 3, got {r}")
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    c = threshold_constant(r)
    return (c * (1.0 + epsilon) * math.log(n)) ** (1.0 / r) / _scale(n, r)


def diameter_threshold(n: float, r: int) -> float:
    """Sharp threshold for diameter at most ``r``: ``(2 log n)^(1/r) / n^(1 - 1/r)``."""
    if r < 2 or n < 2:
        raise DomainError(f"need r >= 2 and n >= 2, got r={r}, n={n}")
    return (2.0 * math.log(n)) ** (1.0 / r) / _scale(n, r)


def semisharp_bounds(n: float, r: int) -> tuple[float, float]:
    """``(log n)^(1/r)/n^(1-1/r)`` and the known upper form ``(2^(20 r) log n)^(1/r)/n^(1-1/r)``."""
    if r < 2 or n < 2:
        raise DomainError(f"need r >= 2 and n >= 2, got r={r}, n={n}")
    log_n = math.log(n)
    lower = log_n ** (1.0 / r) / _scale(n, r)
    # (2^(20r))^(1/r) == 2^20 exactly; avoids overflow for large r
    upper = 2.0**20 * lower
    return lower, upper


def expected_rainbow_r_path_count(n: float, r: int, p: float) -> float:
    """Heuristic mean number of rainbow r-paths joining a fixed pair: ``r!/r^r n^(r-1) p^r``."""
    if r < 2:
        raise DomainError(f"r must be at least 2, got {r}")
    return float(Fraction(math.factorial(r), r**r)) * n ** (r - 1) * p**r


def heuristic_bad_pair_estimate(n: float, r: int, p: float) -> tuple[float, float]:
    """Poisson estimate of the chance a pair has no rainbow r-path, and the expected number of such pairs."""
    per_pair = math.exp(-expected_rainbow_r_path_count(n, r, p))
    return per_pair, n * (n - 1) / 2.0 * per_pair


@dataclass(frozen=True)
class ThresholdParams:
    n: int
    r: int
    epsilon: float = 0.0

    @property
    def C(self) -> float:
        return threshold_constant(self.r)

    @property
    def p(self) -> float:
        return conjectured_threshold(self.n, self.r, self.epsilon)

    def table(self) -> list[tuple[str, float]]:
        """Labelled values of every threshold and heuristic quantity."""
        n, r = self.n, self.r
        lower, upper = semisharp_bounds(n, r)
        rows = [("C", self.C)]
        if r >= 3:
            p = self.p
            per_pair, bad = heuristic_bad_pair_estimate(n, r, p)
            rows.append(("conjectured_threshold", p))
        rows += [
            ("diameter_threshold", diameter_threshold(n, r)),
            ("semisharp_lower", lower),
            ("semisharp_upper", upper),
        ]
        if r >= 3:
            rows += [
                ("expected_rainbow_r_paths", expected_rainbow_r_path_count(n, r, p)),
                ("per_pair_no_rainbow_r_path", per_pair),
                ("expected_bad_pairs", bad),
            ]
        return rows
