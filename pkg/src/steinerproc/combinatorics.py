"""Exact and log-space combinatorial primitives shared across the package.

Counts at the scales this package verifies (N^m/m! with N = C(n,r)) overflow
any fixed-width type, so every large count or probability travels as a
:class:`LogNumber`.  Exact big integers are reserved for the tiny-instance
oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NEG_INF = float("-inf")


def falling_factorial(x: int, t: int) -> int:
    """Product x(x-1)...(x-t+1); empty product 1 for t=0, exact integer."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    result = 1
    for i in range(t):
        result *= x - i
        if result == 0:
            return 0
    return result


@dataclass(frozen=True)
class LogNumber:
    """A real number stored as (ln of absolute value, sign in {-1, 0, +1}).

    Multiplication adds log magnitudes and multiplies signs; comparison
    between equal signs compares magnitudes.  The zero value is the unique
    (sign=0, log_magnitude=-inf) instance.
    """

    log_magnitude: float
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.sign == 0 and self.log_magnitude != NEG_INF:
            raise ValueError("zero LogNumber requires log_magnitude = -inf")

    @classmethod
    def zero(cls) -> "LogNumber":
        return cls(NEG_INF, 0)

    @classmethod
    def one(cls) -> "LogNumber":
        return cls(0.0, 1)

    @classmethod
    def from_value(cls, x) -> "LogNumber":
        if x == 0:
            return cls.zero()
        sign = 1 if x > 0 else -1
        # math.log accepts arbitrarily large Python ints
        return cls(math.log(x if sign > 0 else -x), sign)

    @classmethod
    def from_log(cls, log_magnitude: float, sign: int = 1) -> "LogNumber":
        if sign == 0:
            return cls.zero()
        return cls(float(log_magnitude), sign)

    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other: "LogNumber") -> "LogNumber":
        sign = self.sign * other.sign
        if sign == 0:
            return LogNumber.zero()
        return LogNumber(self.log_magnitude + other.log_magnitude, sign)

    def __truediv__(self, other: "LogNumber") -> "LogNumber":
        if other.sign == 0:
            raise ZeroDivisionError("division by zero LogNumber")
        if self.sign == 0:
            return LogNumber.zero()
        return LogNumber(self.log_magnitude - other.log_magnitude, self.sign * other.sign)

    def __neg__(self) -> "LogNumber":
        if self.sign == 0:
            return self
        return LogNumber(self.log_magnitude, -self.sign)

    def __lt__(self, other: "LogNumber") -> bool:
        if self.sign != other.sign:
            return self.sign < other.sign
        if self.sign == 0:
            return False
        if self.sign > 0:
            return self.log_magnitude < other.log_magnitude
        return self.log_magnitude > other.log_magnitude

    def __le__(self, other: "LogNumber") -> bool:
        return self == other or self < other

    def __gt__(self, other: "LogNumber") -> bool:
        return other < self

    def __ge__(self, other: "LogNumber") -> bool:
        return other <= self

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        if self.log_magnitude > 709.0:  # exp overflow threshold for float64
            return self.sign * math.inf
        return self.sign * math.exp(self.log_magnitude)


@dataclass(frozen=True)
class Params:
    """Problem size triple: n vertices, r-element edges, ell-subset constraint."""

    n: int
    r: int
    ell: int

    def __post_init__(self) -> None:
        if not 3 <= self.r <= self.n:
            raise ValueError(f"need 3 <= r <= n, got r={self.r}, n={self.n}")
        if not 2 <= self.ell <= self.r - 1:
            raise ValueError(f"need 2 <= ell <= r-1, got ell={self.ell}, r={self.r}")

    @property
    def N(self) -> int:
        """Number of r-subsets of the vertex set, C(n, r)."""
        return math.comb(self.n, self.r)

    @property
    def log_N(self) -> float:
        return log_binomial(self.n, self.r).log_magnitude


def log_binomial(n: int, k: int) -> LogNumber:
    """C(n, k) as a LogNumber, via log-gamma (relative error <= 1e-12 up to n ~ 1e9)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if k == 0 or k == n:
        return LogNumber.one()
    value = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    return LogNumber.from_log(value)


def trial_rng(master_seed: int, trial_index: int = 0) -> np.random.Generator:
    """The package RNG: one PCG64 stream per (master seed, trial index).

    Stream-splitting rule: ``SeedSequence(master_seed, spawn_key=(trial_index,))``
    feeds a PCG64 bit generator, so trials are independent and bit-reproducible
    under any execution order or worker count.
    """
    seq = np.random.SeedSequence(master_seed, spawn_key=(trial_index,))
    return np.random.Generator(np.random.PCG64(seq))


def sample_uniform_rset(params: Params, rng: np.random.Generator) -> tuple[int, ...]:
    """Uniform r-subset of {1..n}, each with probability exactly 1/C(n,r).

    Floyd's sampler: exactly r integer draws, no rejection.  Output is the
    sorted tuple of 1-based labels.
    """
    chosen: set[int] = set()
    for j in range(params.n - params.r, params.n):
        t = int(rng.integers(0, j + 1))
        chosen.add(j if t in chosen else t)
    return tuple(sorted(v + 1 for v in chosen))
