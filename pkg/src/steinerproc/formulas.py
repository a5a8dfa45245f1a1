"""Closed-form asymptotic evaluators for counts, containment, degree-zero
probabilities, connectivity thresholds, switching-class ratios and the
sandwich summation bounds.

Every evaluator of an asymptotic quantity returns the principal value
together with an explicit dropped-term magnitude: the size of the error
exponent it neglects, evaluated with constant 1.  Callers comparing against
data are expected to treat agreement as |difference| <= statistical error
plus a declared multiple of the dropped term; the package never pretends to
know the constants hidden inside those error terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import LogNumber, Params, falling_factorial, log_binomial


@dataclass(frozen=True)
class AsymptoticValue:
    """A log-space principal value plus the magnitude of its neglected exponent."""

    value: LogNumber
    dropped: float


def quadratic_exponent(params: Params, m: int) -> Fraction:
    """The leading exponent -[r]_ell^2 [m]_2 / (2 ell! n^ell), exact.

    At ell = 2 this equals -[r]_2^2 [m]_2 / (4 n^2) identically.
    """
    n, r, ell = params.n, params.r, params.ell
    return -Fraction(falling_factorial(r, ell) ** 2 * falling_factorial(m, 2),
                     2 * math.factorial(ell) * n ** ell)


def _cubic_exponent_l2(params: Params, m: int) -> Fraction:
    n, r = params.n, params.r
    return -Fraction(falling_factorial(r, 2) ** 3 * (3 * r * r - 15 * r + 20) * m ** 3,
                     24 * n ** 4)


def count_exponent(params: Params, m: int) -> float:
    """Exponent by which the system count falls short of N^m/m!, per branch."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    exponent = quadratic_exponent(params, m)
    if params.ell == 2:
        exponent += _cubic_exponent_l2(params, m)
    return float(exponent)


def count_dropped(params: Params, m: int) -> float:
    """Magnitude of the error exponent neglected by count_exponent."""
    n, ell = params.n, params.ell
    if ell == 2:
        return m * m / n ** 3
    # the quoted m^2/n^(ell+1) term absorbs an m^3/n^(2 ell) contribution
    # only under the stated growth window; report whichever is larger
    return max(m * m / n ** (ell + 1), m ** 3 / n ** (2 * ell))


def log_count_asymptotic(params: Params, m: int) -> AsymptoticValue:
    """log of the asymptotic m-edge system count: N^m/m! times exp(exponent)."""
    log_val = m * params.log_N - math.lgamma(m + 1) + count_exponent(params, m)
    return AsymptoticValue(LogNumber.from_log(log_val), count_dropped(params, m))


def log_containment_asymptotic(params: Params, m: int, k: int) -> AsymptoticValue:
    """log P[a fixed k-edge system is contained in a uniform m-edge system]."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > m:
        return AsymptoticValue(LogNumber.zero(), 0.0)
    n, ell = params.n, params.ell
    exponent = Fraction(falling_factorial(params.r, ell) ** 2 * k * k,
                        2 * math.factorial(ell) * n ** ell)
    log_val = (math.log(falling_factorial(m, k)) if k else 0.0) \
        - k * params.log_N + float(exponent)
    dropped = k / n ** ell + m * m * k / n ** (ell + 1)
    return AsymptoticValue(LogNumber.from_log(log_val), dropped)


def log_deg_zero_asymptotic(params: Params, m: int, h: int) -> AsymptoticValue:
    """log P[h fixed vertices are all isolated]: exponent -h r m / n."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    n, ell = params.n, params.ell
    log_val = -Fraction(h * params.r * m, n)
    dropped = m / n ** 2 + m * m / n ** (ell + 1)
    return AsymptoticValue(LogNumber.from_log(float(log_val)), dropped)


@dataclass(frozen=True)
class ThresholdParams:
    """Window and centre stages around the connectivity threshold (n/r) log n.

    omega defaults to log log n.  m_L and m_R bracket the window, m_c is the
    stage at offset c inside it.
    """

    n: int
    r: int
    omega: float | None = None
    c: float = 0.0

    def __post_init__(self) -> None:
        if self.n < self.r:
            raise ValueError("need n >= r")
        if self.n < 3:
            raise ValueError("need n >= 3")

    @property
    def omega_value(self) -> float:
        return math.log(math.log(self.n)) if self.omega is None else self.omega

    @property
    def m_L(self) -> int:
        return math.ceil(self.n / self.r * (math.log(self.n) - self.omega_value))

    @property
    def m_R(self) -> int:
        return math.ceil(self.n / self.r * (math.log(self.n) + self.omega_value))

    @property
    def m_c(self) -> int:
        return math.ceil(self.n / self.r * (math.log(self.n) + self.c))


def threshold_edge_count(tp: ThresholdParams) -> tuple[int, int, int]:
    """(m_L, m_c, m_R) for the given window."""
    return tp.m_L, tp.m_c, tp.m_R


def switching_ratio_predicted(params: Params, m: int, t: int) -> float:
    """Leading term of the class-size ratio |class t| / |class t-1|.

    Zero when fewer than two unclustered edges remain (m < 2t makes the class
    empty).
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    w = m - 2 * (t - 1)
    if w < 2:
        return 0.0
    n, ell = params.n, params.ell
    ratio = Fraction(math.comb(w, 2) * falling_factorial(params.r, ell) ** 2,
                     math.factorial(ell) * t * n ** ell)
    return float(ratio)


@dataclass(frozen=True)
class SummationInput:
    """Hypotheses for the sandwich bound on sums driven by the ratio recursion
    n_i/n_{i-1} = (A(i)/i) (1 - (i-1) B(i)).

    A and B hold A(1)..A(N) and B(1)..B(N) at indices 0..N-1.
    """

    N: int
    A: Sequence[float]
    B: Sequence[float]
    c_hat: float


def summation_bounds(inp: SummationInput) -> tuple[float, float, float]:
    """(Sigma1, Sigma2, exact sum) with Sigma1 <= sum <= Sigma2 guaranteed.

    Validates every hypothesis and names the first failed one.  The exact sum
    evaluates the recursion directly, including zero propagation: once some
    A(i) or 1-(i-1)B(i) hits zero, all later terms are zero.
    """
    N, A, B, c_hat = inp.N, list(inp.A), list(inp.B), inp.c_hat
    if N < 2:
        raise ValueError("hypothesis violated: N >= 2")
    if len(A) != N or len(B) != N:
        raise ValueError(f"hypothesis violated: A and B must have length N={N}")
    if not 0 < c_hat < 1 / 3:
        raise ValueError("hypothesis violated: 0 < c_hat < 1/3")
    for i in range(1, N + 1):
        if A[i - 1] < 0:
            raise ValueError(f"hypothesis violated: A({i}) >= 0")
        if 1 - (i - 1) * B[i - 1] < 0:
            raise ValueError(f"hypothesis violated: 1 - (i-1) B({i}) >= 0")
    A1, A2 = min(A), max(A)
    prods = [a * b for a, b in zip(A, B)]
    C1, C2 = min(prods), max(prods)
    if A2 / N > c_hat:
        raise ValueError("hypothesis violated: max A / N <= c_hat")
    if max(abs(C1), abs(C2)) > c_hat:
        raise ValueError("hypothesis violated: |A B| <= c_hat")

    total = 1.0
    term = 1.0
    for i in range(1, N + 1):
        term *= A[i - 1] / i * (1 - (i - 1) * B[i - 1])
        if term == 0.0:
            break
        total += term

    tail = (2 * math.e * c_hat) ** N
    sigma1 = math.exp(A1 - 0.5 * A1 * C2) - tail
    sigma2 = math.exp(A2 - 0.5 * A2 * C1 + 0.5 * A2 * C1 * C1) + tail
    return sigma1, sigma2, total
