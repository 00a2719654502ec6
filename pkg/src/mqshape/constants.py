"""Derived constants of the multiquadric shape-parameter criteria.

A problem instance (dimension, kernel exponent, target-space parameter,
fill distance, optionally a cube side) determines a small family of
constants: the integer growth sequence gamma_n, the conditional positive
definiteness order m, the pair (rho, Delta_0), the unit-ball volume
alpha_n, and the admissibility endpoints c_min and c0 of the shape
parameter.  Several of these contain the factor e^{2 n gamma_n}, which
already for n = 4 equals e^{5056} and overflows double precision, so every
quantity that can carry that factor is stored as a natural logarithm.

All functions here are pure; the dataclasses are frozen and safe to share
between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import SpecError

__all__ = [
    "Mode",
    "ProblemSpec",
    "LogScalar",
    "DerivedConstants",
    "gamma_seq",
    "cpd_order",
    "rho_delta0",
    "multiindex_count",
    "d0_constant",
    "derive_constants",
]

_LN2 = math.log(2.0)
_LN3 = math.log(3.0)
_LN12 = math.log(12.0)
_LN_LN_3_2 = math.log(math.log(1.5))  # log of |log(2/3)|


class Mode(str, Enum):
    """How the exponential convergence factor lambda^(1/delta) is treated.

    PRACTICAL drops the factor entirely, FIXED_B0 uses its piecewise form
    for a cube of fixed side b0, and DILATION_INVARIANT assumes the domain
    admits arbitrarily large cubes so the factor stays exponential in c
    for every c.
    """

    PRACTICAL = "practical"
    FIXED_B0 = "fixed-b0"
    DILATION_INVARIANT = "dilation-invariant"


def _validate_beta(beta: float) -> float:
    beta = float(beta)
    if not math.isfinite(beta):
        raise SpecError(f"kernel exponent beta must be finite, got {beta}")
    if beta >= 0.0 and beta.is_integer() and int(beta) % 2 == 0:
        raise SpecError(
            f"kernel exponent beta={beta:g} is a nonnegative even integer, "
            "which is outside the admissible kernel family"
        )
    return beta


def _validate_dimension(n: int) -> int:
    if not isinstance(n, (int,)) or isinstance(n, bool):
        raise SpecError(f"dimension n must be an integer, got {n!r}")
    if n < 1:
        raise SpecError(f"dimension n must be >= 1, got {n}")
    return n


@dataclass(frozen=True)
class ProblemSpec:
    """One shape-parameter selection problem.

    Parameters
    ----------
    n : int
        Space dimension, n >= 1.
    beta : float
        Kernel exponent; any real except the nonnegative even integers.
    sigma : float
        Parameter of the target function space (the native space of
        gaussians with that sigma), sigma > 0.
    delta : float
        Fill distance of the intended node set, delta > 0.
    b0 : float, optional
        Cube side length.  Required in FIXED_B0 mode.
    mode : Mode
        Treatment of the convergence factor, see :class:`Mode`.
    """

    n: int
    beta: float
    sigma: float
    delta: float
    b0: Optional[float] = None
    mode: Mode = Mode.PRACTICAL

    def __post_init__(self):
        _validate_dimension(self.n)
        _validate_beta(self.beta)
        if not (self.sigma > 0.0 and math.isfinite(self.sigma)):
            raise SpecError(f"sigma must be a positive finite real, got {self.sigma}")
        if not (self.delta > 0.0 and math.isfinite(self.delta)):
            raise SpecError(f"delta must be a positive finite real, got {self.delta}")
        if self.b0 is not None and not (self.b0 > 0.0 and math.isfinite(self.b0)):
            raise SpecError(f"b0 must be a positive finite real, got {self.b0}")
        mode = Mode(self.mode)
        object.__setattr__(self, "mode", mode)
        if mode is Mode.FIXED_B0 and self.b0 is None:
            raise SpecError("mode 'fixed-b0' requires a cube side b0")


@dataclass(frozen=True, order=True)
class LogScalar:
    """A strictly positive real represented by its natural logarithm.

    Multiplication of the represented values is addition of ``log_value``,
    and the ordering of ``LogScalar`` instances matches the ordering of the
    represented values, so huge constants like e^{2 n gamma_n} can be
    combined and compared without ever leaving the representable range.
    """

    log_value: float

    @classmethod
    def from_value(cls, value: float) -> "LogScalar":
        if not value > 0.0:
            raise SpecError(f"LogScalar requires a positive value, got {value}")
        return cls(math.log(value))

    @property
    def value(self) -> float:
        """The represented number; overflows to inf when too large."""
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf

    def __mul__(self, other: "LogScalar") -> "LogScalar":
        return LogScalar(self.log_value + other.log_value)

    def __truediv__(self, other: "LogScalar") -> "LogScalar":
        return LogScalar(self.log_value - other.log_value)

    def __pow__(self, exponent: float) -> "LogScalar":
        return LogScalar(self.log_value * exponent)


def gamma_seq(n: int) -> int:
    """Integer growth sequence: 2 for n=1, then 2n(1 + previous).

    Evaluated with exact (arbitrary precision) integer arithmetic, since the
    value seeds exponents where even a one-ulp slip scales results by e.
    """
    _validate_dimension(n)
    g = 2
    for k in range(2, n + 1):
        g = 2 * k * (1 + g)
    return g


def cpd_order(beta: float) -> int:
    """Conditional positive definiteness order: max(ceil(beta/2), 0)."""
    beta = _validate_beta(beta)
    return max(math.ceil(beta / 2.0), 0)


def _log_falling_product(hi: int, lo: int) -> float:
    """log of hi*(hi-1)*...*lo for integers hi >= lo - 1 >= 0 (empty -> 0)."""
    if hi < lo:
        return 0.0
    return math.lgamma(hi + 1.0) - math.lgamma(float(lo))


def rho_delta0(n: int, beta: float) -> tuple[float, float]:
    """Admissibility factor rho and bound constant Delta_0 (as a log).

    The pair depends on where beta sits relative to the dimension:

    * beta < n - 3 with s = ceil((n - beta - 3)/2):
      for beta < 0, rho = (3+s)/3 and Delta_0 = (2+s)(1+s)...3 / rho^2;
      for beta > 0 with m = ceil(beta/2), rho = 1 + s/(2m+3) and
      Delta_0 = (2m+2+s)...(2m+3) / rho^(2m+2).
    * n - 3 <= beta < n - 1: rho = 1, Delta_0 = 1.
    * beta >= n - 1 with s = -ceil((n - beta - 3)/2): rho = 1 and
      Delta_0 = 1 / ((2m+2)(2m+1)...(2m-s+3)).

    Falling products are taken down to the stated last factor and an empty
    product is 1.  Delta_0 is returned as its natural log because the
    products grow factorially.
    """
    _validate_dimension(n)
    beta = _validate_beta(beta)
    if beta < n - 3:
        s = math.ceil((n - beta - 3) / 2.0)
        if beta < 0:
            rho = (3.0 + s) / 3.0
            log_delta = _log_falling_product(2 + s, 3) - 2.0 * math.log(rho)
        else:
            m = math.ceil(beta / 2.0)
            rho = 1.0 + s / (2.0 * m + 3.0)
            log_delta = _log_falling_product(2 * m + 2 + s, 2 * m + 3) - (
                2.0 * m + 2.0
            ) * math.log(rho)
        return rho, log_delta
    if beta < n - 1:
        return 1.0, 0.0
    s = -math.ceil((n - beta - 3) / 2.0)
    m = math.ceil(beta / 2.0)
    return 1.0, -_log_falling_product(2 * m + 2, 2 * m - s + 3)


def multiindex_count(m: int, n: int) -> int:
    """Number of n-dimensional multi-indices of total order m."""
    if m < 0:
        raise SpecError(f"multi-index order must be >= 0, got {m}")
    _validate_dimension(n)
    return math.comb(m + n - 1, n - 1)


def d0_constant(n: int, beta: float) -> float:
    """log of the norm-comparison constant d0 for kernels with beta > 0.

    d0 = sqrt(m! C(m, n)) / ((2 pi)^n sqrt(2^(1 + beta/2))) * (2/pi)^(1/4)
    with m the c.p.d. order and C(m, n) the multi-index count.
    """
    beta = _validate_beta(beta)
    if not beta > 0.0:
        raise SpecError(f"d0 is defined only for beta > 0, got beta={beta:g}")
    _validate_dimension(n)
    m = cpd_order(beta)
    log_mfact = math.lgamma(m + 1.0)
    log_count = math.log(multiindex_count(m, n))
    return (
        0.5 * (log_mfact + log_count)
        - n * math.log(2.0 * math.pi)
        - 0.5 * (1.0 + beta / 2.0) * _LN2
        + 0.25 * math.log(2.0 / math.pi)
    )


@dataclass(frozen=True)
class DerivedConstants:
    """Everything a problem instance determines, in overflow-safe form.

    ``log_c_min`` is the log of the admissible lower endpoint
    12 rho sqrt(n) e^{2 n gamma_n} gamma_n (m+1) delta, ``log_c0`` the log
    of the knee 3 b0 rho sqrt(n) e^{2 n gamma_n} of the convergence factor
    (present only when b0 is), and ``eta_log_abs`` the log of |eta(delta)|
    where eta(delta) = log(2/3) / (12 rho sqrt(n) e^{2 n gamma_n}
    gamma_n delta) is the (negative) exponential rate of that factor.
    """

    spec: ProblemSpec
    m: int
    gamma_n: int
    rho: float
    log_delta_product: float  # log of the bound constant Delta_0
    alpha_n: float
    log_alpha_n: float
    log_c_min: LogScalar
    log_c0: Optional[LogScalar]
    eta_log_abs: float
    log_d0: Optional[float]
    two_n_gamma: float = field(repr=False, default=0.0)

    @property
    def eta(self) -> float:
        """eta(delta) itself; underflows to -0.0 in high dimensions."""
        try:
            return -math.exp(self.eta_log_abs)
        except OverflowError:
            return -math.inf

    def log_big_constant_at_log_c(self, log_c: float) -> float:
        """log of C(c) = max(2 (rho/c) sqrt(n) e^{2 n gamma_n}, 2/(3 b0)),
        taking log(c) so that c itself never needs to be representable.

        Without a cube side the second branch is absent, which corresponds
        to letting the cube grow with c (dilation-invariant domains).
        """
        branch = (
            _LN2
            + math.log(self.rho)
            + 0.5 * math.log(self.spec.n)
            + self.two_n_gamma
            - log_c
        )
        if self.spec.b0 is None:
            return branch
        return max(branch, _LN2 - _LN3 - math.log(self.spec.b0))

    def log_big_constant(self, c: float) -> float:
        if not c > 0.0:
            raise SpecError(f"shape parameter c must be positive, got {c}")
        return self.log_big_constant_at_log_c(math.log(c))

    def log_fill_cap_at_log_c(self, log_c: float) -> float:
        """log of the largest admissible fill distance, 1/(6 C gamma_n (m+1))."""
        return -(
            math.log(6.0)
            + self.log_big_constant_at_log_c(log_c)
            + math.log(self.gamma_n)
            + math.log(self.m + 1.0)
        )

    def log_fill_cap(self, c: float) -> float:
        if not c > 0.0:
            raise SpecError(f"shape parameter c must be positive, got {c}")
        return self.log_fill_cap_at_log_c(math.log(c))


def derive_constants(spec: ProblemSpec) -> DerivedConstants:
    """Populate :class:`DerivedConstants` from a problem instance."""
    n = spec.n
    m = cpd_order(spec.beta)
    gamma_n = gamma_seq(n)
    rho, log_delta_product = rho_delta0(n, spec.beta)
    two_n_gamma = float(2 * n * gamma_n)
    log_alpha_n = 0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n + 1.0)
    log_rho = math.log(rho)
    half_log_n = 0.5 * math.log(n)

    log_c_min = (
        _LN12
        + log_rho
        + half_log_n
        + two_n_gamma
        + math.log(gamma_n)
        + math.log(m + 1.0)
        + math.log(spec.delta)
    )
    log_c0 = None
    if spec.b0 is not None:
        log_c0 = LogScalar(
            _LN3 + math.log(spec.b0) + log_rho + half_log_n + two_n_gamma
        )
    eta_log_abs = _LN_LN_3_2 - (
        _LN12
        + log_rho
        + half_log_n
        + two_n_gamma
        + math.log(gamma_n)
        + math.log(spec.delta)
    )
    log_d0 = d0_constant(n, spec.beta) if spec.beta > 0 else None

    return DerivedConstants(
        spec=spec,
        m=m,
        gamma_n=gamma_n,
        rho=rho,
        log_delta_product=log_delta_product,
        alpha_n=math.exp(log_alpha_n),
        log_alpha_n=log_alpha_n,
        log_c_min=LogScalar(log_c_min),
        log_c0=log_c0,
        eta_log_abs=eta_log_abs,
        log_d0=log_d0,
        two_n_gamma=two_n_gamma,
    )
