"""Log-domain evaluation of the shape-parameter criterion curves.

For each admissible (beta, n) regime the error bound of the interpolation
theory has a c-dependent core H(c); the recommended shape parameter is the
minimizer of H over the admissible interval.  This module evaluates
log H(c) for every supported regime, together with the exponential
convergence factor lambda^(1/delta) that the two non-practical modes add.

Everything is computed in the log domain.  H ranges over hundreds of
orders of magnitude within a single curve (the exponential part behaves
like e^{sigma c^2 / 8} for large c), so linear-domain evaluation would
overflow long before the interesting region ends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List

import numpy as np

from .constants import DerivedConstants, Mode, ProblemSpec
from .errors import NumericError, SpecError

__all__ = [
    "Regime",
    "CriterionKind",
    "CurveSample",
    "regime_for",
    "kind_for",
    "xi_star",
    "log_h_beta_neg1_multid",
    "log_h_beta_neg1_multid_simplified",
    "log_h_beta_neg1_oned",
    "log_h_beta_pos",
    "log_h_general",
    "log_lambda_pow",
    "log_h_unified",
    "sample_curve",
    "oned_threshold",
    "case2_sq_derivative",
]

_LOG_INV_LN2 = -math.log(math.log(2.0))
_LOG_2_SQRT3 = math.log(2.0) + 0.5 * math.log(3.0)
_LN_2_3 = math.log(2.0 / 3.0)


class Regime(Enum):
    """Supported (beta, n) combinations, most specific first."""

    BETA_NEG1_MULTI = "beta=-1, n>=2"
    BETA_NEG1_1D = "beta=-1, n=1"
    BETA_POS = "beta>0"
    GENERAL = "|n+beta|>=1 and n+beta+1>=0"


@dataclass(frozen=True)
class CriterionKind:
    regime: Regime
    mode: Mode


@dataclass(frozen=True)
class CurveSample:
    """One point (c, log H(c)) of a criterion curve."""

    c: float
    log_h: float


def _regime_admissible(regime: Regime, n: int, beta: float) -> bool:
    if regime is Regime.BETA_NEG1_MULTI:
        return beta == -1.0 and n >= 2
    if regime is Regime.BETA_NEG1_1D:
        return beta == -1.0 and n == 1
    if regime is Regime.BETA_POS:
        return beta > 0.0
    return abs(n + beta) >= 1.0 and n + beta + 1.0 >= 0.0


def regime_for(n: int, beta: float) -> Regime:
    """The most specific regime covering (n, beta).

    Raises :class:`SpecError` when no criterion covers the combination
    (beta < 0 with n + beta + 1 < 0 or |n + beta| < 1, other than the
    special one-dimensional beta = -1 case).
    """
    if beta == -1.0:
        return Regime.BETA_NEG1_1D if n == 1 else Regime.BETA_NEG1_MULTI
    if beta > 0.0:
        return Regime.BETA_POS
    if _regime_admissible(Regime.GENERAL, n, beta):
        return Regime.GENERAL
    raise SpecError(
        f"no criterion is available for n={n}, beta={beta:g}: "
        "need |n+beta| >= 1 and n+beta+1 >= 0"
    )


def kind_for(spec: ProblemSpec) -> CriterionKind:
    return CriterionKind(regime_for(spec.n, spec.beta), spec.mode)


def _require_positive_c(c: float) -> float:
    c = float(c)
    if not (c > 0.0 and math.isfinite(c)):
        raise SpecError(f"shape parameter c must be a positive finite real, got {c}")
    return c


def _logaddexp(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    m = a if a > b else b
    return m + math.log1p(math.exp(-abs(a - b)))


def xi_star(c: float, sigma: float, q: float) -> float:
    """Positive critical point of xi^(q/2) e^(c xi - xi^2/sigma).

    Equals (c sigma + sqrt(c^2 sigma^2 + 4 sigma q)) / 4.  Evaluated so
    that neither very small nor very large c overflows the intermediate
    square.
    """
    c = _require_positive_c(c)
    if sigma <= 0.0:
        raise SpecError(f"sigma must be positive, got {sigma}")
    if q < 0.0:
        raise SpecError(f"exponent parameter q must be >= 0, got {q}")
    u = c * sigma
    if u > 1e150:
        # c^2 sigma^2 would overflow; factor c sigma out of the radical.
        return 0.25 * u * (1.0 + math.sqrt(1.0 + 4.0 * q / sigma / c / c))
    return 0.25 * (u + math.sqrt(u * u + 4.0 * sigma * q))


def log_h_beta_neg1_multid(c: float, n: int, sigma: float) -> float:
    """log of the criterion for the inverse multiquadric, beta=-1, n>=2.

    H(c) = c^(-n/4) [c + R]^(n/4)
           e^{(sigma/8)[c^2 + cR] - (sigma/16)[c^2 + cR + 2n/sigma]}
    with R = sqrt(c^2 + 4n/sigma).  H tends to infinity both as c -> 0+
    and as c -> infinity; its unique interior minimum is the recommended
    shape parameter (before admissibility clamping).
    """
    c = _require_positive_c(c)
    if n < 2:
        raise SpecError(f"this criterion requires n >= 2, got n={n}")
    r = math.hypot(c, 2.0 * math.sqrt(n / sigma))
    a = c * c + c * r
    return (
        0.25 * n * (math.log(c + r) - math.log(c))
        + (sigma / 8.0) * a
        - (sigma / 16.0) * (a + 2.0 * n / sigma)
    )


def log_h_beta_neg1_multid_simplified(c: float, n: int, sigma: float) -> float:
    """Algebraically equivalent form of :func:`log_h_beta_neg1_multid`.

    H(c) = [1 + sqrt(1 + 4n/(c^2 sigma))]^(n/4)
           e^{(sigma/16)[c^2 + cR]} e^{-n/8}.
    Kept as an independent evaluation path for consistency testing.
    """
    c = _require_positive_c(c)
    if n < 2:
        raise SpecError(f"this criterion requires n >= 2, got n={n}")
    w = math.sqrt(1.0 + 4.0 * n / sigma / c / c)
    return (
        0.25 * n * math.log1p(w)
        + (sigma / 16.0) * (c * c + c * (c * w))
        - n / 8.0
    )


def oned_threshold(sigma: float) -> float:
    """Branch point 2/sqrt(3 sigma) of the one-dimensional criterion."""
    if sigma <= 0.0:
        raise SpecError(f"sigma must be positive, got {sigma}")
    return 2.0 / math.sqrt(3.0 * sigma)


def log_h_beta_neg1_oned(c: float, sigma: float) -> float:
    """log of the criterion for beta=-1 in one dimension.

    H(c) = (1/sqrt(c)) [1/log 2 + 2 sqrt(3) M(c)]^(1/2), where
    M(c) = e^{1 - 1/(c^2 sigma)} up to the branch point 2/sqrt(3 sigma)
    and M(c) = sqrt(c xi*) e^{c xi* - xi*^2/sigma} beyond it, with
    xi* = (c sigma + sqrt(c^2 sigma^2 + 4 sigma))/4.  The two branches
    join continuously because xi* = 1/c exactly at the branch point.
    """
    c = _require_positive_c(c)
    if c <= oned_threshold(sigma):
        c2s = c * c * sigma
        # c^2 underflows for c below ~1e-162; the branch value then
        # vanishes entirely and only the constant term survives
        log_m = 1.0 - 1.0 / c2s if c2s > 0.0 else -math.inf
    else:
        xs = xi_star(c, sigma, 1.0)
        log_m = 0.5 * math.log(c * xs) + c * xs - xs * xs / sigma
    return -0.5 * math.log(c) + 0.5 * _logaddexp(
        _LOG_INV_LN2, _LOG_2_SQRT3 + log_m
    )


def log_h_general(c: float, n: int, beta: float, sigma: float) -> float:
    """log of the criterion core common to the remaining regimes.

    H(c) = c^((1+beta-n)/4) [xi*^((n+beta+1)/2)
           e^{c xi* - xi*^2/sigma}]^(1/2)
    with xi* the critical point from :func:`xi_star` at q = n + beta + 1.
    Requires |n + beta| >= 1 and n + beta + 1 >= 0.
    """
    c = _require_positive_c(c)
    if not _regime_admissible(Regime.GENERAL, n, beta):
        raise SpecError(
            f"core criterion needs |n+beta| >= 1 and n+beta+1 >= 0, "
            f"got n={n}, beta={beta:g}"
        )
    q = n + beta + 1.0
    xs = xi_star(c, sigma, q)
    return 0.25 * (1.0 + beta - n) * math.log(c) + 0.5 * (
        0.5 * q * math.log(xs) + c * xs - xs * xs / sigma
    )


def log_h_beta_pos(c: float, n: int, beta: float, sigma: float) -> float:
    """log of the criterion for multiquadrics with beta > 0 (any n >= 1)."""
    if not beta > 0.0:
        raise SpecError(f"this criterion requires beta > 0, got beta={beta:g}")
    return log_h_general(c, n, beta, sigma)


def _neg_exp(log_abs: float) -> float:
    """-e^{log_abs}, saturating to -inf instead of raising on overflow."""
    if log_abs > 709.0:
        return -math.inf
    return -math.exp(log_abs)


def log_lambda_pow(c: float, spec: ProblemSpec, dc: DerivedConstants) -> float:
    """log of the convergence factor lambda^(1/delta) at shape parameter c.

    In FIXED_B0 mode the factor equals e^{eta(delta) c} for c up to
    c0 = 3 b0 rho sqrt(n) e^{2 n gamma_n} and is the constant
    (2/3)^{b0/(4 gamma_n delta)} beyond; the two branches agree at c0.
    In DILATION_INVARIANT mode the exponential branch applies for all c.
    PRACTICAL mode has no such factor and asking for it is a caller bug.
    """
    c = _require_positive_c(c)
    mode = spec.mode
    if mode is Mode.PRACTICAL:
        raise SpecError("the convergence factor is undefined in practical mode")
    if mode is Mode.FIXED_B0:
        if dc.log_c0 is None:
            raise SpecError("fixed-b0 mode requires derived constants with b0")
        if math.log(c) >= dc.log_c0.log_value:
            log_abs = (
                math.log(math.log(1.5))
                + math.log(spec.b0)
                - math.log(4.0 * dc.gamma_n * spec.delta)
            )
            return _neg_exp(log_abs)
    return _neg_exp(dc.eta_log_abs + math.log(c))


def _check_kind(spec: ProblemSpec, kind: CriterionKind) -> None:
    if kind.mode is not spec.mode:
        raise SpecError(
            f"criterion mode {kind.mode.value!r} does not match the "
            f"problem mode {spec.mode.value!r}"
        )
    if not _regime_admissible(kind.regime, spec.n, spec.beta):
        raise SpecError(
            f"regime {kind.regime.name} is not admissible for "
            f"n={spec.n}, beta={spec.beta:g}"
        )


def log_h_unified(
    c: float, spec: ProblemSpec, dc: DerivedConstants, kind: CriterionKind
) -> float:
    """log H(c) for the requested regime, including the mode's factor.

    Practical mode evaluates the regime's bare criterion; the other two
    modes add :func:`log_lambda_pow`.  Constant prefactors of the error
    bound that do not depend on c are deliberately excluded here (they do
    not move the minimizer); the verification module carries them.
    """
    _check_kind(spec, kind)
    regime = kind.regime
    if regime is Regime.BETA_NEG1_MULTI:
        core = log_h_beta_neg1_multid(c, spec.n, spec.sigma)
    elif regime is Regime.BETA_NEG1_1D:
        core = log_h_beta_neg1_oned(c, spec.sigma)
    elif regime is Regime.BETA_POS:
        core = log_h_beta_pos(c, spec.n, spec.beta, spec.sigma)
    else:
        core = log_h_general(c, spec.n, spec.beta, spec.sigma)
    if kind.mode is Mode.PRACTICAL:
        return core
    return core + log_lambda_pow(c, spec, dc)


def sample_curve(
    spec: ProblemSpec,
    dc: DerivedConstants,
    kind: CriterionKind,
    c_lo: float,
    c_hi: float,
    count: int,
) -> List[CurveSample]:
    """Log-spaced samples of the criterion curve on [c_lo, c_hi].

    Deterministic; the endpoints are hit exactly.  The range is not
    clamped to the admissible interval so curves may be plotted beyond it.
    """
    if not (0.0 < c_lo < c_hi) or not math.isfinite(c_hi):
        raise SpecError(f"need 0 < c_lo < c_hi, got [{c_lo}, {c_hi}]")
    if count < 2:
        raise SpecError(f"need at least 2 samples, got {count}")
    cs = np.geomspace(c_lo, c_hi, count)
    cs[0], cs[-1] = c_lo, c_hi
    return [CurveSample(float(c), log_h_unified(float(c), spec, dc, kind)) for c in cs]


def case2_sq_derivative(c: float, sigma: float) -> float:
    """Derivative of H(c)^2 for beta=-1, n=1 on the small-c branch.

    d/dc H^2 = -1/(log(2) c^2)
               + 2 sqrt(3) e^{1 - 1/(c^2 sigma)} (2 - c^2 sigma)/(c^4 sigma).
    Only valid for 0 < c < 2/sqrt(3 sigma).  Near c = 1/sqrt(3 sigma) this
    is a small positive multiple of sigma, which is why the minimum sits a
    little to the left of that heuristic location.
    """
    c = _require_positive_c(c)
    if c >= oned_threshold(sigma):
        raise SpecError(
            f"derivative formula only applies below the branch point, got c={c}"
        )
    c2s = c * c * sigma
    if c2s == 0.0:
        raise NumericError(f"c={c} is too small for the derivative formula")
    return -1.0 / (math.log(2.0) * c * c) + (
        2.0 * math.sqrt(3.0) * math.exp(1.0 - 1.0 / c2s) * (2.0 - c2s) / (c2s * c * c)
    )
