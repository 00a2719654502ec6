"""Quantitative checks of the error-bound machinery on real interpolants.

The criterion curves only order candidate shape parameters; this module
closes the loop by fitting interpolants to concrete target functions,
measuring the worst-case error on a grid, and comparing against the full
error bound (constant prefactors included).  Bounds and errors are
compared in the log domain because the convergence factor alone can span
hundreds of orders of magnitude.

Target functions are gaussian bumps.  Under the Fourier convention
fhat(xi) = integral f(x) e^{-i <x, xi>} dx, the bump e^{-a|x|^2} has
fhat(xi) = (pi/a)^(n/2) e^{-|xi|^2/(4a)}, so its squared weighted norm
integral |fhat|^2 e^{|xi|^2/sigma} d xi is finite exactly when
sigma > 2a and has the closed form (pi/a)^n (pi/kappa)^(n/2) with
kappa = 1/(2a) - 1/sigma.  That one convention is used consistently
everywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple, Union

import numpy as np
from scipy.spatial import cKDTree

from .constants import DerivedConstants, ProblemSpec, derive_constants
from .criterion import (
    CriterionKind,
    Regime,
    log_h_beta_neg1_oned,
    log_h_general,
    regime_for,
)
from .errors import InputError, PreconditionError, SpecError
from .rbf import Kernel, NodeSet, evaluate, fit

__all__ = [
    "GaussianBump",
    "BoundReport",
    "e_sigma_norm",
    "fill_distance",
    "error_bound",
    "run_bound_experiment",
]

_LN2 = math.log(2.0)
_LNPI = math.log(math.pi)


@dataclass(frozen=True)
class GaussianBump:
    """Target function amplitude * e^{-a |x - center|^2}."""

    a: float
    n: int
    amplitude: float = 1.0
    center: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if not self.a > 0.0:
            raise SpecError(f"gaussian width parameter a must be positive, got {self.a}")
        if self.n < 1:
            raise SpecError(f"dimension must be >= 1, got {self.n}")
        if self.center is not None and len(self.center) != self.n:
            raise SpecError("center dimension does not match n")

    def __call__(self, x) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        if pts.shape[1] != self.n:
            raise InputError(
                f"points have dimension {pts.shape[1]}, expected {self.n}"
            )
        if self.center is not None:
            pts = pts - np.asarray(self.center, dtype=float)
        r2 = np.sum(pts ** 2, axis=1)
        out = self.amplitude * np.exp(-self.a * r2)
        return out if np.ndim(x) > 1 else float(out[0])


def e_sigma_norm(f: GaussianBump, sigma: float) -> float:
    """Weighted L2 norm of the bump in the gaussian native space.

    Closed form |amplitude| (pi/a)^(n/2) (pi/kappa)^(n/4) with
    kappa = 1/(2a) - 1/sigma; translation of the bump does not change it.
    Raises :class:`PreconditionError` when sigma <= 2a (the integral
    diverges).
    """
    if sigma <= 0.0:
        raise SpecError(f"sigma must be positive, got {sigma}")
    kappa = 1.0 / (2.0 * f.a) - 1.0 / sigma
    if kappa <= 0.0:
        raise PreconditionError(
            f"norm diverges: needs sigma > 2a, got sigma={sigma:g}, a={f.a:g}"
        )
    return (
        abs(f.amplitude)
        * (math.pi / f.a) ** (0.5 * f.n)
        * (math.pi / kappa) ** (0.25 * f.n)
    )


def fill_distance(
    cube: Tuple, nodes: Union[NodeSet, np.ndarray], grid_per_side: int
) -> float:
    """Approximate worst-case distance from the cube to the node set.

    Maximizes the nearest-node distance over a uniform tensor grid with
    grid_per_side points per axis (endpoints included), converging to the
    true supremum from below as the grid refines.
    """
    if grid_per_side < 2:
        raise InputError(f"grid_per_side must be >= 2, got {grid_per_side}")
    pts = nodes.points if isinstance(nodes, NodeSet) else np.atleast_2d(
        np.asarray(nodes, dtype=float)
    )
    if pts.size == 0:
        raise InputError("fill distance needs a nonempty node set")
    corner = np.asarray(cube[0], dtype=float).reshape(-1)
    side = float(cube[1])
    n = corner.shape[0]
    axes = [
        np.linspace(corner[i], corner[i] + side, grid_per_side) for i in range(n)
    ]
    mesh = np.meshgrid(*axes, indexing="ij")
    grid = np.column_stack([m.ravel() for m in mesh])
    dists, _ = cKDTree(pts).query(grid)
    return float(np.max(dists))


def _log_lambda_pow_bound(dc: DerivedConstants, c: float) -> float:
    """log of the convergence factor at the instance's delta, using the
    bound's constant C(c) = max(2 (rho/c) sqrt(n) e^{2 n gamma_n}, 2/(3 b0))."""
    log_abs = (
        math.log(math.log(1.5))
        - math.log(6.0)
        - dc.log_big_constant(c)
        - math.log(dc.gamma_n)
        - math.log(dc.spec.delta)
    )
    if log_abs > 709.0:
        return -math.inf
    return -math.exp(log_abs)


def error_bound(
    spec: ProblemSpec,
    dc: DerivedConstants,
    c: float,
    f_norm: float,
    kind: Optional[CriterionKind] = None,
) -> float:
    """log of the full worst-case error bound at shape parameter c.

    Includes every constant prefactor, the convergence factor at the
    instance's fill distance, and the target-function norm; this is the
    quantity the measured interpolation error is compared against.
    Raises :class:`PreconditionError` when the fill distance exceeds the
    admissible cap for this c.
    """
    if not c > 0.0:
        raise SpecError(f"shape parameter c must be positive, got {c}")
    if f_norm < 0.0:
        raise SpecError(f"function norm must be >= 0, got {f_norm}")
    regime = kind.regime if kind is not None else regime_for(spec.n, spec.beta)

    # c = c_min makes delta equal to the cap exactly; the 1e-12 slack in
    # log domain keeps that admissible boundary case from failing on
    # rounding alone.
    cap_log = dc.log_fill_cap(c)
    if math.log(spec.delta) > cap_log + 1e-12:
        cap = math.exp(cap_log) if cap_log < 709.0 else math.inf
        raise PreconditionError(
            f"fill distance delta={spec.delta:g} exceeds the admissible cap "
            f"delta0={cap:g} at c={c:g}"
        )

    n, beta, sigma = spec.n, spec.beta, spec.sigma
    half_log_nalpha = 0.5 * (math.log(n) + dc.log_alpha_n)
    half_log_delta_prod = 0.5 * dc.log_delta_product
    if regime is Regime.BETA_NEG1_1D:
        const = ((beta - 3.0) / 4.0) * _LN2 - 0.5 * _LNPI
        core = log_h_beta_neg1_oned(c, sigma)
    elif regime is Regime.BETA_POS:
        const = ((n + beta + 1.0) / 4.0) * _LN2 + ((n + 1.0) / 4.0) * _LNPI + dc.log_d0
        core = log_h_general(c, n, beta, sigma)
    else:
        # beta = -1 in n >= 2 and the general regime share one bound shape
        const = -(3.0 * n / 4.0) * (_LN2 + _LNPI)
        core = log_h_general(c, n, beta, sigma)

    log_norm = math.log(f_norm) if f_norm > 0.0 else -math.inf
    return (
        const
        + half_log_nalpha
        + half_log_delta_prod
        + core
        + _log_lambda_pow_bound(dc, c)
        + log_norm
    )


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one measured-error-versus-bound experiment."""

    c: float
    delta_measured: float
    log_bound: float
    max_error_measured: float
    satisfied: bool
    margin_log: float


def run_bound_experiment(
    spec: ProblemSpec,
    f: GaussianBump,
    nodes: NodeSet,
    c: float,
    eval_grid: int,
    grid_per_side: Optional[int] = None,
) -> BoundReport:
    """Fit, measure, and compare against the bound at the measured delta.

    Fits the interpolant to f on the nodes, measures max |f - s| over a
    uniform evaluation grid, measures the fill distance on a grid of
    ``grid_per_side`` points per axis (defaults to the evaluation grid),
    and evaluates :func:`error_bound` with delta replaced by the measured
    value.
    """
    if f.n != nodes.dim or spec.n != nodes.dim:
        raise InputError("dimension mismatch between spec, target, and nodes")
    kern = Kernel(c=c, beta=spec.beta, n=spec.n)
    interp = fit(kern, nodes, f(nodes.points))

    corner, side = nodes.cube
    axes = [np.linspace(corner[i], corner[i] + side, eval_grid) for i in range(spec.n)]
    mesh = np.meshgrid(*axes, indexing="ij")
    grid = np.column_stack([m.ravel() for m in mesh])
    err = float(np.max(np.abs(f(grid) - evaluate(interp, grid))))

    delta = fill_distance(nodes.cube, nodes, grid_per_side or eval_grid)
    spec_measured = replace(spec, delta=delta)
    dc = derive_constants(spec_measured)
    log_bound = error_bound(spec_measured, dc, c, e_sigma_norm(f, spec.sigma))

    log_err = math.log(err) if err > 0.0 else -math.inf
    satisfied = log_err <= log_bound
    if err == 0.0:
        margin = math.inf if log_bound > -math.inf else 0.0
    else:
        margin = log_bound - log_err
    return BoundReport(
        c=c,
        delta_measured=delta,
        log_bound=log_bound,
        max_error_measured=err,
        satisfied=satisfied,
        margin_log=margin,
    )
