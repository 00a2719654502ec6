"""Multiquadric kernel interpolation with polynomial side conditions.

The kernel is h(x) = Gamma(-beta/2) (c^2 + |x|^2)^(beta/2).  For beta > 0
it is conditionally positive definite of order m = ceil(beta/2) and the
interpolant carries a polynomial tail of degree m - 1 plus moment side
conditions on the kernel coefficients; for beta < 0 the tail is empty.
The saddle system is solved by a pivoted dense symmetric factorization,
which is plenty for node counts in the hundreds and keeps conditioning
diagnostics cheap and honest.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.special import gamma as _gamma_fn

from .constants import cpd_order
from .errors import ConditioningError, InputError, SpecError

__all__ = [
    "Kernel",
    "NodeSet",
    "Interpolant",
    "kernel_eval",
    "poly_basis",
    "fit",
    "evaluate",
    "condition_estimate",
    "uniform_grid",
]


@dataclass(frozen=True)
class Kernel:
    """Multiquadric kernel h(x) = Gamma(-beta/2) (c^2 + |x|^2)^(beta/2)."""

    c: float
    beta: float
    n: int
    gamma_factor: float = field(init=False)

    def __post_init__(self):
        if not self.c > 0.0:
            raise SpecError(f"shape parameter c must be positive, got {self.c}")
        g = float(_gamma_fn(-self.beta / 2.0))
        if not math.isfinite(g):
            raise SpecError(
                f"beta={self.beta:g} makes the kernel prefactor non-finite"
            )
        object.__setattr__(self, "gamma_factor", g)

    def radial(self, r2):
        """Kernel value as a function of squared distance (array-friendly)."""
        return self.gamma_factor * (self.c ** 2 + np.asarray(r2)) ** (self.beta / 2.0)


def kernel_eval(kernel: Kernel, x) -> float:
    """Evaluate the kernel at offset x (an n-vector)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (kernel.n,):
        raise InputError(f"expected an offset of shape ({kernel.n},), got {x.shape}")
    return float(kernel.radial(float(np.dot(x, x))))


@dataclass(frozen=True)
class NodeSet:
    """Pairwise-distinct centers inside an axis-aligned cube.

    ``cube`` is (corner, side): the cube spans corner + [0, side]^n.
    """

    points: np.ndarray
    cube: Tuple[np.ndarray, float]

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.ndim != 2 or pts.size == 0:
            raise InputError("node set must be a nonempty (N, n) array")
        corner = np.asarray(self.cube[0], dtype=float).reshape(-1)
        side = float(self.cube[1])
        if corner.shape[0] != pts.shape[1]:
            raise InputError(
                f"cube corner dimension {corner.shape[0]} does not match "
                f"node dimension {pts.shape[1]}"
            )
        if not side > 0.0:
            raise InputError(f"cube side must be positive, got {side}")
        slack = 1e-12 * max(side, 1.0)
        if (pts < corner - slack).any() or (pts > corner + side + slack).any():
            raise InputError("all nodes must lie inside the cube")
        if pts.shape[0] > 1:
            d2 = _pairwise_sq_dists(pts)
            iu = np.triu_indices(pts.shape[0], k=1)
            if (d2[iu] == 0.0).any():
                raise InputError("node set contains duplicate points")
        pts.setflags(write=False)
        corner.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "cube", (corner, side))

    @property
    def count(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def uniform_grid(corner, side: float, per_side: int, n: int) -> NodeSet:
    """Uniform tensor grid of per_side^n nodes filling the cube."""
    if per_side < 1:
        raise InputError(f"per_side must be >= 1, got {per_side}")
    corner = np.asarray(corner, dtype=float).reshape(-1)
    axes = [np.linspace(corner[i], corner[i] + side, per_side) for i in range(n)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.column_stack([m.ravel() for m in mesh])
    return NodeSet(points=pts, cube=(corner, side))


def _pairwise_sq_dists(pts: np.ndarray) -> np.ndarray:
    """Squared distance matrix, assembled once on the upper triangle and
    mirrored so the result is symmetric to the bit."""
    n = pts.shape[0]
    iu = np.triu_indices(n)
    diffs = pts[iu[0]] - pts[iu[1]]
    d2 = np.zeros((n, n))
    d2[iu] = np.einsum("ij,ij->i", diffs, diffs)
    d2.T[iu] = d2[iu]
    return d2


def poly_basis(m: int, n: int) -> List[Tuple[int, ...]]:
    """Monomial exponent tuples spanning polynomials of degree <= m - 1.

    Graded lexicographic order; empty for m = 0 (no polynomial tail).
    """
    if m < 0:
        raise SpecError(f"order must be >= 0, got {m}")
    if n < 1:
        raise SpecError(f"dimension must be >= 1, got {n}")
    basis: List[Tuple[int, ...]] = []

    def compositions(total: int, parts: int):
        if parts == 1:
            yield (total,)
            return
        for head in range(total, -1, -1):
            for tail in compositions(total - head, parts - 1):
                yield (head,) + tail

    for degree in range(m):
        basis.extend(compositions(degree, n))
    return basis


def _poly_matrix(exponents: Sequence[Tuple[int, ...]], pts: np.ndarray) -> np.ndarray:
    q = len(exponents)
    p = np.ones((pts.shape[0], q))
    for j, expo in enumerate(exponents):
        for axis, power in enumerate(expo):
            if power:
                p[:, j] *= pts[:, axis] ** power
    return p


@dataclass(frozen=True)
class Interpolant:
    """Fitted interpolant: kernel part plus optional polynomial tail."""

    kernel: Kernel
    nodes: NodeSet
    kernel_coeffs: np.ndarray
    poly_coeffs: np.ndarray
    poly_exponents: Tuple[Tuple[int, ...], ...]
    side_condition_residual: float
    node_residual: float
    condition_estimate: float


def _cond1(matrix: np.ndarray) -> float:
    try:
        return float(np.linalg.cond(matrix, 1))
    except np.linalg.LinAlgError:
        return math.inf


def fit(kernel: Kernel, nodes: NodeSet, values) -> Interpolant:
    """Solve the interpolation saddle system for the given data.

    The system is [[A, P], [P^T, 0]] [coef; poly] = [values; 0] with
    A the kernel matrix and P the polynomial block.  Raises
    :class:`InputError` for mismatched data or a node set that cannot
    determine the polynomial tail, and :class:`ConditioningError` when the
    factorization breaks down (expected behaviour for very large c).
    """
    values = np.asarray(values, dtype=float).reshape(-1)
    pts = nodes.points
    n_nodes = nodes.count
    if kernel.n != nodes.dim:
        raise InputError(
            f"kernel dimension {kernel.n} does not match node dimension {nodes.dim}"
        )
    if values.shape[0] != n_nodes:
        raise InputError(
            f"got {values.shape[0]} values for {n_nodes} nodes"
        )

    a = kernel.radial(_pairwise_sq_dists(pts))
    exponents = tuple(poly_basis(cpd_order(kernel.beta), nodes.dim))
    q = len(exponents)
    if q:
        p = _poly_matrix(exponents, pts)
        svals = np.linalg.svd(p, compute_uv=False)
        if svals[-1] <= 1e-10 * svals[0]:
            raise InputError(
                f"node set is not unisolvent for the degree-{cpd_order(kernel.beta) - 1} "
                "polynomial tail"
            )
        saddle = np.block([[a, p], [p.T, np.zeros((q, q))]])
        rhs = np.concatenate([values, np.zeros(q)])
    else:
        saddle = a
        rhs = values

    cond = _cond1(saddle)
    try:
        with warnings.catch_warnings():
            # conditioning is reported explicitly, as an estimate or an error
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu_piv = scipy.linalg.lu_factor(saddle)
            solution = scipy.linalg.lu_solve(lu_piv, rhs)
    except (scipy.linalg.LinAlgError, np.linalg.LinAlgError, ValueError) as exc:
        raise ConditioningError(
            f"saddle system is numerically singular (cond ~ {cond:.3e})",
            condition_estimate=cond,
        ) from exc
    if not np.isfinite(solution).all():
        raise ConditioningError(
            f"saddle solve produced non-finite coefficients (cond ~ {cond:.3e})",
            condition_estimate=cond,
        )
    # Iterative refinement with extended-precision residuals pushes the
    # node-reproduction residual toward roundoff for moderately
    # ill-conditioned systems (flat kernels stay beyond rescue).
    a_ext = saddle.astype(np.longdouble)
    b_ext = rhs.astype(np.longdouble)
    for _ in range(2):
        resid = np.asarray(b_ext - a_ext @ solution.astype(np.longdouble), dtype=float)
        if not np.isfinite(resid).all():
            break
        update = scipy.linalg.lu_solve(lu_piv, resid)
        if not np.isfinite(update).all():
            break
        solution = solution + update

    coef = solution[:n_nodes]
    poly = solution[n_nodes:]
    fitted = a @ coef + (p @ poly if q else 0.0)
    node_residual = float(np.max(np.abs(fitted - values)))
    side_residual = float(np.max(np.abs(p.T @ coef))) if q else 0.0
    return Interpolant(
        kernel=kernel,
        nodes=nodes,
        kernel_coeffs=coef,
        poly_coeffs=poly,
        poly_exponents=exponents,
        side_condition_residual=side_residual,
        node_residual=node_residual,
        condition_estimate=cond,
    )


def evaluate(interp: Interpolant, x) -> np.ndarray:
    """Evaluate the interpolant at one point (n,) or a batch (k, n)."""
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.shape[1] != interp.nodes.dim:
        raise InputError(
            f"evaluation points have dimension {pts.shape[1]}, "
            f"expected {interp.nodes.dim}"
        )
    centers = interp.nodes.points
    d2 = (
        np.sum(pts ** 2, axis=1)[:, None]
        - 2.0 * pts @ centers.T
        + np.sum(centers ** 2, axis=1)[None, :]
    )
    np.maximum(d2, 0.0, out=d2)
    s = interp.kernel.radial(d2) @ interp.kernel_coeffs
    if interp.poly_exponents:
        s = s + _poly_matrix(interp.poly_exponents, pts) @ interp.poly_coeffs
    return float(s[0]) if single else s


def condition_estimate(kernel: Kernel, nodes: NodeSet) -> float:
    """1-norm condition estimate of the full saddle matrix."""
    if kernel.n != nodes.dim:
        raise InputError(
            f"kernel dimension {kernel.n} does not match node dimension {nodes.dim}"
        )
    a = kernel.radial(_pairwise_sq_dists(nodes.points))
    exponents = poly_basis(cpd_order(kernel.beta), nodes.dim)
    q = len(exponents)
    if q:
        p = _poly_matrix(exponents, nodes.points)
        a = np.block([[a, p], [p.T, np.zeros((q, q))]])
    return _cond1(a)
