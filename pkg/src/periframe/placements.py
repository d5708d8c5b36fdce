"""Placement parameters modulo isometry, squared lengths, rigidity.

A placement of a d-periodic graph is reduced modulo isometries and the
choice of origin to the pair (t, omega): lattice-coordinate offsets
t_1..t_{n-1} of the non-base vertex orbits and the Gram matrix omega of
the period generators. The base vertex sits at t_0 = 0. The packed
parameter vector concatenates the t rows with the upper triangle of
omega, giving d(n-1) + d(d+1)/2 coordinates.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .config import DEFAULT_CONFIG, RunConfig
from .errors import DimensionMismatchError, GraphFormatError, NotPositiveDefiniteError
from .graphs import PeriodicGraph
from . import kernels


def n_params(d: int, n: int) -> int:
    """Dimension of the parameter space: d(n-1) translational + d(d+1)/2 Gram."""
    return d * (n - 1) + d * (d + 1) // 2


def upper_triangle_indices(d: int):
    """(row, col) pairs of the omega upper triangle in packed order."""
    return [(a, b) for a in range(d) for b in range(a, d)]


@dataclass(frozen=True)
class PlacementParams:
    """A point (t, omega) of the parameter space.

    t has shape (n-1, d); omega is (d, d) symmetric. Positive definiteness
    of omega is not enforced here so that boundary points reached by path
    tracing remain representable; use require_positive_definite to check.
    """

    t: np.ndarray
    omega: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=np.float64).reshape(-1, self.omega_shape_dim())
        omega = np.asarray(self.omega, dtype=np.float64)
        if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
            raise DimensionMismatchError(f"omega must be square, got shape {omega.shape}")
        if not np.allclose(omega, omega.T, atol=0.0, rtol=0.0, equal_nan=False):
            if np.max(np.abs(omega - omega.T)) > 1e-12:
                raise DimensionMismatchError("omega must be symmetric")
            omega = 0.5 * (omega + omega.T)
        t.setflags(write=False)
        omega.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "omega", omega)

    def omega_shape_dim(self) -> int:
        om = np.asarray(self.omega)
        if om.ndim != 2:
            raise DimensionMismatchError(f"omega must be a matrix, got ndim {om.ndim}")
        return om.shape[1]

    @property
    def d(self) -> int:
        return self.omega.shape[0]

    @property
    def n(self) -> int:
        return self.t.shape[0] + 1

    def full_t(self) -> np.ndarray:
        """(n, d) array with the base-vertex zero row prepended."""
        return np.vstack([np.zeros((1, self.d)), self.t])

    def pack(self) -> np.ndarray:
        parts = [self.t.reshape(-1)]
        parts.append(np.array([self.omega[a, b] for a, b in upper_triangle_indices(self.d)]))
        return np.concatenate(parts)

    def to_dict(self) -> dict:
        return {
            "t": [[float(x) for x in row] for row in self.t],
            "omega_upper": [float(self.omega[a, b]) for a, b in upper_triangle_indices(self.d)],
        }


def unpack(vec: np.ndarray, d: int, n: int) -> PlacementParams:
    vec = np.asarray(vec, dtype=np.float64).reshape(-1)
    if vec.size != n_params(d, n):
        raise DimensionMismatchError(
            f"parameter vector has {vec.size} entries, expected {n_params(d, n)}"
        )
    t = vec[: d * (n - 1)].reshape(n - 1, d)
    omega = np.zeros((d, d))
    for (a, b), val in zip(upper_triangle_indices(d), vec[d * (n - 1) :]):
        omega[a, b] = val
        omega[b, a] = val
    return PlacementParams(t=t, omega=omega)


def params_from_dict(doc: dict) -> PlacementParams:
    if not isinstance(doc, dict) or "t" not in doc or "omega_upper" not in doc:
        raise GraphFormatError("parameter document needs keys 't' and 'omega_upper'")
    upper = [float(x) for x in doc["omega_upper"]]
    # d(d+1)/2 = len(upper) determines d
    d = int((math.isqrt(8 * len(upper) + 1) - 1) // 2)
    if d * (d + 1) // 2 != len(upper):
        raise GraphFormatError(f"omega_upper length {len(upper)} is not triangular")
    t_rows = doc["t"]
    if not isinstance(t_rows, list):
        raise GraphFormatError("'t' must be a list of coordinate rows")
    for row in t_rows:
        if not isinstance(row, list) or len(row) != d:
            raise GraphFormatError(f"each t row must have d={d} entries")
    omega = np.zeros((d, d))
    for (a, b), val in zip(upper_triangle_indices(d), upper):
        omega[a, b] = val
        omega[b, a] = val
    t = np.array(t_rows, dtype=np.float64).reshape(len(t_rows), d)
    return PlacementParams(t=t, omega=omega)


def parse_params(text: str) -> PlacementParams:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"not valid JSON: {exc}") from exc
    return params_from_dict(doc)


def serialize_params(p: PlacementParams) -> str:
    return json.dumps(p.to_dict(), indent=2)


def load_params(path) -> PlacementParams:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_params(fh.read())


def check_match(g: PeriodicGraph, p: PlacementParams) -> None:
    if p.d != g.d or p.n != g.n:
        raise DimensionMismatchError(
            f"parameters are for (d={p.d}, n={p.n}) but graph has (d={g.d}, n={g.n})"
        )


# ---------------------------------------------------------------------------
# Raw placements and the quotient map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RawPlacement:
    """Concrete periodic placement: Cartesian positions and period basis.

    positions is (n, d); basis is (d, d) with the period generators as
    columns, so a point with lattice coordinates c sits at basis @ c.
    """

    positions: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=np.float64)
        basis = np.asarray(self.basis, dtype=np.float64)
        if basis.ndim != 2 or basis.shape[0] != basis.shape[1]:
            raise DimensionMismatchError("period basis must be square")
        if pos.ndim != 2 or pos.shape[1] != basis.shape[0]:
            raise DimensionMismatchError("positions and basis dimensions disagree")
        pos.setflags(write=False)
        basis.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "basis", basis)

    @property
    def d(self) -> int:
        return self.basis.shape[0]

    @property
    def n(self) -> int:
        return self.positions.shape[0]


def quotient_map(raw: RawPlacement, config: RunConfig = DEFAULT_CONFIG) -> PlacementParams:
    """Reduce a concrete placement modulo isometry and origin choice.

    t_i is the lattice-coordinate offset of vertex i from vertex 0 and
    omega the Gram matrix of the periods. Isometric placements with the
    same vertex order map to the identical parameter point.
    """
    basis = raw.basis
    det = np.linalg.det(basis)
    if abs(det) <= config.pd_tol:
        raise NotPositiveDefiniteError("period basis is singular")
    inv = np.linalg.inv(basis)
    t = (raw.positions[1:] - raw.positions[0]) @ inv.T
    omega = basis.T @ basis
    omega = 0.5 * (omega + omega.T)
    return PlacementParams(t=t, omega=omega)


def cholesky_upper(omega: np.ndarray, pd_tol: float = DEFAULT_CONFIG.pd_tol) -> np.ndarray:
    """Upper-triangular U with positive diagonal and U.T @ U = omega.

    Raises NotPositiveDefiniteError when a pivot falls at or below pd_tol,
    which is the single positive-definiteness gate used everywhere.
    """
    omega = np.asarray(omega, dtype=np.float64)
    d = omega.shape[0]
    L = np.zeros((d, d))
    for k in range(d):
        pivot = omega[k, k] - np.dot(L[k, :k], L[k, :k])
        if pivot <= pd_tol:
            raise NotPositiveDefiniteError(
                f"Gram matrix pivot {pivot:.3e} at index {k} is not above {pd_tol:.1e}"
            )
        L[k, k] = math.sqrt(pivot)
        for i in range(k + 1, d):
            L[i, k] = (omega[i, k] - np.dot(L[i, :k], L[k, :k])) / L[k, k]
    return L.T


def is_positive_definite(omega: np.ndarray, pd_tol: float = DEFAULT_CONFIG.pd_tol) -> bool:
    try:
        cholesky_upper(omega, pd_tol)
    except NotPositiveDefiniteError:
        return False
    return True


def require_positive_definite(p: PlacementParams, config: RunConfig = DEFAULT_CONFIG) -> None:
    cholesky_upper(p.omega, config.pd_tol)


def realize(p: PlacementParams, config: RunConfig = DEFAULT_CONFIG) -> RawPlacement:
    """Canonical concrete placement: upper-triangular basis, vertex 0 at 0.

    Composing with quotient_map returns the same parameters up to floating
    error, and any two placements with equal parameters differ by an
    isometry.
    """
    check = p.omega  # shape validation happened in the dataclass
    basis = cholesky_upper(check, config.pd_tol)
    positions = np.vstack([np.zeros((1, p.d)), p.t @ basis.T])
    return RawPlacement(positions=positions, basis=basis)


# ---------------------------------------------------------------------------
# Squared lengths and rigidity
# ---------------------------------------------------------------------------


def edge_lengths_sq(g: PeriodicGraph, p: PlacementParams) -> np.ndarray:
    """Squared bar lengths in document edge order."""
    check_match(g, p)
    return kernels.edge_lengths_sq(p.full_t(), p.omega, g.tails(), g.heads(), g.labels())


def rigidity_matrix(g: PeriodicGraph, p: PlacementParams) -> np.ndarray:
    """Jacobian of edge_lengths_sq at p, shape (m, d(n-1) + d(d+1)/2)."""
    check_match(g, p)
    return kernels.rigidity_rows(p.full_t(), p.omega, g.tails(), g.heads(), g.labels())


def numerical_rank(matrix: np.ndarray, config: RunConfig = DEFAULT_CONFIG) -> int:
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.size == 0:
        return 0
    sigma = np.linalg.svd(matrix, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    cutoff = config.rank_rel_tol * sigma[0] * max(matrix.shape)
    return int(np.count_nonzero(sigma > cutoff))


def flex_dimension(g: PeriodicGraph, p: PlacementParams, config: RunConfig = DEFAULT_CONFIG) -> int:
    """Dimension of the kernel of the rigidity matrix at p.

    Zero means infinitesimally rigid modulo isometries; the count excludes
    trivial motions because the parametrization already quotients them out.
    """
    R = rigidity_matrix(g, p)
    return n_params(g.d, g.n) - numerical_rank(R, config)


# ---------------------------------------------------------------------------
# Exact-coordinate helpers (shared with the symmetry machinery)
# ---------------------------------------------------------------------------


def params_from_fractions(t_rows: Sequence[Sequence[Fraction]], omega_rows) -> PlacementParams:
    t = np.array([[float(x) for x in row] for row in t_rows], dtype=np.float64)
    omega = np.array([[float(x) for x in row] for row in omega_rows], dtype=np.float64)
    if t.size == 0:
        t = t.reshape(0, omega.shape[0])
    return PlacementParams(t=t, omega=omega)


def fraction_vector_to_params(vec: Sequence[Fraction], d: int, n: int) -> PlacementParams:
    if len(vec) != n_params(d, n):
        raise DimensionMismatchError(
            f"vector has {len(vec)} entries, expected {n_params(d, n)}"
        )
    return unpack(np.array([float(x) for x in vec], dtype=np.float64), d, n)


def params_to_fraction_vector(p: PlacementParams):
    """Best-effort exact packing, for seeding exact computations from floats."""
    vec = [Fraction(float(x)).limit_denominator(10**12) for x in p.pack()]
    return vec
