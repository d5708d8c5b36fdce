"""Rigidity counts, solution bounds, and deformation-path exploration.

The squared-length map has one cubic component per edge joining two
distinct orbits and one linear component per loop, so the number of
isolated complex configurations at generic lengths is at most 3^mu with
mu the non-loop count. Symmetry restricts the analysis to an affine
section: there the Jacobian collapses to one row per edge orbit, and
flexes are counted inside the section's coordinates. Path tracing
follows a kernel direction of the (restricted) Jacobian numerically
while holding all bar lengths fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_CONFIG, RunConfig
from .errors import NotOnLocusError, NotPositiveDefiniteError
from .graphs import PeriodicGraph
from .placements import (
    PlacementParams,
    edge_lengths_sq,
    is_positive_definite,
    n_params,
    numerical_rank,
    require_positive_definite,
    rigidity_matrix,
    unpack,
    upper_triangle_indices,
)
from .symmetry import (
    AffineSubspace,
    Automorphism,
    edge_orbit_quotient,
    fixed_locus,
    is_symmetry,
)


@dataclass(frozen=True)
class BezoutReport:
    """Edge census and the resulting bound on isolated configurations."""

    mu: int
    loops: int
    m: int
    d: int
    n: int
    bound: int
    minimally_rigid_count: bool
    range_ok: bool

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "loops": self.loops,
            "m": self.m,
            "bound": self.bound,
            "minimally_rigid_count": self.minimally_rigid_count,
            "range_ok": self.range_ok,
        }


def bezout_bound(g: PeriodicGraph) -> BezoutReport:
    """Count cubic constraints and report the 3^mu configuration bound.

    Loops contribute linear equations in omega alone and do not raise the
    degree; the range d·n − d <= mu <= m is the sanity window for graphs
    with the minimal-rigidity edge count.
    """
    mu = sum(1 for e in g.edges if e.tail != e.head)
    loops = g.m - mu
    target = g.d * g.n + g.d * (g.d - 1) // 2
    return BezoutReport(
        mu=mu,
        loops=loops,
        m=g.m,
        d=g.d,
        n=g.n,
        bound=3**mu,
        minimally_rigid_count=(g.m == target),
        range_ok=(g.d * g.n - g.d <= mu <= g.m),
    )


def minimal_rigidity_check(
    g: PeriodicGraph, trials: int = 8, config: RunConfig = DEFAULT_CONFIG
) -> bool:
    """Edge count m = d·n + C(d,2) plus generic full rank of the Jacobian.

    Random parameter points are drawn from the config seed: offsets
    uniform in [-1, 1], Gram matrix a positive-definite perturbation of
    the identity. One full-rank witness suffices.
    """
    target = g.d * g.n + g.d * (g.d - 1) // 2
    if g.m != target:
        return False
    rng = np.random.default_rng(config.seed)
    for _ in range(max(1, trials)):
        t = rng.uniform(-1.0, 1.0, size=(g.n - 1, g.d))
        sym = rng.uniform(-1.0, 1.0, size=(g.d, g.d))
        omega = np.eye(g.d) + 0.2 * (sym + sym.T)
        if not is_positive_definite(omega, config.pd_tol):
            continue
        p = PlacementParams(t=t, omega=omega)
        if numerical_rank(rigidity_matrix(g, p), config) == g.m:
            return True
    return False


# ---------------------------------------------------------------------------
# Symmetry-restricted rigidity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RestrictedSystem:
    """Length control of a framework constrained to a symmetry section.

    reduced_jacobian has one row per edge orbit and one column per locus
    direction; flex_dim counts kernel directions inside the section.
    """

    locus: AffineSubspace
    orbit_classes: tuple
    reduced_jacobian: np.ndarray
    rank: int
    flex_dim: int

    def to_dict(self) -> dict:
        return {
            "locus_dim": self.locus.dim,
            "orbit_classes": [list(c) for c in self.orbit_classes],
            "rank": self.rank,
            "flex_dim": self.flex_dim,
        }


def symmetric_restriction(
    g: PeriodicGraph,
    generators: Sequence[Automorphism],
    point: PlacementParams,
    config: RunConfig = DEFAULT_CONFIG,
) -> RestrictedSystem:
    """Restrict the length control to the fixed locus of the generators.

    The point must be fixed by every generator and have a genuine Gram
    matrix. Rows of the full Jacobian pulled back to the locus agree
    within one edge orbit, so each orbit keeps a single representative
    row; the count of locus directions not seen by those rows is the
    symmetric flex dimension.
    """
    require_positive_definite(point, config)
    for a in generators:
        if not is_symmetry(g, point, a, config):
            raise NotOnLocusError("point is not fixed by one of the generators")
    locus = fixed_locus(g, generators, config)
    classes = edge_orbit_quotient(g, generators)
    R = rigidity_matrix(g, point)
    D = np.array([[float(x) for x in v] for v in locus.directions], dtype=np.float64).T
    if locus.dim == 0:
        reduced = np.zeros((len(classes), 0))
        rank = 0
        return RestrictedSystem(locus, tuple(tuple(c) for c in classes), reduced, rank, 0)
    pulled = R @ D
    rows = []
    for cls in classes:
        rep = pulled[cls[0]]
        for e in cls[1:]:
            if np.max(np.abs(pulled[e] - rep)) > 1e-9:
                raise AssertionError(
                    "Jacobian rows within one edge orbit disagree on the locus"
                )
        rows.append(rep)
    reduced = np.array(rows)
    rank = numerical_rank(reduced, config)
    return RestrictedSystem(
        locus=locus,
        orbit_classes=tuple(tuple(c) for c in classes),
        reduced_jacobian=reduced,
        rank=rank,
        flex_dim=locus.dim - rank,
    )


# ---------------------------------------------------------------------------
# Deformation paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeformationPath:
    """Ordered samples of a traced deformation, start included.

    Every sample keeps all squared lengths within path_tol of the start
    and keeps the Gram matrix positive definite; step_stats records the
    corrector residual that certified each sample (0.0 for the start).
    """

    samples: tuple
    step_stats: tuple

    def __len__(self) -> int:
        return len(self.samples)

    def packed(self) -> np.ndarray:
        return np.array([p.pack() for p in self.samples])


def csv_header(d: int, n: int) -> List[str]:
    cols = [f"t_{i}_{r}" for i in range(1, n) for r in range(1, d + 1)]
    cols += [f"omega_{a + 1}{b + 1}" for a, b in upper_triangle_indices(d)]
    return cols


def path_to_csv(path: DeformationPath, g: PeriodicGraph) -> str:
    lines = [",".join(csv_header(g.d, g.n))]
    for p in path.samples:
        lines.append(",".join(f"{x:.17g}" for x in p.pack()))
    return "\n".join(lines) + "\n"


def _smallest_eig(omega: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(omega)[0])


class _Chart:
    """Coordinates for tracing: the full space or a locus section."""

    def __init__(self, g: PeriodicGraph, locus: Optional[AffineSubspace]):
        self.g = g
        N = n_params(g.d, g.n)
        if locus is None:
            self.base = np.zeros(N)
            self.D = np.eye(N)
        else:
            self.base = np.array([float(x) for x in locus.base])
            self.D = np.array(
                [[float(x) for x in v] for v in locus.directions], dtype=np.float64
            ).T.reshape(N, -1)

    @property
    def dim(self) -> int:
        return self.D.shape[1]

    def params(self, xi: np.ndarray) -> PlacementParams:
        return unpack(self.base + self.D @ xi, self.g.d, self.g.n)

    def lengths(self, xi: np.ndarray) -> np.ndarray:
        return edge_lengths_sq(self.g, self.params(xi))

    def jacobian(self, xi: np.ndarray) -> np.ndarray:
        return rigidity_matrix(self.g, self.params(xi)) @ self.D

    def coords_of(self, p: PlacementParams, tol: float) -> np.ndarray:
        x = p.pack()
        xi, *_ = np.linalg.lstsq(self.D, x - self.base, rcond=None)
        residual = np.max(np.abs(self.base + self.D @ xi - x)) if x.size else 0.0
        if residual > tol:
            raise NotOnLocusError(
                f"start point misses the section by {residual:.3e} (tolerance {tol:.1e})"
            )
        return xi


def _kernel_basis(J: np.ndarray, config: RunConfig) -> np.ndarray:
    if J.shape[1] == 0:
        return np.zeros((0, 0))
    U, sigma, Vt = np.linalg.svd(J)
    if sigma.size == 0 or sigma[0] == 0.0:
        return Vt.T
    cutoff = config.rank_rel_tol * sigma[0] * max(J.shape)
    rank = int(np.count_nonzero(sigma > cutoff))
    return Vt[rank:].T


def _correct(chart: _Chart, xi: np.ndarray, target: np.ndarray, config: RunConfig):
    """Damped least-squares projection back onto the length fiber."""
    current = xi.copy()
    res = chart.lengths(current) - target
    norm = np.max(np.abs(res)) if res.size else 0.0
    for _ in range(config.newton_max_iter):
        if norm <= config.path_tol:
            return current, norm
        J = chart.jacobian(current)
        try:
            delta, *_ = np.linalg.lstsq(J, res, rcond=None)
        except np.linalg.LinAlgError:
            return None
        scale = 1.0
        for _ in range(12):
            trial = current - scale * delta
            tres = chart.lengths(trial) - target
            tnorm = np.max(np.abs(tres)) if tres.size else 0.0
            if tnorm < norm or tnorm <= config.path_tol:
                current, res, norm = trial, tres, tnorm
                break
            scale *= 0.5
        else:
            return None
    return (current, norm) if norm <= config.path_tol else None


def trace_deformation(
    g: PeriodicGraph,
    start: PlacementParams,
    locus: Optional[AffineSubspace] = None,
    steps: int = 50,
    step_size: float = 0.05,
    config: RunConfig = DEFAULT_CONFIG,
) -> DeformationPath:
    """Predictor-corrector sweep of the constant-length fiber through start.

    Both directions of a kernel tangent of the (restricted) Jacobian are
    explored, splitting the step budget. A step is accepted only when the
    corrector restores all squared lengths within path_tol and the Gram
    matrix stays safely positive definite; steps halve on rejection down
    to min_step. A direction stops early at the definiteness boundary or
    when the kernel dimension changes, so a rigid start yields just the
    start point.
    """
    require_positive_definite(start, config)
    chart = _Chart(g, locus)
    xi0 = chart.coords_of(start, max(config.sym_tol, 1e-7))
    target = chart.lengths(xi0)
    kernel = _kernel_basis(chart.jacobian(xi0), config)
    kdim0 = kernel.shape[1]
    if kdim0 == 0:
        return DeformationPath(samples=(start,), step_stats=(0.0,))
    tangent0 = kernel[:, 0]

    def sweep(direction: float, budget: int):
        accepted = []
        stats = []
        xi = xi0.copy()
        tangent = direction * tangent0
        h = step_size
        while len(accepted) < budget:
            prediction = xi + h * tangent
            corrected = _correct(chart, prediction, target, config)
            if corrected is None:
                h *= 0.5
                if h < config.min_step:
                    break
                continue
            nxt, residual = corrected
            p = chart.params(nxt)
            if _smallest_eig(p.omega) < 10.0 * config.pd_tol:
                h *= 0.5
                if h < config.min_step:
                    break
                continue
            kern = _kernel_basis(chart.jacobian(nxt), config)
            if kern.shape[1] != kdim0:
                break
            overlaps = tangent @ kern
            pick = int(np.argmax(np.abs(overlaps)))
            new_tangent = kern[:, pick] * (1.0 if overlaps[pick] >= 0 else -1.0)
            xi = nxt
            tangent = new_tangent
            accepted.append((p, residual))
            stats.append(residual)
            h = min(h * 2.0, step_size)
        return accepted

    backward_budget = steps // 2
    forward_budget = steps - backward_budget
    forward = sweep(+1.0, forward_budget)
    backward = sweep(-1.0, backward_budget)
    samples = [p for p, _ in reversed(backward)] + [start] + [p for p, _ in forward]
    stats = [r for _, r in reversed(backward)] + [0.0] + [r for _, r in forward]
    return DeformationPath(samples=tuple(samples), step_stats=tuple(stats))
