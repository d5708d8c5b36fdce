"""Run-wide numerical knobs.

All tolerances are absolute unless noted. The defaults are calibrated for
O(1) inputs, which is what lattice-basis parametrizations produce.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class RunConfig:
    """Tolerances, caps and the RNG seed used by every deterministic run.

    pd_tol: Cholesky pivot threshold for accepting a Gram matrix as
        positive definite. The PD cone is open, so boundary points are
        treated as degenerate.
    sym_tol: residual tolerance for the symmetry conditions (translation
        part agreement and C^t*omega*C = omega).
    rank_rel_tol: relative singular value cutoff; sigma is counted
        towards the rank when sigma > rank_rel_tol * sigma_max * max(shape).
    path_tol: max-norm tolerance on edge-length drift along a traced
        deformation path.
    seed: seed for every randomized sampling routine.
    max_search_nodes: backtracking node cap for automorphism enumeration.
    max_coset_index: largest sublattice index k accepted for coset
        enumeration.
    newton_max_iter: corrector iteration cap per continuation step.
    min_step: smallest predictor step before a branch gives up.
    """

    pd_tol: float = 1e-10
    sym_tol: float = 1e-9
    rank_rel_tol: float = 1e-8
    path_tol: float = 1e-8
    seed: int = 12345
    max_search_nodes: int = 10**6
    max_coset_index: int = 64
    newton_max_iter: int = 25
    min_step: float = 1e-6

    def __post_init__(self) -> None:
        for name in ("pd_tol", "sym_tol", "rank_rel_tol", "path_tol", "min_step"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("max_search_nodes", "max_coset_index", "newton_max_iter"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")

    def with_overrides(self, **kwargs) -> "RunConfig":
        return replace(self, **kwargs)


DEFAULT_CONFIG = RunConfig()
