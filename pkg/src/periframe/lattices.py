"""Relaxation of periodicity to a finite-index sublattice.

Relaxing from the full translation lattice to M Z^d multiplies the
quotient by the coset count k = |det M|: every vertex orbit splits into k
copies tagged by a canonical coset representative, and every placement of
the original graph reappears as a placement of the relaxed graph with the
same bars in the same positions. The induced inclusion of parameter
spaces is affine, and its image is exactly the locus fixed by the
translations that were demoted from periods to symmetries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_CONFIG, RunConfig
from .errors import DimensionMismatchError, GraphFormatError, SearchCapExceeded, SingularLatticeError
from .exact import fracmat, hnf_upper, integer_det, invert, reduce_mod_hnf
from .graphs import LabeledEdge, PeriodicGraph
from .placements import PlacementParams, n_params, unpack, upper_triangle_indices
from .symmetry import Automorphism


@dataclass(frozen=True)
class SublatticeMap:
    """Integer matrix M with nonzero determinant; index k = |det M|."""

    M: tuple

    def __post_init__(self):
        M = tuple(tuple(int(x) for x in row) for row in self.M)
        d = len(M)
        if d == 0 or any(len(row) != d for row in M):
            raise GraphFormatError("M must be a nonempty square integer matrix")
        if integer_det([list(row) for row in M]) == 0:
            raise SingularLatticeError("sublattice matrix has determinant zero")
        object.__setattr__(self, "M", M)

    @property
    def d(self) -> int:
        return len(self.M)

    @property
    def k(self) -> int:
        return abs(integer_det([list(row) for row in self.M]))

    def to_dict(self) -> dict:
        return {"M": [list(row) for row in self.M]}


def sublattice_from_dict(doc: dict) -> SublatticeMap:
    if not isinstance(doc, dict) or "M" not in doc:
        raise GraphFormatError("sublattice document needs key 'M'")
    if not isinstance(doc["M"], list):
        raise GraphFormatError("'M' must be a matrix")
    return SublatticeMap(tuple(tuple(row) for row in doc["M"]))


def parse_sublattice(text: str) -> SublatticeMap:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"not valid JSON: {exc}") from exc
    return sublattice_from_dict(doc)


def load_sublattice(path) -> SublatticeMap:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_sublattice(fh.read())


@dataclass(frozen=True)
class CosetReps:
    """Canonical coset representatives of M Z^d in Z^d.

    reps[0] is always the origin; the rest enumerate the box of the
    Hermite form with the first coordinate varying fastest. index maps a
    representative back to its position.
    """

    sub: SublatticeMap
    reps: tuple
    hnf: tuple
    unimodular: tuple

    @property
    def k(self) -> int:
        return len(self.reps)

    def index_of(self) -> dict:
        return {rep: j for j, rep in enumerate(self.reps)}

    def decompose(self, vector: Sequence[int]) -> Tuple[tuple, tuple]:
        """Split an integer vector as rep + M @ residue; returns (rep, residue)."""
        H = [list(row) for row in self.hnf]
        rep, q = reduce_mod_hnf(H, list(vector))
        U = self.unimodular
        d = self.sub.d
        residue = tuple(sum(U[r][c] * q[c] for c in range(d)) for r in range(d))
        return tuple(rep), residue


def coset_representatives(sub: SublatticeMap, config: RunConfig = DEFAULT_CONFIG) -> CosetReps:
    """Integer points of the Hermite-form box, lexicographic from the origin.

    The Hermite form H = M @ U shares the column lattice of M, and the box
    {0 <= x_r < H[r][r]} holds exactly one point of each coset.
    """
    k = sub.k
    if k > config.max_coset_index:
        raise SearchCapExceeded(
            f"sublattice index {k} exceeds the cap {config.max_coset_index}"
        )
    H, U = hnf_upper([list(row) for row in sub.M])
    d = sub.d
    diag = [H[r][r] for r in range(d)]
    reps = []
    # first coordinate varies fastest
    counters = [0] * d
    total = 1
    for x in diag:
        total *= x
    for _ in range(total):
        reps.append(tuple(counters))
        for pos in range(d):
            counters[pos] += 1
            if counters[pos] < diag[pos]:
                break
            counters[pos] = 0
    if len(set(reps)) != k:
        raise AssertionError("coset enumeration produced a wrong count")
    return CosetReps(
        sub=sub,
        reps=tuple(reps),
        hnf=tuple(tuple(row) for row in H),
        unimodular=tuple(tuple(row) for row in U),
    )


# ---------------------------------------------------------------------------
# Graph relaxation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RelaxedGraph:
    """Relaxation bookkeeping: the new graph plus both index maps.

    vertex_index[i][j] is the new orbit of original orbit i shifted by
    coset rep j; edge_index[e][j] is the copy of original edge e whose
    tail sits in coset j.
    """

    graph: PeriodicGraph
    cosets: CosetReps
    vertex_index: tuple
    edge_index: tuple

    def to_dict(self) -> dict:
        return {
            "vertex_index": [list(row) for row in self.vertex_index],
            "edge_index": [list(row) for row in self.edge_index],
            "reps": [list(v) for v in self.cosets.reps],
        }


def relax_graph(
    g: PeriodicGraph, sub: SublatticeMap, config: RunConfig = DEFAULT_CONFIG
) -> RelaxedGraph:
    """Quotient of the same infinite graph by the sublattice M Z^d.

    New vertex orbits are pairs (orbit, coset); the copy of edge
    (i, i', l) whose tail carries coset rep nu_j runs to the coset of
    nu_j + l, and its new label is the residue of that decomposition.
    """
    if sub.d != g.d:
        raise DimensionMismatchError(f"sublattice is {sub.d}-dimensional, graph is {g.d}")
    cosets = coset_representatives(sub, config)
    k = cosets.k
    rep_index = cosets.index_of()
    n_new = g.n * k

    def vid(i: int, j: int) -> int:
        return i * k + j

    edges = []
    edge_index = []
    for e in g.edges:
        copies = []
        for j, nu in enumerate(cosets.reps):
            shifted = [nu[r] + e.label[r] for r in range(g.d)]
            rep, residue = cosets.decompose(shifted)
            j_head = rep_index[rep]
            copies.append(len(edges))
            edges.append(LabeledEdge(vid(e.tail, j), vid(e.head, j_head), residue))
        edge_index.append(tuple(copies))
    names = None
    if g.names is not None:
        names = tuple(
            f"{g.names[i]}+{''.join(str(x) for x in nu)}" if g.d > 1 else f"{g.names[i]}+{nu[0]}"
            for i in range(g.n)
            for nu in cosets.reps
        )
    graph = PeriodicGraph(d=g.d, n=n_new, edges=tuple(edges), names=names)
    vertex_index = tuple(tuple(vid(i, j) for j in range(k)) for i in range(g.n))
    return RelaxedGraph(graph=graph, cosets=cosets, vertex_index=vertex_index, edge_index=edge_index)


# ---------------------------------------------------------------------------
# Parameter relaxation
# ---------------------------------------------------------------------------


def relax_vector(g: PeriodicGraph, vec: Sequence[Fraction], relaxed: RelaxedGraph) -> list:
    """Exact affine inclusion of packed parameters into the relaxed space.

    The Gram matrix becomes M.T @ omega @ M and the offset of copy (i, j)
    is Minv @ (t_i + nu_j); with rep 0 at the origin the new base offset
    vanishes, preserving the base-vertex gauge.
    """
    d, n = g.d, g.n
    if len(vec) != n_params(d, n):
        raise DimensionMismatchError("packed vector does not match the original graph")
    sub = relaxed.cosets.sub
    k = relaxed.cosets.k
    M = fracmat(sub.M)
    Minv = invert(M)
    if Minv is None:
        raise SingularLatticeError("sublattice matrix has determinant zero")
    vec = [Fraction(x) for x in vec]
    t_rows = [[Fraction(0)] * d] + [
        [vec[(i - 1) * d + r] for r in range(d)] for i in range(1, n)
    ]
    base = d * (n - 1)
    omega = [[Fraction(0)] * d for _ in range(d)]
    for idx, (a, b) in enumerate(upper_triangle_indices(d)):
        omega[a][b] = vec[base + idx]
        omega[b][a] = vec[base + idx]
    new_t = []
    for i in range(n):
        for j, nu in enumerate(relaxed.cosets.reps):
            shifted = [t_rows[i][r] + nu[r] for r in range(d)]
            row = [sum(Minv[r][c] * shifted[c] for c in range(d)) for r in range(d)]
            new_t.append(row)
    # drop the new base vertex (orbit 0, coset 0), whose offset is zero
    if any(x != 0 for x in new_t[0]):
        raise AssertionError("base-vertex gauge broken by relaxation")
    out = []
    for row in new_t[1:]:
        out.extend(row)
    tmp = [[sum(M[p][a] * omega[p][q] for p in range(d)) for q in range(d)] for a in range(d)]
    new_omega = [
        [sum(tmp[a][q] * M[q][b] for q in range(d)) for b in range(d)] for a in range(d)
    ]
    for a, b in upper_triangle_indices(d):
        out.append(new_omega[a][b])
    expected = n_params(d, n * k)
    if len(out) != expected:
        raise AssertionError("relaxed vector has the wrong length")
    return out


def relax_params(
    p: PlacementParams, sub: SublatticeMap, g: PeriodicGraph, relaxed: Optional[RelaxedGraph] = None
) -> PlacementParams:
    """Float counterpart of relax_vector for placement parameters."""
    if p.d != g.d or p.n != g.n:
        raise DimensionMismatchError("parameters do not match the graph")
    if relaxed is None:
        relaxed = relax_graph(g, sub)
    elif relaxed.cosets.sub.M != sub.M:
        raise GraphFormatError("relaxation bookkeeping was built from a different M")
    vec = [Fraction(float(x)).limit_denominator(10**12) for x in p.pack()]
    out = relax_vector(g, vec, relaxed)
    return unpack(np.array([float(x) for x in out]), g.d, g.n * relaxed.cosets.k)


def induced_translation_automorphism(
    g: PeriodicGraph, relaxed: RelaxedGraph, gamma: Sequence[int]
) -> Automorphism:
    """The demoted translation by gamma as an automorphism of the relaxed graph.

    Orbit copies permute by adding gamma to the coset representative; the
    lattice matrix is the identity because the sublattice itself is
    translation invariant.
    """
    d = g.d
    if len(gamma) != d:
        raise DimensionMismatchError("translation vector has the wrong dimension")
    cosets = relaxed.cosets
    k = cosets.k
    rep_index = cosets.index_of()
    coset_perm = []
    coset_shift = []
    for nu in cosets.reps:
        rep, residue = cosets.decompose([nu[r] + int(gamma[r]) for r in range(d)])
        coset_perm.append(rep_index[rep])
        coset_shift.append(residue)
    n_new = g.n * k
    perm = [0] * n_new
    offsets = [None] * n_new
    for i in range(g.n):
        for j in range(k):
            perm[i * k + j] = i * k + coset_perm[j]
            offsets[i * k + j] = coset_shift[j]
    eye = tuple(tuple(1 if a == b else 0 for b in range(d)) for a in range(d))
    return Automorphism(tuple(perm), eye, tuple(offsets))
