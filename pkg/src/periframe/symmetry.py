"""Automorphisms of periodic graphs and their action on parameters.

An automorphism of the infinite graph that normalizes the translation
group is recorded modulo translations as a triple: a permutation of the
vertex orbits, an integer unimodular matrix acting on the period lattice,
and one integer offset per orbit. The canonical representative has zero
offset at orbit 0.

Each automorphism acts on the placement parameter space by an affine map
with integer coefficients. Placements fixed by a set of automorphisms
form an affine section of the parameter space; the section is computed
exactly over the rationals and comes with a positive-definite rational
base point, so crystallographic symmetry classes can be explored with no
floating-point guesswork in their definition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_CONFIG, RunConfig
from .errors import (
    EdgeImageMissingError,
    GraphFormatError,
    NotOnLocusError,
    SearchCapExceeded,
)
from . import exact
from .exact import LinearSystem, fracmat, fracvec, in_span, invert, is_unimodular, mat_vec
from .graphs import LabeledEdge, PeriodicGraph, validate
from .placements import (
    PlacementParams,
    cholesky_upper,
    n_params,
    unpack,
    upper_triangle_indices,
)


@dataclass(frozen=True)
class Automorphism:
    """Vertex-orbit permutation, lattice matrix, per-orbit offsets.

    Maps orbit i translated by gamma to orbit perm[i] translated by
    offsets[i] + C @ gamma. Offsets are normalized so offsets[0] == 0,
    which picks one representative of each class modulo translations.
    """

    perm: tuple
    C: tuple
    offsets: tuple

    def __post_init__(self):
        perm = tuple(int(x) for x in self.perm)
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise GraphFormatError(f"perm {perm} is not a permutation of 0..{n - 1}")
        C = tuple(tuple(int(x) for x in row) for row in self.C)
        d = len(C)
        if any(len(row) != d for row in C):
            raise GraphFormatError("C must be a square integer matrix")
        offsets = tuple(tuple(int(x) for x in row) for row in self.offsets)
        if len(offsets) != n or any(len(row) != d for row in offsets):
            raise GraphFormatError("offsets must be an n x d integer array")
        if any(x != 0 for x in offsets[0]):
            shift = offsets[0]
            offsets = tuple(tuple(a - b for a, b in zip(row, shift)) for row in offsets)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "offsets", offsets)

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def d(self) -> int:
        return len(self.C)

    def is_identity(self) -> bool:
        return (
            self.perm == tuple(range(self.n))
            and self.C == tuple(tuple(1 if a == b else 0 for b in range(self.d)) for a in range(self.d))
            and all(x == 0 for row in self.offsets for x in row)
        )

    def sort_key(self):
        return (self.perm, self.C, self.offsets)

    def to_dict(self) -> dict:
        return {
            "perm": list(self.perm),
            "C": [list(row) for row in self.C],
            "offsets": [list(row) for row in self.offsets],
        }


def automorphism_from_dict(doc: dict) -> Automorphism:
    if not isinstance(doc, dict):
        raise GraphFormatError("automorphism document must be an object")
    for key in ("perm", "C", "offsets"):
        if key not in doc:
            raise GraphFormatError(f"automorphism document missing key {key!r}")
    return Automorphism(tuple(doc["perm"]), tuple(map(tuple, doc["C"])), tuple(map(tuple, doc["offsets"])))


def identity_automorphism(g: PeriodicGraph) -> Automorphism:
    eye = tuple(tuple(1 if a == b else 0 for b in range(g.d)) for a in range(g.d))
    return Automorphism(tuple(range(g.n)), eye, tuple((0,) * g.d for _ in range(g.n)))


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """a after b. Offsets renormalize to the canonical representative."""
    if a.n != b.n or a.d != b.d:
        raise GraphFormatError("automorphisms live on different graphs")
    n, d = a.n, a.d
    perm = tuple(a.perm[b.perm[i]] for i in range(n))
    C = tuple(
        tuple(sum(a.C[r][k] * b.C[k][c] for k in range(d)) for c in range(d)) for r in range(d)
    )
    offsets = tuple(
        tuple(
            a.offsets[b.perm[i]][r] + sum(a.C[r][k] * b.offsets[i][k] for k in range(d))
            for r in range(d)
        )
        for i in range(n)
    )
    return Automorphism(perm, C, offsets)


def inverse(a: Automorphism) -> Automorphism:
    n, d = a.n, a.d
    iperm = [0] * n
    for i, j in enumerate(a.perm):
        iperm[j] = i
    Cinv_frac = invert(fracmat(a.C))
    if Cinv_frac is None:
        raise GraphFormatError("lattice matrix is singular")
    Cinv = tuple(tuple(int(x) for x in row) for row in Cinv_frac)
    offsets = tuple(
        tuple(-sum(Cinv[r][k] * a.offsets[iperm[i]][k] for k in range(d)) for r in range(d))
        for i in range(n)
    )
    return Automorphism(tuple(iperm), Cinv, offsets)


def apply_to_edge(a: Automorphism, e: LabeledEdge) -> LabeledEdge:
    """Directed image of an edge representative."""
    d = a.d
    label = tuple(
        sum(a.C[r][k] * e.label[k] for k in range(d)) + a.offsets[e.head][r] - a.offsets[e.tail][r]
        for r in range(d)
    )
    return LabeledEdge(a.perm[e.tail], a.perm[e.head], label)


def is_automorphism(g: PeriodicGraph, a: Automorphism) -> bool:
    """Whether a is a genuine automorphism of g (edges map onto edges)."""
    if a.n != g.n or a.d != g.d:
        return False
    if not is_unimodular([list(row) for row in a.C]):
        return False
    lookup = g.edge_lookup()
    from collections import Counter

    source = Counter(e.canonical_key() for e in g.edges)
    image = Counter(apply_to_edge(a, e).canonical_key() for e in g.edges)
    if source != image:
        return False
    return all(key in lookup for key in image)


def edge_index_permutation(g: PeriodicGraph, a: Automorphism) -> tuple:
    """perm_e with edge perm_e[e] the image of edge e, as document indices.

    Parallel edges sharing a canonical key are matched in document order,
    which keeps the assignment deterministic and bijective.
    """
    lookup = {key: list(idxs) for key, idxs in g.edge_lookup().items()}
    result = [None] * g.m
    for idx, e in enumerate(g.edges):
        key = apply_to_edge(a, e).canonical_key()
        bucket = lookup.get(key)
        if not bucket:
            raise EdgeImageMissingError(f"edge {idx} has no image under the automorphism")
        result[idx] = bucket.pop(0)
    return tuple(result)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _adjacency_multiplicities(g: PeriodicGraph):
    mult = [[0] * g.n for _ in range(g.n)]
    for e in g.edges:
        mult[e.tail][e.head] += 1
        if e.tail != e.head:
            mult[e.head][e.tail] += 1
    return mult


def _vertex_perm_candidates(g: PeriodicGraph, budget):
    """Permutations preserving the unlabeled quotient multigraph."""
    mult = _adjacency_multiplicities(g)
    n = g.n
    perm = [-1] * n
    used = [False] * n

    def backtrack(v: int):
        if v == n:
            yield tuple(perm)
            return
        for w in range(n):
            if used[w]:
                continue
            budget[0] -= 1
            if budget[0] < 0:
                raise SearchCapExceeded("automorphism search exceeded the node cap")
            if mult[w][w] != mult[v][v]:
                continue
            ok = True
            for u in range(v):
                if mult[v][u] != mult[w][perm[u]]:
                    ok = False
                    break
            if not ok:
                continue
            perm[v] = w
            used[w] = True
            yield from backtrack(v + 1)
            used[w] = False
            perm[v] = -1

    yield from backtrack(0)


def _edge_equations(e: LabeledEdge, image_label, sign: int, d: int, n: int):
    """Rows asserting C @ label + n_head - n_tail == sign * image_label.

    Unknown layout: d*d entries of C row-major, then offsets for orbits
    1..n-1 (orbit 0 is pinned at zero).
    """
    rows = []
    rhs = []
    for r in range(d):
        coeffs = [Fraction(0)] * (d * d + d * (n - 1))
        for k in range(d):
            coeffs[r * d + k] = Fraction(e.label[k])
        if e.head > 0:
            coeffs[d * d + (e.head - 1) * d + r] += 1
        if e.tail > 0:
            coeffs[d * d + (e.tail - 1) * d + r] -= 1
        rows.append(coeffs)
        rhs.append(Fraction(sign * image_label[r]))
    return rows, rhs


def enumerate_automorphisms(
    g: PeriodicGraph, config: RunConfig = DEFAULT_CONFIG
) -> List[Automorphism]:
    """All automorphisms modulo translations, sorted canonically.

    Search strategy: pick a vertex-orbit permutation consistent with edge
    multiplicities, then assign each edge a distinct image edge and
    orientation. Every assignment adds d exact linear equations in the
    entries of C and the offsets; the system is solved incrementally so
    dead branches are cut as soon as they become inconsistent. On a
    connected graph whose cycle labels span the lattice, a full consistent
    assignment determines (C, offsets) uniquely; the candidate survives if
    that solution is integral with C unimodular.
    """
    report = validate(g)
    if not report.ok:
        raise GraphFormatError(
            "automorphism enumeration needs a connected graph with full label lattice: "
            + "; ".join(report.messages)
        )
    d, n, m = g.d, g.n, g.m
    nunknowns = d * d + d * (n - 1)
    budget = [config.max_search_nodes]
    found = {}

    # Pre-bucket candidate images by unordered endpoint pair.
    by_pair = {}
    for idx, e in enumerate(g.edges):
        by_pair.setdefault(frozenset((e.tail, e.head)), []).append(idx)

    def assign(perm, eidx: int, used, system: LinearSystem):
        if eidx == m:
            sol = system.solution_if_unique()
            if sol is None:
                return
            if any(x.denominator != 1 for x in sol):
                return
            C = tuple(tuple(int(sol[r * d + c]) for c in range(d)) for r in range(d))
            if not is_unimodular([list(row) for row in C]):
                return
            offsets = [(0,) * d]
            for i in range(1, n):
                offsets.append(tuple(int(sol[d * d + (i - 1) * d + r]) for r in range(d)))
            cand = Automorphism(perm, C, tuple(offsets))
            found[cand.sort_key()] = cand
            return
        e = g.edges[eidx]
        target_pair = frozenset((perm[e.tail], perm[e.head]))
        for fidx in by_pair.get(target_pair, ()):
            if used[fidx]:
                continue
            f = g.edges[fidx]
            if f.tail == f.head:
                signs = (1, -1) if e.tail == e.head else ()
                # a loop can only be the image of a loop
                if e.tail != e.head:
                    continue
            elif (f.tail, f.head) == (perm[e.tail], perm[e.head]):
                signs = (1,)
            elif (f.head, f.tail) == (perm[e.tail], perm[e.head]):
                signs = (-1,)
            else:
                continue
            for sign in signs:
                budget[0] -= 1
                if budget[0] < 0:
                    raise SearchCapExceeded("automorphism search exceeded the node cap")
                sub = system.copy()
                rows, rhs = _edge_equations(e, f.label, sign, d, n)
                if all(sub.add(c, b) for c, b in zip(rows, rhs)):
                    used[fidx] = True
                    assign(perm, eidx + 1, used, sub)
                    used[fidx] = False

    for perm in _vertex_perm_candidates(g, budget):
        assign(perm, 0, [False] * m, LinearSystem(nunknowns))

    return [found[key] for key in sorted(found)]


# ---------------------------------------------------------------------------
# Symmetric placements
# ---------------------------------------------------------------------------


def is_symmetry(
    g: PeriodicGraph,
    p: PlacementParams,
    a: Automorphism,
    config: RunConfig = DEFAULT_CONFIG,
) -> bool:
    """Whether the placement is fixed by the automorphism's affine action.

    Two residuals, both bounded by sym_tol: the Gram matrix must satisfy
    C.T @ omega @ C == omega, and the per-orbit vectors
    t[perm[i]] + offsets[i] - C @ t[i] must all coincide (their common
    value is the lattice part of the realizing isometry, so only the
    spread matters, not the value).
    """
    if a.n != g.n or a.d != g.d or p.d != g.d or p.n != g.n:
        return False
    C = np.array(a.C, dtype=np.float64)
    omega_res = C.T @ p.omega @ C - p.omega
    if np.max(np.abs(omega_res)) > config.sym_tol:
        return False
    T = p.full_t()
    res = np.empty((g.n, g.d))
    for i in range(g.n):
        res[i] = T[a.perm[i]] + np.array(a.offsets[i], dtype=np.float64) - C @ T[i]
    spread = np.max(res, axis=0) - np.min(res, axis=0)
    return bool(np.max(spread) <= config.sym_tol)


def symmetry_group(
    g: PeriodicGraph, p: PlacementParams, config: RunConfig = DEFAULT_CONFIG
) -> List[Automorphism]:
    """Automorphisms fixing the given placement parameters."""
    return [a for a in enumerate_automorphisms(g, config) if is_symmetry(g, p, a, config)]


def realize_isometry(
    g: PeriodicGraph,
    p: PlacementParams,
    a: Automorphism,
    config: RunConfig = DEFAULT_CONFIG,
) -> Tuple[np.ndarray, np.ndarray]:
    """Euclidean map (S, tau) realizing the automorphism on realize(p).

    S = basis @ C @ basis^-1 and tau the averaged per-orbit residual in
    Cartesian coordinates; S is orthogonal exactly when the placement is
    fixed by the automorphism, which is required.
    """
    if not is_symmetry(g, p, a, config):
        raise NotOnLocusError("placement is not fixed by this automorphism")
    basis = cholesky_upper(p.omega, config.pd_tol)
    C = np.array(a.C, dtype=np.float64)
    S = basis @ C @ np.linalg.inv(basis)
    T = p.full_t()
    res = np.array(
        [T[a.perm[i]] + np.array(a.offsets[i], dtype=np.float64) - C @ T[i] for i in range(g.n)]
    )
    tau = basis @ res.mean(axis=0)
    return S, tau


# ---------------------------------------------------------------------------
# Exact affine action on the parameter space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """Exact affine map x -> matrix @ x + shift on packed parameters."""

    matrix: tuple
    shift: tuple

    @property
    def dim(self) -> int:
        return len(self.shift)

    def apply(self, vec: Sequence[Fraction]) -> list:
        if len(vec) != self.dim:
            raise GraphFormatError("vector length does not match the map")
        return [
            sum(self.matrix[r][c] * vec[c] for c in range(self.dim)) + self.shift[r]
            for r in range(self.dim)
        ]

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other."""
        if self.dim != other.dim:
            raise GraphFormatError("affine maps have different dimensions")
        N = self.dim
        mat = tuple(
            tuple(sum(self.matrix[r][k] * other.matrix[k][c] for k in range(N)) for c in range(N))
            for r in range(N)
        )
        shift = tuple(
            sum(self.matrix[r][k] * other.shift[k] for k in range(N)) + self.shift[r]
            for r in range(N)
        )
        return AffineMap(mat, shift)

    @staticmethod
    def identity(dim: int) -> "AffineMap":
        return AffineMap(
            tuple(tuple(Fraction(1 if r == c else 0) for c in range(dim)) for r in range(dim)),
            tuple(Fraction(0) for _ in range(dim)),
        )


def affine_action(g: PeriodicGraph, a: Automorphism) -> AffineMap:
    """The affine map on packed (t, omega) parameters induced by a.

    Acting on placements by precomposition with the inverse automorphism,
    the Gram matrix transforms by the inverse lattice matrix on both
    sides and the offsets permute with an integer shift. The assignment
    is a left action: the map of a composition is the composition of the
    maps in the same order.
    """
    d, n = g.d, g.n
    if a.d != d or a.n != n:
        raise GraphFormatError("automorphism does not match the graph")
    N = n_params(d, n)
    iperm = [0] * n
    for i, j in enumerate(a.perm):
        iperm[j] = i
    Binv = invert(fracmat(a.C))
    if Binv is None:
        raise GraphFormatError("lattice matrix is singular")
    matrix = [[Fraction(0)] * N for _ in range(N)]
    shift = [Fraction(0)] * N
    upper = upper_triangle_indices(d)
    k0 = iperm[0]
    for j in range(1, n):
        kj = iperm[j]
        row0 = (j - 1) * d
        for r in range(d):
            for k in (kj, k0):
                if k == 0:
                    continue
                sgn = 0
                if k == kj:
                    sgn += 1
                if k == k0:
                    sgn -= 1
                if sgn == 0:
                    continue
                for c in range(d):
                    matrix[row0 + r][(k - 1) * d + c] += sgn * Fraction(a.C[r][c])
            shift[row0 + r] = Fraction(a.offsets[k0][r] - a.offsets[kj][r])
    base = d * (n - 1)
    upper_pos = {pair: base + idx for idx, pair in enumerate(upper)}
    for idx, (ra, rb) in enumerate(upper):
        row = base + idx
        for p in range(d):
            for q in range(p, d):
                if p == q:
                    coeff = Binv[p][ra] * Binv[p][rb]
                else:
                    coeff = Binv[p][ra] * Binv[q][rb] + Binv[q][ra] * Binv[p][rb]
                matrix[row][upper_pos[(p, q)]] += coeff
    return AffineMap(tuple(tuple(row) for row in matrix), tuple(shift))


def subgroup_closure(
    g: PeriodicGraph, generators: Iterable[Automorphism], max_order: int = 10000
) -> List[Automorphism]:
    """Closure of the generators under composition, identity included."""
    ident = identity_automorphism(g)
    elements = {ident.sort_key(): ident}
    frontier = [ident]
    gens = list(generators)
    for gen in gens:
        if not is_automorphism(g, gen):
            raise GraphFormatError("generator is not an automorphism of the graph")
    for gen in gens:
        key = gen.sort_key()
        if key not in elements:
            elements[key] = gen
            frontier.append(gen)
    while frontier:
        current = frontier.pop()
        for gen in gens:
            for prod in (compose(current, gen), compose(gen, current)):
                key = prod.sort_key()
                if key not in elements:
                    if len(elements) >= max_order:
                        raise SearchCapExceeded("subgroup closure exceeded the order cap")
                    elements[key] = prod
                    frontier.append(prod)
    return [elements[key] for key in sorted(elements)]


# ---------------------------------------------------------------------------
# Fixed loci
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineSubspace:
    """Affine section base + span(directions) of the parameter space.

    base and directions hold exact rationals over packed coordinates.
    group_order records the size of the symmetry group that cut the
    section out.
    """

    d: int
    n: int
    base: tuple
    directions: tuple
    group_order: int

    @property
    def dim(self) -> int:
        return len(self.directions)

    @property
    def ambient_dim(self) -> int:
        return len(self.base)

    def contains(self, vec: Sequence[Fraction]) -> bool:
        if len(vec) != self.ambient_dim:
            return False
        delta = [Fraction(x) - b for x, b in zip(vec, self.base)]
        return in_span([list(v) for v in self.directions], delta)

    def point(self, coeffs: Sequence[Fraction]) -> list:
        if len(coeffs) != self.dim:
            raise GraphFormatError(f"need {self.dim} coefficients, got {len(coeffs)}")
        vec = list(self.base)
        for c, direction in zip(coeffs, self.directions):
            c = Fraction(c)
            for r in range(self.ambient_dim):
                vec[r] += c * direction[r]
        return vec

    def params_at(self, coeffs: Sequence[float]) -> PlacementParams:
        vec = self.point([Fraction(c).limit_denominator(10**9) for c in coeffs])
        return unpack(np.array([float(x) for x in vec]), self.d, self.n)

    def base_params(self) -> PlacementParams:
        return unpack(np.array([float(x) for x in self.base]), self.d, self.n)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "ambient_dim": self.ambient_dim,
            "group_order": self.group_order,
            "base": [str(x) for x in self.base],
            "directions": [[str(x) for x in v] for v in self.directions],
        }


def omega_fraction_matrix(vec: Sequence[Fraction], d: int, n: int):
    """Exact Gram matrix from the omega block of a packed vector."""
    base = d * (n - 1)
    mat = [[Fraction(0)] * d for _ in range(d)]
    for idx, (a, b) in enumerate(upper_triangle_indices(d)):
        mat[a][b] = Fraction(vec[base + idx])
        mat[b][a] = mat[a][b]
    return mat


def exact_positive_definite(mat) -> bool:
    """Sylvester criterion over the rationals: all leading minors positive."""
    d = len(mat)
    for k in range(1, d + 1):
        minor = [row[:k] for row in mat[:k]]
        if exact.det(minor) <= 0:
            return False
    return True


def default_start_vector(g: PeriodicGraph) -> list:
    """Packed coordinates of the point (t = 0, omega = identity)."""
    N = n_params(g.d, g.n)
    x0 = [Fraction(0)] * N
    base = g.d * (g.n - 1)
    for idx, (a, b) in enumerate(upper_triangle_indices(g.d)):
        if a == b:
            x0[base + idx] = Fraction(1)
    return x0


def _orbit_average(g: PeriodicGraph, group: Sequence[Automorphism], start) -> list:
    N = n_params(g.d, g.n)
    total = [Fraction(0)] * N
    for sigma in group:
        image = affine_action(g, sigma).apply(start)
        for r in range(N):
            total[r] += image[r]
    order = Fraction(len(group))
    return [x / order for x in total]


def barycenter_point(
    g: PeriodicGraph,
    generators: Iterable[Automorphism],
    start: Optional[Sequence[Fraction]] = None,
) -> list:
    """Exact orbit average of start over the generated subgroup.

    The average over a finite group orbit of an affine action is a fixed
    point of the whole subgroup. When start has positive-definite Gram
    block the average does too, because each group element moves the
    block by congruence and the positive-definite cone is convex. The
    default start (t = 0, omega = identity) therefore lands a rational,
    positive-definite point on any fixed locus.
    """
    group = subgroup_closure(g, generators)
    vec = default_start_vector(g) if start is None else [Fraction(x) for x in start]
    if len(vec) != n_params(g.d, g.n):
        raise GraphFormatError("start vector length does not match the parameter space")
    return _orbit_average(g, group, vec)


def fixed_locus(
    g: PeriodicGraph,
    generators: Iterable[Automorphism],
    config: RunConfig = DEFAULT_CONFIG,
) -> AffineSubspace:
    """Exact affine section of parameters fixed by the generated subgroup.

    Stacks (A(sigma) - I) x = -shift over the whole subgroup and solves
    over the rationals. The base point is the orbit barycenter of
    (t = 0, omega = identity), which always lies on the section and is
    positive definite, so the section always meets the open cone of
    genuine placements.
    """
    group = subgroup_closure(g, generators)
    N = n_params(g.d, g.n)
    rows = []
    rhs = []
    for sigma in group:
        amap = affine_action(g, sigma)
        for r in range(N):
            row = [amap.matrix[r][c] - (1 if r == c else 0) for c in range(N)]
            if any(x != 0 for x in row) or amap.shift[r] != 0:
                rows.append(row)
                rhs.append(-amap.shift[r])
    if rows:
        solution = exact.solve_affine(rows, rhs, N)
        if solution is None:
            raise AssertionError("fixed locus is empty, contradicting the barycenter argument")
        _, kernel = solution
    else:
        kernel = [[Fraction(1 if r == c else 0) for c in range(N)] for r in range(N)]
    base = _orbit_average(g, group, default_start_vector(g))
    for row, b in zip(rows, rhs):
        acc = sum(c * x for c, x in zip(row, base))
        if acc != b:
            raise AssertionError("barycenter failed to satisfy the fixed-point system")
    if not exact_positive_definite(omega_fraction_matrix(base, g.d, g.n)):
        raise AssertionError("barycenter Gram block is not positive definite")
    return AffineSubspace(
        d=g.d,
        n=g.n,
        base=tuple(base),
        directions=tuple(tuple(v) for v in kernel),
        group_order=len(group),
    )


def affine_subspace_contains(outer: AffineSubspace, inner: AffineSubspace) -> bool:
    """Whether the inner section sits inside the outer one, exactly."""
    if outer.ambient_dim != inner.ambient_dim:
        return False
    span = [list(v) for v in outer.directions]
    delta = [a - b for a, b in zip(inner.base, outer.base)]
    if not in_span(span, delta):
        return False
    return all(in_span(span, list(v)) for v in inner.directions)


def intersect_symmetry_groups(
    g: PeriodicGraph,
    group_a: Iterable[Automorphism],
    group_b: Iterable[Automorphism],
) -> List[Automorphism]:
    """Common elements of the two generated subgroups, sorted canonically."""
    closed_a = {a.sort_key(): a for a in subgroup_closure(g, group_a)}
    closed_b = {b.sort_key() for b in subgroup_closure(g, group_b)}
    keys = sorted(set(closed_a) & closed_b)
    return [closed_a[k] for k in keys]


def edge_orbit_quotient(g: PeriodicGraph, generators: Iterable[Automorphism]) -> list:
    """Partition of edge indices into orbits of the generated group, sorted."""
    group = subgroup_closure(g, generators)
    perms = [edge_index_permutation(g, a) for a in group]
    parent = list(range(g.m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in perms:
        for e in range(g.m):
            ra, rb = find(e), find(perm[e])
            if ra != rb:
                parent[ra] = rb
    orbits = {}
    for e in range(g.m):
        orbits.setdefault(find(e), []).append(e)
    return sorted((sorted(v) for v in orbits.values()), key=lambda o: o[0])
