"""Acceptance suite: ten end-to-end checks, one test per criterion.

Each test prints a single pass line on success; tolerances and runtime
budgets are fixed here and nowhere else. Randomized inputs draw from
fixed seeds so every run sees the same instances.
"""

import itertools
import json
import time
from fractions import Fraction

import numpy as np
import pytest

from periframe import DEFAULT_CONFIG, PlacementParams, parse_graph
from periframe.analysis import (
    bezout_bound,
    minimal_rigidity_check,
    symmetric_restriction,
    trace_deformation,
)
from periframe.graphs import PeriodicGraph, LabeledEdge, validate
from periframe.placements import (
    edge_lengths_sq,
    flex_dimension,
    n_params,
    numerical_rank,
    rigidity_matrix,
    unpack,
)
from periframe.exact import solve_affine
from periframe.lattices import SublatticeMap, relax_graph, relax_params, relax_vector
from periframe.symmetry import (
    AffineMap,
    Automorphism,
    affine_action,
    affine_subspace_contains,
    barycenter_point,
    compose,
    edge_index_permutation,
    enumerate_automorphisms,
    exact_positive_definite,
    fixed_locus,
    identity_automorphism,
    is_symmetry,
    omega_fraction_matrix,
    subgroup_closure,
)

EQUIVARIANCE_TOL = 1e-9
SYM_TOL = DEFAULT_CONFIG.sym_tol
JACOBIAN_TOL = 1e-6
FD_STEP = 1e-6
LENGTH_TOL = 1e-10
PATH_DEVIATION_TOL = 1e-8
SHEAR_SPAN = 0.8

QUARTER_TURN = Automorphism((0,), ((0, -1), (1, 0)), ((0, 0),))


def graph_of(doc):
    return parse_graph(json.dumps(doc))


SQUARE = graph_of(
    {
        "d": 2,
        "n": 1,
        "edges": [
            {"tail": 0, "head": 0, "label": [1, 0]},
            {"tail": 0, "head": 0, "label": [0, 1]},
        ],
    }
)
SQUARE_DIAGONAL = graph_of(
    {
        "d": 2,
        "n": 1,
        "edges": [
            {"tail": 0, "head": 0, "label": [1, 0]},
            {"tail": 0, "head": 0, "label": [0, 1]},
            {"tail": 0, "head": 0, "label": [1, 1]},
        ],
    }
)
HONEYCOMB = graph_of(
    {
        "d": 2,
        "n": 2,
        "edges": [
            {"tail": 0, "head": 1, "label": [0, 0]},
            {"tail": 0, "head": 1, "label": [1, 0]},
            {"tail": 0, "head": 1, "label": [0, 1]},
        ],
    }
)
BRACED_PAIR = graph_of(
    {
        "d": 2,
        "n": 2,
        "edges": [
            {"tail": 0, "head": 1, "label": [0, 0]},
            {"tail": 0, "head": 1, "label": [1, 0]},
            {"tail": 0, "head": 1, "label": [0, 1]},
            {"tail": 0, "head": 1, "label": [1, 1]},
            {"tail": 0, "head": 0, "label": [1, 0]},
        ],
    }
)

IDENTITY_SQUARE = PlacementParams(t=np.zeros((0, 2)), omega=np.eye(2))


def random_valid_graph(rng, d):
    """Connected quotient with full-index label lattice by construction."""
    n = int(rng.integers(1, 5))
    edges = [LabeledEdge(i, i + 1, (0,) * d) for i in range(n - 1)]
    for r in range(d):
        label = tuple(1 if c == r else 0 for c in range(d))
        edges.append(LabeledEdge(0, 0, label))
    budget = 10 - len(edges)
    for _ in range(int(rng.integers(0, budget + 1))):
        tail = int(rng.integers(0, n))
        head = int(rng.integers(0, n))
        label = tuple(int(x) for x in rng.integers(-2, 3, size=d))
        if tail == head and all(x == 0 for x in label):
            continue
        edges.append(LabeledEdge(tail, head, label))
    g = PeriodicGraph(d=d, n=n, edges=tuple(edges))
    assert validate(g).ok
    return g


def random_params(rng, d, n):
    t = rng.uniform(-1.0, 1.0, size=(n - 1, d))
    sym = rng.uniform(-1.0, 1.0, size=(d, d))
    omega = np.eye(d) + 0.2 * (sym + sym.T)
    return PlacementParams(t=t, omega=omega)


def exact_pack(p):
    return [Fraction(float(x)) for x in p.pack()]


def test_criterion_01_equivariance():
    started = time.perf_counter()
    rng = np.random.default_rng(DEFAULT_CONFIG.seed)
    graphs = [SQUARE, HONEYCOMB]
    for i in range(5):
        graphs.append(random_valid_graph(rng, 2 if i % 2 == 0 else 3))
    for g in graphs:
        auts = enumerate_automorphisms(g)
        for _ in range(20):
            p = random_params(rng, g.d, g.n)
            vec = exact_pack(p)
            lengths = edge_lengths_sq(g, p)
            for a in auts:
                image = affine_action(g, a).apply(vec)
                q = unpack(np.array([float(x) for x in image]), g.d, g.n)
                moved = edge_lengths_sq(g, q)
                perm = edge_index_permutation(g, a)
                worst = max(
                    abs(moved[perm[e]] - lengths[e]) for e in range(g.m)
                )
                assert worst <= EQUIVARIANCE_TOL
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    print("criterion 1 (length map is equivariant): PASS")


def test_criterion_02_affine_representation():
    started = time.perf_counter()
    for g in (SQUARE, HONEYCOMB):
        auts = enumerate_automorphisms(g)
        maps = {a.sort_key(): affine_action(g, a) for a in auts}
        for a, b in itertools.product(auts, repeat=2):
            composed = maps[compose(a, b).sort_key()]
            assert composed == maps[a.sort_key()].compose(maps[b.sort_key()])
    translation = Automorphism((0, 1), ((1, 0), (0, 1)), ((2, -1), (2, -1)))
    assert affine_action(HONEYCOMB, translation) == AffineMap.identity(n_params(2, 2))
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0
    print("criterion 2 (parameter action is a homomorphism): PASS")


def _square_subgroups():
    group = enumerate_automorphisms(SQUARE)
    subgroups = {}
    seeds = [[identity_automorphism(SQUARE)]]
    seeds += [[a] for a in group]
    seeds += [[a, b] for a, b in itertools.combinations(group, 2)]
    for gens in seeds:
        closure = subgroup_closure(SQUARE, gens)
        key = frozenset(a.sort_key() for a in closure)
        subgroups.setdefault(key, closure)
    return subgroups


def test_criterion_03_fixed_loci():
    started = time.perf_counter()
    locus = fixed_locus(SQUARE, [QUARTER_TURN])
    assert locus.dim == 1
    # exact set equality with {omega_11 = omega_22, omega_12 = 0}
    base = locus.base
    assert base[0] == base[2] and base[1] == 0
    (direction,) = locus.directions
    assert direction[0] == direction[2] and direction[1] == 0
    assert any(x != 0 for x in direction)

    subgroups = _square_subgroups()
    assert len(subgroups) == 10
    loci = {key: fixed_locus(SQUARE, elems) for key, elems in subgroups.items()}
    for key_h, key_k in itertools.product(subgroups, repeat=2):
        if key_h <= key_k:
            assert affine_subspace_contains(loci[key_h], loci[key_k])

    start = [Fraction(1), Fraction(0), Fraction(3)]
    for key, elems in subgroups.items():
        point = barycenter_point(SQUARE, elems, start)
        assert loci[key].contains(point)
        omega = omega_fraction_matrix(point, 2, 1)
        assert exact_positive_definite(omega)
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0
    print("criterion 3 (fixed loci are exact affine sections): PASS")


def test_criterion_04_symmetry_predicate_consistency():
    rng = np.random.default_rng(DEFAULT_CONFIG.seed)
    cases = 0
    agreements = 0
    for g, share in ((SQUARE, 500), (HONEYCOMB, 500)):
        auts = enumerate_automorphisms(g)
        loci = {a.sort_key(): fixed_locus(g, [a]) for a in auts}
        actions = {a.sort_key(): affine_action(g, a) for a in auts}
        for _ in range(share):
            a = auts[int(rng.integers(0, len(auts)))]
            if rng.uniform() < 0.5:
                p = random_params(rng, g.d, g.n)
            else:
                locus = loci[a.sort_key()]
                coeffs = rng.uniform(-0.4, 0.4, size=locus.dim)
                p = locus.params_at(coeffs)
            vec = exact_pack(p)
            image = actions[a.sort_key()].apply(vec)
            fixed = max(abs(float(u - v)) for u, v in zip(image, vec)) <= SYM_TOL
            cases += 1
            if is_symmetry(g, p, a) == fixed:
                agreements += 1
    assert cases == 1000
    assert agreements == cases
    print("criterion 4 (symmetry test matches the fixed-point test, 1000/1000): PASS")


def test_criterion_05_jacobian_matches_finite_differences():
    rng = np.random.default_rng(DEFAULT_CONFIG.seed)
    pool = [SQUARE, SQUARE_DIAGONAL, HONEYCOMB, BRACED_PAIR]
    pool.append(random_valid_graph(rng, 2))
    pool.append(random_valid_graph(rng, 3))
    for i in range(50):
        g = pool[i % len(pool)]
        p = random_params(rng, g.d, g.n)
        x = p.pack()
        analytic = rigidity_matrix(g, p)
        numeric = np.zeros_like(analytic)
        for j in range(x.size):
            hi = x.copy()
            lo = x.copy()
            hi[j] += FD_STEP
            lo[j] -= FD_STEP
            f_hi = edge_lengths_sq(g, unpack(hi, g.d, g.n))
            f_lo = edge_lengths_sq(g, unpack(lo, g.d, g.n))
            numeric[:, j] = (f_hi - f_lo) / (2.0 * FD_STEP)
        assert np.max(np.abs(analytic - numeric)) <= JACOBIAN_TOL
    print("criterion 5 (rigidity matrix matches central differences, 50/50): PASS")


def test_criterion_06_flex_dimensions():
    started = time.perf_counter()
    expected = {id(SQUARE): 1, id(SQUARE_DIAGONAL): 0, id(HONEYCOMB): 2}
    points = {
        id(SQUARE): IDENTITY_SQUARE,
        id(SQUARE_DIAGONAL): IDENTITY_SQUARE,
        id(HONEYCOMB): PlacementParams(
            t=np.array([[-1.0 / 3.0, -1.0 / 3.0]]),
            omega=np.array([[2.0, 1.0], [1.0, 2.0]]),
        ),
    }
    for g in (SQUARE, SQUARE_DIAGONAL, HONEYCOMB):
        p = points[id(g)]
        flex = flex_dimension(g, p)
        # independent oracle: singular values of the matrix itself
        R = rigidity_matrix(g, p)
        sigma = np.linalg.svd(R, compute_uv=False)
        cutoff = DEFAULT_CONFIG.rank_rel_tol * (sigma[0] if sigma.size else 0.0) * max(R.shape)
        oracle_rank = int(np.count_nonzero(sigma > cutoff))
        oracle_flex = n_params(g.d, g.n) - oracle_rank
        assert flex == oracle_flex == expected[id(g)]
    elapsed = time.perf_counter() - started
    assert elapsed < 2.0
    print("criterion 6 (flex dimensions 1 / 0 / 2 with SVD oracle): PASS")


def test_criterion_07_configuration_bound():
    report = bezout_bound(SQUARE_DIAGONAL)
    assert report.mu == 0
    assert report.bound == 1
    # exact oracle: lengths are linear in omega for a loop-only graph, so
    # count the solutions of the 3x3 rational system at generic lengths
    labels = [e.label for e in SQUARE_DIAGONAL.edges]
    rows = [
        [Fraction(l[0] * l[0]), Fraction(2 * l[0] * l[1]), Fraction(l[1] * l[1])]
        for l in labels
    ]
    target = [Fraction(1), Fraction(1), Fraction(3)]
    solved = solve_affine(rows, target, 3)
    assert solved is not None
    solution, kernel = solved
    assert kernel == []  # unique: exactly one configuration
    rebuilt = [
        sum(rows[i][j] * solution[j] for j in range(3)) for i in range(3)
    ]
    assert rebuilt == target

    for g in (SQUARE_DIAGONAL, BRACED_PAIR):
        assert minimal_rigidity_check(g)
        rep = bezout_bound(g)
        assert g.d * g.n - g.d <= rep.mu <= g.m
        assert rep.range_ok
    print("criterion 7 (configuration bound and exact count agree): PASS")


def test_criterion_08_relaxation():
    doubling = SublatticeMap(((2, 0), (0, 2)))
    relaxed = relax_graph(SQUARE, doubling)
    assert relaxed.graph.n == 4
    assert relaxed.graph.m == 8

    vec = [Fraction(1), Fraction(0), Fraction(1)]
    out = relax_vector(SQUARE, vec, relaxed)
    assert out[-3:] == [Fraction(4), Fraction(0), Fraction(4)]

    q = relax_params(IDENTITY_SQUARE, doubling, SQUARE, relaxed)
    old = edge_lengths_sq(SQUARE, IDENTITY_SQUARE)
    new = edge_lengths_sq(relaxed.graph, q)
    for e, copies in enumerate(relaxed.edge_index):
        for new_e in copies:
            assert abs(new[new_e] - old[e]) <= LENGTH_TOL

    rng = np.random.default_rng(DEFAULT_CONFIG.seed)
    N = n_params(2, 1)
    for _ in range(20):
        x = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-9, 10, N), rng.integers(1, 10, N))]
        y = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-9, 10, N), rng.integers(1, 10, N))]
        lam = Fraction(int(rng.integers(-6, 7)), 5)
        mixed = [lam * u + (1 - lam) * w for u, w in zip(x, y)]
        lhs = relax_vector(SQUARE, mixed, relaxed)
        fx = relax_vector(SQUARE, x, relaxed)
        fy = relax_vector(SQUARE, y, relaxed)
        assert lhs == [lam * u + (1 - lam) * w for u, w in zip(fx, fy)]
    print("criterion 8 (sublattice relaxation is exact and affine): PASS")


def test_criterion_09_path_tracing():
    started = time.perf_counter()
    path = trace_deformation(SQUARE, IDENTITY_SQUARE, steps=50, step_size=0.05)
    assert len(path) == 51  # 50 traced samples plus the start
    target = edge_lengths_sq(SQUARE, IDENTITY_SQUARE)
    shears = []
    for p in path.samples:
        deviation = np.max(np.abs(edge_lengths_sq(SQUARE, p) - target))
        assert deviation <= PATH_DEVIATION_TOL
        assert np.linalg.eigvalsh(p.omega)[0] > 0.0
        shears.append(p.omega[0, 1])
    assert min(shears) <= -SHEAR_SPAN
    assert max(shears) >= SHEAR_SPAN
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0
    print("criterion 9 (constant-length path sweeps the shear): PASS")


def test_criterion_10_symmetry_restricted_analysis():
    system = symmetric_restriction(SQUARE, [QUARTER_TURN], IDENTITY_SQUARE)
    assert system.locus.dim == 1
    assert len(system.orbit_classes) == 1
    assert system.flex_dim == 0

    hex_point = PlacementParams(
        t=np.array([[-1.0 / 3.0, -1.0 / 3.0]]),
        omega=np.array([[2.0, 1.0], [1.0, 2.0]]),
    )
    cases = [
        (SQUARE, [QUARTER_TURN], IDENTITY_SQUARE),
        (SQUARE, [identity_automorphism(SQUARE)], IDENTITY_SQUARE),
        (SQUARE_DIAGONAL, [identity_automorphism(SQUARE_DIAGONAL)], IDENTITY_SQUARE),
        (HONEYCOMB, enumerate_automorphisms(HONEYCOMB), hex_point),
        (HONEYCOMB, [identity_automorphism(HONEYCOMB)], hex_point),
    ]
    for g, gens, p in cases:
        restricted = symmetric_restriction(g, gens, p)
        assert restricted.flex_dim <= flex_dimension(g, p)
    print("criterion 10 (restricted analysis collapses orbits): PASS")
