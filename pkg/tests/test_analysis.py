"""Configuration bounds, restricted rigidity, and path tracing."""

import json

import numpy as np
import pytest

from periframe import PlacementParams, parse_graph
from periframe.analysis import (
    bezout_bound,
    csv_header,
    minimal_rigidity_check,
    path_to_csv,
    symmetric_restriction,
    trace_deformation,
)
from periframe.errors import NotOnLocusError, NotPositiveDefiniteError
from periframe.placements import edge_lengths_sq, flex_dimension
from periframe.symmetry import Automorphism, fixed_locus, identity_automorphism

QUARTER_TURN = Automorphism((0,), ((0, -1), (1, 0)), ((0, 0),))


def graph_of(doc):
    return parse_graph(json.dumps(doc))


class TestBezout:
    def test_square_diagonal(self, square_diagonal):
        report = bezout_bound(square_diagonal)
        assert report.mu == 0
        assert report.loops == 3
        assert report.bound == 1
        assert report.minimally_rigid_count
        assert report.range_ok

    def test_braced_pair(self, braced_pair):
        report = bezout_bound(braced_pair)
        assert report.mu == 4
        assert report.loops == 1
        assert report.bound == 81
        assert report.minimally_rigid_count
        assert report.range_ok

    def test_square_is_under_count(self, square_lattice):
        report = bezout_bound(square_lattice)
        assert report.bound == 1
        assert not report.minimally_rigid_count

    def test_honeycomb(self, honeycomb):
        report = bezout_bound(honeycomb)
        assert report.mu == 3
        assert report.bound == 27
        assert not report.minimally_rigid_count
        assert report.range_ok

    def test_census_is_complete(self, square_lattice, square_diagonal, honeycomb, braced_pair):
        for g in (square_lattice, square_diagonal, honeycomb, braced_pair):
            report = bezout_bound(g)
            assert report.mu + report.loops == g.m

    def test_large_exponent_is_exact(self):
        edges = [{"tail": 0, "head": 1, "label": [i, 0]} for i in range(40)]
        g = graph_of({"d": 2, "n": 2, "edges": edges})
        assert bezout_bound(g).bound == 3**40


class TestMinimalRigidity:
    def test_square_diagonal_is_minimally_rigid(self, square_diagonal):
        assert minimal_rigidity_check(square_diagonal)

    def test_braced_pair_is_minimally_rigid(self, braced_pair):
        assert minimal_rigidity_check(braced_pair)

    def test_square_has_too_few_edges(self, square_lattice):
        assert not minimal_rigidity_check(square_lattice)

    def test_honeycomb_count_mismatch(self, honeycomb):
        assert not minimal_rigidity_check(honeycomb)

    def test_degenerate_count_fails_rank(self):
        # right edge count, all loops parallel: the Jacobian never reaches rank 3
        g = graph_of(
            {
                "d": 2,
                "n": 1,
                "edges": [
                    {"tail": 0, "head": 0, "label": [1, 0]},
                    {"tail": 0, "head": 0, "label": [2, 0]},
                    {"tail": 0, "head": 0, "label": [3, 0]},
                ],
            }
        )
        assert not minimal_rigidity_check(g)


class TestSymmetricRestriction:
    def test_trivial_group_recovers_full_count(self, square_lattice, identity_params):
        system = symmetric_restriction(
            square_lattice, [identity_automorphism(square_lattice)], identity_params
        )
        assert system.locus.dim == 3
        assert system.orbit_classes == ((0,), (1,))
        assert system.rank == 2
        assert system.flex_dim == flex_dimension(square_lattice, identity_params)

    def test_quarter_turn_kills_the_shear(self, square_lattice, identity_params):
        system = symmetric_restriction(square_lattice, [QUARTER_TURN], identity_params)
        assert system.locus.dim == 1
        assert system.orbit_classes == ((0, 1),)
        assert system.rank == 1
        assert system.flex_dim == 0

    def test_honeycomb_full_group(self, honeycomb, honeycomb_params):
        from periframe.symmetry import enumerate_automorphisms

        auts = enumerate_automorphisms(honeycomb)
        system = symmetric_restriction(honeycomb, auts, honeycomb_params)
        assert system.locus.dim == 1
        assert system.orbit_classes == ((0, 1, 2),)
        assert system.flex_dim == 0

    def test_rank_nullity(self, square_lattice, identity_params):
        for gens in ([QUARTER_TURN], [identity_automorphism(square_lattice)]):
            system = symmetric_restriction(square_lattice, gens, identity_params)
            assert system.flex_dim == system.locus.dim - system.rank
            assert system.reduced_jacobian.shape == (
                len(system.orbit_classes),
                system.locus.dim,
            )

    def test_off_locus_point_rejected(self, square_lattice):
        sheared = PlacementParams(
            t=np.zeros((0, 2)), omega=np.array([[1.0, 0.3], [0.3, 1.0]])
        )
        with pytest.raises(NotOnLocusError):
            symmetric_restriction(square_lattice, [QUARTER_TURN], sheared)

    def test_indefinite_gram_rejected(self, square_lattice):
        bad = PlacementParams(t=np.zeros((0, 2)), omega=np.diag([1.0, -1.0]))
        with pytest.raises(NotPositiveDefiniteError):
            symmetric_restriction(square_lattice, [QUARTER_TURN], bad)

    def test_restricted_never_exceeds_unrestricted(
        self, square_lattice, honeycomb, honeycomb_params, identity_params
    ):
        cases = [
            (square_lattice, [QUARTER_TURN], identity_params),
            (square_lattice, [identity_automorphism(square_lattice)], identity_params),
        ]
        for g, gens, p in cases:
            system = symmetric_restriction(g, gens, p)
            assert system.flex_dim <= flex_dimension(g, p)


class TestTraceDeformation:
    def test_square_sweep(self, square_lattice, identity_params):
        path = trace_deformation(square_lattice, identity_params, steps=50, step_size=0.05)
        assert len(path) == 51
        assert len(path.step_stats) == 51
        target = edge_lengths_sq(square_lattice, identity_params)
        shears = []
        for p in path.samples:
            np.testing.assert_allclose(
                edge_lengths_sq(square_lattice, p), target, atol=1e-8
            )
            assert np.linalg.eigvalsh(p.omega)[0] > 0
            shears.append(p.omega[0, 1])
        assert min(shears) < -0.5
        assert max(shears) > 0.5

    def test_start_is_a_sample(self, square_lattice, identity_params):
        path = trace_deformation(square_lattice, identity_params, steps=10)
        packed = path.packed()
        distances = np.max(np.abs(packed - identity_params.pack()), axis=1)
        idx = int(np.argmin(distances))
        assert distances[idx] == 0.0
        assert path.step_stats[idx] == 0.0

    def test_rigid_start_stays_put(self, square_diagonal, identity_params):
        path = trace_deformation(square_diagonal, identity_params)
        assert len(path) == 1
        assert path.samples[0] is identity_params

    def test_restricted_trace_of_rigid_section(self, square_lattice, identity_params):
        locus = fixed_locus(square_lattice, [QUARTER_TURN])
        path = trace_deformation(square_lattice, identity_params, locus=locus)
        assert len(path) == 1

    def test_zero_budget(self, square_lattice, identity_params):
        path = trace_deformation(square_lattice, identity_params, steps=0)
        assert len(path) == 1

    def test_off_locus_start_rejected(self, square_lattice):
        locus = fixed_locus(square_lattice, [QUARTER_TURN])
        sheared = PlacementParams(
            t=np.zeros((0, 2)), omega=np.array([[1.0, 0.3], [0.3, 1.0]])
        )
        with pytest.raises(NotOnLocusError):
            trace_deformation(square_lattice, sheared, locus=locus)

    def test_indefinite_start_rejected(self, square_lattice):
        bad = PlacementParams(t=np.zeros((0, 2)), omega=np.diag([1.0, -1.0]))
        with pytest.raises(NotPositiveDefiniteError):
            trace_deformation(square_lattice, bad)

    def test_honeycomb_lengths_held(self, honeycomb, honeycomb_params):
        path = trace_deformation(honeycomb, honeycomb_params, steps=20, step_size=0.02)
        assert len(path) >= 1
        target = edge_lengths_sq(honeycomb, honeycomb_params)
        for p in path.samples:
            np.testing.assert_allclose(edge_lengths_sq(honeycomb, p), target, atol=1e-8)


class TestCsvOutput:
    def test_header_order(self):
        assert csv_header(2, 2) == ["t_1_1", "t_1_2", "omega_11", "omega_12", "omega_22"]
        assert csv_header(3, 1) == [
            "omega_11",
            "omega_12",
            "omega_13",
            "omega_22",
            "omega_23",
            "omega_33",
        ]

    def test_rows_roundtrip(self, square_lattice, identity_params):
        path = trace_deformation(square_lattice, identity_params, steps=6)
        text = path_to_csv(path, square_lattice)
        lines = text.strip().split("\n")
        assert lines[0] == "omega_11,omega_12,omega_22"
        assert len(lines) == len(path) + 1
        parsed = np.array([[float(x) for x in line.split(",")] for line in lines[1:]])
        np.testing.assert_allclose(parsed, path.packed(), rtol=0, atol=0)
