# -----------------------------------------------------------------------------.
# MIT License

# Copyright (c) 2026 fermi-bound developers
#
# This file is part of fermi-bound.

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

# -----------------------------------------------------------------------------.
"""This module tests fermionic states, reductions and the monogamy check."""
import numpy as np
import pytest

from fermibound.fock import FockOperator, SystemShape, majorana, majorana_product
from fermibound.graphs import complete_graph, from_edge_list, ring_graph, star_graph
from fermibound.states import (
    DensityState,
    build_witness,
    extendibility_witness_check,
    gamma_site,
    monogamy_check,
    pair_distance,
    reduce,
    trace_norm,
)
from fermibound.tests.utils.bound_oracle import witness_distance
from fermibound.tests.utils.fake_states import (
    get_even_product_state,
    get_random_state,
    get_random_totally_even,
)


def _maximally_mixed(shape):
    return DensityState(shape, np.eye(shape.dim) / shape.dim)


class TestDensityState:
    """Test suite for the DensityState validation."""

    def test_valid_state(self):
        rho = get_random_state(2, seed=0)
        assert rho.hermitian
        assert abs(rho.trace() - 1) < 1e-12

    def test_invalid_trace(self):
        with pytest.raises(ValueError, match="unit trace"):
            DensityState(SystemShape(1, 1), np.eye(2))

    def test_not_positive(self):
        with pytest.raises(ValueError, match="positive semidefinite"):
            DensityState(SystemShape(1, 1), np.diag([1.5, -0.5]))

    def test_not_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            DensityState(SystemShape(1, 1), np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_even_part_is_cached_state(self):
        rho = get_random_state(2, seed=1)
        assert rho.even_part is rho.even_part
        assert isinstance(rho.even_part, DensityState)


class TestReduce:
    """Test suite for the fermionic reduction."""

    def test_product_state_two_sites(self):
        rho = get_even_product_state(2, modes_per_site=2, seed=0)
        reduced = reduce(rho, (0, 1))
        np.testing.assert_allclose(reduced.matrix, rho.matrix, atol=1e-12)
        assert reduced.sites == (0, 1)

    def test_maximally_mixed(self):
        reduced = reduce(_maximally_mixed(SystemShape(4, 1)), (1, 3))
        np.testing.assert_allclose(reduced.matrix, np.eye(4) / 4, atol=1e-12)

    def test_witness_reduction(self):
        rho = build_witness(SystemShape(4, 1), [0], [1, 2, 3])
        local_shape = SystemShape(2, 1)
        expected = (1j / (4 * 3**0.5)) * majorana_product(local_shape, [(0, 0), (1, 1)])
        expected = expected + FockOperator.identity(local_shape) / 4
        np.testing.assert_allclose(reduce(rho, (0, 1)).matrix, expected.matrix, atol=1e-12)

    def test_site_order_is_canonical(self):
        rho = get_random_state(3, seed=2)
        np.testing.assert_allclose(reduce(rho, (2, 0)).matrix, reduce(rho, (0, 2)).matrix, atol=1e-12)

    @pytest.mark.parametrize("seed", range(3))
    def test_reduction_is_a_state(self, seed):
        rho = get_random_state(4, seed=seed)
        reduced = reduce(rho, (1, 3))
        assert abs(reduced.trace() - 1) < 1e-10
        assert np.linalg.eigvalsh(reduced.matrix)[0] >= -1e-10

    def test_nested_reduction_consistency(self):
        rho = get_random_state(3, modes_per_site=2, seed=3)
        two_sites = reduce(rho, (0, 2))
        np.testing.assert_allclose(reduce(two_sites, [1]).matrix, reduce(rho, [2]).matrix, atol=1e-10)
        np.testing.assert_allclose(reduce(two_sites, [0]).matrix, reduce(rho, [0]).matrix, atol=1e-10)

    def test_matches_majorana_expectations(self):
        rho = get_random_state(3, seed=4)
        reduced = reduce(rho, (0, 2))
        local_shape = SystemShape(2, 1)
        local = majorana_product(local_shape, [(0, 1), (1, 0)])
        global_monomial = majorana_product(rho.shape, [(0, 1), (2, 0)])
        assert abs(local.expectation(reduced) - global_monomial.expectation(rho)) < 1e-10

    @pytest.mark.parametrize("seed", range(5))
    def test_totally_even_observables_agree(self, seed):
        rho = get_random_state(3, seed=seed)
        A = get_random_totally_even(SystemShape(2, 1), seed=100 + seed)
        direct = A.expectation(reduce(rho, (0, 1)))
        twirled = A.expectation(reduce(rho.even_part, (0, 1)))
        assert abs(direct - twirled) < 1e-10

    def test_invalid_sites(self):
        rho = get_random_state(2, seed=0)
        with pytest.raises(ValueError):
            reduce(rho, (0, 0))
        with pytest.raises(ValueError):
            reduce(rho, (0, 2))


class TestTraceNorm:
    """Test suite for the trace norm."""

    def test_zero(self):
        assert trace_norm(FockOperator.zeros(SystemShape(2, 1))) == 0

    def test_state(self):
        assert abs(trace_norm(get_random_state(2, seed=5)) - 1) < 1e-12

    def test_orthogonal_pure_states(self):
        difference = np.diag([1.0, -1.0, 0.0, 0.0])
        assert abs(trace_norm(difference) - 2) < 1e-12

    def test_non_hermitian(self):
        shape = SystemShape(1, 1)
        operator = majorana(shape, 0, 0) @ (FockOperator.identity(shape) + 1j * majorana(shape, 0, 1))
        assert abs(trace_norm(operator) - trace_norm(np.array([[0, 2], [0, 0]]))) < 1e-12


class TestGamma:
    """Test suite for gamma_site and monogamy_check."""

    def test_totally_even_state(self):
        rho = get_random_state(4, seed=6).even_part
        graph = complete_graph(4)
        for i in range(4):
            assert gamma_site(rho, graph, i) < 1e-12

    def test_even_product_state(self):
        rho = get_even_product_state(3, modes_per_site=2, seed=7)
        graph = ring_graph(3)
        assert max(gamma_site(rho, graph, i) for i in range(3)) < 1e-10

    def test_witness_star(self):
        rho = build_witness(SystemShape(5, 1), [0], [1, 2, 3, 4])
        graph = star_graph(5)
        assert abs(gamma_site(rho, graph, 0) - 2) < 1e-9
        report = monogamy_check(rho, graph)
        center = report.records[0]
        assert center.params["site"] == 0
        assert abs(center.measured - 0.5) < 1e-9
        assert abs(center.value - 2.0) < 1e-12
        assert report.passed
        assert "thm1_vs_thm11_factor_4" in report.flags

    def test_isolated_vertex(self):
        rho = get_random_state(3, seed=8)
        graph = from_edge_list(3, [(0, 1)])
        assert gamma_site(rho, graph, 2) == 0
        assert [record.params["site"] for record in monogamy_check(rho, graph).records] == [0, 1]

    def test_neighbor_order_invariance(self):
        rho = get_random_state(4, seed=9)
        graph = from_edge_list(4, [(0, 3), (0, 1), (2, 0)])
        relabeled = from_edge_list(4, [(1, 0), (0, 2), (3, 0)])
        assert abs(gamma_site(rho, graph, 0) - gamma_site(rho, relabeled, 0)) < 1e-12

    def test_graph_size_mismatch(self):
        with pytest.raises(ValueError):
            monogamy_check(get_random_state(3, seed=0), star_graph(4))

    @pytest.mark.parametrize("graph", [star_graph(6), ring_graph(6)])
    def test_random_states_satisfy_bound(self, graph):
        for seed in range(5):
            report = monogamy_check(get_random_state(6, seed=seed), graph)
            assert report.passed
            assert report.num_violations == 0

    @pytest.mark.slow
    def test_random_states_satisfy_bound_many(self):
        graphs = [star_graph(6), ring_graph(6), complete_graph(4)]
        for graph in graphs:
            for seed in range(100):
                rho = get_random_state(graph.num_vertices, seed=seed)
                assert monogamy_check(rho, graph).passed

    def test_star_center_bound_value(self):
        report = monogamy_check(get_random_state(6, seed=10), star_graph(6))
        np.testing.assert_allclose(report.records[0].value, 16 / (4 * np.sqrt(5)), atol=1e-12)


class TestWitness:
    """Test suite for the saturating witness state."""

    @pytest.mark.parametrize(("V1", "V2"), [([0], [1]), ([0, 1], [2, 3]), ([1, 3], [0, 2, 4]), ([0], [1, 2, 3, 4, 5])])
    def test_saturation(self, V1, V2):
        shape = SystemShape(len(V1) + len(V2), 1)
        rho = build_witness(shape, V1, V2)
        expected = witness_distance(len(V1), len(V2))
        for j in V1:
            for k in V2:
                assert abs(pair_distance(rho, j, k) - expected) < 1e-9

    def test_same_side_pairs_uncorrelated(self):
        rho = build_witness(SystemShape(4, 1), [0, 1], [2, 3])
        assert pair_distance(rho, 0, 1) < 1e-12
        assert pair_distance(rho, 2, 3) < 1e-12

    def test_two_sites(self):
        rho = build_witness(SystemShape(2, 1), [0], [1])
        assert abs(pair_distance(rho, 0, 1) - 1) < 1e-9

    @pytest.mark.parametrize("num_sites", [3, 5, 7])
    def test_neighbor_average(self, num_sites):
        rho = build_witness(SystemShape(num_sites, 1), [0], list(range(1, num_sites)))
        graph = star_graph(num_sites)
        mean = gamma_site(rho, graph, 0) / graph.degree(0)
        assert abs(mean - 1 / np.sqrt(num_sites - 1)) < 1e-9

    def test_invalid_inputs(self):
        with pytest.raises(ValueError, match="p = 1"):
            build_witness(SystemShape(2, 2), [0], [1])
        with pytest.raises(ValueError, match="partition"):
            build_witness(SystemShape(3, 1), [0], [1])
        with pytest.raises(ValueError, match="partition"):
            build_witness(SystemShape(2, 1), [0], [0, 1])


class TestExtendibilityWitness:
    """Test suite for extendibility_witness_check."""

    @pytest.mark.parametrize(("n", "k", "measured", "bound"), [(2, 2, 0.5, 2.0), (1, 4, 0.5, 2.0), (2, 3, 1 / np.sqrt(6), 16 / (4 * np.sqrt(6)))])
    def test_values(self, n, k, measured, bound):
        report = extendibility_witness_check(n, k)
        assert len(report.records) == n * k
        for record in report.records:
            assert abs(record.measured - measured) < 1e-9
            assert abs(record.value - bound) < 1e-12
        assert report.passed
