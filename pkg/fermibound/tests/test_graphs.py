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
"""This module tests the interaction graphs, weight matrices and vertex covers."""
import itertools

import numpy as np
import pytest

from fermibound.graphs import (
    InteractionGraph,
    WeightMatrix,
    bipartition,
    complete_bipartite_graph,
    complete_graph,
    detect_family,
    from_edge_list,
    lattice_graph,
    path_graph,
    ring_graph,
    star_graph,
    uniform_weight_matrix,
    validate_cover,
    vertex_cover,
)


def _brute_force_cover_size(graph):
    for size in range(graph.num_vertices + 1):
        for subset in itertools.combinations(range(graph.num_vertices), size):
            if graph.is_cover(subset):
                return size
    return graph.num_vertices


def _random_graph(num_vertices, probability, seed):
    rng = np.random.default_rng(seed)
    edges = [edge for edge in itertools.combinations(range(num_vertices), 2) if rng.random() < probability]
    return from_edge_list(num_vertices, edges)


class TestInteractionGraph:
    """Test suite for graph construction."""

    def test_path_degrees(self):
        graph = from_edge_list(3, [(0, 1), (1, 2)])
        np.testing.assert_array_equal(graph.degrees, [1, 2, 1])
        assert graph.neighbors(1) == (0, 2)

    def test_star(self):
        graph = star_graph(5)
        np.testing.assert_array_equal(graph.degrees, [4, 1, 1, 1, 1])
        assert graph.max_degree_vertex() == 0

    def test_complete_bipartite(self):
        np.testing.assert_array_equal(complete_bipartite_graph(2, 3).degrees, [3, 3, 2, 2, 2])

    def test_deduplication(self):
        graph = from_edge_list(3, [(1, 0), (0, 1), (2, 1)])
        assert graph.edges == ((0, 1), (1, 2))
        assert graph.num_edges == 2

    def test_handshake(self):
        graph = _random_graph(8, 0.5, seed=0)
        assert graph.degrees.sum() == 2 * graph.num_edges

    def test_self_loop(self):
        with pytest.raises(ValueError, match="Self-loop"):
            from_edge_list(3, [(1, 1)])

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            from_edge_list(3, [(0, 3)])

    def test_equality_and_dict(self):
        graph = ring_graph(4)
        assert graph == InteractionGraph(4, [(3, 0), (0, 1), (1, 2), (2, 3)])
        assert graph.to_dict() == {"n": 4, "edges": [[0, 1], [0, 3], [1, 2], [2, 3]]}


class TestLattices:
    """Test suite for the lattice generators."""

    @pytest.mark.parametrize(("dimension", "length", "c"), [(1, 5, 2), (2, 3, 4), (2, 4, 4), (3, 3, 6)])
    def test_periodic_lattice_is_regular(self, dimension, length, c):
        graph = lattice_graph(dimension, length, periodic=True)
        assert graph.num_vertices == length**dimension
        assert np.all(graph.degrees == c)

    def test_open_chain(self):
        assert lattice_graph(1, 4, periodic=False) == path_graph(4)

    def test_two_site_ring_has_single_edge(self):
        assert ring_graph(2).edges == ((0, 1),)


class TestFamilies:
    """Test suite for the family detection."""

    def test_c_regular(self):
        assert detect_family(complete_graph(4)) == {"family": "c_regular", "c": 3}

    def test_star(self):
        assert detect_family(star_graph(5, center=2)) == {"family": "star", "N": 5, "center": 2}

    def test_complete_bipartite(self):
        assert detect_family(complete_bipartite_graph(2, 3)) == {"family": "complete_bipartite", "parts": [[0, 1], [2, 3, 4]]}

    def test_general(self):
        assert detect_family(path_graph(4)) == {"family": "general"}
        assert detect_family(from_edge_list(5, [(0, 1), (1, 2), (2, 0), (3, 4)])) == {"family": "general"}

    def test_bipartition(self):
        assert bipartition(ring_graph(4)) == [[0, 2], [1, 3]]
        assert bipartition(ring_graph(3)) is None
        assert bipartition(from_edge_list(3, [(0, 1)])) is None


class TestWeightMatrix:
    """Test suite for the weight matrices."""

    def test_uniform_regular(self):
        weight = uniform_weight_matrix(ring_graph(6))
        np.testing.assert_allclose(weight.pi, 1 / 6, atol=1e-12)

    def test_uniform_star(self):
        weight = uniform_weight_matrix(star_graph(5))
        np.testing.assert_allclose(weight.pi, [1 / 2, 1 / 8, 1 / 8, 1 / 8, 1 / 8], atol=1e-12)
        assert weight.has_zero_entries

    def test_uniform_complete_graph(self):
        weight = uniform_weight_matrix(complete_graph(4))
        assert abs(weight.trace_A2 - 4 / 3) < 1e-12
        assert abs(weight.pi_norm2 - 1 / 4) < 1e-12
        assert not weight.has_zero_entries
        assert weight.summary() == {"trace_A2": weight.trace_A2, "pi_norm2": weight.pi_norm2, "has_zero_entries": False}

    def test_derived_quantities_match_recomputation(self):
        rng = np.random.default_rng(0)
        G = rng.random((5, 5))
        G = G + G.T
        G /= G.sum()
        weight = WeightMatrix(G)
        pi = G.sum(axis=0)
        A = G / pi[None, :]
        assert abs(weight.trace_A2 - np.trace(A @ A)) < 1e-12
        assert abs(weight.pi_norm2 - np.sum(pi**2)) < 1e-12

    def test_invalid_matrices(self):
        with pytest.raises(ValueError, match="symmetric"):
            WeightMatrix([[0.0, 0.75], [0.25, 0.0]])
        with pytest.raises(ValueError, match="sum to 1"):
            WeightMatrix([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(ValueError, match="nonnegative"):
            WeightMatrix([[0.0, -0.5], [-0.5, 2.0]])

    def test_empty_graph(self):
        with pytest.raises(ValueError):
            uniform_weight_matrix(from_edge_list(3, []))


class TestVertexCover:
    """Test suite for the vertex covers."""

    def test_star(self):
        cover = vertex_cover(star_graph(6))
        assert cover.vertices == (0,)
        assert cover.mode == "exact"

    def test_path(self):
        assert vertex_cover(path_graph(3)).vertices == (1,)

    def test_complete_graph(self):
        assert len(vertex_cover(complete_graph(4), mode="exact")) == 3

    @pytest.mark.parametrize("seed", range(8))
    def test_exact_is_minimum(self, seed):
        graph = _random_graph(9, 0.35, seed=seed)
        cover = vertex_cover(graph, mode="exact")
        assert graph.is_cover(cover)
        assert len(cover) == _brute_force_cover_size(graph)

    @pytest.mark.parametrize("seed", range(4))
    def test_greedy_covers(self, seed):
        graph = _random_graph(12, 0.3, seed=seed)
        cover = vertex_cover(graph, mode="greedy")
        assert cover.mode == "greedy"
        assert graph.is_cover(cover)

    def test_auto_falls_back_to_greedy(self):
        graph = ring_graph(30)
        cover = vertex_cover(graph)
        assert cover.mode == "greedy"
        assert graph.is_cover(cover)
        with pytest.raises(ValueError):
            vertex_cover(graph, mode="exact")

    def test_invalid_mode(self):
        with pytest.raises(ValueError, match="Invalid cover mode"):
            vertex_cover(star_graph(3), mode="optimal")

    def test_validate_cover(self):
        graph = path_graph(4)
        assert validate_cover(graph, [2, 1]) == (1, 2)
        with pytest.raises(ValueError, match="not covered"):
            validate_cover(graph, [1])
