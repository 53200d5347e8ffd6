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
"""This module tests the closed-form bounds against an independent re-derivation."""
import math
from types import SimpleNamespace

import numpy as np
import pytest

from fermibound.bounds import (
    BOUND_TAGS,
    balanced_conditioning_size,
    bipartite_bound,
    conditioning_error_bound,
    cor3_bound,
    cor4_bound,
    cor5_bounds,
    cor12_bound,
    cor13_bounds,
    evaluate_bound,
    extendibility_bounds,
    sym_distinguishable_bound,
    thm1_bound,
    thm6_bound,
    thm8_bound,
    thm10_bounds,
    thm11_bound,
)
from fermibound.graphs import (
    complete_graph,
    from_edge_list,
    lattice_graph,
    ring_graph,
    star_graph,
    uniform_weight_matrix,
)
from fermibound.tests.utils import bound_oracle as oracle


class TestMonogamyBounds:
    """Test suite for the monogamy and edge-average bounds."""

    @pytest.mark.parametrize(("p", "degree", "expected"), [(1, 4, 2.0), (1, 64, 0.5), (2, 1, 64.0)])
    def test_thm1(self, p, degree, expected):
        assert abs(thm1_bound(p, degree) - expected) < 1e-12
        assert abs(thm1_bound(p, degree) - oracle.monogamy(p, degree)) < 1e-9

    def test_thm1_isolated_vertex(self):
        with pytest.raises(ValueError):
            thm1_bound(1, 0)

    def test_cor3_star(self):
        assert abs(cor3_bound(1, star_graph(5)) - 3.0) < 1e-12
        assert abs(cor3_bound(1, star_graph(5)) - oracle.edge_average(1, oracle.star_degrees(5))) < 1e-9

    def test_cor4_star(self):
        graph = star_graph(5)
        assert abs(cor4_bound(1, graph, [0]) - 2.0) < 1e-12
        assert abs(cor4_bound(1, graph, [0]) - oracle.cover_average(1, oracle.star_degrees(5), [0], 4)) < 1e-9

    def test_cor4_invalid_cover(self):
        with pytest.raises(ValueError, match="not covered"):
            cor4_bound(1, star_graph(5), [1, 2])

    @pytest.mark.parametrize(("family", "size", "expected"), [("c_regular", 4, 1.0), ("star", 17, 1.0), ("c_regular", 64, 0.25)])
    def test_cor5(self, family, size, expected):
        assert abs(cor5_bounds(1, family, size) - expected) < 1e-12

    @pytest.mark.parametrize("graph", [ring_graph(6), complete_graph(5), lattice_graph(2, 3)])
    def test_cor3_on_regular_graph_is_twice_cor5(self, graph):
        c = int(graph.degrees[0])
        assert abs(cor3_bound(1, graph) - cor5_bounds(1, "c_regular", c, strict=True)) < 1e-12
        assert abs(cor3_bound(1, graph) - 2 * cor5_bounds(1, "c_regular", c)) < 1e-12

    def test_cor5_star_matches_cor4(self):
        for num_vertices in (3, 5, 9):
            graph = star_graph(num_vertices)
            assert abs(cor5_bounds(1, "star", num_vertices) - cor4_bound(1, graph, [0])) < 1e-12

    @pytest.mark.parametrize(("n", "k", "expected"), [(1, 1, 4.0), (4, 4, 1.0), (1, 16, 1.0)])
    def test_thm6(self, n, k, expected):
        assert abs(thm6_bound(1, n, k) - expected) < 1e-12

    def test_invalid_family(self):
        with pytest.raises(ValueError, match="Invalid family"):
            cor5_bounds(1, "ring", 4)


class TestDistinguishableBounds:
    """Test suite for the product-approximation bounds of distinguishable particles."""

    def test_thm8_complete_graph(self):
        weight = uniform_weight_matrix(complete_graph(4))
        expected = oracle.general_product(2, *oracle.uniform_complete_graph_weights(4))
        assert abs(thm8_bound(2, weight) - expected) < 1e-9
        assert abs(thm8_bound(2, weight) - 61.547) < 1e-3

    def test_thm8_vanishing_trace_limit(self):
        weight = SimpleNamespace(trace_A2=0.0, pi_norm2=0.25)
        assert thm8_bound(2, weight) == 0.5

    def test_thm8_increasing_in_d(self):
        weight = uniform_weight_matrix(ring_graph(6))
        values = [thm8_bound(d, weight) for d in range(2, 9)]
        assert np.all(np.diff(values) > 0)
        first_terms = [value - 2 * weight.pi_norm2 for value in values]
        ratio = first_terms[2] / first_terms[0]
        assert abs(ratio - (16 * math.log(4) / math.log(2)) ** (1 / 5)) < 1e-9

    def test_thm8_invalid_d(self):
        with pytest.raises(ValueError):
            thm8_bound(1, uniform_weight_matrix(ring_graph(4)))

    def test_thm10(self):
        assert abs(thm10_bounds(2, "c_regular", 4) - oracle.special_graph(2, 4, 12)) < 1e-9
        assert abs(thm10_bounds(2, "c_regular", 4) - 10.62) < 1e-2
        assert abs(thm10_bounds(2, "star", 5) - oracle.special_graph(2, 4, 22)) < 1e-9
        assert abs(thm10_bounds(2, "star", 5) - 19.47) < 1e-2
        assert abs(thm10_bounds(2, "star", 5, constant=18) - oracle.special_graph(2, 4, 18)) < 1e-9

    def test_thm10_decays(self):
        values = [thm10_bounds(2, "c_regular", c) for c in (1, 10, 100, 10_000)]
        assert np.all(np.diff(values) < 0)
        assert values[-1] < 0.5

    def test_bipartite(self):
        assert abs(bipartite_bound(2, 4) - thm10_bounds(2, "star", 5)) < 1e-12

    def test_conditioning_error(self):
        expected = 2 * 3 / 10 + 18 * 2 * math.sqrt(2 * math.log(2) / 3)
        assert abs(conditioning_error_bound(3, 10, 2) - expected) < 1e-12

    def test_balanced_conditioning_size(self):
        size = balanced_conditioning_size(2, 10)
        assert size == math.ceil((81 * 4 * 2 * math.log(2) * 100) ** (1 / 3))

    def test_sym_distinguishable(self):
        assert sym_distinguishable_bound(2, 16) == 1.0


class TestFermionicProductBounds:
    """Test suite for the fermionic product-approximation and energy-density bounds."""

    def test_thm11_star(self):
        graph = star_graph(5)
        assert abs(thm11_bound(1, graph, [0], 0.0) - 8.0) < 1e-12
        assert abs(thm11_bound(1, graph, [0], 0.0) - 4 * cor4_bound(1, graph, [0])) < 1e-12
        assert abs(thm11_bound(1, graph, [0], 0.0, strict=True) - cor4_bound(1, graph, [0])) < 1e-12

    def test_thm11_single_edge(self):
        graph = from_edge_list(2, [(0, 1)])
        assert abs(thm11_bound(1, graph, [0], 0.25) - 16.25) < 1e-12
        with pytest.raises(ValueError):
            thm11_bound(1, graph, [0], -1.0)

    def test_cor12_star(self):
        graph = star_graph(5)
        middle = 47 * (16 * 1 * 1.0 * (20 / 16)) ** (1 / 5)
        expected = 8.0 + middle + 2 * 20 / 16
        assert abs(cor12_bound(1, graph, [0]) - expected) < 1e-9
        assert cor12_bound(1, graph, [0]) >= thm11_bound(1, graph, [0], 0.0)

    def test_cor12_strict(self):
        graph = star_graph(5)
        expected = 2.0 + thm8_bound(2, uniform_weight_matrix(graph))
        assert abs(cor12_bound(1, graph, [0], strict=True) - expected) < 1e-12

    @pytest.mark.parametrize("graph", [ring_graph(4), ring_graph(6), lattice_graph(2, 3), complete_graph(4)])
    def test_cor12_dominates_cor13_on_regular_graphs(self, graph):
        c = int(graph.degrees[0])
        cover = list(range(graph.num_vertices))
        assert cor12_bound(1, graph, cover) >= cor13_bounds(1, "c_regular", {"c": c})

    @pytest.mark.parametrize(
        ("family", "params", "expected"),
        [
            ("c_regular", {"c": 16}, 0.5 + 12 * 0.25 ** (1 / 3)),
            ("hubbard_spinless", {"t": 1, "U": 1, "D": 2}, 13.0),
            ("star", {"N": 5}, 20.0),
        ],
    )
    def test_cor13(self, family, params, expected):
        assert abs(cor13_bounds(1, family, params) - expected) < 1e-9

    def test_cor13_oracle(self):
        assert abs(cor13_bounds(1, "c_regular", {"c": 16}) - oracle.energy_density_regular(1, 16)) < 1e-9
        assert abs(cor13_bounds(1, "star", {"N": 5}) - oracle.energy_density_star(1, 5)) < 1e-9
        assert abs(cor13_bounds(1, "star", {"N": 5}, strict=True) - oracle.energy_density_star(1, 5, constant=22)) < 1e-9

    def test_cor13_hubbard_scales_with_max_coupling(self):
        base = cor13_bounds(1, "hubbard_spinless", {"t": 1, "U": 0.5, "D": 2})
        assert abs(cor13_bounds(1, "hubbard_spinless", {"t": 0.5, "U": -2, "D": 2}) - 2 * base) < 1e-12


class TestExtendibilityBounds:
    """Test suite for the symmetric extendibility bounds."""

    def test_one_sided(self):
        assert abs(extendibility_bounds(1, 1, 16, "one_sided") - 1.5) < 1e-12

    def test_symmetric(self):
        assert abs(extendibility_bounds(1, 4, 4, "symmetric") - 3.0) < 1e-12

    @pytest.mark.parametrize("k", [1, 2, 5, 16])
    def test_two_sided_equals_symmetric(self, k):
        assert abs(extendibility_bounds(1, k, k, "two_sided") - extendibility_bounds(1, k, k, "symmetric")) < 1e-12

    def test_invalid(self):
        with pytest.raises(ValueError, match="n == k"):
            extendibility_bounds(1, 2, 3, "symmetric")
        with pytest.raises(ValueError, match="Invalid side"):
            extendibility_bounds(1, 2, 3, "both")


def test_bounds_nonincreasing_in_growth_parameter():
    sizes = np.arange(1, 60)
    sequences = [
        [thm1_bound(1, int(s)) for s in sizes],
        [cor5_bounds(1, "c_regular", int(s)) for s in sizes],
        [cor5_bounds(1, "star", int(s) + 1) for s in sizes],
        [thm6_bound(1, 2, int(s)) for s in sizes],
        [thm10_bounds(3, "c_regular", int(s)) for s in sizes],
        [thm10_bounds(3, "star", int(s) + 1) for s in sizes],
        [cor13_bounds(2, "c_regular", {"c": int(s)}) for s in sizes],
        [extendibility_bounds(1, 1, int(s), "one_sided") for s in sizes],
        [extendibility_bounds(1, int(s), int(s), "symmetric") for s in sizes],
    ]
    for values in sequences:
        assert np.all(np.diff(values) <= 1e-15)


class TestEvaluateBound:
    """Test suite for the tagged bound evaluation."""

    def test_thm1_uses_max_degree_site(self):
        record = evaluate_bound("thm1", p=1, graph=star_graph(5, center=3))
        assert record.params == {"p": 1, "site": 3, "degree": 4}
        assert record.value == 2.0

    def test_cor4_picks_cover(self):
        record = evaluate_bound("cor4", p=1, graph=star_graph(5))
        assert record.params["cover"] == [0]
        assert record.params["cover_mode"] == "exact"

    def test_cor5_reports_factor_2(self):
        record = evaluate_bound("cor5", p=1, graph=ring_graph(6))
        assert record.params["family"] == "c_regular"
        assert "cor5_c_regular_factor_2" in record.notes
        assert abs(record.strict_value - 2 * record.value) < 1e-12

    def test_thm10_star_alternatives(self):
        record = evaluate_bound("thm10", p=1, graph=star_graph(5))
        assert record.alternatives["constant_22"] == record.value
        assert record.alternatives["constant_18"] < record.value
        assert "star_constant_18_vs_22" in record.to_dict()["notes"]
        assert "alternatives" in record.to_dict(strict_proof=True)
        assert "alternatives" not in record.to_dict()

    def test_cor13_hubbard(self):
        record = evaluate_bound("cor13", p=1, family="hubbard_spinless", t=1, U=1, D=2)
        assert abs(record.value - 13.0) < 1e-9
        assert "upper_bound_written_as_equality" in record.notes

    def test_thm8_records_weight_summary(self):
        record = evaluate_bound("thm8", p=1, graph=complete_graph(4))
        assert record.params["d"] == 2
        assert abs(record.params["trace_A2"] - 4 / 3) < 1e-12

    def test_cor12_notes(self):
        record = evaluate_bound("cor12", p=1, graph=star_graph(5))
        assert record.strict_value < record.value
        assert "thm11_term_equals_4x_cor4" in record.notes

    def test_extendibility_tags(self):
        assert evaluate_bound("ext_symmetric", p=1, k=4).value == 3.0
        assert evaluate_bound("ext_one_sided", p=1, k=16).value == 1.5

    def test_non_special_graph(self):
        with pytest.raises(ValueError, match="not c-regular nor a star"):
            evaluate_bound("cor5", p=1, graph=from_edge_list(4, [(0, 1), (1, 2), (2, 3)]))

    def test_unknown_tag(self):
        with pytest.raises(ValueError, match="Unknown bound tag"):
            evaluate_bound("thm99", p=1)

    def test_missing_parameter(self):
        with pytest.raises(ValueError, match="Missing parameter"):
            evaluate_bound("thm6", p=1, n=2)

    @pytest.mark.parametrize("tag", BOUND_TAGS)
    def test_every_tag_evaluates(self, tag):
        graph = star_graph(5)
        record = evaluate_bound(tag, p=1, d=2, graph=graph, n=4, k=4, t=1, U=1, D=2)
        assert record.value >= 0
        assert record.tag == tag
