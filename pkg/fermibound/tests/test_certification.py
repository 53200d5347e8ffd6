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
"""This module tests the product-state optimization and the ground-state certificates."""
from types import SimpleNamespace

import numpy as np
import pytest

from fermibound.certification import (
    ModeProductState,
    certificate,
    ground_state,
    optimize_product_state,
    product_energy,
    product_energy_global,
)
from fermibound.checks import BoundViolationError
from fermibound.fock import FockOperator, SystemShape
from fermibound.graphs import from_edge_list
from fermibound.hamiltonians import (
    TwoLocalHamiltonian,
    build_explicit_hamiltonian,
    build_hubbard_spinful,
    build_hubbard_spinless,
)
from fermibound.states import random_even_local_state
from fermibound.tests.utils.fake_states import get_rng

COUPLINGS = [0.0, 0.5, 1.0]


def _random_product(num_sites, modes_per_site, seed):
    rng = get_rng(seed)
    return ModeProductState([random_even_local_state(modes_per_site, rng) for _ in range(num_sites)], modes_per_site)


class TestModeProductState:
    """Test suite for ModeProductState."""

    def test_valid(self):
        state = _random_product(3, 2, seed=0)
        assert state.num_sites == 3
        rho = state.to_density_state()
        assert rho.shape == SystemShape(3, 2)
        assert abs(rho.trace() - 1) < 1e-12

    def test_odd_coherence_rejected(self):
        plus = np.full((2, 2), 0.5)
        with pytest.raises(ValueError, match="local parity"):
            ModeProductState([plus], 1)

    def test_invalid_states(self):
        with pytest.raises(ValueError, match="shape"):
            ModeProductState([np.eye(4) / 4], 1)
        with pytest.raises(ValueError, match="unit-trace"):
            ModeProductState([np.eye(2)], 1)
        with pytest.raises(ValueError, match="positive semidefinite"):
            ModeProductState([np.diag([1.5, -0.5])], 1)
        with pytest.raises(ValueError, match="at least one site"):
            ModeProductState([], 1)


class TestEnergies:
    """Test suite for product and exact energies."""

    @pytest.mark.parametrize("seed", range(3))
    def test_local_and_global_paths_agree(self, seed):
        H = build_hubbard_spinful(1, 3, 1.0, 2.0, periodic=True)
        state = _random_product(3, 2, seed=seed)
        for normalized in (True, False):
            local = product_energy(H, state, normalized=normalized)
            assert abs(local - product_energy_global(H, state, normalized=normalized)) < 1e-10

    def test_isolated_onsite_energy(self):
        H = build_explicit_hamiltonian(3, 1, [(1j, [(0, 0), (1, 1)]), (1j, [(2, 0), (2, 1)])])
        state = _random_product(3, 1, seed=4)
        assert abs(product_energy(H, state) - product_energy_global(H, state)) < 1e-10

    def test_two_site_ground_state(self):
        ground = ground_state(build_hubbard_spinless(1, 2, 1.0, 0.0))
        assert abs(ground.energy + 1) < 1e-12
        assert ground.degeneracy == 1
        assert abs(ground.state.trace() - 1) < 1e-12

    def test_degenerate_ground_state(self):
        ground = ground_state(build_hubbard_spinless(1, 2, 0.0, 1.0))
        assert abs(ground.energy) < 1e-12
        assert ground.degeneracy == 3

    def test_fock_operator_input(self):
        shape = SystemShape(1, 1)
        ground = ground_state(FockOperator(shape, np.diag([2.0, -3.0]), hermitian=True))
        assert ground.energy == -3.0

    def test_invalid_input(self):
        with pytest.raises(TypeError):
            ground_state(np.eye(2))
        with pytest.raises(ValueError, match="not Hermitian"):
            ground_state(FockOperator(SystemShape(1, 1), [[0, 1], [0, 0]]))


class TestProductOptimization:
    """Test suite for the coordinate-descent optimizer."""

    def test_hopping_product_minimum(self):
        result = optimize_product_state(build_hubbard_spinless(1, 2, 1.0, 0.0))
        assert abs(result.energy) < 1e-12
        assert result.converged
        assert len(result.restart_energies) == 16

    def test_attractive_interaction_needs_full_restart(self):
        H = build_hubbard_spinless(1, 2, 0.0, -1.0)
        result = optimize_product_state(H, restarts=2)
        assert result.restart_energies[0] == pytest.approx(0.0)
        assert result.restart_energies[1] == pytest.approx(-1.0)
        assert result.restart == 1
        assert result.energy == pytest.approx(ground_state(H).energy)

    @pytest.mark.parametrize("seed", range(3))
    def test_upper_bounds_ground_energy(self, seed):
        H = build_hubbard_spinful(1, 3, 1.0, 4.0, periodic=True)
        result = optimize_product_state(H, restarts=4, seed=seed)
        assert result.energy >= ground_state(H).energy - 1e-9
        assert result.energy == min(result.restart_energies)
        assert abs(product_energy(H, result.state) - result.energy) < 1e-10

    def test_deterministic_across_threads(self):
        H = build_hubbard_spinless(1, 4, 1.0, 0.5, periodic=True)
        first = optimize_product_state(H, restarts=6, seed=3)
        second = optimize_product_state(H, restarts=6, seed=3, threads=4)
        assert first.restart_energies == second.restart_energies
        assert first.restart == second.restart

    def test_not_converged(self):
        H = build_hubbard_spinless(1, 4, 1.0, 0.5, periodic=True)
        result = optimize_product_state(H, restarts=3, max_iters=1, tol=0.0)
        assert not result.converged
        assert result.num_sweeps == 1

    def test_invalid(self):
        with pytest.raises(TypeError):
            optimize_product_state(FockOperator.identity(SystemShape(1, 1)))
        with pytest.raises(ValueError):
            optimize_product_state(build_hubbard_spinless(1, 2, 1.0, 0.0), restarts=0)


class TestCertificate:
    """Test suite for the ground-state certificate."""

    def test_two_site_oracle(self):
        report = certificate(build_hubbard_spinless(1, 2, 1.0, 0.0))
        summary = report.summary
        assert summary["e_gs_per_edge"] == pytest.approx(-1.0, abs=1e-12)
        assert summary["product_per_edge"] == pytest.approx(0.0, abs=1e-12)
        assert summary["delta"] == pytest.approx(1.0, abs=1e-12)
        assert summary["scale"] == 1.0
        assert report.passed
        assert [record.tag for record in report.records] == ["cor12", "cor13"]
        assert "product_minimum_is_upper_bound" in report.flags

    @pytest.mark.parametrize("t", COUPLINGS)
    @pytest.mark.parametrize("U", COUPLINGS)
    def test_hubbard_rings(self, t, U):
        H = build_hubbard_spinless(1, 4, t, U, periodic=True)
        report = certificate(H, restarts=4)
        assert report.passed
        assert report.summary["delta"] >= -1e-9
        assert report.records[1].params == {"p": 1, "family": "c_regular", "c": 2}

    @pytest.mark.slow
    @pytest.mark.parametrize("t", COUPLINGS)
    @pytest.mark.parametrize("U", COUPLINGS)
    def test_hubbard_rings_six_sites(self, t, U):
        report = certificate(build_hubbard_spinless(1, 6, t, U, periodic=True))
        assert report.passed

    def test_given_cover(self):
        H = build_hubbard_spinless(1, 3, 1.0, 1.0)
        report = certificate(H, cover=[1], restarts=2)
        assert report.records[0].params["cover"] == [1]
        assert report.summary["cover_mode"] == "given"
        with pytest.raises(ValueError, match="not covered"):
            certificate(H, cover=[0], restarts=2)

    def test_general_graph_has_no_special_record(self):
        graph = from_edge_list(4, [(0, 1), (1, 2), (2, 3)])
        edge_terms = {edge: build_hubbard_spinless(1, 2, 1.0, 1.0).edge_terms[(0, 1)] for edge in graph.edges}
        report = certificate(TwoLocalHamiltonian(graph, 1, edge_terms), restarts=2)
        assert [record.tag for record in report.records] == ["cor12"]

    def test_spinful_flags(self):
        report = certificate(build_hubbard_spinful(1, 2, 1.0, 1.0), restarts=4)
        assert "spinful_normalization_caveat" in report.flags
        assert report.summary["delta_physical"] == pytest.approx(report.summary["delta"] * report.summary["scale"])

    def test_no_edges(self):
        H = TwoLocalHamiltonian(from_edge_list(2, []), 1, {})
        with pytest.raises(ValueError, match="at least one edge"):
            certificate(H)

    def test_variational_violation_is_detected(self, monkeypatch):
        H = build_hubbard_spinless(1, 2, 1.0, 0.0)
        monkeypatch.setattr("fermibound.certification.ground_state", lambda H: SimpleNamespace(energy=5.0, degeneracy=1))
        with pytest.raises(BoundViolationError):
            certificate(H, restarts=2)
