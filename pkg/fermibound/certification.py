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
"""This module certifies ground-state energies of two-local Hamiltonians against product states.

The exact ground energy is compared with the best mode-product state found by a
coordinate-descent mean-field optimization, and the energy-density gap is checked
against the fermionic product-approximation bounds.
"""
import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from fermibound.bounds import cor12_bound, cor13_bounds
from fermibound.checks import BoundViolationError, check_integer, check_real
from fermibound.configs import HERMITIAN_TOL, MONOTONE_TOL, PSD_TOL, TRACE_TOL
from fermibound.fock import FockOperator, SystemShape, local_parity
from fermibound.graphs import detect_family, validate_cover, vertex_cover
from fermibound.hamiltonians import TwoLocalHamiltonian
from fermibound.reports import BoundRecord, BoundReport
from fermibound.states import DensityState, random_even_local_state
from fermibound.utils.linalg import kron_all, max_hermitian_deviation, partial_trace
from fermibound.utils.parallel import compute_ordered
from fermibound.utils.timing import log_elapsed_time

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-9
VARIATIONAL_TOL = 1e-9


####--------------------------------------------------------------------------.
#### Mode product states


def _local_parity_diagonal(modes_per_site):
    return np.diag(local_parity(SystemShape(1, modes_per_site), 0).matrix).real


class ModeProductState:
    """Product of totally even single-site states ``sigma^1 x ... x sigma^N``.

    Each local state is a ``2^p x 2^p`` density matrix commuting with the local parity.
    """

    def __init__(self, local_states, modes_per_site):
        self.modes_per_site = check_integer(modes_per_site, "modes_per_site", minimum=1)
        local_dim = 2**self.modes_per_site
        parity = _local_parity_diagonal(self.modes_per_site)
        states = []
        for site, state in enumerate(local_states):
            state = np.array(state, dtype=complex)
            if state.shape != (local_dim, local_dim):
                raise ValueError(f"Local state {site} must have shape {(local_dim, local_dim)}. Got {state.shape}.")
            if max_hermitian_deviation(state) > HERMITIAN_TOL or abs(np.trace(state).real - 1) > TRACE_TOL:
                raise ValueError(f"Local state {site} is not a Hermitian unit-trace matrix.")
            if scipy.linalg.eigvalsh(state)[0] < -PSD_TOL:
                raise ValueError(f"Local state {site} is not positive semidefinite.")
            if np.max(np.abs(state * (parity[:, None] != parity[None, :]))) > HERMITIAN_TOL:
                raise ValueError(f"Local state {site} does not commute with the local parity.")
            state.flags.writeable = False
            states.append(state)
        if not states:
            raise ValueError("A product state needs at least one site.")
        self.local_states = tuple(states)
        self.shape = SystemShape(len(states), self.modes_per_site)

    @property
    def num_sites(self):
        return len(self.local_states)

    def to_density_state(self):
        """Assemble the global state; for even local states this is the fermionic product."""
        return DensityState(self.shape, kron_all(self.local_states))


####--------------------------------------------------------------------------.
#### Energies


def _edge_energy(term, left, right):
    return float(np.sum(term.matrix * np.kron(left, right).T).real)


def product_energy(hamiltonian, state, normalized=True):
    """Return ``tr(H sigma)`` summed edge by edge from the local factors."""
    energy = 0.0
    for (i, j), term in hamiltonian.edge_terms.items():
        energy += _edge_energy(term, state.local_states[i], state.local_states[j])
    for site, term in hamiltonian.onsite_terms.items():
        energy += float(np.sum(term.matrix * state.local_states[site].T).real)
    return energy / hamiltonian.scale if normalized else energy


def product_energy_global(hamiltonian, state, normalized=True):
    """Return ``tr(H sigma)`` from the assembled Hamiltonian and the assembled product state."""
    operator = hamiltonian.operator if normalized else hamiltonian.physical
    return operator.expectation(state.to_density_state()).real


####--------------------------------------------------------------------------.
#### Exact ground state


@dataclass
class GroundState:
    """Lowest eigenvalue, a corresponding eigenvector and the ground-space degeneracy."""

    energy: float
    vector: np.ndarray
    degeneracy: int
    shape: SystemShape

    @property
    def state(self):
        return DensityState(self.shape, np.outer(self.vector, self.vector.conj()))


def ground_state(H):
    """Diagonalize a Hamiltonian exactly.

    Parameters
    ----------
    H : TwoLocalHamiltonian or FockOperator
        Hamiltonian. For a TwoLocalHamiltonian the normalized operator is used.

    Returns
    -------
    GroundState

    """
    operator = H.operator if isinstance(H, TwoLocalHamiltonian) else H
    if not isinstance(operator, FockOperator):
        raise TypeError("'H' must be a TwoLocalHamiltonian or a FockOperator.")
    if not operator.is_hermitian(HERMITIAN_TOL):
        raise ValueError("The Hamiltonian is not Hermitian.")
    eigenvalues, eigenvectors = scipy.linalg.eigh(operator.matrix)
    degeneracy = int(np.sum(eigenvalues - eigenvalues[0] <= DEGENERACY_TOL))
    return GroundState(float(eigenvalues[0]), eigenvectors[:, 0], degeneracy, operator.shape)


####--------------------------------------------------------------------------.
#### Product-state optimization


@dataclass
class ProductOptimization:
    """Best product state over all restarts."""

    state: ModeProductState
    energy: float
    converged: bool
    num_sweeps: int
    restart: int
    restart_energies: list = field(default_factory=list)


def _effective_operator(hamiltonian, locals_, site):
    """Partial expectation of the terms touching ``site`` against the other local states."""
    local_dim = locals_[0].shape[0]
    identity = np.eye(local_dim)
    h_eff = np.zeros((local_dim, local_dim), dtype=complex)
    for neighbor in hamiltonian.graph.neighbors(site):
        edge = (min(site, neighbor), max(site, neighbor))
        term = hamiltonian.edge_terms[edge].matrix
        if site < neighbor:
            h_eff += partial_trace(term @ np.kron(identity, locals_[neighbor]), [local_dim, local_dim], [0])
        else:
            h_eff += partial_trace(term @ np.kron(locals_[neighbor], identity), [local_dim, local_dim], [1])
    if site in hamiltonian.onsite_terms:
        h_eff += hamiltonian.onsite_terms[site].matrix
    return (h_eff + h_eff.conj().T) / 2


def _lowest_even_projector(h_eff, parity):
    """Projector on the lowest eigenvector of the parity-blocked ``h_eff``, even block first on ties."""
    best = None
    for sign in (1, -1):
        block = np.flatnonzero(parity == sign)
        eigenvalues, eigenvectors = scipy.linalg.eigh(h_eff[np.ix_(block, block)])
        if best is None or eigenvalues[0] < best[0] - MONOTONE_TOL:
            vector = np.zeros(h_eff.shape[0], dtype=complex)
            vector[block] = eigenvectors[:, 0]
            best = (eigenvalues[0], vector)
    vector = best[1]
    return np.outer(vector, vector.conj())


def _energy(hamiltonian, locals_):
    energy = sum(_edge_energy(term, locals_[i], locals_[j]) for (i, j), term in hamiltonian.edge_terms.items())
    energy += sum(float(np.sum(term.matrix * locals_[site].T).real) for site, term in hamiltonian.onsite_terms.items())
    return energy


def _coordinate_descent(hamiltonian, initial, tol, max_iters):
    """Run cyclic single-site updates; return ``(locals, energy, converged, num_sweeps)``."""
    parity = _local_parity_diagonal(hamiltonian.modes_per_site)
    locals_ = [np.array(state, dtype=complex) for state in initial]
    energy = _energy(hamiltonian, locals_)
    for sweep in range(1, max_iters + 1):
        start_energy = energy
        for site in range(len(locals_)):
            locals_[site] = _lowest_even_projector(_effective_operator(hamiltonian, locals_, site), parity)
            updated = _energy(hamiltonian, locals_)
            if updated > energy + MONOTONE_TOL * max(1.0, abs(energy)):
                raise BoundViolationError(f"Coordinate update increased the energy from {energy} to {updated}.")
            energy = updated
        if start_energy - energy < tol:
            return locals_, energy, True, sweep
    return locals_, energy, False, max_iters


def _initial_states(modes_per_site, num_sites, restarts, seed):
    local_dim = 2**modes_per_site
    vacuum = np.zeros((local_dim, local_dim), dtype=complex)
    vacuum[0, 0] = 1
    filled = np.zeros((local_dim, local_dim), dtype=complex)
    filled[-1, -1] = 1
    initial = [[vacuum] * num_sites, [filled] * num_sites]
    for restart in range(2, restarts):
        rng = np.random.default_rng([seed, restart])
        initial.append([random_even_local_state(modes_per_site, rng) for _ in range(num_sites)])
    return initial[:restarts]


@log_elapsed_time(level=logging.DEBUG)
def optimize_product_state(H, restarts=16, tol=1e-10, max_iters=500, seed=0, threads=1):
    """Minimize the energy over products of totally even local states by coordinate descent.

    Restart 0 starts from the vacuum, restart 1 from full occupation and the others from random
    even local states drawn with ``numpy.random.default_rng([seed, restart])``. The result is an
    upper bound on the true product minimum.

    Parameters
    ----------
    H : TwoLocalHamiltonian
        Hamiltonian; energies are in normalized units.
    restarts : int
        Number of restarts. The default is 16.
    tol : float
        Convergence threshold on the energy decrease of a sweep. The default is 1e-10.
    max_iters : int
        Maximum number of sweeps per restart. The default is 500.
    seed : int
        Seed of the random restarts.
    threads : int
        Number of threads running restarts concurrently.

    Returns
    -------
    ProductOptimization

    """
    if not isinstance(H, TwoLocalHamiltonian):
        raise TypeError("'H' must be a TwoLocalHamiltonian.")
    restarts = check_integer(restarts, "restarts", minimum=1)
    max_iters = check_integer(max_iters, "max_iters", minimum=1)
    tol = check_real(tol, "tol", minimum=0)
    initial = _initial_states(H.modes_per_site, H.shape.num_sites, restarts, seed)
    results = compute_ordered(_coordinate_descent, [(H, init, tol, max_iters) for init in initial], threads=threads)
    energies = [energy / H.scale for _, energy, _, _ in results]
    best = int(np.argmin(energies))
    locals_, _, converged, num_sweeps = results[best]
    if not converged:
        logger.warning("Product-state optimization did not converge within %d sweeps.", max_iters)
    return ProductOptimization(
        state=ModeProductState(locals_, H.modes_per_site),
        energy=energies[best],
        converged=converged,
        num_sweeps=num_sweeps,
        restart=best,
        restart_energies=energies,
    )


####--------------------------------------------------------------------------.
#### Certificates


def _cor13_record(hamiltonian, delta):
    p = hamiltonian.modes_per_site
    detected = detect_family(hamiltonian.graph)
    if detected["family"] == "c_regular":
        family, params = "c_regular", {"c": detected["c"]}
    elif detected["family"] == "star":
        family, params = "star", {"N": detected["N"]}
    else:
        return None
    record = BoundRecord(
        "cor13",
        cor13_bounds(p, family, params),
        params={"p": p, "family": family, **params},
        measured=delta,
        strict_value=cor13_bounds(p, family, params, strict=True),
        notes=["upper_bound_written_as_equality"],
    )
    if family == "star":
        record.alternatives = {"constant_18": record.value, "constant_22": record.strict_value}
    return record


@log_elapsed_time(level=logging.INFO)
def certificate(H, cover=None, cover_mode="auto", restarts=16, tol=1e-10, max_iters=500, seed=0, threads=1):
    """Compare the exact ground energy with the best product state and check the energy-density bound.

    ``delta = (tr(H sigma) - E_GS) / |E|`` in normalized units is checked against the two-local
    fermionic bound for the vertex cover ``cover`` (computed with ``cover_mode`` when omitted).
    On c-regular graphs and stars the special-graph bound is reported too.

    Returns
    -------
    BoundReport
        Records ``cor12`` and optionally ``cor13``; the summary carries the energies, ``delta``,
        the Hamiltonian scale and the optimizer convergence flag.

    """
    if not isinstance(H, TwoLocalHamiltonian):
        raise TypeError("'H' must be a TwoLocalHamiltonian.")
    if H.num_edges == 0:
        raise ValueError("The certificate requires a Hamiltonian with at least one edge.")
    graph = H.graph
    p = H.modes_per_site
    if cover is None:
        cover = vertex_cover(graph, mode=cover_mode)
    used_mode = getattr(cover, "mode", "given")
    cover_vertices = validate_cover(graph, cover)

    ground = ground_state(H)
    optimization = optimize_product_state(H, restarts=restarts, tol=tol, max_iters=max_iters, seed=seed, threads=threads)
    if optimization.energy < ground.energy - VARIATIONAL_TOL:
        raise BoundViolationError(
            f"Product energy {optimization.energy} lies below the ground energy {ground.energy}.",
        )
    num_edges = H.num_edges
    delta = (optimization.energy - ground.energy) / num_edges

    report = BoundReport(name="ground_certificate")
    report.add(
        BoundRecord(
            "cor12",
            cor12_bound(p, graph, cover_vertices),
            params={"p": p, "d": 2**p, "cover": list(cover_vertices), "cover_mode": used_mode},
            measured=delta,
            strict_value=cor12_bound(p, graph, cover_vertices, strict=True),
            notes=["thm11_term_equals_4x_cor4"],
        ),
    )
    cor13 = _cor13_record(H, delta)
    if cor13 is not None:
        report.add(cor13)
    report.summary = {
        "hamiltonian": H.summary(),
        "e_gs_per_edge": ground.energy / num_edges,
        "product_per_edge": optimization.energy / num_edges,
        "delta": delta,
        "delta_physical": delta * H.scale,
        "scale": H.scale,
        "degeneracy": ground.degeneracy,
        "converged": optimization.converged,
        "num_sweeps": optimization.num_sweeps,
        "best_restart": optimization.restart,
        "cover_mode": used_mode,
    }
    for note in H.flags:
        report.flag(note)
    report.flag("product_minimum_is_upper_bound")
    if not report.passed:
        logger.error("Certificate violated: delta=%.6g.", delta)
    return report
