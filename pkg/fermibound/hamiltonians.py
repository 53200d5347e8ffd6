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
"""This module defines two-local fermionic Hamiltonians and the model builders."""
import functools
import logging

import numpy as np

from fermibound.checks import check_integer, check_real
from fermibound.configs import COEFF_TOL, HERMITIAN_TOL
from fermibound.fock import FockOperator, SystemShape, embed_operator, fermion_annihilation, majorana_sum, number_operator
from fermibound.graphs import InteractionGraph, from_edge_list, lattice_graph

logger = logging.getLogger(__name__)

HAMILTONIAN_FAMILIES = ("hubbard_spinless", "hubbard_spinful", "qc", "explicit")


class TwoLocalHamiltonian:
    """Sum of Hermitian terms ``h_ij`` on the edges of an interaction graph.

    Edge terms are stored on the two-site Fock space of the edge ``(i, j)``, ``i < j``, with
    ``i`` as local site 0. On-site terms of sites with incident edges are split evenly over those
    edges. On-site terms of isolated sites stay separate.

    The physical terms are divided by ``scale``, the largest term norm, so that the normalized
    terms satisfy ``||h_ij|| <= 1``.

    Parameters
    ----------
    graph : InteractionGraph
        Interaction graph on the sites.
    modes_per_site : int
        Number of fermionic modes per site.
    edge_terms : dict
        ``{(i, j): FockOperator}`` on ``SystemShape(2, p)`` for each edge of ``graph``.
    onsite_terms : dict, optional
        ``{i: FockOperator}`` on ``SystemShape(1, p)``.
    family : str
        Name of the model family.
    params : dict, optional
        Model parameters, recorded in reports.
    flags : list, optional
        Report flags.

    """

    def __init__(self, graph, modes_per_site, edge_terms, onsite_terms=None, family="explicit", params=None, flags=None):
        if not isinstance(graph, InteractionGraph):
            raise TypeError("'graph' must be an InteractionGraph.")
        self.graph = graph
        self.modes_per_site = check_integer(modes_per_site, "modes_per_site", minimum=1)
        self.shape = SystemShape(graph.num_vertices, self.modes_per_site)
        self.family = family
        self.params = dict(params or {})
        self.flags = list(flags or [])
        pair_shape = SystemShape(2, self.modes_per_site)
        site_shape = SystemShape(1, self.modes_per_site)

        terms = {}
        for edge in graph.edges:
            term = edge_terms.get(edge)
            if term is None:
                term = FockOperator.zeros(pair_shape)
            terms[edge] = self._check_term(term, pair_shape, f"edge {edge}")
        unknown = set(edge_terms) - set(graph.edges)
        if unknown:
            raise ValueError(f"Edge terms {sorted(unknown)} are not edges of the graph.")

        isolated = {}
        for site, term in (onsite_terms or {}).items():
            term = self._check_term(term, site_shape, f"site {site}")
            degree = graph.degree(site)
            if degree == 0:
                isolated[site] = term
                continue
            for neighbor in graph.neighbors(site):
                edge = (min(site, neighbor), max(site, neighbor))
                share = embed_operator(term, pair_shape, [0 if site < neighbor else 1])
                terms[edge] = terms[edge] + share / degree
            if "onsite_terms_split_over_edges" not in self.flags:
                self.flags.append("onsite_terms_split_over_edges")
        self.edge_terms = terms
        self.onsite_terms = isolated

        norms = [term.norm() for term in terms.values()] + [term.norm() for term in isolated.values()]
        largest = max(norms, default=0.0)
        self.scale = float(largest) if largest > COEFF_TOL else 1.0

    @staticmethod
    def _check_term(term, shape, name):
        if not isinstance(term, FockOperator) or term.shape != shape:
            raise ValueError(f"The term of {name} must be a FockOperator on {shape}.")
        if not term.is_hermitian(HERMITIAN_TOL):
            raise ValueError(f"The term of {name} is not Hermitian.")
        return FockOperator(shape, term.matrix, hermitian=True)

    @property
    def num_edges(self):
        return self.graph.num_edges

    @property
    def normalized_edge_terms(self):
        """Edge terms divided by ``scale``."""
        return {edge: term / self.scale for edge, term in self.edge_terms.items()}

    @functools.cached_property
    def physical(self):
        """Assembled Hamiltonian in physical units."""
        matrix = np.zeros((self.shape.dim, self.shape.dim), dtype=complex)
        for edge, term in self.edge_terms.items():
            matrix += embed_operator(term, self.shape, edge).matrix
        for site, term in self.onsite_terms.items():
            matrix += embed_operator(term, self.shape, [site]).matrix
        return FockOperator(self.shape, (matrix + matrix.conj().T) / 2, hermitian=True)

    @property
    def operator(self):
        """Assembled normalized Hamiltonian ``H / scale``."""
        return FockOperator(self.shape, self.physical.matrix / self.scale, hermitian=True)

    @property
    def matrix(self):
        return self.operator.matrix

    def summary(self):
        return {
            "family": self.family,
            "params": self.params,
            "num_sites": self.shape.num_sites,
            "modes_per_site": self.modes_per_site,
            "num_edges": self.num_edges,
            "scale": self.scale,
        }

    def __repr__(self):
        return f"TwoLocalHamiltonian(family={self.family!r}, num_sites={self.shape.num_sites}, num_edges={self.num_edges})"


####--------------------------------------------------------------------------.
#### Local building blocks


def _hopping(shape, site_a, mode_a, site_b, mode_b, amplitude):
    """Return ``amplitude f_a^dagger f_b + conj(amplitude) f_b^dagger f_a``."""
    f_a = fermion_annihilation(shape, site_a, mode_a)
    f_b = fermion_annihilation(shape, site_b, mode_b)
    term = amplitude * (f_a.dagger() @ f_b)
    return term + term.dagger()


def _density_density(shape, site_a, mode_a, site_b, mode_b, coupling):
    return coupling * (number_operator(shape, site_a, mode_a) @ number_operator(shape, site_b, mode_b))


def _check_lattice(D, L, t, U):
    D = check_integer(D, "D", minimum=1)
    L = check_integer(L, "L", minimum=2)
    t = check_real(t, "t")
    U = check_real(U, "U")
    return D, L, t, U


####--------------------------------------------------------------------------.
#### Model builders


def build_hubbard_spinless(D, L, t, U, periodic=False):
    """Spinless Fermi-Hubbard model ``t (f_i^dagger f_j + h.c.) + U n_i n_j`` on each lattice edge.

    Parameters
    ----------
    D : int
        Lattice dimension.
    L : int
        Linear size; the lattice has ``L**D`` sites of one mode.
    t, U : float
        Hopping amplitude and nearest-neighbour interaction.
    periodic : bool
        Periodic boundary conditions. The default is ``False``.

    Returns
    -------
    TwoLocalHamiltonian

    """
    D, L, t, U = _check_lattice(D, L, t, U)
    graph = lattice_graph(D, L, periodic=periodic)
    pair_shape = SystemShape(2, 1)
    term = _hopping(pair_shape, 0, 0, 1, 0, t) + _density_density(pair_shape, 0, 0, 1, 0, U)
    edge_terms = {edge: term for edge in graph.edges}
    return TwoLocalHamiltonian(
        graph,
        1,
        edge_terms,
        family="hubbard_spinless",
        params={"D": D, "L": L, "t": t, "U": U, "periodic": periodic},
    )


def build_hubbard_spinful(D, L, t, U, periodic=False):
    """Spinful Fermi-Hubbard model with two modes (spin up, down) per site.

    Edges carry ``t sum_s (f_{i,s}^dagger f_{j,s} + h.c.)``; the on-site ``U n_{i,0} n_{i,1}`` is
    split over the incident edges. The report flags that the normalization by ``|E|`` makes the
    approximation bound trivial for this model.
    """
    D, L, t, U = _check_lattice(D, L, t, U)
    graph = lattice_graph(D, L, periodic=periodic)
    pair_shape = SystemShape(2, 2)
    site_shape = SystemShape(1, 2)
    hopping = _hopping(pair_shape, 0, 0, 1, 0, t) + _hopping(pair_shape, 0, 1, 1, 1, t)
    onsite = _density_density(site_shape, 0, 0, 0, 1, U)
    return TwoLocalHamiltonian(
        graph,
        2,
        {edge: hopping for edge in graph.edges},
        onsite_terms={site: onsite for site in range(graph.num_vertices)},
        family="hubbard_spinful",
        params={"D": D, "L": L, "t": t, "U": U, "periodic": periodic},
        flags=["spinful_normalization_caveat"],
    )


def _as_coupling_tensor(array, name):
    array = np.asarray(array)
    if array.ndim == 2:
        array = array.reshape(array.shape[0], 1, array.shape[1], 1)
    if array.ndim != 4 or array.shape[:2] != array.shape[2:]:
        raise ValueError(f"'{name}' must have shape (N, p, N, p) or (N, N). Got {array.shape}.")
    return array


def build_qc_hamiltonian(t, v):
    """Quantum-chemistry Hamiltonian ``sum t_{ia,jb} f_{ia}^dagger f_{jb} + v_{ia,jb} n_{ia} n_{jb}``.

    Parameters
    ----------
    t : array_like
        Hermitian one-body tensor of shape ``(N, p, N, p)`` (or ``(N, N)`` for ``p = 1``).
    v : array_like
        Real symmetric two-body tensor of the same shape.

    Returns
    -------
    TwoLocalHamiltonian
        Edges are the site pairs with a nonzero coupling; same-site contributions are on-site terms.

    """
    t = _as_coupling_tensor(np.asarray(t, dtype=complex), "t")
    v = _as_coupling_tensor(v, "v")
    if t.shape != v.shape:
        raise ValueError(f"'t' and 'v' must have the same shape. Got {t.shape} and {v.shape}.")
    if np.iscomplexobj(v):
        if np.max(np.abs(v.imag)) > HERMITIAN_TOL:
            raise ValueError("'v' must be real.")
        v = v.real
    v = v.astype(float)
    N, p = t.shape[:2]
    t_matrix = t.reshape(N * p, N * p)
    v_matrix = v.reshape(N * p, N * p)
    if np.max(np.abs(t_matrix - t_matrix.conj().T)) > HERMITIAN_TOL:
        raise ValueError("'t' must be Hermitian.")
    if np.max(np.abs(v_matrix - v_matrix.T)) > HERMITIAN_TOL:
        raise ValueError("'v' must be symmetric.")
    pair_shape = SystemShape(2, p)
    site_shape = SystemShape(1, p)

    edge_terms = {}
    for i in range(N):
        for j in range(i + 1, N):
            if np.all(np.abs(t[i, :, j, :]) <= COEFF_TOL) and np.all(np.abs(v[i, :, j, :]) <= COEFF_TOL):
                continue
            term = FockOperator.zeros(pair_shape)
            for a in range(p):
                for b in range(p):
                    term = term + _hopping(pair_shape, 0, a, 1, b, t[i, a, j, b])
                    term = term + _density_density(pair_shape, 0, a, 1, b, v[i, a, j, b] + v[j, b, i, a])
            edge_terms[(i, j)] = term
    onsite_terms = {}
    for i in range(N):
        term = FockOperator.zeros(site_shape)
        for a in range(p):
            for b in range(p):
                hopping = t[i, a, i, b] * (
                    fermion_annihilation(site_shape, 0, a).dagger() @ fermion_annihilation(site_shape, 0, b)
                )
                term = term + hopping + _density_density(site_shape, 0, a, 0, b, v[i, a, i, b])
        if term.norm() > COEFF_TOL:
            onsite_terms[i] = FockOperator(site_shape, (term.matrix + term.matrix.conj().T) / 2)
    graph = from_edge_list(N, edge_terms.keys())
    logger.debug("QC Hamiltonian: %d sites, %d edges, %d on-site terms.", N, graph.num_edges, len(onsite_terms))
    return TwoLocalHamiltonian(graph, p, edge_terms, onsite_terms=onsite_terms, family="qc", params={"N": N, "p": p})


def build_explicit_hamiltonian(num_sites, modes_per_site, terms):
    """Hamiltonian from Majorana monomials ``(coefficient, [(site, alpha), ...])``.

    Each monomial may act on one or two sites. Monomials are grouped by the sites they touch;
    every group must be Hermitian.
    """
    num_sites = check_integer(num_sites, "num_sites", minimum=1)
    modes_per_site = check_integer(modes_per_site, "modes_per_site", minimum=1)
    grouped = {}
    for coefficient, index_set in terms:
        sites = tuple(sorted({site for site, _ in index_set}))
        if len(sites) == 0:
            raise ValueError("Constant terms are not supported.")
        if len(sites) > 2:
            raise ValueError(f"The term on sites {sites} is not two-local.")
        if any(not 0 <= site < num_sites for site in sites):
            raise ValueError(f"The term on sites {sites} is out of range.")
        relabel = {site: position for position, site in enumerate(sites)}
        grouped.setdefault(sites, []).append((coefficient, [(relabel[site], alpha) for site, alpha in index_set]))
    edge_terms = {}
    onsite_terms = {}
    for sites, local_terms in grouped.items():
        operator = majorana_sum(SystemShape(len(sites), modes_per_site), local_terms)
        if len(sites) == 2:
            edge_terms[sites] = operator
        else:
            onsite_terms[sites[0]] = operator
    graph = from_edge_list(num_sites, edge_terms.keys())
    return TwoLocalHamiltonian(
        graph,
        modes_per_site,
        edge_terms,
        onsite_terms=onsite_terms,
        family="explicit",
        params={"N": num_sites, "p": modes_per_site},
    )
