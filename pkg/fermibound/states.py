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
"""This module implements fermionic density states, two-site reductions and correlation measures."""
import functools
import logging

import numpy as np
import scipy.linalg

from fermibound.bounds import thm1_bound, thm6_bound
from fermibound.checks import BoundViolationError, check_distinct_indices, check_index, check_integer
from fermibound.configs import HERMITIAN_TOL, PSD_TOL, TRACE_TOL
from fermibound.fock import (
    FockOperator,
    SystemShape,
    coefficients_matrix,
    local_coefficients,
    majorana_sum,
    xi_total,
)
from fermibound.reports import BoundRecord, BoundReport
from fermibound.utils.linalg import kron_all, max_hermitian_deviation, random_density_matrix
from fermibound.utils.linalg import trace_norm as _matrix_trace_norm

logger = logging.getLogger(__name__)


class DensityState(FockOperator):
    """Positive semidefinite, unit-trace operator on a Fock space.

    The totally even part ``sigma_rho = Xi(rho)`` is computed on first access and cached.
    """

    def __init__(self, shape, matrix):
        super().__init__(shape, matrix, hermitian=False)
        deviation = max_hermitian_deviation(self.matrix)
        if deviation > HERMITIAN_TOL:
            raise ValueError(f"A density state must be Hermitian (max deviation {deviation:.3e}).")
        trace = np.trace(self.matrix).real
        if abs(trace - 1) > TRACE_TOL:
            raise ValueError(f"A density state must have unit trace. Got {trace}.")
        min_eigenvalue = float(scipy.linalg.eigvalsh(self.matrix)[0])
        if min_eigenvalue < -PSD_TOL:
            raise ValueError(f"A density state must be positive semidefinite. Min eigenvalue {min_eigenvalue:.3e}.")
        self.hermitian = True

    @functools.cached_property
    def even_part(self):
        """Totally even part ``Xi(rho)`` as a DensityState."""
        return DensityState(self.shape, xi_total(self).matrix)


class ReducedState(DensityState):
    """Density state of a subset of sites, recording the sorted parent site indices."""

    def __init__(self, shape, matrix, sites):
        super().__init__(shape, matrix)
        self.sites = tuple(sites)


def as_density_state(X):
    """Validate a FockOperator as a DensityState."""
    if isinstance(X, DensityState):
        return X
    return DensityState(X.shape, X.matrix)


def reduce(rho, sites):
    """Reduce a fermionic state to a set of sites by matching Majorana expectations.

    The result ``omega`` is the unique state on the sorted ``sites`` (relabeled ``0, 1, ...``)
    with ``tr(m_I omega) = tr(m~_I rho)`` for every monomial ``m_I`` supported on those sites.

    Parameters
    ----------
    rho : DensityState
        Global state.
    sites : sequence of int
        Distinct sites, typically an ordered pair ``(i, j)``.

    Returns
    -------
    ReducedState

    """
    sites = check_distinct_indices(sites, rho.shape.num_sites, "sites")
    if len(sites) == 0:
        raise ValueError("'sites' must contain at least one site.")
    local_shape, pairs = local_coefficients(rho, sites)
    matrix = coefficients_matrix(local_shape, pairs, scale=1 / local_shape.dim)
    matrix = (matrix + matrix.conj().T) / 2
    return ReducedState(local_shape, matrix, sites=sorted(sites))


def trace_norm(X):
    """Return the trace norm (sum of singular values) of an operator or matrix."""
    matrix = X.matrix if isinstance(X, FockOperator) else X
    return _matrix_trace_norm(matrix)


def pair_distance(rho, i, j):
    """Return ``||rho^{i,j} - sigma_rho^{i,j}||_1``."""
    rho = as_density_state(rho)
    return trace_norm(reduce(rho, (i, j)).matrix - reduce(rho.even_part, (i, j)).matrix)


def gamma_site(rho, graph, i):
    """Return ``Gamma_i``, the summed pair distances between ``rho`` and its even part over ``E_i``.

    Isolated vertices have ``Gamma_i = 0``.
    """
    rho = as_density_state(rho)
    i = check_index(i, graph.num_vertices, "i")
    return float(sum(pair_distance(rho, i, j) for j in graph.neighbors(i)))


def monogamy_check(rho, graph):
    """Compare the mean pair distance around each site with the monogamy bound.

    Parameters
    ----------
    rho : DensityState
        Global state.
    graph : InteractionGraph
        Interaction graph on the sites of ``rho``.

    Returns
    -------
    BoundReport
        One ``thm1`` record per non-isolated site.

    """
    rho = as_density_state(rho)
    if graph.num_vertices != rho.shape.num_sites:
        raise ValueError("The graph and the state must have the same number of sites.")
    p = rho.shape.modes_per_site
    report = BoundReport(name="monogamy")
    for i in range(graph.num_vertices):
        degree = graph.degree(i)
        if degree == 0:
            continue
        measured = gamma_site(rho, graph, i) / degree
        report.add(
            BoundRecord(
                tag="thm1",
                value=thm1_bound(p, degree),
                params={"p": p, "site": i, "degree": degree},
                measured=measured,
            ),
        )
    report.summary = {"num_sites": graph.num_vertices, "violations": report.num_violations, "max_ratio": report.max_ratio}
    report.flag("thm1_vs_thm11_factor_4")
    return report


####--------------------------------------------------------------------------.
#### State constructors


def random_density_state(shape, rng):
    """Draw a Hilbert-Schmidt random state on the Fock space of ``shape``."""
    return DensityState(shape, random_density_matrix(shape.dim, rng))


def random_even_local_state(modes_per_site, rng):
    """Draw a random single-site state commuting with the local parity."""
    dim = 2**modes_per_site
    matrix = random_density_matrix(dim, rng)
    parity = np.array([(-1) ** bin(b).count("1") for b in range(dim)])
    return np.where(parity[:, None] == parity[None, :], matrix, 0)


def product_state(shape, local_states):
    """Return the product of single-site states in the site-major Kronecker order.

    For local states commuting with the local parity this is the fermionic product state.
    """
    if len(local_states) != shape.num_sites:
        raise ValueError("One local state per site is required.")
    return DensityState(shape, kron_all([np.asarray(state) for state in local_states]))


def build_witness(shape, V1, V2):
    """Build the state saturating the system-size scaling of the monogamy bounds.

    ``rho = (1 + sum_{j in V1, k in V2} i m_j^0 m_k^1 / sqrt(|V1||V2|)) / 2^N``.

    Parameters
    ----------
    shape : SystemShape
        System shape with one mode per site.
    V1, V2 : sequence of int
        Disjoint vertex sets whose union is every site.

    Returns
    -------
    DensityState

    """
    if shape.modes_per_site != 1:
        raise ValueError("The witness state requires one mode per site (p = 1).")
    V1 = check_distinct_indices(V1, shape.num_sites, "V1")
    V2 = check_distinct_indices(V2, shape.num_sites, "V2")
    if set(V1) & set(V2) or len(V1) + len(V2) != shape.num_sites or not V1 or not V2:
        raise ValueError("'V1' and 'V2' must be a partition of the sites into two non-empty sets.")
    scale = 1 / np.sqrt(len(V1) * len(V2))
    terms = [(1j * scale, [(j, 0), (k, 1)]) for j in V1 for k in V2]
    correlation = majorana_sum(shape, terms)
    matrix = (np.eye(shape.dim) + correlation.matrix) / shape.dim
    return DensityState(shape, matrix)


def extendibility_witness_check(n, k, p=1):
    """Check the witness state on a complete bipartite ``n x k`` layout against the extendibility bound.

    Every pair ``(i, j)`` across the partition must have distance ``1 / sqrt(n k)``.
    """
    n = check_integer(n, "n", minimum=1)
    k = check_integer(k, "k", minimum=1)
    p = check_integer(p, "p", minimum=1)
    shape = SystemShape(n + k, p)
    rho = build_witness(shape, range(n), range(n, n + k))
    expected = 1 / np.sqrt(n * k)
    report = BoundReport(name="extendibility_witness")
    for i in range(n):
        for j in range(n, n + k):
            measured = pair_distance(rho, i, j)
            if abs(measured - expected) > 1e-9:
                raise BoundViolationError(f"Witness distance {measured} differs from 1/sqrt(nk) = {expected}.")
            report.add(
                BoundRecord(
                    tag="thm6",
                    value=thm6_bound(p, n, k),
                    params={"p": p, "n": n, "k": k, "pair": [i, j]},
                    measured=measured,
                ),
            )
    report.summary = {"n": n, "k": k, "expected": expected, "violations": report.num_violations}
    return report
