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
"""This module builds separable approximations of distinguishable-particle states.

Every site is measured with an informationally complete POVM, the classical outcome
distribution is searched for a decoupling conditioning set ``C``, and the state is replaced
by the mixture over outcomes on ``C`` of products of the conditional single-site marginals.
"""
import functools
import itertools
import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from fermibound.bounds import bipartite_bound, thm8_bound, thm10_bounds
from fermibound.checks import (
    BoundViolationError,
    DimensionCapError,
    check_distinct_indices,
    check_integer,
    check_square_matrix,
)
from fermibound.configs import CONDITIONING_TOL, HERMITIAN_TOL, MAX_CONDITIONING_OUTCOMES, PASS_TOL, PSD_TOL, TRACE_TOL
from fermibound.graphs import WeightMatrix, bipartition, detect_family, star_graph, uniform_weight_matrix
from fermibound.information import JointDistribution, Pmf, decoupling_select
from fermibound.reports import BoundRecord, BoundReport
from fermibound.utils.linalg import kron_all, max_hermitian_deviation, partial_trace, random_density_matrix, trace_norm
from fermibound.utils.timing import log_elapsed_time

logger = logging.getLogger(__name__)

SPIN_MAX_BITS = 12
SUPPORTED_POVM_DIMS = (2, 3, 4)
MAX_DISTORTION_SUBSETS = 200_000
SEPARABLE_FAMILIES = ("general", "c_regular", "star", "bipartite")
NON_VACUOUS_DISTANCE = 2.0


####--------------------------------------------------------------------------.
#### Spin states


class SpinState:
    """Density matrix of ``num_sites`` distinguishable sites of dimension ``local_dim``.

    Site 0 is the most significant tensor factor.
    """

    def __init__(self, matrix, num_sites, local_dim):
        num_sites = check_integer(num_sites, "num_sites", minimum=1)
        local_dim = check_integer(local_dim, "local_dim", minimum=2)
        if num_sites * math.log2(local_dim) > SPIN_MAX_BITS:
            raise DimensionCapError(
                f"{num_sites} sites of dimension {local_dim} exceed the {SPIN_MAX_BITS}-qubit cap of spin states.",
            )
        matrix = np.array(check_square_matrix(matrix, "matrix", dim=local_dim**num_sites), dtype=complex)
        deviation = max_hermitian_deviation(matrix)
        if deviation > HERMITIAN_TOL:
            raise ValueError(f"A spin state must be Hermitian (max deviation {deviation:.3e}).")
        if abs(np.trace(matrix).real - 1) > TRACE_TOL:
            raise ValueError(f"A spin state must have unit trace. Got {np.trace(matrix).real}.")
        if scipy.linalg.eigvalsh(matrix)[0] < -PSD_TOL:
            raise ValueError("A spin state must be positive semidefinite.")
        matrix.flags.writeable = False
        self.matrix = matrix
        self.num_sites = num_sites
        self.local_dim = local_dim

    @classmethod
    def product(cls, local_states):
        local_states = [np.asarray(state) for state in local_states]
        return cls(kron_all(local_states), len(local_states), local_states[0].shape[0])

    @classmethod
    def random(cls, num_sites, local_dim, rng):
        """Draw a Hilbert-Schmidt random state."""
        return cls(random_density_matrix(local_dim**num_sites, rng), num_sites, local_dim)

    @property
    def dims(self):
        return [self.local_dim] * self.num_sites

    def marginal(self, sites):
        """Reduced state on ``sites``, returned in increasing site order."""
        sites = check_distinct_indices(sites, self.num_sites, "sites")
        return partial_trace(self.matrix, self.dims, sites)


####--------------------------------------------------------------------------.
#### Informationally complete POVMs


def _gell_mann_basis(d):
    """Hermitian traceless operator basis of dimension ``d``."""
    basis = []
    for j in range(d):
        for k in range(j + 1, d):
            symmetric = np.zeros((d, d), dtype=complex)
            symmetric[j, k] = symmetric[k, j] = 1
            antisymmetric = np.zeros((d, d), dtype=complex)
            antisymmetric[j, k] = -1j
            antisymmetric[k, j] = 1j
            basis.extend([symmetric, antisymmetric])
    for level in range(1, d):
        diagonal = np.zeros(d)
        diagonal[:level] = 1
        diagonal[level] = -level
        basis.append(np.diag(diagonal).astype(complex))
    return basis


def measure_distortion(effects, chunk_size=4096):
    """Return ``kappa = max ||xi||_1 / ||Lambda(xi)||_1`` over Hermitian traceless ``xi``.

    The ratio is scale invariant and ``||xi||_1`` is convex, so the maximum is attained at a
    vertex of the polytope ``{xi : ||Lambda(xi)||_1 <= 1}``. In the coordinates of the Gell-Mann
    basis, with ``r = d^2 - 1``, every vertex lies on a line where ``r - 1`` linearly independent
    outcome probabilities vanish. All such lines are enumerated, so the result is exact.

    Parameters
    ----------
    effects : numpy.ndarray
        POVM effects of shape ``(M, d, d)``.
    chunk_size : int
        Number of candidate lines evaluated per batch.

    Returns
    -------
    float

    """
    effects = np.asarray(effects)
    num_outcomes, d = effects.shape[:2]
    basis = np.array(_gell_mann_basis(d))
    r = basis.shape[0]
    response = np.einsum("mab,iba->mi", effects, basis).real
    if np.linalg.matrix_rank(response, tol=1e-10) < r:
        raise ValueError("The measurement is not informationally complete.")
    num_subsets = math.comb(num_outcomes, r - 1)
    if num_subsets > MAX_DISTORTION_SUBSETS:
        raise DimensionCapError(
            f"Computing the distortion of {num_outcomes} outcomes needs {num_subsets} candidate lines "
            f"(cap {MAX_DISTORTION_SUBSETS}). Pass 'kappa' explicitly.",
        )
    subsets = np.array(list(itertools.combinations(range(num_outcomes), r - 1)))
    kappa = 0.0
    for start in range(0, len(subsets), chunk_size):
        rows = response[subsets[start : start + chunk_size]]
        _, singular, vh = np.linalg.svd(rows)
        independent = singular[:, -1] > 1e-9 * singular[:, 0]
        directions = vh[independent, -1, :]
        if directions.size == 0:
            continue
        operators = np.einsum("ki,iab->kab", directions, basis)
        numerators = np.abs(np.linalg.eigvalsh(operators)).sum(axis=1)
        denominators = np.abs(directions @ response.T).sum(axis=1)
        kappa = max(kappa, float(np.max(numerators / denominators)))
    return kappa


class ICPOVM:
    """Informationally complete POVM on a single ``d``-dimensional site.

    ``effects`` has shape ``(M, d, d)``. ``kappa`` is the distortion constant, the smallest with
    ``||xi||_1 <= kappa ||Lambda(xi)||_1`` for Hermitian traceless ``xi``.
    """

    def __init__(self, effects, kappa=None):
        effects = np.array(effects, dtype=complex)
        if effects.ndim != 3 or effects.shape[1] != effects.shape[2]:
            raise ValueError(f"'effects' must have shape (M, d, d). Got {effects.shape}.")
        num_outcomes, d = effects.shape[:2]
        if num_outcomes > d**8:
            raise ValueError(f"A POVM on dimension {d} may have at most d^8 outcomes. Got {num_outcomes}.")
        for effect in effects:
            if max_hermitian_deviation(effect) > HERMITIAN_TOL or scipy.linalg.eigvalsh(effect)[0] < -PSD_TOL:
                raise ValueError("POVM effects must be positive semidefinite.")
        if np.max(np.abs(effects.sum(axis=0) - np.eye(d))) > 1e-12:
            raise ValueError("POVM effects must sum to the identity.")
        effects.flags.writeable = False
        self.effects = effects
        self.kappa = measure_distortion(effects) if kappa is None else float(kappa)

    @property
    def num_outcomes(self):
        return self.effects.shape[0]

    @property
    def dim(self):
        return self.effects.shape[1]

    @property
    def gram_rank(self):
        """Rank of the Gram matrix ``tr(E_a E_b)``, i.e. of the span of the effects."""
        vectors = self.effects.reshape(self.num_outcomes, -1)
        return int(np.linalg.matrix_rank(vectors.conj() @ vectors.T, tol=1e-10))

    @property
    def is_informationally_complete(self):
        return self.gram_rank == self.dim**2

    def probabilities(self, xi):
        """Return ``(tr(E_m xi))_m``."""
        return np.einsum("mab,ba->m", self.effects, np.asarray(xi)).real


def _pauli_bases():
    s = 1 / np.sqrt(2)
    return [
        np.eye(2),
        np.array([[s, s], [s, -s]]),
        np.array([[s, s], [1j * s, -1j * s]]),
    ]


def _mutually_unbiased_bases(d):
    """Computational basis plus the ``d`` bases ``v[j] = omega^(a j^2 + b j) / sqrt(d)`` for odd prime ``d``."""
    omega = np.exp(2j * np.pi / d)
    j = np.arange(d)
    bases = [np.eye(d)]
    for a in range(d):
        bases.append(np.stack([omega ** ((a * j**2 + b * j) % d) for b in range(d)], axis=1) / np.sqrt(d))
    return bases


def _two_qubit_stabilizer_bases():
    """Joint eigenbases of the five maximal commuting classes of two-qubit Pauli operators."""
    pauli = {
        "I": np.eye(2),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]]),
        "Z": np.diag([1.0, -1.0]),
    }
    # Each class is generated by its first two members: {ZI, IZ, ZZ}, {XI, IX, XX}, ...
    generators = [("ZI", "IZ"), ("XI", "IX"), ("YI", "IY"), ("XZ", "ZY"), ("ZX", "YZ")]
    bases = []
    for first, second in generators:
        P, Q = (np.kron(pauli[label[0]], pauli[label[1]]) for label in (first, second))
        # Eigenvalues +-1 +-2 are nondegenerate.
        _, vectors = scipy.linalg.eigh(P + 2 * Q)
        bases.append(vectors)
    return bases


@functools.lru_cache(maxsize=None)
def build_ic_povm(d):
    """Build a uniformly weighted rank-one informationally complete POVM.

    The effects are the projectors onto a complete set of ``d + 1`` mutually unbiased bases,
    weighted by ``1 / (d + 1)``: the six Pauli eigenprojectors for ``d = 2``, the quadratic
    phase bases for ``d = 3`` and the two-qubit stabilizer bases (20 outcomes) for ``d = 4``.
    The distortion ``kappa`` is computed exactly and checked against ``18 d``.

    Parameters
    ----------
    d : int
        Local dimension, one of 2, 3 or 4.

    Returns
    -------
    ICPOVM

    """
    if d not in SUPPORTED_POVM_DIMS:
        raise ValueError(f"Unsupported local dimension {d}. Supported are {list(SUPPORTED_POVM_DIMS)}.")
    if d == 2:
        bases = _pauli_bases()
    elif d == 3:
        bases = _mutually_unbiased_bases(d)
    else:
        bases = _two_qubit_stabilizer_bases()
    effects = [np.outer(basis[:, b], basis[:, b].conj()) / len(bases) for basis in bases for b in range(d)]
    povm = ICPOVM(effects)
    if not povm.is_informationally_complete:
        raise RuntimeError(f"The POVM on dimension {d} is not informationally complete.")
    if povm.kappa > 18 * d:
        raise BoundViolationError(f"Measured distortion {povm.kappa} exceeds 18d = {18 * d}.")
    logger.debug("IC-POVM d=%d: %d outcomes, kappa=%.4f.", d, povm.num_outcomes, povm.kappa)
    return povm


####--------------------------------------------------------------------------.
#### Measurement and conditioning


def _measure_sites(matrix, num_sites, d, sites, effects):
    """Apply ``effects`` to ``sites`` and keep the unnormalized post-measurement blocks.

    Returns an array of shape ``(M^k, D, D)`` indexed by outcome tuples in ``sites`` order,
    where ``D`` is the dimension of the unmeasured sites.
    """
    num_outcomes = effects.shape[0]
    flat_effects = np.transpose(effects, (0, 2, 1)).reshape(num_outcomes, d * d)
    tensor = np.asarray(matrix).reshape((d,) * (2 * num_sites))
    remaining = list(range(num_sites))
    for count, site in enumerate(sites):
        position = remaining.index(site)
        m = len(remaining)
        tensor = np.moveaxis(tensor, [count + position, count + m + position], [-2, -1])
        tensor = tensor.reshape(*tensor.shape[:-2], d * d) @ flat_effects.T
        tensor = np.moveaxis(tensor, -1, count)
        remaining.pop(position)
    rest_dim = d ** len(remaining)
    return tensor.reshape(num_outcomes ** len(sites), rest_dim, rest_dim), remaining


def _check_outcome_count(num_outcomes, k):
    if num_outcomes**k > MAX_CONDITIONING_OUTCOMES:
        raise DimensionCapError(
            f"Conditioning on {k} sites gives {num_outcomes**k} outcome tuples (cap {MAX_CONDITIONING_OUTCOMES}).",
        )


def _embed_maximally_mixed(rest_matrix, rest_sites, measured_sites, num_sites, d):
    order = list(rest_sites) + list(measured_sites)
    k = len(measured_sites)
    full = np.kron(rest_matrix, np.eye(d**k) / d**k).reshape((d,) * (2 * num_sites))
    perm = [order.index(site) for site in range(num_sites)]
    return full.transpose(perm + [num_sites + axis for axis in perm]).reshape(d**num_sites, d**num_sites)


def measure_and_condition(rho, C, povm):
    """Measure the sites ``C`` and return the conditional ensemble.

    Each conditional state keeps the unmeasured sites and replaces the measured ones by the
    maximally mixed state. Outcomes with probability below 1e-14 are dropped and the remaining
    probabilities renormalized.

    Parameters
    ----------
    rho : SpinState
        State of ``n`` sites.
    C : sequence of int
        Distinct sites to measure.
    povm : ICPOVM
        Single-site measurement.

    Returns
    -------
    list of tuple
        ``(probability, matrix)`` pairs, in lexicographic order of the outcome tuples.

    """
    C = check_distinct_indices(C, rho.num_sites, "C")
    if len(C) == 0:
        return [(1.0, np.array(rho.matrix))]
    _check_outcome_count(povm.num_outcomes, len(C))
    blocks, rest_sites = _measure_sites(rho.matrix, rho.num_sites, rho.local_dim, C, povm.effects)
    probabilities = np.trace(blocks, axis1=1, axis2=2).real
    kept = np.flatnonzero(probabilities >= CONDITIONING_TOL)
    total = probabilities[kept].sum()
    ensemble = []
    for index in kept:
        conditional = blocks[index] / probabilities[index]
        full = _embed_maximally_mixed(conditional, rest_sites, C, rho.num_sites, rho.local_dim)
        ensemble.append((float(probabilities[index] / total), full))
    return ensemble


def outcome_distribution(rho, povm):
    """Return the joint distribution of measuring every site of ``rho`` with ``povm``."""
    blocks, _ = _measure_sites(rho.matrix, rho.num_sites, rho.local_dim, range(rho.num_sites), povm.effects)
    table = blocks.reshape((povm.num_outcomes,) * rho.num_sites).real
    return JointDistribution(np.clip(table, 0, None) / np.clip(table, 0, None).sum())


def _site_marginals(blocks, num_sites, d):
    """Single-site marginals of a stack of ``num_sites``-site matrices, shape ``(K, n, d, d)``."""
    K = blocks.shape[0]
    tensor = blocks.reshape((K,) + (d,) * (2 * num_sites))
    marginals = np.empty((K, num_sites, d, d), dtype=complex)
    for site in range(num_sites):
        reduced = tensor
        current = num_sites
        for other in reversed(range(num_sites)):
            if other == site:
                continue
            reduced = np.trace(reduced, axis1=1 + other, axis2=1 + other + current)
            current -= 1
        marginals[:, site] = reduced
    return marginals


def _conditional_products(rho, C, povm):
    """Return outcome probabilities and the single-site factors of ``sigma_{C,x}``, shape ``(K, n, d, d)``."""
    n, d = rho.num_sites, rho.local_dim
    if len(C) == 0:
        blocks, rest_sites = rho.matrix[None], list(range(n))
    else:
        _check_outcome_count(povm.num_outcomes, len(C))
        blocks, rest_sites = _measure_sites(rho.matrix, n, d, C, povm.effects)
    probabilities = np.trace(blocks, axis1=1, axis2=2).real
    kept = np.flatnonzero(probabilities >= CONDITIONING_TOL)
    conditionals = blocks[kept] / probabilities[kept, None, None]
    factors = np.empty((kept.size, n, d, d), dtype=complex)
    factors[:, list(C)] = np.eye(d) / d
    if rest_sites:
        factors[:, rest_sites] = _site_marginals(conditionals, len(rest_sites), d)
    factors = (factors + np.conj(np.swapaxes(factors, -1, -2))) / 2
    return probabilities[kept] / probabilities[kept].sum(), factors


####--------------------------------------------------------------------------.
#### Separable approximation


@dataclass
class SeparableApproximation:
    """Separable mixture ``sigma_C = E_x sigma_{C,x}`` and its distance to the input state."""

    family: str
    k: int
    probabilities: np.ndarray
    factors: np.ndarray
    measured: float
    bound: BoundRecord
    decoupling: object
    kappa_measured: float
    notes: list = field(default_factory=list)

    @property
    def ensemble(self):
        """List of ``(probability, [single-site states])``."""
        return [(float(prob), list(local)) for prob, local in zip(self.probabilities, self.factors, strict=True)]

    @property
    def k_prime(self):
        return self.decoupling.k_prime

    @property
    def conditioning(self):
        return self.decoupling.conditioning

    @property
    def non_vacuous(self):
        return self.measured <= NON_VACUOUS_DISTANCE

    def to_matrix(self):
        """Assemble ``sigma_C`` as a dense matrix."""
        return sum(prob * kron_all(local) for prob, local in zip(self.probabilities, self.factors, strict=True))

    def to_dict(self):
        d = self.factors.shape[-1]
        return {
            "family": self.family,
            "k": self.k,
            "bound": self.bound.value,
            "bound_tag": self.bound.tag,
            "measured": self.measured,
            "k_prime": self.k_prime,
            "C": list(self.conditioning),
            "kappa_measured": self.kappa_measured,
            "kappa_bound": 18 * d,
            "num_components": int(self.probabilities.size),
            "non_vacuous": self.non_vacuous,
            "decoupling": self.decoupling.to_dict(),
        }

    def to_report(self):
        report = BoundReport(name="definetti_approx", records=[self.bound], summary=self.to_dict())
        for note in self.notes:
            report.flag(note)
        return report


def _pair_weights_from_matrix(weight):
    G = weight.G
    n = G.shape[0]
    return {(i, j): float(G[i, j]) for i in range(n) for j in range(n) if i != j and G[i, j] > 0}


def _pair_weights_from_pmfs(pi, mu):
    return {(a, b): pi[a] * mu[b] for a in pi.support for b in mu.support if a != b}


def _sampling_setup(weight, graph, num_sites, d):
    """Return ``(family, pi, mu, pair_weights, bound_record, notes)`` for the requested family."""
    if isinstance(weight, WeightMatrix):
        family, matrix = "general", weight
    elif weight in ("general", "c_regular"):
        if graph is None:
            raise ValueError(f"The '{weight}' family requires a graph.")
        family, matrix = weight, uniform_weight_matrix(graph)
    elif weight in ("star", "bipartite"):
        family, matrix = weight, None
    else:
        raise ValueError(f"Invalid weight family '{weight}'. Valid families are {list(SEPARABLE_FAMILIES)}.")

    if matrix is not None and matrix.size != num_sites:
        raise ValueError("The weight matrix and the state must have the same number of sites.")
    notes = []
    if family == "general":
        pi = mu = Pmf(matrix.pi / matrix.pi.sum())
        record = BoundRecord("thm8", thm8_bound(d, matrix), params={"d": d, **matrix.summary()})
        if matrix.has_zero_entries:
            notes.append("weight_matrix_not_strictly_positive")
        return family, pi, mu, _pair_weights_from_matrix(matrix), record, matrix, notes

    if family == "c_regular":
        detected = detect_family(graph)
        if detected["family"] != "c_regular":
            raise ValueError(f"The graph is not c-regular (detected '{detected['family']}').")
        pi = mu = Pmf(matrix.pi / matrix.pi.sum())
        c = detected["c"]
        record = BoundRecord("thm10", thm10_bounds(d, "c_regular", c), params={"d": d, "family": family, "c": c})
        return family, pi, mu, _pair_weights_from_matrix(matrix), record, matrix, notes

    if family == "star":
        graph = star_graph(num_sites) if graph is None else graph
        center = graph.max_degree_vertex()
        if graph.num_vertices != num_sites or graph.degree(center) != num_sites - 1 or graph.num_edges != num_sites - 1:
            raise ValueError("The 'star' family requires a star graph on the sites of the state.")
        leaves = [v for v in range(num_sites) if v != center]
        pi, mu = Pmf.point_mass(num_sites, center), Pmf.uniform(num_sites, support=leaves)
        value = thm10_bounds(d, "star", num_sites)
        record = BoundRecord(
            "thm10",
            value,
            params={"d": d, "family": family, "N": num_sites, "center": center},
            alternatives={"constant_18": thm10_bounds(d, "star", num_sites, constant=18), "constant_22": value},
        )
        notes.append("star_constant_18_vs_22")
        return family, pi, mu, _pair_weights_from_pmfs(pi, mu), record, None, notes

    if graph is None:
        raise ValueError("The 'bipartite' family requires a complete bipartite graph.")
    parts = bipartition(graph)
    if parts is None or graph.num_vertices != num_sites or graph.num_edges != len(parts[0]) * len(parts[1]):
        raise ValueError("The 'bipartite' family requires a complete bipartite graph on the sites of the state.")
    A, B = sorted(parts, key=len)
    pi, mu = Pmf.uniform(num_sites, support=A), Pmf.uniform(num_sites, support=B)
    record = BoundRecord("bipartite", bipartite_bound(d, len(B)), params={"d": d, "A": A, "B": B, "n": len(B)})
    return family, pi, mu, _pair_weights_from_pmfs(pi, mu), record, None, notes


def _conditioning_penalty(C, pair_weights):
    """Weight ``2 sum_{i in C, j != i} w_ij + 2 sum_{j in C, i != j} w_ij`` of pairs touching ``C``."""
    C = set(C)
    return 2 * sum(w for (i, _), w in pair_weights.items() if i in C) + 2 * sum(
        w for (_, j), w in pair_weights.items() if j in C
    )


def _make_objective(family, pair_weights, matrix, d):
    if family in ("general", "c_regular"):
        trace_A2 = matrix.trace_A2

        def objective(C, value):
            return _conditioning_penalty(C, pair_weights) + 18 * d * (32 * max(value, 0) * trace_A2) ** (1 / 4)

    else:

        def objective(C, value):
            return _conditioning_penalty(C, pair_weights) + 18 * d * math.sqrt(2 * max(value, 0))

    return objective


def average_pair_distance(rho, probabilities, factors, pair_weights):
    """Return ``sum_{(i,j)} w_ij ||rho^{i,j} - sigma^{i,j}||_1`` for the product mixture."""
    d = rho.local_dim
    distances = {}
    total = 0.0
    for (i, j), w in pair_weights.items():
        key = (min(i, j), max(i, j))
        if key not in distances:
            a, b = key
            sigma = np.einsum("x,xab,xcd->acbd", probabilities, factors[:, a], factors[:, b]).reshape(d * d, d * d)
            distances[key] = trace_norm(rho.marginal(key) - sigma, hermitian=True)
        total += w * distances[key]
    return float(total)


@log_elapsed_time(level=logging.DEBUG)
def build_separable_approx(
    rho,
    weight,
    k,
    graph=None,
    povm=None,
    method="auto",
    num_samples=2000,
    seed=0,
    threads=1,
):
    """Construct a separable approximation and check its pair distance against the bound.

    Parameters
    ----------
    rho : SpinState
        State of ``n`` distinguishable sites.
    weight : WeightMatrix or str
        Pair weights ``G`` (general bound), or one of ``"general"`` and ``"c_regular"`` (uniform
        edge weights of ``graph``), ``"star"`` (center to leaves) or ``"bipartite"``
        (smaller part to larger part of a complete bipartite ``graph``).
    k : int
        Averaging range of the conditioning-set search.
    graph : InteractionGraph, optional
        Interaction graph. Defaults to the star on ``n`` sites for the ``"star"`` family.
    povm : ICPOVM, optional
        Single-site measurement. Defaults to :py:func:`build_ic_povm`.
    method, num_samples, seed, threads
        Passed to :py:func:`fermibound.information.decoupling_select`.

    Returns
    -------
    SeparableApproximation

    """
    if not isinstance(rho, SpinState):
        raise TypeError("'rho' must be a SpinState.")
    d = rho.local_dim
    povm = build_ic_povm(d) if povm is None else povm
    if povm.dim != d:
        raise ValueError(f"The POVM acts on dimension {povm.dim} but the sites have dimension {d}.")
    family, pi, mu, pair_weights, record, matrix, notes = _sampling_setup(weight, graph, rho.num_sites, d)

    p = outcome_distribution(rho, povm)
    decoupling = decoupling_select(
        p,
        pi,
        mu,
        k,
        method=method,
        num_samples=num_samples,
        seed=seed,
        threads=threads,
        objective=_make_objective(family, pair_weights, matrix, d),
    )
    probabilities, factors = _conditional_products(rho, decoupling.conditioning, povm)
    measured = average_pair_distance(rho, probabilities, factors, pair_weights)
    record.measured = measured
    record.params.update({"k": k, "k_prime": decoupling.k_prime, "C": list(decoupling.conditioning)})
    if measured > record.value + PASS_TOL:
        raise BoundViolationError(f"Separable approximation distance {measured} exceeds the bound {record.value}.")
    logger.info(
        "Separable approximation (%s, k=%d): C=%s measured=%.4g bound=%.4g.",
        family,
        k,
        decoupling.conditioning,
        measured,
        record.value,
    )
    return SeparableApproximation(
        family=family,
        k=k,
        probabilities=probabilities,
        factors=factors,
        measured=measured,
        bound=record,
        decoupling=decoupling,
        kappa_measured=povm.kappa,
        notes=notes,
    )
