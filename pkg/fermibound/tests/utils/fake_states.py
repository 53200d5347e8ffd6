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
"""This module provides random and structured states and distributions for the tests."""
import numpy as np

from fermibound.fock import FockOperator, SystemShape, majorana_sum
from fermibound.information import JointDistribution
from fermibound.states import product_state, random_density_state, random_even_local_state


def get_rng(seed=0):
    return np.random.default_rng(seed=seed)


def get_random_state(num_sites, modes_per_site=1, seed=0):
    """Hilbert-Schmidt random state on ``num_sites`` sites."""
    return random_density_state(SystemShape(num_sites, modes_per_site), get_rng(seed))


def get_even_product_state(num_sites, modes_per_site=1, seed=0):
    """Product of random single-site states commuting with the local parity."""
    rng = get_rng(seed)
    local_states = [random_even_local_state(modes_per_site, rng) for _ in range(num_sites)]
    return product_state(SystemShape(num_sites, modes_per_site), local_states)


def get_random_hermitian(shape, seed=0):
    rng = get_rng(seed)
    matrix = rng.normal(size=(shape.dim, shape.dim)) + 1j * rng.normal(size=(shape.dim, shape.dim))
    return FockOperator(shape, (matrix + matrix.conj().T) / 2, hermitian=True)


def get_random_totally_even(shape, seed=0, num_terms=6):
    """Random Hermitian combination of totally even monomials (pairs of Majoranas on one site)."""
    rng = get_rng(seed)
    p = shape.modes_per_site
    terms = [(rng.normal(), [])]
    for _ in range(num_terms):
        site = int(rng.integers(shape.num_sites))
        alpha, beta = sorted(rng.choice(2 * p, size=2, replace=False))
        terms.append((1j * rng.normal(), [(site, int(alpha)), (site, int(beta))]))
    return majorana_sum(shape, terms)


def get_markov_chain_distribution(flip=0.1):
    """Bits ``(a, b, c)`` with ``a -> c -> b`` a binary symmetric Markov chain.

    ``a`` and ``b`` are conditionally independent given ``c``.
    """
    channel = np.array([[1 - flip, flip], [flip, 1 - flip]])
    table = np.einsum("a,ac,cb->abc", np.array([0.5, 0.5]), channel, channel)
    return JointDistribution(table)


def get_copies_distribution(num_variables, d=2):
    """All variables equal to a single uniformly distributed value."""
    table = np.zeros((d,) * num_variables)
    for value in range(d):
        table[(value,) * num_variables] = 1 / d
    return JointDistribution(table)


def get_classical_spin_matrix(num_sites):
    """``(|0...0><0...0| + |1...1><1...1|) / 2`` on qubits."""
    dim = 2**num_sites
    matrix = np.zeros((dim, dim), dtype=complex)
    matrix[0, 0] = matrix[-1, -1] = 0.5
    return matrix
