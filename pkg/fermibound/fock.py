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
"""This module implements the fermionic operator algebra on dense Fock-space matrices.

Operators act on the ``2**(p*N)``-dimensional Fock space of ``N`` sites carrying ``p`` modes each.
Majorana operators are represented with the Jordan-Wigner transformation:
global mode ``q = site * p + alpha // 2`` is bit ``M - 1 - q`` of the basis index (mode 0 most
significant), even ``alpha`` gives the X-type Majorana ``f + f^dagger`` and odd ``alpha`` the
Y-type Majorana ``i (f^dagger - f)``. Strings run over all lower-index global modes.

Internally a Majorana monomial is kept as an *action* ``(flip, phase)``: the monomial maps the
basis state ``|b>`` to ``phase[b] |b XOR flip>``. Products, traces and matrix assembly of
monomials then cost ``O(dim)`` instead of ``O(dim**2)``.
"""
import functools
import logging
from dataclasses import dataclass

import numpy as np

from fermibound.checks import (
    check_distinct_indices,
    check_index,
    check_integer,
    check_num_modes,
    check_square_matrix,
)
from fermibound.configs import COEFF_TOL, HERMITIAN_TOL
from fermibound.utils.linalg import max_hermitian_deviation, operator_norm

logger = logging.getLogger(__name__)

TOTALLY_EVEN = "totally_even"
TOTALLY_ODD = "totally_odd"
MIXED = "mixed"


####--------------------------------------------------------------------------.
#### Shapes and operators


@dataclass(frozen=True)
class SystemShape:
    """Number of sites and modes per site of a fermionic system."""

    num_sites: int
    modes_per_site: int

    def __post_init__(self):
        check_integer(self.num_sites, "num_sites", minimum=1)
        check_integer(self.modes_per_site, "modes_per_site", minimum=1)
        check_num_modes(self.num_sites * self.modes_per_site)

    @property
    def num_modes(self):
        """Total number of fermionic modes ``p * N``."""
        return self.num_sites * self.modes_per_site

    @property
    def num_majoranas(self):
        """Total number of Majorana operators ``2 * p * N``."""
        return 2 * self.num_modes

    @property
    def dim(self):
        """Fock space dimension ``2**(p * N)``."""
        return 2**self.num_modes

    @property
    def local_dim(self):
        """Dimension ``2**p`` of a single-site Fock space."""
        return 2**self.modes_per_site


class FockOperator:
    """Immutable dense operator on the Fock space of a :py:class:`SystemShape`.

    Parameters
    ----------
    shape : SystemShape
        System shape.
    matrix : array_like
        Dense ``dim x dim`` matrix.
    hermitian : bool
        If ``True``, Hermiticity is verified with tolerance 1e-12 (max-abs-entry deviation).

    """

    __slots__ = ("_matrix", "hermitian", "shape")
    # Defer to the reflected operators when multiplied by numpy scalars
    __array_ufunc__ = None

    def __init__(self, shape, matrix, hermitian=False):
        if not isinstance(shape, SystemShape):
            raise TypeError("'shape' must be a SystemShape.")
        matrix = np.array(check_square_matrix(matrix, "matrix", dim=shape.dim), dtype=complex)
        if hermitian:
            deviation = max_hermitian_deviation(matrix)
            if deviation > HERMITIAN_TOL:
                raise ValueError(f"The operator is not Hermitian (max deviation {deviation:.3e}).")
        matrix.flags.writeable = False
        self.shape = shape
        self._matrix = matrix
        self.hermitian = bool(hermitian)

    @property
    def matrix(self):
        """Read-only dense matrix."""
        return self._matrix

    @property
    def dim(self):
        return self.shape.dim

    @classmethod
    def identity(cls, shape):
        return cls(shape, np.eye(shape.dim, dtype=complex), hermitian=True)

    @classmethod
    def zeros(cls, shape):
        return cls(shape, np.zeros((shape.dim, shape.dim), dtype=complex), hermitian=True)

    def _check_compatible(self, other):
        if not isinstance(other, FockOperator):
            raise TypeError("Expecting a FockOperator.")
        if other.shape != self.shape:
            raise ValueError(f"Shape mismatch: {self.shape} and {other.shape}.")

    def __add__(self, other):
        self._check_compatible(other)
        return FockOperator(self.shape, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check_compatible(other)
        return FockOperator(self.shape, self.matrix - other.matrix)

    def __neg__(self):
        return FockOperator(self.shape, -self.matrix)

    def __mul__(self, scalar):
        if isinstance(scalar, FockOperator):
            raise TypeError("Use '@' for operator products.")
        return FockOperator(self.shape, scalar * self.matrix)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return FockOperator(self.shape, self.matrix / scalar)

    def __matmul__(self, other):
        self._check_compatible(other)
        return FockOperator(self.shape, self.matrix @ other.matrix)

    def __repr__(self):
        return f"{type(self).__name__}(num_sites={self.shape.num_sites}, modes_per_site={self.shape.modes_per_site})"

    def dagger(self):
        """Return the adjoint operator."""
        return FockOperator(self.shape, self.matrix.conj().T)

    def trace(self):
        return complex(np.trace(self.matrix))

    def norm(self):
        """Operator norm (largest singular value)."""
        return operator_norm(self.matrix)

    def is_hermitian(self, tol=HERMITIAN_TOL):
        return max_hermitian_deviation(self.matrix) <= tol

    def anticommutator(self, other):
        self._check_compatible(other)
        return FockOperator(self.shape, self.matrix @ other.matrix + other.matrix @ self.matrix)

    def commutator(self, other):
        self._check_compatible(other)
        return FockOperator(self.shape, self.matrix @ other.matrix - other.matrix @ self.matrix)

    def expectation(self, other):
        """Return ``tr(self @ other)``."""
        self._check_compatible(other)
        return complex(np.sum(self.matrix * other.matrix.T))

    def allclose(self, other, atol=1e-10):
        self._check_compatible(other)
        return bool(np.allclose(self.matrix, other.matrix, rtol=0, atol=atol))


@dataclass(frozen=True)
class MajoranaMonomial:
    """Coefficient times an ordered product of distinct Majorana operators.

    ``index_set`` holds strictly increasing ``(site, alpha)`` pairs.
    """

    index_set: tuple
    coefficient: complex = 1.0

    def __post_init__(self):
        index_set = tuple((int(site), int(alpha)) for site, alpha in self.index_set)
        for previous, current in zip(index_set[:-1], index_set[1:], strict=True):
            if not previous < current:
                raise ValueError(f"Majorana indices must be strictly ordered and distinct. Got {index_set}.")
        if not np.isfinite(self.coefficient):
            raise ValueError("The monomial coefficient must be finite.")
        object.__setattr__(self, "index_set", index_set)
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    @property
    def degree(self):
        return len(self.index_set)

    def site_counts(self, num_sites):
        """Return the number of Majorana indices on each site."""
        counts = np.zeros(num_sites, dtype=int)
        for site, _ in self.index_set:
            counts[site] += 1
        return counts

    def is_totally_even(self, num_sites):
        return bool(np.all(self.site_counts(num_sites) % 2 == 0))

    def is_totally_odd(self, num_sites):
        counts = self.site_counts(num_sites)
        return bool(np.all((counts % 2 == 1) | (counts == 0)))

    def to_operator(self, shape):
        """Return the monomial (coefficient included) as a FockOperator."""
        return self.coefficient * majorana_product(shape, self.index_set)


####--------------------------------------------------------------------------.
#### Monomial actions


@functools.lru_cache(maxsize=16)
def _occupation_table(shape):
    basis = np.arange(shape.dim)
    shifts = shape.num_modes - 1 - np.arange(shape.num_modes)
    table = (basis[:, None] >> shifts[None, :]) & 1
    table.flags.writeable = False
    return table


@functools.lru_cache(maxsize=16)
def _site_parity_diagonal(shape, site):
    p = shape.modes_per_site
    occupation = _occupation_table(shape)[:, site * p : (site + 1) * p]
    diagonal = 1 - 2 * (occupation.sum(axis=1) % 2)
    diagonal.flags.writeable = False
    return diagonal


@functools.lru_cache(maxsize=16)
def _site_parity_labels(shape):
    """Return an integer label per basis state encoding all local occupation parities."""
    p = shape.modes_per_site
    occupation = _occupation_table(shape).reshape(shape.dim, shape.num_sites, p)
    parities = occupation.sum(axis=2) % 2
    weights = 1 << np.arange(shape.num_sites)[::-1]
    labels = parities @ weights
    labels.flags.writeable = False
    return labels


def _identity_action(shape):
    return 0, np.ones(shape.dim, dtype=complex)


def _majorana_action(shape, site, alpha):
    mode = site * shape.modes_per_site + alpha // 2
    occupation = _occupation_table(shape)
    string = occupation[:, :mode].sum(axis=1) % 2
    phase = (1 - 2 * string).astype(complex)
    if alpha % 2 == 1:
        phase = phase * np.where(occupation[:, mode] == 0, 1j, -1j)
    flip = 1 << (shape.num_modes - 1 - mode)
    return flip, phase


def _compose(left, right):
    """Return the action of the product ``left @ right``."""
    left_flip, left_phase = left
    right_flip, right_phase = right
    basis = np.arange(right_phase.size)
    return left_flip ^ right_flip, right_phase * left_phase[basis ^ right_flip]


def _action_matrix(action, dim):
    flip, phase = action
    basis = np.arange(dim)
    matrix = np.zeros((dim, dim), dtype=complex)
    matrix[basis ^ flip, basis] = phase
    return matrix


def _action_overlap(action, matrix):
    """Return ``tr(O^dagger @ matrix)`` for the monomial ``O`` of ``action``."""
    flip, phase = action
    basis = np.arange(phase.size)
    return complex(np.sum(np.conj(phase) * matrix[basis ^ flip, basis]))


def _action_add_to(matrix, action, coefficient):
    flip, phase = action
    basis = np.arange(phase.size)
    matrix[basis ^ flip, basis] += coefficient * phase


def _majorana_positions(shape, sites=None):
    sites = range(shape.num_sites) if sites is None else sites
    return [(site, alpha) for site in sites for alpha in range(2 * shape.modes_per_site)]


def _iter_joint_monomials(shapes, position_lists):
    """Enumerate monomials jointly on several shapes.

    ``position_lists[s][k]`` is the ``(site, alpha)`` of the k-th Majorana on ``shapes[s]``.
    Yields the tuple of selected k indices and the tuple of actions, in lexicographic order
    of the selected indices (empty product first).
    """
    num_positions = len(position_lists[0])
    majoranas = [
        [_majorana_action(shape, site, alpha) for site, alpha in positions]
        for shape, positions in zip(shapes, position_lists, strict=True)
    ]

    def walk(start, selection, actions):
        yield selection, actions
        for k in range(start, num_positions):
            new_actions = tuple(_compose(action, maj[k]) for action, maj in zip(actions, majoranas, strict=True))
            yield from walk(k + 1, (*selection, k), new_actions)

    yield from walk(0, (), tuple(_identity_action(shape) for shape in shapes))


####--------------------------------------------------------------------------.
#### Public constructors


def majorana(shape, site, alpha):
    """Return the Jordan-Wigner Majorana operator ``m_site^alpha``.

    Parameters
    ----------
    shape : SystemShape
        System shape.
    site : int
        Site index in ``[0, N)``.
    alpha : int
        Local Majorana index in ``[0, 2p)``.

    Returns
    -------
    FockOperator
        Hermitian unitary Majorana operator.

    """
    site = check_index(site, shape.num_sites, "site")
    alpha = check_index(alpha, 2 * shape.modes_per_site, "alpha")
    action = _majorana_action(shape, site, alpha)
    return FockOperator(shape, _action_matrix(action, shape.dim), hermitian=True)


def majorana_product(shape, index_set):
    """Return the ordered product of the Majorana operators listed in ``index_set``."""
    action = _identity_action(shape)
    for site, alpha in index_set:
        site = check_index(site, shape.num_sites, "site")
        alpha = check_index(alpha, 2 * shape.modes_per_site, "alpha")
        action = _compose(action, _majorana_action(shape, site, alpha))
    return FockOperator(shape, _action_matrix(action, shape.dim))


def majorana_sum(shape, terms):
    """Return ``sum_t c_t prod m`` for terms ``(c_t, [(site, alpha), ...])`` in any product order."""
    matrix = np.zeros((shape.dim, shape.dim), dtype=complex)
    for coefficient, index_set in terms:
        action = _identity_action(shape)
        for site, alpha in index_set:
            site = check_index(site, shape.num_sites, "site")
            alpha = check_index(alpha, 2 * shape.modes_per_site, "alpha")
            action = _compose(action, _majorana_action(shape, site, alpha))
        _action_add_to(matrix, action, coefficient)
    return FockOperator(shape, matrix)


def odd_site_operator(shape, site, alphas):
    """Return the single-site Majorana product ``m_site^J`` for an odd-size index set ``J``."""
    alphas = check_distinct_indices(alphas, 2 * shape.modes_per_site, "alphas")
    if len(alphas) % 2 != 1:
        raise ValueError(f"'alphas' must contain an odd number of indices. Got {len(alphas)}.")
    return majorana_product(shape, [(site, alpha) for alpha in sorted(alphas)])


def local_parity(shape, site):
    """Return the local parity operator ``P_j = (-i)^p prod_a m_j^{2a} m_j^{2a+1}``.

    In the occupation basis ``P_j`` is diagonal with entries ``(-1)^{n_j}``,
    ``n_j`` being the number of occupied modes of the site.
    """
    site = check_index(site, shape.num_sites, "site")
    p = shape.modes_per_site
    index_set = [(site, alpha) for alpha in range(2 * p)]
    return FockOperator(shape, (-1j) ** p * majorana_product(shape, index_set).matrix, hermitian=True)


def fermion_annihilation(shape, site, mode):
    """Return the annihilation operator ``f = (m^{2a} + i m^{2a+1}) / 2`` of a local mode."""
    mode = check_index(mode, shape.modes_per_site, "mode")
    return (majorana(shape, site, 2 * mode) + 1j * majorana(shape, site, 2 * mode + 1)) / 2


def number_operator(shape, site, mode):
    """Return the occupation number operator ``n = f^dagger f`` of a local mode."""
    annihilation = fermion_annihilation(shape, site, mode)
    return FockOperator(shape, annihilation.dagger().matrix @ annihilation.matrix, hermitian=True)


####--------------------------------------------------------------------------.
#### Parity channels


def _check_operator(X):
    if not isinstance(X, FockOperator):
        raise TypeError("Expecting a FockOperator.")


def xi_site(X, site):
    """Apply the local twirl ``(X + P_j X P_j) / 2`` of site ``site``."""
    _check_operator(X)
    site = check_index(site, X.shape.num_sites, "site")
    diagonal = _site_parity_diagonal(X.shape, site)
    keep = diagonal[:, None] == diagonal[None, :]
    return FockOperator(X.shape, np.where(keep, X.matrix, 0))


def xi_total(X):
    """Apply the composition of all local twirls, projecting onto the totally even part."""
    _check_operator(X)
    labels = _site_parity_labels(X.shape)
    keep = labels[:, None] == labels[None, :]
    return FockOperator(X.shape, np.where(keep, X.matrix, 0), hermitian=X.hermitian)


####--------------------------------------------------------------------------.
#### Monomial expansion


def iter_expansion(A, tol=COEFF_TOL):
    """Lazily enumerate the Majorana-monomial expansion of an operator.

    The coefficient of the monomial ``m_I`` is ``tr(m_I^dagger A) / dim``.
    Only monomials with ``|c_I| > tol`` are yielded.

    Parameters
    ----------
    A : FockOperator
        Operator to expand.
    tol : float
        Coefficient threshold. The default is 1e-12.

    Yields
    ------
    MajoranaMonomial
        Nonzero monomials in lexicographic index order.

    """
    _check_operator(A)
    shape = A.shape
    positions = _majorana_positions(shape)
    for selection, (action,) in _iter_joint_monomials([shape], [positions]):
        coefficient = _action_overlap(action, A.matrix) / shape.dim
        if abs(coefficient) > tol:
            yield MajoranaMonomial(tuple(positions[k] for k in selection), coefficient)


def expand(A, tol=COEFF_TOL):
    """Return the list of nonzero monomials of the expansion of ``A``."""
    monomials = list(iter_expansion(A, tol=tol))
    logger.debug("Expanded operator on %d modes into %d monomials.", A.shape.num_modes, len(monomials))
    return monomials


def reconstruct(shape, monomials):
    """Sum a list of monomials into a FockOperator."""
    matrix = np.zeros((shape.dim, shape.dim), dtype=complex)
    for monomial in monomials:
        action = _identity_action(shape)
        for site, alpha in monomial.index_set:
            action = _compose(action, _majorana_action(shape, site, alpha))
        _action_add_to(matrix, action, monomial.coefficient)
    return FockOperator(shape, matrix)


def classify_parity(A, tol=COEFF_TOL):
    """Classify an operator as totally even, totally odd or mixed.

    Totally even takes precedence, so the zero operator and the identity are totally even.

    Returns
    -------
    str
        One of ``"totally_even"``, ``"totally_odd"`` or ``"mixed"``.

    """
    _check_operator(A)
    num_sites = A.shape.num_sites
    monomials = expand(A, tol=tol)
    if all(monomial.is_totally_even(num_sites) for monomial in monomials):
        return TOTALLY_EVEN
    if all(monomial.is_totally_odd(num_sites) for monomial in monomials):
        return TOTALLY_ODD
    return MIXED


def even_odd_split(A):
    """Split ``A`` into its totally even part and the remainder.

    The totally even part equals the sum of the totally even monomials of the expansion,
    which is exactly ``xi_total(A)``.
    """
    even = xi_total(A)
    return even, A - even


####--------------------------------------------------------------------------.
#### Restriction to a subset of sites


def local_coefficients(X, sites, tol=0.0):
    """Return the coefficients of ``X`` on all monomials supported on ``sites``.

    ``sites`` is sorted and relabeled to ``0, ..., K-1``. The coefficient of the local monomial
    ``m_I`` is ``tr(m~_I^dagger X)``, ``m~_I`` being the corresponding global monomial.

    Returns
    -------
    tuple
        Local :py:class:`SystemShape` and list of ``(local_action, coefficient)`` pairs.

    """
    _check_operator(X)
    sites = sorted(check_distinct_indices(sites, X.shape.num_sites, "sites"))
    if len(sites) == 0:
        raise ValueError("'sites' must contain at least one site.")
    local_shape = SystemShape(len(sites), X.shape.modes_per_site)
    local_positions = _majorana_positions(local_shape)
    global_positions = _majorana_positions(X.shape, sites=sites)
    pairs = []
    for _, (local_action, global_action) in _iter_joint_monomials(
        [local_shape, X.shape],
        [local_positions, global_positions],
    ):
        coefficient = _action_overlap(global_action, X.matrix)
        if abs(coefficient) > tol:
            pairs.append((local_action, coefficient))
    return local_shape, pairs


def coefficients_matrix(shape, pairs, scale=1.0):
    """Assemble the dense matrix of ``scale * sum(coefficient * monomial)`` from action pairs."""
    matrix = np.zeros((shape.dim, shape.dim), dtype=complex)
    for action, coefficient in pairs:
        _action_add_to(matrix, action, coefficient * scale)
    return matrix


def restrict_operator(X, sites):
    """Express an operator supported on ``sites`` in the Fock space of those sites only.

    Monomials acting outside ``sites`` are discarded, so the result is exact only for operators
    supported on ``sites``.
    """
    local_shape, pairs = local_coefficients(X, sites)
    return FockOperator(local_shape, coefficients_matrix(local_shape, pairs, scale=1 / X.shape.dim))


def embed_operator(local, shape, sites):
    """Embed an operator on the sorted ``sites`` into the Fock space of ``shape``."""
    _check_operator(local)
    sites = sorted(check_distinct_indices(sites, shape.num_sites, "sites"))
    if local.shape != SystemShape(len(sites), shape.modes_per_site):
        raise ValueError("The local operator shape does not match the number of sites.")
    local_positions = _majorana_positions(local.shape)
    global_positions = _majorana_positions(shape, sites=sites)
    matrix = np.zeros((shape.dim, shape.dim), dtype=complex)
    for _, (local_action, global_action) in _iter_joint_monomials(
        [local.shape, shape],
        [local_positions, global_positions],
    ):
        coefficient = _action_overlap(local_action, local.matrix) / local.shape.dim
        if coefficient != 0:
            _action_add_to(matrix, global_action, coefficient)
    return FockOperator(shape, matrix)
