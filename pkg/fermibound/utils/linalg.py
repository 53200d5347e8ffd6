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
"""This module contains dense linear-algebra helpers shared by the fermionic and spin code paths."""
import functools

import numpy as np
import scipy.linalg


def max_hermitian_deviation(matrix):
    """Return the max-abs-entry deviation of ``matrix`` from its conjugate transpose."""
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def is_hermitian(matrix, tol=1e-12):
    """Check whether ``matrix`` is Hermitian within ``tol`` (max-abs-entry deviation)."""
    return max_hermitian_deviation(matrix) <= tol


def trace_norm(matrix, hermitian=None):
    """Return the trace norm (sum of singular values) of a dense matrix.

    Parameters
    ----------
    matrix : numpy.ndarray
        Square matrix.
    hermitian : bool, optional
        If ``True`` the absolute eigenvalues are summed. If ``None`` (default),
        Hermiticity is detected with a 1e-12 tolerance.

    Returns
    -------
    float
        Trace norm.

    """
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0.0
    if hermitian is None:
        hermitian = is_hermitian(matrix)
    if hermitian:
        hermitian_matrix = (matrix + matrix.conj().T) / 2
        return float(np.sum(np.abs(scipy.linalg.eigvalsh(hermitian_matrix))))
    return float(np.sum(scipy.linalg.svdvals(matrix)))


def operator_norm(matrix):
    """Return the operator norm (largest singular value) of a dense matrix."""
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0.0
    return float(scipy.linalg.svdvals(matrix)[0])


def kron_all(matrices):
    """Return the Kronecker product of a sequence of matrices, first factor most significant."""
    return functools.reduce(np.kron, matrices, np.ones((1, 1), dtype=complex))


def partial_trace(matrix, dims, keep):
    """Trace out all tensor factors of ``matrix`` not listed in ``keep``.

    Parameters
    ----------
    matrix : numpy.ndarray
        Operator on the tensor product of spaces of dimensions ``dims``.
    dims : sequence of int
        Local dimensions, first factor most significant.
    keep : sequence of int
        Factors to keep, returned in increasing order.

    Returns
    -------
    numpy.ndarray
        Reduced operator.

    """
    dims = list(dims)
    n = len(dims)
    keep = sorted(keep)
    traced = [i for i in range(n) if i not in keep]
    tensor = np.asarray(matrix).reshape(dims + dims)
    # Contract traced factors from the last one so axis positions stay valid
    for count, axis in enumerate(sorted(traced, reverse=True)):
        remaining = n - count
        tensor = np.trace(tensor, axis1=axis, axis2=axis + remaining)
    dim_keep = int(np.prod([dims[i] for i in keep])) if keep else 1
    return tensor.reshape(dim_keep, dim_keep)


def random_density_matrix(dim, rng):
    """Draw a Hilbert-Schmidt random density matrix ``G G^dagger / tr(G G^dagger)``.

    Parameters
    ----------
    dim : int
        Matrix dimension.
    rng : numpy.random.Generator
        Random number generator.

    Returns
    -------
    numpy.ndarray
        Density matrix of size ``dim x dim``.

    """
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    matrix = ginibre @ ginibre.conj().T
    matrix = matrix / np.trace(matrix).real
    return (matrix + matrix.conj().T) / 2
