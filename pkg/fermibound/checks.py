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
"""This module contains functions to check the fermi-bound arguments."""
import numbers

import numpy as np

from fermibound.configs import get_dim_cap


class DimensionCapError(ValueError):
    """Raised when a system exceeds the dense-matrix mode cap."""


class SchemaError(ValueError):
    """Raised when an input file does not follow its schema.

    Parameters
    ----------
    field : str
        Name (or dotted path) of the offending field.
    message : str
        Description of the violation.
    line : int, optional
        Line number in the input file, when known.

    """

    def __init__(self, field, message, line=None):
        self.field = field
        self.line = line
        location = f" (line {line})" if line is not None else ""
        super().__init__(f"Invalid field '{field}'{location}: {message}")


class BoundViolationError(AssertionError):
    """Raised when a proven inequality is violated numerically."""


def check_integer(value, name, minimum=None):
    """Check that ``value`` is an integer not smaller than ``minimum``."""
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"'{name}' must be an integer. Got {type(value).__name__}.")
    value = int(value)
    if minimum is not None and value < minimum:
        raise ValueError(f"'{name}' must be >= {minimum}. Got {value}.")
    return value


def check_real(value, name, minimum=None):
    """Check that ``value`` is a finite real number not smaller than ``minimum``."""
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise TypeError(f"'{name}' must be a real number. Got {type(value).__name__}.")
    value = float(value)
    if not np.isfinite(value):
        raise ValueError(f"'{name}' must be finite.")
    if minimum is not None and value < minimum:
        raise ValueError(f"'{name}' must be >= {minimum}. Got {value}.")
    return value


def check_index(index, size, name):
    """Check that ``index`` is a valid 0-based index into a range of length ``size``."""
    index = check_integer(index, name)
    if index < 0 or index >= size:
        raise ValueError(f"'{name}' must be in [0, {size - 1}]. Got {index}.")
    return index


def check_distinct_indices(indices, size, name):
    """Check a sequence of distinct valid indices and return it as a tuple."""
    if isinstance(indices, (str, bytes)) or not hasattr(indices, "__iter__"):
        raise TypeError(f"'{name}' must be a sequence of integers.")
    indices = tuple(check_index(i, size, name=name) for i in indices)
    if len(set(indices)) != len(indices):
        raise ValueError(f"'{name}' must contain distinct indices. Got {indices}.")
    return indices


def check_num_modes(num_modes):
    """Check that the total number of modes does not exceed the configured cap."""
    dim_cap = get_dim_cap()
    if num_modes > dim_cap:
        raise DimensionCapError(
            f"The system has {num_modes} fermionic modes but the dense-matrix cap is {dim_cap}. "
            "Set the FM_DIM_CAP environment variable to raise it.",
        )
    return num_modes


def check_square_matrix(matrix, name, dim=None):
    """Check that ``matrix`` is a finite square 2D array, optionally of size ``dim``."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"'{name}' must be a square matrix. Got shape {matrix.shape}.")
    if dim is not None and matrix.shape[0] != dim:
        raise ValueError(f"'{name}' must have shape ({dim}, {dim}). Got {matrix.shape}.")
    if not np.all(np.isfinite(matrix)):
        raise ValueError(f"'{name}' contains non-finite entries.")
    return matrix


def check_format(fmt):
    """Check the report output format."""
    valid_formats = ["json", "csv"]
    if fmt not in valid_formats:
        raise ValueError(f"Invalid format '{fmt}'. Valid formats are {valid_formats}.")
    return fmt
