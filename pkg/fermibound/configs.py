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
"""This module defines the fermi-bound runtime configuration and numerical tolerances."""
import os

DEFAULT_DIM_CAP = 14
DIM_CAP_ENV_VAR = "FM_DIM_CAP"

# Numerical tolerances
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
PASS_TOL = 1e-9
COEFF_TOL = 1e-12
CONDITIONING_TOL = 1e-14
DENOMINATOR_TOL = 1e-15
MONOTONE_TOL = 1e-12

# Upper number of outcome tuples enumerated when conditioning on measured sites
MAX_CONDITIONING_OUTCOMES = 50_000


def get_dim_cap():
    """Return the maximum number of fermionic modes handled with dense matrices.

    The default cap can be overridden with the ``FM_DIM_CAP`` environment variable.

    Returns
    -------
    int
        Maximum value of ``p * N``.

    """
    value = os.environ.get(DIM_CAP_ENV_VAR)
    if value is None or value.strip() == "":
        return DEFAULT_DIM_CAP
    try:
        dim_cap = int(value)
    except ValueError:
        raise ValueError(f"The '{DIM_CAP_ENV_VAR}' environment variable must be an integer. Got '{value}'.")
    if dim_cap < 1:
        raise ValueError(f"The '{DIM_CAP_ENV_VAR}' environment variable must be a positive integer.")
    return dim_cap
