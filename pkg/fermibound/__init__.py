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
"""This directory defines the fermi-bound toolbox for fermionic monogamy and product-approximation bounds."""
import contextlib
from importlib.metadata import PackageNotFoundError, version

from fermibound.bounds import evaluate_bound
from fermibound.certification import certificate, ground_state, optimize_product_state
from fermibound.definetti import SpinState, build_ic_povm, build_separable_approx
from fermibound.fock import FockOperator, SystemShape, majorana
from fermibound.graphs import InteractionGraph, WeightMatrix, from_edge_list, vertex_cover
from fermibound.hamiltonians import build_hubbard_spinful, build_hubbard_spinless, build_qc_hamiltonian
from fermibound.states import DensityState, build_witness, monogamy_check, reduce

__all__ = [
    "DensityState",
    "FockOperator",
    "InteractionGraph",
    "SpinState",
    "SystemShape",
    "WeightMatrix",
    "build_hubbard_spinful",
    "build_hubbard_spinless",
    "build_ic_povm",
    "build_qc_hamiltonian",
    "build_separable_approx",
    "build_witness",
    "certificate",
    "evaluate_bound",
    "from_edge_list",
    "ground_state",
    "majorana",
    "monogamy_check",
    "optimize_product_state",
    "reduce",
    "vertex_cover",
]


# Get version
with contextlib.suppress(PackageNotFoundError):
    __version__ = version("fermi-bound")
