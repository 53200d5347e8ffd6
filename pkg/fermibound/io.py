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
"""This module reads graph and Hamiltonian input files and writes reports and matrix dumps.

Input files are YAML or JSON documents. Schema violations raise
:py:class:`fermibound.checks.SchemaError` naming the offending field and, when known, its line.
"""
import logging
import math
import os
import sys

import numpy as np
import yaml

from fermibound.checks import DimensionCapError, SchemaError, check_format
from fermibound.graphs import (
    WeightMatrix,
    complete_bipartite_graph,
    complete_graph,
    from_edge_list,
    lattice_graph,
    path_graph,
    ring_graph,
    star_graph,
)
from fermibound.hamiltonians import (
    HAMILTONIAN_FAMILIES,
    build_explicit_hamiltonian,
    build_hubbard_spinful,
    build_hubbard_spinless,
    build_qc_hamiltonian,
)
from fermibound.utils.yaml import read_yaml, read_yaml_key_lines

logger = logging.getLogger(__name__)

GRAPH_FAMILIES = ("edges", "star", "path", "ring", "complete", "complete_bipartite", "lattice")
MATRIX_DUMP_DTYPE = "<c16"


####--------------------------------------------------------------------------.
#### Field access


def _join(prefix, key):
    return f"{prefix}.{key}" if prefix else key


class _FieldReader:
    """Read typed fields and raise SchemaError with the line of the offending field."""

    def __init__(self, key_lines=None):
        self.key_lines = key_lines or {}

    def error(self, field, message):
        raise SchemaError(field, message, line=self.key_lines.get(field))

    def mapping(self, value, field):
        if not isinstance(value, dict):
            self.error(field or "<root>", "must be a mapping")
        return value

    def get(self, mapping, key, prefix, default=None, required=True):
        if key not in mapping:
            if required:
                self.error(_join(prefix, key), "is required")
            return default
        return mapping[key]

    def integer(self, mapping, key, prefix, minimum=None, default=None, required=True):
        field = _join(prefix, key)
        value = self.get(mapping, key, prefix, default=default, required=required)
        if value is None and not required:
            return default
        if isinstance(value, bool) or not isinstance(value, int):
            self.error(field, f"must be an integer, got {value!r}")
        if minimum is not None and value < minimum:
            self.error(field, f"must be >= {minimum}, got {value}")
        return value

    def real(self, mapping, key, prefix, default=None, required=True):
        field = _join(prefix, key)
        value = self.get(mapping, key, prefix, default=default, required=required)
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            self.error(field, f"must be a finite number, got {value!r}")
        return float(value)

    def boolean(self, mapping, key, prefix, default):
        value = self.get(mapping, key, prefix, default=default, required=False)
        if not isinstance(value, bool):
            self.error(_join(prefix, key), f"must be a boolean, got {value!r}")
        return value

    def array(self, mapping, key, prefix, required=True):
        field = _join(prefix, key)
        value = self.get(mapping, key, prefix, required=required)
        if value is None:
            return None
        try:
            array = np.array(value, dtype=float)
        except (TypeError, ValueError):
            self.error(field, "must be a numeric array")
        return array


def _load(filepath):
    try:
        content = read_yaml(filepath)
        key_lines = read_yaml_key_lines(filepath)
    except yaml.YAMLError as e:
        line = getattr(getattr(e, "problem_mark", None), "line", None)
        raise SchemaError(os.path.basename(filepath), f"cannot be parsed: {e}", line=None if line is None else line + 1)
    return content, _FieldReader(key_lines)


####--------------------------------------------------------------------------.
#### Graphs


def parse_graph(spec, reader=None, prefix=""):
    """Build an :py:class:`InteractionGraph` and optional :py:class:`WeightMatrix` from a mapping.

    Either ``{"n": N, "edges": [[i, j], ...]}`` or ``{"family": name, ...}`` with ``star``
    (``N``, ``center``), ``path``/``ring``/``complete`` (``N``), ``complete_bipartite`` (``n1``,
    ``n2``) and ``lattice`` (``D``, ``L``, ``periodic``). An optional ``weights`` matrix defines
    the weight matrix ``G``.

    Returns
    -------
    tuple
        ``(graph, weight)`` with ``weight`` ``None`` when no weights are given.

    """
    reader = reader or _FieldReader()
    spec = reader.mapping(spec, prefix)
    family = spec.get("family", "edges")
    if family not in GRAPH_FAMILIES:
        reader.error(_join(prefix, "family"), f"must be one of {list(GRAPH_FAMILIES)}, got {family!r}")
    try:
        if family == "edges":
            n = reader.integer(spec, "n", prefix, minimum=1)
            edges = reader.get(spec, "edges", prefix)
            if not isinstance(edges, list):
                reader.error(_join(prefix, "edges"), "must be a list of vertex pairs")
            for i, edge in enumerate(edges):
                if not isinstance(edge, list) or len(edge) != 2 or not all(isinstance(v, int) for v in edge):
                    reader.error(f"{_join(prefix, 'edges')}[{i}]", f"must be a pair of integers, got {edge!r}")
                if not all(0 <= v < n for v in edge) or edge[0] == edge[1]:
                    reader.error(f"{_join(prefix, 'edges')}[{i}]", f"must join two distinct vertices in [0, {n})")
            graph = from_edge_list(n, edges)
        elif family == "star":
            graph = star_graph(reader.integer(spec, "N", prefix, minimum=2), center=spec.get("center", 0))
        elif family == "path":
            graph = path_graph(reader.integer(spec, "N", prefix, minimum=2))
        elif family == "ring":
            graph = ring_graph(reader.integer(spec, "N", prefix, minimum=3))
        elif family == "complete":
            graph = complete_graph(reader.integer(spec, "N", prefix, minimum=2))
        elif family == "complete_bipartite":
            graph = complete_bipartite_graph(
                reader.integer(spec, "n1", prefix, minimum=1),
                reader.integer(spec, "n2", prefix, minimum=1),
            )
        else:
            graph = lattice_graph(
                reader.integer(spec, "D", prefix, minimum=1),
                reader.integer(spec, "L", prefix, minimum=2),
                periodic=reader.boolean(spec, "periodic", prefix, default=True),
            )
    except SchemaError:
        raise
    except (TypeError, ValueError) as e:
        reader.error(_join(prefix, "family") if "family" in spec else _join(prefix, "edges"), str(e))

    weight = None
    G = reader.array(spec, "weights", prefix, required=False)
    if G is not None:
        if G.shape != (graph.num_vertices, graph.num_vertices):
            reader.error(_join(prefix, "weights"), f"must be a {graph.num_vertices}x{graph.num_vertices} matrix")
        try:
            weight = WeightMatrix(G)
        except ValueError as e:
            reader.error(_join(prefix, "weights"), str(e))
    return graph, weight


def read_graph_file(filepath):
    """Read a graph file. Returns ``(graph, weight)``."""
    content, reader = _load(filepath)
    if isinstance(content, dict) and "graph" in content and "n" not in content and "family" not in content:
        return parse_graph(content["graph"], reader, prefix="graph")
    return parse_graph(content, reader)


####--------------------------------------------------------------------------.
#### Hamiltonians


def _parse_coefficient(value, field, reader):
    if isinstance(value, bool):
        reader.error(field, "must be a number or a [real, imag] pair")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, (int, float)) for v in value):
        return complex(value[0], value[1])
    reader.error(field, f"must be a number or a [real, imag] pair, got {value!r}")


def _parse_explicit_terms(params, reader):
    terms = reader.get(params, "terms", "params")
    if not isinstance(terms, list):
        reader.error("params.terms", "must be a list")
    parsed = []
    for i, term in enumerate(terms):
        prefix = f"params.terms[{i}]"
        term = reader.mapping(term, prefix)
        coefficient = _parse_coefficient(reader.get(term, "coefficient", prefix), f"{prefix}.coefficient", reader)
        majoranas = reader.get(term, "majoranas", prefix)
        if not isinstance(majoranas, list) or not all(
            isinstance(m, list) and len(m) == 2 and all(isinstance(v, int) for v in m) for m in majoranas
        ):
            reader.error(f"{prefix}.majoranas", "must be a list of [site, alpha] pairs")
        parsed.append((coefficient, [tuple(m) for m in majoranas]))
    return parsed


def parse_hamiltonian(spec, reader=None):
    """Build a :py:class:`TwoLocalHamiltonian` from ``{"family", "params", "graph"}``.

    Families and their ``params``:

    - ``hubbard_spinless`` and ``hubbard_spinful``: ``D`` (default 1), ``L``, ``t``, ``U``,
      ``periodic`` (default ``False``).
    - ``qc``: ``t`` (real part), optional ``t_imag``, optional ``v``; shape ``(N, N)`` or
      ``(N, p, N, p)``.
    - ``explicit``: ``num_sites``, ``modes_per_site`` (default 1), ``terms`` as a list of
      ``{"coefficient": c or [re, im], "majoranas": [[site, alpha], ...]}``.

    An optional ``graph`` must match the interaction graph of the built Hamiltonian.
    """
    reader = reader or _FieldReader()
    spec = reader.mapping(spec, "")
    family = reader.get(spec, "family", "")
    if family not in HAMILTONIAN_FAMILIES:
        reader.error("family", f"must be one of {list(HAMILTONIAN_FAMILIES)}, got {family!r}")
    params = reader.mapping(spec.get("params", {}), "params")
    try:
        if family in ("hubbard_spinless", "hubbard_spinful"):
            builder = build_hubbard_spinless if family == "hubbard_spinless" else build_hubbard_spinful
            hamiltonian = builder(
                reader.integer(params, "D", "params", minimum=1, default=1, required=False),
                reader.integer(params, "L", "params", minimum=2),
                reader.real(params, "t", "params"),
                reader.real(params, "U", "params"),
                periodic=reader.boolean(params, "periodic", "params", default=False),
            )
        elif family == "qc":
            t = reader.array(params, "t", "params")
            t_imag = reader.array(params, "t_imag", "params", required=False)
            if t_imag is not None:
                if t_imag.shape != t.shape:
                    reader.error("params.t_imag", "must have the shape of 't'")
                t = t + 1j * t_imag
            v = reader.array(params, "v", "params", required=False)
            hamiltonian = build_qc_hamiltonian(t, np.zeros(t.shape) if v is None else v)
        else:
            hamiltonian = build_explicit_hamiltonian(
                reader.integer(params, "num_sites", "params", minimum=1),
                reader.integer(params, "modes_per_site", "params", minimum=1, default=1, required=False),
                _parse_explicit_terms(params, reader),
            )
    except (SchemaError, DimensionCapError):
        raise
    except (TypeError, ValueError) as e:
        reader.error("params", str(e))

    if "graph" in spec:
        graph, _ = parse_graph(spec["graph"], reader, prefix="graph")
        if graph != hamiltonian.graph:
            reader.error("graph", "does not match the interaction graph of the Hamiltonian")
    return hamiltonian


def read_hamiltonian_file(filepath):
    """Read a Hamiltonian file into a :py:class:`TwoLocalHamiltonian`."""
    content, reader = _load(filepath)
    return parse_hamiltonian(content, reader)


def read_config_file(filepath):
    """Read a YAML run configuration into a dictionary."""
    content, reader = _load(filepath)
    return reader.mapping(content or {}, "")


####--------------------------------------------------------------------------.
#### Matrix dumps


def write_matrix_dump(matrix, filepath):
    """Write a square matrix as row-major little-endian complex128 values."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"Expecting a square matrix. Got shape {matrix.shape}.")
    np.ascontiguousarray(matrix, dtype=MATRIX_DUMP_DTYPE).tofile(filepath)


def read_matrix_dump(filepath):
    """Read a matrix written by :py:func:`write_matrix_dump`."""
    data = np.fromfile(filepath, dtype=MATRIX_DUMP_DTYPE)
    dim = math.isqrt(data.size)
    if dim * dim != data.size or dim == 0:
        raise SchemaError(os.path.basename(filepath), f"holds {data.size} values, not a square matrix")
    return data.reshape(dim, dim).astype(complex)


####--------------------------------------------------------------------------.
#### Reports


def write_report(report, filepath=None, fmt="json", strict_proof=False):
    """Serialize a :py:class:`BoundReport` as JSON or CSV to ``filepath`` or standard output.

    Returns
    -------
    str
        The serialized report.

    """
    fmt = check_format(fmt)
    text = report.to_json(strict_proof=strict_proof) if fmt == "json" else report.to_csv(strict_proof=strict_proof)
    if not text.endswith("\n"):
        text += "\n"
    if filepath is None:
        sys.stdout.write(text)
    else:
        with open(filepath, "w") as f:
            f.write(text)
        logger.info("Report written to %s.", filepath)
    return text
