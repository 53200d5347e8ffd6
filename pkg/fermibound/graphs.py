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
"""This module defines interaction graphs, coupling weight matrices and vertex covers."""
import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from fermibound.checks import check_index, check_integer, check_square_matrix

logger = logging.getLogger(__name__)

EXACT_COVER_MAX_VERTICES = 24


####--------------------------------------------------------------------------.
#### Interaction graphs


class InteractionGraph:
    """Undirected simple graph on the vertices ``0, ..., N-1``.

    Edges are stored canonically as sorted ``(min, max)`` pairs.
    Use :py:func:`from_edge_list` to build a graph from arbitrary edge lists.
    """

    def __init__(self, num_vertices, edges):
        self.num_vertices = check_integer(num_vertices, "num_vertices", minimum=1)
        canonical = set()
        for edge in edges:
            if len(edge) != 2:
                raise ValueError(f"Edges must be pairs of vertices. Got {edge}.")
            i = check_index(edge[0], self.num_vertices, "edge vertex")
            j = check_index(edge[1], self.num_vertices, "edge vertex")
            if i == j:
                raise ValueError(f"Self-loop on vertex {i} is not allowed.")
            canonical.add((min(i, j), max(i, j)))
        self.edges = tuple(sorted(canonical))
        neighbors = [[] for _ in range(self.num_vertices)]
        for i, j in self.edges:
            neighbors[i].append(j)
            neighbors[j].append(i)
        self._neighbors = tuple(tuple(sorted(n)) for n in neighbors)
        self.degrees = np.array([len(n) for n in self._neighbors], dtype=int)
        self.degrees.flags.writeable = False
        if int(self.degrees.sum()) != 2 * self.num_edges:
            raise RuntimeError("Handshake identity violated.")

    @property
    def num_edges(self):
        return len(self.edges)

    def neighbors(self, vertex):
        """Return the sorted neighbors ``E_i`` of ``vertex``."""
        return self._neighbors[check_index(vertex, self.num_vertices, "vertex")]

    def degree(self, vertex):
        return int(self.degrees[check_index(vertex, self.num_vertices, "vertex")])

    def max_degree_vertex(self):
        """Return the vertex of largest degree (lowest index on ties)."""
        return int(np.argmax(self.degrees))

    def is_cover(self, vertices):
        vertices = set(vertices)
        return all(i in vertices or j in vertices for i, j in self.edges)

    def to_dict(self):
        return {"n": self.num_vertices, "edges": [list(edge) for edge in self.edges]}

    def __eq__(self, other):
        if not isinstance(other, InteractionGraph):
            return NotImplemented
        return self.num_vertices == other.num_vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.num_vertices, self.edges))

    def __repr__(self):
        return f"InteractionGraph(num_vertices={self.num_vertices}, num_edges={self.num_edges})"


def from_edge_list(num_vertices, edges):
    """Build a deduplicated, self-loop-free graph from an edge list.

    Parameters
    ----------
    num_vertices : int
        Number of vertices ``N``.
    edges : iterable
        Pairs of vertex indices. Duplicates and reversed pairs are merged.

    Returns
    -------
    InteractionGraph

    """
    return InteractionGraph(num_vertices, [tuple(edge) for edge in edges])


def star_graph(num_vertices, center=0):
    center = check_index(center, num_vertices, "center")
    return InteractionGraph(num_vertices, [(center, j) for j in range(num_vertices) if j != center])


def path_graph(num_vertices):
    return InteractionGraph(num_vertices, [(i, i + 1) for i in range(num_vertices - 1)])


def complete_graph(num_vertices):
    return InteractionGraph(num_vertices, list(itertools.combinations(range(num_vertices), 2)))


def complete_bipartite_graph(n1, n2):
    """Complete bipartite graph with parts ``[0, n1)`` and ``[n1, n1 + n2)``."""
    n1 = check_integer(n1, "n1", minimum=1)
    n2 = check_integer(n2, "n2", minimum=1)
    return InteractionGraph(n1 + n2, [(i, n1 + j) for i in range(n1) for j in range(n2)])


def lattice_graph(dimension, length, periodic=True):
    """Hypercubic lattice with ``length**dimension`` sites in row-major order.

    With periodic boundaries and ``length > 2`` the lattice is ``2 * dimension``-regular.
    """
    dimension = check_integer(dimension, "dimension", minimum=1)
    length = check_integer(length, "length", minimum=1)
    num_vertices = length**dimension
    edges = []
    for vertex, coords in enumerate(itertools.product(range(length), repeat=dimension)):
        for axis in range(dimension):
            shifted = list(coords)
            if coords[axis] + 1 < length:
                shifted[axis] = coords[axis] + 1
            elif periodic and length > 1:
                shifted[axis] = 0
            else:
                continue
            neighbor = int(np.ravel_multi_index(shifted, (length,) * dimension))
            if neighbor != vertex:
                edges.append((vertex, neighbor))
    return from_edge_list(num_vertices, edges)


def ring_graph(num_vertices):
    return lattice_graph(1, num_vertices, periodic=True)


def detect_family(graph):
    """Recognize the special graph families for which dedicated bounds exist.

    Returns
    -------
    dict
        ``{"family": "c_regular", "c": c}``, ``{"family": "star", "N": N, "center": v}``,
        ``{"family": "complete_bipartite", "parts": [A, B]}`` or ``{"family": "general"}``.

    """
    degrees = graph.degrees
    if graph.num_edges == 0:
        return {"family": "general"}
    if np.all(degrees == degrees[0]):
        return {"family": "c_regular", "c": int(degrees[0])}
    n = graph.num_vertices
    center = graph.max_degree_vertex()
    if n >= 3 and degrees[center] == n - 1 and graph.num_edges == n - 1:
        return {"family": "star", "N": n, "center": center}
    parts = bipartition(graph)
    if parts is not None and graph.num_edges == len(parts[0]) * len(parts[1]):
        return {"family": "complete_bipartite", "parts": parts}
    return {"family": "general"}


def bipartition(graph):
    """Return the two color classes of a bipartite graph without isolated vertices, else ``None``."""
    color = [-1] * graph.num_vertices
    for start in range(graph.num_vertices):
        if color[start] != -1 or graph.degree(start) == 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            vertex = stack.pop()
            for neighbor in graph.neighbors(vertex):
                if color[neighbor] == -1:
                    color[neighbor] = 1 - color[vertex]
                    stack.append(neighbor)
                elif color[neighbor] == color[vertex]:
                    return None
    if -1 in color:
        return None
    return [[v for v in range(graph.num_vertices) if color[v] == c] for c in (0, 1)]


####--------------------------------------------------------------------------.
#### Weight matrices


class WeightMatrix:
    """Symmetric nonnegative coupling weights ``G`` summing to one.

    Derived quantities: ``pi_j = sum_i G_ij``, ``A_ij = G_ij / pi_j``, ``tr(A^2)`` and ``||pi||_2^2``.
    """

    def __init__(self, G, tol=1e-12):
        G = np.array(check_square_matrix(G, "G"), dtype=float)
        if np.any(G < 0):
            raise ValueError("The weight matrix 'G' must be nonnegative.")
        if np.max(np.abs(G - G.T)) > tol:
            raise ValueError("The weight matrix 'G' must be symmetric.")
        if abs(G.sum() - 1) > tol:
            raise ValueError(f"The weight matrix 'G' must sum to 1. Got {G.sum()}.")
        G.flags.writeable = False
        self.G = G
        self.pi = G.sum(axis=0)
        with np.errstate(invalid="ignore", divide="ignore"):
            self.A = np.where(self.pi[None, :] > 0, G / self.pi[None, :], 0.0)
        self.trace_A2 = float(np.sum(self.A * self.A.T))
        self.pi_norm2 = float(self.pi @ self.pi)

    @property
    def size(self):
        return self.G.shape[0]

    @property
    def has_zero_entries(self):
        """Whether some off-diagonal weight vanishes (strict positivity not satisfied)."""
        off_diagonal = ~np.eye(self.size, dtype=bool)
        return bool(np.any(self.G[off_diagonal] == 0))

    def summary(self):
        return {
            "trace_A2": self.trace_A2,
            "pi_norm2": self.pi_norm2,
            "has_zero_entries": self.has_zero_entries,
        }


def uniform_weight_matrix(graph):
    """Return ``G_ij = 1 / (2|E|)`` on the edges of ``graph`` and 0 elsewhere.

    The derived quantities are checked against their closed forms
    ``pi_j = |E_j| / (2|E|)``, ``||pi||^2 = sum_i |E_i|^2 / (4|E|^2)`` and
    ``tr(A^2) = sum_{(i,j) in E} 2 / (|E_i||E_j|)`` summed over ordered pairs.
    """
    if graph.num_edges == 0:
        raise ValueError("The uniform weight matrix requires at least one edge.")
    num_edges = graph.num_edges
    G = np.zeros((graph.num_vertices, graph.num_vertices))
    for i, j in graph.edges:
        G[i, j] = G[j, i] = 1 / (2 * num_edges)
    weight = WeightMatrix(G)
    degrees = graph.degrees.astype(float)
    expected_pi = degrees / (2 * num_edges)
    expected_pi_norm2 = float(np.sum(degrees**2) / (4 * num_edges**2))
    expected_trace_A2 = float(sum(2 / (degrees[i] * degrees[j]) for i, j in graph.edges))
    if (
        np.max(np.abs(weight.pi - expected_pi)) > 1e-12
        or abs(weight.pi_norm2 - expected_pi_norm2) > 1e-12
        or abs(weight.trace_A2 - expected_trace_A2) > 1e-12
    ):
        raise RuntimeError("Uniform weight matrix does not match its closed-form quantities.")
    return weight


####--------------------------------------------------------------------------.
#### Vertex covers


@dataclass(frozen=True)
class VertexCover:
    """Vertex cover together with the algorithm used to obtain it."""

    vertices: tuple
    mode: str

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def validate_cover(graph, cover):
    """Check that ``cover`` meets every edge of ``graph`` and return it as a sorted tuple."""
    vertices = cover.vertices if isinstance(cover, VertexCover) else cover
    vertices = tuple(sorted({check_index(v, graph.num_vertices, "cover vertex") for v in vertices}))
    uncovered = [edge for edge in graph.edges if edge[0] not in vertices and edge[1] not in vertices]
    if uncovered:
        raise ValueError(f"Invalid vertex cover: edge {uncovered[0]} is not covered.")
    return vertices


def _remove_vertices(adjacency, vertices):
    return {v: nbrs - vertices for v, nbrs in adjacency.items() if v not in vertices and len(nbrs - vertices) > 0}


def _max_degree_key(adjacency):
    return max(sorted(adjacency), key=lambda v: len(adjacency[v]))


def _greedy_vertex_cover(graph):
    adjacency = {v: frozenset(graph.neighbors(v)) for v in range(graph.num_vertices) if graph.degree(v) > 0}
    cover = set()
    while adjacency:
        vertex = _max_degree_key(adjacency)
        cover.add(vertex)
        adjacency = _remove_vertices(adjacency, {vertex})
    return cover


def _exact_vertex_cover(graph):
    adjacency = {v: frozenset(graph.neighbors(v)) for v in range(graph.num_vertices) if graph.degree(v) > 0}
    best = [set(_greedy_vertex_cover(graph))]

    def lower_bound(adj):
        num_edges = sum(len(n) for n in adj.values()) // 2
        max_degree = max(len(n) for n in adj.values())
        return math.ceil(num_edges / max_degree)

    def search(adj, chosen):
        if not adj:
            if len(chosen) < len(best[0]):
                best[0] = set(chosen)
            return
        if len(chosen) + lower_bound(adj) >= len(best[0]):
            return
        vertex = _max_degree_key(adj)
        # Either the vertex is in the cover or all of its neighbors are
        search(_remove_vertices(adj, {vertex}), chosen | {vertex})
        neighbors = set(adj[vertex])
        search(_remove_vertices(adj, neighbors), chosen | neighbors)

    search(adjacency, frozenset())
    return best[0]


def vertex_cover(graph, mode="auto"):
    """Compute a vertex cover of ``graph``.

    Parameters
    ----------
    graph : InteractionGraph
        Input graph.
    mode : str
        ``"exact"`` (minimum cover by branch and bound, up to 24 vertices), ``"greedy"``
        (max-degree greedy) or ``"auto"`` (exact when possible). The default is ``"auto"``.

    Returns
    -------
    VertexCover
        Validated cover with the mode actually used.

    """
    valid_modes = ["auto", "exact", "greedy"]
    if mode not in valid_modes:
        raise ValueError(f"Invalid cover mode '{mode}'. Valid modes are {valid_modes}.")
    if mode == "auto":
        mode = "exact" if graph.num_vertices <= EXACT_COVER_MAX_VERTICES else "greedy"
    if mode == "exact":
        if graph.num_vertices > EXACT_COVER_MAX_VERTICES:
            raise ValueError(f"Exact vertex cover is limited to {EXACT_COVER_MAX_VERTICES} vertices.")
        vertices = _exact_vertex_cover(graph)
    else:
        vertices = _greedy_vertex_cover(graph)
    vertices = validate_cover(graph, vertices)
    logger.debug("Vertex cover (%s) of size %d.", mode, len(vertices))
    return VertexCover(vertices, mode)
