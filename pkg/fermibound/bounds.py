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
"""This module evaluates the closed-form monogamy, extendibility and product-approximation bounds.

Each function implements one inequality with its stated constants. Where a stated constant
disagrees with the one its derivation yields, ``strict=True`` returns the derivation-consistent
variant; :py:func:`evaluate_bound` reports both.
"""
import math

from fermibound.checks import check_integer, check_real
from fermibound.graphs import detect_family, uniform_weight_matrix, validate_cover, vertex_cover
from fermibound.reports import BoundRecord

BOUND_TAGS = (
    "thm1",
    "cor3",
    "cor4",
    "cor5",
    "thm6",
    "thm8",
    "thm10",
    "thm11",
    "cor12",
    "cor13",
    "ext_one_sided",
    "ext_two_sided",
    "ext_symmetric",
    "sym_distinguishable",
    "bipartite",
)
FAMILIES = ("c_regular", "star")


def _check_p(p):
    return check_integer(p, "p", minimum=1)


def _check_d(d):
    return check_integer(d, "d", minimum=2)


def _check_family(family):
    if family not in FAMILIES:
        raise ValueError(f"Invalid family '{family}'. Valid families are {list(FAMILIES)}.")
    return family


def _check_edges(graph):
    if graph.num_edges == 0:
        raise ValueError("The bound requires a graph with at least one edge.")


def _family_size(family, size):
    """Return the growth parameter: ``c`` for c-regular graphs, ``N - 1`` leaves for stars."""
    if family == "c_regular":
        return check_integer(size, "c", minimum=1)
    return check_integer(size, "N", minimum=2) - 1


def _cover_sum(p, graph, cover):
    cover = validate_cover(graph, cover)
    return sum(2 ** (4 * p) * math.sqrt(graph.degree(i)) for i in cover)


####--------------------------------------------------------------------------.
#### Monogamy


def thm1_bound(p, degree):
    """Monogamy bound ``2^{4p} / (4 sqrt(|E_i|))`` on the mean pair distance around a site."""
    p = _check_p(p)
    degree = check_integer(degree, "degree", minimum=1)
    return 2 ** (4 * p) / (4 * math.sqrt(degree))


def cor3_bound(p, graph):
    """Edge-average bound ``sum_i 2^{4p} sqrt(|E_i|) / (8|E|)``."""
    p = _check_p(p)
    _check_edges(graph)
    return sum(2 ** (4 * p) * math.sqrt(d) for d in graph.degrees) / (8 * graph.num_edges)


def cor4_bound(p, graph, cover):
    """Edge-average bound over a vertex cover ``sum_{i in V'} 2^{4p} sqrt(|E_i|) / (4|E|)``."""
    p = _check_p(p)
    _check_edges(graph)
    return _cover_sum(p, graph, cover) / (4 * graph.num_edges)


def cor5_bounds(p, family, size, strict=False):
    """Edge-average bound on c-regular graphs (``size = c``) or stars (``size = N``).

    Stated values: ``2^{4p} / (8 sqrt(c))`` and ``2^{4p} / (4 sqrt(N - 1))``.
    With ``strict=True`` the c-regular value is ``2^{4p} / (4 sqrt(c))``, which is what the
    edge-average bound gives on a c-regular graph.
    """
    p = _check_p(p)
    family = _check_family(family)
    growth = _family_size(family, size)
    if family == "c_regular":
        denominator = 4 if strict else 8
        return 2 ** (4 * p) / (denominator * math.sqrt(growth))
    return 2 ** (4 * p) / (4 * math.sqrt(growth))


def thm6_bound(p, n, k):
    """Complete bipartite extendibility bound ``2^{4p} / (4 sqrt(n k))``."""
    p = _check_p(p)
    n = check_integer(n, "n", minimum=1)
    k = check_integer(k, "k", minimum=1)
    return 2 ** (4 * p) / (4 * math.sqrt(n * k))


####--------------------------------------------------------------------------.
#### Distinguishable particles


def thm8_bound(d, weight):
    """General product-approximation bound ``47 (d^4 ln(d) tr(A^2) ||pi||^2)^{1/5} + 2 ||pi||^2``."""
    d = _check_d(d)
    inner = d**4 * math.log(d) * weight.trace_A2 * weight.pi_norm2
    return 47 * inner ** (1 / 5) + 2 * weight.pi_norm2


def thm10_bounds(d, family, size, constant=None):
    """Special-graph bounds ``12 (d^2 ln d / c)^{1/3}`` and ``22 (d^2 ln d / (N - 1))^{1/3}``.

    ``constant`` overrides the prefactor (e.g. 18 for the restated star constant).
    """
    d = _check_d(d)
    family = _check_family(family)
    growth = _family_size(family, size)
    if constant is None:
        constant = 12 if family == "c_regular" else 22
    return constant * (d**2 * math.log(d) / growth) ** (1 / 3)


def bipartite_bound(d, n):
    """Complete bipartite product-approximation bound ``22 (d^2 ln d / n)^{1/3}``."""
    d = _check_d(d)
    n = check_integer(n, "n", minimum=1)
    return 22 * (d**2 * math.log(d) / n) ** (1 / 3)


def conditioning_error_bound(k, n_cond, d):
    """Error bound ``2k / n_cond + 18 d sqrt(2 ln(d) / k)`` after conditioning on ``k`` sites."""
    k = check_integer(k, "k", minimum=1)
    n_cond = check_integer(n_cond, "n_cond", minimum=1)
    d = _check_d(d)
    return 2 * k / n_cond + 18 * d * math.sqrt(2 * math.log(d) / k)


def balanced_conditioning_size(d, n):
    """Conditioning size ``(81 d^2 2 ln(d) n^2)^{1/3}`` balancing both error terms, rounded up."""
    d = _check_d(d)
    n = check_integer(n, "n", minimum=1)
    return max(1, math.ceil((81 * d**2 * 2 * math.log(d) * n**2) ** (1 / 3)))


def sym_distinguishable_bound(d, k):
    """One-sided extendibility bound ``4 d^2 / k`` for distinguishable particles."""
    d = _check_d(d)
    k = check_integer(k, "k", minimum=1)
    return 4 * d**2 / k


####--------------------------------------------------------------------------.
#### Fermionic product approximations


def thm11_bound(p, graph, cover, epsilon, strict=False):
    """Fermionic product-approximation bound ``sum_{i in V'} 2^{4p} sqrt(|E_i|) / |E| + epsilon``.

    With ``strict=True`` the first term carries the ``/4`` of the monogamy bound.
    """
    p = _check_p(p)
    epsilon = check_real(epsilon, "epsilon", minimum=0)
    _check_edges(graph)
    first = _cover_sum(p, graph, cover) / graph.num_edges
    if strict:
        first /= 4
    return first + epsilon


def cor12_bound(p, graph, cover, strict=False):
    """Two-local fermionic bound combining the cover term with the general distinguishable bound.

    Stated form (``d = 2^p``)::

        sum_{i in V'} 2^{4p} sqrt(|E_i|) / |E|
        + 47 (2^{4p} p sum_{(i,j) in E} 1 / (|E_i||E_j|) sum_i |E_i|^2 / |E|^2)^{1/5}
        + 2 sum_i |E_i|^2 / |E|^2

    With ``strict=True``: the cover term divided by 4 plus the general bound evaluated with the
    uniform edge weights and ``d = 2^p``.
    """
    p = _check_p(p)
    _check_edges(graph)
    if strict:
        return thm11_bound(p, graph, cover, 0.0, strict=True) + thm8_bound(2**p, uniform_weight_matrix(graph))
    num_edges = graph.num_edges
    degrees = graph.degrees.astype(float)
    inverse_degree_sum = sum(1 / (degrees[i] * degrees[j]) for i, j in graph.edges)
    squared_degree_ratio = float(sum(degrees**2)) / num_edges**2
    middle = 47 * (2 ** (4 * p) * p * inverse_degree_sum * squared_degree_ratio) ** (1 / 5)
    return thm11_bound(p, graph, cover, 0.0) + middle + 2 * squared_degree_ratio


def cor13_bounds(p, family, params, strict=False):
    """Energy-density bounds on c-regular lattices, the spinless Hubbard model and stars.

    Parameters
    ----------
    p : int
        Modes per site.
    family : str
        ``"c_regular"`` (params ``c``), ``"hubbard_spinless"`` (params ``t``, ``U``, ``D``)
        or ``"star"`` (params ``N``).
    params : dict
        Family parameters.
    strict : bool
        Use the proof-derived constants: first c-regular term over ``4 sqrt(c)``, star constant 22.

    """
    p = _check_p(p)
    valid_families = ["c_regular", "hubbard_spinless", "star"]
    if family not in valid_families:
        raise ValueError(f"Invalid family '{family}'. Valid families are {valid_families}.")

    def c_regular_value(c):
        c = check_integer(c, "c", minimum=1)
        denominator = 4 if strict else 8
        return 2 ** (4 * p) / (denominator * math.sqrt(c)) + 12 * (2 ** (2 * p) * p / c) ** (1 / 3)

    if family == "c_regular":
        return c_regular_value(params["c"])
    if family == "hubbard_spinless":
        t = check_real(params["t"], "t")
        U = check_real(params["U"], "U")
        D = check_integer(params["D"], "D", minimum=1)
        return max(abs(t), abs(U)) * c_regular_value(2 * D)
    leaves = check_integer(params["N"], "N", minimum=2) - 1
    constant = 22 if strict else 18
    return 2 ** (4 * p) / (4 * math.sqrt(leaves)) + constant * (2 ** (2 * p) * p / leaves) ** (1 / 3)


####--------------------------------------------------------------------------.
#### Symmetric extendibility


def extendibility_bounds(p, n, k, side):
    """Distance-to-separable bounds for extendible fermionic states.

    ``side`` is ``"one_sided"`` (``2^{4p}/(4 sqrt(k)) + 8/k``), ``"two_sided"``
    (``2^{4p}/(4 sqrt(nk)) + 8/k``) or ``"symmetric"`` (``n = k``: ``(2^{4p} + 32) / (4k)``).
    """
    p = _check_p(p)
    n = check_integer(n, "n", minimum=1)
    k = check_integer(k, "k", minimum=1)
    if side == "one_sided":
        return 2 ** (4 * p) / (4 * math.sqrt(k)) + 8 / k
    if side == "two_sided":
        return 2 ** (4 * p) / (4 * math.sqrt(n * k)) + 8 / k
    if side == "symmetric":
        if n != k:
            raise ValueError(f"The symmetric bound requires n == k. Got n={n}, k={k}.")
        return (2 ** (4 * p) + 32) / (4 * k)
    raise ValueError(f"Invalid side '{side}'. Valid sides are ['one_sided', 'two_sided', 'symmetric'].")


####--------------------------------------------------------------------------.
#### Tagged evaluation


def _resolve_family(family, size, graph):
    if family is not None:
        return family, size
    if graph is None:
        raise ValueError("Specify either 'family' and its size or a 'graph'.")
    detected = detect_family(graph)
    if detected["family"] == "c_regular":
        return "c_regular", detected["c"]
    if detected["family"] == "star":
        return "star", detected["N"]
    raise ValueError(f"The graph is not c-regular nor a star (detected '{detected['family']}').")


def _require(params, *names):
    missing = [name for name in names if params.get(name) is None]
    if missing:
        raise ValueError(f"Missing parameter(s) {missing}.")


def evaluate_bound(tag, **params):
    """Evaluate a bound by tag and return a :py:class:`BoundRecord`.

    Accepted parameters depend on ``tag``: ``p``, ``d``, ``degree``, ``graph``, ``site``, ``cover``,
    ``cover_mode``, ``family``, ``size``, ``n``, ``k``, ``epsilon``, ``weight``, ``t``, ``U``, ``D``.
    Graph-based bounds pick the family, the cover (``vertex_cover(graph, cover_mode)``) or the
    highest-degree site automatically when not given.
    """
    if tag not in BOUND_TAGS:
        raise ValueError(f"Unknown bound tag '{tag}'. Valid tags are {list(BOUND_TAGS)}.")
    graph = params.get("graph")
    p = params.get("p")

    def cover_params():
        cover = params.get("cover")
        if cover is None:
            cover = vertex_cover(graph, mode=params.get("cover_mode") or "auto")
        mode = getattr(cover, "mode", "given")
        vertices = validate_cover(graph, cover)
        return vertices, {"cover": list(vertices), "cover_mode": mode}

    if tag == "thm1":
        degree = params.get("degree")
        record_params = {"p": p}
        if degree is None:
            _require(params, "graph")
            site = params.get("site")
            site = graph.max_degree_vertex() if site is None else site
            degree = graph.degree(site)
            record_params["site"] = site
        record_params["degree"] = degree
        return BoundRecord(tag, thm1_bound(p, degree), params=record_params)

    if tag == "cor3":
        _require(params, "graph")
        value = cor3_bound(p, graph)
        record = BoundRecord(tag, value, params={"p": p, "num_edges": graph.num_edges})
        if detect_family(graph)["family"] == "c_regular":
            record.notes.append("cor5_c_regular_factor_2")
        return record

    if tag == "cor4":
        _require(params, "graph")
        vertices, extra = cover_params()
        return BoundRecord(tag, cor4_bound(p, graph, vertices), params={"p": p, **extra})

    if tag == "cor5":
        family, size = _resolve_family(params.get("family"), params.get("size"), graph)
        record = BoundRecord(
            tag,
            cor5_bounds(p, family, size),
            params={"p": p, "family": family, "size": size},
            strict_value=cor5_bounds(p, family, size, strict=True),
        )
        if family == "c_regular":
            record.notes.append("cor5_c_regular_factor_2")
        return record

    if tag == "thm6":
        _require(params, "n", "k")
        return BoundRecord(tag, thm6_bound(p, params["n"], params["k"]), params={"p": p, "n": params["n"], "k": params["k"]})

    if tag == "thm8":
        d = params.get("d") or (2**p if p is not None else None)
        weight = params.get("weight")
        if weight is None:
            _require(params, "graph")
            weight = uniform_weight_matrix(graph)
        record = BoundRecord(tag, thm8_bound(d, weight), params={"d": d, **weight.summary()})
        if weight.has_zero_entries:
            record.notes.append("weight_matrix_not_strictly_positive")
        return record

    if tag == "thm10":
        d = params.get("d") or (2**p if p is not None else None)
        family, size = _resolve_family(params.get("family"), params.get("size"), graph)
        value = thm10_bounds(d, family, size)
        record = BoundRecord(tag, value, params={"d": d, "family": family, "size": size}, strict_value=value)
        if family == "star":
            record.alternatives = {"constant_18": thm10_bounds(d, family, size, constant=18), "constant_22": value}
            record.notes.append("star_constant_18_vs_22")
        return record

    if tag == "thm11":
        _require(params, "graph")
        epsilon = params.get("epsilon") or 0.0
        vertices, extra = cover_params()
        record = BoundRecord(
            tag,
            thm11_bound(p, graph, vertices, epsilon),
            params={"p": p, "epsilon": epsilon, **extra},
            strict_value=thm11_bound(p, graph, vertices, epsilon, strict=True),
        )
        record.notes.append("thm11_term_equals_4x_cor4")
        return record

    if tag == "cor12":
        _require(params, "graph")
        vertices, extra = cover_params()
        record = BoundRecord(
            tag,
            cor12_bound(p, graph, vertices),
            params={"p": p, "d": 2**p, **extra},
            strict_value=cor12_bound(p, graph, vertices, strict=True),
        )
        record.notes.append("thm11_term_equals_4x_cor4")
        return record

    if tag == "cor13":
        family = params.get("family")
        if family == "hubbard_spinless":
            _require(params, "t", "U", "D")
            family_params = {"t": params["t"], "U": params["U"], "D": params["D"]}
        else:
            family, size = _resolve_family(family, params.get("size"), graph)
            family_params = {"c": size} if family == "c_regular" else {"N": size}
        record = BoundRecord(
            tag,
            cor13_bounds(p, family, family_params),
            params={"p": p, "family": family, **family_params},
            strict_value=cor13_bounds(p, family, family_params, strict=True),
        )
        record.notes.append("upper_bound_written_as_equality")
        if family == "star":
            record.alternatives = {"constant_18": record.value, "constant_22": record.strict_value}
        return record

    if tag in ("ext_one_sided", "ext_two_sided", "ext_symmetric"):
        _require(params, "k")
        side = tag.removeprefix("ext_")
        n = params.get("n") or params.get("k")
        record = BoundRecord(tag, extendibility_bounds(p, n, params["k"], side), params={"p": p, "n": n, "k": params["k"]})
        record.notes.append("additive_8_over_k_p_independent")
        return record

    if tag == "sym_distinguishable":
        _require(params, "d", "k")
        return BoundRecord(tag, sym_distinguishable_bound(params["d"], params["k"]), params={"d": params["d"], "k": params["k"]})

    _require(params, "d", "n")
    return BoundRecord(tag, bipartite_bound(params["d"], params["n"]), params={"d": params["d"], "n": params["n"]})
