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
"""This module implements classical information tools on finite joint distributions.

It provides sampling without replacement (SWOR) laws, Shannon entropies in nats,
(conditional) mutual information and the selection of decoupling conditioning sets.
"""
import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.special

from fermibound.checks import BoundViolationError, check_distinct_indices, check_index, check_integer
from fermibound.configs import CONDITIONING_TOL, DENOMINATOR_TOL
from fermibound.utils.parallel import compute_ordered

logger = logging.getLogger(__name__)

EXHAUSTIVE_MAX_BITS = 16
JOINT_MAX_BITS = 24


####--------------------------------------------------------------------------.
#### Probability mass functions


class Pmf:
    """Probability mass function over ``{0, ..., n-1}``."""

    def __init__(self, probabilities, tol=1e-12):
        probabilities = np.array(probabilities, dtype=float)
        if probabilities.ndim != 1 or probabilities.size == 0:
            raise ValueError("A pmf must be a non-empty 1D array.")
        if np.any(probabilities < 0) or not np.all(np.isfinite(probabilities)):
            raise ValueError("Probabilities must be finite and nonnegative.")
        if abs(probabilities.sum() - 1) > tol:
            raise ValueError(f"Probabilities must sum to 1. Got {probabilities.sum()}.")
        probabilities.flags.writeable = False
        self.probabilities = probabilities

    @classmethod
    def uniform(cls, size, support=None):
        """Uniform pmf over ``support`` (all outcomes by default)."""
        support = range(size) if support is None else check_distinct_indices(support, size, "support")
        probabilities = np.zeros(size)
        probabilities[list(support)] = 1 / len(support)
        return cls(probabilities)

    @classmethod
    def point_mass(cls, size, index):
        probabilities = np.zeros(size)
        probabilities[check_index(index, size, "index")] = 1
        return cls(probabilities)

    @property
    def size(self):
        return self.probabilities.size

    @property
    def support(self):
        return tuple(int(i) for i in np.flatnonzero(self.probabilities > 0))

    @property
    def support_size(self):
        return len(self.support)

    def __getitem__(self, index):
        return float(self.probabilities[index])


def _check_tuple_length(mu, k):
    if k > mu.support_size:
        raise ValueError(f"Cannot draw {k} distinct outcomes from a support of size {mu.support_size}.")


def swor_pmf(mu, indices):
    """Probability of the ordered tuple ``indices`` when drawing without replacement from ``mu``.

    ``mu(i_1) ... mu(i_k) / ((1 - mu(i_1)) ... (1 - mu(i_1) - ... - mu(i_{k-1})))``, and 0 for
    tuples with repeated entries.
    """
    indices = tuple(check_index(i, mu.size, "indices") for i in indices)
    _check_tuple_length(mu, len(indices))
    if len(set(indices)) != len(indices):
        return 0.0
    probability = 1.0
    drawn_mass = 0.0
    for index in indices:
        weight = mu[index]
        if weight == 0:
            return 0.0
        denominator = 1 - drawn_mass
        if denominator <= DENOMINATOR_TOL:
            raise ValueError("Denominator underflow in the sampling-without-replacement pmf.")
        probability *= weight / denominator
        drawn_mass += weight
    return probability


def iter_swor(mu, k):
    """Enumerate ``(tuple, probability)`` over ordered distinct ``k``-tuples of the support of ``mu``."""
    _check_tuple_length(mu, k)
    for indices in itertools.permutations(mu.support, k):
        yield indices, swor_pmf(mu, indices)


def swor_marginal_check(mu, k):
    """Return the max deviation of the marginal identity ``sum_i mu*^{k+1}(t, i) = mu*^k(t)``."""
    k = check_integer(k, "k", minimum=0)
    _check_tuple_length(mu, k + 1)
    support = mu.support
    deviation = 0.0
    for indices, probability in iter_swor(mu, k):
        extended = sum(swor_pmf(mu, (*indices, i)) for i in support if i not in indices)
        deviation = max(deviation, abs(extended - probability))
    return deviation


def swor_sample(mu, k, seed=None):
    """Draw an ordered ``k``-tuple without replacement from ``mu``.

    Parameters
    ----------
    mu : Pmf
        Sampling distribution.
    k : int
        Tuple length, at most the support size.
    seed : int, sequence of int or numpy.random.Generator, optional
        Seed or generator.

    Returns
    -------
    tuple of int

    """
    k = check_integer(k, "k", minimum=0)
    _check_tuple_length(mu, k)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    weights = np.array(mu.probabilities)
    draws = []
    for _ in range(k):
        index = int(rng.choice(mu.size, p=weights / weights.sum()))
        draws.append(index)
        weights[index] = 0.0
    return tuple(draws)


def _distinct_product_normalization(mu, m):
    return sum(math.prod(mu[i] for i in indices) for indices in itertools.permutations(range(mu.size), m))


def distinct_product_pmf(mu, indices):
    """Product law normalized over distinct tuples, ``prod mu(i_l) / sum_distinct prod mu``.

    This law does not satisfy the marginal identity of sampling without replacement and is
    only used to demonstrate that failure.
    """
    indices = tuple(check_index(i, mu.size, "indices") for i in indices)
    if len(set(indices)) != len(indices):
        return 0.0
    normalization = _distinct_product_normalization(mu, len(indices))
    return math.prod(mu[i] for i in indices) / normalization


def distinct_product_marginal_deviation(mu, k):
    """Max deviation of the marginal identity for :py:func:`distinct_product_pmf`."""
    k = check_integer(k, "k", minimum=1)
    if k + 1 > mu.size:
        raise ValueError("The tuple length k + 1 exceeds the number of outcomes.")
    norm_k = _distinct_product_normalization(mu, k)
    norm_k1 = _distinct_product_normalization(mu, k + 1)
    deviation = 0.0
    for indices in itertools.permutations(range(mu.size), k):
        weight = math.prod(mu[i] for i in indices)
        extended = sum(weight * mu[i] for i in range(mu.size) if i not in indices) / norm_k1
        deviation = max(deviation, abs(extended - weight / norm_k))
    return deviation


####--------------------------------------------------------------------------.
#### Joint distributions and entropies


class JointDistribution:
    """Probability table of ``n`` classical variables with ``d`` outcomes each.

    The table has ``n`` axes of length ``d``; axis ``i`` is variable ``X_i``.
    """

    def __init__(self, table, tol=1e-10):
        table = np.array(table, dtype=float)
        if table.ndim < 1 or len(set(table.shape)) != 1:
            raise ValueError(f"The probability table must have n equal axes. Got shape {table.shape}.")
        num_outcomes = table.shape[0]
        if num_outcomes < 1:
            raise ValueError("Each variable needs at least one outcome.")
        if table.ndim * math.log2(max(num_outcomes, 1)) > JOINT_MAX_BITS:
            raise ValueError(f"The table exceeds {JOINT_MAX_BITS} bits (n * log2(d)).")
        if np.any(table < 0) or not np.all(np.isfinite(table)):
            raise ValueError("Probabilities must be finite and nonnegative.")
        if abs(table.sum() - 1) > tol:
            raise ValueError(f"Probabilities must sum to 1. Got {table.sum()}.")
        table.flags.writeable = False
        self.table = table
        self._entropies = {}

    @classmethod
    def product(cls, marginals):
        """Independent joint distribution of the given single-variable pmfs."""
        table = np.ones(())
        for marginal in marginals:
            table = np.multiply.outer(table, np.asarray(marginal, dtype=float))
        return cls(table)

    @classmethod
    def random(cls, num_variables, num_outcomes, rng):
        """Draw a table uniformly from the probability simplex."""
        size = num_outcomes**num_variables
        return cls(rng.dirichlet(np.ones(size)).reshape((num_outcomes,) * num_variables))

    @property
    def num_variables(self):
        return self.table.ndim

    @property
    def num_outcomes(self):
        return self.table.shape[0]

    def _check_indices(self, indices, name):
        if isinstance(indices, (int, np.integer)):
            indices = (indices,)
        return check_distinct_indices(indices, self.num_variables, name)

    def marginal(self, indices):
        """Return the marginal table of ``indices``, axes in the given order."""
        indices = self._check_indices(indices, "indices")
        summed = tuple(i for i in range(self.num_variables) if i not in indices)
        marginal = self.table.sum(axis=summed) if summed else self.table
        kept = sorted(indices)
        return np.transpose(marginal, [kept.index(i) for i in indices])

    def entropy(self, indices):
        """Shannon entropy (nats) of the variables ``indices``."""
        key = tuple(sorted(self._check_indices(indices, "indices")))
        if key not in self._entropies:
            probabilities = self.marginal(key) if key else np.ones(1)
            self._entropies[key] = float(np.sum(scipy.special.entr(probabilities)))
        return self._entropies[key]


def mutual_information(p, A, B):
    """Return ``I(X_A : X_B) = S(A) + S(B) - S(A u B)`` in nats."""
    A = p._check_indices(A, "A")
    B = p._check_indices(B, "B")
    if set(A) & set(B):
        raise ValueError(f"The index sets must be disjoint. Got A={A}, B={B}.")
    return p.entropy(A) + p.entropy(B) - p.entropy(A + B)


def _mutual_information_2d(tables):
    """Mutual information of a stack of 2D tables of shape ``(d, d, m)``."""
    joint = np.sum(scipy.special.entr(tables), axis=(0, 1))
    left = np.sum(scipy.special.entr(tables.sum(axis=1)), axis=0)
    right = np.sum(scipy.special.entr(tables.sum(axis=0)), axis=0)
    return left + right - joint


def conditional_mutual_information(p, a, b, C=()):
    """Return ``I(X_a : X_b | X_C) = E_{x ~ p^C} I(X_a : X_b)_{p_x}`` in nats.

    Conditioning outcomes with probability below 1e-14 are skipped and the remaining mass
    renormalized. The value is 0 when ``a`` or ``b`` belongs to ``C``.
    """
    a = check_index(a, p.num_variables, "a")
    b = check_index(b, p.num_variables, "b")
    if a == b:
        raise ValueError(f"Index collision: a and b are both {a}.")
    C = p._check_indices(tuple(C), "C")
    if a in C or b in C:
        return 0.0
    if len(C) == 0:
        return mutual_information(p, (a,), (b,))
    d = p.num_outcomes
    marginal = p.marginal((a, b, *C)).reshape(d, d, -1)
    conditioning = marginal.sum(axis=(0, 1))
    mask = conditioning >= CONDITIONING_TOL
    weights = conditioning[mask] / conditioning[mask].sum()
    conditionals = marginal[:, :, mask] / conditioning[mask]
    return float(np.sum(weights * _mutual_information_2d(conditionals)))


####--------------------------------------------------------------------------.
#### Decoupling


@dataclass
class DecouplingResult:
    """Selected conditioning set and the averages of the decoupling inequality."""

    k_prime: int
    conditioning: tuple
    value: float
    score: float
    average: float
    information_bound: float
    log_bound: float
    exhaustive: bool

    def to_dict(self):
        return {
            "k_prime": self.k_prime,
            "C": list(self.conditioning),
            "value": self.value,
            "score": self.score,
            "average": self.average,
            "information_bound": self.information_bound,
            "log_bound": self.log_bound,
            "exhaustive": self.exhaustive,
        }


def weighted_conditional_information(p, pi, mu, C):
    """Return ``sum_{a != b} pi(a) mu(b) I(X_a : X_b | X_C)``."""
    total = 0.0
    for a in pi.support:
        for b in mu.support:
            if a != b:
                total += pi[a] * mu[b] * conditional_mutual_information(p, a, b, C)
    return total


def _candidate_tuples(mu, k, exhaustive, num_samples, seed):
    """Return, per conditioning size ``k' < k``, the tuples and their averaging weights."""
    candidates = []
    for k_prime in range(k):
        if exhaustive:
            tuples_weights = [(indices, w) for indices, w in iter_swor(mu, k_prime) if w > 0]
        else:
            rng = np.random.default_rng([seed, k_prime])
            tuples_weights = [(swor_sample(mu, k_prime, rng), 1 / num_samples) for _ in range(num_samples)]
        candidates.append(tuples_weights)
    return candidates


def decoupling_select(p, pi, mu, k, method="auto", num_samples=2000, seed=0, threads=1, objective=None):
    """Select a conditioning set that decouples the variables on average.

    Evaluates ``(1/k) sum_{k' < k} E_{C ~ mu*^{k'}} sum_{a != b} pi(a) mu(b) I(X_a : X_b | X_C)``
    and returns the minimizing ``(k', C)``. For exhaustive evaluation the average is checked
    against ``(1/k) E_{i ~ pi} I(X_i : X_{-i}) <= ln(d) / k``.

    Parameters
    ----------
    p : JointDistribution
        Joint distribution of ``n`` variables.
    pi, mu : Pmf
        Distributions of the first and second variable of each pair.
    k : int
        Averaging range, ``1 <= k < |supp(mu)|``.
    method : str
        ``"exhaustive"``, ``"sampled"`` or ``"auto"`` (exhaustive when ``n log2(d) <= 16``).
    num_samples : int
        Tuples per conditioning size in sampled mode.
    seed : int
        Seed of the sampled mode.
    threads : int
        Number of threads used to evaluate distinct conditioning sets.
    objective : callable, optional
        ``objective(C, value)`` ranking the candidates. The default ranks by ``value``.

    Returns
    -------
    DecouplingResult

    """
    n = p.num_variables
    if pi.size != n or mu.size != n:
        raise ValueError("'pi' and 'mu' must be defined on the variables of 'p'.")
    k = check_integer(k, "k", minimum=1)
    if k >= mu.support_size:
        raise ValueError(f"'k' must be smaller than the support of 'mu' ({mu.support_size}). Got {k}.")
    valid_methods = ["auto", "exhaustive", "sampled"]
    if method not in valid_methods:
        raise ValueError(f"Invalid method '{method}'. Valid methods are {valid_methods}.")
    if method == "auto":
        method = "exhaustive" if n * math.log2(p.num_outcomes) <= EXHAUSTIVE_MAX_BITS else "sampled"
    exhaustive = method == "exhaustive"

    candidates = _candidate_tuples(mu, k, exhaustive, num_samples, seed)
    unique_sets = list(dict.fromkeys(frozenset(indices) for tuples in candidates for indices, _ in tuples))
    values = compute_ordered(
        weighted_conditional_information,
        [(p, pi, mu, tuple(sorted(C))) for C in unique_sets],
        threads=threads,
    )
    value_of = dict(zip(unique_sets, values, strict=True))

    average = 0.0
    best = None
    for k_prime, tuples in enumerate(candidates):
        for indices, weight in tuples:
            value = value_of[frozenset(indices)]
            average += weight * value / k
            score = value if objective is None else objective(indices, value)
            if best is None or score < best[3]:
                best = (k_prime, tuple(indices), value, score)

    d = p.num_outcomes
    information_bound = sum(
        pi[i] * mutual_information(p, (i,), tuple(j for j in range(n) if j != i)) for i in pi.support
    ) / k
    log_bound = math.log(d) / k
    if information_bound > log_bound + 1e-10:
        raise BoundViolationError(f"E_pi I(X_i : X_-i) / k = {information_bound} exceeds ln(d) / k = {log_bound}.")
    if exhaustive and average > information_bound + 1e-10:
        raise BoundViolationError(f"Decoupling average {average} exceeds {information_bound}.")
    if not exhaustive and average > information_bound + 1e-10:
        logger.warning("Sampled decoupling average %.6g exceeds the information bound %.6g.", average, information_bound)
    logger.debug("Decoupling: k'=%d C=%s value=%.3e average=%.3e.", best[0], best[1], best[2], average)
    return DecouplingResult(
        k_prime=best[0],
        conditioning=best[1],
        value=float(best[2]),
        score=float(best[3]),
        average=float(average),
        information_bound=float(information_bound),
        log_bound=log_bound,
        exhaustive=exhaustive,
    )
