"""Likelihood second moments, the truncated low-degree norm, intersection
sampling, and risk lower bounds.

The second moment of the likelihood ratio under the null has three
equivalent forms, all implemented:

    E[L^2] = sum over edge subsets H of a fixed copy, lambda^(2|e(H)|) P[H in copy]
           = E[(1 + lambda^2)^(edges shared by two independent copies)]
           = truncated-norm sum at saturating degree.

Exact paths stay in rational arithmetic whenever lambda^2 is a Fraction;
Monte-Carlo paths are float with a reported standard error.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from .counting import containment_probability, copies_in_complete
from .errors import (
    BudgetExceededError,
    DegenerateQError,
    InvalidMomentError,
    PatternTooLargeError,
)
from .graphs import Graph
from .invariants import isomorphic
from .sampling import batched_copy_images

SUBGRAPH_SUM_BUDGET = 1 << 20
PAIR_ENUM_MAX_VERTICES = 8
MC_CHUNK = 1 << 16

EXACT_SUBGRAPH_SUM = "exact_subgraph_sum"
EXACT_INTERSECTION_MGF = "exact_intersection_mgf"
MONTE_CARLO = "monte_carlo"


def chi_square_bernoulli(p, q):
    """Bernoulli chi-square divergence (p-q)^2 / (q(1-q)).

    This is the squared signal strength lambda^2. Fraction inputs give a
    Fraction back; floats give a float.
    """
    if not 0 < q < 1:
        raise DegenerateQError(f"q must lie in (0,1), got {q}")
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0,1], got {p}")
    return (p - q) ** 2 / (q * (1 - q))


@dataclass(frozen=True)
class MomentParams:
    """Inputs for the moment computations: instance size, signal strength
    lambda^2, and the planted pattern."""

    n: int
    lambda_sq: float | Fraction
    pattern: Graph

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.lambda_sq < 0:
            raise ValueError(f"lambda_sq must be >= 0, got {self.lambda_sq}")
        if self.pattern.n > self.n:
            raise PatternTooLargeError(
                f"pattern on {self.pattern.n} vertices does not fit in n={self.n}"
            )
        if self.pattern.isolated_vertices():
            raise ValueError("pattern must have no isolated vertices")

    @classmethod
    def from_probabilities(cls, n: int, p, q, pattern: Graph) -> "MomentParams":
        return cls(n=n, lambda_sq=chi_square_bernoulli(p, q), pattern=pattern)


@dataclass(frozen=True)
class LdpConfig:
    """Truncation degree for the low-degree norm."""

    degree: int

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"degree must be >= 0, got {self.degree}")


@dataclass(frozen=True)
class MomentResult:
    value: float | Fraction
    method: str
    std_error: float | None = None

    def __post_init__(self):
        if self.value < 1 - 1e-9:
            raise InvalidMomentError(
                f"second moment of a unit-mean likelihood is >= 1, got {self.value}"
            )


@dataclass
class IntersectionHistogram:
    """Empirical law of the number of edges shared by a random copy and a
    fixed copy of the pattern."""

    counts: dict[int, int]
    trials: int

    def probabilities(self) -> dict[int, float]:
        return {k: c / self.trials for k, c in sorted(self.counts.items())}


def intersection_distribution(
    pattern: Graph, n: int, trials: int, rng: np.random.Generator
) -> IntersectionHistogram:
    """Sample |e(copy ∩ fixed copy)| with the fixed copy at identity placement."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    counter: Counter[int] = Counter()
    for chunk in _intersection_chunks(pattern, n, trials, rng):
        counter.update(chunk.tolist())
    return IntersectionHistogram(counts=dict(counter), trials=trials)


def second_moment_exact(mp: MomentParams) -> MomentResult:
    """E[L^2] by exact summation over edge subsets of a fixed copy."""
    value = _subgraph_sum(mp.pattern, mp.n, mp.lambda_sq, mp.pattern.num_edges)
    return MomentResult(value=value, method=EXACT_SUBGRAPH_SUM)


def ldp_norm_sq(mp: MomentParams, cfg: LdpConfig) -> MomentResult:
    """Squared norm of the degree-<=D projection of the likelihood ratio.

    Identical to the second-moment subgraph sum, truncated to subsets of at
    most D edges; saturating D recovers E[L^2] exactly.
    """
    value = _subgraph_sum(mp.pattern, mp.n, mp.lambda_sq, cfg.degree)
    return MomentResult(value=value, method=EXACT_SUBGRAPH_SUM)


def second_moment_pair_enum(mp: MomentParams) -> MomentResult:
    """E[(1+lambda^2)^intersection] by enumerating every copy against a fixed
    one. Independent of the subgraph sum; exact on small instances."""
    pattern, n = mp.pattern, mp.n
    if n > PAIR_ENUM_MAX_VERTICES:
        raise BudgetExceededError(
            f"pair enumeration limited to n <= {PAIR_ENUM_MAX_VERTICES}, got {n}"
        )
    fixed = set(pattern.edges)
    seen: set[frozenset[tuple[int, int]]] = set()
    base = 1 + Fraction(mp.lambda_sq)
    total = Fraction(0)
    for images in permutations(range(n), pattern.n):
        edges = frozenset(
            (min(images[a], images[b]), max(images[a], images[b]))
            for a, b in pattern.edges
        )
        if edges in seen:
            continue
        seen.add(edges)
        total += base ** len(edges & fixed)
    assert len(seen) == copies_in_complete(pattern, n)
    return MomentResult(value=total / len(seen), method=EXACT_INTERSECTION_MGF)


def second_moment_mc(
    mp: MomentParams, trials: int, rng: np.random.Generator
) -> MomentResult:
    """Sample mean of (1+lambda^2)^intersection with its standard error."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    base = 1 + float(mp.lambda_sq)
    total = 0.0
    total_sq = 0.0
    for chunk in _intersection_chunks(mp.pattern, mp.n, trials, rng):
        vals = np.power(base, chunk)
        total += float(vals.sum())
        total_sq += float((vals * vals).sum())
    mean = total / trials
    if trials > 1:
        variance = max(0.0, (total_sq - trials * mean * mean) / (trials - 1))
        std_error = math.sqrt(variance / trials)
    else:
        std_error = 0.0
    return MomentResult(value=mean, method=MONTE_CARLO, std_error=std_error)


def risk_lower_bounds(second_moment, p, q, num_planted_edges: int):
    """(sm_bound, tv_edge_bound): two lower bounds on the optimal risk.

    sm_bound = max(1 - sqrt(E[L^2]-1)/2, 1/(2 E[L^2])) from the second
    moment; tv_edge_bound = 1 - |p-q|*|e(Gamma)| from convexity plus
    tensorization of total variation over the planted edges.
    """
    if second_moment < 1:
        raise InvalidMomentError(
            f"second moment must be >= 1, got {second_moment}"
        )
    sm = float(second_moment)
    sm_bound = max(1 - math.sqrt(sm - 1) / 2, 1 / (2 * sm))
    tv_edge_bound = max(0.0, 1 - abs(p - q) * num_planted_edges)
    return sm_bound, tv_edge_bound


def _intersection_chunks(pattern: Graph, n: int, trials: int, rng):
    """Yield int arrays of per-trial intersection edge counts, chunked."""
    fixed = np.zeros((n, n), dtype=bool)
    for u, v in pattern.edges:
        fixed[u, v] = fixed[v, u] = True
    done = 0
    while done < trials:
        b = min(MC_CHUNK, trials - done)
        images = batched_copy_images(pattern, n, b, rng)
        counts = np.zeros(b, dtype=np.int64)
        for a, c in pattern.edges:
            counts += fixed[images[:, a], images[:, c]]
        done += b
        yield counts


def _subgraph_sum(pattern: Graph, n: int, lambda_sq, max_edges: int):
    """sum over edge subsets H with |e(H)| <= max_edges of
    lambda^(2|e(H)|) P[H inside a uniform copy].

    Subsets are grouped into isomorphism classes (cheap relabeled-edge key,
    then a degree-signature bucket with an exact isomorphism check) so the
    containment probability is computed once per class.
    """
    edges = pattern.edges
    e = len(edges)
    depth = min(max_edges, e)
    budget = sum(math.comb(e, s) for s in range(depth + 1))
    if budget > SUBGRAPH_SUM_BUDGET:
        raise BudgetExceededError(
            f"{budget} edge subsets > budget {SUBGRAPH_SUM_BUDGET}"
        )
    exact = isinstance(lambda_sq, (Fraction, int))
    lam = Fraction(lambda_sq) if exact else float(lambda_sq)
    total = Fraction(1) if exact else 1.0

    # class key (relabeled edge tuple) -> index into class tables
    key_to_class: dict[tuple, int] = {}
    # degree-signature -> list of class indices, for the isomorphism fallback
    signature_buckets: dict[tuple, list[int]] = {}
    class_reps: list[Graph] = []
    class_weights: list[int] = []

    for size in range(1, depth + 1):
        for subset in combinations(edges, size):
            key = _relabel_key(subset)
            idx = key_to_class.get(key)
            if idx is None:
                rep = _subset_graph(subset)
                sig = (rep.n, rep.num_edges, tuple(sorted(rep.degrees())))
                idx = -1
                for candidate in signature_buckets.get(sig, ()):
                    if isomorphic(class_reps[candidate], rep):
                        idx = candidate
                        break
                if idx < 0:
                    idx = len(class_reps)
                    class_reps.append(rep)
                    class_weights.append(0)
                    signature_buckets.setdefault(sig, []).append(idx)
                key_to_class[key] = idx
            class_weights[idx] += 1

    for rep, weight in zip(class_reps, class_weights):
        prob = containment_probability(rep, pattern, n)
        if not exact:
            prob = float(prob)
        total += weight * lam ** rep.num_edges * prob
    return total


def _relabel_key(subset: tuple[tuple[int, int], ...]) -> tuple:
    """Edge tuple after renaming vertices to 0,1,... in sorted label order.

    Equal keys mean identical labeled graphs, so most isomorphic subsets
    collapse before any explicit isomorphism test runs.
    """
    vertices = sorted({v for edge in subset for v in edge})
    rename = {v: i for i, v in enumerate(vertices)}
    return tuple(sorted((rename[u], rename[v]) for u, v in subset))


def _subset_graph(subset: tuple[tuple[int, int], ...]) -> Graph:
    vertices = sorted({v for edge in subset for v in edge})
    rename = {v: i for i, v in enumerate(vertices)}
    return Graph(
        len(vertices), [(rename[u], rename[v]) for u, v in subset]
    )
