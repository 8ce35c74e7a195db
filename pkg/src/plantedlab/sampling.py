"""Seeded generation of null observations, planted observations, and uniform
random copies of a pattern graph in the complete graph.

Randomness contract: every sampler takes a numpy Generator. Use
stream(seed, *indices) to derive the generator for one trial; the derivation
is pure, so trial k is reproducible regardless of execution order. Observation
matrices are filled from one uniform draw per unordered pair, in row-major
upper-triangle order, after the copy (if any) has been drawn.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateQError, PatternTooLargeError
from .graphs import Graph


def stream(seed: int, *indices: int) -> np.random.Generator:
    """Deterministic derived generator for one trial.

    stream(seed) is the root stream; stream(seed, h, k) is the stream for
    trial k under hypothesis h. Distinct index tuples give independent
    streams (SeedSequence spawn keys).
    """
    ss = np.random.SeedSequence(seed, spawn_key=tuple(indices))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class ModelParams:
    """The hypothesis pair: H0 is G(n, q); H1 plants a uniform copy of
    `pattern` whose edges appear with probability p, all others with q.

    p = q is accepted as the degenerate plant (H1 then equals H0); the
    interesting models have q < p.
    """

    n: int
    p: float
    q: float
    pattern: Graph

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 < self.q < 1:
            raise DegenerateQError(f"q must lie in (0,1), got {self.q}")
        if not self.q <= self.p <= 1:
            raise ValueError(f"need q <= p <= 1, got p={self.p}, q={self.q}")
        if self.pattern.num_edges == 0:
            raise ValueError("pattern must have at least one edge")
        if self.pattern.isolated_vertices():
            raise ValueError("pattern must have no isolated vertices")
        if self.pattern.n > self.n:
            raise PatternTooLargeError(
                f"pattern on {self.pattern.n} vertices does not fit in n={self.n}"
            )


class Observation:
    """A sampled graph on [0, n) as a dense symmetric boolean matrix."""

    __slots__ = ("n", "adjacency")

    def __init__(self, adjacency: np.ndarray):
        a = np.asarray(adjacency, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if a.diagonal().any():
            raise ValueError("adjacency has a nonzero diagonal")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency is not symmetric")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "n", a.shape[0])
        object.__setattr__(self, "adjacency", a)

    def __setattr__(self, name, value):
        raise AttributeError("Observation is immutable")

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(np.triu(self.adjacency, 1)))

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1, dtype=np.int64)

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def edges(self) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(u), int(v)) for u, v in zip(rows, cols)]

    def to_graph(self) -> Graph:
        return Graph(self.n, self.edges())

    @classmethod
    def from_graph(cls, g: Graph) -> "Observation":
        a = np.zeros((g.n, g.n), dtype=bool)
        for u, v in g.edges:
            a[u, v] = a[v, u] = True
        return cls(a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Observation):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash((self.n, self.adjacency.tobytes()))

    def __repr__(self) -> str:
        return f"Observation(n={self.n}, edges={self.num_edges})"


@dataclass(frozen=True)
class EmbeddedCopy:
    """A placed copy of a pattern: vertex_map[i] is the host vertex carrying
    pattern vertex i; edge_set is the image of the pattern's edges."""

    vertex_map: tuple[int, ...]
    edge_set: frozenset[tuple[int, int]]

    @classmethod
    def from_map(cls, pattern: Graph, images: tuple[int, ...]) -> "EmbeddedCopy":
        if len(set(images)) != len(images):
            raise ValueError("vertex map must be injective")
        edges = frozenset(
            (min(images[u], images[v]), max(images[u], images[v]))
            for u, v in pattern.edges
        )
        return cls(vertex_map=tuple(int(x) for x in images), edge_set=edges)


def sample_null(n: int, q: float, rng: np.random.Generator) -> Observation:
    """One draw from G(n, q): each pair is an edge independently w.p. q."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= q <= 1:
        raise ValueError(f"q must lie in [0,1], got {q}")
    m = n * (n - 1) // 2
    bits = rng.random(m) < q
    return _observation_from_bits(n, bits)


def sample_uniform_copy(
    pattern: Graph, n: int, rng: np.random.Generator
) -> EmbeddedCopy:
    """A uniformly random copy of `pattern` in K_n.

    The vertex map is a uniform injection (a random permutation truncated to
    the pattern size); every copy is induced by exactly |Aut(pattern)| maps,
    so the induced copy is uniform over all copies.
    """
    if pattern.n > n:
        raise PatternTooLargeError(
            f"pattern on {pattern.n} vertices does not fit in n={n}"
        )
    images = tuple(int(v) for v in rng.permutation(n)[: pattern.n])
    return EmbeddedCopy.from_map(pattern, images)


def sample_planted(
    params: ModelParams, rng: np.random.Generator
) -> tuple[Observation, EmbeddedCopy]:
    """One draw from H1, returning the observation and the planted copy.

    Draw order is fixed: first the copy, then one uniform per pair compared
    against a per-pair threshold (p on copy edges, q elsewhere).
    """
    n = params.n
    copy = sample_uniform_copy(params.pattern, n, rng)
    m = n * (n - 1) // 2
    thresholds = np.full(m, params.q)
    if copy.edge_set:
        idx = np.fromiter(
            (_pair_index(u, v, n) for u, v in copy.edge_set),
            dtype=np.int64,
            count=len(copy.edge_set),
        )
        thresholds[idx] = params.p
    bits = rng.random(m) < thresholds
    return _observation_from_bits(n, bits), copy


def batched_copy_images(
    pattern: Graph, n: int, trials: int, rng: np.random.Generator
) -> np.ndarray:
    """(trials, |v(pattern)|) matrix of independent uniform injections.

    Row t is the vertex map of one uniform copy; rows are mutually
    independent. One vectorized call, so the draw is deterministic in
    (pattern size, n, trials) given the generator state.
    """
    if pattern.n > n:
        raise PatternTooLargeError(
            f"pattern on {pattern.n} vertices does not fit in n={n}"
        )
    base = np.tile(np.arange(n), (trials, 1))
    return rng.permuted(base, axis=1)[:, : pattern.n]


def _pair_index(u: int, v: int, n: int) -> int:
    """Position of the pair u < v in row-major upper-triangle order."""
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def _observation_from_bits(n: int, bits: np.ndarray) -> Observation:
    a = np.zeros((n, n), dtype=bool)
    a[np.triu_indices(n, 1)] = bits
    a |= a.T
    return Observation(a)
