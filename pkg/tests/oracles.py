"""Brute-force reference implementations used to cross-check the package.

Everything here is the dumbest correct computation: exhaustive enumeration
over vertex subsets, permutations, edge subsets, or (for the exact risk
oracle) the entire observation space. None of it shares code or algorithmic
ideas with the implementations under test.
"""

from fractions import Fraction
from itertools import combinations, permutations
from math import comb

import numpy as np

from plantedlab import Graph


def random_graph(rng, n: int, p_edge: float) -> Graph:
    edges = [e for e in combinations(range(n), 2) if rng.random() < p_edge]
    return Graph(n, edges)


def random_connected_graph(rng, n: int, p_edge: float) -> Graph:
    """ER graph forced connected by overlaying a random spanning tree."""
    edges = {e for e in combinations(range(n), 2) if rng.random() < p_edge}
    order = list(rng.permutation(n))
    for i in range(1, n):
        u = order[i]
        v = order[rng.integers(0, i)]
        edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges))


def random_pattern(rng, max_vertices: int, p_edge: float = 0.5) -> Graph:
    """Nonempty graph without isolated vertices, as the planted model needs."""
    while True:
        n = int(rng.integers(2, max_vertices + 1))
        g = random_graph(rng, n, p_edge)
        if g.num_edges:
            return g.without_isolated()


def brute_max_density(g: Graph) -> Fraction:
    best = Fraction(0)
    verts = range(g.n)
    for size in range(1, g.n + 1):
        for subset in combinations(verts, size):
            inside = set(subset)
            edges = sum(1 for u, v in g.edges if u in inside and v in inside)
            best = max(best, Fraction(edges, size))
    return best


def brute_densest_vertex_set(g: Graph) -> list[int]:
    """Smallest, then lexicographically smallest, maximizer of density."""
    best = (Fraction(-1), 0, ())
    for size in range(1, g.n + 1):
        for subset in combinations(range(g.n), size):
            inside = set(subset)
            edges = sum(1 for u, v in g.edges if u in inside and v in inside)
            key = (Fraction(edges, size), -size, tuple(-v for v in subset))
            if key > best:
                best = key
    return sorted(-v for v in best[2])


def brute_vertex_cover(g: Graph) -> int:
    if not g.edges:
        return 0
    for size in range(g.n + 1):
        for subset in combinations(range(g.n), size):
            inside = set(subset)
            if all(u in inside or v in inside for u, v in g.edges):
                return size
    raise AssertionError("unreachable")


def brute_automorphisms(g: Graph) -> int:
    edges = set(g.edges)
    count = 0
    for perm in permutations(range(g.n)):
        mapped = {(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges}
        if mapped == edges:
            count += 1
    return count


def brute_copies(pattern: Graph, host: Graph) -> int:
    """Distinct subgraphs of `host` isomorphic to `pattern` (as edge sets)."""
    p = pattern.without_isolated()
    host_edges = set(host.edges)
    seen = set()
    for verts in permutations(range(host.n), p.n):
        mapped = frozenset(
            (min(verts[u], verts[v]), max(verts[u], verts[v])) for u, v in p.edges
        )
        if mapped <= host_edges:
            seen.add(mapped)
    return len(seen)


def brute_copies_in_complete(pattern: Graph, n: int) -> int:
    p = pattern.without_isolated()
    seen = set()
    for verts in permutations(range(n), p.n):
        seen.add(
            frozenset(
                (min(verts[u], verts[v]), max(verts[u], verts[v]))
                for u, v in p.edges
            )
        )
    return len(seen)


def brute_connected_sets(g: Graph, size: int, anchor: int) -> int:
    count = 0
    for subset in combinations(range(g.n), size):
        if anchor in subset and g.induced_subgraph(subset).is_connected():
            count += 1
    return count


def brute_spanning_trees(g: Graph) -> int:
    if g.n <= 1:
        return 1
    count = 0
    for subset in combinations(g.edges, g.n - 1):
        t = Graph(g.n, subset)
        if t.is_connected():
            count += 1
    return count


def brute_scan_statistic(obs_adj: np.ndarray, target: Graph) -> int:
    """max over injective placements of `target` of the observed edge count."""
    t = target.without_isolated()
    n = obs_adj.shape[0]
    best = 0
    for verts in permutations(range(n), t.n):
        hits = sum(1 for u, v in t.edges if obs_adj[verts[u], verts[v]])
        best = max(best, hits)
    return best


def hypergeom_pmf(total: int, marked: int, drawn: int) -> dict[int, Fraction]:
    """P[H = h] for H ~ Hypergeometric(total, marked, drawn), exact."""
    pmf = {}
    for h in range(max(0, drawn + marked - total), min(marked, drawn) + 1):
        pmf[h] = Fraction(
            comb(marked, h) * comb(total - marked, drawn - h), comb(total, drawn)
        )
    return pmf


# ---------------------------------------------------------------------------
# Exact distributions over the full observation space (small n only).
# ---------------------------------------------------------------------------

def all_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def copy_masks(pattern: Graph, n: int) -> list[int]:
    """Every copy of `pattern` in K_n as a bitmask over all_pairs(n)."""
    p = pattern.without_isolated()
    bit = {pair: i for i, pair in enumerate(all_pairs(n))}
    seen = set()
    for verts in permutations(range(n), p.n):
        mask = 0
        for u, v in p.edges:
            a, b = verts[u], verts[v]
            mask |= 1 << bit[(min(a, b), max(a, b))]
        seen.add(mask)
    return sorted(seen)


def exact_distributions(
    pattern: Graph, n: int, p: Fraction, q: Fraction
) -> tuple[list[Fraction], list[Fraction]]:
    """(P_H0, P_H1) over all 2^C(n,2) observations, exact rationals.

    P_H1 is the uniform mixture over planted copies: copy edges flip with
    probability p, all other pairs with probability q.
    """
    pairs = all_pairs(n)
    total_pairs = len(pairs)
    masks = copy_masks(pattern, n)
    m = pattern.num_edges
    # L(G) summand for a copy sharing a edges with G is r[a] below; P1 = P0*L
    ratio = [
        (Fraction(p) / q) ** a * (Fraction(1 - p) / (1 - q)) ** (m - a)
        for a in range(m + 1)
    ]
    q_pow = [Fraction(q) ** i * Fraction(1 - q) ** (total_pairs - i) for i in range(total_pairs + 1)]
    null = []
    planted = []
    for obs in range(1 << total_pairs):
        edges = obs.bit_count()
        p0 = q_pow[edges]
        likelihood = Fraction(0)
        for mask in masks:
            likelihood += ratio[(obs & mask).bit_count()]
        likelihood /= len(masks)
        null.append(p0)
        planted.append(p0 * likelihood)
    return null, planted


def tv_distance(null: list[Fraction], planted: list[Fraction]) -> Fraction:
    return sum(abs(a - b) for a, b in zip(null, planted)) / 2


def exact_risk(
    decisions: list[int], null: list[Fraction], planted: list[Fraction]
) -> Fraction:
    type1 = sum(p0 for p0, d in zip(null, decisions) if d)
    type2 = sum(p1 for p1, d in zip(planted, decisions) if not d)
    return type1 + type2


def brute_second_moment(
    pattern: Graph, n: int, p: Fraction, q: Fraction
) -> Fraction:
    """E_H0[L^2] = sum_G P1(G)^2 / P0(G), straight from the definition."""
    null, planted = exact_distributions(pattern, n, p, q)
    return sum(p1 * p1 / p0 for p0, p1 in zip(null, planted))
