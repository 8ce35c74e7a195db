"""Exact counting oracles: copies of a pattern in a host graph, copies in
the complete graph, containment probabilities for a uniformly random copy,
spanning trees, and connected vertex sets.

All results are exact integers or rationals. Enumeration work is metered
against explicit budgets; exceeding one raises BudgetExceededError.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .errors import BudgetExceededError, DisconnectedError
from .graphs import Graph
from .invariants import automorphism_count

EMBEDDING_BUDGET_DEFAULT = 10_000_000
CONNECTED_SETS_BUDGET_DEFAULT = 10_000_000
SPANNING_TREE_VERTEX_LIMIT = 20


def count_copies(
    pattern: Graph,
    host: Graph,
    budget: int = EMBEDDING_BUDGET_DEFAULT,
    aut_budget: int | None = None,
) -> int:
    """Number of distinct subgraphs of `host` isomorphic to `pattern`.

    Counts edge-preserving injective maps by backtracking and divides by
    |Aut(pattern)|, since each copy is the image of exactly that many
    embeddings. The budget meters attempted partial assignments.
    """
    if pattern.isolated_vertices():
        raise ValueError("pattern must have no isolated vertices")
    if pattern.n > host.n:
        raise ValueError("pattern has more vertices than the host")
    if pattern.n == 0:
        return 1
    embeddings = _count_embeddings(pattern, host, budget)
    if aut_budget is None:
        aut = automorphism_count(pattern)
    else:
        aut = automorphism_count(pattern, budget=aut_budget)
    assert embeddings % aut == 0
    return embeddings // aut


def copies_in_complete(pattern: Graph, n: int, aut_budget: int | None = None) -> int:
    """Number of copies of `pattern` in the complete graph on n vertices.

    Equals C(n, k) * k! / |Aut(pattern)| for k pattern vertices: choose the
    image, place it in every way, and collapse automorphic placements.
    """
    k = pattern.n
    if k > n:
        raise ValueError(f"pattern on {k} vertices cannot embed in K_{n}")
    if aut_budget is None:
        aut = automorphism_count(pattern)
    else:
        aut = automorphism_count(pattern, budget=aut_budget)
    return comb(n, k) * factorial(k) // aut


def containment_probability(
    sub: Graph,
    pattern: Graph,
    n: int,
    budget: int = EMBEDDING_BUDGET_DEFAULT,
) -> Fraction:
    """P[fixed copy of `sub` lies inside a uniform copy of `pattern` in K_n].

    A double count of pairs (copy of sub, copy of pattern containing it)
    gives N(sub, pattern) / |copies of sub in K_n|. By symmetry the same
    value is the probability that a uniform copy of `pattern` contains any
    fixed placement of `sub`.
    """
    if sub.isolated_vertices() or pattern.isolated_vertices():
        raise ValueError("containment probability requires pattern graphs")
    if pattern.n > n:
        raise ValueError(f"pattern on {pattern.n} vertices cannot embed in K_{n}")
    if sub.n > pattern.n or sub.num_edges > pattern.num_edges:
        return Fraction(0)
    hits = count_copies(sub, pattern, budget=budget)
    return Fraction(hits, copies_in_complete(sub, n))


def _embedding_order(pattern: Graph) -> list[int]:
    """Vertex order that keeps each prefix as connected as possible."""
    order: list[int] = []
    placed: set[int] = set()
    remaining = set(range(pattern.n))
    while remaining:
        frontier = {v for v in remaining if placed & pattern.neighbors(v)}
        pool = frontier if frontier else remaining
        v = max(pool, key=lambda u: (pattern.degree(u), -u))
        order.append(v)
        placed.add(v)
        remaining.remove(v)
    return order


def _count_embeddings(pattern: Graph, host: Graph, budget: int) -> int:
    order = _embedding_order(pattern)
    # Pattern neighbors already placed, by position in the order.
    position = {v: i for i, v in enumerate(order)}
    back_edges: list[list[int]] = []
    for i, v in enumerate(order):
        back_edges.append(
            [position[w] for w in pattern.neighbors(v) if position[w] < i]
        )
    degs = [pattern.degree(v) for v in order]
    host_vertices = range(host.n)

    attempts = 0
    images = [-1] * pattern.n
    used = [False] * host.n

    def extend(i: int) -> int:
        nonlocal attempts
        if i == pattern.n:
            return 1
        backs = back_edges[i]
        if backs:
            candidates = set(host.neighbors(images[backs[0]]))
            for j in backs[1:]:
                candidates &= host.neighbors(images[j])
        else:
            candidates = host_vertices
        total = 0
        for u in candidates:
            if used[u] or host.degree(u) < degs[i]:
                continue
            attempts += 1
            if attempts > budget:
                raise BudgetExceededError(
                    f"embedding budget of {budget} partial assignments exceeded"
                )
            images[i] = u
            used[u] = True
            total += extend(i + 1)
            used[u] = False
        images[i] = -1
        return total

    return extend(0)


def spanning_tree_count(g: Graph, budget: int = SPANNING_TREE_VERTEX_LIMIT) -> int:
    """Exact spanning tree count by the matrix-tree theorem.

    Evaluates one cofactor of the combinatorial Laplacian with fraction-free
    (Bareiss) elimination, so every intermediate value is an integer and the
    result is exact at any size the budget admits.
    """
    if g.n > budget:
        raise BudgetExceededError(
            f"spanning tree budget: {g.n} vertices > budget {budget}"
        )
    if not g.is_connected():
        raise DisconnectedError("spanning trees exist only for connected graphs")
    if g.n <= 1:
        return 1
    size = g.n - 1
    lap = [[0] * size for _ in range(size)]
    for v in range(size):
        lap[v][v] = g.degree(v)
    for u, v in g.edges:
        if u < size and v < size:
            lap[u][v] -= 1
            lap[v][u] -= 1
    return _bareiss_determinant(lap)


def _bareiss_determinant(m: list[list[int]]) -> int:
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def connected_sets_count(
    g: Graph,
    size: int,
    anchor: int,
    budget: int = CONNECTED_SETS_BUDGET_DEFAULT,
) -> int:
    """Number of connected vertex sets of the given size containing `anchor`.

    Grow-set enumeration: extend the current set one frontier vertex at a
    time, forbidding previously branched-on vertices so each set is visited
    exactly once. The budget meters recursion steps.
    """
    if not 0 <= anchor < g.n:
        raise ValueError(f"anchor {anchor} not a vertex of the graph")
    if not 1 <= size <= g.n:
        raise ValueError(f"set size {size} out of range 1..{g.n}")
    steps = 0

    def grow(current: frozenset[int], frontier: set[int], forbidden: set[int]) -> int:
        nonlocal steps
        if len(current) == size:
            return 1
        total = 0
        blocked = set(forbidden)
        for u in sorted(frontier):
            steps += 1
            if steps > budget:
                raise BudgetExceededError(
                    f"connected-set budget of {budget} steps exceeded"
                )
            grown = current | {u}
            new_frontier = (frontier | g.neighbors(u)) - grown - blocked
            new_frontier.discard(u)
            total += grow(grown, new_frontier, blocked)
            blocked.add(u)
        return total

    start = frozenset((anchor,))
    return grow(start, set(g.neighbors(anchor)), {anchor})
