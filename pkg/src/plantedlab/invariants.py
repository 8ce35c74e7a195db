"""Exact graph invariants: maximum subgraph density, densest subgraph,
vertex cover number, automorphism count, and an aggregate stats record.

Everything here is exact. Density values are rationals, counts are
arbitrary-precision integers, and every potentially expensive oracle takes an
explicit budget and raises BudgetExceededError instead of approximating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import BudgetExceededError, EmptyGraphError
from .graphs import Graph

DENSITY_EXHAUSTIVE_LIMIT = 14
COVER_BUDGET_DEFAULT = 40
AUT_BUDGET_DEFAULT = 10


@dataclass(frozen=True)
class GraphStats:
    """Every invariant the threshold formulas consume, computed exactly."""

    num_vertices: int
    num_edges: int
    max_degree: int
    density: Fraction
    max_subgraph_density: Fraction
    vertex_cover_number: int
    num_components: int
    automorphism_count: int


def graph_stats(
    g: Graph,
    cover_budget: int = COVER_BUDGET_DEFAULT,
    aut_budget: int = AUT_BUDGET_DEFAULT,
) -> GraphStats:
    if g.n == 0:
        raise EmptyGraphError("stats of the empty graph are undefined")
    return GraphStats(
        num_vertices=g.n,
        num_edges=g.num_edges,
        max_degree=g.max_degree(),
        density=Fraction(g.num_edges, g.n),
        max_subgraph_density=max_subgraph_density(g),
        vertex_cover_number=vertex_cover_number(g, budget=cover_budget),
        num_components=len(g.components()),
        automorphism_count=automorphism_count(g, budget=aut_budget),
    )


# ---------------------------------------------------------------------------
# Maximum subgraph density mu(G) = max over nonempty H of |e(H)| / |v(H)|
# ---------------------------------------------------------------------------

def max_subgraph_density(g: Graph) -> Fraction:
    """Exact mu(G) via Goldberg's parametric max-flow search.

    A guess a/b is tested with an integer-capacity min cut; distinct
    achievable densities differ by at least 1/n^2, so a binary search
    narrower than that pins the unique rational with denominator <= n.
    """
    if g.n == 0:
        raise EmptyGraphError("density of the empty graph is undefined")
    if g.num_edges == 0:
        return Fraction(0)
    if g.n <= DENSITY_EXHAUSTIVE_LIMIT:
        value, _ = _densest_exhaustive(g)
        return value

    lo = Fraction(0)
    hi = Fraction(g.max_degree())
    gap = Fraction(1, g.n * g.n)
    while hi - lo >= gap:
        mid = (lo + hi) / 2
        if _denser_subgraph_exists(g, mid):
            lo = mid
        else:
            hi = mid
    value = ((lo + hi) / 2).limit_denominator(g.n)
    # Self-check: value must be achievable and not improvable.
    if _denser_subgraph_exists(g, value):
        raise AssertionError("parametric search converged below the optimum")
    if value > 0 and not _denser_subgraph_exists(g, value - gap):
        raise AssertionError("parametric search converged above the optimum")
    return value


def densest_subgraph(g: Graph) -> Graph:
    """A subgraph attaining mu(G), relabeled to 0..k-1.

    Tie-breaking is deterministic: among optimal vertex sets, the smallest
    cardinality wins, then the lexicographically smallest sorted vertex
    tuple. The scan statistic depends on this choice being reproducible.
    """
    vs = densest_vertex_set(g)
    return g.induced_subgraph(vs)


def densest_vertex_set(g: Graph) -> list[int]:
    """The tie-broken optimal vertex set behind :func:`densest_subgraph`."""
    if g.n == 0:
        raise EmptyGraphError("densest subgraph of the empty graph is undefined")
    if g.num_edges == 0:
        # All densities are 0; the single smallest-label vertex wins the tie.
        return [0]
    if g.n <= DENSITY_EXHAUSTIVE_LIMIT:
        _, best = _densest_exhaustive(g)
        return best

    mu = max_subgraph_density(g)
    # Optimal sets are the maximizers of the supermodular e(S) - mu*|S|, so
    # they form a lattice: the minimal optimal set containing any fixed v is
    # unique (source-side-minimal min cut with v forced onto the source side),
    # and every minimum-cardinality optimal set arises as such a core.
    best: list[int] | None = None
    for v in range(g.n):
        core = _minimal_optimal_core(g, mu, v)
        if core is None:
            continue
        if best is None or (len(core), core) < (len(best), best):
            best = core
    assert best is not None, "mu > 0 must be attained by some vertex core"
    return best


def _densest_exhaustive(g: Graph) -> tuple[Fraction, list[int]]:
    """Brute force over all nonempty vertex subsets (n <= 14)."""
    masks = g.adjacency_masks()
    best_value = Fraction(0)
    best_key: tuple[int, list[int]] | None = None
    for subset in range(1, 1 << g.n):
        inner = 0
        s = subset
        while s:
            v = (s & -s).bit_length() - 1
            s &= s - 1
            inner += (masks[v] & subset).bit_count()
        size = subset.bit_count()
        value = Fraction(inner // 2, size)
        if value < best_value:
            continue
        vertices = [v for v in range(g.n) if subset >> v & 1]
        key = (size, vertices)
        if value > best_value or best_key is None or key < best_key:
            best_value = value
            best_key = key
    assert best_key is not None
    return best_value, best_key[1]


def _goldberg_network(g: Graph, num: int, den: int, forced: int | None):
    """Integer-capacity network whose min cut decides e(S)/|S| > num/den.

    Nodes: 0 = source, 1..m edge nodes, m+1..m+n vertex nodes, last = sink.
    Capacities are scaled by den so everything stays integral.
    """
    m = g.num_edges
    size = m + g.n + 2
    sink = size - 1
    dinic = _Dinic(size)
    inf = den * m * (g.n + 2) + 1
    for j, (u, v) in enumerate(g.edges):
        dinic.add(0, 1 + j, den)
        dinic.add(1 + j, 1 + m + u, inf)
        dinic.add(1 + j, 1 + m + v, inf)
    for v in range(g.n):
        dinic.add(1 + m + v, sink, num)
    if forced is not None:
        dinic.add(0, 1 + m + forced, inf)
    return dinic, sink


def _denser_subgraph_exists(g: Graph, guess: Fraction) -> bool:
    """True iff some nonempty S has e(S)/|S| > guess."""
    if guess < 0:
        return g.num_edges > 0
    dinic, sink = _goldberg_network(g, guess.numerator, guess.denominator, None)
    cut = dinic.max_flow(0, sink)
    return cut < guess.denominator * g.num_edges


def _minimal_optimal_core(g: Graph, mu: Fraction, v: int) -> list[int] | None:
    """Minimal optimal vertex set containing v, or None if v is in none."""
    dinic, sink = _goldberg_network(g, mu.numerator, mu.denominator, v)
    cut = dinic.max_flow(0, sink)
    if cut != mu.denominator * g.num_edges:
        return None
    reach = dinic.reachable(0)
    m = g.num_edges
    return [w for w in range(g.n) if reach[1 + m + w]]


class _Dinic:
    """Plain integer Dinic max-flow; sized for a few thousand nodes."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self._bfs(s, t)
            if level is None:
                return flow
            it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, None, level, it)
                if not pushed:
                    break
                flow += pushed

    def _bfs(self, s: int, t: int):
        level = [-1] * self.n
        level[s] = 0
        queue = [s]
        for u in queue:
            for eid in self.head[u]:
                v = self.to[eid]
                if self.cap[eid] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _dfs(self, u: int, t: int, limit, level, it) -> int:
        if u == t:
            return limit
        while it[u] < len(self.head[u]):
            eid = self.head[u][it[u]]
            v = self.to[eid]
            if self.cap[eid] > 0 and level[v] == level[u] + 1:
                avail = self.cap[eid] if limit is None else min(limit, self.cap[eid])
                pushed = self._dfs(v, t, avail, level, it)
                if pushed:
                    self.cap[eid] -= pushed
                    self.cap[eid ^ 1] += pushed
                    return pushed
            it[u] += 1
        return 0

    def reachable(self, s: int) -> list[bool]:
        """Residual reachability after max_flow; the minimal min-cut side."""
        seen = [False] * self.n
        seen[s] = True
        queue = [s]
        for u in queue:
            for eid in self.head[u]:
                v = self.to[eid]
                if self.cap[eid] > 0 and not seen[v]:
                    seen[v] = True
                    queue.append(v)
        return seen


# ---------------------------------------------------------------------------
# Vertex cover number tau(G)
# ---------------------------------------------------------------------------

def vertex_cover_number(g: Graph, budget: int = COVER_BUDGET_DEFAULT) -> int:
    """Exact minimum vertex cover size by branch and bound.

    Degree-0 vertices are dropped, degree-1 vertices are resolved by taking
    the neighbor (always safe), and branching picks a maximum-degree vertex:
    either it joins the cover or all its neighbors do. A greedy matching
    lower-bounds each subproblem for pruning.

    Raises BudgetExceededError when the graph has more than `budget`
    vertices; raise the budget rather than trusting an approximation.
    """
    if g.n > budget:
        raise BudgetExceededError(
            f"vertex cover budget: {g.n} vertices > budget {budget}"
        )
    adj = {v: set(g.neighbors(v)) for v in range(g.n) if g.degree(v) > 0}
    best = _vc_upper_bound(adj)
    return _vc_branch(adj, 0, best)


def matching_cover_bound(g: Graph) -> tuple[int, int]:
    """(maximal matching size, 2x matching) = (lower, upper) bounds on tau.

    This is the explicit 2-approximation fallback; it is never substituted
    for the exact count silently.
    """
    used: set[int] = set()
    size = 0
    for u, v in g.edges:
        if u not in used and v not in used:
            used.update((u, v))
            size += 1
    return size, 2 * size


def _vc_upper_bound(adj: dict[int, set[int]]) -> int:
    work = {v: set(ns) for v, ns in adj.items()}
    cover = 0
    while True:
        live = [(len(ns), v) for v, ns in work.items() if ns]
        if not live:
            return cover
        _, v = max(live)
        cover += 1
        for w in work[v]:
            work[w].discard(v)
        work[v] = set()


def _vc_matching_lb(adj: dict[int, set[int]]) -> int:
    used: set[int] = set()
    size = 0
    for v in adj:
        if v in used or not adj[v]:
            continue
        for w in adj[v]:
            if w not in used and w != v:
                used.update((v, w))
                size += 1
                break
    return size


def _vc_branch(adj: dict[int, set[int]], taken: int, best: int) -> int:
    adj = {v: set(ns) for v, ns in adj.items() if ns}
    # Reductions: resolve pendant vertices by taking their neighbors.
    changed = True
    while changed:
        changed = False
        for v in list(adj.keys()):
            ns = adj.get(v)
            if ns is None or len(ns) != 1:
                continue
            (w,) = ns
            taken += 1
            for x in list(adj.get(w, ())):
                adj[x].discard(w)
                if not adj[x]:
                    del adj[x]
            adj.pop(w, None)
            adj.pop(v, None)
            changed = True
            if taken >= best:
                return best
    if not adj:
        return min(best, taken)
    if taken + _vc_matching_lb(adj) >= best:
        return best
    v = max(adj, key=lambda u: (len(adj[u]), -u))
    neighbors = set(adj[v])

    # Branch 1: v in the cover.
    sub = {u: ns - {v} for u, ns in adj.items() if u != v}
    best = _vc_branch(sub, taken + 1, best)

    # Branch 2: v not in the cover, so all its neighbors are.
    if taken + len(neighbors) < best:
        removed = neighbors | {v}
        sub = {u: ns - removed for u, ns in adj.items() if u not in removed}
        best = _vc_branch(sub, taken + len(neighbors), best)
    return best


# ---------------------------------------------------------------------------
# Automorphism count |Aut(G)|
# ---------------------------------------------------------------------------

def automorphism_count(g: Graph, budget: int = AUT_BUDGET_DEFAULT) -> int:
    """|Aut(G)| as a product over connected components.

    For components C_1..C_r grouped into isomorphism classes with
    multiplicities m_i, |Aut(G)| = prod_i m_i! * |Aut(C_i)|^{m_i}.
    Isolated vertices form one class of singletons. Each component is
    counted by pruned permutation backtracking; the budget applies per
    component (the product formula keeps the result exact).
    """
    comps = g.components()
    classes: list[tuple[Graph, int]] = []
    for comp in comps:
        sub = g.induced_subgraph(comp)
        for i, (rep, mult) in enumerate(classes):
            if _isomorphic(rep, sub):
                classes[i] = (rep, mult + 1)
                break
        else:
            classes.append((sub, 1))
    total = 1
    for rep, mult in classes:
        total *= factorial(mult) * _component_aut(rep, budget) ** mult
    return total


def _component_aut(g: Graph, budget: int) -> int:
    if g.n <= 1:
        return 1
    # Closed forms for shapes the backtracking budget should not limit.
    n, m = g.n, g.num_edges
    degs = g.degrees()
    if m == n * (n - 1) // 2:
        return factorial(n)
    if m == n - 1 and max(degs) == n - 1:
        return factorial(n - 1)  # star: leaves permute freely
    if m == n - 1 and sorted(degs) == [1, 1] + [2] * (n - 2):
        return 2  # path: reversal only
    if m == n and all(d == 2 for d in degs):
        return 2 * n  # cycle: rotations and reflections
    if g.n > budget:
        raise BudgetExceededError(
            f"automorphism budget: component with {g.n} vertices > budget {budget}"
        )
    count = 0
    assignment = [-1] * g.n
    used = [False] * g.n

    def extend(i: int) -> None:
        nonlocal count
        if i == g.n:
            count += 1
            return
        for img in range(g.n):
            if used[img] or degs[img] != degs[i]:
                continue
            ok = True
            for j in range(i):
                if g.has_edge(i, j) != g.has_edge(img, assignment[j]):
                    ok = False
                    break
            if ok:
                assignment[i] = img
                used[img] = True
                extend(i + 1)
                used[img] = False
        assignment[i] = -1

    extend(0)
    return count


def _isomorphic(a: Graph, b: Graph) -> bool:
    """Exact isomorphism for small graphs (used to group components)."""
    if a.n != b.n or a.num_edges != b.num_edges:
        return False
    if sorted(a.degrees()) != sorted(b.degrees()):
        return False
    if a.edges == b.edges:
        return True
    degs_a, degs_b = a.degrees(), b.degrees()
    assignment = [-1] * a.n
    used = [False] * b.n

    def extend(i: int) -> bool:
        if i == a.n:
            return True
        for img in range(b.n):
            if used[img] or degs_b[img] != degs_a[i]:
                continue
            ok = True
            for j in range(i):
                if a.has_edge(i, j) != b.has_edge(img, assignment[j]):
                    ok = False
                    break
            if ok:
                assignment[i] = img
                used[img] = True
                if extend(i + 1):
                    return True
                used[img] = False
        return False

    return extend(0)


def isomorphic(a: Graph, b: Graph) -> bool:
    """Exact isomorphism test for small graphs."""
    return _isomorphic(a, b)
