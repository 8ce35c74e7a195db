"""Immutable simple graphs, built-in families, and edge-list text I/O.

Vertices are integers 0..n-1. Edges are stored canonically as pairs (u, v)
with u < v; self-loops and duplicates are rejected at construction. Graphs
are hashable and safe to share across threads.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

from .errors import (
    DuplicateEdgeError,
    FormatError,
    InvalidSpecError,
    SelfLoopError,
    VertexOutOfRangeError,
)

Edge = tuple[int, int]


class Graph:
    """Simple undirected graph on vertices 0..n-1 with a fixed edge set."""

    __slots__ = ("n", "edges", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 0:
            raise VertexOutOfRangeError(f"vertex count must be >= 0, got {n}")
        canon: list[Edge] = []
        seen: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRangeError(f"edge ({u},{v}) outside [0,{n})")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        canon.sort()
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(canon))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in canon:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))
        object.__setattr__(self, "_hash", hash((n, tuple(canon))))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    # -- basic accessors ---------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(s) for s in self._adj]

    def max_degree(self) -> int:
        return max((len(s) for s in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u] if 0 <= u < self.n else False

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self._adj[v]]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    # -- derived graphs ----------------------------------------------------

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists (singletons included)."""
        seen = [False] * self.n
        out: list[list[int]] = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack = [s]
            seen[s] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        """Relabeled induced subgraph; vertex i of the result is sorted(vertices)[i]."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        edges = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph(len(vs), edges)

    def edge_subgraph(self, edges: Iterable[Edge], relabel: bool = False) -> Graph:
        """Subgraph on the given edges; keeps original labels unless relabel."""
        es = [(u, v) if u < v else (v, u) for u, v in edges]
        if not relabel:
            return Graph(self.n, es)
        vs = sorted({x for e in es for x in e})
        index = {v: i for i, v in enumerate(vs)}
        return Graph(len(vs), [(index[u], index[v]) for u, v in es])

    def without_isolated(self) -> Graph:
        """Compact relabeling that drops isolated vertices."""
        return self.edge_subgraph(self.edges, relabel=True) if self.edges else Graph(0, [])

    def adjacency_masks(self) -> list[int]:
        """Neighbor sets as bitmasks, for subset-enumeration algorithms."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks


def from_edge_list(n: int, pairs: Iterable[Edge]) -> Graph:
    """Validated construction from raw (u, v) pairs."""
    return Graph(n, pairs)


def is_pattern(g: Graph) -> bool:
    """Pattern graphs (planted structures) must have no isolated vertices."""
    return g.n > 0 and not g.isolated_vertices()


# -- edge-list text format -------------------------------------------------
#
# First line:  n <vertex_count>
# Then one `u v` pair per line, 0-indexed, whitespace separated.
# `#` starts a comment (full line or trailing).

def parse_edge_list(text: str) -> Graph:
    n = None
    pairs: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            m = re.fullmatch(r"n\s+(\d+)", line)
            if not m:
                raise FormatError(f"line {lineno}: expected header 'n <count>', got {raw!r}")
            n = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        pairs.append((u, v))
    if n is None:
        raise FormatError("missing 'n <count>' header line")
    return Graph(n, pairs)


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"n {g.n}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g, comment))


# -- built-in families -----------------------------------------------------

FAMILY_KINDS = (
    "clique",
    "path",
    "star",
    "complete_bipartite",
    "regular_tree",
    "matching",
    "disjoint_triangles",
    "unbalanced_stars",
)


class FamilySpec:
    """A named graph family plus its integer size parameters.

    Parses from strings like ``clique:4``, ``complete_bipartite:2,3``,
    ``unbalanced_stars:16``.
    """

    __slots__ = ("kind", "params")

    def __init__(self, kind: str, params: Sequence[int]):
        if kind not in FAMILY_KINDS:
            raise InvalidSpecError(f"unknown family kind {kind!r}; known: {', '.join(FAMILY_KINDS)}")
        arity = 2 if kind in ("complete_bipartite", "regular_tree") else 1
        params = tuple(int(p) for p in params)
        if len(params) != arity:
            raise InvalidSpecError(f"{kind} takes {arity} parameter(s), got {params}")
        if any(p < 1 for p in params):
            raise InvalidSpecError(f"{kind} parameters must be >= 1, got {params}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", params)

    def __setattr__(self, name, value):
        raise AttributeError("FamilySpec is immutable")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        text = text.strip()
        if ":" not in text:
            raise InvalidSpecError(f"family spec must look like 'kind:params', got {text!r}")
        kind, _, rest = text.partition(":")
        try:
            params = [int(tok) for tok in rest.split(",") if tok != ""]
        except ValueError:
            raise InvalidSpecError(f"non-integer parameter in {text!r}") from None
        return cls(kind.strip(), params)

    def __str__(self) -> str:
        return f"{self.kind}:{','.join(str(p) for p in self.params)}"

    def __repr__(self) -> str:
        return f"FamilySpec({str(self)!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FamilySpec)
            and self.kind == other.kind
            and self.params == other.params
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.params))


def make_family(spec: FamilySpec | str) -> Graph:
    """Deterministic canonical construction of a built-in family.

    Vertex numbering conventions:
      clique(k): vertices 0..k-1.
      path(k):   k edges on vertices 0..k, edge (i, i+1).
      star(d):   center 0, leaves 1..d.
      complete_bipartite(a, b): left part 0..a-1, right part a..a+b-1.
      regular_tree(D, depth): breadth-first numbering from the root (vertex 0);
        the root has D children, every other internal vertex has D-1 children,
        so all internal vertices have degree D. depth counts edge levels.
      matching(m): edge (2i, 2i+1) for i < m.
      disjoint_triangles(t): triangle on {3i, 3i+1, 3i+2}.
      unbalanced_stars(k): k disjoint stars of degree floor(k^(1/4)) laid out
        first (each as center followed by its leaves), then one star of degree
        floor(k^(3/4)).
    """
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    kind, params = spec.kind, spec.params

    if kind == "clique":
        (k,) = params
        return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])

    if kind == "path":
        (k,) = params
        return Graph(k + 1, [(i, i + 1) for i in range(k)])

    if kind == "star":
        (d,) = params
        return Graph(d + 1, [(0, i) for i in range(1, d + 1)])

    if kind == "complete_bipartite":
        a, b = params
        return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    if kind == "regular_tree":
        branching, depth = params
        edges: list[Edge] = []
        level = [0]
        next_id = 1
        for lvl in range(depth):
            nxt: list[int] = []
            for v in level:
                fanout = branching if lvl == 0 else branching - 1
                for _ in range(fanout):
                    edges.append((v, next_id))
                    nxt.append(next_id)
                    next_id += 1
            level = nxt
        if not edges:
            raise InvalidSpecError("regular_tree with branching 1 at depth > 0 only; got no edges")
        return Graph(next_id, edges)

    if kind == "matching":
        (m,) = params
        return Graph(2 * m, [(2 * i, 2 * i + 1) for i in range(m)])

    if kind == "disjoint_triangles":
        (t,) = params
        edges = []
        for i in range(t):
            a = 3 * i
            edges.extend([(a, a + 1), (a, a + 2), (a + 1, a + 2)])
        return Graph(3 * t, edges)

    if kind == "unbalanced_stars":
        (k,) = params
        small, big = unbalanced_stars_degrees(k)
        edges = []
        base = 0
        for _ in range(k):
            edges.extend((base, base + j) for j in range(1, small + 1))
            base += small + 1
        edges.extend((base, base + j) for j in range(1, big + 1))
        return Graph(base + big + 1, edges)

    raise InvalidSpecError(f"unhandled family kind {kind!r}")


def unbalanced_stars_degrees(k: int) -> tuple[int, int]:
    """(small star degree, big star degree) = (floor(k^1/4), floor(k^3/4)).

    Uses integer root finding so huge k stays exact.
    """
    if k < 1:
        raise InvalidSpecError(f"unbalanced_stars needs k >= 1, got {k}")
    small = _floor_root(k, 4)
    big = _floor_root(k ** 3, 4)
    return small, big


def unbalanced_stars_profile(k: int) -> tuple[int, int, int]:
    """Closed-form (num_edges, max_degree, vertex_cover_number) of unbalanced_stars(k).

    The cover consists of the k + 1 star centers; the maximum degree is the
    big star's. Valid for any k without building the graph.
    """
    small, big = unbalanced_stars_degrees(k)
    num_edges = k * small + big
    max_degree = max(big, small)
    cover = k + 1
    return num_edges, max_degree, cover


def _floor_root(x: int, r: int) -> int:
    """floor(x ** (1/r)) for nonnegative integers, exactly."""
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return 0
    guess = int(round(x ** (1.0 / r)))
    guess = max(guess, 1)
    while guess ** r > x:
        guess -= 1
    while (guess + 1) ** r <= x:
        guess += 1
    return guess


def complete_graph(k: int) -> Graph:
    return make_family(FamilySpec("clique", [k]))


def canonical_copy_edges(pattern: Graph) -> frozenset[Edge]:
    """Edges of the canonical embedding of the pattern at vertices 0..k-1."""
    return frozenset(pattern.edges)
