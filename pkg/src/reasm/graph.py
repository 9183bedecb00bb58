"""Simple undirected graphs with bitset adjacency.

Vertices are the integers 1..n.  A set of vertices is represented internally
as an int bitmask with bit (v - 1) standing for vertex v; all boundary-degree
style computations reduce to popcounts of mask intersections, which keeps the
subset DP in `solvers` and the measure evaluation in `tree` cheap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import ValidationError


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the vertex ids set in `mask`, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 1..n.

    `edges` is normalized to a sorted tuple of (u, v) pairs with u < v;
    duplicate edges collapse.  `adj[v - 1]` is the neighbor bitmask of v.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("graph needs at least one vertex")
        seen = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValidationError(f"edge {e} has an endpoint outside 1..{self.n}")
            seen.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        object.__setattr__(self, "adj", tuple(adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return popcount(self.adj[v - 1])

    def max_degree(self) -> int:
        return max(popcount(a) for a in self.adj)

    def cut_mask(self, mask: int) -> int:
        """Boundary degree of the vertex set given as a bitmask."""
        return sum(popcount(self.adj[v - 1] & ~mask) for v in iter_bits(mask))

    def boundary_degree(self, block: Iterable[int]) -> int:
        """Number of edges with exactly one endpoint in `block`."""
        mask = self._check_block(block)
        return self.cut_mask(mask)

    def bridges(self, a: Iterable[int], b: Iterable[int]) -> tuple[tuple[int, int], ...]:
        """Edges with one endpoint in `a` and the other in `b` (disjoint sets)."""
        ma = self._check_block(a)
        mb = self._check_block(b)
        if ma & mb:
            raise ValidationError("bridge sets must be disjoint")
        out = [e for e in self.edges
               if ((1 << (e[0] - 1)) & ma and (1 << (e[1] - 1)) & mb)
               or ((1 << (e[0] - 1)) & mb and (1 << (e[1] - 1)) & ma)]
        return tuple(out)

    def is_connected(self) -> bool:
        reached = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v - 1]
            frontier = nxt & ~reached
            reached |= frontier
        return reached == self.full_mask

    def cut_vertices(self) -> tuple[int, ...]:
        """Articulation points, via one DFS (iterative, lowpoint rule)."""
        if not self.is_connected():
            raise ValidationError("cut vertices are defined for connected graphs only")
        disc = {}
        low = {}
        parent = {1: 0}
        cuts = set()
        order = 0
        stack = [(1, iter(iter_bits(self.adj[0])))]
        disc[1] = low[1] = order
        root_children = 0
        while stack:
            v, it = stack[-1]
            child = next(it, None)
            if child is None:
                stack.pop()
                p = parent[v]
                if p:
                    low[p] = min(low[p], low[v])
                    if p != 1 and low[v] >= disc[p]:
                        cuts.add(p)
                continue
            if child not in disc:
                if v == 1:
                    root_children += 1
                order += 1
                disc[child] = low[child] = order
                parent[child] = v
                stack.append((child, iter(iter_bits(self.adj[child - 1]))))
            elif child != parent[v]:
                low[v] = min(low[v], disc[child])
        if root_children > 1:
            cuts.add(1)
        return tuple(sorted(cuts))

    def _check_vertex(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise ValidationError(f"vertex {v} outside 1..{self.n}")

    def _check_block(self, block: Iterable[int]) -> int:
        mask = 0
        for v in block:
            self._check_vertex(v)
            mask |= 1 << (v - 1)
        return mask


@dataclass(frozen=True)
class Deg3Report:
    """Cut-vertex classification of the degree-3 vertices of a graph."""

    max_degree: int
    all_deg3_are_cut: bool
    noncut_deg3_witness: Optional[int] = None


def classify_deg3(g: Graph) -> Deg3Report:
    """Report whether every degree-3 vertex is a cut vertex.

    The witness (smallest non-cut degree-3 vertex) is only reported when the
    maximum degree is exactly 3, which is the case the alpha reduction
    branches on.
    """
    cuts = set(g.cut_vertices())
    deg3 = [v for v in g.vertices if g.degree(v) == 3]
    noncut = [v for v in deg3 if v not in cuts]
    maxdeg = g.max_degree()
    witness = min(noncut) if noncut and maxdeg == 3 else None
    return Deg3Report(max_degree=maxdeg,
                      all_deg3_are_cut=not noncut,
                      noncut_deg3_witness=witness)


# ---------------------------------------------------------------------------
# file format: first data line "n m", then m lines "u v"; '#' starts a
# comment, blank lines are ignored, duplicate edge lines collapse.

def parse_graph(text: str) -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ValidationError("empty graph file")
    lineno, head = rows[0]
    parts = head.split()
    if len(parts) != 2:
        raise ValidationError(f"line {lineno}: expected 'n m' header, got {head!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValidationError(f"line {lineno}: expected 'n m' header, got {head!r}") from None
    body = rows[1:]
    if len(body) != m:
        raise ValidationError(f"header declares {m} edges but file has {len(body)} edge lines")
    edges = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise ValidationError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValidationError(f"line {lineno}: expected 'u v', got {line!r}") from None
        edges.append((u, v))
    return Graph(n, tuple(edges))


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# generators

# 3-regular labeling of the 3-cube used throughout the tests: it is the
# lexicographically least completion of the chain seed {1,2},{1,3},{3,4},
# {3,5},{5,6},{5,7},{7,8} that is isomorphic to the cube and reproduces the
# pinned tree measures (see tests/test_graph.py).
QCUBE3_EDGES = ((1, 2), (1, 3), (1, 6), (2, 4), (2, 8), (3, 4),
                (3, 5), (4, 7), (5, 6), (5, 7), (6, 8), (7, 8))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(1, n + 1), 2)))


def star_graph(leaves: int) -> Graph:
    """Star with center 1 and the given number of leaves 2..leaves+1."""
    return Graph(leaves + 1, tuple((1, k) for k in range(2, leaves + 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValidationError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, i + 1) for i in range(1, n)) + ((1, n),))


def qcube3_graph() -> Graph:
    return Graph(8, QCUBE3_EDGES)


def ring_tree_graph(ring_sizes: Iterable[int], path_len: int = 1) -> Graph:
    """Chain of vertex-disjoint rings, consecutive rings joined by a path.

    `path_len` is the number of edges on each joining path (>= 1, so rings
    never share vertices).  The two attachment points of every joint have
    degree 3 and are cut vertices; everything else has degree 2.
    """
    sizes = list(ring_sizes)
    if not sizes:
        raise ValidationError("need at least one ring")
    if any(s < 3 for s in sizes):
        raise ValidationError("ring sizes must be >= 3")
    if path_len < 1:
        raise ValidationError("path length must be >= 1")
    edges = []
    nxt = 1

    def add_ring(size):
        nonlocal nxt
        first = nxt
        ring = list(range(first, first + size))
        nxt += size
        for i in range(size):
            edges.append((ring[i], ring[(i + 1) % size]))
        return ring

    prev_ring = add_ring(sizes[0])
    for size in sizes[1:]:
        tail = prev_ring[-1]
        for _ in range(path_len - 1):
            edges.append((tail, nxt))
            tail = nxt
            nxt += 1
        ring = add_ring(size)
        edges.append((tail, ring[0]))
        prev_ring = ring
    return Graph(nxt - 1, tuple(edges))


def generate(family: str, size: Optional[int] = None, *,
             ring_sizes: Optional[Iterable[int]] = None,
             path_len: int = 1) -> Graph:
    """Build a named graph family.

    complete/star/path/cycle take `size` (for star: the number of leaves);
    qcube3 takes no parameters; ring_tree takes `ring_sizes` and `path_len`.
    """
    if family == "qcube3":
        return qcube3_graph()
    if family == "ring_tree":
        if ring_sizes is None:
            raise ValidationError("ring_tree needs ring_sizes")
        return ring_tree_graph(ring_sizes, path_len)
    if size is None:
        raise ValidationError(f"family {family!r} needs a size")
    builders = {"complete": complete_graph, "star": star_graph,
                "path": path_graph, "cycle": cycle_graph}
    if family not in builders:
        raise ValidationError(f"unknown family {family!r}")
    return builders[family](size)
