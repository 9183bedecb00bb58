"""Reassembling trees: cluster collections over a graph's vertex set.

A reassembling of V is a set of non-empty clusters such that every singleton
is present, V itself is present, and every proper cluster X has exactly one
disjoint sibling Y with X | Y again a cluster.  Such a collection always has
exactly 2n - 1 members and forms an unordered binary tree whose leaves are
the singletons.

Clusters are bitmasks internally (bit v-1 = vertex v), so the ground set may
be any set of positive ints -- restrictions of trees keep their original
vertex ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import ValidationError
from .graph import Graph, iter_bits, mask_of, popcount, vertices_of

Cluster = frozenset  # of vertex ids


class ReassemblyTree:
    """Immutable reassembling tree; equality compares cluster sets."""

    __slots__ = ("ground_mask", "_masks", "_parent", "_children", "_heights")

    def __init__(self, clusters: Iterable[Iterable[int]]):
        masks = {mask_of(c) for c in clusters}
        if 0 in masks:
            raise ValidationError("empty cluster")
        ground = 0
        for m in masks:
            ground |= m
        self._init_from(ground, masks, validate=True)

    @classmethod
    def _trusted(cls, ground_mask: int, masks: Iterable[int]) -> "ReassemblyTree":
        """Fast path for clusters produced by construction (no partner search)."""
        t = object.__new__(cls)
        t._init_from(ground_mask, set(masks), validate=False)
        return t

    def _init_from(self, ground: int, masks: set, validate: bool) -> None:
        n = popcount(ground)
        self.ground_mask = ground
        self._masks = frozenset(masks)
        if validate:
            for v in iter_bits(ground):
                if (1 << (v - 1)) not in masks:
                    raise ValidationError(f"missing singleton {{{v}}}")
            if ground not in masks:
                raise ValidationError("missing root cluster V")
            if len(masks) != 2 * n - 1:
                raise ValidationError(
                    f"expected {2 * n - 1} clusters for {n} vertices, got {len(masks)}")
        parent = {}
        children = {}
        if validate:
            for x in masks:
                if x == ground:
                    continue
                partners = [y for y in masks if not (x & y) and (x | y) in masks]
                if len(partners) != 1:
                    raise ValidationError(
                        f"cluster {set(vertices_of(x))} has {len(partners)} "
                        "sibling candidates, expected exactly one")
                y = partners[0]
                p = x | y
                parent[x] = p
                prior = children.get(p)
                if prior is not None and prior != (min(x, y), max(x, y)):
                    raise ValidationError(
                        f"cluster {set(vertices_of(p))} has two distinct child pairs")
                children[p] = (min(x, y), max(x, y))
            for x in masks:
                if popcount(x) > 1 and x not in children:
                    raise ValidationError(
                        f"cluster {set(vertices_of(x))} is not the union of a sibling pair")
        else:
            # Ascending-size sweep: each cluster's children are the current
            # heads of its lowest vertex and of the remaining part.
            head = {}
            for x in sorted(masks, key=popcount):
                if popcount(x) == 1:
                    head[x] = x
                    continue
                lowv = x & -x
                a = head[lowv]
                b = head[(x ^ a) & -(x ^ a)]
                assert (a | b) == x and not (a & b), "clusters do not nest"
                parent[a] = parent[b] = x
                children[x] = (min(a, b), max(a, b))
                head[lowv] = x
        self._parent = parent
        self._children = children
        heights = {}
        for x in sorted(self._masks, key=popcount):
            if x in children:
                a, b = children[x]
                heights[x] = 1 + max(heights[a], heights[b])
            else:
                heights[x] = 0
        self._heights = heights

    # -- basic queries ------------------------------------------------------

    @property
    def n(self) -> int:
        return popcount(self.ground_mask)

    @property
    def vertices(self) -> tuple[int, ...]:
        return vertices_of(self.ground_mask)

    @property
    def clusters(self) -> tuple[Cluster, ...]:
        """All clusters, smallest first, deterministic order."""
        return tuple(Cluster(vertices_of(m)) for m in self._sorted_masks())

    def _sorted_masks(self) -> list:
        return sorted(self._masks, key=lambda m: (popcount(m), m))

    def cluster_masks(self) -> frozenset:
        return self._masks

    def __eq__(self, other) -> bool:
        return (isinstance(other, ReassemblyTree)
                and self.ground_mask == other.ground_mask
                and self._masks == other._masks)

    def __hash__(self) -> int:
        return hash((self.ground_mask, self._masks))

    def __repr__(self) -> str:
        return f"ReassemblyTree({print_tree(self)!r})"

    def _lookup(self, cluster: Iterable[int]) -> int:
        m = mask_of(cluster)
        if m not in self._masks:
            raise ValidationError(f"{set(cluster)} is not a cluster of this tree")
        return m

    def sibling(self, cluster: Iterable[int]) -> Cluster:
        m = self._lookup(cluster)
        if m == self.ground_mask:
            raise ValidationError("the root cluster V has no sibling")
        return Cluster(vertices_of(self._parent[m] ^ m))

    def parent(self, cluster: Iterable[int]) -> Cluster:
        m = self._lookup(cluster)
        if m == self.ground_mask:
            raise ValidationError("the root cluster V has no parent")
        return Cluster(vertices_of(self._parent[m]))

    def children(self, cluster: Iterable[int]) -> Optional[tuple[Cluster, Cluster]]:
        """Child pair of a non-singleton cluster (None for singletons),
        the child holding the smaller minimum vertex first."""
        m = self._lookup(cluster)
        if m not in self._children:
            return None
        a, b = self._children[m]
        if min(vertices_of(a)) > min(vertices_of(b)):
            a, b = b, a
        return Cluster(vertices_of(a)), Cluster(vertices_of(b))

    def path_to_root(self, v: int) -> tuple[Cluster, ...]:
        """Clusters on the unique path from {v} up to V."""
        m = 1 << (v - 1)
        if m not in self._masks:
            raise ValidationError(f"vertex {v} is not in the tree")
        path = [m]
        while path[-1] != self.ground_mask:
            path.append(self._parent[path[-1]])
        return tuple(Cluster(vertices_of(x)) for x in path)

    def height(self) -> int:
        return self._heights[self.ground_mask]

    def height_of(self, cluster: Iterable[int]) -> int:
        return self._heights[self._lookup(cluster)]

    def subtree(self, cluster: Iterable[int]) -> "ReassemblyTree":
        root = self._lookup(cluster)
        masks = []
        stack = [root]
        while stack:
            x = stack.pop()
            masks.append(x)
            if x in self._children:
                stack.extend(self._children[x])
        return ReassemblyTree._trusted(root, masks)

    def is_linear(self) -> bool:
        """True iff the non-singleton clusters form a single nested chain."""
        chain = sorted((m for m in self._masks if popcount(m) > 1), key=popcount)
        return all(a & b == a for a, b in zip(chain, chain[1:]))

    def linear_chain(self) -> tuple[Cluster, ...]:
        """The nested non-singleton clusters X1 c X2 c ... c V of a linear tree."""
        if not self.is_linear():
            raise ValidationError("tree is not linear")
        chain = sorted((m for m in self._masks if popcount(m) > 1), key=popcount)
        return tuple(Cluster(vertices_of(m)) for m in chain)


@dataclass(frozen=True)
class MeasureReport:
    alpha: int
    beta: int
    per_cluster: dict

    def to_json(self) -> dict:
        rows = sorted(self.per_cluster.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        return {"alpha": self.alpha, "beta": self.beta,
                "clusters": [{"set": sorted(c), "degree": d} for c, d in rows]}


def _check_ground(g: Graph, tree: ReassemblyTree) -> None:
    if tree.ground_mask != g.full_mask:
        raise ValidationError("tree ground set does not match the graph's vertex set")


def measures(g: Graph, tree: ReassemblyTree) -> MeasureReport:
    """alpha = max boundary degree over all clusters (singletons included),
    beta = sum of boundary degrees over all 2n - 1 clusters."""
    _check_ground(g, tree)
    per = {Cluster(vertices_of(m)): g.cut_mask(m) for m in tree.cluster_masks()}
    vals = per.values()
    return MeasureReport(alpha=max(vals), beta=sum(vals), per_cluster=per)


def first_nonstrict_pair(g: Graph, tree: ReassemblyTree) -> Optional[tuple[Cluster, Cluster]]:
    """First sibling pair (canonical cluster order) with no edge between the
    two sides, or None if the tree is strict."""
    _check_ground(g, tree)
    for m in tree._sorted_masks():
        pair = tree._children.get(m)
        if pair is None:
            continue
        a, b = pair
        if not any(g.adj[v - 1] & b for v in iter_bits(a)):
            x, y = Cluster(vertices_of(a)), Cluster(vertices_of(b))
            return (x, y) if min(x) < min(y) else (y, x)
    return None


def is_strict(g: Graph, tree: ReassemblyTree) -> bool:
    """True iff every sibling pair has a non-empty bridge set."""
    return first_nonstrict_pair(g, tree) is None


def cross_sections(tree: ReassemblyTree) -> list:
    """All maximal collections of >= 2 pairwise disjoint clusters.

    Each such collection is a partition of V into clusters; they are returned
    finest first.  A linear tree over n vertices has exactly n - 1 of them.
    """
    def parts(m):
        if m not in tree._children:
            return [(m,)]
        a, b = tree._children[m]
        out = [(m,)]
        for pa in parts(a):
            for pb in parts(b):
                out.append(pa + pb)
        return out

    result = []
    for p in parts(tree.ground_mask):
        if len(p) >= 2:
            blocks = tuple(sorted((Cluster(vertices_of(x)) for x in p), key=min))
            result.append(blocks)
    result.sort(key=lambda blocks: (-len(blocks), [sorted(b) for b in blocks]))
    return result


def validate_tree(vertices: Iterable[int], clusters: Iterable[Iterable[int]]) -> ReassemblyTree:
    """Check the reassembling conditions and build the tree."""
    t = ReassemblyTree(clusters)
    if t.ground_mask != mask_of(vertices):
        raise ValidationError("clusters do not cover exactly the given vertex set")
    return t


# ---------------------------------------------------------------------------
# text format: "(((1 2) (3 4)) ((5 6) (7 8)))"; printing puts the child with
# the smaller minimum vertex first, so print_tree(parse_tree(s)) == s on
# normalized text.

def parse_tree(text: str) -> ReassemblyTree:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0
    seen = set()
    masks = []
    children = {}

    def node() -> int:
        nonlocal pos
        if pos >= len(tokens):
            raise ValidationError("unbalanced brackets: unexpected end of input")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            a = node()
            b = node()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValidationError("unbalanced brackets: expected ')'")
            pos += 1
            m = a | b
            children[m] = (min(a, b), max(a, b))
            masks.append(m)
            return m
        if tok == ")":
            raise ValidationError("unbalanced brackets: unexpected ')'")
        try:
            v = int(tok)
        except ValueError:
            raise ValidationError(f"unexpected token {tok!r}") from None
        if v < 1:
            raise ValidationError(f"vertex ids must be positive, got {v}")
        if v in seen:
            raise ValidationError(f"repeated leaf {v}")
        seen.add(v)
        m = 1 << (v - 1)
        masks.append(m)
        return m

    root = node()
    if pos != len(tokens):
        raise ValidationError("unbalanced brackets: trailing input")
    return ReassemblyTree._trusted(root, masks)


def print_tree(tree: ReassemblyTree) -> str:
    def render(m: int) -> str:
        if m not in tree._children:
            return str(vertices_of(m)[0])
        a, b = tree._children[m]
        if min(vertices_of(a)) > min(vertices_of(b)):
            a, b = b, a
        return f"({render(a)} {render(b)})"

    return render(tree.ground_mask)
