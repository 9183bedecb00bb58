"""Linear arrangements and their correspondence with linear reassemblings.

An arrangement of a graph on n vertices is a permutation x1..xn.  The i-th
edge cut is the boundary degree of the prefix {x1..xi}; alpha is the largest
cut (cutwidth), beta the sum of all cuts, and gamma the total edge length.
beta == gamma holds for every graph and every arrangement, connected or not,
and evaluate_arrangement checks that identity at runtime.

A linear reassembling (all non-singleton clusters nested) induces an
arrangement by reading its chain; an arrangement induces a linear
reassembling whose non-singleton clusters are the prefixes.  The two maps
are mutually inverse on linear trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ValidationError
from .graph import Graph, mask_of, popcount, vertices_of
from .tree import ReassemblyTree


@dataclass(frozen=True)
class Arrangement:
    """Immutable vertex order; position(v) is 1-based."""

    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if len(set(self.order)) != len(self.order):
            raise ValidationError("arrangement repeats a vertex")
        if not self.order:
            raise ValidationError("empty arrangement")

    @property
    def n(self) -> int:
        return len(self.order)

    def position(self, v: int) -> int:
        try:
            return self.order.index(v) + 1
        except ValueError:
            raise ValidationError(f"vertex {v} not in arrangement") from None

    def reversed(self) -> "Arrangement":
        return Arrangement(tuple(reversed(self.order)))


@dataclass(frozen=True)
class ArrangementReport:
    cuts: tuple[int, ...]  # cuts[i-1] = boundary degree of {x1..xi}; last entry 0
    alpha: int
    beta: int
    gamma: int

    def to_json(self) -> dict:
        return {"cuts": list(self.cuts), "alpha": self.alpha,
                "beta": self.beta, "gamma": self.gamma}


def _check_permutation(g: Graph, arr: Arrangement) -> None:
    if set(arr.order) != set(g.vertices):
        raise ValidationError("arrangement is not a permutation of the graph's vertices")


def edge_length(arr: Arrangement, edge: tuple[int, int]) -> int:
    u, v = edge
    return abs(arr.position(u) - arr.position(v))


def evaluate_arrangement(g: Graph, arr: Arrangement) -> ArrangementReport:
    """All edge cuts plus alpha/beta/gamma; beta and gamma are computed by
    independent routes and must agree."""
    _check_permutation(g, arr)
    cuts = []
    prefix = 0
    cut = 0
    for v in arr.order:
        # adding v: edges into the prefix become internal, the rest open up
        inside = popcount(g.adj[v - 1] & prefix)
        cut += g.degree(v) - 2 * inside
        prefix |= 1 << (v - 1)
        cuts.append(cut)
    beta = sum(cuts)
    pos = {v: i + 1 for i, v in enumerate(arr.order)}
    gamma = sum(abs(pos[u] - pos[v]) for u, v in g.edges)
    assert beta == gamma, f"beta {beta} != gamma {gamma}"
    return ArrangementReport(cuts=tuple(cuts), alpha=max(cuts), beta=beta, gamma=gamma)


# ---------------------------------------------------------------------------
# induced maps

def induce_arrangement(g: Graph, tree: ReassemblyTree) -> Arrangement:
    """Arrangement read off a linear reassembling: within the first cluster
    the lower-degree vertex goes first (ties toward the smaller id), then
    vertices follow the chain."""
    if tree.ground_mask != g.full_mask:
        raise ValidationError("tree ground set does not match the graph's vertex set")
    if not tree.is_linear():
        raise ValidationError("tree is not linear")
    if g.n == 1:
        return Arrangement((1,))
    chain = tree.linear_chain()
    a, b = sorted(chain[0])
    if (g.degree(b), b) < (g.degree(a), a):
        a, b = b, a
    order = [a, b]
    taken = set(order)
    for cluster in chain[1:]:
        (v,) = set(cluster) - taken
        order.append(v)
        taken.add(v)
    return Arrangement(tuple(order))


def induce_reassembling(g: Graph, arr: Arrangement) -> ReassemblyTree:
    """Linear reassembling whose non-singleton clusters are the prefixes."""
    _check_permutation(g, arr)
    masks = [1 << (v - 1) for v in arr.order]
    prefix = masks[0]
    for bit in masks[1:]:
        prefix |= bit
        masks.append(prefix)
    return ReassemblyTree._trusted(g.full_mask, masks)


# ---------------------------------------------------------------------------
# anchoring

def is_anchored_arrangement(g: Graph, arr: Arrangement, w: int) -> bool:
    """True iff w is placed first and its degree is at most the second's."""
    _check_permutation(g, arr)
    if g.n < 2 or arr.order[0] != w:
        return False
    return g.degree(w) <= g.degree(arr.order[1])


def is_anchored_reassembling(g: Graph, tree: ReassemblyTree, w: int) -> bool:
    """True iff {w} is one half of the first chain cluster and deg(w) is at
    most the degree of the other half."""
    if tree.ground_mask != g.full_mask:
        raise ValidationError("tree ground set does not match the graph's vertex set")
    if not tree.is_linear() or g.n < 2:
        return False
    first = tree.linear_chain()[0]
    if w not in first:
        return False
    (other,) = set(first) - {w}
    return g.degree(w) <= g.degree(other)


# ---------------------------------------------------------------------------
# restrictions

def restrict_arrangement(arr: Arrangement, keep: Iterable[int]) -> Arrangement:
    keep = set(keep)
    missing = keep - set(arr.order)
    if missing:
        raise ValidationError(f"vertices {sorted(missing)} not in arrangement")
    return Arrangement(tuple(v for v in arr.order if v in keep))


def restrict_tree(tree: ReassemblyTree, keep: Iterable[int]) -> ReassemblyTree:
    """Restriction of a linear tree: intersect every cluster with `keep` and
    drop empties/duplicates.  The result is again linear, over `keep`."""
    if not tree.is_linear():
        raise ValidationError("tree is not linear")
    kmask = mask_of(keep)
    if kmask & ~tree.ground_mask:
        raise ValidationError("keep set is not a subset of the tree's vertices")
    if kmask == 0:
        raise ValidationError("keep set is empty")
    masks = {m & kmask for m in tree.cluster_masks()}
    masks.discard(0)
    return ReassemblyTree._trusted(kmask, masks)


def parse_arrangement(text: str) -> Arrangement:
    data = [tok for line in text.splitlines()
            for tok in line.split("#", 1)[0].split()]
    if not data:
        raise ValidationError("empty arrangement file")
    try:
        order = tuple(int(t) for t in data)
    except ValueError:
        raise ValidationError("arrangement file must contain integers") from None
    return Arrangement(order)


def format_arrangement(arr: Arrangement) -> str:
    return " ".join(str(v) for v in arr.order) + "\n"
