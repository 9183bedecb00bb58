"""Sequential reassembling: edge orderings, partition chains, and the
round-trip between strict binary reassemblings and edge orderings.

Processing an edge ordering merges vertex blocks: at each step the first
remaining edge joins the blocks of its endpoints and every remaining edge
inside the merged block is consumed along with it.  A connected graph on n
vertices always produces a chain of exactly n partitions (n - 1 merges).
The blocks appearing in the chain form a strict binary reassembling; in the
other direction every strict reassembling has a canonical edge ordering that
reproduces it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .graph import Graph, iter_bits, mask_of, popcount, vertices_of
from .tree import ReassemblyTree

Edge = tuple  # (u, v) with u < v
Partition = tuple  # of frozensets, sorted by min vertex


def _norm_edge(e) -> Edge:
    u, v = e
    return (u, v) if u < v else (v, u)


def _partition_of(masks) -> Partition:
    blocks = sorted((frozenset(vertices_of(m)) for m in masks), key=min)
    return tuple(blocks)


@dataclass(frozen=True)
class MergeStep:
    merged: tuple  # (A, B) as frozensets, min-vertex side first
    bridges: tuple  # edges between A and B, lexicographic
    consumed: tuple  # same edges in the order they sat in the input


@dataclass(frozen=True)
class SeqTrace:
    chain: tuple  # n partitions, singletons first, {V} last
    steps: tuple  # n - 1 MergeSteps


def seq_reassemble(g: Graph, ordering) -> SeqTrace:
    """Run the block-merging process for an ordering of all edges of g."""
    pi = [_norm_edge(e) for e in ordering]
    if len(pi) != g.m or set(pi) != set(g.edges):
        raise ValidationError("ordering is not a permutation of the graph's edges")
    if not g.is_connected():
        raise ValidationError("sequential reassembling needs a connected graph")
    block = {v: 1 << (v - 1) for v in g.vertices}
    alive = [True] * len(pi)
    chain = [_partition_of(set(block.values()))]
    steps = []
    i = 0
    while len(chain) < g.n:
        while not alive[i]:
            i += 1
        u, v = pi[i]
        a, b = block[u], block[v]
        merged = a | b
        consumed = []
        for j in range(i, len(pi)):
            x, y = pi[j]
            if alive[j] and (1 << (x - 1)) & merged and (1 << (y - 1)) & merged:
                alive[j] = False
                consumed.append(pi[j])
        for x in iter_bits(merged):
            block[x] = merged
        pair = sorted((frozenset(vertices_of(a)), frozenset(vertices_of(b))), key=min)
        steps.append(MergeStep(merged=tuple(pair),
                               bridges=g.bridges(*pair),
                               consumed=tuple(consumed)))
        chain.append(_partition_of(set(block.values())))
    return SeqTrace(chain=tuple(chain), steps=tuple(steps))


def block_tree(g: Graph, ordering) -> ReassemblyTree:
    """The binary reassembling whose clusters are all blocks of the chain."""
    trace = seq_reassemble(g, ordering)
    masks = {mask_of(b) for p in trace.chain for b in p}
    return ReassemblyTree._trusted(g.full_mask, masks)


def chain_to_ordering(g: Graph, chain) -> tuple:
    """Emit an edge ordering that reproduces a strict maximal chain: per
    merge, the lexicographically least bridge first, then the other consumed
    edges in lexicographic order."""
    parts = [tuple(sorted((frozenset(b) for b in p), key=min)) for p in chain]
    if len(parts) != g.n:
        raise ValidationError(f"chain must have exactly {g.n} partitions")
    if parts[0] != _partition_of([1 << (v - 1) for v in g.vertices]):
        raise ValidationError("chain must start with the singleton partition")
    if parts[-1] != (frozenset(g.vertices),):
        raise ValidationError("chain must end with the one-block partition")
    out = []
    for idx, (cur, nxt) in enumerate(zip(parts, parts[1:])):
        gone = [b for b in cur if b not in nxt]
        new = [b for b in nxt if b not in cur]
        if len(gone) != 2 or len(new) != 1 or new[0] != gone[0] | gone[1]:
            raise ValidationError(f"step {idx + 1} is not a single merge of two blocks")
        bridges = g.bridges(gone[0], gone[1])
        if not bridges:
            raise ValidationError(
                f"non-strict chain: no edge between {sorted(gone[0])} and {sorted(gone[1])}")
        out.extend(bridges)  # already lexicographic; the least one leads
    return tuple(out)


def canonical_ordering(g: Graph, tree: ReassemblyTree) -> tuple:
    """Canonical edge ordering of a strict reassembling.

    Built bottom-up: a singleton contributes nothing; an internal cluster
    concatenates its children's orderings (the one with the smaller first
    edge leading) followed by the bridge set in lexicographic order.
    Feeding the result back through the block-merging process reproduces the
    tree.
    """
    from .tree import first_nonstrict_pair

    if tree.ground_mask != g.full_mask:
        raise ValidationError("tree ground set does not match the graph's vertex set")
    bad = first_nonstrict_pair(g, tree)
    if bad is not None:
        raise ValidationError(
            f"tree is not strict: no edge between {sorted(bad[0])} and {sorted(bad[1])}")

    memo = {}

    def can(m: int) -> tuple:
        if popcount(m) == 1:
            return ()
        if m in memo:
            return memo[m]
        a, b = tree._children[m]
        ca, cb = can(a), can(b)
        bridges = g.bridges(vertices_of(a), vertices_of(b))
        if ca and cb and cb[0] < ca[0]:
            ca, cb = cb, ca
        memo[m] = ca + cb + bridges
        return memo[m]

    out = can(tree.ground_mask)
    assert len(out) == g.m
    return out


def parse_ordering(text: str) -> tuple:
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValidationError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            edges.append(_norm_edge((int(parts[0]), int(parts[1]))))
        except ValueError:
            raise ValidationError(f"line {lineno}: expected 'u v', got {line!r}") from None
    if not edges:
        raise ValidationError("empty ordering file")
    return tuple(edges)


def format_ordering(ordering) -> str:
    return "\n".join(f"{u} {v}" for u, v in ordering) + "\n"
