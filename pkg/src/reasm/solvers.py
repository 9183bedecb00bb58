"""Exact optimizers for arrangements and reassemblings.

The workhorse is a subset DP over prefix sets: the cost of the best
completion h[S] only depends on the set S of already-placed vertices, since
every later cut is the boundary degree of a superset of S.  beta accumulates
cuts, alpha takes the running maximum; witnesses are rebuilt greedily from
the front, always taking the smallest vertex that still allows an optimal
completion, so reported witnesses are lexicographically least.

Linear reassemblings are solved through arrangements: a linear tree whose
first cluster is {w, w'} with deg(w) <= deg(w') corresponds to an
arrangement anchored at w (w first, second vertex of no smaller degree), and

    beta(G, L) = beta(G, phi) + sum of deg(v) over v != w
    alpha(G, L) = max(max degree, alpha(G, phi))

so minimizing over feasible anchors is exact.

Brute-force engines (factorial scan of arrangements, full enumeration of
unordered binary trees) cover small instances as independent references.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import LimitError, ValidationError
from .graph import Graph, iter_bits, popcount, vertices_of
from .layout import Arrangement, format_arrangement, induce_reassembling
from .tree import ReassemblyTree, print_tree

DEFAULT_DP_LIMIT = 24
BRUTE_ARRANGEMENT_LIMIT = 10
BRUTE_TREE_LIMIT = 8

_INF = float("inf")


def dp_limit() -> int:
    raw = os.environ.get("REASM_DP_LIMIT")
    if raw is None:
        return DEFAULT_DP_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"REASM_DP_LIMIT must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class SolveResult:
    objective: str  # "alpha" | "beta"
    mode: str  # "arrangement" | "linear_reassembling" | "binary_reassembling"
    value: int
    witness: Union[Arrangement, ReassemblyTree]
    anchor: Optional[int] = None
    stats: dict = field(default_factory=dict, compare=False)

    def witness_text(self) -> str:
        if isinstance(self.witness, Arrangement):
            return format_arrangement(self.witness).strip()
        return print_tree(self.witness)

    def to_json(self) -> dict:
        return {"objective": self.objective, "mode": self.mode, "value": self.value,
                "witness": self.witness_text(), "anchor": self.anchor,
                "stats": {"states": self.stats.get("states", 0),
                          "millis": self.stats.get("millis", 0)}}


def _check_objective(objective: str) -> None:
    if objective not in ("alpha", "beta"):
        raise ValidationError(f"objective must be 'alpha' or 'beta', got {objective!r}")


def _check_solvable(g: Graph, limit: int) -> None:
    if not g.is_connected():
        raise ValidationError("optimizers need a connected graph")
    if g.n > limit:
        raise LimitError(f"instance has {g.n} vertices, limit is {limit}")


def _cut_table(g: Graph) -> list:
    """Boundary degree of every vertex subset, indexed by bitmask."""
    full = g.full_mask
    deg = [popcount(a) for a in g.adj]
    adj = g.adj
    cut = [0] * (full + 1)
    for m in range(1, full + 1):
        low = m & -m
        v = low.bit_length()
        rest = m ^ low
        cut[m] = cut[rest] + deg[v - 1] - 2 * popcount(adj[v - 1] & rest)
    return cut


def _suffix_table(g: Graph, objective: str, cut: list) -> list:
    """h[S] = best achievable cost of the cuts still to come after placing S."""
    full = g.full_mask
    h = [0] * (full + 1)
    if objective == "beta":
        for s in range(full - 1, -1, -1):
            rem = full ^ s
            best = _INF
            while rem:
                low = rem & -rem
                rem ^= low
                t = s | low
                val = cut[t] + h[t]
                if val < best:
                    best = val
            h[s] = best
    else:
        for s in range(full - 1, -1, -1):
            rem = full ^ s
            best = _INF
            while rem:
                low = rem & -rem
                rem ^= low
                t = s | low
                val = cut[t] if cut[t] > h[t] else h[t]
                if val < best:
                    best = val
            h[s] = best
    return h


def _combine(objective: str, step: int, rest) -> int:
    return step + rest if objective == "beta" else max(step, rest)


def _greedy_completion(g: Graph, objective: str, cut: list, h: list, prefix: list,
                       budget: int = 0) -> list:
    """Lexicographically least optimal completion of `prefix`.

    For beta every step must be exactly tight against the suffix table; for
    alpha a step is fine whenever it stays within `budget` (the final
    value), since an earlier cut may already dominate the maximum.
    """
    order = list(prefix)
    s = 0
    for v in order:
        s |= 1 << (v - 1)
    full = g.full_mask
    while s != full:
        for v in iter_bits(full ^ s):
            t = s | (1 << (v - 1))
            if objective == "beta":
                good = cut[t] + h[t] == h[s]
            else:
                good = cut[t] <= budget and h[t] <= budget
            if good:
                order.append(v)
                s = t
                break
        else:
            raise AssertionError("suffix table is inconsistent")
    return order


def _anchored_start(g: Graph, objective: str, cut: list, h: list, w: int):
    """Best (value, second vertex) for arrangements anchored at w, or None
    if no vertex of degree >= deg(w) can be placed second."""
    dw = g.degree(w)
    wbit = 1 << (w - 1)
    best = None
    for v in g.vertices:
        if v == w or g.degree(v) < dw:
            continue
        t = wbit | (1 << (v - 1))
        val = _combine(objective, cut[wbit], _combine(objective, cut[t], h[t]))
        if best is None or (val, v) < best:
            best = (val, v)
    return best


def exact_arrangement(g: Graph, objective: str, anchor: Optional[int] = None) -> SolveResult:
    """Optimal arrangement by subset DP (free, or anchored at a vertex)."""
    _check_objective(objective)
    _check_solvable(g, dp_limit())
    if anchor is not None:
        g._check_vertex(anchor)
    t0 = time.perf_counter()
    if g.n == 1:
        if anchor is not None:
            raise ValidationError(
                f"anchor {anchor} infeasible: no second vertex of degree >= deg({anchor})")
        return SolveResult(objective, "arrangement", 0, Arrangement((1,)),
                           stats={"states": 1, "millis": 0})
    cut = _cut_table(g)
    h = _suffix_table(g, objective, cut)
    if anchor is None:
        value = h[0]
        order = _greedy_completion(g, objective, cut, h, [], budget=value)
    else:
        start = _anchored_start(g, objective, cut, h, anchor)
        if start is None:
            raise ValidationError(
                f"anchor {anchor} infeasible: no second vertex of degree >= deg({anchor})")
        value, second = start
        order = _greedy_completion(g, objective, cut, h, [anchor, second], budget=value)
    millis = int((time.perf_counter() - t0) * 1000)
    return SolveResult(objective, "arrangement", int(value), Arrangement(tuple(order)),
                       anchor=anchor, stats={"states": len(h), "millis": millis})


def exact_linear_reassembling(g: Graph, objective: str,
                              anchor: Optional[int] = None) -> SolveResult:
    """Optimal linear reassembling via anchored arrangements."""
    _check_objective(objective)
    _check_solvable(g, dp_limit())
    if anchor is not None:
        g._check_vertex(anchor)
    t0 = time.perf_counter()
    if g.n == 1:
        if anchor is not None:
            raise ValidationError(
                f"anchor {anchor} infeasible: no second vertex of degree >= deg({anchor})")
        tree = ReassemblyTree([[1]])
        return SolveResult(objective, "linear_reassembling", 0, tree,
                           stats={"states": 1, "millis": 0})
    cut = _cut_table(g)
    h = _suffix_table(g, objective, cut)
    total_deg = 2 * g.m
    maxdeg = g.max_degree()
    anchors = [anchor] if anchor is not None else list(g.vertices)
    best = None  # (value, w, second)
    for w in anchors:
        start = _anchored_start(g, objective, cut, h, w)
        if start is None:
            if anchor is not None:
                raise ValidationError(
                    f"anchor {w} infeasible: no second vertex of degree >= deg({w})")
            continue
        arr_value, second = start
        if objective == "beta":
            value = arr_value + (total_deg - g.degree(w))
        else:
            value = max(maxdeg, arr_value)
        if best is None or (value, w) < best[:2]:
            best = (value, w, second)
    assert best is not None, "some vertex of minimum degree is always feasible"
    value, w, second = best
    if objective == "alpha":
        # the max degree may dominate the cut profile, leaving slack for a
        # lexicographically smaller second vertex within the tree value
        wbit = 1 << (w - 1)
        for v in g.vertices:
            if v == w or g.degree(v) < g.degree(w):
                continue
            t = wbit | (1 << (v - 1))
            if cut[t] <= value and h[t] <= value:
                second = v
                break
    order = _greedy_completion(g, objective, cut, h, [w, second], budget=value)
    tree = induce_reassembling(g, Arrangement(tuple(order)))
    millis = int((time.perf_counter() - t0) * 1000)
    return SolveResult(objective, "linear_reassembling", int(value), tree,
                       anchor=w, stats={"states": len(h), "millis": millis})


# ---------------------------------------------------------------------------
# brute force references

def brute_force_arrangement(g: Graph, objective: str,
                            anchor: Optional[int] = None) -> SolveResult:
    """Factorial scan over all arrangements (reference implementation)."""
    _check_objective(objective)
    _check_solvable(g, BRUTE_ARRANGEMENT_LIMIT)
    t0 = time.perf_counter()
    adj = g.adj
    deg = [popcount(a) for a in adj]
    if anchor is not None:
        g._check_vertex(anchor)
        rest = [v for v in g.vertices if v != anchor]
        heads = [(anchor,)]
    else:
        rest = None
        heads = [()]
    best = None
    count = 0
    for head in heads:
        pool = rest if rest is not None else list(g.vertices)
        for perm in itertools.permutations(pool):
            order = head + perm
            if anchor is not None:
                if len(order) < 2 or deg[order[1] - 1] < deg[anchor - 1]:
                    continue
            count += 1
            prefix = 0
            cur = 0
            value = 0
            for v in order:
                cur += deg[v - 1] - 2 * popcount(adj[v - 1] & prefix)
                prefix |= 1 << (v - 1)
                if objective == "beta":
                    value += cur
                elif cur > value:
                    value = cur
            if best is None or value < best[0]:
                best = (value, order)
    if best is None:
        raise ValidationError(
            f"anchor {anchor} infeasible: no second vertex of degree >= deg({anchor})")
    millis = int((time.perf_counter() - t0) * 1000)
    return SolveResult(objective, "arrangement", best[0], Arrangement(best[1]),
                       anchor=anchor, stats={"states": count, "millis": millis})


def count_binary_trees(n: int) -> int:
    """(2n-3)!! unordered binary trees on n labeled leaves."""
    out = 1
    for k in range(3, 2 * n - 2, 2):
        out *= k
    return out


def _enumerate_subtrees(g: Graph, objective: str):
    """Full enumeration of unordered binary trees per vertex subset.

    Entries are (value, shape) where shape is the nested (mask, left, right)
    structure; the recursion fixes the lowest vertex of each subset into the
    left part, so every unordered tree appears exactly once.
    """
    deg = [popcount(a) for a in g.adj]
    memo = {}

    def enum(mask: int) -> list:
        if mask in memo:
            return memo[mask]
        if not (mask & (mask - 1)):
            v = mask.bit_length()
            memo[mask] = [(deg[v - 1], mask)]
            return memo[mask]
        d = g.cut_mask(mask)
        low = mask & -mask
        rest = mask ^ low
        out = []
        # all sub-masks a of `rest`: left part is low | a
        a = rest
        while True:
            left = low | (rest ^ a)
            right = mask ^ left
            if right:
                for va, sa in enum(left):
                    for vb, sb in enum(right):
                        if objective == "beta":
                            out.append((d + va + vb, (mask, sa, sb)))
                        else:
                            out.append((max(d, va, vb), (mask, sa, sb)))
            if a == 0:
                break
            a = (a - 1) & rest
        memo[mask] = out
        return out

    return enum


def _shape_masks(shape, acc: list) -> None:
    if isinstance(shape, int):
        acc.append(shape)
        return
    mask, left, right = shape
    acc.append(mask)
    _shape_masks(left, acc)
    _shape_masks(right, acc)


def brute_force_binary_reassembling(g: Graph, objective: str) -> SolveResult:
    """Optimum over all binary reassemblings by exhaustive enumeration."""
    _check_objective(objective)
    _check_solvable(g, BRUTE_TREE_LIMIT)
    t0 = time.perf_counter()
    enum = _enumerate_subtrees(g, objective)
    entries = enum(g.full_mask)
    assert len(entries) == count_binary_trees(g.n)
    value, shape = min(entries, key=lambda e: e[0])
    masks: list = []
    _shape_masks(shape, masks)
    tree = ReassemblyTree._trusted(g.full_mask, masks)
    millis = int((time.perf_counter() - t0) * 1000)
    return SolveResult(objective, "binary_reassembling", value, tree,
                       stats={"states": len(entries), "millis": millis})
