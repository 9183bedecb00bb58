"""Reductions between beta-optimal linear reassembling and beta-optimal
linear arrangement, and the degree-3 pipeline for alpha.

The beta reduction glues a clique onto a chosen anchor w: the auxiliary
graph G_w adds p = sum of all degrees of G fresh vertices U, joined to w and
to each other so that U + {w} induces a complete graph on p + 1 vertices.
Orders of V(G_w) are scored as sequences of per-prefix pairs (r, s) counting
base-graph and clique edges separately.  Two normalization moves --
descattering (pull a base vertex out of the clique block) and rebalancing
(put all of V - {w} on one side of w) -- never increase beta, which forces
every beta-optimal order of G_w into the shape  U ... U  w  V-{w},  and in
that shape the restriction to V is an optimal anchored solution of the
original problem.  Minimizing over all anchors gives the exact optimum.

For alpha on graphs of maximum degree <= 3 the pipeline branches on whether
every degree-3 vertex is a cut vertex; an exact subset-DP arrangement solve
stands in for the specialized polynomial-time algorithm in the branch where
that holds, and otherwise the alpha-optimal linear reassembling induces an
alpha-optimal arrangement.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ValidationError
from .graph import Deg3Report, Graph, classify_deg3, popcount
from .layout import (Arrangement, evaluate_arrangement, format_arrangement,
                     induce_arrangement, induce_reassembling)
from .solvers import exact_arrangement, exact_linear_reassembling
from .tree import ReassemblyTree, measures, print_tree

R2A = "reassembling_to_arrangement"  # solve reassembling with an arrangement solver
A2R = "arrangement_to_reassembling"  # solve arrangement with a reassembling solver


@dataclass(frozen=True)
class AuxiliaryGraph:
    """G_w: the base graph plus a (p+1)-clique glued onto the anchor w."""

    base: Graph
    w: int
    p: int
    combined: Graph

    @property
    def u_vertices(self) -> range:
        return range(self.base.n + 1, self.base.n + self.p + 1)

    @property
    def u_mask(self) -> int:
        return ((1 << self.p) - 1) << self.base.n

    @property
    def k_mask(self) -> int:
        """U + {w}: the clique side of the sequence bookkeeping."""
        return self.u_mask | (1 << (self.w - 1))


def build_auxiliary(g: Graph, w: int) -> AuxiliaryGraph:
    if not g.is_connected():
        raise ValidationError("auxiliary construction needs a connected base graph")
    g._check_vertex(w)
    p = 2 * g.m
    assert p % 2 == 0
    us = range(g.n + 1, g.n + p + 1)
    edges = list(g.edges)
    edges.extend((w, u) for u in us)
    edges.extend(itertools.combinations(us, 2))
    return AuxiliaryGraph(base=g, w=w, p=p, combined=Graph(g.n + p, tuple(edges)))


@dataclass(frozen=True)
class VCSequence:
    """An order of V(G_w) with per-prefix pairs (r, s): r counts base-graph
    edges crossing the prefix, s counts clique edges.  Pairs cover the
    n + p - 1 proper prefixes; beta(S) is the sum of all r + s."""

    aux: AuxiliaryGraph
    order: tuple
    pairs: tuple

    @property
    def beta(self) -> int:
        return sum(r + s for r, s in self.pairs)

    def reversed(self) -> "VCSequence":
        return vc_sequence(self.aux, tuple(reversed(self.order)))


def vc_sequence(aux: AuxiliaryGraph, order) -> VCSequence:
    order = tuple(order)
    nv = aux.combined.n
    if len(order) != nv or set(order) != set(range(1, nv + 1)):
        raise ValidationError("order is not a permutation of the auxiliary vertices")
    base_adj = aux.base.adj + (0,) * aux.p
    k = aux.k_mask
    pairs = []
    prefix = 0
    r = s = 0
    for v in order[:-1]:
        bit = 1 << (v - 1)
        r += popcount(base_adj[v - 1]) - 2 * popcount(base_adj[v - 1] & prefix)
        if bit & k:
            inside = popcount(k & prefix)
            s += (aux.p - inside) - inside  # clique degree p, minus edges closed
        prefix |= bit
        pairs.append((r, s))
    return VCSequence(aux=aux, order=order, pairs=tuple(pairs))


def _k_positions(seq: VCSequence) -> list:
    k = seq.aux.k_mask
    return [i for i, v in enumerate(seq.order, start=1) if (1 << (v - 1)) & k]


def scatter(seq: VCSequence) -> int:
    """0 iff the clique vertices sit consecutively; otherwise min(j-i, l-k)
    where i/l are the outermost clique positions and j/k the nearest base
    vertices inside them."""
    pos = _k_positions(seq)
    i, l = pos[0], pos[-1]
    if l - i + 1 == len(pos):
        return 0
    kset = set(pos)
    j = next(t for t in range(i + 1, l) if t not in kset)
    kk = next(t for t in range(l - 1, i, -1) if t not in kset)
    return min(j - i, l - kk)


def unbalance(seq: VCSequence) -> int:
    aux = seq.aux
    n, p = aux.base.n, aux.p
    wpos = seq.order.index(aux.w) + 1
    umask = aux.u_mask
    a_left = b_left = 0
    for v in seq.order[:wpos - 1]:
        if (1 << (v - 1)) & umask:
            b_left += 1
        else:
            a_left += 1
    a_right = (n - 1) - a_left
    b_right = p - b_left
    return min((n - a_left - 1) + (p - b_right),
               (n - a_right - 1) + (p - b_left))


def descatter_move(seq: VCSequence) -> VCSequence:
    """Pull the blocking base vertex across the nearer outer clique run
    (left on ties).  Strictly decreases beta."""
    pos = _k_positions(seq)
    i, l = pos[0], pos[-1]
    if l - i + 1 == len(pos):
        raise ValidationError("sequence is not scattered")
    kset = set(pos)
    j = next(t for t in range(i + 1, l) if t not in kset)
    kk = next(t for t in range(l - 1, i, -1) if t not in kset)
    order = list(seq.order)
    if j - i <= l - kk:
        v = order.pop(j - 1)
        order.insert(i - 1, v)
    else:
        v = order.pop(kk - 1)
        order.insert(l - 1, v)  # lands right after the old position l
    out = vc_sequence(seq.aux, tuple(order))
    assert out.beta < seq.beta, "descatter failed to decrease beta"
    return out


def rebalance_move(seq: VCSequence) -> VCSequence:
    """One rebalancing step on an unscattered, unbalanced sequence.

    With the clique block at positions i0..i0+p and w offset k inside it:
    k = 0 moves every base vertex on the right to just before w; k = p
    mirrors that; otherwise w is transposed with the clique end on the side
    holding fewer of its base neighbors (a beta-preserving left transposition
    followed by the k = 0 relocation when the two sides tie).  beta never
    increases, and it strictly decreases except in the tie transposition.
    """
    if scatter(seq) != 0:
        raise ValidationError("rebalance needs an unscattered sequence")
    if unbalance(seq) == 0:
        raise ValidationError("sequence is already balanced")
    aux = seq.aux
    p = aux.p
    pos = _k_positions(seq)
    i0 = pos[0]
    order = list(seq.order)
    k = order.index(aux.w) + 1 - i0
    before = seq.beta

    def relocate_right_block_before_w(cur):
        left, run, right = cur[:i0 - 1], cur[i0 - 1:i0 + p], cur[i0 + p:]
        return left + right + run

    def relocate_left_block_after_w(cur):
        left, run, right = cur[:i0 - 1], cur[i0 - 1:i0 + p], cur[i0 + p:]
        return run + left + right

    if k == 0:
        order = relocate_right_block_before_w(order)
    elif k == p:
        order = relocate_left_block_after_w(order)
    else:
        w_at = i0 + k - 1
        wbit_neighbors = aux.base.adj[aux.w - 1]
        d_left = sum(1 for v in order[:i0 - 1] if wbit_neighbors & (1 << (v - 1)))
        d_right = sum(1 for v in order[i0 + p:] if wbit_neighbors & (1 << (v - 1)))
        if d_left >= d_right:
            order[i0 - 1], order[w_at] = order[w_at], order[i0 - 1]
            if d_left == d_right:
                tied = vc_sequence(aux, tuple(order))
                if unbalance(tied) > 0:
                    order = relocate_right_block_before_w(order)
        else:
            order[i0 + p - 1], order[w_at] = order[w_at], order[i0 + p - 1]
    out = vc_sequence(aux, tuple(order))
    assert out.beta <= before, "rebalance increased beta"
    return out


def normalize_sequence(seq: VCSequence) -> VCSequence:
    """Descatter then rebalance to a fixpoint: scatter 0, unbalance 0, and
    beta no larger than the input's.  Balanced inputs come back unchanged."""
    guard = 0
    while True:
        if scatter(seq) > 0:
            seq = descatter_move(seq)
        elif unbalance(seq) > 0:
            seq = rebalance_move(seq)
        else:
            return seq
        guard += 1
        assert guard <= 4 * len(seq.order) + seq.beta, "normalization failed to terminate"


def _is_right_balanced(seq: VCSequence) -> bool:
    p = seq.aux.p
    umask = seq.aux.u_mask
    head_ok = all((1 << (v - 1)) & umask for v in seq.order[:p])
    return head_ok and seq.order[p] == seq.aux.w


# ---------------------------------------------------------------------------
# beta reduction

@dataclass(frozen=True)
class ReductionReport:
    problem: str
    direction: str
    anchors: tuple  # ((w, beta), ...) in anchor order
    best_anchor: int
    best_value: int
    best_object: object  # ReassemblyTree (r2a) or Arrangement (a2r)
    checks: dict

    def to_json(self) -> dict:
        if isinstance(self.best_object, Arrangement):
            text = format_arrangement(self.best_object).strip()
        else:
            text = print_tree(self.best_object)
        return {"problem": self.problem, "direction": self.direction,
                "anchors": [{"w": w, "beta": b} for w, b in self.anchors],
                "best": {"w": self.best_anchor, "beta": self.best_value, "object": text},
                "checks": dict(self.checks)}


def _solve_anchor(g: Graph, w: int, direction: str,
                  inner_solver: Optional[Callable]) -> tuple:
    aux = build_auxiliary(g, w)
    if direction == R2A:
        solver = inner_solver or (lambda gg: exact_arrangement(gg, "beta"))
        res = solver(aux.combined)
        if res.mode != "arrangement":
            raise ValidationError("inner solver must produce arrangements for r2a")
        order = res.witness.order
    else:
        solver = inner_solver or (lambda gg: exact_linear_reassembling(gg, "beta"))
        res = solver(aux.combined)
        if res.mode != "linear_reassembling":
            raise ValidationError("inner solver must produce linear reassemblings for a2r")
        order = induce_arrangement(aux.combined, res.witness).order
    s = vc_sequence(aux, order)
    scatter0 = scatter(s) == 0
    balanced = unbalance(s) == 0
    s = normalize_sequence(s)
    if not _is_right_balanced(s):
        s = s.reversed()
    assert _is_right_balanced(s), "normalized sequence is not balanced"
    restricted = tuple(v for v in s.order if v <= g.n)
    assert restricted[0] == w
    anchored_tree = induce_reassembling(g, Arrangement(restricted))
    if direction == R2A:
        beta = measures(g, anchored_tree).beta
        obj = anchored_tree
    else:
        arr = induce_arrangement(g, anchored_tree)
        beta = evaluate_arrangement(g, arr).beta
        obj = arr
    return w, beta, obj, scatter0, balanced


def _solve_anchor_task(args):
    g, w, direction = args
    return _solve_anchor(g, w, direction, None)


def reduce_beta(g: Graph, direction: str,
                inner_solver: Optional[Callable] = None,
                jobs: int = 1) -> ReductionReport:
    """Solve one beta problem exactly through the other, one auxiliary graph
    per anchor; the winner is the (beta, anchor) lexicographic minimum."""
    if direction not in (R2A, A2R):
        raise ValidationError(f"direction must be {R2A!r} or {A2R!r}")
    if not g.is_connected():
        raise ValidationError("beta reduction needs a connected graph")
    if jobs > 1 and inner_solver is None and g.n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_solve_anchor_task,
                                 [(g, w, direction) for w in g.vertices]))
    else:
        rows = [_solve_anchor(g, w, direction, inner_solver) for w in g.vertices]
    rows.sort(key=lambda row: row[0])
    best = min(rows, key=lambda row: (row[1], row[0]))
    return ReductionReport(
        problem="beta",
        direction=direction,
        anchors=tuple((w, beta) for w, beta, *_ in rows),
        best_anchor=best[0],
        best_value=best[1],
        best_object=best[2],
        checks={"scatter0": all(r[3] for r in rows),
                "balanced": all(r[4] for r in rows)})


# ---------------------------------------------------------------------------
# alpha pipeline

@dataclass(frozen=True)
class AlphaReductionReport:
    branch: str  # "all_deg3_cut" | "noncut_deg3"
    classifier: Deg3Report
    value: int
    witness: Arrangement

    def to_json(self) -> dict:
        return {"problem": "alpha", "branch": self.branch,
                "classifier": {"max_degree": self.classifier.max_degree,
                               "all_deg3_are_cut": self.classifier.all_deg3_are_cut,
                               "noncut_deg3_witness": self.classifier.noncut_deg3_witness},
                "value": self.value,
                "witness": format_arrangement(self.witness).strip()}


def reduce_alpha(g: Graph, inner_solver: Optional[Callable] = None) -> AlphaReductionReport:
    """Cutwidth-optimal arrangement for max degree <= 3.

    If every degree-3 vertex is a cut vertex, solve the arrangement problem
    directly (exact subset DP standing in for the specialized
    polynomial-time algorithm).  Otherwise solve the alpha-optimal linear
    reassembling and return its induced arrangement, which is then
    alpha-optimal among arrangements.
    """
    if not g.is_connected():
        raise ValidationError("alpha reduction needs a connected graph")
    report = classify_deg3(g)
    if report.max_degree > 3:
        raise ValidationError(
            f"alpha reduction needs maximum degree <= 3, got {report.max_degree}")
    if report.all_deg3_are_cut:
        res = exact_arrangement(g, "alpha")
        return AlphaReductionReport(branch="all_deg3_cut", classifier=report,
                                    value=res.value, witness=res.witness)
    solver = inner_solver or (lambda gg: exact_linear_reassembling(gg, "alpha"))
    res = solver(g)
    if res.mode != "linear_reassembling":
        raise ValidationError("inner solver must produce linear reassemblings")
    arr = induce_arrangement(g, res.witness)
    value = evaluate_arrangement(g, arr).alpha
    return AlphaReductionReport(branch="noncut_deg3", classifier=report,
                                value=value, witness=arr)


def alpha_reassembling_from_arrangement(g: Graph, arr: Arrangement) -> ReassemblyTree:
    """The linear reassembling induced by an arrangement; applied to an
    alpha-optimal arrangement it is alpha-optimal among linear
    reassemblings."""
    return induce_reassembling(g, arr)
