"""Shared fixtures: the exhaustive small-graph catalog, an independent
binary-tree enumerator and a CLI runner."""

from functools import lru_cache
from pathlib import Path

import networkx as nx
import pytest

from reasm.graph import Graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def _from_networkx(nxg) -> Graph:
    relabel = {node: i + 1 for i, node in enumerate(sorted(nxg.nodes()))}
    edges = tuple((relabel[u], relabel[v]) for u, v in nxg.edges())
    return Graph(len(relabel), edges)


@lru_cache(maxsize=None)
def connected_atlas(max_n: int) -> tuple:
    """One representative per isomorphism class of connected graphs with
    1..max_n vertices (atlas order)."""
    out = []
    for nxg in nx.graph_atlas_g():
        n = nxg.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(nxg):
            out.append(_from_networkx(nxg))
    return tuple(out)


@pytest.fixture(scope="session")
def atlas6() -> tuple:
    graphs = connected_atlas(6)
    # 1 + 1 + 2 + 6 + 21 + 112 classes for n = 1..6
    assert len(graphs) == 143
    return graphs


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


@lru_cache(maxsize=None)
def _trees_over(mask: int) -> tuple:
    if mask & (mask - 1) == 0:
        return ((mask,),)
    low = mask & -mask
    rest = mask ^ low
    out = []
    # the child holding the lowest vertex is enumerated as `low | s`, so
    # every unordered pair of children appears exactly once
    s = rest
    while s:
        s = (s - 1) & rest
        left, right = low | s, mask ^ (low | s)
        if not right:
            continue
        for lt in _trees_over(left):
            for rt in _trees_over(right):
                out.append(lt + rt + (mask,))
    return tuple(out)


def binary_tree_masks(n: int) -> tuple:
    """Cluster masks of every binary tree over {1..n}, one tuple per tree."""
    trees = _trees_over((1 << n) - 1)
    assert len(trees) == double_factorial(2 * n - 3)
    return trees


@pytest.fixture
def run_cli(capsys):
    from reasm.cli import main

    def go(*argv):
        try:
            code = main([str(a) for a in argv])
        except SystemExit as exc:  # argparse usage errors
            code = exc.code
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return go
