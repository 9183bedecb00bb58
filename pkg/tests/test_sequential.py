import random

import pytest

from reasm.errors import ValidationError
from reasm.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from reasm.sequential import (block_tree, canonical_ordering,
                              chain_to_ordering, format_ordering,
                              parse_ordering, seq_reassemble)
from reasm.tree import is_strict, parse_tree


def frozensets(*groups):
    return tuple(frozenset(g) for g in groups)


def test_trace_on_a_path():
    g = path_graph(3)
    trace = seq_reassemble(g, [(1, 2), (2, 3)])
    assert trace.chain == (
        frozensets({1}, {2}, {3}),
        frozensets({1, 2}, {3}),
        frozensets({1, 2, 3}),
    )
    assert [s.merged for s in trace.steps] == [
        (frozenset({1}), frozenset({2})),
        (frozenset({1, 2}), frozenset({3})),
    ]
    assert trace.steps[1].bridges == ((2, 3),)


def test_merge_consumes_every_parallel_bridge():
    # after {1,2} forms, the edge (1,3) merges in 3 and (2,3) goes with it
    trace = seq_reassemble(complete_graph(3), [(1, 2), (1, 3), (2, 3)])
    assert len(trace.steps) == 2
    assert trace.steps[1].bridges == ((1, 3), (2, 3))
    assert trace.steps[1].consumed == ((1, 3), (2, 3))


def test_consumed_keeps_input_order():
    trace = seq_reassemble(complete_graph(3), [(2, 3), (1, 3), (1, 2)])
    assert trace.steps[1].bridges == ((1, 2), (1, 3))
    assert trace.steps[1].consumed == ((1, 3), (1, 2))


def test_trace_rejects_bad_input():
    g = path_graph(3)
    with pytest.raises(ValidationError):
        seq_reassemble(g, [(1, 2)])
    with pytest.raises(ValidationError):
        seq_reassemble(g, [(1, 2), (1, 3)])
    with pytest.raises(ValidationError):
        seq_reassemble(g, [(1, 2), (2, 3), (2, 3)])
    with pytest.raises(ValidationError):
        seq_reassemble(Graph(3, ((1, 2),)), [(1, 2)])  # disconnected


def test_block_tree_examples():
    g = star_graph(3)
    assert block_tree(g, [(1, 2), (1, 3), (1, 4)]) == parse_tree("(((1 2) 3) 4)")
    assert block_tree(g, [(1, 4), (1, 3), (1, 2)]) == parse_tree("(((1 4) 3) 2)")
    g = cycle_graph(4)
    assert block_tree(g, [(1, 2), (3, 4), (2, 3), (1, 4)]) == \
        parse_tree("((1 2) (3 4))")


def test_block_trees_are_strict():
    rng = random.Random(3)
    for g in (path_graph(5), cycle_graph(6), complete_graph(5), star_graph(4)):
        for _ in range(20):
            pi = list(g.edges)
            rng.shuffle(pi)
            tree = block_tree(g, pi)
            assert is_strict(g, tree)
            assert len(tree.clusters) == 2 * g.n - 1


def test_chain_to_ordering_inverts_the_trace():
    rng = random.Random(4)
    for g in (path_graph(5), cycle_graph(5), complete_graph(4)):
        for _ in range(10):
            pi = list(g.edges)
            rng.shuffle(pi)
            chain = seq_reassemble(g, pi).chain
            again = seq_reassemble(g, chain_to_ordering(g, chain))
            assert again.chain == chain


def test_chain_to_ordering_rejects_bad_chains():
    g = path_graph(3)
    good = seq_reassemble(g, [(1, 2), (2, 3)]).chain
    with pytest.raises(ValidationError):
        chain_to_ordering(g, good[1:])  # does not start with singletons
    with pytest.raises(ValidationError):
        chain_to_ordering(g, good[:-1])  # does not end with one block
    # a merge of two blocks with no edge between them
    bad = (frozensets({1}, {2}, {3}), frozensets({1, 3}, {2}),
           frozensets({1, 2, 3}))
    with pytest.raises(ValidationError):
        chain_to_ordering(g, bad)


def test_canonical_ordering_reproduces_the_tree():
    rng = random.Random(9)
    for g in (path_graph(6), cycle_graph(6), complete_graph(5), star_graph(5)):
        for _ in range(20):
            pi = list(g.edges)
            rng.shuffle(pi)
            tree = block_tree(g, pi)
            can = canonical_ordering(g, tree)
            assert block_tree(g, can) == tree
            # canonical form is a fixpoint
            assert canonical_ordering(g, block_tree(g, can)) == can


def test_canonical_ordering_needs_a_strict_tree():
    s3 = star_graph(3)
    with pytest.raises(ValidationError, match="not strict"):
        canonical_ordering(s3, parse_tree("(((2 3) 1) 4)"))


def test_ordering_file_roundtrip():
    pi = ((1, 2), (2, 3), (1, 3))
    text = format_ordering(pi)
    assert parse_ordering(text) == pi
    assert parse_ordering("1 2 # comment\n\n2 3\n") == ((1, 2), (2, 3))
    with pytest.raises(ValidationError):
        parse_ordering("")
    with pytest.raises(ValidationError):
        parse_ordering("1 2 3\n")
    with pytest.raises(ValidationError):
        parse_ordering("1 x\n")
