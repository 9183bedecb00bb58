import pytest

from reasm.errors import ValidationError
from reasm.graph import complete_graph, path_graph, star_graph
from reasm.tree import (Cluster, ReassemblyTree, cross_sections,
                        first_nonstrict_pair, is_strict, measures, parse_tree,
                        print_tree, validate_tree)

from conftest import binary_tree_masks

B1 = "((((1 2) (3 4)) (5 6)) (7 8))"
CHAIN8 = "(((((((1 2) 3) 4) 5) 6) 7) 8)"


def test_parse_print_roundtrip():
    for text in (B1, CHAIN8, "(1 2)", "((2 3) 1)"):
        tree = parse_tree(text)
        assert parse_tree(print_tree(tree)) == tree


def test_unordered_children_print_canonically():
    # the same tree written with children swapped
    assert parse_tree("(((((((2 3) 4) 1) 5) 6) 7) 8)") == \
        parse_tree("(((((1 ((2 3) 4)) 5) 6) 7) 8)")
    assert print_tree(parse_tree("(3 (2 1))")) == "((1 2) 3)"


@pytest.mark.parametrize("text", [
    "",
    "(1",
    "1)",
    "(1 2))",
    "(1 (2)",
    "(1 1)",
    "(1 x)",
    "(0 1)",
    "(1 2) 3",
])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValidationError):
        parse_tree(text)


def test_cluster_census():
    tree = parse_tree(B1)
    assert tree.n == 8
    assert len(tree.clusters) == 15  # 2n - 1
    assert Cluster({1, 2, 3, 4}) in tree.clusters
    assert tree.ground_mask == (1 << 8) - 1


def test_structure_queries():
    tree = parse_tree(B1)
    assert tree.sibling({1, 2}) == Cluster({3, 4})
    assert tree.parent({5, 6}) == Cluster({1, 2, 3, 4, 5, 6})
    assert tree.children({1, 2}) == (Cluster({1}), Cluster({2}))
    assert tree.children({7}) is None
    assert tree.path_to_root(7) == (
        Cluster({7}), Cluster({7, 8}), Cluster(range(1, 9)))
    assert tree.height() == 4
    assert tree.height_of({1, 2}) == 1
    sub = tree.subtree({1, 2, 3, 4})
    assert sub.ground_mask == 0b1111 and len(sub.clusters) == 7
    with pytest.raises(ValidationError):
        tree.sibling({1, 3})  # not a cluster


def test_validation_rejects_broken_cluster_sets():
    with pytest.raises(ValidationError, match="missing singleton"):
        ReassemblyTree([[1], [1, 2]])
    with pytest.raises(ValidationError, match="expected 5 clusters"):
        ReassemblyTree([[1], [2], [3], [1, 2, 3]])
    with pytest.raises(ValidationError, match="sibling"):
        ReassemblyTree([[1], [2], [3], [4], [1, 2], [1, 3], [1, 2, 3, 4]])
    with pytest.raises(ValidationError, match="empty"):
        ReassemblyTree([[1], [], [1, 2], [2]])
    ok = validate_tree([1, 2, 3], [[1], [2], [3], [2, 3], [1, 2, 3]])
    assert ok.is_linear()
    with pytest.raises(ValidationError):
        validate_tree([1, 2], [[1], [2], [1, 2], [3], [1, 2, 3]])


def test_equality_is_by_cluster_set():
    a = parse_tree("((1 2) (3 4))")
    b = parse_tree("((4 3) (2 1))")
    assert a == b and hash(a) == hash(b)
    assert a != parse_tree("(((1 2) 3) 4)")


def test_measures_by_hand():
    # path 1-2-3, tree ((1 2) 3): boundaries 1,2,1 for singletons, 1 for
    # {1,2}, 0 for the root
    rep = measures(path_graph(3), parse_tree("((1 2) 3)"))
    assert (rep.alpha, rep.beta) == (2, 5)
    assert rep.per_cluster[Cluster({1, 2})] == 1
    json = rep.to_json()
    assert json["alpha"] == 2 and json["beta"] == 5
    assert {"set": [1, 2], "degree": 1} in json["clusters"]


def test_measures_rejects_wrong_ground_set():
    with pytest.raises(ValidationError):
        measures(path_graph(3), parse_tree("(1 2)"))


def test_linearity():
    chain = parse_tree(CHAIN8)
    assert chain.is_linear()
    assert [min(c) for c in chain.linear_chain()] == [1] * 7
    assert [len(c) for c in chain.linear_chain()] == list(range(2, 9))
    bushy = parse_tree(B1)
    assert not bushy.is_linear()
    with pytest.raises(ValidationError):
        bushy.linear_chain()
    assert parse_tree("(1 2)").is_linear()


def test_strictness():
    s3 = star_graph(3)
    good = parse_tree("(((1 2) 3) 4)")
    assert is_strict(s3, good)
    bad = parse_tree("(((2 3) 1) 4)")
    assert first_nonstrict_pair(s3, bad) == (Cluster({2}), Cluster({3}))
    assert not is_strict(s3, bad)


def test_cross_sections_are_partitions():
    tree = parse_tree(B1)
    sections = cross_sections(tree)
    ground = set(range(1, 9))
    for parts in sections:
        flat = [v for part in parts for v in part]
        assert sorted(flat) == sorted(ground)
    assert tuple(Cluster([v]) for v in ground) in [tuple(s) for s in sections]


def test_every_enumerated_tree_validates():
    from reasm.graph import vertices_of
    for masks in binary_tree_masks(4):
        tree = ReassemblyTree([vertices_of(m) for m in masks])
        assert len(tree.clusters) == 7
        rep = measures(complete_graph(4), tree)
        assert rep.beta == sum(rep.per_cluster.values())
