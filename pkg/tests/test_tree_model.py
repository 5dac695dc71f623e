import random
from itertools import combinations

import pytest

from subtree_spectra.errors import (
    InvalidParameters,
    MalformedLine,
    NotATree,
    VertexOutOfRange,
)
from subtree_spectra.tree_enum import enumerate_free_trees, random_tree
from subtree_spectra.tree_model import (
    FamilySpec,
    Tree,
    brute_force_isomorphic,
    build_family,
    canonical_code,
    delete_vertex,
    parse_edge_list,
    tree_centers,
)


def degree_sequence(t):
    return sorted(t.degree(v) for v in range(t.n))


def test_parse_path3():
    t = parse_edge_list("0 1\n1 2")
    assert t.n == 3 and degree_sequence(t) == [1, 1, 2]


def test_parse_star():
    t = parse_edge_list("0 1\n0 2\n0 3")
    assert degree_sequence(t) == [1, 1, 1, 3]


def test_parse_rejects_disconnected():
    with pytest.raises(NotATree):
        parse_edge_list("0 1\n2 3")


def test_parse_rejects_cycle():
    with pytest.raises(NotATree):
        parse_edge_list("0 1\n1 2\n2 0")


def test_parse_rejects_self_loop_and_parallel():
    with pytest.raises(NotATree):
        parse_edge_list("0 0\n0 1\n1 2")
    with pytest.raises(NotATree):
        parse_edge_list("0 1\n1 0\n1 2")


def test_parse_malformed():
    with pytest.raises(MalformedLine):
        parse_edge_list("0 1 2")
    with pytest.raises(MalformedLine):
        parse_edge_list("0 x")
    with pytest.raises(MalformedLine):
        parse_edge_list("-1 0")


def test_parse_comments_blank_and_empty():
    t = parse_edge_list("# a path\n\n0 1\n  \n1 2\n")
    assert t.n == 3
    assert parse_edge_list("").n == 1  # no edges: the one-vertex tree
    assert parse_edge_list("# only a comment\n").n == 1


def test_build_family_examples():
    spider11 = build_family(FamilySpec("spider", (1, 1)))
    assert spider11.n == 4
    assert degree_sequence(spider11) == [1, 1, 2, 2]
    star4 = build_family(FamilySpec("star", (4,)))
    assert degree_sequence(star4) == [1, 1, 1, 3]
    assert build_family(FamilySpec("path", (1,))).n == 1


def test_spider_shape():
    for a in (1, 2, 3, 4, 7):
        for b in (1, 2, 5):
            t = build_family(FamilySpec("spider", (a, b)))
            assert t.n == a + 2 * b + 1
            if a + b >= 3:
                assert sum(1 for v in range(t.n) if t.degree(v) == a + b) == 1
            assert t.degree(0) == a + b


def test_family_spec_validation():
    with pytest.raises(InvalidParameters):
        FamilySpec("star", (0,))
    with pytest.raises(InvalidParameters):
        FamilySpec("spider", (1,))
    with pytest.raises(InvalidParameters):
        FamilySpec("spider", (0, 2))
    with pytest.raises(InvalidParameters):
        FamilySpec("wheel", (4,))
    with pytest.raises(InvalidParameters):
        FamilySpec.parse("star4")
    with pytest.raises(InvalidParameters):
        FamilySpec.parse("star:x")


def test_family_spec_parse_roundtrip():
    for text in ("path:7", "star:4", "spider:3,2"):
        spec = FamilySpec.parse(text)
        assert str(spec) == text
    assert FamilySpec.parse("spider:3,2").order == 8


def test_delete_vertex_star_center():
    star4 = build_family(FamilySpec("star", (4,)))
    f = delete_vertex(star4, 0)
    assert len(f.components) == 3
    assert all(c.n == 1 for c in f.components)
    assert f.total == 3
    assert f.origins == ((1,), (2,), (3,))


def test_delete_vertex_path_cases():
    p4 = build_family(FamilySpec("path", (4,)))
    leaf = delete_vertex(p4, 0)
    assert [c.n for c in leaf.components] == [3]
    assert leaf.origins == ((1, 2, 3),)
    inner = delete_vertex(p4, 1)
    assert sorted(c.n for c in inner.components) == [1, 2]


def test_delete_vertex_single_and_range():
    single = build_family(FamilySpec("path", (1,)))
    assert delete_vertex(single, 0).total == 0
    with pytest.raises(VertexOutOfRange):
        delete_vertex(single, 1)


def test_delete_preserves_origin_adjacency():
    rng = random.Random(5)
    for _ in range(20):
        t = random_tree(rng.randint(2, 12), rng)
        v = rng.randrange(t.n)
        f = delete_vertex(t, v)
        assert f.total == t.n - 1
        for comp, origin in zip(f.components, f.origins):
            for x, y in comp.edges():
                ox, oy = origin[x], origin[y]
                assert oy in t.neighbors(ox)


def test_canonical_code_examples():
    p4 = build_family(FamilySpec("path", (4,)))
    spider11 = build_family(FamilySpec("spider", (1, 1)))
    star4 = build_family(FamilySpec("star", (4,)))
    assert canonical_code(p4) == canonical_code(spider11)
    assert canonical_code(star4) != canonical_code(p4)
    assert canonical_code(build_family(FamilySpec("path", (1,)))) == b"1:()"


def test_canonical_code_vs_brute_force_small_orders():
    for n in range(1, 8):
        trees = list(enumerate_free_trees(n))
        for t1, t2 in combinations(trees, 2):
            same = canonical_code(t1) == canonical_code(t2)
            assert same == brute_force_isomorphic(t1, t2)
        for t in trees:
            assert brute_force_isomorphic(t, t)
            assert canonical_code(t) == canonical_code(t)


def test_canonical_code_invariant_under_relabeling():
    rng = random.Random(6)
    for _ in range(40):
        t = random_tree(rng.randint(2, 12), rng)
        perm = list(range(t.n))
        rng.shuffle(perm)
        relabeled = Tree(t.n, [(perm[u], perm[v]) for u, v in t.edges()])
        assert canonical_code(t) == canonical_code(relabeled)


def test_codes_distinguish_nonisomorphic_orders():
    # same rooted shape after subdividing the central edge must not collide
    p2 = build_family(FamilySpec("path", (2,)))
    p3 = build_family(FamilySpec("path", (3,)))
    assert canonical_code(p2) != canonical_code(p3)


def test_tree_centers():
    assert tree_centers(build_family(FamilySpec("path", (4,)))) == (1, 2)
    assert tree_centers(build_family(FamilySpec("path", (5,)))) == (2,)
    assert tree_centers(build_family(FamilySpec("star", (9,)))) == (0,)


def test_tree_validation_and_immutability():
    with pytest.raises(NotATree):
        Tree(3, [(0, 1)])
    with pytest.raises(NotATree):
        Tree(3, [(0, 1), (0, 3)])
    t = Tree(2, [(0, 1)])
    with pytest.raises(AttributeError):
        t.n = 5
    assert t.edges() == [(0, 1)]
    assert t.is_connected()
