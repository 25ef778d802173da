from src.errors import ArityError, ParseError
from src.tree import (
    BARE,
    LEAF,
    Tree,
    Vertex,
    canonical_vertex_order,
    contract_inner_edge,
    corolla,
    enumerate_trees,
    from_json,
    graft,
    graft_edge,
    leaf_address,
    levels,
    lollipop,
    parse_tree,
    to_json,
    to_json_string,
    to_text,
)
from src.utils import get_fixtures_dir
from hypothesis import given, settings, strategies as st
import pytest

### TEST PARAMS ###

SMALL_TREES = [
    tree for n in range(0, 4) for tree in enumerate_trees(n, 2, True, 0)
]


### STRUCTURE ###


def test_corolla_and_bare_tree():
    assert corolla(3).arity == 3
    assert corolla(3).inner_count == 1
    assert BARE.is_bare
    assert BARE.arity == 1
    assert BARE.inner_count == 0
    assert lollipop().arity == 0


def test_graft_cork_into_corolla():
    grafted = graft(corolla(3), 2, lollipop())

    assert grafted.leaf_count == 2
    assert grafted.root.children[1] == Vertex(())
    assert grafted.root.children[1].is_cork
    assert graft_edge(corolla(3), 2) == (1,)


def test_graft_bare_tree_is_unit():
    tree = parse_tree("v[*,v[*,*]]")

    assert graft(tree, 2, BARE) == tree
    assert graft(BARE, 1, tree) == tree


def test_graft_out_of_range():
    with pytest.raises(ArityError):
        graft(corolla(2), 3, corolla(2))
    with pytest.raises(ArityError):
        leaf_address(lollipop(), 1)


@settings(max_examples=200, deadline=None)
@given(
    st.sampled_from(SMALL_TREES),
    st.sampled_from(SMALL_TREES),
    st.integers(min_value=1, max_value=4),
)
def test_graft_then_contract_keeps_leaves(tree: Tree, other: Tree, i: int):
    if tree.leaf_count == 0:
        return
    i = (i - 1) % tree.leaf_count + 1
    grafted = graft(tree, i, other)
    expected = tree.leaf_count + other.leaf_count - 1

    assert grafted.leaf_count == expected
    if tree.is_bare or other.is_bare:
        return
    contracted = contract_inner_edge(grafted, graft_edge(tree, i))
    assert contracted.leaf_count == expected
    assert contracted.inner_count == grafted.inner_count - 1


def test_contract_splices_children():
    tree = graft(corolla(2), 1, corolla(2))
    contracted = contract_inner_edge(tree, (0,))

    assert contracted == corolla(3)


def test_contract_merges_labels():
    tree = graft(corolla(2, 2), 2, corolla(3, 3))
    contracted = contract_inner_edge(
        tree, (1,), lambda lower, j, upper: (lower, j, upper)
    )

    assert contracted.root.label == (2, 2, 3)
    assert contracted.arity == 4


def test_contract_rejects_root_and_leaf_edges():
    tree = graft(corolla(2), 1, corolla(2))

    with pytest.raises(ArityError):
        contract_inner_edge(tree, ())
    with pytest.raises(ArityError):
        contract_inner_edge(tree, (1,))


def test_levels_increase_by_one():
    for tree in SMALL_TREES:
        found = levels(tree)
        for address, _ in tree.vertices():
            if address:
                assert found[address] == found[address[:-1]] + 1
            else:
                assert found[address] == 1


def test_canonical_vertex_order_is_preorder():
    tree = parse_tree("a[b[*,d[*]],c[*]]")

    assert canonical_vertex_order(tree) == [(), (0,), (0, 1), (1,)]
    assert [str(v.label) for _, v in tree.vertices()] == ["a", "b", "d", "c"]


### ENUMERATION ###


def test_enumerate_three_leaves_binary():
    trees = enumerate_trees(3, 3, allow_corks=False, min_arity=2)
    golden = get_fixtures_dir() / "trees" / "enumerate_n3_binary.txt"

    assert len(trees) == 3
    assert [to_text(t) for t in trees] == golden.read_text().split()


def test_enumeration_order_is_deterministic():
    first = [to_text(t) for t in enumerate_trees(3, 3)]
    second = [to_text(t) for t in enumerate_trees(3, 3)]
    keys = [
        (t.inner_count, to_text(t)) for t in enumerate_trees(3, 3)
    ]

    assert first == second
    assert keys == sorted(keys)
    assert len(set(first)) == len(first)


def test_enumerate_with_corks():
    trees = enumerate_trees(0, 2, allow_corks=True, min_arity=0)

    assert [to_text(t) for t in trees] == ["v[]", "v[v[]]"]


def test_enumerate_negative_bounds():
    assert enumerate_trees(-1, 3) == []
    assert enumerate_trees(2, 0) == []
    assert enumerate_trees(1, 0) == [BARE]


### SERIALIZATION ###


def test_text_form():
    tree = graft(corolla(2), 2, lollipop())

    assert to_text(tree) == "v[*,v[]]"
    assert to_text(BARE) == "|"
    assert parse_tree("v[*, v[]]") == tree
    assert parse_tree("|") == BARE


def test_json_form():
    tree = graft(corolla(2), 1, corolla(1))

    assert to_json(BARE) == "|"
    assert to_json_string(tree) == '{"children":[{"children":["*"]},"*"]}'
    assert from_json(to_json(tree)) == tree
    assert from_json("|") == BARE


def test_labelled_json_form():
    tree = Tree(Vertex((LEAF,), "a"))
    data = to_json(tree, lambda label: {"name": label})

    assert data == {"label": {"name": "a"}, "children": ["*"]}
    assert from_json(data, lambda label: label["name"]) == tree


@pytest.mark.parametrize("text", ["v[*,", "v[*]]", "[*]", "v[*;*]"])
def test_parse_errors(text: str):
    with pytest.raises(ParseError):
        parse_tree(text)


def test_bad_json():
    with pytest.raises(ParseError):
        from_json({"kids": []})
