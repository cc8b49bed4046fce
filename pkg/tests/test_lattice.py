import pytest

from pgradient.corpus import load
from pgradient.cosets import todd_coxeter, trace
from pgradient.lattice import LatticeNode, check_node, children, enumerate_lattice
from pgradient.oracles import epimorphism_kernel_keys, normal_subgroup_count, p_groups
from pgradient.schreier import schreier_data
from pgradient.words import parse_word


def test_f2_root_has_three_children():
    L = enumerate_lattice(load("f2"), 2, 0)
    kids = children(L.levels[0][0], 2)
    assert len(kids) == 3
    assert all(k.level == 1 and k.index == 2 for k in kids)


def test_chain_in_z4():
    Z4 = load("z4")
    H = todd_coxeter(Z4, [parse_word("a^2", ("a",))])
    node = LatticeNode(H, H.key(), 1)
    kids = children(node, 2)
    assert len(kids) == 1 and kids[0].index == 4


def test_no_children_when_dp_zero():
    root = enumerate_lattice(load("z3"), 2, 0).levels[0][0]
    assert children(root, 2) == [] and root.dp_value == 0


@pytest.mark.parametrize("name,p,depth,sizes,saturated", [
    ("f2", 2, 2, [1, 3, 7], False),
    ("z4", 2, 3, [1, 1, 1], True),
    ("z3", 2, 2, [1], True),
    ("f2", 2, 3, [1, 3, 7, 19], False),
    ("f2", 3, 2, [1, 4, 13], False),
    ("d4", 2, 5, [1, 3, 1, 1], True),
])
def test_level_sizes(name, p, depth, sizes, saturated):
    L = enumerate_lattice(load(name), p, depth)
    assert L.sizes() == sizes
    assert L.saturated is saturated and not L.truncated


def _oracle_keys(G, p, k):
    keys = set()
    for Q in p_groups(p, k):
        keys |= epimorphism_kernel_keys(G, Q)
    return keys


@pytest.mark.parametrize("name", ["f2", "f2_a2", "f2xz2", "d4", "q8", "z2z4", "s3", "a4", "z9"])
@pytest.mark.parametrize("p", [2, 3])
def test_matches_epimorphism_oracle(name, p):
    G = load(name)
    L = enumerate_lattice(G, p, 2)
    for k in range(3):
        got = {n.key for n in L.levels[k]} if k < len(L.levels) else set()
        assert got == _oracle_keys(G, p, k)


def test_oracle_order_eight():
    assert normal_subgroup_count(load("f2"), 2, 3) == 19


def test_nodes_are_sound_and_contained():
    G = load("f2_a2")
    L = enumerate_lattice(G, 2, 3)
    keys = {n.key for n in L.nodes()}
    for node in L.nodes():
        check_node(node, 2)
        if node.level:
            assert node.parent_keys and node.parent_keys <= keys
            for pk in node.parent_keys:
                assert L.find(pk).level == node.level - 1


@pytest.mark.parametrize("name", ["f2", "f2_a2"])
def test_containment_by_schreier_generators(name):
    L = enumerate_lattice(load(name), 2, 3)
    for node in [n for n in L.nodes() if n.level]:
        for pk in node.parent_keys:
            parent = L.find(pk)
            for u in schreier_data(node.table).words:
                assert trace(parent.table, u, 0) == 0


def test_levels_sorted_and_unique():
    L = enumerate_lattice(load("f3"), 2, 2)
    for level in L.levels:
        keys = [n.key for n in level]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_thread_count_does_not_change_result():
    G = load("f3")
    a = enumerate_lattice(G, 2, 2, threads=1)
    b = enumerate_lattice(G, 2, 2, threads=4)
    assert a.dump() == b.dump()


def test_node_budget_truncates():
    L = enumerate_lattice(load("f2"), 2, 3, node_budget=6)
    assert L.truncated and not L.saturated
    assert sum(L.sizes()) == 6


def test_env_node_budget(monkeypatch):
    monkeypatch.setenv("PG_NODE_BUDGET", "5")
    L = enumerate_lattice(load("f2"), 2, 3)
    assert L.truncated and sum(L.sizes()) == 5


def test_index_cap_truncates_infinite_chain():
    L = enumerate_lattice(load("bs12"), 2, 10, max_index=64)
    assert L.sizes() == [1] * 7
    assert L.truncated and not L.saturated


def test_index_cap_irrelevant_when_saturated():
    L = enumerate_lattice(load("z4"), 2, 10, max_index=4)
    assert L.saturated and not L.truncated


def test_dump_format():
    L = enumerate_lattice(load("f2"), 2, 1)
    lines = L.dump().splitlines()
    assert len(lines) == 4
    level, index, h, d = lines[1].split()
    assert (level, index, d) == ("1", "2", "3") and len(h) == 16


def test_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_lattice(load("f2"), 4, 1)
    with pytest.raises(ValueError):
        enumerate_lattice(load("f2"), 2, -1)
    with pytest.raises(ValueError):
        enumerate_lattice(load("f2"), 2, 1, node_budget=0)
