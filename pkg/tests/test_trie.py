"""Intersection-trie structure and lifecycle."""

import pytest

from streamclose import oracle
from streamclose.trie import DECREMENT, INCREMENT, SUPPORT_FLOOR, Trie
from conftest import TABLE1, landmark_driver

D19 = {n + 1: frozenset(t) for n, t in enumerate(TABLE1[:9])}


def test_fresh_trie_has_only_root():
    t = Trie(INCREMENT)
    assert t.node_count == 1
    assert list(t.end_nodes()) == []
    assert t.root.depth == 0 and t.root.parent is None


def test_reset_drops_every_node():
    t = Trie(INCREMENT)
    old_root = t.root
    n = t.add_child(t.root, 3)
    t.add_child(n, 5)
    t.reset(DECREMENT)
    assert t.node_count == 1
    assert t.root is not old_root
    assert t.mode == DECREMENT


def test_reset_rejects_unknown_mode():
    with pytest.raises(ValueError):
        Trie("sideways")


def test_child_lookup_roundtrip():
    t = Trie(INCREMENT)
    assert t.root.child(6) is None
    n = t.add_child(t.root, 1)
    assert t.root.child(1) is n
    assert n.depth == 1 and n.refs == 0
    assert n.top is None and n.top_supp == SUPPORT_FLOOR


def test_duplicate_child_is_invariant_violation():
    t = Trie(INCREMENT)
    t.add_child(t.root, 1)
    with pytest.raises(AssertionError):
        t.add_child(t.root, 1)


def test_two_children_both_addressable():
    t = Trie(INCREMENT)
    b = t.add_child(t.root, 1)
    c = t.add_child(t.root, 2)
    assert t.root.child(1) is b and t.root.child(2) is c


def test_itemset_along_path():
    t = Trie(INCREMENT)
    b = t.add_child(t.root, 1)
    c = t.add_child(b, 2)
    assert c.itemset() == (1, 2)
    assert b.itemset() == (1,)
    with pytest.raises(ValueError):
        t.root.itemset()


def test_golden_trie_after_tenth_transaction():
    # the work set for adding the tenth transaction has 7 member itemsets,
    # whose distinct nonempty prefixes give 10 nodes below the root
    driver = landmark_driver(TABLE1)
    trie = driver.engine.trie
    d = driver.dictionary
    delta = oracle.intersections(D19, frozenset("bcgh"))
    prefixes = set()
    for x in delta:
        seq = sorted(x)
        for k in range(1, len(seq) + 1):
            prefixes.add(tuple(seq[:k]))
    assert trie.node_count == len(prefixes) + 1 == 11
    ends = list(trie.end_nodes())
    assert len(ends) == len(delta) == 7
    got = {tuple(d.token(a) for a in n.itemset()) for n in ends}
    assert got == {tuple(x) for x in ("bcgh", "cgh", "bc", "gh", "c", "g", "h")}


def test_golden_bc_path_lookup():
    # after the tenth insert, the bc path exists: root -> b -> c at depth 2
    driver = landmark_driver(TABLE1)
    trie = driver.engine.trie
    d = driver.dictionary
    node_b = trie.root.child(d.intern("b"))
    node_bc = node_b.child(d.intern("c"))
    assert node_bc.depth == 2
    assert tuple(d.token(a) for a in node_bc.itemset()) == ("b", "c")
    # deepest end node spells the whole transaction
    deepest = max(trie.end_nodes(), key=lambda n: n.depth)
    assert tuple(d.token(a) for a in deepest.itemset()) == tuple("bcgh")
    assert deepest.depth == 4


def test_end_nodes_after_second_removal():
    driver = landmark_driver(TABLE1)
    eng = driver.engine
    tid1, items1 = driver.buffer.popleft()
    eng.shift_remove(tid1, items1)
    tid2, items2 = driver.buffer.popleft()
    eng.shift_remove(tid2, items2)
    d = driver.dictionary
    got = {"".join(d.token(a) for a in n.itemset()) for n in eng.trie.end_nodes()}
    assert got == {"abc", "cf", "ef", "bc", "c", "abcef", "f"}


def test_dump_shape():
    driver = landmark_driver(TABLE1[:2])
    lines = driver.engine.trie.dump().splitlines()
    assert lines[0].startswith("0 - ")
    assert len(lines) == driver.engine.trie.node_count
    for line in lines:
        assert "min={" in line and "gen={" in line
