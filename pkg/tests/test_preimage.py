import json

import pytest

from xmap.orbits import StatusCache, SurvivalStatus, survives
from xmap.preimage import (
    EdgeKind,
    PreimageNode,
    export_tree,
    preimage_survivor_search,
    survivor_preimages,
)
from xmap.search import SearchConfig, forward_search

from helpers import FIRST_30_SURVIVORS


def test_preimages_of_21(oracle100k):
    nodes = survivor_preimages(oracle100k, 21)
    assert [n.value for n in nodes] == [11, 57, 85]
    assert nodes[0].kind is EdgeKind.PRIME_HALF
    assert nodes[1].pair == (3, 19)
    assert nodes[2].pair == (5, 17)
    assert all(n.parent == 21 for n in nodes)


def test_preimages_of_9(oracle100k):
    nodes = survivor_preimages(oracle100k, 9)
    assert [n.value for n in nodes] == [5, 21]
    assert nodes[0].kind is EdgeKind.PRIME_HALF
    assert nodes[1].pair == (3, 7)


def test_preimages_of_cycle_entry(oracle100k):
    # nothing maps into 2 on the survivor domain: 3*3 fails distinctness
    assert survivor_preimages(oracle100k, 2) == []
    assert [n.value for n in survivor_preimages(oracle100k, 3)] == [2]
    assert [n.value for n in survivor_preimages(oracle100k, 5)] == [3]


def test_preimages_are_actual_preimages(oracle100k):
    for n in FIRST_30_SURVIVORS:
        if n < 2:
            continue
        for node in survivor_preimages(oracle100k, n):
            assert oracle100k.x(node.value) == n, (node.value, n)


def test_preimages_of_survivors_survive(oracle100k):
    cache = StatusCache()
    for n in FIRST_30_SURVIVORS:
        for node in survivor_preimages(oracle100k, n):
            status = survives(oracle100k, node.value, cache=cache)
            assert status is SurvivalStatus.SURVIVES, node.value


def test_max_product_prefix(oracle100k):
    full = [n.value for n in survivor_preimages(oracle100k, 21)]
    bounded = [n.value for n in survivor_preimages(oracle100k, 21, max_product=60)]
    assert bounded == [v for v in full if v <= 60]


def test_search_to_25(oracle100k):
    result = preimage_survivor_search(oracle100k, 25)
    assert result.survivors.entries == [2, 3, 5, 9, 11, 21]


def test_search_to_600(oracle100k):
    result = preimage_survivor_search(oracle100k, 600)
    assert result.survivors.entries == FIRST_30_SURVIVORS


def test_search_cutoff_one(oracle100k):
    result = preimage_survivor_search(oracle100k, 1)
    assert result.survivors.entries == []


def test_agreement_with_forward(oracle100k):
    forward = forward_search(SearchConfig(5_000, False), oracle100k, StatusCache())
    backward = preimage_survivor_search(oracle100k, 5_000, StatusCache())
    assert backward.survivors.entries == forward.survivors.entries


def test_orbit_members_above_cutoff_retained(oracle100k):
    # the orbit of the prime 139 passes through 277 and 553, both above 150
    result = preimage_survivor_search(oracle100k, 150)
    assert 139 in result.survivors.entries
    assert 277 in result.nodes and 553 in result.nodes
    assert 277 not in result.survivors.entries
    assert result.nodes[277].parent == 553
    assert result.nodes[553].parent == 85
    # retained members are never expanded: no child of 277 beyond the orbit
    assert result.nodes[277].children == [139]


def test_tree_structure(oracle100k):
    result = preimage_survivor_search(oracle100k, 600)
    seeds = [v for v, n in result.nodes.items() if n.kind is EdgeKind.CYCLE_SEED]
    assert sorted(seeds) == [2, 3, 5, 9]
    for value, node in result.nodes.items():
        if node.kind is EdgeKind.CYCLE_SEED:
            continue
        assert oracle100k.x(value) == node.parent
        if node.kind is EdgeKind.BIPRIME_PAIR:
            k, j = node.pair
            assert k * j == value and k + j == node.parent + 1
        else:
            assert 2 * value == node.parent + 1


def test_dot_export_of_21_subtree(oracle100k):
    nodes = {21: PreimageNode(21, 9, EdgeKind.BIPRIME_PAIR, pair=(3, 7))}
    nodes[9] = PreimageNode(9, None, EdgeKind.CYCLE_SEED)
    for node in survivor_preimages(oracle100k, 21):
        nodes[node.value] = node
    dot = export_tree(nodes, "dot")
    for edge in ('"11" -> "21"', '"57" -> "21"', '"85" -> "21"'):
        assert edge in dot
    # node declarations are lexicographically ordered
    lines = [l for l in dot.splitlines() if "->" not in l and '"' in l]
    names = [l.split('"')[1] for l in lines]
    assert names == sorted(names)


def test_dot_single_seed(oracle100k):
    dot = export_tree([PreimageNode(2, None, EdgeKind.CYCLE_SEED)], "dot")
    assert '"2"' in dot
    assert "->" not in dot


def test_json_export_matches_search(oracle100k):
    result = preimage_survivor_search(oracle100k, 100)
    doc = json.loads(export_tree(result.nodes, "json"))

    def collect(node, out):
        out.append(node["value"])
        for child in node["children"]:
            collect(child, out)
        return out

    values = []
    for root in doc["roots"]:
        collect(root, values)
    assert sorted(values) == sorted(result.nodes)
    in_range = sorted(v for v in values if v <= 100)
    assert in_range == result.survivors.entries


def test_export_rejects_bad_forests():
    seed = PreimageNode(2, None, EdgeKind.CYCLE_SEED)
    with pytest.raises(ValueError, match="no parent"):
        export_tree([PreimageNode(11, 21, EdgeKind.PRIME_HALF)], "dot")
    with pytest.raises(ValueError, match="prime-half"):
        export_tree([seed, PreimageNode(4, 2, EdgeKind.PRIME_HALF)], "dot")
    with pytest.raises(ValueError, match="inconsistent"):
        export_tree(
            [seed, PreimageNode(15, 2, EdgeKind.BIPRIME_PAIR, pair=(3, 5))], "dot"
        )
    with pytest.raises(ValueError, match="bad cycle seed"):
        export_tree([PreimageNode(7, None, EdgeKind.CYCLE_SEED)], "dot")
    with pytest.raises(ValueError, match="unknown tree format"):
        export_tree([seed], "yaml")


def test_export_rejects_parent_cycles():
    # the only structurally consistent prime-half self-loop: 2*1 == 1 + 1
    loop = PreimageNode(1, 1, EdgeKind.PRIME_HALF)
    with pytest.raises(ValueError, match="cycles"):
        export_tree([loop], "dot")


def test_preimage_validation(oracle100k):
    with pytest.raises(ValueError):
        survivor_preimages(oracle100k, 1)
    with pytest.raises(ValueError):
        preimage_survivor_search(oracle100k, 0)
    with pytest.raises(ValueError):
        preimage_survivor_search(oracle100k, 200_000)
