"""Graph type, constructors, and structural helpers."""

import json

import pytest

from latticegenus import (
    Graph,
    GraphError,
    MinorOp,
    MinorScript,
    MinorWitness,
    apply_minor_script,
    block_decomposition,
    cartesian_product,
    complete_bipartite,
    cycle_graph,
    double_k33_pattern,
    girth,
    gn_graph,
    grid_edge_count,
    grid_graph,
    grid_vertex_count,
    hn_graph,
    is_isomorphic,
    is_planar,
    lattice_for,
    path_graph,
    validate_minor_witness,
    zppq_graph,
)


# ------------------------------------------------------------ the type


def test_graph_normalizes_and_validates():
    g = Graph({"b", "a", "c"}, [("b", "a"), ("a", "c")])
    assert g.vertices == ("a", "b", "c")
    assert g.edges == (("a", "b"), ("a", "c"))
    assert g.has_edge("b", "a")
    assert not g.has_edge("b", "c")
    assert g.neighbors("a") == ("b", "c")
    assert g.degree("a") == 2


def test_graph_rejects_bad_edges():
    with pytest.raises(GraphError):
        Graph({"a"}, [("a", "a")])
    with pytest.raises(GraphError):
        Graph({"a"}, [("a", "b")])


def test_graph_deduplicates_edges():
    g = Graph({"a", "b"}, [("a", "b"), ("b", "a")])
    assert g.edges == (("a", "b"),)


def test_graph_json_round_trip():
    g = grid_graph((2, 1))
    doc = g.to_json_dict()
    # stable shape: sorted vertex list, sorted pair list
    assert doc["vertices"] == sorted(doc["vertices"])
    assert doc["edges"] == sorted(doc["edges"])
    again = Graph.from_json_dict(json.loads(json.dumps(doc)))
    assert again == g


def test_graph_to_dot_mentions_all_edges():
    g = path_graph(2)
    dot = g.to_dot(name="p2")
    assert dot.startswith('graph "p2" {')
    for u, v in g.edges:
        assert f'"{u}" -- "{v}"' in dot


def test_connectivity_and_induced():
    g = Graph({"a", "b", "c", "d"}, [("a", "b"), ("c", "d")])
    assert not g.is_connected()
    assert g.induced({"a", "b"}).is_connected()
    assert g.induced({"a", "c"}).edge_count == 0


# --------------------------------------------------------- constructors


def test_path_cycle_bipartite_shapes():
    assert path_graph(3).vertex_count == 4
    assert path_graph(3).edge_count == 3
    assert cycle_graph(5).edge_count == 5
    k33 = complete_bipartite(3, 3)
    assert k33.vertex_count == 6
    assert k33.edge_count == 9
    assert all(k33.degree(v) == 3 for v in k33.vertices)


def test_double_k33_pattern_shape():
    bowtie = double_k33_pattern()
    assert bowtie.vertex_count == 11
    assert bowtie.edge_count == 18
    degrees = sorted(bowtie.degree(v) for v in bowtie.vertices)
    # shared hub of two K33 copies has degree 6
    assert degrees == [3] * 10 + [6]
    blocks = block_decomposition(bowtie).blocks
    assert len(blocks) == 2
    assert all(is_isomorphic(b, complete_bipartite(3, 3)) for b in blocks)


def test_cartesian_product_shape():
    g = cartesian_product(cycle_graph(3), path_graph(1))
    assert g.vertex_count == 6
    assert g.edge_count == 3 * 2 + 1 * 3


def test_grid_graph_is_product_of_paths():
    g = grid_graph((3, 2))
    assert g.vertex_count == grid_vertex_count((3, 2)) == 12
    assert g.edge_count == grid_edge_count((3, 2)) == 3 * 3 + 2 * 4
    direct = cartesian_product(path_graph(3, prefix="a"), path_graph(2, prefix="b"))
    assert is_isomorphic(g, direct) is not None


def test_gadget_graph_shapes():
    g6 = gn_graph(6)
    assert g6.vertex_count == 15
    assert g6.edge_count == 30
    h5 = hn_graph(5)
    assert h5.vertex_count == 26
    assert h5.edge_count == 55
    z3 = zppq_graph(3)
    assert z3.vertex_count == 12
    assert z3.edge_count == 22  # 8*2 + 6 product edges


def test_zppq_graph_is_the_two_prime_lattice():
    assert is_isomorphic(zppq_graph(3), lattice_for("Z3xZ3xZ2")) is not None
    assert is_isomorphic(zppq_graph(5), lattice_for("Z5xZ5xZ2")) is not None


# ------------------------------------------------------ girth and blocks


def test_girth_values():
    assert girth(path_graph(4)) == float("inf")
    assert girth(cycle_graph(5)) == 5
    assert girth(complete_bipartite(3, 3)) == 4
    assert girth(grid_graph((2, 2))) == 4


def test_lattices_are_bipartite_girth_four():
    for text in ("Z4xZ4", "Z2xZ2xZ3", "Z8xZ4", "Z9xZ9"):
        lattice = lattice_for(text)
        assert girth(lattice) == 4


def test_block_decomposition_splits_at_cut_vertices():
    g = Graph(
        {"a", "b", "c", "d", "e"},
        [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d"), ("d", "e"), ("c", "e")],
    )
    blocks = block_decomposition(g).blocks
    assert len(blocks) == 2
    assert sorted(b.vertex_count for b in blocks) == [3, 3]


def test_planarity_and_isomorphism():
    assert is_planar(grid_graph((3, 3)))
    assert not is_planar(complete_bipartite(3, 3))
    assert is_isomorphic(cycle_graph(4), grid_graph((1, 1))) is not None
    assert is_isomorphic(cycle_graph(4), path_graph(3)) is None
    mapping = is_isomorphic(cycle_graph(3), cycle_graph(3))
    assert mapping is not None and set(mapping) == set(cycle_graph(3).vertices)


# ---------------------------------------------------------- minor tools


def test_minor_script_contract_and_delete():
    g = cycle_graph(4, prefix="C")
    script = MinorScript((MinorOp("delete-edge", ("C0", "C1")),))
    h = apply_minor_script(g, script)
    assert h.edge_count == 3
    assert h.is_connected()


def test_minor_script_contract_merges_vertices():
    g = path_graph(2, prefix="P")
    script = MinorScript((MinorOp("contract-edge", ("P0", "P1")),))
    h = apply_minor_script(g, script)
    assert h.vertex_count == 2
    assert h.edge_count == 1


def test_minor_script_rejects_missing_edge():
    with pytest.raises(GraphError):
        apply_minor_script(path_graph(2, prefix="P"), MinorScript((MinorOp("delete-edge", ("P0", "P2")),)))


def test_witness_validation_accepts_hand_witness():
    # C4 is a minor of C6: merge two opposite pairs
    host = cycle_graph(6, prefix="C")
    pattern = cycle_graph(4, prefix="Q")
    witness = MinorWitness(
        {
            "Q0": frozenset({"C0", "C1"}),
            "Q1": frozenset({"C2"}),
            "Q2": frozenset({"C3", "C4"}),
            "Q3": frozenset({"C5"}),
        }
    )
    validate_minor_witness(host, pattern, witness)


@pytest.mark.parametrize(
    "branch_sets",
    [
        # missing a pattern vertex
        {"Q0": {"C0"}, "Q1": {"C2"}, "Q2": {"C3"}},
        # overlapping sets
        {"Q0": {"C0", "C1"}, "Q1": {"C1"}, "Q2": {"C3"}, "Q3": {"C5"}},
        # disconnected branch set
        {"Q0": {"C0", "C2"}, "Q1": {"C1"}, "Q2": {"C3"}, "Q3": {"C5"}},
        # pattern edge with no host edge between the sets
        {"Q0": {"C0"}, "Q1": {"C2"}, "Q2": {"C3"}, "Q3": {"C5"}},
        # unknown host vertex
        {"Q0": {"X"}, "Q1": {"C2"}, "Q2": {"C3"}, "Q3": {"C5"}},
    ],
)
def test_witness_validation_rejects_corruptions(branch_sets):
    host = cycle_graph(6, prefix="C")
    pattern = cycle_graph(4, prefix="Q")
    witness = MinorWitness({k: frozenset(v) for k, v in branch_sets.items()})
    with pytest.raises(GraphError):
        validate_minor_witness(host, pattern, witness)


def test_witness_json_round_trip():
    witness = MinorWitness({"a": frozenset({"x", "y"}), "b": frozenset({"z"})})
    doc = witness.to_json_dict()
    assert doc == {"branch_sets": {"a": ["x", "y"], "b": ["z"]}}
    assert MinorWitness.from_json_dict(doc) == witness
    with pytest.raises(GraphError):
        MinorWitness.from_json_dict({"nope": 1})
