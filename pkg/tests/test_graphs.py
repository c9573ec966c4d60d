import random
from collections import Counter

import pytest

from conftest import SQUARE_STAR_TEXT, PENDANT_PAIR_TEXT, build_graph, parse_pair, random_pair
from gedkit.graphs import (
    GraphFormatError,
    LabelTable,
    degree_sequence,
    label_multiset,
    multiset_intersection_size,
    neighborhood,
    parse_graph_db,
    serialize_graph_db,
    vertex_partition,
)
from gedkit.mapping import edit_cost
from conftest import all_complete_mappings


def test_parse_minimal_record():
    graphs, table = parse_graph_db("t # 0\nv 0 A\nv 1 B\ne 0 1 a\n")
    assert len(graphs) == 1
    gid, g = graphs[0]
    assert gid == 0
    assert g.n == 2 and g.m == 1
    assert table.token(g.vertex_labels[0]) == "A"


def test_parse_square_star_g_degrees():
    g, q, _ = parse_pair(SQUARE_STAR_TEXT)
    assert degree_sequence(g) == (2, 2, 2, 2)
    assert degree_sequence(q) == (3, 1, 1, 1)


def test_parse_self_loop_rejected():
    with pytest.raises(GraphFormatError) as err:
        parse_graph_db("t # 0\nv 0 A\ne 0 0 a\n")
    assert "line 3" in str(err.value)
    assert "self-loop" in str(err.value)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("t # 0\nv 0 A\nv 0 B\n", "duplicate vertex"),
        ("t # 0\nv 0 A\nv 2 B\n", "contiguous"),
        ("t # 0\nv 0 A\ne 0 5 a\n", "unknown vertex"),
        ("t # 0\nv 0 A\nv 1 B\ne 0 1 a\ne 1 0 b\n", "duplicate edge"),
        ("t # 0\nv 0 A\nw 1 B\n", "unrecognized"),
        ("t nope\n", "malformed"),
        ("v 0 A\n", "before any"),
        ("t # 0\nt # 0\n", "duplicate graph id"),
    ],
)
def test_parse_errors_name_line(text, fragment):
    with pytest.raises(GraphFormatError) as err:
        parse_graph_db(text)
    assert fragment in str(err.value)
    assert str(err.value).startswith("line ")


def test_parse_comments_blank_lines_and_crlf():
    text = "# db header\r\n\r\nt # 7\r\nv 0 A\r\n# inline comment\r\nv 1 A\r\ne 0 1 x\r\n"
    graphs, _ = parse_graph_db(text)
    assert graphs[0][0] == 7
    assert graphs[0][1].n == 2


def test_round_trip_random_graphs():
    rng = random.Random(5)
    table = LabelTable()
    entries = []
    for gid in range(20):
        g, _ = random_pair(rng, max_n=7, table=table)
        entries.append((gid, g))
    text = serialize_graph_db(entries)
    reparsed, _ = parse_graph_db(text)
    assert [gid for gid, _ in reparsed] == [gid for gid, _ in entries]
    for (_, a), (_, b) in zip(entries, reparsed):
        assert a == b
    assert serialize_graph_db(reparsed) == text


def test_neighborhood_square_star_q():
    _, q, table = parse_pair(SQUARE_STAR_TEXT)
    a = table.intern("a")
    assert neighborhood(q, 0) == {(3, a)}
    assert neighborhood(q, 0) == neighborhood(q, 1) == neighborhood(q, 2)


def test_neighborhood_isolated_and_pendant_pair():
    g = build_graph(["A", "B"], [])
    assert neighborhood(g, 0) == frozenset()
    g4, _, table = parse_pair(PENDANT_PAIR_TEXT)
    assert neighborhood(g4, 4) == {(2, table.intern("a")), (3, table.intern("b"))}
    with pytest.raises(IndexError):
        neighborhood(g4, 99)


def test_vertex_partition_square_star():
    _, q, _ = parse_pair(SQUARE_STAR_TEXT)
    part = vertex_partition(q)
    assert part.classes == ((0, 1, 2), (3,))
    assert part.lambda_q == 2
    assert part.dummy_class == 3
    assert [part.class_index(v) for v in range(4)] == [1, 1, 1, 2]
    assert part.class_index(None) == 3


def test_vertex_partition_distinct_and_empty():
    g = build_graph(["A", "B", "C"], [(0, 1, "x")])
    part = vertex_partition(g)
    assert part.lambda_q == 3
    assert all(len(c) == 1 for c in part.classes)
    empty = build_graph([], [])
    assert vertex_partition(empty).lambda_q == 0


def test_partition_members_swap_invariant():
    # Vertices in one class are interchangeable: swapping their roles in any
    # complete mapping leaves the edit cost unchanged.
    rng = random.Random(11)
    checked = 0
    while checked < 6:
        q, g = random_pair(rng, max_n=5)
        part = vertex_partition(q)
        cls = next((c for c in part.classes if len(c) >= 2), None)
        if cls is None:
            continue
        a, b = cls[0], cls[1]
        swap = {a: b, b: a}
        for psi in all_complete_mappings(g, q):
            swapped_pairs = tuple(
                (s, swap.get(t, t) if t is not None else None) for s, t in psi.pairs
            )
            swapped = type(psi)(swapped_pairs, psi.n_source, psi.n_target)
            assert edit_cost(psi, g, q).total == edit_cost(swapped, g, q).total
        checked += 1


def test_degree_sequences():
    assert degree_sequence(build_graph(["A"] * 3, [])) == (0, 0, 0)
    g4, _, _ = parse_pair(PENDANT_PAIR_TEXT)
    # Oracle: count incident edges per vertex straight off the edge list.
    counts = Counter()
    for u, v, _ in g4.edges:
        counts[u] += 1
        counts[v] += 1
    expected = tuple(sorted((counts[u] for u in range(g4.n)), reverse=True))
    assert expected == (3, 2, 2, 2, 1)
    assert degree_sequence(g4) == expected


def test_label_multisets_square_star():
    g, _, table = parse_pair(SQUARE_STAR_TEXT)
    vs = label_multiset(g, "vertices")
    assert vs == Counter({table.intern("A"): 2, table.intern("B"): 1, table.intern("C"): 1})
    es = label_multiset(g, "edges")
    assert es == Counter({table.intern("a"): 2, table.intern("b"): 2})
    empty = build_graph([], [])
    assert label_multiset(empty, "vertices") == Counter()
    with pytest.raises(ValueError):
        label_multiset(g, "both")


def test_multiset_intersection_properties():
    rng = random.Random(3)
    for _ in range(50):
        a = Counter({k: rng.randint(1, 4) for k in rng.sample(range(10), rng.randint(0, 6))})
        b = Counter({k: rng.randint(1, 4) for k in rng.sample(range(10), rng.randint(0, 6))})
        assert multiset_intersection_size(a, b) == multiset_intersection_size(b, a)
        assert multiset_intersection_size(a, a) == sum(a.values())


def test_dummy_label_reserved():
    table = LabelTable()
    ids = [table.intern(tok) for tok in ["x", "y", "x", "z"]]
    assert 0 not in ids
    assert ids[0] == ids[2]
    assert len({ids[0], ids[1], ids[3]}) == 3
