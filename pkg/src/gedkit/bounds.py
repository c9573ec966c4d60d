"""Admissible lower bounds: degree-sequence deltas, the pair bound, and h(r)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .graphs import (
    LabeledGraph,
    degree_sequence,
    label_multiset,
    multiset_intersection_size,
)
from .mapping import GraphMapping
from .successors import SearchNode


def _deltas(degs_g: tuple[int, ...], degs_q: tuple[int, ...]) -> tuple[int, int]:
    """Positionwise surplus degree mass on each side, halved and rounded up.

    Both sequences are zero-extended to equal length; each surplus edge
    endpoint pairs with another, hence the division by two.
    """
    size = max(len(degs_g), len(degs_q))
    dg = degs_g + (0,) * (size - len(degs_g))
    dq = degs_q + (0,) * (size - len(degs_q))
    over = sum(a - b for a, b in zip(dg, dq) if a > b)
    under = sum(b - a for a, b in zip(dg, dq) if a <= b)
    return -(-over // 2), -(-under // 2)


def delta_bounds(g: LabeledGraph, q: LabeledGraph) -> tuple[int, int]:
    """Lower bounds on edge deletions and insertions from degree sequences."""
    return _deltas(degree_sequence(g), degree_sequence(q))


@dataclass(frozen=True)
class GraphSummary:
    """Per-graph inputs of the pair bound, precomputable for databases."""

    n: int
    m: int
    vertex_labels: Counter
    edge_labels: Counter
    degrees: tuple[int, ...]


def summarize(g: LabeledGraph) -> GraphSummary:
    return GraphSummary(
        n=g.n,
        m=g.m,
        vertex_labels=label_multiset(g, "vertices"),
        edge_labels=label_multiset(g, "edges"),
        degrees=degree_sequence(g),
    )


def lb_from_summaries(a: GraphSummary, b: GraphSummary) -> int:
    vterm = max(a.n, b.n) - multiset_intersection_size(a.vertex_labels, b.vertex_labels)
    d1, d2 = _deltas(a.degrees, b.degrees)
    eterm = max(d1 + d2, d1 + b.m - multiset_intersection_size(a.edge_labels, b.edge_labels))
    return vterm + eterm


def lb_graph(g: LabeledGraph, q: LabeledGraph) -> int:
    """Lower bound on ged(g, q) from label multisets and degree sequences."""
    return lb_from_summaries(summarize(g), summarize(q))


@dataclass(frozen=True)
class NodeSplit:
    """A search node's view of both graphs: mapped part, unmapped part, and
    the outer edges crossing between them."""

    mapped_source: tuple[int, ...]
    mapped_target: tuple[int, ...]
    unmapped_source_graph: LabeledGraph
    unmapped_target_graph: LabeledGraph
    outer_edges_source: dict[int, tuple[tuple[int, int], ...]]
    outer_edges_target: dict[int, tuple[tuple[int, int], ...]]
    outer_vertices_source: frozenset[int]
    outer_vertices_target: frozenset[int]


def _induced_subgraph(g: LabeledGraph, keep: list[int]) -> LabeledGraph:
    index = {u: i for i, u in enumerate(keep)}
    labels = [g.vertex_labels[u] for u in keep]
    edges = [
        (index[u], index[v], lab)
        for u, v, lab in g.edges
        if u in index and v in index
    ]
    return LabeledGraph(labels, edges, g.table)


def node_split(r: SearchNode, g: LabeledGraph, q: LabeledGraph) -> NodeSplit:
    """Split both graphs around r's partial mapping (inspection/testing view)."""
    return _split_mapping(r.mapping, g, q)


def _split_mapping(mapping: GraphMapping, g: LabeledGraph, q: LabeledGraph) -> NodeSplit:
    mapped = mapping.mapped_sources()
    used_t = mapping.used_targets()
    un_src = [u for u in range(g.n) if u not in mapped]
    un_tgt = [v for v in range(q.n) if v not in used_t]
    un_src_set, un_tgt_set = set(un_src), set(un_tgt)

    outer_src: dict[int, tuple] = {}
    a_g: set[int] = set()
    for u in mapped:
        o = tuple((v, lab) for v, lab in g.adjacency[u] if v in un_src_set)
        outer_src[u] = o
        a_g.update(v for v, _ in o)
    outer_tgt: dict[int, tuple] = {}
    a_q: set[int] = set()
    for t in used_t:
        o = tuple((v, lab) for v, lab in q.adjacency[t] if v in un_tgt_set)
        outer_tgt[t] = o
        a_q.update(v for v, _ in o)

    return NodeSplit(
        mapped_source=tuple(sorted(mapped)),
        mapped_target=tuple(sorted(used_t)),
        unmapped_source_graph=_induced_subgraph(g, un_src),
        unmapped_target_graph=_induced_subgraph(q, un_tgt),
        outer_edges_source=outer_src,
        outer_edges_target=outer_tgt,
        outer_vertices_source=frozenset(a_g),
        outer_vertices_target=frozenset(a_q),
    )


def h_estimate(r: SearchNode, g: LabeledGraph, q: LabeledGraph) -> int:
    """Admissible estimate of the remaining edit cost below node r."""
    return h_for_mapping(r.mapping, g, q)


def h_for_mapping(mapping: GraphMapping, g: LabeledGraph, q: LabeledGraph) -> int:
    return max(remainder_bounds(mapping, g, q))


def remainder_bounds(mapping: GraphMapping, g: LabeledGraph, q: LabeledGraph) -> tuple[int, int, int]:
    """The three remainder bounds below a partial mapping; h is their max.

    Each starts from the pair bound on the unmapped parts and adds, per
    mapped vertex, the cheapest reconciliation of its outer edges; the last
    two trade per-vertex tightness for a global outer-vertex correction."""
    mapped = mapping.mapped_sources()
    used_t = mapping.used_targets()
    un_src = set(range(g.n)) - set(mapped)
    un_tgt = set(range(q.n)) - used_t

    # Summaries of the unmapped induced parts.
    v_g2 = Counter(g.vertex_labels[u] for u in un_src)
    v_q2 = Counter(q.vertex_labels[v] for v in un_tgt)
    e_g2 = Counter()
    deg_g2 = Counter()
    for u, v, lab in g.edges:
        if u in un_src and v in un_src:
            e_g2[lab] += 1
            deg_g2[u] += 1
            deg_g2[v] += 1
    e_q2 = Counter()
    deg_q2 = Counter()
    for u, v, lab in q.edges:
        if u in un_tgt and v in un_tgt:
            e_q2[lab] += 1
            deg_q2[u] += 1
            deg_q2[v] += 1
    base = lb_from_summaries(
        GraphSummary(
            len(un_src), sum(e_g2.values()), v_g2, e_g2,
            tuple(sorted((deg_g2[u] for u in un_src), reverse=True)),
        ),
        GraphSummary(
            len(un_tgt), sum(e_q2.values()), v_q2, e_q2,
            tuple(sorted((deg_q2[v] for v in un_tgt), reverse=True)),
        ),
    )

    sum_max = sum_tgt = sum_src = 0
    a_g: set[int] = set()
    a_q: set[int] = set()
    for u, t in mapped.items():
        o_u = Counter()
        for v, lab in g.adjacency[u]:
            if v in un_src:
                o_u[lab] += 1
                a_g.add(v)
        o_t = Counter()
        if t is not None:
            for v, lab in q.adjacency[t]:
                if v in un_tgt:
                    o_t[lab] += 1
                    a_q.add(v)
        size_u = sum(o_u.values())
        size_t = sum(o_t.values())
        inter = multiset_intersection_size(o_u, o_t)
        sum_max += max(size_u, size_t) - inter
        sum_tgt += size_t - inter
        sum_src += size_u - inter

    lb1 = base + sum_max
    lb2 = base + sum_tgt + max(0, len(a_g) - len(a_q))
    lb3 = base + sum_src + max(0, len(a_q) - len(a_g))
    return lb1, lb2, lb3


def lb_parts(split: NodeSplit) -> int:
    """Pair bound evaluated on a split's unmapped parts."""
    return lb_graph(split.unmapped_source_graph, split.unmapped_target_graph)


def make_heuristic(g: LabeledGraph, q: LabeledGraph):
    """Bind h_for_mapping to a graph pair for use by successor generators."""
    return lambda mapping: h_for_mapping(mapping, g, q)
