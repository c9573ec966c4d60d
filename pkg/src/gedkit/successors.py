"""Search-tree successor generation, vertex processing order, and tree-size prediction."""

from __future__ import annotations

import itertools
import math
from typing import Callable, Sequence

from .graphs import LabeledGraph, VertexPartition
from .mapping import GraphMapping

# Fallback id source for nodes created outside an engine run (tests, tools).
_GLOBAL_IDS = itertools.count()

Heuristic = Callable[[GraphMapping], int]


class SearchNode:
    """One node of the mapping search tree.

    layer is the tree depth: the number of extension steps from the root.
    Inner nodes at layer l hold exactly l mapping pairs; the final insertion
    leaf appends all remaining target vertices at once.
    """

    __slots__ = ("id", "parent_id", "layer", "mapping", "g", "h", "f", "visited", "complete")

    def __init__(self, node_id, parent_id, layer, mapping, g, h, complete):
        self.id = node_id
        self.parent_id = parent_id
        self.layer = layer
        self.mapping = mapping
        self.g = g
        self.h = h
        self.f = g + h
        self.visited = False
        self.complete = complete

    def __repr__(self):
        return f"SearchNode(id={self.id}, layer={self.layer}, g={self.g}, h={self.h})"


def identity_order(g: LabeledGraph) -> tuple[int, ...]:
    return tuple(range(g.n))


def determine_order(g: LabeledGraph) -> tuple[int, ...]:
    """Processing order: DFS that always follows the smallest-ranked neighbor.

    The global rank sorts vertices by (degree ascending, id ascending);
    the DFS restarts from the lowest-ranked unvisited vertex, so every
    component is covered.
    """
    rank = sorted(range(g.n), key=lambda u: (len(g.adjacency[u]), u))
    pos = {u: i for i, u in enumerate(rank)}
    seen = [False] * g.n
    order: list[int] = []

    def dfs(u: int):
        order.append(u)
        seen[u] = True
        for v in sorted((v for v, _ in g.adjacency[u]), key=pos.__getitem__):
            if not seen[v]:
                dfs(v)

    for u in rank:
        if not seen[u]:
            dfs(u)
    return tuple(order)


def extension_cost(g: LabeledGraph, q: LabeledGraph, parent_map: dict[int, int | None],
                   u: int, z: int | None, preimage: dict[int, int] | None = None) -> int:
    """Edit-cost delta of appending the pair (u -> z) to a partial mapping.

    Counts the vertex operation for u plus every edge operation that becomes
    decidable once u is mapped: source edges to already-mapped vertices and
    target edges between z and already-used targets.
    """
    if z is None:
        cost = 1
        for w, _ in g.adjacency[u]:
            if w in parent_map:
                cost += 1
        return cost
    cost = int(g.vertex_labels[u] != q.vertex_labels[z])
    for w, lab in g.adjacency[u]:
        if w not in parent_map:
            continue
        a = parent_map[w]
        if a is None:
            cost += 1
        else:
            qlab = q.edge_label(z, a)
            if qlab is None or qlab != lab:
                cost += 1
    if preimage is None:
        preimage = {a: w for w, a in parent_map.items() if a is not None}
    for b, _ in q.adjacency[z]:
        w = preimage.get(b)
        if w is not None and not g.has_edge(u, w):
            cost += 1
    return cost


def leaf_completion_cost(g: LabeledGraph, q: LabeledGraph, used_targets: set[int]) -> int:
    """Cost of inserting every remaining target vertex and its edges."""
    cost = q.n - len(used_targets)
    for a, b, _ in q.edges:
        if a not in used_targets or b not in used_targets:
            cost += 1
    return cost


def _child(parent: SearchNode, g, q, u, z, heuristic, ids, parent_map, preimage) -> SearchNode:
    delta = extension_cost(g, q, parent_map, u, z, preimage)
    mapping = GraphMapping(parent.mapping.pairs + ((u, z),), g.n, q.n)
    used = len(preimage) + (1 if z is not None else 0)
    complete = parent.layer + 1 == g.n and used == q.n
    gval = parent.g + delta
    h = heuristic(mapping) if heuristic and not complete else 0
    return SearchNode(next(ids), parent.id, parent.layer + 1, mapping, gval, h, complete)


def _insertion_leaf(parent: SearchNode, g, q, remaining: list[int], heuristic, ids) -> SearchNode:
    pairs = parent.mapping.pairs + tuple((None, z) for z in remaining)
    mapping = GraphMapping(pairs, g.n, q.n)
    gval = parent.g + leaf_completion_cost(g, q, parent.mapping.used_targets())
    return SearchNode(next(ids), parent.id, parent.layer + 1, mapping, gval, 0, True)


def basic_gen_succr(r: SearchNode, g: LabeledGraph, q: LabeledGraph, order: Sequence[int],
                    heuristic: Heuristic | None = None, ids=None) -> list[SearchNode]:
    """All successors of r: one per unmapped target plus a dummy, no reduction.

    Once every source vertex is processed, a single leaf inserts all
    remaining target vertices.
    """
    if ids is None:
        ids = _GLOBAL_IDS
    parent_map = r.mapping.mapped_sources()
    preimage = {a: w for w, a in parent_map.items() if a is not None}
    depth = len(r.mapping.pairs)
    if depth < g.n:
        u = order[depth]
        succ = [
            _child(r, g, q, u, z, heuristic, ids, parent_map, preimage)
            for z in range(q.n)
            if z not in preimage
        ]
        succ.append(_child(r, g, q, u, None, heuristic, ids, parent_map, preimage))
        return succ
    remaining = [z for z in range(q.n) if z not in preimage]
    return [_insertion_leaf(r, g, q, remaining, heuristic, ids)]


def gen_succr(r: SearchNode, g: LabeledGraph, q: LabeledGraph, part: VertexPartition,
              order: Sequence[int], heuristic: Heuristic | None = None, ids=None) -> list[SearchNode]:
    """Reduced successors of r: class minima only, dummy only when forced.

    Per class of isomorphic target vertices, only the smallest unmapped
    member is extended; a dummy target is offered only while more source
    than target vertices remain unmapped. Cuts invalid and redundant
    mappings from the tree while preserving the minimum cost.
    """
    if ids is None:
        ids = _GLOBAL_IDS
    parent_map = r.mapping.mapped_sources()
    preimage = {a: w for w, a in parent_map.items() if a is not None}
    depth = len(r.mapping.pairs)
    if depth < g.n:
        u = order[depth]
        succ = []
        for members in part.classes:
            z = next((v for v in members if v not in preimage), None)
            if z is not None:
                succ.append(_child(r, g, q, u, z, heuristic, ids, parent_map, preimage))
        if g.n - depth > q.n - len(preimage):
            succ.append(_child(r, g, q, u, None, heuristic, ids, parent_map, preimage))
        return succ
    remaining = [z for z in range(q.n) if z not in preimage]
    return [_insertion_leaf(r, g, q, remaining, heuristic, ids)]


def make_root(g: LabeledGraph, q: LabeledGraph, heuristic: Heuristic | None = None, ids=None) -> SearchNode:
    if ids is None:
        ids = _GLOBAL_IDS
    mapping = GraphMapping((), g.n, q.n)
    complete = g.n == 0 and q.n == 0
    h = heuristic(mapping) if heuristic and not complete else 0
    return SearchNode(next(ids), None, 0, mapping, 0, h, complete)


def enumerate_search_tree(g: LabeledGraph, q: LabeledGraph, reduced: bool = True,
                          order: Sequence[int] | None = None,
                          part: VertexPartition | None = None,
                          heuristic: Heuristic | None = None):
    """Fully expand the search tree without pruning.

    Returns (layer_counts, leaves): node counts for layers 0..|V_G| and all
    complete-mapping leaf nodes. Intended for verification and inspection on
    small graphs; the tree is exponential.
    """
    from .graphs import vertex_partition

    if order is None:
        order = identity_order(g)
    if part is None:
        part = vertex_partition(q)
    ids = itertools.count()
    root = make_root(g, q, heuristic, ids)
    layer_counts = [0] * (g.n + 1)
    leaves: list[SearchNode] = []
    stack = [root]
    while stack:
        node = stack.pop()
        if node.layer <= g.n:
            layer_counts[node.layer] += 1
        if node.complete:
            leaves.append(node)
            continue
        if reduced:
            stack.extend(gen_succr(node, g, q, part, order, heuristic, ids))
        else:
            stack.extend(basic_gen_succr(node, g, q, order, heuristic, ids))
    return layer_counts, leaves


def predicted_layer_count(l: int, n_g: int, n_q: int, class_sizes: Sequence[int]) -> int:
    """Predicted number of reduced-tree nodes in layer l.

    Sums, over every admissible split of l processed vertices into the
    target classes plus dummies, the number of distinct partial canonical
    codes that split produces. Dummies are capped at max(0, |V_G| - |V_Q|),
    the most the dummy rule ever admits along one path.
    """
    if not 0 <= l <= n_g:
        raise ValueError(f"layer {l} out of range 0..{n_g}")
    dummy_cap = max(0, n_g - n_q)
    total = 0
    fact_l = math.factorial(l)

    def rec(idx: int, left: int, denom: int):
        nonlocal total
        if idx == len(class_sizes):
            if left <= dummy_cap:
                total += fact_l // (denom * math.factorial(left))
            return
        for x in range(min(left, class_sizes[idx]) + 1):
            rec(idx + 1, left - x, denom * math.factorial(x))

    rec(0, l, 1)
    return total


def predicted_tree_size(n_g: int, n_q: int, class_sizes: Sequence[int]) -> int:
    """Total node count of the reduced tree over layers 0..|V_G|."""
    return sum(predicted_layer_count(l, n_g, n_q, class_sizes) for l in range(n_g + 1))
