"""Brute-force ground truth: exhaustive GED, isomorphism, and edit-path checking.

Everything here is deliberately independent of the reduced successor rules
and the beam-stack engine, so it can certify them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import LabeledGraph
from .mapping import GraphMapping


class OracleLimitError(ValueError):
    """Input exceeds the oracle's configured size limits."""


class EditPathError(ValueError):
    """An edit operation cannot be applied to the current working graph."""

    def __init__(self, index: int, op: dict, reason: str):
        super().__init__(f"op {index} {op}: {reason}")
        self.index = index
        self.op = op


@dataclass(frozen=True)
class OracleLimits:
    max_vertices: int = 8
    max_mappings: int = 10_000_000


@dataclass(frozen=True)
class OracleResult:
    distance: int
    mapping: GraphMapping
    mappings_enumerated: int


def count_complete_basic_mappings(n_g: int, n_q: int) -> int:
    """Closed-form leaf count of the unreduced tree: every way to send each
    source vertex to a distinct target or to a dummy."""
    return sum(
        math.comb(n_g, k) * math.perm(n_q, k) for k in range(min(n_g, n_q) + 1)
    )


def exhaustive_ged(g: LabeledGraph, q: LabeledGraph, limits: OracleLimits | None = None) -> OracleResult:
    """Minimum edit cost over every complete mapping, found by full enumeration.

    Walks the unreduced successor tree with no pruning, accumulating the edit
    cost pair by pair, and keeps the cheapest complete mapping. Refuses
    inputs whose vertex count or mapping count exceeds the limits.
    """
    limits = limits or OracleLimits()
    if g.n > limits.max_vertices or q.n > limits.max_vertices:
        raise OracleLimitError(
            f"oracle limited to {limits.max_vertices} vertices, got {g.n} and {q.n}"
        )
    total = count_complete_basic_mappings(g.n, q.n)
    if total > limits.max_mappings:
        raise OracleLimitError(f"{total} mappings exceed the cap {limits.max_mappings}")
    if g.table is not q.table:
        raise ValueError("graphs must share one label table")

    n_g, n_q = g.n, q.n
    gl, ql = g.vertex_labels, q.vertex_labels
    gadj = [dict(a) for a in g.adjacency]
    qadj = [dict(a) for a in q.adjacency]
    target_of = [-2] * n_g  # -2 unassigned, -1 dummy
    source_of = [-1] * n_q
    used = [False] * n_q

    best_cost = g.n + q.n + g.m + q.m + 1
    best_snapshot: list[int] = []
    enumerated = 0

    def leaf_cost(cost: int) -> int:
        cost += n_q - sum(used)
        for a, b, _ in q.edges:
            if not used[a] or not used[b]:
                cost += 1
        return cost

    def extend_cost(u: int, z: int) -> int:
        # Sources 0..u-1 are already assigned (identity processing order).
        c = 1 if gl[u] != ql[z] else 0
        for w, lab in gadj[u].items():
            if w >= u:
                continue
            a = target_of[w]
            if a == -1:
                c += 1
            else:
                qlab = qadj[z].get(a)
                if qlab is None or qlab != lab:
                    c += 1
        for b in qadj[z]:
            w = source_of[b]
            if w >= 0 and w not in gadj[u]:
                c += 1
        return c

    def rec(u: int, cost: int):
        nonlocal best_cost, best_snapshot, enumerated
        if u == n_g:
            enumerated += 1
            c = leaf_cost(cost)
            if c < best_cost:
                best_cost = c
                best_snapshot = target_of.copy()
            return
        for z in range(n_q):
            if used[z]:
                continue
            d = extend_cost(u, z)
            used[z] = True
            target_of[u] = z
            source_of[z] = u
            rec(u + 1, cost + d)
            used[z] = False
            target_of[u] = -2
            source_of[z] = -1
        d = 1 + sum(1 for w in gadj[u] if w < u and target_of[w] != -2)
        target_of[u] = -1
        rec(u + 1, cost + d)
        target_of[u] = -2

    rec(0, 0)

    pairs = [(u, None if t == -1 else t) for u, t in enumerate(best_snapshot)]
    covered = {t for t in best_snapshot if t >= 0}
    pairs.extend((None, z) for z in range(n_q) if z not in covered)
    mapping = GraphMapping(tuple(pairs), n_g, n_q)
    return OracleResult(best_cost, mapping, enumerated)


def is_isomorphic(g: LabeledGraph, q: LabeledGraph, limits: OracleLimits | None = None) -> bool:
    """Label-preserving isomorphism test via backtracking with degree pruning."""
    limits = limits or OracleLimits()
    if g.n > limits.max_vertices or q.n > limits.max_vertices:
        raise OracleLimitError(
            f"isomorphism test limited to {limits.max_vertices} vertices"
        )
    if g.n != q.n or g.m != q.m:
        return False
    if sorted(g.vertex_labels) != sorted(q.vertex_labels):
        return False
    if sorted(lab for *_, lab in g.edges) != sorted(lab for *_, lab in q.edges):
        return False
    degs = lambda x: sorted((len(a) for a in x.adjacency), reverse=True)
    if degs(g) != degs(q):
        return False

    order = sorted(range(g.n), key=lambda u: -len(g.adjacency[u]))
    image = {}
    used = [False] * q.n

    def feasible(u: int, z: int) -> bool:
        if g.vertex_labels[u] != q.vertex_labels[z]:
            return False
        if len(g.adjacency[u]) != len(q.adjacency[z]):
            return False
        for w, t in image.items():
            if g.edge_label(u, w) != q.edge_label(z, t):
                return False
        return True

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        for z in range(q.n):
            if used[z] or not feasible(u, z):
                continue
            image[u] = z
            used[z] = True
            if rec(i + 1):
                return True
            del image[u]
            used[z] = False
        return False

    return rec(0)


def check_edit_path(g: LabeledGraph, q: LabeledGraph, ops: list[dict],
                    limits: OracleLimits | None = None) -> bool:
    """Apply ops to g and test whether the result is isomorphic to q.

    Validates applicability op by op: only isolated vertices may be deleted,
    inserted edges and vertices must be new, substituted items must exist.
    """
    verts: dict[int, int] = {u: lab for u, lab in enumerate(g.vertex_labels)}
    edges: dict[tuple[int, int], int] = {(u, v): lab for u, v, lab in g.edges}
    incident = {u: 0 for u in verts}
    for u, v in edges:
        incident[u] += 1
        incident[v] += 1

    def key(u, v):
        return (u, v) if u < v else (v, u)

    for i, op in enumerate(ops):
        kind = op.get("op")
        if kind == "del_edge":
            k = key(op["u"], op["v"])
            if k not in edges:
                raise EditPathError(i, op, "edge does not exist")
            del edges[k]
            incident[k[0]] -= 1
            incident[k[1]] -= 1
        elif kind == "ins_edge":
            u, v = op["u"], op["v"]
            if u == v:
                raise EditPathError(i, op, "self-loop")
            if u not in verts or v not in verts:
                raise EditPathError(i, op, "endpoint does not exist")
            k = key(u, v)
            if k in edges:
                raise EditPathError(i, op, "duplicate edge")
            edges[k] = op["label"]
            incident[u] += 1
            incident[v] += 1
        elif kind == "del_vertex":
            u = op["u"]
            if u not in verts:
                raise EditPathError(i, op, "vertex does not exist")
            if incident[u]:
                raise EditPathError(i, op, "vertex is not isolated")
            del verts[u]
            del incident[u]
        elif kind == "ins_vertex":
            u = op["u"]
            if u in verts:
                raise EditPathError(i, op, "vertex already exists")
            verts[u] = op["label"]
            incident[u] = 0
        elif kind == "sub_vertex":
            u = op["u"]
            if u not in verts:
                raise EditPathError(i, op, "vertex does not exist")
            verts[u] = op["label"]
        elif kind == "sub_edge":
            k = key(op["u"], op["v"])
            if k not in edges:
                raise EditPathError(i, op, "edge does not exist")
            edges[k] = op["label"]
        else:
            raise EditPathError(i, op, f"unknown operation {kind!r}")

    ids = sorted(verts)
    index = {u: i for i, u in enumerate(ids)}
    result = LabeledGraph(
        [verts[u] for u in ids],
        [(index[u], index[v], lab) for (u, v), lab in edges.items()],
        g.table,
    )
    return is_isomorphic(result, q, limits)
