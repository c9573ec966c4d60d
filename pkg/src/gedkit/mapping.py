"""Graph mappings, their induced edit cost, canonical codes, and edit paths."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graphs import LabeledGraph, VertexPartition

# Dummy vertex marker inside mapping pairs.
DUMMY = None


@dataclass(frozen=True)
class GraphMapping:
    """A (partial or complete) assignment between dummy-extended vertex sets.

    pairs holds (source, target) entries in processing order; either side may
    be None for a dummy, never both. A mapping is complete when every vertex
    of both graphs is covered.
    """

    pairs: tuple[tuple[int | None, int | None], ...]
    n_source: int
    n_target: int

    def mapped_sources(self) -> dict[int, int | None]:
        """source vertex -> target (or None) for non-dummy sources."""
        return {s: t for s, t in self.pairs if s is not None}

    def used_targets(self) -> set[int]:
        return {t for _, t in self.pairs if t is not None}

    def is_complete(self) -> bool:
        srcs = {s for s, _ in self.pairs if s is not None}
        tgts = self.used_targets()
        return len(srcs) == self.n_source and len(tgts) == self.n_target

    def validate(self):
        """Check the structural invariants; raises ValueError on violation."""
        srcs = [s for s, _ in self.pairs if s is not None]
        tgts = [t for _, t in self.pairs if t is not None]
        if len(srcs) != len(set(srcs)):
            raise ValueError("repeated source vertex in mapping")
        if len(tgts) != len(set(tgts)):
            raise ValueError("repeated target vertex in mapping")
        if any(s is None and t is None for s, t in self.pairs):
            raise ValueError("pair maps dummy to dummy")
        if any(s is not None and not 0 <= s < self.n_source for s in srcs):
            raise ValueError("source vertex out of range")
        if any(t is not None and not 0 <= t < self.n_target for t in tgts):
            raise ValueError("target vertex out of range")


@dataclass(frozen=True)
class EditCostBreakdown:
    """Edit cost split into deletions, insertions, and substitutions."""

    c_d: int
    c_i: int
    c_s: int

    @property
    def total(self) -> int:
        return self.c_d + self.c_i + self.c_s


def induced_structure(psi: GraphMapping, g: LabeledGraph, q: LabeledGraph):
    """Common structure induced by a complete mapping.

    Returns (V_H, E_H): the source vertices mapped to real targets, and the
    source edges whose images are edges of the target graph.
    """
    tgt = psi.mapped_sources()
    v_h = {u for u, t in tgt.items() if t is not None}
    e_h = set()
    for u, v, _ in g.edges:
        tu, tv = tgt.get(u), tgt.get(v)
        if tu is not None and tv is not None and q.has_edge(tu, tv):
            e_h.add((u, v))
    return v_h, e_h


def edit_cost(psi: GraphMapping, g: LabeledGraph, q: LabeledGraph) -> EditCostBreakdown:
    """Cost of the edit path induced by a complete mapping (batch formula)."""
    tgt = psi.mapped_sources()
    v_h, e_h = induced_structure(psi, g, q)
    c_d = (g.n - len(v_h)) + (g.m - len(e_h))
    c_i = (q.n - len(v_h)) + (q.m - len(e_h))
    c_s = sum(1 for u in v_h if g.vertex_labels[u] != q.vertex_labels[tgt[u]])
    c_s += sum(
        1
        for (u, v) in e_h
        if g.edge_label(u, v) != q.edge_label(tgt[u], tgt[v])
    )
    return EditCostBreakdown(c_d=c_d, c_i=c_i, c_s=c_s)


def canonical_code(psi: GraphMapping, part: VertexPartition) -> tuple[int, ...]:
    """Per-pair sequence of target class indices; dummies get lambda_q + 1."""
    return tuple(part.class_index(t) for _, t in psi.pairs)


def code_compare(psi: GraphMapping, other: GraphMapping, part: VertexPartition) -> int:
    """Order two equal-code mappings by their target ids, first difference wins.

    Returns -1, 0, or 1. Raises ValueError when the canonical codes differ,
    since the order is only defined within one code class.
    """
    if canonical_code(psi, part) != canonical_code(other, part):
        raise ValueError("code_compare requires mappings with equal canonical codes")
    for (_, t1), (_, t2) in zip(psi.pairs, other.pairs):
        if t1 is None or t2 is None:
            continue  # equal codes put dummies at the same positions
        if t1 != t2:
            return -1 if t1 < t2 else 1
    return 0


def realize_edit_path(psi: GraphMapping, g: LabeledGraph, q: LabeledGraph) -> list[dict]:
    """Concrete edit operation list realizing a complete mapping.

    Operations are emitted in an order that keeps every intermediate graph
    valid: edge deletions before their endpoints' deletions, vertex
    insertions before edges touching them. Inserted target vertex y receives
    the fresh id g.n + y. The list length equals edit_cost(psi).total.
    """
    tgt = psi.mapped_sources()
    v_h, e_h = induced_structure(psi, g, q)
    ops: list[dict] = []

    for u, v, _ in g.edges:
        if (u, v) not in e_h:
            ops.append({"op": "del_edge", "u": u, "v": v})
    for u in sorted(tgt):
        if tgt[u] is None:
            ops.append({"op": "del_vertex", "u": u})
    for u in sorted(v_h):
        if g.vertex_labels[u] != q.vertex_labels[tgt[u]]:
            ops.append({"op": "sub_vertex", "u": u, "label": q.vertex_labels[tgt[u]]})
    for u, v in sorted(e_h):
        lab = q.edge_label(tgt[u], tgt[v])
        if g.edge_label(u, v) != lab:
            ops.append({"op": "sub_edge", "u": u, "v": v, "label": lab})

    # Preimage ids in the working graph: mapped targets keep their source id,
    # inserted targets get g.n + y.
    pre = {t: u for u, t in tgt.items() if t is not None}
    inserted = sorted(set(range(q.n)) - set(pre))
    for y in inserted:
        pre[y] = g.n + y
        ops.append({"op": "ins_vertex", "u": g.n + y, "label": q.vertex_labels[y]})
    image_eh = {(min(tgt[u], tgt[v]), max(tgt[u], tgt[v])) for u, v in e_h}
    for a, b, lab in q.edges:
        if (a, b) not in image_eh:
            pa, pb = pre[a], pre[b]
            if pa > pb:
                pa, pb = pb, pa
            ops.append({"op": "ins_edge", "u": pa, "v": pb, "label": lab})
    return ops


def edit_path_to_json(ops: list[dict], g: LabeledGraph) -> str:
    """Serialize an edit path as JSON lines, label ids rendered as tokens."""
    lines = []
    for op in ops:
        rec = dict(op)
        if "label" in rec:
            rec["label"] = g.table.token(rec["label"])
        lines.append(json.dumps(rec))
    return "\n".join(lines)
