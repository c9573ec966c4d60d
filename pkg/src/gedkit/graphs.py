"""Labeled-graph data model: label interning, parsing, and per-graph summaries."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

# Reserved label id for dummy vertices; never handed out by interning.
DUMMY_LABEL = 0


class GraphFormatError(ValueError):
    """Raised on malformed graph database text; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class LabelTable:
    """Session-wide string-to-id interning for vertex and edge labels.

    Id 0 is reserved for the dummy label and can never be produced by
    intern(). Graphs are only comparable when built against the same table.
    """

    def __init__(self):
        self._ids: dict[str, int] = {}
        self._tokens: list[str] = ["<dummy>"]

    def intern(self, token: str) -> int:
        lid = self._ids.get(token)
        if lid is None:
            lid = len(self._tokens)
            self._ids[token] = lid
            self._tokens.append(token)
        return lid

    def token(self, label_id: int) -> str:
        return self._tokens[label_id]

    def __len__(self) -> int:
        return len(self._tokens)


class LabeledGraph:
    """Immutable simple undirected graph with interned vertex and edge labels.

    Vertices are dense 0-based ids. Edges are stored with u < v and mirrored
    into per-vertex adjacency lists. The graph size is its vertex count.
    """

    __slots__ = ("vertex_labels", "edges", "adjacency", "table", "_edge_labels")

    def __init__(self, vertex_labels, edges, table: LabelTable):
        self.vertex_labels = tuple(vertex_labels)
        n = len(self.vertex_labels)
        canon = []
        edge_labels: dict[tuple[int, int], int] = {}
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for u, v, lab in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) references unknown vertex")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if u > v:
                u, v = v, u
            if (u, v) in edge_labels:
                raise ValueError(f"duplicate edge ({u},{v})")
            edge_labels[(u, v)] = lab
            canon.append((u, v, lab))
            adj[u].append((v, lab))
            adj[v].append((u, lab))
        canon.sort()
        self.edges = tuple(canon)
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        self.table = table
        self._edge_labels = edge_labels

    @property
    def n(self) -> int:
        return len(self.vertex_labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_labels

    def edge_label(self, u: int, v: int) -> int | None:
        """Label of edge (u, v), or None if the edge is absent."""
        if u > v:
            u, v = v, u
        return self._edge_labels.get((u, v))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.vertex_labels == other.vertex_labels and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertex_labels, self.edges))

    def __repr__(self):
        return f"LabeledGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexPartition:
    """Equivalence classes of isomorphic vertices of a target graph.

    Two vertices share a class iff they carry the same label and the same
    labeled neighborhood. Classes are ordered by their smallest member, and
    class indices are 1-based; index lambda_q + 1 is reserved for dummies.
    """

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...] = field(repr=False)

    @property
    def lambda_q(self) -> int:
        return len(self.classes)

    @property
    def dummy_class(self) -> int:
        return len(self.classes) + 1

    def class_index(self, v: int | None) -> int:
        """1-based class of vertex v; dummies (None) map to lambda_q + 1."""
        if v is None:
            return self.dummy_class
        return self.class_of[v]


def neighborhood(g: LabeledGraph, u: int) -> frozenset[tuple[int, int]]:
    """Set of (neighbor id, edge label) pairs adjacent to u."""
    if not 0 <= u < g.n:
        raise IndexError(f"vertex {u} out of range for graph of size {g.n}")
    return frozenset(g.adjacency[u])


def vertex_partition(q: LabeledGraph) -> VertexPartition:
    """Group vertices of q by (label, labeled neighborhood) equivalence."""
    groups: dict[tuple, list[int]] = {}
    for v in range(q.n):
        key = (q.vertex_labels[v], q.adjacency[v])
        groups.setdefault(key, []).append(v)
    classes = sorted(groups.values(), key=lambda c: c[0])
    class_of = [0] * q.n
    for idx, members in enumerate(classes, start=1):
        for v in members:
            class_of[v] = idx
    return VertexPartition(
        classes=tuple(tuple(c) for c in classes),
        class_of=tuple(class_of),
    )


def degree_sequence(g: LabeledGraph) -> tuple[int, ...]:
    """Vertex degrees sorted non-increasing."""
    return tuple(sorted((len(a) for a in g.adjacency), reverse=True))


def label_multiset(g: LabeledGraph, which: str) -> Counter:
    """Multiset of vertex or edge labels ('vertices' or 'edges')."""
    if which == "vertices":
        return Counter(g.vertex_labels)
    if which == "edges":
        return Counter(lab for _, _, lab in g.edges)
    raise ValueError(f"which must be 'vertices' or 'edges', got {which!r}")


def multiset_intersection_size(a: Counter, b: Counter) -> int:
    """Size of the multiset intersection: sum over labels of min counts."""
    return sum((a & b).values())


def parse_graph_db(text: str, table: LabelTable | None = None) -> tuple[list[tuple[int, LabeledGraph]], LabelTable]:
    """Parse a graph transaction database.

    Format, one file per database:
      ``t # <graph-id>`` starts a graph, ``v <vid> <label>`` declares a
      vertex (ids contiguous from 0), ``e <u> <v> <label>`` declares an
      edge. Lines starting with ``#`` are comments; blank lines are skipped.

    Returns the graphs in file order together with the label table used.
    """
    if table is None:
        table = LabelTable()
    out: list[tuple[int, LabeledGraph]] = []
    seen_ids: set[int] = set()

    cur_id: int | None = None
    cur_labels: list[int] = []
    cur_edges: list[tuple[int, int, int]] = []
    cur_edge_set: set[tuple[int, int]] = set()

    def flush(line_no: int):
        if cur_id is None:
            return
        if cur_id in seen_ids:
            raise GraphFormatError(line_no, f"duplicate graph id {cur_id}")
        seen_ids.add(cur_id)
        out.append((cur_id, LabeledGraph(cur_labels, cur_edges, table)))

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "t":
            if len(parts) != 3 or parts[1] != "#":
                raise GraphFormatError(line_no, f"malformed graph header {line!r}")
            flush(line_no)
            try:
                cur_id = int(parts[2])
            except ValueError:
                raise GraphFormatError(line_no, f"graph id must be an integer, got {parts[2]!r}") from None
            cur_labels, cur_edges, cur_edge_set = [], [], set()
        elif kind == "v":
            if cur_id is None:
                raise GraphFormatError(line_no, "vertex line before any 't' header")
            if len(parts) != 3:
                raise GraphFormatError(line_no, f"malformed vertex line {line!r}")
            try:
                vid = int(parts[1])
            except ValueError:
                raise GraphFormatError(line_no, f"vertex id must be an integer, got {parts[1]!r}") from None
            if vid < len(cur_labels):
                raise GraphFormatError(line_no, f"duplicate vertex id {vid}")
            if vid != len(cur_labels):
                raise GraphFormatError(line_no, f"vertex ids must be contiguous, expected {len(cur_labels)} got {vid}")
            cur_labels.append(table.intern(parts[2]))
        elif kind == "e":
            if cur_id is None:
                raise GraphFormatError(line_no, "edge line before any 't' header")
            if len(parts) != 4:
                raise GraphFormatError(line_no, f"malformed edge line {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(line_no, "edge endpoints must be integers") from None
            if u == v:
                raise GraphFormatError(line_no, f"self-loop on vertex {u}")
            if not (0 <= u < len(cur_labels)) or not (0 <= v < len(cur_labels)):
                raise GraphFormatError(line_no, f"edge ({u},{v}) references unknown vertex")
            key = (u, v) if u < v else (v, u)
            if key in cur_edge_set:
                raise GraphFormatError(line_no, f"duplicate edge ({u},{v})")
            cur_edge_set.add(key)
            cur_edges.append((u, v, table.intern(parts[3])))
        else:
            raise GraphFormatError(line_no, f"unrecognized record {line!r}")
    flush(line_no=len(text.splitlines()) + 1)
    return out, table


def serialize_graph_db(graphs: list[tuple[int, LabeledGraph]]) -> str:
    """Render graphs back into transaction text (inverse of parse_graph_db)."""
    lines: list[str] = []
    for gid, g in graphs:
        lines.append(f"t # {gid}")
        for v in range(g.n):
            lines.append(f"v {v} {g.table.token(g.vertex_labels[v])}")
        for u, v, lab in g.edges:
            lines.append(f"e {u} {v} {g.table.token(lab)}")
    return "\n".join(lines) + "\n"
