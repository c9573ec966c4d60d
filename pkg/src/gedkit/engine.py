"""Beam-stack search for exact GED.

Iterated beam search: each pass descends layer by layer keeping at most w
nodes, recording on a stack the cost interval it actually covered. Nodes cut
by the beam are recovered later by shifting the top interval and searching
again, so the final upper bound is the exact distance regardless of w.
"""

from __future__ import annotations

import heapq
import itertools
import time
from collections import Counter
from dataclasses import dataclass, field

from .bounds import make_heuristic
from .graphs import LabeledGraph, vertex_partition
from .successors import (
    SearchNode,
    basic_gen_succr,
    determine_order,
    gen_succr,
    identity_order,
    make_root,
)

DEFAULT_BEAM_WIDTH = 15
DEFAULT_NODE_BUDGET = 10_000_000

EXACT = "exact"
ABOVE_BOUND = "above_bound"
WITHIN_THRESHOLD = "within_threshold"
BUDGET_EXHAUSTED = "budget_exhausted"


class _BudgetExceeded(Exception):
    def __init__(self, reason: str):
        self.reason = reason


@dataclass
class Interval:
    """Half-open cost interval [f_min, f_max) admitted for one layer."""

    f_min: int
    f_max: int


class BeamStack:
    """Stack of per-layer intervals driving pruning and backtracking."""

    def __init__(self):
        self._items: list[Interval] = []

    def push(self, interval: Interval):
        self._items.append(interval)

    def pop(self) -> Interval:
        return self._items.pop()

    def top(self) -> Interval:
        return self._items[-1]

    def __len__(self):
        return len(self._items)

    def __bool__(self):
        return bool(self._items)


class OpenLayer:
    """Live nodes of one layer, removable by id."""

    __slots__ = ("live",)

    def __init__(self, nodes=()):
        self.live = {n.id: n for n in nodes}

    def push(self, node: SearchNode):
        self.live[node.id] = node

    def remove(self, node_id: int):
        self.live.pop(node_id, None)

    def nodes(self):
        return self.live.values()

    def __len__(self):
        return len(self.live)


@dataclass
class SearchStats:
    nodes_generated: int = 0
    nodes_expanded: int = 0
    passes: int = 0
    backtracks: int = 0
    max_open: int = 0
    visit_counts: Counter = field(default_factory=Counter)
    ub_history: list[int] = field(default_factory=list)


@dataclass
class GedResult:
    """Outcome of one engine run.

    status 'exact' carries the distance; 'within_threshold' certifies
    upper_bound <= the requested threshold without claiming exactness;
    'above_bound' proves the distance is >= the initial bound;
    'budget_exhausted' reports the best upper bound found, if any.
    """

    status: str
    distance: int | None
    upper_bound: int | None
    stats: SearchStats

    @property
    def is_exact(self) -> bool:
        return self.status == EXACT


def _priority(node: SearchNode):
    # f ascending, then deeper progress first, then creation order.
    return (node.f, -node.g, node.id)


class SearchRun:
    """State of a single beam-stack search over one graph pair."""

    def __init__(self, g: LabeledGraph, q: LabeledGraph, w: int = DEFAULT_BEAM_WIDTH,
                 order_policy: str = "dfs", succ_policy: str = "reduced",
                 node_budget: int = DEFAULT_NODE_BUDGET, time_limit: float | None = None,
                 initial_ub: int | None = None, stop_threshold: int | None = None):
        if w < 1:
            raise ValueError(f"beam width must be >= 1, got {w}")
        if g.table is not q.table:
            raise ValueError("graphs must share one label table")
        self.g, self.q, self.w = g, q, w
        if order_policy == "dfs":
            self.order = determine_order(g)
        elif order_policy == "default":
            self.order = identity_order(g)
        else:
            raise ValueError(f"unknown order policy {order_policy!r}")
        if succ_policy not in ("basic", "reduced"):
            raise ValueError(f"unknown successor policy {succ_policy!r}")
        self.succ_policy = succ_policy
        self.part = vertex_partition(q)
        self.heuristic = make_heuristic(g, q)
        self.node_budget = node_budget
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        # Strictly above the delete-everything/insert-everything path cost.
        self.sentinel = g.n + q.n + g.m + q.m + 1
        self.initial_ub = self.sentinel if initial_ub is None else initial_ub
        self.ub = self.initial_ub
        self.stop_threshold = stop_threshold
        self.stopped = False

        self.ids = itertools.count()
        self.stats = SearchStats()
        # One queue per tree depth; insertion leaves sit one past layer |V_G|.
        self.open = [OpenLayer() for _ in range(g.n + 2)]
        self.cache: dict[int, list[SearchNode]] = {}
        self.bs = BeamStack()

        root = make_root(g, q, self.heuristic, self.ids)
        self.stats.nodes_generated += 1
        self.open[0].push(root)
        self.bs.push(Interval(0, self.ub))

    def _generate(self, r: SearchNode) -> list[SearchNode]:
        if self.succ_policy == "reduced":
            return gen_succr(r, self.g, self.q, self.part, self.order, self.heuristic, self.ids)
        return basic_gen_succr(r, self.g, self.q, self.order, self.heuristic, self.ids)

    def expand_node(self, r: SearchNode, layer: int) -> list[SearchNode]:
        """Successors of r admitted by the current interval.

        Generates and caches successors on first visit, then rereads the
        cache. Successors at or above the upper bound, or already visited,
        are pruned for good; if that prunes all of them, r itself leaves the
        layer queue.
        """
        self.stats.nodes_expanded += 1
        self.stats.visit_counts[r.id] += 1
        if not r.visited:
            succ = self._generate(r)
            self.stats.nodes_generated += len(succ)
            if self.stats.nodes_generated > self.node_budget:
                raise _BudgetExceeded("nodes")
            self.cache[r.id] = succ
            r.visited = True
        else:
            succ = self.cache.get(r.id, [])
        top = self.bs.top()
        admitted = []
        all_safely_pruned = True
        for n in succ:
            if n.f >= self.ub or n.visited:
                self.cache.pop(n.id, None)
            else:
                all_safely_pruned = False
                if top.f_min <= n.f < top.f_max:
                    admitted.append(n)
        if all_safely_pruned:
            self.open[layer].remove(r.id)
            self.cache.pop(r.id, None)
        return admitted

    def search_pass(self, layer: int):
        """One beam descent from `layer`; returns after the first leaf pop.

        Keeps the best w successors per layer; when more were generated, the
        current interval's right edge records the cheapest node cut, so a
        later pass can resume exactly there.
        """
        self.stats.passes += 1
        pql = [(_priority(n), n) for n in self.open[layer].nodes()]
        heapq.heapify(pql)
        pqll: list[SearchNode] = []
        while pql or pqll:
            while pql:
                if self.deadline is not None and time.monotonic() > self.deadline:
                    raise _BudgetExceeded("time")
                _, r = heapq.heappop(pql)
                if r.complete:
                    if r.g < self.ub:
                        self.ub = r.g
                        self.stats.ub_history.append(r.g)
                    if self.stop_threshold is not None and self.ub <= self.stop_threshold:
                        self.stopped = True
                    return
                pqll.extend(self.expand_node(r, layer))
            if len(pqll) > self.w:
                pqll.sort(key=_priority)
                self.bs.top().f_max = pqll[self.w].f
                pqll = pqll[: self.w]
            layer += 1
            self.open[layer] = OpenLayer(pqll)
            pql = [(_priority(n), n) for n in pqll]
            heapq.heapify(pql)
            pqll = []
            self.bs.push(Interval(0, self.ub))
            live = sum(len(o) for o in self.open)
            if live > self.stats.max_open:
                self.stats.max_open = live

    def backtrack(self) -> bool:
        """Pop exhausted intervals and shift the surviving top; False when done."""
        while self.bs and self.bs.top().f_max >= self.ub:
            self.bs.pop()
            self.stats.backtracks += 1
        if not self.bs:
            return False
        top = self.bs.top()
        top.f_min = top.f_max
        top.f_max = self.ub
        return True

    def run(self) -> GedResult:
        try:
            while self.bs:
                self.search_pass(len(self.bs) - 1)
                if self.stopped:
                    return GedResult(WITHIN_THRESHOLD, None, self.ub, self.stats)
                if not self.backtrack():
                    break
        except _BudgetExceeded:
            found = self.ub if self.ub < self.initial_ub else None
            return GedResult(BUDGET_EXHAUSTED, None, found, self.stats)
        if self.ub < self.initial_ub:
            return GedResult(EXACT, self.ub, self.ub, self.stats)
        return GedResult(ABOVE_BOUND, None, None, self.stats)


def bss_ged(g: LabeledGraph, q: LabeledGraph, w: int = DEFAULT_BEAM_WIDTH, *,
            order_policy: str = "dfs", succ_policy: str = "reduced",
            node_budget: int = DEFAULT_NODE_BUDGET, time_limit: float | None = None,
            initial_ub: int | None = None, stop_threshold: int | None = None) -> GedResult:
    """Exact GED via beam-stack search; see SearchRun for the knobs."""
    run = SearchRun(
        g, q, w,
        order_policy=order_policy,
        succ_policy=succ_policy,
        node_budget=node_budget,
        time_limit=time_limit,
        initial_ub=initial_ub,
        stop_threshold=stop_threshold,
    )
    return run.run()
