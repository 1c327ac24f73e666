"""Weighted simple graphs, crossing sets and the minor operations used by the solver.

Everything here is immutable: ``contract`` and ``delete_edge`` return new graph
values so the branching code can fan out from one state without copying by hand.
Node and edge ids are non-negative integers. Contraction allocates a fresh node
id from a per-graph counter and never reuses a live id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    DensityExceeded,
    DuplicateCrossingEdge,
    EdgeNotFound,
    ParallelEdge,
    SameNode,
    SelfLoop,
    SharedEndpointCrossing,
    UnknownNode,
    WeightOverflow,
)

WEIGHT_LIMIT = 2**62

Crossing = tuple[int, int]


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    weight: int

    @property
    def ends(self) -> tuple[int, int]:
        return (self.u, self.v)

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


class WeightedGraph:
    """Undirected simple graph with exact integer edge weights."""

    __slots__ = ("_nodes", "_edges", "_adj", "next_node", "next_edge")

    def __init__(
        self,
        nodes: Iterable[int],
        edges: Iterable[Edge | tuple[int, int, int, int]] = (),
        *,
        next_node: int | None = None,
        next_edge: int | None = None,
    ) -> None:
        node_set = frozenset(nodes)
        adj: dict[int, dict[int, int]] = {x: {} for x in sorted(node_set)}
        table: dict[int, Edge] = {}
        for item in edges:
            e = item if isinstance(item, Edge) else Edge(*item)
            if type(e.weight) is not int:
                raise TypeError(f"edge {e.id}: weight must be an int, got {e.weight!r}")
            if e.id in table:
                raise ValueError(f"duplicate edge id {e.id}")
            if e.u == e.v:
                raise SelfLoop(f"edge {e.id} is a self-loop at node {e.u}")
            for x in e.ends:
                if x not in node_set:
                    raise UnknownNode(x)
            if e.v in adj[e.u]:
                raise ParallelEdge(
                    f"edges {adj[e.u][e.v]} and {e.id} both join {e.u} and {e.v}"
                )
            adj[e.u][e.v] = e.id
            adj[e.v][e.u] = e.id
            table[e.id] = e
        self._nodes = node_set
        self._edges = dict(sorted(table.items()))
        self._adj = adj
        self.next_node = max(
            next_node or 0, max(node_set, default=-1) + 1
        )
        self.next_edge = max(next_edge or 0, max(table, default=-1) + 1)

    @property
    def nodes(self) -> frozenset[int]:
        return self._nodes

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges.values())

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(self._edges)

    def __len__(self) -> int:
        return len(self._nodes)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def edge(self, eid: int) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise EdgeNotFound(f"edge {eid} does not exist") from None

    def has_edge(self, eid: int) -> bool:
        return eid in self._edges

    def edge_between(self, u: int, v: int) -> Edge | None:
        eid = self._adj.get(u, {}).get(v)
        return None if eid is None else self._edges[eid]

    def neighbors(self, u: int) -> Mapping[int, int]:
        """Map neighbour -> connecting edge id."""
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def total_weight(self) -> int:
        return sum(e.weight for e in self._edges.values())

    def components(self) -> list[list[int]]:
        """Connected components as sorted node lists, ordered by smallest node."""
        seen: set[int] = set()
        out = []
        for s in sorted(self._nodes):
            if s in seen:
                continue
            seen.add(s)
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def subgraph(self, nodes: Iterable[int]) -> WeightedGraph:
        keep = frozenset(nodes)
        return WeightedGraph(
            keep,
            (e for e in self._edges.values() if e.u in keep and e.v in keep),
            next_node=self.next_node,
            next_edge=self.next_edge,
        )

    def with_edges(self, edges: Iterable[Edge]) -> WeightedGraph:
        return WeightedGraph(
            self._nodes, edges, next_node=self.next_node, next_edge=self.next_edge
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._nodes, tuple(self._edges.values())))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={len(self._nodes)}, m={len(self._edges)})"


@dataclass(frozen=True)
class Cut:
    side: frozenset[int]
    value: int

    def complement(self, graph: WeightedGraph) -> Cut:
        return Cut(graph.nodes - self.side, self.value)


@dataclass(frozen=True)
class ContractionRecord:
    merged_a: int
    merged_b: int
    new_node: int
    # (kept_edge_id, absorbed_edge_id); the kept id is always the smaller one.
    merged_edge_pairs: tuple[tuple[int, int], ...] = ()
    removed_edge: int | None = None
    dissolved_crossings: tuple[int, ...] = ()


@dataclass(frozen=True)
class EmbeddedInstance:
    graph: WeightedGraph
    crossings: tuple[Crossing, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "crossings", normalize_crossings(self.crossings))

    @property
    def k(self) -> int:
        return len(self.crossings)


def normalize_crossings(crossings: Iterable[Iterable[int]]) -> tuple[Crossing, ...]:
    out = []
    for pair in crossings:
        a, b = tuple(pair)
        out.append((a, b) if a <= b else (b, a))
    return tuple(sorted(out))


def cut_value(graph: WeightedGraph, side: Iterable[int]) -> int:
    """Total weight of the edges with exactly one endpoint in ``side``."""
    s = frozenset(side)
    unknown = s - graph.nodes
    if unknown:
        raise UnknownNode(f"nodes not in graph: {sorted(unknown)}")
    return sum(e.weight for e in graph.edges if (e.u in s) != (e.v in s))


def delete_edge(graph: WeightedGraph, eid: int) -> WeightedGraph:
    graph.edge(eid)
    return graph.with_edges(e for e in graph.edges if e.id != eid)


def add_edge(graph: WeightedGraph, u: int, v: int, weight: int = 0) -> tuple[WeightedGraph, Edge]:
    """Insert edge ``{u, v}`` with a fresh id; return the existing edge if present."""
    existing = graph.edge_between(u, v)
    if existing is not None:
        return graph, existing
    new = Edge(graph.next_edge, u, v, weight)
    return graph.with_edges((*graph.edges, new)), new


def contract(graph: WeightedGraph, a: int, b: int) -> tuple[WeightedGraph, ContractionRecord]:
    """Merge ``a`` and ``b`` into a fresh node.

    The edge ``{a, b}`` disappears, and two edges that become parallel are fused
    into the one with the smaller id, carrying the summed weight.
    """
    if a == b:
        raise SameNode(f"cannot contract node {a} with itself")
    for x in (a, b):
        if x not in graph.nodes:
            raise UnknownNode(x)
    new = graph.next_node
    removed = graph.edge_between(a, b)
    merged: dict[int, Edge] = {}
    pairs = []
    edges = []
    for e in graph.edges:
        if removed is not None and e.id == removed.id:
            continue
        if e.u in (a, b) or e.v in (a, b):
            far = e.v if e.u in (a, b) else e.u
            prev = merged.get(far)
            if prev is None:
                merged[far] = Edge(e.id, new, far, e.weight)
            else:
                # edges iterate in id order, so prev.id < e.id
                merged[far] = Edge(prev.id, new, far, prev.weight + e.weight)
                pairs.append((prev.id, e.id))
        else:
            edges.append(e)
    edges.extend(merged.values())
    nodes = (graph.nodes - {a, b}) | {new}
    out = WeightedGraph(nodes, edges, next_node=new + 1, next_edge=graph.next_edge)
    record = ContractionRecord(
        a, b, new, tuple(pairs), None if removed is None else removed.id
    )
    return out, record


def contract_side(side: Iterable[int], record: ContractionRecord) -> frozenset[int]:
    """Project a node set of the original graph onto the contracted graph."""
    s = frozenset(side)
    a, b = record.merged_a, record.merged_b
    if a in s and b in s:
        return (s - {a, b}) | {record.new_node}
    return s


def split(side: Iterable[int], record: ContractionRecord) -> frozenset[int]:
    s = frozenset(side)
    if record.new_node in s:
        return (s - {record.new_node}) | {record.merged_a, record.merged_b}
    return s


def crossing_endpoints(graph: WeightedGraph, crossing: Crossing) -> set[int]:
    e1, e2 = (graph.edge(x) for x in crossing)
    return {e1.u, e1.v, e2.u, e2.v}


def update_crossings(
    crossings: Iterable[Crossing], graph: WeightedGraph, record: ContractionRecord
) -> tuple[tuple[Crossing, ...], tuple[int, ...]]:
    """Carry a crossing set through a contraction of ``graph``.

    Returns the surviving crossings over the contracted graph's edge ids and the
    indices (into the input order) of the crossings that were dropped.
    """
    crossings = list(crossings)
    a, b = record.merged_a, record.merged_b
    remap = {absorbed: kept for kept, absorbed in record.merged_edge_pairs}
    dropped = set()
    owner: dict[int, int] = {}
    for i, cr in enumerate(crossings):
        ends = crossing_endpoints(graph, cr)
        if a in ends and b in ends:
            dropped.add(i)
        else:
            owner[cr[0]] = owner[cr[1]] = i
    # fused edge keeps the crossing of its smaller-id half (the kept id)
    for kept_id, absorbed_id in record.merged_edge_pairs:
        if kept_id in owner and absorbed_id in owner:
            dropped.add(owner[absorbed_id])
    kept = []
    for i, cr in enumerate(crossings):
        if i not in dropped:
            e1, e2 = (remap.get(x, x) for x in cr)
            kept.append((min(e1, e2), max(e1, e2)))
    return tuple(sorted(kept)), tuple(sorted(dropped))


def contract_instance(
    instance: EmbeddedInstance, a: int, b: int
) -> tuple[EmbeddedInstance, ContractionRecord]:
    graph, record = contract(instance.graph, a, b)
    crossings, dropped = update_crossings(instance.crossings, instance.graph, record)
    record = ContractionRecord(
        record.merged_a,
        record.merged_b,
        record.new_node,
        record.merged_edge_pairs,
        record.removed_edge,
        dropped,
    )
    return EmbeddedInstance(graph, crossings), record


def _check_density(n: int, m: int, k: int) -> None:
    if n >= 3 and m > 4 * n - 8:
        raise DensityExceeded(f"{m} edges exceed 4n-8 = {4 * n - 8} for n = {n}")
    if n >= 3 and k > 2 * n - 4:
        raise DensityExceeded(f"{k} crossings exceed 2n-4 = {2 * n - 4} for n = {n}")


def _check_crossings(graph: WeightedGraph, crossings: Iterable[Iterable[int]]) -> None:
    seen: dict[int, int] = {}
    for idx, pair in enumerate(crossings):
        e1, e2 = tuple(pair)
        for eid in (e1, e2):
            if not graph.has_edge(eid):
                raise EdgeNotFound(f"crossing {idx} references missing edge {eid}")
        if e1 == e2:
            raise DuplicateCrossingEdge(f"crossing {idx} pairs edge {e1} with itself")
        for eid in (e1, e2):
            if eid in seen:
                raise DuplicateCrossingEdge(
                    f"edge {eid} appears in crossings {seen[eid]} and {idx}"
                )
            seen[eid] = idx
        if len(crossing_endpoints(graph, (e1, e2))) != 4:
            raise SharedEndpointCrossing(
                f"crossing {idx}: edges {e1} and {e2} share an endpoint"
            )


def validate(instance: EmbeddedInstance) -> None:
    """Raise the first violated invariant of ``instance``; return None if it is valid."""
    g = instance.graph
    _check_density(len(g), g.num_edges, len(instance.crossings))
    _check_crossings(g, instance.crossings)
    bound = sum(abs(e.weight) for e in g.edges)
    if bound > WEIGHT_LIMIT:
        raise WeightOverflow(f"sum of absolute weights {bound} exceeds 2^62")


def build_instance(
    nodes: Iterable[int],
    edges: Iterable[tuple[int, int, int, int]],
    crossings: Iterable[Iterable[int]] = (),
) -> EmbeddedInstance:
    """Validate raw data in a fixed order and assemble an instance.

    Density is checked on the raw counts before simplicity, so a small node set
    with too many declared edges reports ``DensityExceeded`` rather than the
    parallel edges that must then exist.
    """
    nodes = list(nodes)
    edges = list(edges)
    crossings = [tuple(c) for c in crossings]
    _check_density(len(set(nodes)), len(edges), len(crossings))
    graph = WeightedGraph(nodes, edges)
    _check_crossings(graph, crossings)
    instance = EmbeddedInstance(graph, tuple(crossings))
    validate(instance)
    return instance
