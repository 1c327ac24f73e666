"""Exact Max-Cut on planar graphs, optionally forcing given edges into the cut.

Cuts of a plane graph are exactly the complements of T-joins in its dual, where
T is the set of odd-length faces. The best cut is therefore ``E \\ D`` for a
minimum-weight T-join ``D``. A T-join is assembled from shortest dual paths
paired up by a minimum-weight perfect matching on the terminals. Forcing an
edge into the cut removes its dual edge from the T-join search. A dual
component left with an odd number of terminals has no valid cut.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

import networkx as nx

from .errors import InvalidForcedPair, NotPlanar, OddTerminalComponent
from .graph import Cut, WeightedGraph

Dart = tuple[int, int]


@dataclass(frozen=True)
class PlanarEmbedding:
    # clockwise neighbour order around each node
    rotation: Mapping[int, tuple[int, ...]]
    faces: tuple[tuple[Dart, ...], ...]
    # connected component index of every face
    face_component: tuple[int, ...]
    outer_face: int

    @property
    def num_faces(self) -> int:
        return len(self.faces)


@dataclass(frozen=True)
class DualGraph:
    num_nodes: int
    # primal edge id -> (face left of u->v, face left of v->u)
    ends: Mapping[int, tuple[int, int]]
    weight: Mapping[int, int]
    terminals: frozenset[int]


def planar_embed(graph: WeightedGraph) -> PlanarEmbedding:
    """Combinatorial embedding of every connected component of ``graph``.

    An isolated node gets a face with an empty boundary walk, so Euler's
    relation holds component by component.
    """
    g = nx.Graph()
    g.add_nodes_from(graph.nodes)
    g.add_edges_from(e.ends for e in graph.edges)
    ok, emb = nx.check_planarity(g)
    if not ok:
        raise NotPlanar(f"graph with {len(graph)} nodes and {graph.num_edges} edges is not planar")
    rotation = {x: tuple(emb.neighbors_cw_order(x)) for x in sorted(graph.nodes)}
    # next dart after (u, v) continues from v with the neighbour preceding u
    succ: dict[Dart, Dart] = {}
    for v, order in rotation.items():
        d = len(order)
        for i, u in enumerate(order):
            succ[(u, v)] = (v, order[i - 1])

    comp_of = {}
    for ci, comp in enumerate(graph.components()):
        for x in comp:
            comp_of[x] = ci

    faces: list[tuple[Dart, ...]] = []
    face_component: list[int] = []
    seen: set[Dart] = set()
    for x in sorted(graph.nodes):
        if not rotation[x]:
            faces.append(())
            face_component.append(comp_of[x])
            continue
        for y in rotation[x]:
            if (x, y) in seen:
                continue
            walk = []
            d = (x, y)
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = succ[d]
            faces.append(tuple(walk))
            face_component.append(comp_of[x])
    outer = max(range(len(faces)), key=lambda i: (len(faces[i]), -i), default=0)
    return PlanarEmbedding(rotation, tuple(faces), tuple(face_component), outer)


def build_dual(graph: WeightedGraph, embedding: PlanarEmbedding) -> DualGraph:
    face_of: dict[Dart, int] = {}
    for i, walk in enumerate(embedding.faces):
        for d in walk:
            face_of[d] = i
    ends = {e.id: (face_of[(e.u, e.v)], face_of[(e.v, e.u)]) for e in graph.edges}
    # a face walk traverses a bridge twice, matching the self-loop degree of 2
    terminals = frozenset(i for i, walk in enumerate(embedding.faces) if len(walk) % 2)
    return DualGraph(
        len(embedding.faces), ends, {e.id: e.weight for e in graph.edges}, terminals
    )


def min_weight_perfect_matching(
    terminals: Iterable[int], distances: Mapping[tuple[int, int], int]
) -> tuple[list[tuple[int, int]], int]:
    """Minimum-cost perfect matching on a complete graph over ``terminals``.

    ``distances`` must hold a cost for every unordered pair, keyed either way round.
    """
    ts = sorted(terminals)
    if len(ts) % 2:
        raise ValueError(f"odd number of terminals: {len(ts)}")

    def dist(a: int, b: int) -> int:
        return distances[(a, b)] if (a, b) in distances else distances[(b, a)]

    if not ts:
        return [], 0
    if len(ts) <= 6:
        best = None
        for pairs in _pairings(ts):
            cost = sum(dist(a, b) for a, b in pairs)
            if best is None or cost < best[1]:
                best = (pairs, cost)
        assert best is not None
        return best
    # max-weight max-cardinality matching on (big - d) is a min-cost perfect matching
    big = max(dist(a, b) for a, b in itertools.combinations(ts, 2)) + 1
    g = nx.Graph()
    for a, b in itertools.combinations(ts, 2):
        g.add_edge(a, b, weight=big - dist(a, b))
    mate = nx.max_weight_matching(g, maxcardinality=True)
    pairs = sorted(tuple(sorted(p)) for p in mate)
    assert 2 * len(pairs) == len(ts)
    return pairs, sum(dist(a, b) for a, b in pairs)


def _pairings(items: list[int]) -> Iterable[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for tail in _pairings(rest):
            yield [(first, items[i]), *tail]


def _dual_components(dual: DualGraph, active: list[int]) -> list[int]:
    parent = list(range(dual.num_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in active:
        a, b = dual.ends[eid]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(dual.num_nodes)]


def min_weight_t_join(
    dual: DualGraph, terminals: Iterable[int], exclude: Iterable[int] = ()
) -> tuple[frozenset[int], int]:
    """Minimum-weight edge set of ``dual`` whose odd-degree nodes are exactly ``terminals``.

    Edges listed in ``exclude`` may not be used. Negative edges are taken
    outright and the terminal set is corrected for their parity, leaving a
    problem over absolute weights.
    """
    excluded = set(exclude)
    active = [eid for eid in dual.ends if eid not in excluded]
    comp = _dual_components(dual, active)
    T = set(terminals)
    count: dict[int, int] = {}
    for t in T:
        count[comp[t]] = count.get(comp[t], 0) + 1
    odd = [c for c, k in count.items() if k % 2]
    if odd:
        raise OddTerminalComponent(f"dual components {sorted(odd)} hold an odd number of terminals")

    negative = {eid for eid in active if dual.weight[eid] < 0}
    target = set(T)
    for eid in negative:
        a, b = dual.ends[eid]
        if a != b:
            target ^= {a}
            target ^= {b}

    adj: dict[int, list[tuple[int, int, int]]] = {}
    for eid in active:
        a, b = dual.ends[eid]
        if a == b:
            continue
        w = abs(dual.weight[eid])
        adj.setdefault(a, []).append((b, w, eid))
        adj.setdefault(b, []).append((a, w, eid))

    join = set(negative)
    by_comp: dict[int, list[int]] = {}
    for t in sorted(target):
        by_comp.setdefault(comp[t], []).append(t)
    for ts in by_comp.values():
        trees = {s: _dijkstra(adj, s) for s in ts[:-1]}
        distances = {
            (a, b): trees[a][0][b] for a, b in itertools.combinations(ts, 2)
        }
        pairs, _ = min_weight_perfect_matching(ts, distances)
        for a, b in pairs:
            _, pred = trees[a]
            x = b
            while x != a:
                prev, eid = pred[x]
                join ^= {eid}
                x = prev
    return frozenset(join), sum(dual.weight[eid] for eid in join)


def _dijkstra(
    adj: Mapping[int, list[tuple[int, int, int]]], source: int
) -> tuple[dict[int, int], dict[int, tuple[int, int]]]:
    dist = {source: 0}
    pred: dict[int, tuple[int, int]] = {}
    heap = [(0, source)]
    done: set[int] = set()
    while heap:
        d, x = heapq.heappop(heap)
        if x in done:
            continue
        done.add(x)
        for y, w, eid in adj.get(x, ()):
            nd = d + w
            if y not in dist or nd < dist[y]:
                dist[y] = nd
                pred[y] = (x, eid)
                heapq.heappush(heap, (nd, y))
    return dist, pred


def side_from_cut_edges(graph: WeightedGraph, cut_edges: Iterable[int]) -> frozenset[int]:
    """Two-colour ``graph`` so that exactly ``cut_edges`` join different colours.

    The lowest node of every component lands in the returned side.
    """
    cut = set(cut_edges)
    colour: dict[int, int] = {}
    for comp in graph.components():
        root = comp[0]
        colour[root] = 1
        stack = [root]
        while stack:
            x = stack.pop()
            for y, eid in graph.neighbors(x).items():
                c = colour[x] ^ (eid in cut)
                if y not in colour:
                    colour[y] = c
                    stack.append(y)
                elif colour[y] != c:
                    raise ValueError(f"edge set is not a cut: conflict at edge {eid}")
    return frozenset(x for x, c in colour.items() if c)


def fce_max_cut_planar(
    graph: WeightedGraph, forced: Iterable[tuple[int, int]] = ()
) -> Cut | None:
    """Maximum cut of a planar graph that separates every pair in ``forced``.

    Each forced pair must be joined by an edge. Returns ``None`` when no cut
    separates all forced pairs.
    """
    forced_ids = set()
    for u, v in forced:
        e = graph.edge_between(u, v)
        if e is None:
            raise InvalidForcedPair(f"forced pair ({u}, {v}) is not an edge")
        forced_ids.add(e.id)
    if graph.num_edges == 0:
        return Cut(side_from_cut_edges(graph, ()), 0)
    embedding = planar_embed(graph)
    dual = build_dual(graph, embedding)
    try:
        join, cost = min_weight_t_join(dual, dual.terminals, forced_ids)
    except OddTerminalComponent:
        return None
    cut_edges = [eid for eid in graph.edge_ids if eid not in join]
    side = side_from_cut_edges(graph, cut_edges)
    return Cut(side, graph.total_weight() - cost)


def planar_max_cut(graph: WeightedGraph) -> Cut:
    cut = fce_max_cut_planar(graph)
    assert cut is not None
    return cut
