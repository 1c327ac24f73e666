"""Brute-force reference solvers and a seeded 1-planar instance generator."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import TooLarge, Unsatisfiable
from .graph import Cut, Edge, EmbeddedInstance, WeightedGraph, validate

MAX_ORACLE_NODES = 24
_CHUNK = 1 << 16


def _sweep(graph: WeightedGraph, forced: Iterable[tuple[int, int]] = ()) -> Cut | None:
    nodes = sorted(graph.nodes)
    n = len(nodes)
    if n > MAX_ORACLE_NODES:
        raise TooLarge(f"oracle handles at most {MAX_ORACLE_NODES} nodes, got {n}")
    if n == 0:
        return Cut(frozenset(), 0) if not list(forced) else None
    # nodes[0] stays outside S; bit j of the index puts nodes[j + 1] in S
    pos = {x: j for j, x in enumerate(nodes)}
    eu = np.array([pos[e.u] for e in graph.edges], dtype=np.int64)
    ev = np.array([pos[e.v] for e in graph.edges], dtype=np.int64)
    w = np.array([e.weight for e in graph.edges], dtype=np.int64)
    fu = np.array([pos[u] for u, _ in forced], dtype=np.int64)
    fv = np.array([pos[v] for _, v in forced], dtype=np.int64)
    total = 1 << (n - 1)
    best_val: int | None = None
    best_idx = -1
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        # side bit of node j: 0 for j == 0, else bit j-1 of idx
        bits = np.zeros((len(idx), n), dtype=np.int64)
        for j in range(1, n):
            bits[:, j] = (idx >> (j - 1)) & 1
        vals = ((bits[:, eu] ^ bits[:, ev]) * w).sum(axis=1) if len(w) else np.zeros(len(idx), np.int64)
        if len(fu):
            ok = (bits[:, fu] != bits[:, fv]).all(axis=1)
            if not ok.any():
                continue
            vals = np.where(ok, vals, np.iinfo(np.int64).min)
        i = int(np.argmax(vals))
        v = int(vals[i])
        if best_val is None or v > best_val:
            best_val, best_idx = v, start + i
    if best_val is None:
        return None
    side = frozenset(nodes[j + 1] for j in range(n - 1) if (best_idx >> j) & 1)
    return Cut(side, best_val)


def brute_force_max_cut(graph: WeightedGraph) -> Cut:
    """Exact maximum cut by enumerating all 2^(n-1) partitions.

    Ties go to the first partition in enumeration order; the lowest node id is
    always outside the returned side.
    """
    cut = _sweep(graph)
    assert cut is not None
    return cut


def brute_force_fce(graph: WeightedGraph, forced: Iterable[tuple[int, int]]) -> Cut | None:
    """Best cut separating every pair in ``forced``; ``None`` if no cut does."""
    return _sweep(graph, list(forced))


@dataclass(frozen=True)
class GeneratorConfig:
    node_count: int
    crossing_count: int = 0
    weight_min: int = 1
    weight_max: int = 1
    seed: int = 0
    # fraction of non-crossing edges removed after the crossings are placed
    edge_drop: float = 0.0

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise ValueError("node_count must be positive")
        if self.crossing_count < 0 or self.crossing_count > max(0, 2 * self.node_count - 4):
            raise ValueError(
                f"crossing_count must lie in [0, 2n-4], got {self.crossing_count}"
            )
        if self.weight_min > self.weight_max:
            raise ValueError("weight_min exceeds weight_max")
        if not 0.0 <= self.edge_drop <= 1.0:
            raise ValueError("edge_drop must lie in [0, 1]")


def _triangulation(n: int, rng: random.Random) -> tuple[set[frozenset[int]], list[list[int]]]:
    """Random maximal planar graph as (edge set, face cycles)."""
    if n == 1:
        return set(), [[]]
    if n == 2:
        return {frozenset((0, 1))}, [[0, 1]]
    edges = {frozenset(p) for p in ((0, 1), (1, 2), (0, 2))}
    faces = [[0, 1, 2], [0, 2, 1]]
    for x in range(3, n):
        f = faces.pop(rng.randrange(len(faces)))
        a, b, c = f
        edges.update(frozenset((x, y)) for y in f)
        faces.extend([[a, b, x], [b, c, x], [c, a, x]])
    return edges, faces


def _dart_faces(faces: list[list[int]]) -> dict[tuple[int, int], int]:
    out = {}
    for i, f in enumerate(faces):
        L = len(f)
        for j in range(L):
            out[(f[j], f[(j + 1) % L])] = i
    return out


def _rotate_to(face: list[int], u: int, v: int) -> list[int]:
    L = len(face)
    for j in range(L):
        if face[j] == u and face[(j + 1) % L] == v:
            return face[j:] + face[:j]
    raise KeyError((u, v))


def _delete_planar_edge(edges: set[frozenset[int]], faces: list[list[int]], u: int, v: int) -> bool:
    """Delete an edge and merge its two faces.

    Returns False and changes nothing when the edge is a bridge or borders a
    face that already holds a crossing (those faces are no longer listed).
    """
    darts = _dart_faces(faces)
    i, j = darts.get((u, v)), darts.get((v, u))
    if i is None or j is None or i == j:
        return False
    f1 = _rotate_to(faces[i], u, v)
    f2 = _rotate_to(faces[j], v, u)
    merged = [v] + f1[2:] + [u] + f2[2:]
    for idx in sorted((i, j), reverse=True):
        faces.pop(idx)
    faces.append(merged)
    edges.discard(frozenset((u, v)))
    return True


def _quads(
    fi: int, faces: list[list[int]], edges: set[frozenset[int]], darts: dict[tuple[int, int], int]
) -> list[tuple[int, int, int, int]]:
    """Interleaved boundary nodes a, b, c, d of face ``fi`` whose chords ac, bd can be drawn inside it.

    A chord that already exists elsewhere qualifies if it can be deleted first.
    """
    face = faces[fi]
    L = len(face)
    if len(set(face)) < 4:
        return []

    def free(x: int, y: int) -> bool:
        if frozenset((x, y)) not in edges:
            return True
        i, j = darts.get((x, y)), darts.get((y, x))
        return i is not None and j is not None and i != j and fi not in (i, j)

    out = []
    for a, b, c, d in itertools.combinations(range(L), 4):
        q = (face[a], face[b], face[c], face[d])
        if len(set(q)) == 4 and free(q[0], q[2]) and free(q[1], q[3]):
            out.append(q)
    return out


def _is_bridge(adj: dict[int, set[int]], u: int, v: int) -> bool:
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if (x, y) in ((u, v), (v, u)) or y in seen:
                continue
            if y == v:
                return False
            seen.add(y)
            stack.append(y)
    return True


def generate_instance(config: GeneratorConfig) -> EmbeddedInstance:
    """Seeded random instance whose crossing set comes from a genuine 1-planar drawing.

    Starting from a random triangulation, each crossing is placed as the two
    chords of a quadrilateral inscribed in one face. When no face can host one,
    a random edge is deleted to merge two faces. Raises ``Unsatisfiable`` when
    nothing is left to delete.
    """
    rng = random.Random(config.seed)
    n, k = config.node_count, config.crossing_count
    edges, faces = _triangulation(n, rng)

    crossing_pairs: list[tuple[frozenset[int], frozenset[int]]] = []
    while len(crossing_pairs) < k:
        darts = _dart_faces(faces)
        options = [(fi, q) for fi in range(len(faces)) for q in _quads(fi, faces, edges, darts)]
        if options:
            fi, q = rng.choice(options)
            face = faces[fi]
            chords = ((q[0], q[2]), (q[1], q[3]))
            if all(
                frozenset(c) not in edges or _delete_planar_edge(edges, faces, *c) for c in chords
            ):
                # the face is split by the crossing and takes no further chords
                faces[:] = [f for f in faces if f is not face]
                c1, c2 = (frozenset(c) for c in chords)
                edges.update((c1, c2))
                crossing_pairs.append((c1, c2))
            continue
        pool = sorted(tuple(sorted(e)) for e in edges)
        rng.shuffle(pool)
        if not any(_delete_planar_edge(edges, faces, u, v) for u, v in pool):
            raise Unsatisfiable(f"cannot place {k} crossings on {n} nodes (seed {config.seed})")

    if config.edge_drop > 0:
        crossed = {c for pair in crossing_pairs for c in pair}
        adj: dict[int, set[int]] = {x: set() for x in range(n)}
        for e in edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        pool = sorted(tuple(sorted(e)) for e in edges - crossed)
        rng.shuffle(pool)
        for u, v in pool[: int(round(config.edge_drop * len(pool)))]:
            if not _is_bridge(adj, u, v):
                adj[u].discard(v)
                adj[v].discard(u)
                edges.discard(frozenset((u, v)))

    label = list(range(n))
    rng.shuffle(label)
    order = sorted(tuple(sorted(e)) for e in edges)
    rng.shuffle(order)
    ids = {frozenset(e): i for i, e in enumerate(order)}
    edge_list = [
        Edge(i, label[u], label[v], rng.randint(config.weight_min, config.weight_max))
        for i, (u, v) in enumerate(order)
    ]
    graph = WeightedGraph(range(n), edge_list)
    instance = EmbeddedInstance(graph, tuple((ids[a], ids[b]) for a, b in crossing_pairs))
    validate(instance)
    return instance


def agrees_with_oracle(
    graph: WeightedGraph, cut: Cut, forced: Iterable[tuple[int, int]] = ()
) -> bool:
    """Check a solver result against exhaustive search.

    With forced pairs the solver may fall back to the empty cut of value 0,
    which is acceptable only when no separating cut has a positive value.
    """
    forced = list(forced)
    if cut.value != sum(e.weight for e in graph.edges if (e.u in cut.side) != (e.v in cut.side)):
        return False
    if not forced:
        return cut.value == brute_force_max_cut(graph).value
    best = brute_force_fce(graph, forced)
    separates = all((u in cut.side) != (v in cut.side) for u, v in forced)
    if best is None:
        return not cut.side and cut.value == 0
    if separates and cut.value == best.value:
        return True
    return not cut.side and cut.value == 0 and best.value <= 0
