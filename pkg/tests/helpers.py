"""Shared test utilities: instance sampling and a literal non-negative-mode variant."""

from __future__ import annotations

import random
from typing import Iterator

from maxcut1p.errors import Unsatisfiable
from maxcut1p.graph import EmbeddedInstance, WeightedGraph, contract_instance, cut_value, delete_edge, split
from maxcut1p.oracle import GeneratorConfig, generate_instance
from maxcut1p.planar import planar_max_cut
from maxcut1p.reduction import plan_branches


def sample_instances(
    count: int,
    weight_min: int,
    weight_max: int,
    seed: int,
    max_nodes: int = 10,
    max_crossings: int = 3,
) -> Iterator[EmbeddedInstance]:
    """Seeded stream of generated instances with 1..max_nodes nodes and up to max_crossings crossings."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        k = rng.randint(0, max_crossings)
        # smallest node counts the generator can fit k crossings into
        n = rng.randint(min(max_nodes, (1, 4, 6, 6, 7)[min(k, 4)] + max(0, k - 4)), max_nodes)
        k = min(k, max(0, 2 * n - 4))
        drop = rng.choice((0.0, 0.0, rng.uniform(0.0, 0.5)))
        for _ in range(10):
            cfg = GeneratorConfig(n, k, weight_min, weight_max, rng.getrandbits(32), drop)
            try:
                inst = generate_instance(cfg)
            except Unsatisfiable:
                continue
            produced += 1
            yield inst
            break


def random_graph(rng: random.Random, n: int, p: float, wmin: int = -10, wmax: int = 10) -> WeightedGraph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((len(edges), u, v, rng.randint(wmin, wmax)))
    return WeightedGraph(range(n), edges)


def naive_branch_variant(instance: EmbeddedInstance) -> tuple[frozenset[int], int]:
    """Three-way branching that compares cuts inside the branch graphs and prefers branch 3 on ties.

    Returns the lifted side and its value in the branch graph it came from.
    This is the selection rule that fails once crossing edges carry negative weight.
    """
    g = instance.graph
    if not instance.crossings:
        cut = planar_max_cut(g)
        return cut.side, cut.value
    plan = plan_branches(instance)
    g1, r1 = contract_instance(instance, plan.w, plan.y)
    g2, r2 = contract_instance(instance, plan.y, plan.z)
    rest = tuple(c for c in instance.crossings if c != (plan.e_vy, plan.e_wz))
    g3 = EmbeddedInstance(delete_edge(g, plan.e_wz), rest)
    s1, v1 = naive_branch_variant(g1)
    s2, v2 = naive_branch_variant(g2)
    s3, v3 = naive_branch_variant(g3)
    if v3 >= v1 and v3 >= v2:
        return s3, v3
    if v1 >= v2:
        return split(s1, r1), v1
    return split(s2, r2), v2


def naive_lifted_value(instance: EmbeddedInstance) -> int:
    side, _ = naive_branch_variant(instance)
    return cut_value(instance.graph, side)
