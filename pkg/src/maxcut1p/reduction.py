"""Branching solvers for Max-Cut on graphs given with a 1-planar crossing set.

Each crossing ``{e_vy, e_wz}`` is removed three ways: contract ``w`` and ``y``,
contract ``y`` and ``z``, or delete ``e_wz``. The recursion bottoms out in
planar graphs solved exactly by :mod:`maxcut1p.planar`, so an instance with k
crossings produces at most 3^k leaves.

For arbitrary weights the deletion branch additionally inserts zero-weight
edges ``wy`` and ``yz`` and forces them into the cut. That keeps ``w`` and ``z``
on one side, so the deleted edge cannot contribute to the lifted cut.
"""

from __future__ import annotations

from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InvalidForcedPair, NegativeWeight, NotPlanar, InvalidCrossingSet, UnknownNode
from .graph import (
    ContractionRecord,
    Cut,
    EmbeddedInstance,
    WeightedGraph,
    add_edge,
    contract_instance,
    cut_value,
    delete_edge,
    split,
    validate,
)
from .planar import fce_max_cut_planar

Pair = tuple[int, int]
FixedCutSet = frozenset[Pair]

NONNEG = "nonneg"
GENERAL = "general"


def pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SolveStats:
    leaf_count: int = 0
    max_depth: int = 0
    infeasible_leaves: int = 0
    # how often each branch won a selection
    branch_wins: tuple[int, int, int] = (0, 0, 0)

    def merge(self, other: SolveStats) -> SolveStats:
        return SolveStats(
            self.leaf_count + other.leaf_count,
            max(self.max_depth, other.max_depth),
            self.infeasible_leaves + other.infeasible_leaves,
            tuple(a + b for a, b in zip(self.branch_wins, other.branch_wins)),  # type: ignore[arg-type]
        )


@dataclass(frozen=True)
class BranchPlan:
    e_vy: int
    e_wz: int
    v: int
    w: int
    y: int
    z: int


def plan_branches(instance: EmbeddedInstance) -> BranchPlan:
    """Pick the crossing with the smallest edge id and label its endpoints.

    ``e_wz`` is the crossing edge with the larger id, ``y`` the smaller
    endpoint of the other edge and ``w`` the smaller endpoint of ``e_wz``.
    """
    e1, e2 = min(instance.crossings)
    g = instance.graph
    a, b = g.edge(e1), g.edge(e2)
    y, v = sorted(a.ends)
    w, z = sorted(b.ends)
    return BranchPlan(e1, e2, v, w, y, z)


def remap_forced(forced: FixedCutSet, record: ContractionRecord) -> FixedCutSet:
    merged = (record.merged_a, record.merged_b)
    out = set()
    for u, v in forced:
        u = record.new_node if u in merged else u
        v = record.new_node if v in merged else v
        if u == v:
            raise ValueError(f"contraction collapses forced pair {(u, v)}")
        out.add(pair(u, v))
    return frozenset(out)


def make_branch3_general(
    graph: WeightedGraph, plan: BranchPlan, forced: FixedCutSet
) -> tuple[WeightedGraph, FixedCutSet]:
    """Drop ``e_wz``, make sure ``wy`` and ``yz`` exist (weight 0 if new) and force both."""
    g = delete_edge(graph, plan.e_wz)
    g, _ = add_edge(g, plan.w, plan.y, 0)
    g, _ = add_edge(g, plan.y, plan.z, 0)
    return g, forced | {pair(plan.w, plan.y), pair(plan.y, plan.z)}


@dataclass(frozen=True)
class Candidate:
    branch: int
    # node set in the branch graph; empty for a skipped branch
    side: frozenset[int]
    record: Optional[ContractionRecord] = None


def select_candidate(graph: WeightedGraph, candidates: Iterable[Candidate]) -> tuple[Cut, int]:
    """Lift each candidate into ``graph`` and keep the best; earlier branches win ties."""
    best: tuple[Cut, int] | None = None
    for c in candidates:
        side = split(c.side, c.record) if c.record is not None else c.side
        value = cut_value(graph, side)
        if best is None or value > best[0].value:
            best = (Cut(side, value), c.branch)
    if best is None:
        raise ValueError("no candidates")
    return best


def _solve(
    instance: EmbeddedInstance,
    forced: FixedCutSet,
    mode: str,
    depth: int = 0,
    executor: Executor | None = None,
) -> tuple[frozenset[int], SolveStats]:
    g = instance.graph
    if not instance.crossings:
        cut = fce_max_cut_planar(g, forced)
        if cut is None:
            return frozenset(), SolveStats(1, depth, 1)
        return cut.side, SolveStats(1, depth)

    plan = plan_branches(instance)
    rest = tuple(c for c in instance.crossings if c != pair(plan.e_vy, plan.e_wz))
    jobs: list[tuple[int, EmbeddedInstance, FixedCutSet, ContractionRecord | None]] = []
    for branch, (a, b) in ((1, (plan.w, plan.y)), (2, (plan.y, plan.z))):
        if pair(a, b) in forced:
            continue
        child, record = contract_instance(instance, a, b)
        jobs.append((branch, child, remap_forced(forced, record), record))
    if mode == NONNEG:
        jobs.append((3, EmbeddedInstance(delete_edge(g, plan.e_wz), rest), forced, None))
    elif pair(plan.w, plan.z) not in forced:
        # with wz forced, branch 3 would demand w and z on the same side as well
        g3, forced3 = make_branch3_general(g, plan, forced)
        jobs.append((3, EmbeddedInstance(g3, rest), forced3, None))

    if executor is not None:
        futures = [executor.submit(_solve, inst, f, mode, depth + 1) for _, inst, f, _ in jobs]
        results = [fut.result() for fut in futures]
    else:
        results = [_solve(inst, f, mode, depth + 1) for _, inst, f, _ in jobs]

    stats = SolveStats(max_depth=depth)
    candidates = []
    done = set()
    for (branch, _, _, record), (side, child_stats) in zip(jobs, results):
        stats = stats.merge(child_stats)
        candidates.append(Candidate(branch, side, record))
        done.add(branch)
    # a skipped branch stands in with the empty side of value 0
    candidates.extend(Candidate(b, frozenset()) for b in (1, 2, 3) if b not in done)
    candidates.sort(key=lambda c: c.branch)
    cut, winner = select_candidate(g, candidates)
    wins = list(stats.branch_wins)
    wins[winner - 1] += 1
    return cut.side, SolveStats(stats.leaf_count, stats.max_depth, stats.infeasible_leaves, tuple(wins))  # type: ignore[arg-type]


def _run(
    instance: EmbeddedInstance, forced: FixedCutSet, mode: str, threads: int
) -> tuple[Cut, SolveStats]:
    try:
        if threads > 1 and instance.crossings:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                side, stats = _solve(instance, forced, mode, 0, pool)
        else:
            side, stats = _solve(instance, forced, mode)
    except NotPlanar as exc:
        raise InvalidCrossingSet(
            f"a leaf is not planar after removing all crossings: {exc}"
        ) from exc
    nodes = instance.graph.nodes
    # report the side that leaves the lowest node out; the complement is the same cut
    if nodes and min(nodes) in side:
        side = nodes - side
    return Cut(side, cut_value(instance.graph, side)), stats


def max_cut_nonneg(instance: EmbeddedInstance, *, threads: int = 1) -> tuple[Cut, SolveStats]:
    """Maximum cut of an instance whose weights are all non-negative."""
    validate(instance)
    negative = [e.id for e in instance.graph.edges if e.weight < 0]
    if negative:
        raise NegativeWeight(f"edges {negative} have negative weight")
    return _run(instance, frozenset(), NONNEG, threads)


def check_forced(graph: WeightedGraph, forced: Iterable[tuple[int, int]]) -> FixedCutSet:
    out = set()
    for u, v in forced:
        for x in (u, v):
            if x not in graph.nodes:
                raise UnknownNode(x)
        if u == v:
            raise InvalidForcedPair(f"forced pair ({u}, {v}) has identical nodes")
        if graph.edge_between(u, v) is None:
            raise InvalidForcedPair(f"forced pair ({u}, {v}) is not an edge")
        out.add(pair(u, v))
    return frozenset(out)


def max_cut_general(
    instance: EmbeddedInstance,
    forced: Iterable[tuple[int, int]] = (),
    *,
    threads: int = 1,
) -> tuple[Cut, SolveStats]:
    """Maximum cut for arbitrary integer weights.

    The cut separates every pair in ``forced`` (each must be an edge). When no
    such cut beats the empty side, the empty cut of value 0 is returned.
    """
    validate(instance)
    fixed = check_forced(instance.graph, forced)
    return _run(instance, fixed, GENERAL, threads)
