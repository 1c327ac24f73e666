import itertools
import math
import random
from pathlib import Path

import pytest

from maxcut1p.errors import InvalidCrossingSet, InvalidForcedPair, NegativeWeight, UnknownNode
from maxcut1p.fileformat import read_instance
from maxcut1p.graph import (
    EmbeddedInstance,
    WeightedGraph,
    build_instance,
    contract_instance,
    cut_value,
    delete_edge,
    split,
)
from maxcut1p.oracle import GeneratorConfig, agrees_with_oracle, brute_force_fce, brute_force_max_cut, generate_instance
from maxcut1p.planar import planar_max_cut
from maxcut1p.reduction import (
    BranchPlan,
    Candidate,
    make_branch3_general,
    max_cut_general,
    max_cut_nonneg,
    pair,
    plan_branches,
    select_candidate,
)

from helpers import naive_lifted_value, sample_instances

GOLDEN = Path(__file__).parent / "data" / "golden_k5.txt"
K4 = [(0, 0, 1, 1), (1, 1, 2, 1), (2, 2, 3, 1), (3, 3, 0, 1), (4, 0, 2, 1), (5, 1, 3, 1)]


def ladder():
    # two K4 gadgets sharing the edge 2-3 (H-shaped pair of crossings), unit weights
    edges = K4 + [(6, 3, 4, 1), (7, 4, 5, 1), (8, 5, 2, 1), (9, 2, 4, 1), (10, 3, 5, 1)]
    return build_instance(range(6), edges, [(4, 5), (9, 10)])


def branch_children(inst):
    plan = plan_branches(inst)
    g1, r1 = contract_instance(inst, plan.w, plan.y)
    g2, r2 = contract_instance(inst, plan.y, plan.z)
    rest = tuple(c for c in inst.crossings if c != (plan.e_vy, plan.e_wz))
    return plan, (g1, r1), (g2, r2), rest


class TestNonneg:
    def test_five_cycle(self):
        g = WeightedGraph(range(5), [(i, i, (i + 1) % 5, 1) for i in range(5)])
        cut, stats = max_cut_nonneg(EmbeddedInstance(g, ()))
        assert cut.value == 4 and stats.leaf_count == 1

    def test_k4_with_crossing(self):
        cut, stats = max_cut_nonneg(build_instance(range(4), K4, [(4, 5)]))
        assert cut.value == 4 and stats.leaf_count <= 3

    def test_two_crossings(self):
        inst = ladder()
        cut, stats = max_cut_nonneg(inst)
        assert cut.value == brute_force_max_cut(inst.graph).value
        assert stats.leaf_count <= 9 and stats.max_depth == 2

    def test_negative_weight_rejected(self):
        g = WeightedGraph(range(2), [(0, 0, 1, -1)])
        with pytest.raises(NegativeWeight):
            max_cut_nonneg(EmbeddedInstance(g, ()))

    def test_missing_crossing_is_reported(self):
        g = WeightedGraph(range(5), [(i, u, v, 1) for i, (u, v) in enumerate(itertools.combinations(range(5), 2))])
        with pytest.raises(InvalidCrossingSet):
            max_cut_nonneg(EmbeddedInstance(g, ()))


class TestGeneral:
    def test_single_negative_edge(self):
        g = WeightedGraph(range(2), [(0, 0, 1, -5)])
        cut, _ = max_cut_general(EmbeddedInstance(g, ()))
        assert cut.value == 0 and cut.side == frozenset()

    def test_path(self):
        g = WeightedGraph(range(3), [(0, 0, 1, 3), (1, 1, 2, -2)])
        assert max_cut_general(EmbeddedInstance(g, ()))[0].value == 3

    def test_golden_value(self):
        inst = read_instance(str(GOLDEN))
        cut, stats = max_cut_general(inst)
        assert cut.value == 7 == brute_force_max_cut(inst.graph).value
        assert cut.value == cut_value(inst.graph, cut.side)
        assert stats.leaf_count <= 3

    def test_golden_deleted_edge_subgraph(self):
        inst = read_instance(str(GOLDEN))
        plan = plan_branches(inst)
        assert inst.graph.edge(plan.e_wz).weight == -3
        assert planar_max_cut(delete_edge(inst.graph, plan.e_wz)).value == 9

    def test_golden_naive_variant(self):
        inst = read_instance(str(GOLDEN))
        assert naive_lifted_value(inst) == 6

    def test_forced_pair_validation(self):
        inst = build_instance(range(4), K4, [(4, 5)])
        with pytest.raises(InvalidForcedPair):
            max_cut_general(inst, [(1, 1)])
        with pytest.raises(UnknownNode):
            max_cut_general(inst, [(0, 9)])
        path = EmbeddedInstance(WeightedGraph(range(3), [(0, 0, 1, 1), (1, 1, 2, 1)]), ())
        with pytest.raises(InvalidForcedPair):
            max_cut_general(path, [(0, 2)])

    def test_forced_negative_edge_falls_back_to_empty(self):
        g = WeightedGraph(range(4), K4[:4])
        g = g.with_edges(list(g.edges[:3]) + [g.edge(3).__class__(3, 3, 0, -9)])
        cut, _ = max_cut_general(EmbeddedInstance(g, ()), [(0, 3)])
        assert agrees_with_oracle(g, cut, [(0, 3)])


class TestBranchThree:
    def plan(self):
        return BranchPlan(e_vy=0, e_wz=1, v=3, w=1, y=0, z=2)

    def test_adds_missing_edges_with_zero_weight(self):
        g = WeightedGraph(range(4), [(0, 0, 3, 2), (1, 1, 2, 5)])
        h, forced = make_branch3_general(g, self.plan(), frozenset())
        assert not h.has_edge(1)
        assert h.edge_between(1, 0).weight == 0 and h.edge_between(0, 2).weight == 0
        assert forced == {(0, 1), (0, 2)}

    def test_existing_edge_keeps_weight(self):
        g = WeightedGraph(range(4), [(0, 0, 3, 2), (1, 1, 2, 5), (2, 0, 1, 4)])
        h, forced = make_branch3_general(g, self.plan(), frozenset({(2, 3)}))
        assert h.edge(2).weight == 4
        assert forced == {(0, 1), (0, 2), (2, 3)}
        assert h.num_edges == 3

    def test_deleted_edge_never_counts(self):
        g = WeightedGraph(range(4), [(0, 0, 3, 2), (1, 1, 2, 50)])
        h, _ = make_branch3_general(g, self.plan(), frozenset())
        assert all(cut_value(h, s) <= 2 for r in range(5) for s in itertools.combinations(range(4), r))


class TestSelect:
    g = WeightedGraph(range(3), [(0, 0, 1, 5), (1, 1, 2, 0)])

    def test_ties_go_to_first_branch(self):
        cands = [Candidate(1, frozenset({1})), Candidate(2, frozenset({0})), Candidate(3, frozenset({0, 2}))]
        cut, branch = select_candidate(self.g, cands)
        assert (cut.value, branch, cut.side) == (5, 1, {1})

    def test_strictly_best_third(self):
        cands = [Candidate(1, frozenset()), Candidate(2, frozenset({2})), Candidate(3, frozenset({1}))]
        assert select_candidate(self.g, cands)[1] == 3

    def test_sentinel_is_zero(self):
        neg = WeightedGraph(range(2), [(0, 0, 1, -4)])
        cut, branch = select_candidate(neg, [Candidate(1, frozenset()), Candidate(3, frozenset({1}))])
        assert (cut.value, branch) == (0, 1)

    def test_lifts_through_record(self):
        g = WeightedGraph(range(3), [(0, 0, 1, 1), (1, 1, 2, 1)])
        child, rec = contract_instance(EmbeddedInstance(g, ()), 0, 2)
        cut, _ = select_candidate(g, [Candidate(1, frozenset({1}), rec)])
        assert cut.side == {1} and cut.value == 2
        cut, _ = select_candidate(g, [Candidate(1, frozenset({rec.new_node}), rec)])
        assert cut.side == {0, 2}


class TestPlan:
    def test_labels(self):
        inst = build_instance(range(4), K4, [(5, 4)])
        plan = plan_branches(inst)
        assert (plan.e_vy, plan.e_wz) == (4, 5)
        assert (plan.y, plan.v, plan.w, plan.z) == (0, 2, 1, 3)

    def test_smallest_crossing_first(self):
        assert (plan_branches(ladder()).e_vy, plan_branches(ladder()).e_wz) == (4, 5)


def test_one_branch_always_holds_an_optimum():
    for inst in sample_instances(120, 0, 10, seed=21, max_nodes=9):
        if not inst.crossings:
            continue
        plan, (g1, _), (g2, _), _ = branch_children(inst)
        g3 = delete_edge(inst.graph, plan.e_wz)
        best = max(brute_force_max_cut(h.graph if hasattr(h, "graph") else h).value for h in (g1, g2, g3))
        assert best == brute_force_max_cut(inst.graph).value


def test_lift_consistency():
    for nonneg, (lo, hi) in ((True, (0, 10)), (False, (-10, 10))):
        for inst in sample_instances(80, lo, hi, seed=5, max_nodes=9):
            if not inst.crossings:
                continue
            plan, (g1, r1), (g2, r2), rest = branch_children(inst)
            for child, rec in ((g1, r1), (g2, r2)):
                side = brute_force_max_cut(child.graph).side
                assert cut_value(inst.graph, split(side, rec)) == cut_value(child.graph, side)
            if nonneg:
                h = delete_edge(inst.graph, plan.e_wz)
                side = brute_force_max_cut(h).side
                # dropping a non-negative edge can only lose value
                assert cut_value(inst.graph, side) >= cut_value(h, side)
            else:
                h, forced = make_branch3_general(inst.graph, plan, frozenset())
                cut, _ = max_cut_general(EmbeddedInstance(h, rest), forced)
                assert cut_value(inst.graph, cut.side) == cut_value(h, cut.side)


def test_forced_semantics_against_oracle():
    rng = random.Random(17)
    for inst in sample_instances(150, -10, 10, seed=9, max_nodes=9):
        forced = [e.ends for e in inst.graph.edges if rng.random() < 0.25]
        cut, stats = max_cut_general(inst, forced)
        assert agrees_with_oracle(inst.graph, cut, forced)
        assert stats.leaf_count <= 3**inst.k


def test_forced_wz_edge_skips_deletion_branch():
    inst = build_instance(range(4), K4, [(4, 5)])
    plan = plan_branches(inst)
    forced = [(plan.w, plan.z)]
    cut, stats = max_cut_general(inst, forced)
    assert stats.leaf_count == 2
    assert cut.value == brute_force_fce(inst.graph, forced).value == 4


def test_edwards_erdos_bound():
    for inst in sample_instances(60, 1, 1, seed=3, max_nodes=10):
        n, m = len(inst.graph), inst.graph.num_edges
        cut, _ = max_cut_nonneg(inst)
        assert cut.value >= math.ceil(m / 2 + (n - 1) / 4)


def test_parallel_matches_sequential():
    for inst in sample_instances(6, -10, 10, seed=2, max_nodes=10):
        seq = max_cut_general(inst)
        par = max_cut_general(inst, threads=2)
        assert seq == par


def test_stats_shape():
    cut, stats = max_cut_general(ladder())
    assert stats.leaf_count == 9 and sum(stats.branch_wins) == 4
    assert stats.infeasible_leaves <= stats.leaf_count


def test_pair_normalizes():
    assert pair(5, 2) == (2, 5) == pair(2, 5)
