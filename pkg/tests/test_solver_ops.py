import numpy as np
import pytest

import instgen
from numvc import kernels as K
from numvc.graph import Graph, is_vertex_cover
from numvc.solver import (SolverConfig, StepOutcome, add_to_C,
                          bump_uncovered_weights, compute_dscore,
                          forget_weights, greedy_construct, init_state,
                          reference_scores, remove_from_C, select_add_vertex,
                          select_remove_vertex, solve, step)

K2 = Graph(2, [(0, 1)])
TRIANGLE = Graph(3, [(0, 1), (1, 2), (0, 2)])
P3 = Graph(3, [(0, 1), (1, 2)])


def fresh(g, **kw):
    return init_state(g, SolverConfig(max_steps=10**6, **kw))


def assert_consistent(g, state):
    ds, cost, wsum = reference_scores(g, state)
    assert np.array_equal(state.dscore, ds)
    assert state.cost == cost
    assert state.weight_sum == wsum
    for v in range(g.n):
        assert state.dscore[v] == compute_dscore(g, state, v)


class TestConfig:
    @pytest.mark.parametrize("kw", [
        dict(rho=0.0), dict(rho=1.0), dict(gamma=0.5), dict(gamma_factor=0.0),
        dict(variant="bogus"), dict(variant="pd", pd=0),
        dict(cutoff_time=-1.0), dict(max_steps=-5),
    ])
    def test_rejects(self, kw):
        with pytest.raises(ValueError):
            SolverConfig(**{"max_steps": 1, **kw}).validate()

    def test_resolve_gamma(self):
        assert SolverConfig(gamma_factor=0.5).resolve_gamma(125) == 62
        assert SolverConfig(gamma_factor=0.5).resolve_gamma(450) == 225
        assert SolverConfig(gamma=5000.0).resolve_gamma(4000) == 5000
        assert SolverConfig(gamma_factor=0.1).resolve_gamma(3) == 1

    def test_solve_needs_a_budget(self):
        with pytest.raises(ValueError):
            solve(K2, SolverConfig())


class TestComputeDscore:
    def test_single_edge_empty_C(self):
        assert compute_dscore(K2, fresh(K2), 0) == 1

    def test_single_edge_one_in(self):
        state = fresh(K2)
        add_to_C(K2, state, 0)
        assert compute_dscore(K2, state, 0) == -1
        assert compute_dscore(K2, state, 1) == 0

    def test_weighted_star(self):
        star = Graph(4, [(0, 1), (0, 2), (0, 3)])
        state = fresh(star)
        state.weight[:] = [2, 3, 5]
        assert compute_dscore(star, state, 0) == 10


class TestGreedyConstruct:
    def test_single_edge(self):
        state = fresh(K2)
        greedy_construct(K2, state)
        assert state.C_size == 1 and state.cost == 0
        assert state.best_size == 1

    def test_star_picks_center(self):
        star = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
        state = fresh(star)
        greedy_construct(star, state)
        assert list(state.candidate) == [0]

    def test_no_edges(self):
        g = Graph(3, [])
        state = fresh(g)
        greedy_construct(g, state)
        assert state.C_size == 0 and state.best_size == 0

    def test_result_is_cover(self):
        g = instgen.gnp(40, 0.2, seed=5)
        state = fresh(g)
        greedy_construct(g, state)
        assert state.cost == 0
        assert is_vertex_cover(g, state.candidate)
        assert_consistent(g, state)


class TestSelectRemove:
    def setup_state(self, dscores, last_changes):
        g = Graph(3, [(0, 1), (1, 2), (0, 2)])
        state = fresh(g)
        for v in range(len(dscores)):
            add_to_C(g, state, v)
        state.dscore[:len(dscores)] = dscores
        state.last_change[:len(last_changes)] = last_changes
        return state

    def test_strict_max(self):
        state = self.setup_state([-3, -1], [0, 0])
        assert select_remove_vertex(state) == 1

    def test_age_tie(self):
        state = self.setup_state([-2, -2], [5, 2])
        assert select_remove_vertex(state) == 1

    def test_id_tie(self):
        state = self.setup_state([-2, -2], [3, 3])
        assert select_remove_vertex(state) == 0

    def test_empty_C_errors(self):
        with pytest.raises(ValueError):
            select_remove_vertex(fresh(K2))


class TestSelectAdd:
    def test_only_eligible_endpoint(self):
        state = fresh(K2)
        state.conf_change[0] = 0
        state.dscore[:] = [9, 1]  # ineligible endpoint may not win on dscore
        assert select_add_vertex(K2, state, 0) == 1

    def test_higher_dscore(self):
        state = fresh(K2)
        state.dscore[:] = [7, 4]
        assert select_add_vertex(K2, state, 0) == 0

    def test_age_tie(self):
        state = fresh(K2)
        state.last_change[:] = [9, 1]
        assert select_add_vertex(K2, state, 0) == 1

    def test_id_tie(self):
        state = fresh(K2)
        assert select_add_vertex(K2, state, 0) == 0

    def test_covered_edge_rejected(self):
        state = fresh(K2)
        add_to_C(K2, state, 0)
        with pytest.raises(ValueError):
            select_add_vertex(K2, state, 0)


class TestRemoveAdd:
    def test_remove_hand_trace(self):
        state = fresh(K2)
        add_to_C(K2, state, 0)
        remove_from_C(K2, state, 0)
        assert state.uncovered == {0}
        assert state.cost == 1
        assert state.dscore.tolist() == [1, 1]
        assert state.conf_change.tolist() == [0, 1]

    def test_remove_on_triangle(self):
        state = fresh(TRIANGLE)
        add_to_C(TRIANGLE, state, 0)
        add_to_C(TRIANGLE, state, 1)
        remove_from_C(TRIANGLE, state, 0)
        # edge {0,2} is the only uncovered one; 1 now solely covers two edges
        assert state.uncovered == {2}
        assert state.cost == 1
        assert state.dscore[1] == -2
        assert_consistent(TRIANGLE, state)

    def test_add_hand_trace(self):
        state = fresh(K2)
        add_to_C(K2, state, 1)
        assert state.cost == 0 and state.uncovered == frozenset()
        assert state.dscore.tolist() == [0, -1]

    def test_add_neutralizes_neighbor(self):
        state = fresh(P3)
        add_to_C(P3, state, 0)
        add_to_C(P3, state, 1)
        assert state.dscore[0] == 0
        assert_consistent(P3, state)

    def test_add_restores_conf_of_removed_neighbor(self):
        state = fresh(P3)
        add_to_C(P3, state, 0)
        remove_from_C(P3, state, 0)
        assert state.conf_change[0] == 0
        add_to_C(P3, state, 1)  # 1 is a neighbor of 0
        assert state.conf_change[0] == 1

    def test_conf_not_cleared_on_add(self):
        state = fresh(K2)
        add_to_C(K2, state, 0)
        assert state.conf_change[0] == 1

    def test_remove_readd_involution(self):
        g = instgen.gnp(25, 0.25, seed=7)
        state = fresh(g)
        greedy_construct(g, state)
        u = next(iter(state.candidate))
        before = (state.cost, state.uncovered, state.dscore.copy())
        remove_from_C(g, state, u)
        add_to_C(g, state, u)
        assert state.cost == before[0]
        assert state.uncovered == before[1]
        assert np.array_equal(state.dscore, before[2])

    def test_preconditions(self):
        state = fresh(K2)
        with pytest.raises(ValueError):
            remove_from_C(K2, state, 0)
        add_to_C(K2, state, 0)
        with pytest.raises(ValueError):
            add_to_C(K2, state, 0)


class TestBump:
    def test_no_uncovered_is_noop(self):
        state = fresh(K2)
        add_to_C(K2, state, 0)
        before = state.weight.copy()
        bump_uncovered_weights(K2, state)
        assert np.array_equal(state.weight, before)
        assert state.cost == 0

    def test_one_uncovered_edge(self):
        state = fresh(K2)
        bump_uncovered_weights(K2, state)
        assert state.weight[0] == 2
        assert state.cost == 2
        assert state.dscore.tolist() == [2, 2]

    def test_caches_repaired(self):
        g = instgen.gnp(30, 0.2, seed=3)
        state = fresh(g)
        greedy_construct(g, state)
        remove_from_C(g, state, next(iter(state.candidate)))
        bump_uncovered_weights(g, state)
        assert_consistent(g, state)


class TestForget:
    @pytest.mark.parametrize("w,expected", [(1000, 300), (100, 30), (1, 0)])
    def test_floor_rescale(self, w, expected):
        state = fresh(K2)
        state.weight[0] = w
        forget_weights(K2, state, 0.3)
        assert state.weight[0] == expected
        assert_consistent(K2, state)

    def test_full_recompute(self):
        g = instgen.gnp(30, 0.2, seed=11)
        state = fresh(g)
        greedy_construct(g, state)
        remove_from_C(g, state, next(iter(state.candidate)))
        for _ in range(5):
            bump_uncovered_weights(g, state)
        forget_weights(g, state, 0.3)
        assert_consistent(g, state)

    def test_step_triggers_iff_threshold(self):
        # K2 with C empty: the exchange adds vertex 0, covering the edge, so
        # no bump happens and weight_sum stays put for the threshold check.
        for gamma_abs, fired in ((10, True), (11, False)):
            state = fresh(K2)
            state.weight[0] = 10
            state.scalars[K.WSUM] = 10
            state.scalars[K.COST] = 10
            state.dscore[:] = [10, 10]
            state.gamma_abs = gamma_abs
            out = step(K2, state)
            assert out is StepOutcome.EXCHANGED
            assert (state.weight[0] == 3) == fired
            assert (state.weight[0] == 10) == (not fired)


class TestStepAndSolve:
    def test_improved_branch(self):
        state = fresh(TRIANGLE)
        greedy_construct(TRIANGLE, state)
        size = state.C_size
        out = step(TRIANGLE, state)
        assert out is StepOutcome.IMPROVED
        assert state.C_size == size - 1
        assert state.best_size == size

    def test_single_edge_stabilizes_at_one(self):
        state = fresh(K2)
        greedy_construct(K2, state)
        for _ in range(20):
            step(K2, state)
            assert state.best_size == 1
            assert state.C_size <= 1

    def test_determinism(self):
        g = instgen.gnp(60, 0.15, seed=2)
        cfg = SolverConfig(seed=42, max_steps=5000)
        c1, r1 = solve(g, cfg)
        c2, r2 = solve(g, cfg)
        assert c1 == c2
        assert r1.best_size == r2.best_size
        assert r1.steps_to_best == r2.steps_to_best
        assert r1.total_steps == r2.total_steps

    def test_empty_graph(self):
        g = Graph(4, [])
        cover, rec = solve(g, SolverConfig(max_steps=100))
        assert cover.size == 0
        assert rec.best_size == 0
        assert rec.total_steps == 0

    def test_solve_record_bounds(self):
        g = instgen.gnp(40, 0.2, seed=9)
        cover, rec = solve(g, SolverConfig(seed=1, max_steps=3000, target_size=0))
        assert is_vertex_cover(g, cover)
        assert rec.steps_to_best <= rec.total_steps
        assert rec.time_to_best <= rec.total_time
        assert rec.total_steps == 3000

    def test_target_stops_early(self):
        g = instgen.gnp(40, 0.2, seed=9)
        loose, _ = solve(g, SolverConfig(seed=1, max_steps=10**6, target_size=g.n))
        assert loose.size <= g.n
        _, rec = solve(g, SolverConfig(seed=1, max_steps=10**6,
                                       target_size=loose.size))
        assert rec.success
        assert rec.total_steps < 10**6
