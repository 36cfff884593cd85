import numpy as np
import pytest

from fdo.core import (
    FDO,
    FdoParams,
    Move,
    RunContext,
    Scout,
    compute_pace,
    fdo_step,
    fitness_weight,
    init_swarm,
    make_swarm,
    run,
    try_move,
)
from fdo.objective import MAXIMIZE, EvalCounter, ObjectiveSpec
from fdo.stochastic import QuasiSequence


def sphere(x):
    return float(np.dot(x, x))


def box(d=2, lo=-10.0, hi=10.0, f=sphere, direction="minimize"):
    return ObjectiveSpec.box("f", f, d, lo, hi, direction)


class TestFitnessWeight:
    def test_examples(self):
        assert fitness_weight(5, 10, 0) == 0.5
        assert fitness_weight(10, 10, 0) == 1.0
        assert fitness_weight(123.0, 0.0, 0.7) == 0.0

    def test_outside_unit_interval_is_not_clamped(self):
        assert fitness_weight(-4000.0, -100.0, 0.0) == 40.0


class TestComputePace:
    def test_eq3(self):
        assert compute_pace(np.array([2.0, -3.0]), np.zeros(2), 1.0, 0.5).tolist() == [1.0, -1.5]
        assert compute_pace(np.array([2.0]), np.zeros(1), 0.0, -0.5).tolist() == [-1.0]

    def test_eq4_eq5(self):
        assert compute_pace(np.array([4.0]), np.array([1.0]), 0.5, -0.3).tolist() == [-1.5]
        assert compute_pace(np.array([4.0]), np.array([1.0]), 0.5, 0.2).tolist() == [1.5]
        assert compute_pace(np.array([4.0]), np.array([1.0]), 0.5, 0.0).tolist() == [1.5]

    def test_fw_out_of_range_uses_directed_branch(self):
        assert compute_pace(np.array([4.0]), np.array([1.0]), 2.0, 0.3).tolist() == [6.0]

    def test_per_dimension_r(self):
        p = compute_pace(np.array([4.0, 4.0]), np.array([1.0, 1.0]), 0.5, np.array([-0.1, 0.1]))
        assert p.tolist() == [-1.5, 1.5]


class TestTryMove:
    def test_improving_candidate_accepted(self):
        spec = box(1)
        s = Scout([3.0], 9.0)
        assert try_move(s, np.array([-1.0]), spec) is Move.NEW_PACE
        assert s.position.tolist() == [2.0] and s.fitness == 4.0 and s.saved_pace.tolist() == [-1.0]

    def test_zero_saved_pace_retry_is_noop(self):
        spec = box(1)
        c = EvalCounter()
        s = Scout([3.0], 9.0)
        assert try_move(s, np.array([1.0]), spec, c) is Move.STAY
        assert s.position.tolist() == [3.0] and s.saved_pace.tolist() == [0.0]
        assert c.evaluations == 2

    def test_saved_pace_still_descends(self):
        spec = box(1)
        s = Scout([3.0], 9.0, np.array([-0.5]))
        assert try_move(s, np.array([2.0]), spec) is Move.SAVED_PACE
        assert s.position.tolist() == [2.5] and s.saved_pace.tolist() == [-0.5]

    def test_candidate_bounded_before_evaluation(self):
        spec = box(1, 0.0, 10.0, lambda x: float(abs(x[0] - 10.0)))
        s = Scout([9.0], 1.0)
        assert try_move(s, np.array([5.0]), spec) is Move.NEW_PACE
        assert s.position.tolist() == [10.0] and s.fitness == 0.0

    def test_maximize(self):
        spec = box(1, f=lambda x: -sphere(x), direction=MAXIMIZE)
        s = Scout([3.0], -9.0)
        assert try_move(s, np.array([-1.0]), spec) is Move.NEW_PACE


class TestInit:
    def test_singleton(self):
        sw = init_swarm(box(), FdoParams(pop_size=1, seed=3))
        assert sw.best_fitness == sw.scouts[0].fitness

    def test_quasi_scaling(self):
        spec = ObjectiveSpec.box("f", sphere, 1, 0.0, 10.0)
        sw = init_swarm(spec, FdoParams(pop_size=1), "quasi_random", QuasiSequence("sobol", 1))
        assert sw.scouts[0].position.tolist() == [5.0]

    def test_deterministic_and_in_bounds(self):
        spec = box(4, -3.0, 7.0)
        a = init_swarm(spec, FdoParams(pop_size=20, seed=9))
        b = init_swarm(spec, FdoParams(pop_size=20, seed=9))
        assert np.array_equal(a.positions(), b.positions())
        assert np.all(a.positions() >= -3) and np.all(a.positions() < 7)
        assert all(np.all(s.saved_pace == 0) for s in a.scouts)

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            FDO("lattice")


class TestStep:
    def test_all_at_optimum(self):
        spec = box()
        sw = make_swarm(spec, np.zeros((4, 2)))
        ctx = RunContext(spec, FdoParams(pop_size=4))
        FDO().setup(ctx)
        before = sw.copy()
        fdo_step(sw, ctx)
        assert sw.iteration == 1
        assert np.array_equal(sw.positions(), before.positions())
        assert sw.best_fitness == 0.0

    def test_best_never_worsens(self):
        spec = box(3)
        ctx = RunContext(spec, FdoParams(pop_size=6, seed=4))
        algo = FDO()
        algo.setup(ctx)
        sw = make_swarm(spec, algo.initial_positions(ctx))
        for _ in range(30):
            b = sw.best_fitness
            fdo_step(sw, ctx, algo)
            assert sw.best_fitness <= b


class TestRun:
    def test_zero_iterations(self):
        res = run(box(), FdoParams(pop_size=5, max_iterations=0, seed=1))
        assert res.trace.tolist() == [res.best_fitness]
        assert res.evaluations == 5

    def test_determinism(self):
        a = run(box(5), FdoParams(pop_size=8, max_iterations=40, seed=12))
        b = run(box(5), FdoParams(pop_size=8, max_iterations=40, seed=12))
        assert np.array_equal(a.trace, b.trace) and np.array_equal(a.best_position, b.best_position)
        assert a.evaluations == b.evaluations

    def test_branch_coverage(self):
        spec = box(3, -5.0, 5.0, lambda x: float(np.sum(x ** 2 - 10 * np.cos(2 * np.pi * x)) + 30))
        res = run(spec, FdoParams(pop_size=10, max_iterations=30, seed=0))
        for key in ("eq3", "eq4", "eq5", "new_pace", "saved_pace", "stay"):
            assert res.counts[key] > 0, key

    def test_sphere_d10_converges_in_half_the_runs(self):
        spec = box(10, -100.0, 100.0)
        hits = sum(run(spec, FdoParams(max_iterations=500, seed=s)).best_fitness <= 1e-6
                   for s in range(30))
        assert hits >= 15

    def test_params_validation(self):
        with pytest.raises(ValueError):
            FdoParams(wf=1.5)
        with pytest.raises(ValueError):
            FdoParams(pop_size=0)
        with pytest.raises(ValueError):
            FdoParams(r_mode="vector")
