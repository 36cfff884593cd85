import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdo.core import FdoParams, RunContext, Scout, compute_pace, make_swarm, run
from fdo.objective import ObjectiveSpec
from fdo.stochastic import ChaoticMap
from fdo.variants import (
    CFDO,
    IFDO,
    MFDO,
    CfdoParams,
    EnhancedFDO,
    EnhancedFdoParams,
    IfdoParams,
    MfdoParams,
    MifdoParams,
    alignment,
    cohesion,
    enhanced_wf,
    ifdo_fw,
    ifdo_update,
    mfdo_fw,
    mfdo_pace,
    mifdo_update,
    sinc,
)


def sphere(x):
    return float(np.dot(x, x))


def swarm_at(points, paces=None):
    spec = ObjectiveSpec.box("s", sphere, len(points[0]), -100, 100)
    sw = make_swarm(spec, np.array(points, dtype=float))
    for s, p in zip(sw.scouts, paces or []):
        s.saved_pace = np.array(p, dtype=float)
    return sw


class TestIfdo:
    def test_fw(self):
        assert ifdo_fw(6, 10, 0.2) == pytest.approx(0.4, abs=1e-15)
        assert ifdo_fw(1, 10, 0.2) == 0.1
        assert ifdo_fw(3, 3, 0.0) == 1.0
        assert ifdo_fw(3, 0, 0.5) == 0.0

    @settings(max_examples=300)
    @given(st.floats(0, 1e6), st.floats(1e-9, 1e6), st.floats(0, 1))
    def test_fw_non_negative_in_steady_state(self, b, c, wf):
        if b <= c:
            assert ifdo_fw(b, c, wf) >= 0

    def test_alignment(self):
        assert alignment(swarm_at([[0, 0], [1, 1]]), 0).tolist() == [0, 0]
        assert alignment(swarm_at([[0, 0], [1, 1]], [[0, 0], [2, 4]]), 0).tolist() == [2, 4]
        sw = swarm_at([[0, 0], [1, 1], [2, 2]], [[9, 9], [1, 1], [3, 3]])
        assert alignment(sw, 0).tolist() == [2, 2]
        assert alignment(swarm_at([[5, 5]]), 0).tolist() == [0, 0]

    def test_cohesion(self):
        assert cohesion(swarm_at([[0], [4]]), 0).tolist() == [4]
        assert cohesion(swarm_at([[1], [0], [2]]), 0).tolist() == [0]
        assert cohesion(swarm_at([[2, 2], [2, 2]]), 1).tolist() == [0, 0]
        assert cohesion(swarm_at([[3.0]]), 0).tolist() == [0]

    def test_update(self):
        sw = swarm_at([[1.0], [5.0]], [[0.0], [2.0]])
        assert ifdo_update(sw.scouts[0], np.zeros(1), sw, 0).tolist() == [1.5]
        sw = swarm_at([[1.0], [1.0]], [[0.0], [2.0]])
        out = ifdo_update(sw.scouts[0], np.zeros(1), sw, 0)
        assert np.isfinite(out).all()
        sw = swarm_at([[1.0, 2.0], [3.0, -1.0]])
        assert ifdo_update(sw.scouts[0], np.array([0.5, 0.5]), sw, 0).tolist() == [1.5, 2.5]

    def test_single_scout_degenerates_exactly(self):
        sw = swarm_at([[1.25, -3.5]], [[7.0, 7.0]])
        pace = np.array([0.5, 0.25])
        assert np.array_equal(ifdo_update(sw.scouts[0], pace, sw, 0), sw.scouts[0].position + pace)

    def test_params(self):
        with pytest.raises(ValueError):
            IfdoParams(cohesion_epsilon=0.0)


def test_ifdo_resamples_wf_each_iteration():
    spec = ObjectiveSpec.box("s", sphere, 2, -5, 5)
    seen = []
    run(spec, FdoParams(pop_size=4, max_iterations=20, seed=2), IFDO(),
        observer=lambda sw, ctx: seen.append(ctx.wf))
    assert len(set(seen[1:])) == 20 and all(0 <= w < 1 for w in seen)


class TestMfdo:
    def test_sinc(self):
        assert sinc(0) == 1.0
        assert abs(sinc(math.pi)) < 1e-16
        assert sinc(math.pi / 2) == pytest.approx(2 / math.pi, abs=1e-15)

    def test_fw(self):
        assert mfdo_fw(5, 10, 0) == 0.5
        assert mfdo_fw(5, 10, 0.2) == pytest.approx(0.5 * 0.935489283788639, abs=1e-12)
        assert mfdo_fw(5, 0, 0.1) == 0.0

    @settings(max_examples=300)
    @given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6).filter(lambda v: v != 0), st.floats(0, 0.2))
    def test_fw_bounded_by_ratio(self, b, c, wf):
        assert mfdo_fw(b, c, wf) <= abs(b / c)

    def test_pace(self):
        assert mfdo_pace(np.array([2.0]), np.array([0.0]), 0.0, 0.0, 0.5).tolist() == [1.0]
        assert mfdo_pace(np.array([1.0]), np.array([4.0]), 1.0, 0.0, 1.0).tolist() == [3.0]
        x, xb = np.array([4.0, -2.0]), np.array([1.0, 1.0])
        assert np.array_equal(mfdo_pace(x, xb, 0.5, 0.1, -0.4), compute_pace(x, xb, 0.5, -0.4))

    def test_wf_range(self):
        with pytest.raises(ValueError):
            MfdoParams(wf_range=(0.0, 0.5))

    def test_wf_draws_within_range(self):
        spec = ObjectiveSpec.box("s", sphere, 3, -5, 5)
        seen = []
        res = run(spec, FdoParams(pop_size=4, max_iterations=50, seed=1), MFDO(),
                  observer=lambda sw, ctx: seen.append(ctx.wf))
        assert all(0 <= w <= 0.2 for w in seen) and len(set(seen[1:])) > 1
        assert res.algorithm == "mfdo"


class TestMifdo:
    def test_update(self):
        s = Scout([1.0, 2.0], 5.0)
        assert mifdo_update(s, np.zeros(2)).tolist() == [1.1, 2.1]
        assert mifdo_update(s, np.zeros(2), MifdoParams(lam=0.0)).tolist() == [1.0, 2.0]
        assert mifdo_update(Scout([0.0], 0.0), np.array([0.4])).tolist() == [0.5]

    def test_lambda_finite(self):
        with pytest.raises(ValueError):
            MifdoParams(lam=math.inf)


class TestCfdo:
    def test_tent_init(self):
        spec = ObjectiveSpec("s", [0.0], [10.0], sphere)
        seen = []
        run(spec, FdoParams(pop_size=1, max_iterations=0),
            CFDO(CfdoParams("tent", 0.25)), observer=lambda sw, ctx: seen.append(sw.positions()))
        assert seen[0].tolist() == [[5.0]]

    def test_r_from_map(self):
        spec = ObjectiveSpec.box("s", sphere, 2, -5, 5)
        algo = CFDO(CfdoParams("logistic", 0.3))
        ctx = RunContext(spec, FdoParams())
        algo.setup(ctx)
        oracle = ChaoticMap("logistic", 0.3)
        for _ in range(50):
            r = algo.draw_r(ctx, 0)
            assert r == 2 * oracle.next() - 1 and -1 <= r <= 1

    def test_forced_boundary_and_determinism(self):
        spec = ObjectiveSpec.box("s", sphere, 3, -5, 5)
        p = FdoParams(pop_size=5, max_iterations=20, seed=3)
        a = run(spec, p, CFDO(CfdoParams("singer", 0.41)))
        b = run(spec, p, CFDO(CfdoParams("singer", 0.41)))
        assert np.array_equal(a.trace, b.trace)
        c = run(spec, FdoParams(pop_size=5, max_iterations=20, seed=4), CFDO())
        d = run(spec, FdoParams(pop_size=5, max_iterations=20, seed=5), CFDO())
        assert not np.array_equal(c.trace, d.trace)

    def test_degenerate_seed(self):
        spec = ObjectiveSpec.box("s", sphere, 2, -5, 5)
        with pytest.raises(ValueError):
            run(spec, FdoParams(max_iterations=1), CFDO(CfdoParams("logistic", 0.75)))
        with pytest.raises(ValueError):
            CfdoParams("henon")


class TestEnhanced:
    def test_wf(self):
        assert enhanced_wf(0.0, 0.3) == 0.0
        assert enhanced_wf(0.5, 0.3) == pytest.approx(0.075, abs=1e-16)
        assert abs(enhanced_wf(1.0, 0.3)) < 1e-16
        with pytest.raises(ValueError):
            enhanced_wf(0.5, 4.0)
        with pytest.raises(ValueError):
            EnhancedFdoParams(m=0.0)

    @settings(max_examples=300)
    @given(st.floats(0, 1), st.floats(1e-6, 3.99))
    def test_wf_range(self, wf, m):
        assert 0 <= enhanced_wf(wf, m) <= m / 4 + 1e-16

    def test_sobol_init(self):
        spec = ObjectiveSpec.box("s", sphere, 2, 0.0, 8.0)
        seen = []
        run(spec, FdoParams(pop_size=3, max_iterations=0), EnhancedFDO(),
            observer=lambda sw, ctx: seen.append(sw.positions()))
        assert seen[0].tolist() == [[4.0, 4.0], [2.0, 6.0], [6.0, 2.0]]
