import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdo.binpack import (
    AfdoParams,
    BppInstance,
    InstanceError,
    Packing,
    afdo_run,
    apply_fraction,
    apply_moves,
    bpp_fitness,
    first_fit,
    load_instance,
    perm_diff,
)
from fdo.stochastic import RngStream


class TestLoad:
    def test_parse(self, tmp_path):
        p = tmp_path / "inst.txt"
        p.write_text("4\n10\n5\n5\n5\n5\n\n\n")
        inst = load_instance(p)
        assert inst.capacity == 10 and inst.weights == (5.0, 5.0, 5.0, 5.0) and inst.name == "inst"

    @pytest.mark.parametrize("text", ["2\n10\n11\n3\n", "3\n10\n1\n2\n", "x\n10\n", "1\n"])
    def test_errors(self, tmp_path, text):
        p = tmp_path / "bad.txt"
        p.write_text(text)
        with pytest.raises(InstanceError):
            load_instance(p)

    def test_reals_accepted(self, tmp_path):
        p = tmp_path / "r.txt"
        p.write_text("2 1.5 0.75 0.7")
        assert load_instance(p).weights == (0.75, 0.7)


class TestFirstFit:
    def test_examples(self):
        pk = first_fit(BppInstance(10, (5, 5, 5, 5)), [0, 1, 2, 3])
        assert pk.n_bins == 2 and pk.fills == [10.0, 10.0]
        assert first_fit(BppInstance(10, (7,)), [0]).n_bins == 1
        pk = first_fit(BppInstance(10, (6, 6, 4, 4)), [0, 1, 2, 3])
        assert pk.bins == [[0, 2], [1, 3]]

    def test_order_matters(self):
        inst = BppInstance(10, (6, 6, 4, 4))
        assert first_fit(inst, [2, 3, 0, 1]).n_bins == 3

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(1, 100), min_size=1, max_size=200), st.integers(0, 2 ** 32 - 1))
    def test_properties(self, weights, seed):
        inst = BppInstance(100, tuple(weights))
        pk = first_fit(inst, np.random.default_rng(seed).permutation(len(weights)))
        pk.check(inst)
        assert inst.volume_bound() <= pk.n_bins <= len(weights)


class TestFitness:
    def test_examples(self):
        assert bpp_fitness(Packing([[0], [1]], [10.0, 10.0]), 10) == 0.0
        assert bpp_fitness(Packing([[0], [1]], [10.0, 5.0]), 10) == 0.375

    def test_literal_exponent_depends_on_order(self):
        a = bpp_fitness(Packing([[0], [1]], [10.0, 5.0]), 10, literal_exponent=True)
        b = bpp_fitness(Packing([[0], [1]], [5.0, 10.0]), 10, literal_exponent=True)
        assert a == 1 - (1 + 0.25) / 2 and b == 1 - (0.5 + 1) / 2

    def test_brute_force_oracle(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            w = rng.integers(1, 50, int(rng.integers(1, 40)))
            inst = BppInstance(50, tuple(w))
            pk = first_fit(inst, rng.permutation(len(w)))
            total = 0.0
            for b in pk.bins:
                total += (sum(inst.weights[i] for i in b) / 50.0) ** 2
            assert bpp_fitness(pk, 50.0) == pytest.approx(1 - total / pk.n_bins, abs=1e-15)

    def test_zero_iff_perfect(self):
        assert bpp_fitness(Packing([[0]], [9.99]), 10) > 0
        with pytest.raises(ValueError):
            bpp_fitness(Packing([[0]], [1.0]), 10, k_exp=0)


class TestMoves:
    def test_examples(self):
        assert perm_diff([0, 1, 2], [0, 1, 2]) == []
        assert perm_diff([1, 0, 2], [0, 1, 2]) == [(0, 1)]
        with pytest.raises(ValueError):
            perm_diff([0, 1], [0, 1, 2])

    def test_round_trip_and_minimality(self):
        rng = np.random.default_rng(13)
        for _ in range(1000):
            n = int(rng.integers(1, 30))
            a, b = rng.permutation(n), rng.permutation(n)
            moves = perm_diff(a, b)
            assert np.array_equal(apply_moves(b, moves), a)
            # minimal swap count = n - number of cycles of the relative permutation
            rel = np.empty(n, dtype=int)
            rel[b] = a
            seen, cycles = set(), 0
            for s in range(n):
                if s not in seen:
                    cycles += 1
                    while s not in seen:
                        seen.add(s)
                        s = rel[s]
            assert len(moves) == n - cycles

    def test_apply_fraction(self):
        perm = np.arange(6)
        assert np.array_equal(apply_fraction([(0, 1)], perm, 1.0, 0.0), perm)
        moves = [(0, 1), (2, 3), (4, 5), (1, 2)]
        out = apply_fraction(moves, perm, 0.5, 0.9)
        assert out.tolist() == [1, 0, 3, 2, 4, 5]
        out = apply_fraction(moves, perm, 0.0, 0.5, RngStream(1))
        assert sorted(out.tolist()) == list(range(6))
        with pytest.raises(ValueError):
            apply_fraction(moves, perm, 0.5, 1.5)


class TestAfdo:
    def test_one_swap_instance(self):
        inst = BppInstance(10, (6, 6, 4, 4))
        res = afdo_run(inst, AfdoParams(pop_size=5, max_iterations=10, seed=0))
        assert res.best.packing.n_bins == 2 and res.best.fitness == 0.0

    def test_perfect_fill(self):
        res = afdo_run(BppInstance(10, (5,) * 20), AfdoParams(pop_size=5, max_iterations=5, seed=2))
        assert res.best.packing.n_bins == 10 and res.best.fitness == 0.0

    def test_determinism_and_monotone_trace(self):
        rng = np.random.default_rng(4)
        inst = BppInstance(100, tuple(rng.integers(10, 70, 40)))
        a = afdo_run(inst, AfdoParams(pop_size=8, max_iterations=30, seed=5))
        b = afdo_run(inst, AfdoParams(pop_size=8, max_iterations=30, seed=5))
        assert np.array_equal(a.trace, b.trace)
        assert np.all(np.diff(a.trace) <= 0)
        assert sorted(a.best.perm.tolist()) == list(range(40))
        assert a.best.fitness == bpp_fitness(a.best.packing, 100.0)
        a.best.packing.check(inst)
        assert a.counts["directed"] > 0 and a.counts["random"] > 0

    def test_params(self):
        with pytest.raises(ValueError):
            AfdoParams(k_exp=-1)
        with pytest.raises(InstanceError):
            BppInstance(10, ())
        assert BppInstance(10, (3, 3, 3, 3)).volume_bound() == math.ceil(12 / 10)
