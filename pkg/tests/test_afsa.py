import numpy as np
import pytest
from numba import njit

from fishswarm import afsa
from fishswarm.afsa import (SwarmParams, follow_behavior, free_move, init_swarm, prey, run,
                            step_iteration, swarm_behavior)
from fishswarm.benchmarks import Objective, lookup
from fishswarm.core import Bounds, RngStream
from fishswarm.schedules import MwSchedule


@njit
def _flat(x):
    return 1.0


FLAT = Objective("flat", _flat, Bounds(-1.0, 1.0), 4, 0.0)


def _params(obj, itr_max=20, **kw):
    return SwarmParams.for_objective(obj, itr_max=itr_max, **kw)


def test_defaults_from_range():
    # [PAPER] visual 40 % and step 25 % of the range; Ackley range 64
    p = SwarmParams.for_objective(lookup("ackley", 10))
    assert (p.visual0, p.step0) == pytest.approx((25.6, 16.0))
    assert (p.population, p.try_number, p.delta) == (30, 10, 0.5)


@pytest.mark.parametrize("kw", [dict(population=0), dict(try_number=0), dict(delta=0.0),
                                dict(delta=1.0), dict(visual0=-1.0)])
def test_params_validation(kw):
    with pytest.raises(ValueError):
        SwarmParams(**kw)


def test_init_swarm():
    obj = lookup("sphere", 5)
    st = init_swarm(obj, _params(obj), RngStream(0))
    assert st.positions.shape == (30, 5)
    assert obj.bounds.contains(st.positions)
    np.testing.assert_allclose(st.fitness, (st.positions**2).sum(axis=1), rtol=1e-15)
    assert st.bulletin_fitness == st.fitness.min()
    assert st.evaluations.count == 30


def test_evaluation_budget_crowded():
    # [DERIVED] every fish sees every other fish (29/30 >= 0.5: crowded, no centre
    # evaluation); nothing ever improves, so each fish spends 10 prey tries and
    # one evaluation of its free-move landing point.
    params = SwarmParams(population=30, visual0=10.0, step0=0.5, itr_max=7)
    rec = run(FLAT, params, MwSchedule.constant(1.0, 7), RngStream(1))
    assert rec.evaluations == 30 + 7 * 30 * 11
    np.testing.assert_array_equal(np.diff(rec.evaluations_trace), 30 * 11)


def test_evaluation_budget_uncrowded():
    # [DERIVED] 2/3 < 0.9: not crowded, so the centre is evaluated too (12 per fish)
    params = SwarmParams(population=3, visual0=10.0, step0=0.5, delta=0.9, itr_max=5)
    rec = run(FLAT, params, MwSchedule.constant(1.0, 5), RngStream(1))
    assert rec.evaluations == 3 + 5 * 3 * 12


def test_evaluation_budget_upper_bound():
    obj = lookup("griewank", 10)
    params = _params(obj, itr_max=50)
    rec = run(obj, params, MwSchedule.constant(0.98, 50), RngStream(2))
    per_iter = np.diff(rec.evaluations_trace)
    assert per_iter.max() <= 30 * (1 + 10 + 1)


@pytest.mark.parametrize("name", ["sphere", "rosenbrock", "ackley", "griewank"])
def test_bulletin_monotone_and_consistent(name):
    obj = lookup(name, 10)
    rec = run(obj, _params(obj, 100), MwSchedule.constant(0.96, 100), RngStream(3))
    assert np.all(np.diff(rec.best_fitness) <= 0)
    assert rec.final_best == rec.best_fitness[-1]
    assert obj(rec.best_position) == rec.final_best
    assert obj.bounds.contains(rec.final_positions)


def test_run_matches_step_iteration():
    obj = lookup("ackley", 6)
    params = _params(obj, itr_max=15)
    sched = MwSchedule.random(0.95, 0.99, 15)
    rec = run(obj, params, sched, RngStream(9))

    rng = RngStream(9)
    st = init_swarm(obj, params, rng)
    trace = [st.bulletin_fitness]
    for _ in range(15):
        st = step_iteration(st, obj, sched, rng)
        trace.append(st.bulletin_fitness)
    np.testing.assert_array_equal(rec.best_fitness, trace)
    np.testing.assert_array_equal(rec.final_positions, st.positions)
    assert rec.visual[-1] == st.visual
    assert rec.evaluations == st.evaluations.count
    with pytest.raises(ValueError):
        step_iteration(st, obj, sched, rng)


def test_step_iteration_does_not_mutate_input():
    obj = lookup("sphere", 4)
    params = _params(obj)
    rng = RngStream(0)
    st = init_swarm(obj, params, rng)
    before = st.positions.copy()
    new = step_iteration(st, obj, MwSchedule.constant(0.9, 20), rng)
    np.testing.assert_array_equal(st.positions, before)
    assert new.iteration == 1 and st.iteration == 0
    assert new.visual == pytest.approx(0.9 * st.visual)


def test_visual_step_compounding_in_trace():
    obj = lookup("sphere", 3)
    rec = run(obj, _params(obj, 30), MwSchedule.constant(0.96, 30), RngStream(0))
    t = np.arange(31)
    np.testing.assert_allclose(rec.visual, 400 * 0.96**t, rtol=1e-12)
    np.testing.assert_allclose(rec.step, 250 * 0.96**t, rtol=1e-12)
    assert np.isnan(rec.mw[0]) and np.all(rec.mw[1:] == 0.96)


def test_run_determinism():
    obj = lookup("rosenbrock", 5)
    a = run(obj, _params(obj, 40), MwSchedule.constant(0.96, 40), RngStream(11))
    b = run(obj, _params(obj, 40), MwSchedule.constant(0.96, 40), RngStream(11))
    np.testing.assert_array_equal(a.best_fitness, b.best_fitness)
    np.testing.assert_array_equal(a.final_positions, b.final_positions)


def test_schedule_length_mismatch():
    obj = lookup("sphere", 3)
    with pytest.raises(ValueError):
        run(obj, _params(obj, 10), MwSchedule.constant(0.96, 20), RngStream(0))


def test_zero_iterations():
    obj = lookup("sphere", 3)
    rec = run(obj, _params(obj, 0), MwSchedule.constant(0.96, 1), RngStream(0))
    assert rec.best_fitness.size == 1 and rec.evaluations == 30


def _five_fish():
    obj = lookup("sphere", 2)
    pos = np.array([[3.0, 3.0], [2.0, 3.0], [3.5, 2.5], [2.2, 2.2], [60.0, 60.0]])
    fit = (pos**2).sum(axis=1)
    st = init_swarm(obj, SwarmParams(population=5, visual0=1.0, step0=0.5, itr_max=1),
                    RngStream(0))
    st.positions[:] = pos
    st.fitness[:] = fit
    st.bulletin_fitness = float(fit.min())
    return obj, st


def test_follow_moves_toward_best_neighbour():
    # fish 0 at (3, 3); neighbours within sqrt(2): fish 1, 2, 3; fish 3 is best
    obj, st = _five_fish()
    st.params = SwarmParams(population=5, visual0=1.0, step0=0.5, delta=0.9, itr_max=1)
    nbr = afsa._neighbors(st.positions, 0, st.visual)
    assert sorted(nbr) == [1, 2, 3]
    # [DERIVED] brute force argmin over the neighbourhood
    best = min(nbr, key=lambda j: st.fitness[j])
    new = follow_behavior(st, 0, obj, RngStream(4))
    d_new = new - st.positions[0]
    d_best = st.positions[best] - st.positions[0]
    cos = d_new @ d_best / np.linalg.norm(d_new) / np.linalg.norm(d_best)
    assert cos == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.norm(d_new) <= st.step


def test_behaviours_refused_when_crowded():
    obj, st = _five_fish()  # delta 0.5, 3/5 neighbours -> crowded
    assert follow_behavior(st, 0, obj, RngStream(0)) is None
    assert swarm_behavior(st, 0, obj, RngStream(0)) is None


def test_behaviours_refused_without_neighbours():
    obj, st = _five_fish()
    assert follow_behavior(st, 4, obj, RngStream(0)) is None
    assert swarm_behavior(st, 4, obj, RngStream(0)) is None


def test_swarm_moves_toward_centre():
    obj, st = _five_fish()
    st.params = SwarmParams(population=5, visual0=1.0, step0=0.5, delta=0.9, itr_max=1)
    new = swarm_behavior(st, 0, obj, RngStream(4))
    centre = st.positions[[1, 2, 3]].mean(axis=0)
    d_new, d_c = new - st.positions[0], centre - st.positions[0]
    assert d_new @ d_c / np.linalg.norm(d_new) / np.linalg.norm(d_c) == pytest.approx(1.0)
    assert st.evaluations.count == 5 + 1


def test_prey_improves_or_free_moves():
    obj = lookup("sphere", 8)
    params = _params(obj)
    st = init_swarm(obj, params, RngStream(0))
    for i in range(5):
        new = prey(st, i, obj, RngStream(i))
        assert obj.bounds.contains(new)
        moved = np.linalg.norm(new - st.positions[i])
        # an improving prey lands inside the visual box, a free move within step
        assert obj(new) < st.fitness[i] or moved <= st.step + 1e-9
        assert np.max(np.abs(new - st.positions[i])) <= max(st.visual, st.step) + 1e-9


def test_free_move_within_step_and_bounds():
    obj = lookup("sphere", 3)
    st = init_swarm(obj, _params(obj), RngStream(0))
    st.positions[0] = [500.0, 500.0, 500.0]
    rng = RngStream(1)
    for _ in range(200):
        p = free_move(st, 0, rng)
        assert obj.bounds.contains(p)
        assert np.linalg.norm(p - st.positions[0]) <= st.step + 1e-9


def test_bad_fish_index():
    obj = lookup("sphere", 3)
    st = init_swarm(obj, _params(obj), RngStream(0))
    with pytest.raises(IndexError):
        prey(st, 30, obj, RngStream(0))


def test_sphere_converges():
    # [PAPER] Sphere 30-D with constant MW 0.96 ends far below the 0.01 acceptance
    obj = lookup("sphere", 30)
    rec = run(obj, _params(obj, 1000), MwSchedule.constant(0.96, 1000), RngStream(0))
    assert rec.final_best < 0.01


def test_free_move_isotropic():
    # [DERIVED] uniform directions with U(0,1) length average to the zero vector;
    # per-coordinate sd of the mean is below step / sqrt(3 D n)
    obj = lookup("sphere", 3)
    st = init_swarm(obj, _params(obj), RngStream(0))
    st.positions[0] = 0.0
    rng = RngStream(7)
    d = np.array([free_move(st, 0, rng) for _ in range(10_000)]) / st.step
    assert np.all(np.linalg.norm(d, axis=1) <= 1 + 1e-12)
    assert np.all(np.abs(d.mean(axis=0)) < 5 * np.sqrt(1 / (3 * 3 * 10_000)))


def test_prey_improves_far_from_optimum():
    # [DERIVED] Monte Carlo: from a far point with a large visual, prey almost
    # always finds and lands on a better point
    obj = lookup("sphere", 5)
    st = init_swarm(obj, _params(obj), RngStream(0))
    st.positions[0] = 400.0
    st.fitness[0] = obj(st.positions[0])
    rng = RngStream(8)
    better = sum(obj(prey(st, 0, obj, rng)) <= st.fitness[0] for _ in range(1000))
    assert better >= 950
