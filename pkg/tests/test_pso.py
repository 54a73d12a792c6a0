import numpy as np
import pytest

from fishswarm.benchmarks import lookup
from fishswarm.core import RngStream
from fishswarm.pso import inertia_weight, pso_run


def test_inertia_weight_endpoints():
    # [PAPER] inertia weight decreases linearly from 0.9 to 0.4
    assert inertia_weight(0, 1000) == pytest.approx(0.9)
    assert inertia_weight(500, 1000) == pytest.approx(0.65)
    assert inertia_weight(1000, 1000) == pytest.approx(0.4)
    with pytest.raises(ValueError):
        inertia_weight(1001, 1000)


def test_population_and_evaluations():
    obj = lookup("sphere", 4)
    rec = pso_run(obj, 10, RngStream(0))
    # [DERIVED] 5 D particles, one evaluation each per iteration plus initialisation
    assert rec.evaluations == 20 * 11
    assert rec.final_positions.shape == (20, 4)


def test_trace_and_feasibility():
    obj = lookup("griewank", 10)
    rec = pso_run(obj, 200, RngStream(1))
    assert np.all(np.diff(rec.best_fitness) <= 0)
    assert obj.bounds.contains(rec.final_positions)
    assert obj(rec.best_position) == rec.final_best
    np.testing.assert_allclose(rec.mw[1:], [inertia_weight(t, 200) for t in range(1, 201)])
    assert np.isnan(rec.visual).all()


def test_determinism():
    obj = lookup("ackley", 5)
    a = pso_run(obj, 50, RngStream(3))
    b = pso_run(obj, 50, RngStream(3))
    np.testing.assert_array_equal(a.best_fitness, b.best_fitness)


def test_sphere_solved():
    # [PAPER] GPSO reaches the Sphere acceptance level in 30-D
    rec = pso_run(lookup("sphere", 30), 1000, RngStream(0))
    assert rec.final_best < 0.01
