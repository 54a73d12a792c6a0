import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from fishswarm.benchmarks import (FUNCTION_NAMES, ackley, griewank, known_optimum, lookup,
                                  rosenbrock, sphere)
from fishswarm.core import EvalCounter


@pytest.mark.parametrize("name", FUNCTION_NAMES)
@pytest.mark.parametrize("dim", [2, 10, 30])
def test_zero_at_optimum(name, dim):
    obj = lookup(name, dim)
    assert abs(obj(known_optimum(name, dim))) <= 1e-9


def test_sphere_example():
    assert sphere(np.array([1.0, 2.0, 3.0])) == 14.0


def test_rosenbrock_canonical_form():
    # [DERIVED] 100 (x2 - x1^2)^2 + (1 - x1)^2 at (0, 0) and (-1, 1)
    assert rosenbrock(np.zeros(2)) == 1.0
    assert rosenbrock(np.array([-1.0, 1.0])) == 4.0
    assert rosenbrock(np.array([2.0, 0.0, 0.0])) == pytest.approx(100 * 16 + 1 + 1)


def test_rosenbrock_needs_two_dimensions():
    with pytest.raises(ValueError):
        lookup("rosenbrock", 1)


def test_ackley_1d_at_one():
    # [DERIVED] 20 + e - 20 exp(-0.2) - exp(cos 2 pi) = 20 + e - 20 e^-0.2 - e
    expected = 20.0 - 20.0 * math.exp(-0.2)
    assert expected == pytest.approx(3.6253849, abs=1e-6)
    assert ackley(np.array([1.0])) == pytest.approx(3.6253849, abs=1e-6)


def test_griewank_1d_at_two_pi():
    # [DERIVED] (2 pi)^2 / 4000 - cos(2 pi) + 1
    assert griewank(np.array([2 * math.pi])) == pytest.approx(0.0098696, abs=1e-7)


def test_griewank_uses_sqrt_index():
    x = np.array([1.0, 2.0])
    expected = (1 + 4) / 4000 - math.cos(1.0) * math.cos(2 / math.sqrt(2)) + 1
    assert griewank(x) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("name,lo,hi,acc", [
    ("sphere", -500, 500, 0.01),        # [PAPER]
    ("rosenbrock", -10, 10, 100),       # [PAPER]
    ("ackley", -32, 32, 0.01),          # [PAPER]
    ("griewank", -600, 600, 0.01),      # [PAPER]
])
def test_registry(name, lo, hi, acc):
    obj = lookup(name, 30)
    assert (obj.bounds.lower, obj.bounds.upper, obj.acceptance) == (lo, hi, acc)
    assert obj.dimension == 30


def test_alias_and_unknown():
    assert lookup("Ackly", 3).name == "ackley"
    with pytest.raises(ValueError, match="valid names"):
        lookup("rastrigin", 3)


def test_evaluate_checks_dimension_and_counts():
    obj = lookup("sphere", 3)
    c = EvalCounter()
    obj.evaluate([1, 1, 1], c)
    assert c.count == 1
    with pytest.raises(ValueError):
        obj.evaluate([1, 1])


@given(arrays(np.float64, 6, elements=st.floats(-600, 600)))
def test_non_negative(x):
    for name in FUNCTION_NAMES:
        assert lookup(name, 6)(x) >= -1e-12
