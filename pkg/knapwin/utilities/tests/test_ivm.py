#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Standard libs
import math

# Installed libs
import numpy as np
import pytest

# User-defined libs
from knapwin.core import Element
from knapwin.utilities import IvmOracle, ivm_gain, ivm_utility


def _point(ordinal, vec):
    return Element(ordinal, np.asarray(vec, dtype=float), [0.5])


def test_ivm_gain_examples():
    """Gains of the empty set, a duplicate point, and a distant point"""
    oracle = IvmOracle(sigma=1.0, bandwidth=0.75)
    origin = _point(1, [0.0, 0.0])
    assert ivm_gain(oracle, origin) == pytest.approx(0.5 * math.log(2))

    oracle.insert(origin)
    assert oracle.gain(_point(2, [0.0, 0.0])) == pytest.approx(0.5 * math.log(1.5))
    assert oracle.gain(_point(3, [1e3, 1e3])) == pytest.approx(0.5 * math.log(2))

    oracle.insert(_point(2, [0.0, 0.0]))
    assert oracle.utility == pytest.approx(0.5 * math.log(3))
    assert oracle.utility == pytest.approx(ivm_utility([[0.0, 0.0], [0.0, 0.0]]))


def test_ivm_matches_dense_determinant():
    """Incremental gains agree with dense log-determinants"""
    rng = np.random.default_rng(42)
    for _ in range(50):
        size = int(rng.integers(0, 21))
        points = rng.random((size + 1, 4))
        oracle = IvmOracle()
        for ordinal, vec in enumerate(points[:-1], start=1):
            oracle.insert(_point(ordinal, vec))
        gain = oracle.gain(_point(size + 1, points[-1]))
        reference = ivm_utility(points) - ivm_utility(points[:-1])
        assert gain == pytest.approx(reference, rel=1e-8, abs=1e-12)
        assert oracle.utility == pytest.approx(ivm_utility(points[:-1]), rel=1e-8, abs=1e-12)


def test_ivm_factor():
    """The factor is lower-triangular with a positive diagonal"""
    rng = np.random.default_rng(7)
    oracle = IvmOracle(sigma=0.5, bandwidth=1.0)
    for ordinal, vec in enumerate(rng.random((12, 3)), start=1):
        oracle.insert(_point(ordinal, vec))
    factor = oracle.factor
    assert factor.shape == (12, 12)
    np.testing.assert_allclose(np.triu(factor, k=1), 0.0)
    assert np.all(np.diag(factor) > 0)
    kernel = np.exp(
        -np.sum((oracle.points[:, None] - oracle.points[None]) ** 2, axis=-1) / 1.0**2
    )
    np.testing.assert_allclose(factor @ factor.T, np.eye(12) + kernel / 0.25, rtol=1e-10)


def test_ivm_clone_and_reset():
    """Clones are independent; reset empties the state"""
    oracle = IvmOracle()
    oracle.insert(_point(1, [0.1, 0.2]))
    clone = oracle.clone()
    clone.insert(_point(2, [0.3, 0.1]))
    assert len(oracle) == 1 and len(clone) == 2
    assert oracle.utility == pytest.approx(0.5 * math.log(2))

    spawned = clone.spawn()
    assert len(spawned) == 0 and spawned.dim == 2
    clone.reset()
    assert len(clone) == 0 and clone.utility == 0.0


def test_ivm_errors():
    """Parameters must be positive and dimensions consistent"""
    with pytest.raises(ValueError, match="sigma > 0"):
        IvmOracle(sigma=0.0)
    oracle = IvmOracle()
    oracle.insert(_point(1, [0.0, 0.0]))
    with pytest.raises(ValueError, match="3-dimensional"):
        oracle.gain(_point(2, [0.0, 0.0, 0.0]))


@pytest.mark.parametrize("first_call", ["insert", "evaluate", "clone"])
def test_ivm_dimension_inferred_on_first_use(first_call):
    """An oracle built without dim learns it from the first element it sees"""
    oracle = IvmOracle()
    elements = [_point(1, [0.1, 0.2]), _point(2, [0.4, 0.0])]
    if first_call == "insert":
        for element in elements:
            oracle.insert(element)
        value = oracle.utility
    elif first_call == "evaluate":
        value = oracle.evaluate(elements)
        assert len(oracle) == 0
        oracle.insert(elements[0])
        oracle.insert(elements[1])
    else:
        oracle = oracle.clone()
        oracle.insert(elements[0])
        oracle.insert(elements[1])
        value = oracle.utility

    assert oracle.dim == 2
    assert oracle.points.shape == (2, 2)
    assert value == pytest.approx(ivm_utility([[0.1, 0.2], [0.4, 0.0]]))
