#!/usr/bin/env python3
"""
Hermite Polynomial Test Script
=========================

Quick checks of the normalized Hermite recurrence, multi-indices and the
Gauss-Hermite rules.
"""

import math

import numpy as np
from numpy.polynomial import hermite_e
import pytest
from pydantic import ValidationError

from src.errors import ContractError, DomainError
from src.hermite.hermite_poly import (
    gauss_hermite_rule,
    hermite_eval,
    hermite_eval_batch,
    hermite_eval_multi,
    hermite_rodrigues,
    in_validated_range,
    node_residual,
)
from src.hermite.schemas import MultiIndex


def test_univariate_values():
    """Known values of H_0 .. H_3."""
    print("🧮 TESTING UNIVARIATE VALUES")
    print("=" * 40)

    assert hermite_eval(0, 3.7) == 1.0
    assert hermite_eval(1, 2.0) == 2.0
    assert math.isclose(hermite_eval(2, 0.0), -0.7071067811865476, rel_tol=1e-15)
    assert math.isclose(hermite_eval(3, 1.0), -0.816496580927726, rel_tol=1e-14)

    # H_2(x) = (x^2 - 1) / sqrt(2), H_3(x) = (x^3 - 3x) / sqrt(6)
    for x in [-2.5, -0.3, 0.7, 4.0]:
        assert math.isclose(hermite_eval(2, x), (x * x - 1) / math.sqrt(2), rel_tol=1e-13, abs_tol=1e-15)
        assert math.isclose(hermite_eval(3, x), (x ** 3 - 3 * x) / math.sqrt(6), rel_tol=1e-13, abs_tol=1e-15)
    print("✅ H_0 .. H_3 match their closed forms")


def test_batch_matches_single():
    """Every batch entry equals the single evaluation bit for bit."""
    print("\n📚 TESTING BATCH EVALUATION")
    print("=" * 40)

    assert hermite_eval_batch(1, 5.0).tolist() == [1.0, 5.0]
    assert hermite_eval_batch(0, -3.0).tolist() == [1.0]
    batch = hermite_eval_batch(2, 0.0)
    assert batch[0] == 1.0 and batch[1] == 0.0
    assert math.isclose(batch[2], -0.7071067811865476, rel_tol=1e-15)

    for x in [-7.5, -1.0, 0.0, 0.3, 2.2, 9.9]:
        batch = hermite_eval_batch(40, x)
        assert all(batch[m] == hermite_eval(m, x) for m in range(41))

    xs = np.linspace(-4, 4, 9)
    batch = hermite_eval_batch(12, xs)
    assert batch.shape == (13, 9)
    assert np.array_equal(batch[12], hermite_eval(12, xs))
    print("✅ Batch and single evaluation agree exactly")


def test_recurrence_against_rodrigues():
    """The recurrence agrees with the explicit polynomial for small degrees."""
    print("\n🔁 TESTING RECURRENCE VS EXPLICIT POLYNOMIALS")
    print("=" * 40)

    xs = np.linspace(-3, 3, 13)
    for k in range(16):
        recurrence = hermite_eval(k, xs)
        explicit = hermite_rodrigues(k, xs)
        assert np.allclose(recurrence, explicit, rtol=1e-10, atol=1e-10), f"Mismatch at degree {k}"

    # relative to the magnitude of the monomial terms, which stays meaningful near roots
    xs = np.linspace(-10, 10, 2001)
    for k in range(7):
        coeffs = hermite_e.herme2poly([0] * k + [1])
        scale = np.polynomial.polynomial.polyval(np.abs(xs), np.abs(coeffs)) / math.sqrt(math.factorial(k))
        error = np.abs(hermite_eval(k, xs) - hermite_rodrigues(k, xs))
        assert np.all(error <= 1e-12 * scale), f"Mismatch at degree {k}"
    print("✅ Degrees 0..15 agree on [-3, 3], degrees 0..6 on [-10, 10]")


def test_parity():
    """H_k(-x) = (-1)^k H_k(x) for k <= 100 and |x| <= 10."""
    print("\n🔀 TESTING PARITY")
    print("=" * 40)

    xs = np.linspace(0, 10, 401)
    plus, minus = hermite_eval_batch(100, xs), hermite_eval_batch(100, -xs)
    signs = (-1.0) ** np.arange(101)
    assert np.max(np.abs(minus - signs[:, None] * plus)) <= 1e-13
    print("✅ Parity holds")


def test_multivariate():
    """Tensor-product evaluation and shape checks."""
    print("\n🧊 TESTING MULTIVARIATE EVALUATION")
    print("=" * 40)

    zero = MultiIndex.zero(3)
    assert hermite_eval_multi(zero, [1.5, -2.0, 8.0]) == 1.0

    k = MultiIndex.from_dense([1, 2])
    assert math.isclose(hermite_eval_multi(k, [1.0, 0.0]), -0.7071067811865476, rel_tol=1e-15)

    k = MultiIndex.from_dense([0, 3, 0])
    assert hermite_eval_multi(k, [9.0, 1.0, -4.0]) == hermite_eval(3, 1.0)

    points = np.array([[1.0, 0.0], [0.5, -0.5], [2.0, 1.0]])
    values = hermite_eval_multi(MultiIndex.from_dense([1, 2]), points)
    assert values.shape == (3,)
    for point, value in zip(points, values):
        assert value == hermite_eval_multi(MultiIndex.from_dense([1, 2]), point)

    with pytest.raises(ContractError):
        hermite_eval_multi(MultiIndex.from_dense([1, 2]), [1.0, 2.0, 3.0])
    print("✅ Multivariate evaluation OK")


def test_errors():
    """Domain and contract errors."""
    print("\n🚫 TESTING ERRORS")
    print("=" * 40)

    with pytest.raises(DomainError):
        hermite_eval(2, float('nan'))
    with pytest.raises(DomainError):
        hermite_eval_batch(3, float('inf'))
    with pytest.raises(ContractError):
        hermite_eval(-1, 0.5)
    with pytest.raises(ContractError):
        gauss_hermite_rule(0)
    print("✅ Invalid inputs rejected")


def test_multi_index():
    """Sparse storage, equality and graded-lex order."""
    print("\n🔢 TESTING MULTI-INDEX")
    print("=" * 40)

    k = MultiIndex(dim=4, entries={2: 3, 4: 0, 1: 1})
    assert k.entries == ((1, 1), (2, 3))
    assert k.dense() == [1, 3, 0, 0]
    assert k == MultiIndex.from_dense([1, 3, 0, 0])
    assert k != MultiIndex.from_dense([1, 3, 0])
    assert k[2] == 3 and k[4] == 0
    assert k.degree == 4
    assert MultiIndex.zero(2).is_zero
    assert str(k) == "(1,3,0,0)"

    assert MultiIndex.from_dense([1, 0]) < MultiIndex.from_dense([0, 1])
    assert MultiIndex.from_dense([0, 1]) < MultiIndex.from_dense([2, 0])
    assert len({MultiIndex.from_dense([1, 0]), MultiIndex.unit(2, 1)}) == 1

    with pytest.raises(ValidationError):
        MultiIndex(dim=2, entries={1: -1})
    with pytest.raises(ValidationError):
        MultiIndex(dim=2, entries={3: 1})
    print("✅ Multi-index invariants hold")


def test_quadrature_rules():
    """Small rules: normalization, symmetry and Gaussian moments."""
    print("\n⚖️  TESTING GAUSS-HERMITE RULES")
    print("=" * 40)

    rule = gauss_hermite_rule(1)
    assert rule.nodes == (0.0,) and rule.weights == (1.0,)

    for m in [2, 5, 10, 30]:
        rule = gauss_hermite_rule(m)
        nodes, weights = rule.node_array, rule.weight_array
        assert rule.size == m
        assert np.all(np.diff(nodes) > 0)
        assert np.all(weights > 0)
        assert abs(math.fsum(weights) - 1.0) <= 1e-12
        assert np.all(np.abs(nodes + nodes[::-1]) <= 1e-12)

    rule = gauss_hermite_rule(5)
    nodes, weights = rule.node_array, rule.weight_array
    assert abs(math.fsum(weights * nodes ** 2) - 1.0) <= 1e-12
    assert abs(math.fsum(weights * nodes ** 4) - 3.0) <= 1e-12
    assert abs(math.fsum(weights * nodes ** 3)) <= 1e-12
    print("✅ Rules are normalized, symmetric and exact on moments")


def test_node_residual():
    """Refined nodes satisfy the Newton residual tolerance."""
    print("\n🎯 TESTING NODE RESIDUALS")
    print("=" * 40)

    for m in [2, 7, 20, 60]:
        rule = gauss_hermite_rule(m)
        assert node_residual(m, rule.node_array) <= 1e-13
    print("✅ Node residuals within tolerance")


def test_orthonormality_suite():
    """|<H_j, H_k> - delta_jk| <= 1e-10 for j, k <= 50 with the 60-point rule."""
    print("\n📐 TESTING ORTHONORMALITY")
    print("=" * 40)

    rule = gauss_hermite_rule(60)
    values = hermite_eval_batch(50, rule.node_array)
    gram = (values * rule.weight_array) @ values.T
    deviation = np.max(np.abs(gram - np.eye(51)))
    print(f"   max deviation from identity: {deviation:.3e}")
    assert deviation <= 1e-10
    print("✅ Orthonormal up to degree 50")


def test_validated_range():
    assert in_validated_range([0.0, -10.0, 10.0])
    assert not in_validated_range([0.0, 10.5])


def main():
    """Run all tests."""
    print("🚀 HERMITE POLYNOMIAL TESTS")
    print("=" * 50)

    try:
        test_univariate_values()
        test_batch_matches_single()
        test_recurrence_against_rodrigues()
        test_parity()
        test_multivariate()
        test_errors()
        test_multi_index()
        test_quadrature_rules()
        test_node_residual()
        test_orthonormality_suite()
        test_validated_range()

        print(f"\n🎉 ALL TESTS PASSED!")

    except Exception as e:
        print(f"\n💥 TEST FAILED: {e}")
        import traceback
        traceback.print_exc()


if __name__ == "__main__":
    main()
