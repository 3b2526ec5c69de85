from __future__ import annotations

import math

import numpy as np
import pytest

from bohrradius.multiindex import count_multi_indices
from bohrradius.polynorms import (
    HomogeneousPolynomial,
    TruncatedPowerSeries,
    coefficient_aggregate,
    coefficient_majorant,
    evaluate,
    norm_one,
    norm_sup_certified,
    norm_sup_heuristic,
    norm_two,
)
from bohrradius.spaces import INF, SpaceSpec, torus_orbit, vector_norm
from bohrradius.verify import moebius_family


def quarter_circle(step=1e-3):
    theta = np.arange(0.0, np.pi / 2 + step, step)
    theta[-1] = min(theta[-1], np.pi / 2)
    return np.stack([np.cos(theta), np.sin(theta)], axis=1)


def test_polynomial_validation():
    spec = SpaceSpec(2)
    with pytest.raises(ValueError):
        HomogeneousPolynomial.from_dict(2, spec, {(1, 0): 1})
    with pytest.raises(ValueError):
        HomogeneousPolynomial(2, spec, np.zeros((2, 1)))
    Q = HomogeneousPolynomial.from_dict(2, spec, {(1, 1): 2j})
    assert Q.coefficient_map() == {(1, 1): pytest.approx(np.array([2j]))}
    assert HomogeneousPolynomial.zero(3, spec).is_zero


def test_evaluate_examples(rng):
    spec = SpaceSpec(2)
    assert np.all(evaluate(HomogeneousPolynomial.zero(2, spec), (0.3, 0.1)) == 0)
    assert evaluate(HomogeneousPolynomial.from_dict(2, spec, {(1, 1): 1}), (1, 1))[0] == 1
    Q = HomogeneousPolynomial.random(3, SpaceSpec(3, 2.0, 2), rng)
    z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    direct = sum(c * np.prod(z**np.array(a)) for a, c in zip(Q.indices, Q.coefficients))
    np.testing.assert_allclose(evaluate(Q, z), direct, rtol=1e-12)
    R = HomogeneousPolynomial.random(3, SpaceSpec(3, 2.0, 2), rng)
    S = HomogeneousPolynomial(3, Q.spec, 2 * Q.coefficients - 1j * R.coefficients)
    np.testing.assert_allclose(evaluate(S, z), 2 * evaluate(Q, z) - 1j * evaluate(R, z), rtol=1e-12)


def test_aggregate_is_torus_invariant(rng):
    for _ in range(10):
        Q = HomogeneousPolynomial.random(3, SpaceSpec(3, 2.0, 2), rng)
        z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        base = coefficient_aggregate(Q, z)
        for _ in range(30):
            w = torus_orbit(z, rng.random(3))
            assert coefficient_aggregate(Q, w) == pytest.approx(base, rel=1e-12)
            # direct summation at the rotated point
            direct = math.sqrt(sum(vector_norm(c, 2) ** 2 * abs(np.prod(w**np.array(a))) ** 2
                                   for a, c in zip(Q.indices, Q.coefficients)))
            assert direct == pytest.approx(base, rel=1e-12)


def test_norm_one_examples():
    Q = HomogeneousPolynomial.from_dict(2, SpaceSpec(2), {(2, 0): 1, (0, 2): 1})
    one = norm_one(Q)
    # exact closed form up to the rounding of the coefficient norms
    assert one.contains(2.0) and one.width <= 4e-15 and one.certified
    Q = HomogeneousPolynomial.from_dict(1, SpaceSpec(2, 2.0), {(1, 0): 3, (0, 1): 4})
    assert norm_one(Q).lo == pytest.approx(5.0, abs=1e-12)


def test_norm_one_and_two_grid_oracle(rng):
    T = quarter_circle()
    for _ in range(5):
        Q = HomogeneousPolynomial.random(2, SpaceSpec(2, 2.0), rng)
        w = Q.weights
        mons = np.prod(T[:, None, :] ** Q.exponents[None, :, :], axis=2)
        assert norm_one(Q).lo == pytest.approx(float((mons @ w).max()), abs=1e-4)
        assert norm_two(Q).lo == pytest.approx(float(np.sqrt((mons**2) @ (w**2)).max()), abs=1e-4)
        assert norm_one(Q).hi >= (mons @ w).max() - 1e-9


def test_norm_two_examples():
    Q = HomogeneousPolynomial.from_dict(1, SpaceSpec(2), {(1, 0): 1, (0, 1): 1})
    assert norm_two(Q).lo == pytest.approx(math.sqrt(2), rel=1e-15)
    # single monomial: ||x|| max |z^alpha|; on the 2-sphere max t1 t2^2 = 2/(3 sqrt 3)
    Q = HomogeneousPolynomial.from_dict(3, SpaceSpec(2, 2.0, 2), {(1, 2): [3, 4]})
    assert norm_two(Q).lo == pytest.approx(5 * 2 / (3 * math.sqrt(3)), rel=1e-9)


def test_sup_heuristic_examples():
    Q = HomogeneousPolynomial.from_dict(4, SpaceSpec(2), {(4, 0): 1})
    value, witness = norm_sup_heuristic(Q)
    assert value == pytest.approx(1.0, abs=1e-12)
    assert abs(witness[0]) == pytest.approx(1.0)
    Q = HomogeneousPolynomial.from_dict(2, SpaceSpec(2, 2.0), {(1, 1): 1})
    value, witness = norm_sup_heuristic(Q)
    assert value == pytest.approx(0.5, abs=1e-9)
    assert vector_norm(witness, 2.0) == pytest.approx(1.0, abs=1e-12)
    # grid oracle for z1 z2 on the 2-sphere
    T = quarter_circle()
    assert float((T[:, 0] * T[:, 1]).max()) == pytest.approx(0.5, abs=1e-6)


def test_sup_heuristic_monotone_in_restarts(rng):
    for _ in range(5):
        Q = HomogeneousPolynomial.random(3, SpaceSpec(3, 2.0), rng)
        values = [norm_sup_heuristic(Q, restarts=r, seed=3)[0] for r in (1, 2, 4, 8)]
        assert all(a <= b for a, b in zip(values, values[1:]))


def test_sup_heuristic_deterministic(rng):
    Q = HomogeneousPolynomial.random(2, SpaceSpec(2, 3.0, 2), rng)
    a, wa = norm_sup_heuristic(Q, 4, 9)
    b, wb = norm_sup_heuristic(Q, 4, 9)
    assert a == b and np.array_equal(wa, wb)


def test_sup_certified_examples():
    Q = HomogeneousPolynomial.from_dict(3, SpaceSpec(2), {(3, 0): 1})
    sup = norm_sup_certified(Q, mesh=16)
    assert sup.contains(1.0)
    assert sup.width <= 3 * 2 * math.pi / 16
    Q = HomogeneousPolynomial.from_dict(1, SpaceSpec(2), {(1, 0): 1, (0, 1): 1})
    assert norm_sup_certified(Q).contains(2.0)


def test_sup_certified_guards():
    with pytest.raises(ValueError):
        norm_sup_certified(HomogeneousPolynomial.from_dict(1, SpaceSpec(2, 2.0), {(1, 0): 1}))
    with pytest.raises(ValueError):
        norm_sup_certified(HomogeneousPolynomial.from_dict(1, SpaceSpec(4), {(1, 0, 0, 0): 1}))
    with pytest.raises(ValueError):
        norm_sup_certified(HomogeneousPolynomial.from_dict(1, SpaceSpec(2), {(1, 0): 1}), mesh=128)


def test_sup_certified_contains_heuristic_and_dense_grid(rng):
    for _ in range(20):
        Q = HomogeneousPolynomial.random(2, SpaceSpec(2, INF, int(rng.integers(1, 3))), rng)
        sup = norm_sup_certified(Q)
        assert sup.lo - 1e-12 <= norm_sup_heuristic(Q)[0] <= sup.hi
        # dense independent grid never exceeds the certified upper end
        theta = np.linspace(0, 2 * np.pi, 4001)
        Z = np.stack([np.ones_like(theta), np.exp(1j * theta)], axis=1)
        vals = [vector_norm(evaluate(Q, z), Q.spec.p) for z in Z[::40]]
        assert max(vals) <= sup.hi


def test_sup_certified_series(rng):
    f = TruncatedPowerSeries.random(3, SpaceSpec(2), rng)
    sup = norm_sup_certified(f, mesh=32)
    assert sup.lo <= norm_sup_heuristic(f)[0] <= sup.hi


def test_scaling(rng):
    for q in (2.0, INF):
        Q = HomogeneousPolynomial.random(2, SpaceSpec(2, q, 2), rng)
        c = 0.7 - 1.9j
        S = Q.scaled(c)
        assert norm_one(S).lo == pytest.approx(abs(c) * norm_one(Q).lo, rel=1e-12)
        assert norm_two(S).lo == pytest.approx(abs(c) * norm_two(Q).lo, rel=1e-12)
        assert norm_sup_heuristic(S)[0] == pytest.approx(abs(c) * norm_sup_heuristic(Q)[0], rel=1e-12)


def test_zero_polynomial_norms():
    Z = HomogeneousPolynomial.zero(2, SpaceSpec(2, 2.0))
    assert norm_one(Z).hi == 0 and norm_two(Z).hi == 0
    assert norm_sup_heuristic(Z)[0] == 0
    assert norm_sup_certified(HomogeneousPolynomial.zero(2, SpaceSpec(2))).hi == 0


def test_norm_chain_small_sample(rng):
    for _ in range(40):
        m, n = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        spec = SpaceSpec(n, float(rng.choice([2.0, INF])), int(rng.integers(1, 3)))
        Q = HomogeneousPolynomial.random(m, spec, rng)
        assert norm_sup_heuristic(Q, restarts=2)[0] <= norm_one(Q).hi + 1e-9
        assert norm_one(Q).lo <= math.sqrt(count_multi_indices(m, n)) * norm_two(Q).hi + 1e-9


def test_coefficient_majorant_examples(rng):
    f = TruncatedPowerSeries.random(3, SpaceSpec(2, 2.0, 2), rng)
    assert coefficient_majorant(f, 0.0).lo == pytest.approx(vector_norm(f.constant, 2))
    ones = TruncatedPowerSeries.from_dict(6, SpaceSpec(1), {(k,): 1 for k in range(7)})
    r = 0.4
    assert coefficient_majorant(ones, r).contains(sum(r**k for k in range(7)), 1e-15)
    maj = coefficient_majorant(moebius_family(0.9, 60), 1 / 3)
    assert maj.lo == pytest.approx(0.99048, abs=1e-5)
    assert maj.contains(0.9 + 0.19 * (1 / 3) / (1 - 0.3))
    with pytest.raises(ValueError):
        coefficient_majorant(ones, 1.5)


def test_coefficient_majorant_radially_monotone(rng):
    f = TruncatedPowerSeries.random(4, SpaceSpec(2, 2.0), rng)
    radii = np.linspace(0, 1, 11)
    values = [coefficient_majorant(f, r).lo for r in radii]
    assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))
