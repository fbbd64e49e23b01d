"""Exchange solver: closed forms, alternation, covariance, blow-up, witness."""

import math

import numpy as np
import pytest

from oracles import grid_sup_norm, minimax_deviation_oracle

from chebcap.errors import DegreeCapError, InvalidInputError
from chebcap.intervals import IntervalUnion, is_subset
from chebcap.inverse_image import e_alpha, symmetric_two_interval_minpoly
from chebcap.remez import blow_up_set, minimal_polynomial, minimality_witness

FULL = IntervalUnion((-1.0, 1.0))


def test_single_interval_closed_form():
    for n in range(1, 21):
        r = minimal_polynomial(FULL, n)
        assert r.deviation == pytest.approx(2.0 ** (1 - n), rel=1e-9)
        assert r.iterations >= 1
        assert r.residual <= 1e-9 * r.deviation + 1e-15


def test_degree_three_coefficients():
    r = minimal_polynomial(FULL, 3)
    assert r.deviation == pytest.approx(0.25, abs=1e-12)
    assert np.allclose(r.poly.coeffs, [0.0, -0.75, 0.0, 1.0], atol=1e-9)


def test_shifted_interval_linear():
    r = minimal_polynomial(IntervalUnion((0.0, 1.0)), 1)
    assert r.deviation == pytest.approx(0.5, abs=1e-12)
    assert np.allclose(r.poly.coeffs, [-0.5, 1.0], atol=1e-12)


def test_symmetric_pair_closed_form():
    for alpha in (0.3, 0.5, 0.7):
        e = e_alpha(alpha)
        for n in (2, 4, 6):
            r = minimal_polynomial(e, n)
            expect = 2.0 ** (1 - n) * (1 - alpha * alpha) ** (n / 2)
            assert r.deviation == pytest.approx(expect, rel=1e-9)
            formula, dev = symmetric_two_interval_minpoly(alpha, n)
            assert dev == pytest.approx(expect, rel=1e-14)
            a = np.zeros(n + 1)
            a[: len(formula.coeffs)] = formula.coeffs
            b = np.zeros(n + 1)
            b[: len(r.poly.coeffs)] = r.poly.coeffs
            assert np.max(np.abs(a - b)) < 1e-8


def test_alternation_points_equioscillate():
    e = IntervalUnion((-1.0, -0.3, 0.2, 1.0))
    r = minimal_polynomial(e, 5)
    pts = np.array(r.alternation_points)
    assert len(pts) >= 6
    vals = r.evaluate(pts)
    assert np.max(np.abs(np.abs(vals) - r.deviation)) <= 1e-8 * r.deviation
    signs = np.sign(vals)
    assert np.all(signs[1:] * signs[:-1] == -1.0)


def test_deviation_is_attained_sup():
    e = IntervalUnion((-1.0, -0.2, 0.3, 1.0))
    for n in (2, 4, 7):
        r = minimal_polynomial(e, n)
        sup = grid_sup_norm(r.poly.coeffs, e.intervals)
        assert sup <= r.deviation * (1 + 1e-9)
        assert sup >= r.deviation * (1 - 1e-7)


def test_affine_covariance():
    rng = np.random.RandomState(13)
    base = IntervalUnion((-1.0, -0.4, 0.1, 1.0))
    for _ in range(10):
        s = rng.uniform(0.3, 3.0) * rng.choice([-1.0, 1.0])
        t = rng.uniform(-2.0, 2.0)
        mapped = IntervalUnion(tuple(sorted(s * x + t for x in base.endpoints)))
        for n in (1, 3, 6):
            a = minimal_polynomial(base, n).deviation
            b = minimal_polynomial(mapped, n).deviation
            assert b == pytest.approx(abs(s) ** n * a, rel=1e-10)


def test_matches_bruteforce_oracle():
    cases = [
        (FULL, 2),
        (IntervalUnion((0.0, 1.0)), 2),
        (e_alpha(0.5), 3),
        (IntervalUnion((-1.0, 0.0, 0.5, 1.0)), 3),
    ]
    for e, n in cases:
        dev = minimal_polynomial(e, n).deviation
        oracle = minimax_deviation_oracle(e.intervals, n)
        assert abs(dev - oracle) < 1e-6


def test_validation_errors():
    with pytest.raises(InvalidInputError):
        minimal_polynomial(FULL, 0)
    with pytest.raises(DegreeCapError):
        minimal_polynomial(FULL, 101)


def test_blow_up_fixed_points_and_growth():
    r = minimal_polynomial(FULL, 4)
    b = blow_up_set(FULL, r)
    assert b.ell_prime == 1
    assert np.allclose(b.c_prime.endpoints, (-1.0, 1.0), atol=1e-9)

    e = e_alpha(0.5)
    r2 = minimal_polynomial(e, 2)
    b2 = blow_up_set(e, r2)
    assert b2.ell_prime == 2
    assert np.allclose(b2.c_prime.endpoints, e.endpoints, atol=1e-7)

    r1 = minimal_polynomial(e, 1)
    b1 = blow_up_set(e, r1)
    assert b1.ell_prime == 1
    assert np.allclose(b1.c_prime.endpoints, (-1.0, 1.0), atol=1e-7)


def test_blow_up_contains_original_set():
    rng = np.random.RandomState(17)
    for _ in range(20):
        ell = rng.randint(2, 4)
        pts = np.sort(rng.uniform(-1, 1, 2 * ell))
        while np.min(np.diff(pts)) < 0.1:
            pts = np.sort(rng.uniform(-1, 1, 2 * ell))
        pts[0], pts[-1] = -1.0, 1.0
        e = IntervalUnion(tuple(pts))
        n = int(rng.randint(1, 7))
        r = minimal_polynomial(e, n)
        b = blow_up_set(e, r)
        assert is_subset(e, b.c_prime, tol=1e-7)
        assert b.ell_prime <= n


def test_minimality_witness_passes_on_true_solution():
    e = e_alpha(0.5)
    r = minimal_polynomial(e, 4)
    w = minimality_witness(e, r)
    assert w.sup_ok and w.alternation_ok
    assert w.passed


def test_solver_accuracy_random_unions():
    rng = np.random.RandomState(23)
    for _ in range(25):
        ell = rng.randint(1, 4)
        pts = np.sort(rng.uniform(-1, 1, 2 * ell))
        while ell > 1 and np.min(np.diff(pts)) < 0.1:
            pts = np.sort(rng.uniform(-1, 1, 2 * ell))
        e = IntervalUnion(tuple(pts))
        n = int(rng.randint(1, 13))
        r = minimal_polynomial(e, n)
        assert r.residual <= 1e-6 * r.deviation
        # sup in the stable basis: the monomial form cancels catastrophically
        # once deviations shrink toward the coefficient noise floor
        sup = max(
            float(np.max(np.abs(r.evaluate(np.linspace(a, b, 4001)))))
            for a, b in e.intervals
        )
        assert sup <= r.deviation * (1 + 1e-9)
        assert sup >= r.deviation * (1 - 1e-7)
