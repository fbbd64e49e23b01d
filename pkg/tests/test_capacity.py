"""Capacity bounds: closed-form product, midpoint form, ascent, brackets."""

import math

import numpy as np
import pytest

from chebcap.capacity import (
    SolyninParams,
    capacity_bracket,
    capacity_upper_estimate,
    ratio_sequence,
    solynin_bound,
    solynin_midpoint_bound,
    solynin_optimized_bound,
)
from chebcap.errors import InvalidInputError
from chebcap.intervals import IntervalUnion, normalize, to_angles
from chebcap.inverse_image import e_alpha
from chebcap.remez import minimal_polynomial

FULL = IntervalUnion((-1.0, 1.0))
ASYM = IntervalUnion((-1.0, 0.0, 0.5, 1.0))
TRIPLE = IntervalUnion((-1.0, -0.6, -0.2, 0.2, 0.6, 1.0))

# frozen reference values of the midpoint bound, computed once by hand from
# the closed form
ASYM_MIDPOINT = 0.48294528775375567
TRIPLE_MIDPOINT = 0.47436393690864248


def random_union(rng, ell_max: int = 4) -> IntervalUnion:
    ell = int(rng.randint(2, ell_max + 1))
    while True:
        pts = np.sort(rng.uniform(-1.0, 1.0, 2 * ell))
        if float(np.min(np.diff(pts))) >= 0.05:
            break
    pts[0], pts[-1] = -1.0, 1.0
    return IntervalUnion(tuple(float(x) for x in pts))


def test_symmetric_pair_bound_is_exact_at_central_delta():
    ang = to_angles(e_alpha(0.6))
    params = SolyninParams(gamma=(0.0, math.pi), delta=(math.pi / 2,))
    assert solynin_bound(ang, params) == pytest.approx(0.4, abs=1e-15)
    ang5 = to_angles(e_alpha(0.5))
    params5 = SolyninParams(gamma=(0.0, math.pi), delta=(math.pi / 2,))
    expect = 0.5 * math.sqrt(0.75)
    assert solynin_bound(ang5, params5) == pytest.approx(expect, abs=1e-15)


def test_bound_rejects_infeasible_parameters():
    ang = to_angles(e_alpha(0.6))
    with pytest.raises(InvalidInputError):
        solynin_bound(ang, SolyninParams(gamma=(0.1, math.pi), delta=(1.5,)))
    with pytest.raises(InvalidInputError):
        solynin_bound(ang, SolyninParams(gamma=(0.0, 3.0), delta=(1.5,)))
    with pytest.raises(InvalidInputError):
        # delta outside the gap [psi_1, phi_2]
        solynin_bound(ang, SolyninParams(gamma=(0.0, math.pi), delta=(0.1,)))
    with pytest.raises(InvalidInputError):
        solynin_bound(ang, SolyninParams(gamma=(0.0, math.pi), delta=(1.0, 2.0)))
    with pytest.raises(InvalidInputError):
        solynin_bound(to_angles(FULL), SolyninParams(gamma=(0.0,), delta=()))


def test_degenerate_parameters_zero_out_or_drop_factors():
    ang = to_angles(TRIPLE)
    phi, psi = ang.phi, ang.psi
    # gamma_2 pinned at the arc's left edge makes one sine argument zero:
    # a valid bound of zero
    params = SolyninParams(
        gamma=(0.0, phi[1], math.pi),
        delta=(0.5 * (psi[0] + phi[1]), 0.5 * (psi[1] + phi[2])),
    )
    assert solynin_bound(ang, params) == 0.0
    # delta_2 pushed onto the same pinned gamma gives a zero-weight factor,
    # which must evaluate to 1, leaving the bound positive
    params2 = SolyninParams(
        gamma=(0.0, phi[1], math.pi),
        delta=(phi[1], 0.5 * (psi[1] + phi[2])),
    )
    assert solynin_bound(ang, params2) > 0.0


def test_midpoint_closed_form_values():
    assert solynin_midpoint_bound(to_angles(e_alpha(0.6))) == pytest.approx(
        0.4, abs=1e-12
    )
    assert solynin_midpoint_bound(to_angles(e_alpha(0.5))) == pytest.approx(
        0.5 * math.sqrt(0.75), abs=1e-12
    )
    assert solynin_midpoint_bound(to_angles(ASYM)) == pytest.approx(
        ASYM_MIDPOINT, abs=1e-12
    )
    assert solynin_midpoint_bound(to_angles(TRIPLE)) == pytest.approx(
        TRIPLE_MIDPOINT, abs=1e-12
    )


def test_midpoint_agrees_with_generic_evaluation():
    rng = np.random.RandomState(31)
    for _ in range(50):
        e = random_union(rng)
        ang = to_angles(e)
        direct = solynin_midpoint_bound(ang)
        ell = ang.ell
        gamma = [0.0]
        gamma += [0.5 * (ang.phi[j] + ang.psi[j]) for j in range(1, ell - 1)]
        gamma.append(math.pi)
        delta = [0.5 * (ang.psi[j] + ang.phi[j + 1]) for j in range(ell - 1)]
        generic = solynin_bound(
            ang, SolyninParams(gamma=tuple(gamma), delta=tuple(delta))
        )
        assert abs(direct - generic) <= 1e-12


def test_optimizer_dominates_midpoint_and_is_deterministic():
    rng = np.random.RandomState(37)
    for _ in range(100):
        e = random_union(rng)
        ang = to_angles(e)
        mid = solynin_midpoint_bound(ang)
        val, params = solynin_optimized_bound(ang)
        assert val >= mid - 1e-14
        # the reported parameters reproduce the reported value
        assert solynin_bound(ang, params) == pytest.approx(val, abs=1e-13)
        val2, params2 = solynin_optimized_bound(ang)
        assert val2 == val
        assert params2 == params


def test_optimizer_keeps_symmetric_pair_sharp():
    for alpha in (0.3, 0.5, 0.6, 0.7):
        ang = to_angles(e_alpha(alpha))
        val, _ = solynin_optimized_bound(ang)
        assert val == pytest.approx(0.5 * math.sqrt(1 - alpha * alpha), abs=1e-8)


def test_upper_estimate_closed_forms():
    assert capacity_upper_estimate(FULL, 8) == pytest.approx(0.5, abs=1e-12)
    assert capacity_upper_estimate(e_alpha(0.6), 8) == pytest.approx(0.4, abs=1e-9)
    with pytest.raises(InvalidInputError):
        capacity_upper_estimate(FULL, 0)


def test_upper_estimate_monotone_under_nesting():
    nested = [
        e_alpha(0.7),
        e_alpha(0.5),
        e_alpha(0.3),
        FULL,
    ]
    values = [capacity_upper_estimate(e, 8) for e in nested]
    for small, big in zip(values, values[1:]):
        assert small <= big + 1e-12


def test_bracket_single_interval_is_exact():
    b = capacity_bracket(IntervalUnion((0.0, 4.0)), 8)
    assert b.lower == pytest.approx(1.0, abs=1e-10)
    assert b.upper == pytest.approx(1.0, abs=1e-10)
    assert b.lower_params is None
    assert b.scale == pytest.approx(2.0)
    unit = capacity_bracket(FULL, 6)
    assert unit.lower == 0.5 and unit.upper == pytest.approx(0.5, abs=1e-12)


def test_bracket_orders_and_scales():
    rng = np.random.RandomState(41)
    for _ in range(15):
        e = random_union(rng, ell_max=3)
        b = capacity_bracket(e, 8)
        assert 0.0 < b.lower <= b.upper + 1e-9
        s = float(rng.uniform(0.5, 3.0))
        t = float(rng.uniform(-1.0, 1.0))
        mapped = IntervalUnion(tuple(s * x + t for x in e.endpoints))
        bm = capacity_bracket(mapped, 8)
        assert bm.lower == pytest.approx(s * b.lower, rel=1e-10)
        assert bm.upper == pytest.approx(s * b.upper, rel=1e-10)


def test_deviation_dominates_twice_lower_power():
    # the two sides come from unrelated algorithms: an exchange solve and a
    # closed-form product maximization
    for e in (e_alpha(0.5), ASYM, TRIPLE):
        e_norm, fwd = normalize(e)
        lower = solynin_optimized_bound(to_angles(e_norm))[0] / abs(fwd.scale)
        for n in range(1, 31):
            dev = minimal_polynomial(e, n).deviation
            assert dev >= 2.0 * lower**n * (1 - 1e-9)


def test_ratio_sequence_full_interval():
    rep = ratio_sequence(FULL, 10)
    assert rep.cap_est == pytest.approx(0.5, abs=1e-14)
    for r in rep.ratios:
        assert r == pytest.approx(2.0, rel=1e-9)
    assert rep.min_ratio == pytest.approx(2.0, rel=1e-9)


def test_ratio_sequence_symmetric_pair_parity():
    rep = ratio_sequence(e_alpha(0.6), 8)
    for k, r in enumerate(rep.ratios, start=1):
        if k % 2 == 0:
            assert r == pytest.approx(2.0, rel=1e-9)
        else:
            assert r > 2.0 + 1e-3
    assert rep.min_ratio >= 2.0 - 1e-9
    assert rep.max_ratio == max(rep.ratios)


def test_ratio_sequence_validates_k_max():
    with pytest.raises(InvalidInputError):
        ratio_sequence(FULL, 0)
    with pytest.raises(InvalidInputError):
        ratio_sequence(FULL, 51)
