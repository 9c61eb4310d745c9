import numpy as np
import pytest

from blochsteer.bloch import (
    BlochAngles,
    angle_gaps,
    angles_from_state,
    angular_distance,
    fidelity_up_to_phase,
    state_from_angles,
)
from blochsteer.propagate import simulate_schedule, state_at
from blochsteer.pulses import PulseShape
from blochsteer.three_rotation import (
    DURATION_FACTOR,
    optimal_magnitude_3,
    performance_of_magnitudes_3,
    plan_three_rotation,
)

from conftest import random_lambda, random_pairs

PI = np.pi
B, T, Q = PulseShape.BANG, PulseShape.TRIANGLE, PulseShape.QUADRATIC
OPT_J = {B: lambda lam: np.sqrt(lam), T: lambda lam: 2 * np.sqrt(lam) / np.sqrt(3),
         Q: lambda lam: np.sqrt(30 * lam) / 5}
PRODUCT = {B: 1 / 4, T: 1 / 3, Q: 3 / 10}


def test_optimal_magnitude_examples():
    assert optimal_magnitude_3(B, 4) == 2
    assert optimal_magnitude_3(Q, 8 / 15) == pytest.approx(1, rel=1e-15)
    assert optimal_magnitude_3(T, 3, bound=1) == 1
    assert optimal_magnitude_3(T, 3) == pytest.approx(3)


@pytest.mark.parametrize("lam, bound", [(0, None), (-1, None), (1, 0), (1, -2)])
def test_optimal_magnitude_rejects(lam, bound):
    with pytest.raises(ValueError):
        optimal_magnitude_3(B, lam, bound)


def test_pole_to_pole_bang():
    a, b = BlochAngles(0, 0), BlochAngles(PI, 0)
    sched, rep = plan_three_rotation(a, b, B, 1.0)
    assert len(sched) == 1 and sched.segments[0].axis.kind == "y"
    assert rep.t_f == pytest.approx(PI / 2, rel=1e-15)
    assert rep.energy == pytest.approx(PI / 2, rel=1e-15)
    assert rep.j_value == pytest.approx(PI, rel=1e-15)
    final, _ = simulate_schedule(state_from_angles(a), sched)
    assert fidelity_up_to_phase(final, [0, 1]) >= 1 - 1e-12


@pytest.mark.parametrize("shape", list(PulseShape))
def test_closed_form_optimum(shape, rng):
    for a, b in random_pairs(rng, 20):
        lam = random_lambda(rng)
        _, rep = plan_three_rotation(a, b, shape, lam)
        sigma = angle_gaps(a, b).sigma
        assert rep.j_value == pytest.approx(OPT_J[shape](lam) * sigma, rel=1e-10)
        assert rep.te_product == pytest.approx(PRODUCT[shape] * sigma**2, rel=1e-10)
        assert rep.j_value == pytest.approx(lam * rep.t_f + rep.energy, abs=1e-12)


def test_performance_of_magnitudes_examples():
    gaps = angle_gaps(BlochAngles(1.0, 4.0), BlochAngles(2.5, 1.0))
    lam, m = 2.0, 0.7
    assert performance_of_magnitudes_3(B, gaps, m, m, m, lam) == pytest.approx(
        (lam / (2 * m) + m / 2) * gaps.sigma, rel=1e-14)
    assert performance_of_magnitudes_3(B, gaps, *[np.sqrt(lam)] * 3, lam) == pytest.approx(
        np.sqrt(lam) * gaps.sigma, rel=1e-14)
    mq = np.sqrt(30 * lam) / 4
    assert performance_of_magnitudes_3(Q, gaps, mq, mq, mq, lam) == pytest.approx(
        np.sqrt(30 * lam) / 5 * gaps.sigma, rel=1e-14)


@pytest.mark.parametrize("shape", list(PulseShape))
def test_unequal_magnitudes_never_beat_optimum(shape, rng):
    gaps = angle_gaps(BlochAngles(1.0, 4.0), BlochAngles(2.5, 1.0))
    lam = 3.0
    best = OPT_J[shape](lam) * gaps.sigma
    for _ in range(200):
        ms = np.exp(rng.normal(size=3)) * optimal_magnitude_3(shape, lam)
        assert performance_of_magnitudes_3(shape, gaps, *ms, lam) >= best


@pytest.mark.parametrize("shape", list(PulseShape))
def test_waypoints(shape, rng):
    for a, b in random_pairs(rng, 30):
        sched, rep = plan_three_rotation(a, b, shape, random_lambda(rng))
        g = angle_gaps(a, b)
        c = DURATION_FACTOR[shape] / rep.magnitude_used
        psi0 = state_from_angles(a)
        w1 = angles_from_state(state_at(psi0, sched, c * g.phi_0m))
        w2 = angles_from_state(state_at(psi0, sched, c * (g.phi_0m + g.theta_0s)))
        assert angular_distance(w1.phi, 0.0) <= 1e-9
        assert abs(w1.theta - a.theta) <= 1e-9
        assert abs(w2.theta - b.theta) <= 1e-9


def test_sign_zero_is_positive():
    sched, _ = plan_three_rotation(BlochAngles(1.0, PI), BlochAngles(1.0, 0.5), B, 1.0)
    assert sched.segments[0].sign == 1
    final, _ = simulate_schedule(state_from_angles(BlochAngles(1.0, PI)), sched)
    assert fidelity_up_to_phase(final, state_from_angles(BlochAngles(1.0, 0.5))) >= 1 - 1e-12


def test_zero_gaps_are_omitted():
    sched, _ = plan_three_rotation(BlochAngles(1.0, 0.0), BlochAngles(2.0, 0.0), T, 1.0)
    assert [s.axis.kind for s in sched.segments] == ["y"]
    sched, _ = plan_three_rotation(BlochAngles(1.0, 1.0), BlochAngles(1.0, 5.0), T, 1.0)
    assert [s.axis.kind for s in sched.segments] == ["z", "z"]


def test_identical_states_give_empty_schedule():
    a = BlochAngles(1.2, 2.0)
    sched, rep = plan_three_rotation(a, a, Q, 1.0)
    assert len(sched) == 0 and rep.j_value == 0 and rep.t_f == 0


def test_schedule_windows_are_contiguous():
    sched, _ = plan_three_rotation(BlochAngles(0.4, 4.0), BlochAngles(2.0, 2.0), Q, 0.5)
    assert len(sched) == 3
    assert sched.segments[0].window.t0 == 0
    for s1, s2 in zip(sched.segments, sched.segments[1:]):
        assert s1.window.t1 == s2.window.t0
    assert sched.segments[-1].window.t1 == pytest.approx(sched.t_f)


@pytest.mark.parametrize("shape", list(PulseShape))
def test_lambda_invariance_of_product(shape):
    a, b = BlochAngles(0.3, 5.5), BlochAngles(2.2, 2.4)
    products = [plan_three_rotation(a, b, shape, lam)[1].te_product for lam in (0.01, 1, 100)]
    np.testing.assert_allclose(products, products[0], rtol=1e-12)


def test_orderings(rng):
    for a, b in random_pairs(rng, 50):
        lam = random_lambda(rng)
        rb, rq, rt = (plan_three_rotation(a, b, s, lam)[1] for s in (B, Q, T))
        assert rb.j_value < rq.j_value < rt.j_value
        assert rb.energy < rq.energy < rt.energy
        assert rb.t_f < rq.t_f < rt.t_f


@pytest.mark.parametrize("shape", list(PulseShape))
def test_grid_optimality(shape):
    gaps = angle_gaps(BlochAngles(2.0, 1.0), BlochAngles(0.5, 3.5))
    lam = 0.37
    m_star = optimal_magnitude_3(shape, lam)
    grid = np.geomspace(m_star / 100, m_star * 100, 1000)
    j = np.array([performance_of_magnitudes_3(shape, gaps, m, m, m, lam) for m in grid])
    j_star = performance_of_magnitudes_3(shape, gaps, m_star, m_star, m_star, lam)
    assert np.all(j - j_star >= 0)


BOUNDED_J = {
    B: lambda lam, L: lam / (2 * L) + L / 2,
    T: lambda lam, L: lam / L + L / 3,
    Q: lambda lam, L: 3 * lam / (4 * L) + 2 * L / 5,
}


@pytest.mark.parametrize("shape", list(PulseShape))
def test_bounded_clamping(shape, rng):
    for a, b in random_pairs(rng, 10):
        lam = random_lambda(rng)
        bound = optimal_magnitude_3(shape, lam) / 2
        sched, rep = plan_three_rotation(a, b, shape, lam, bound)
        assert rep.clamped and rep.magnitude_used == bound
        assert rep.j_value == pytest.approx(BOUNDED_J[shape](lam, bound) * angle_gaps(a, b).sigma, rel=1e-10)
        t = np.linspace(0, sched.t_f, 10_000)
        uz, uy = sched.controls(t)
        assert np.max(np.abs(uz)) <= bound and np.max(np.abs(uy)) <= bound
    # a generous bound leaves the optimum alone
    _, rep = plan_three_rotation(a, b, shape, 1.0, bound=1e6)
    assert not rep.clamped
