import math

import pytest

from dtcsim.dtc import (HysteresisState, SpeedPi, flux_comparator,
                        select_vector, speed_pi_step, torque_comparator)
from dtcsim.inverter import SwitchingState, active_vector, stator_voltage


def test_flux_comparator_levels():
    h = HysteresisState(flux_flag=0, flux_band=0.01)
    assert flux_comparator(h, 0.02, 0.0).flux_flag == 1
    assert flux_comparator(h, -0.02, 0.0).flux_flag == 0
    held = HysteresisState(flux_flag=1, flux_band=0.01)
    assert flux_comparator(held, 0.005, 0.0).flux_flag == 1
    held0 = HysteresisState(flux_flag=0, flux_band=0.01)
    assert flux_comparator(held0, 0.005, 0.0).flux_flag == 0


def test_torque_comparator_three_level():
    h = HysteresisState(torque_band=0.5)
    assert torque_comparator(h, 1.0, 0.0).torque_flag == 1
    assert torque_comparator(h, -1.0, 0.0).torque_flag == -1
    assert torque_comparator(h, 0.2, 0.0).torque_flag == 0


def test_comparator_monotonicity():
    h = HysteresisState(flux_flag=0, torque_flag=0, flux_band=0.01,
                        torque_band=0.5)
    prev_f = prev_t = -2
    for err in [x / 100.0 for x in range(-300, 301)]:
        f = flux_comparator(h, err * 0.01, 0.0).flux_flag
        t = torque_comparator(h, err, 0.0).torque_flag
        assert f >= prev_f or prev_f == -2
        assert t >= prev_t or prev_t == -2
        prev_f, prev_t = f, t


def test_select_vector_examples():
    assert select_vector(1, 1, 1) == active_vector(2)
    assert select_vector(0, 1, 1) == active_vector(3)
    for flux_flag in (0, 1):
        for sec in range(1, 7):
            sw = select_vector(flux_flag, 0, sec,
                               previous=SwitchingState(0, 0, 0))
            assert sw in (SwitchingState(0, 0, 0), SwitchingState(1, 1, 1))


def test_select_vector_full_table():
    for sec in range(1, 7):
        assert select_vector(1, 1, sec) == active_vector(sec % 6 + 1)
        assert select_vector(1, -1, sec) == active_vector((sec - 2) % 6 + 1)
        assert select_vector(0, 1, sec) == active_vector((sec + 1) % 6 + 1)
        assert select_vector(0, -1, sec) == active_vector((sec - 3) % 6 + 1)


def test_select_vector_rejects_bad_sector():
    with pytest.raises(ValueError):
        select_vector(1, 1, 0)


def test_flux_displacement_property():
    # With flux at a sector center, (flux=1, torque=+1) must advance the
    # flux vector (positive tangential displacement) while growing its
    # magnitude; (flux=0, torque=+1) advances while shrinking it.
    vdc, dt, lam = 400.0, 50e-6, 0.6
    for sec in range(1, 7):
        theta = (sec - 1) * math.pi / 3.0
        fa, fb = lam * math.cos(theta), lam * math.sin(theta)
        for flux_flag, radial_sign in ((1, +1), (0, -1)):
            sw = select_vector(flux_flag, 1, sec)
            v = stator_voltage(sw, vdc)
            na, nb = fa + v.alpha * dt, fb + v.beta * dt
            radial = math.hypot(na, nb) - lam
            tangential = math.atan2(nb, na) - theta
            tangential = (tangential + math.pi) % (2 * math.pi) - math.pi
            assert radial * radial_sign > 0, (sec, flux_flag)
            assert tangential > 0, (sec, flux_flag)


def test_speed_pi_zero_error_outputs_integral_term():
    pi = SpeedPi(kp=3.0, ki=4.0, integral=2.0, torque_limit=50.0)
    _, out = speed_pi_step(pi, 10.0, 10.0, 1e-3)
    assert out == pytest.approx(4.0 * 2.0, rel=1e-12)


def test_speed_pi_pure_proportional():
    pi = SpeedPi(kp=1.0, ki=0.0, torque_limit=50.0)
    _, out = speed_pi_step(pi, 5.0, 0.0, 1e-3)
    assert out == pytest.approx(5.0, rel=1e-12)


def test_speed_pi_anti_windup_freezes_integral():
    pi = SpeedPi(kp=1.0, ki=10.0, torque_limit=50.0)
    for _ in range(1000):
        pi, out = speed_pi_step(pi, 1000.0, 0.0, 1e-3)
        assert out == 50.0
    assert pi.integral == 0.0  # never wound up while pinned at the clamp


def test_speed_pi_requires_positive_dt():
    with pytest.raises(ValueError):
        speed_pi_step(SpeedPi(), 0.0, 0.0, -1.0)
