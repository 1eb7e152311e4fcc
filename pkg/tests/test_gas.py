import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from radialgas import (GasModel, Regime, characteristic_speeds, classify_regime,
                       density_from_sound_speed, pressure, primitive_from_conserved,
                       riemann_invariants, sound_speed)
from radialgas.errors import DomainError, PositivityError
from radialgas.gas import RHO_FLOOR, SpeedPair


class TestGasModel:
    def test_valid(self):
        m = GasModel(7.75e4, 1.4, 1)
        assert m.K == 7.75e4

    @pytest.mark.parametrize("kwargs", [
        dict(K=0.0, gamma=1.4, m=1),
        dict(K=-1.0, gamma=1.4, m=1),
        dict(K=1.0, gamma=1.0, m=1),
        dict(K=1.0, gamma=1.4, m=3),
        dict(K=1.0, gamma=1.4, m=0),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            GasModel(**kwargs)


class TestSoundSpeed:
    def test_vacuum(self, cubic_model):
        assert sound_speed(0.0, cubic_model) == 0.0

    def test_hand_value(self, cubic_model):
        assert sound_speed(5.0, cubic_model) == pytest.approx(5.0 * math.sqrt(3.0), rel=1e-15)

    def test_sea_level(self, air_model):
        # invert h = 343 numerically, then forward-check
        rho = density_from_sound_speed(343.0, air_model)
        assert rho == pytest.approx(1.2243, rel=1e-3)
        assert sound_speed(rho, air_model) == pytest.approx(343.0, rel=1e-12)

    def test_negative_density_rejected(self, cubic_model):
        with pytest.raises(DomainError):
            sound_speed(-1.0, cubic_model)

    def test_monotone(self, air_model):
        rho = np.logspace(-6, 3, 200)
        h = sound_speed(rho, air_model)
        assert np.all(np.diff(h) > 0)


class TestDensityInverse:
    def test_zero(self, cubic_model):
        assert density_from_sound_speed(0.0, cubic_model) == 0.0

    def test_hand_inverse(self, cubic_model):
        assert density_from_sound_speed(math.sqrt(3.0), cubic_model) == pytest.approx(1.0, rel=1e-15)

    def test_negative_rejected(self, air_model):
        with pytest.raises(DomainError):
            density_from_sound_speed(-0.1, air_model)

    def test_exact_inverse(self, air_model):
        rho = np.logspace(-6, 3, 500)
        back = density_from_sound_speed(sound_speed(rho, air_model), air_model)
        assert np.allclose(back, rho, rtol=1e-12)


class TestPressure:
    def test_vacuum(self, air_model):
        assert pressure(0.0, air_model) == 0.0

    def test_unit_density(self, air_model):
        assert pressure(1.0, air_model) == 7.75e4

    def test_hand_value(self, cubic_model):
        assert pressure(5.0, cubic_model) == pytest.approx(125.0, rel=1e-15)

    def test_negative_rejected(self, air_model):
        with pytest.raises(DomainError):
            pressure(-2.0, air_model)


class TestCharacteristicSpeeds:
    def test_symmetric(self):
        sp = characteristic_speeds(0.0, 1.0)
        assert (sp.c1, sp.c2) == (-1.0, 1.0)

    def test_outward(self):
        sp = characteristic_speeds(10.0, 1.0)
        assert (sp.c1, sp.c2) == (9.0, 11.0)

    def test_inward(self):
        sp = characteristic_speeds(-3400.0, 343.0)
        assert (sp.c1, sp.c2) == (-3743.0, -3057.0)


class TestRiemannInvariants:
    def test_gamma3_equals_speeds(self, cubic_model):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            u = rng.uniform(-1e4, 1e4)
            h = rng.uniform(0.0, 1e3)
            ri = riemann_invariants(u, h, cubic_model)
            sp = characteristic_speeds(u, h)
            assert ri.z == sp.c1 and ri.w_inv == sp.c2

    def test_gamma14(self, air_model):
        ri = riemann_invariants(10.0, 1.0, air_model)
        assert ri.z == pytest.approx(5.0, rel=1e-14)
        assert ri.w_inv == pytest.approx(15.0, rel=1e-14)

    def test_zero_state(self, air_model):
        ri = riemann_invariants(0.0, 0.0, air_model)
        assert (ri.z, ri.w_inv) == (0.0, 0.0)

    def test_ordering(self, air_model):
        ri = riemann_invariants(-3.0, 2.0, air_model)
        assert ri.w_inv >= ri.z


class TestClassifyRegime:
    def test_outward(self):
        assert classify_regime(SpeedPair(9.0, 11.0), 1e-9) is Regime.OUTWARD_SUPERSONIC

    def test_subsonic(self):
        assert classify_regime(SpeedPair(-1.0, 1.0), 1e-9) is Regime.SUBSONIC

    def test_inward(self):
        assert classify_regime(SpeedPair(-3743.0, -3057.0), 1e-9) is Regime.INWARD_SUPERSONIC

    def test_degenerate_band(self):
        assert classify_regime(SpeedPair(0.0, 1.0)) is Regime.DEGENERATE
        assert classify_regime(SpeedPair(-1.0, 0.0)) is Regime.DEGENERATE

    @given(st.floats(min_value=1e-3, max_value=1e3),
           st.sampled_from([(9.0, 11.0), (-1.0, 1.0), (-3743.0, -3057.0), (0.0, 2.0)]))
    def test_scaling_invariance(self, scale, pair):
        tol = 1e-9 * max(1.0, abs(pair[0]), abs(pair[1]))
        base = classify_regime(SpeedPair(*pair), tol)
        scaled = classify_regime(SpeedPair(pair[0] * scale, pair[1] * scale), tol * scale)
        assert base is scaled


class TestConservedRecovery:
    def test_hand_values(self, cubic_model):
        p = primitive_from_conserved(10.0 * 5.0, 0.0, 10.0, cubic_model)
        assert p.rho == pytest.approx(5.0, rel=1e-15)
        assert p.u == 0.0
        assert p.p == pytest.approx(125.0, rel=1e-14)
        assert p.h == pytest.approx(5.0 * math.sqrt(3.0), rel=1e-14)

    def test_velocity(self, air_model):
        p = primitive_from_conserved(10.0, 100.0, 10.0, air_model)
        assert p.rho == pytest.approx(1.0) and p.u == pytest.approx(10.0)

    def test_floor_violation(self, air_model):
        with pytest.raises(PositivityError):
            primitive_from_conserved(RHO_FLOOR / 2.0, 0.0, 1.0, air_model)

    def test_round_trip(self, air_model):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            rho = 10.0 ** rng.uniform(-6, 3)
            u = rng.uniform(-1e4, 1e4)
            r = rng.uniform(0.5, 50.0)
            s = r ** air_model.m * rho
            p = primitive_from_conserved(s, s * u, r, air_model)
            assert p.rho == pytest.approx(rho, rel=1e-13)
            assert p.u == pytest.approx(u, rel=1e-13, abs=1e-13)
