import math

import numpy as np
import pytest

from irsrelay import (ChannelSet, LinkGains, PAFactors, combined_channel,
                      identity_phase, link_gains, link_rate, mac_rate,
                      sum_rate, sum_rate_expanded)

HALF_LOG2_3 = 0.792481250360578  # 0.5*log2(3)


def unit_channels(m=1, n=1) -> ChannelSet:
    return ChannelSet(np.ones(m, dtype=complex), np.ones(m, dtype=complex),
                      np.ones((m, n), dtype=complex), np.ones(n, dtype=complex),
                      np.ones(n, dtype=complex))


def random_tuple(rng):
    g = LinkGains(*np.exp(rng.uniform(np.log(1e-3), np.log(1e5), size=4)))
    b1, b2 = rng.uniform(0.05, 0.45, size=2)
    beta = PAFactors.from_pair(float(b1), float(b2))
    p = float(np.exp(rng.uniform(np.log(1e-4), np.log(100.0))))
    return g, beta, p


class TestCombinedChannel:
    def test_scalar_all_ones(self):
        out = combined_channel(np.ones(1, complex), np.ones((1, 1), complex),
                               identity_phase(1), np.ones(1, complex))
        assert out.shape == (1,)
        assert out[0] == 2.0 + 0.0j

    def test_zero_cascade(self):
        h = np.array([1.0 + 2.0j, -3.0j])
        out = combined_channel(h, np.ones((2, 3), complex), identity_phase(3),
                               np.zeros(3, complex))
        assert np.array_equal(out, h)

    def test_destructive_cancellation(self):
        from irsrelay import PhaseVector
        theta = PhaseVector(np.array([1.0 + 0j, -1.0 + 0j]))
        out = combined_channel(np.zeros(1, complex), np.ones((1, 2), complex),
                               theta, np.ones(2, complex))
        assert abs(out[0]) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            combined_channel(np.ones(2, complex), np.ones((1, 1), complex),
                             identity_phase(1), np.ones(1, complex))


class TestLinkGains:
    def test_unit_network(self):
        g = link_gains(unit_channels(), identity_phase(1), identity_phase(1),
                       1.0, 1.0, 1.0)
        assert (g.gamma1, g.gamma2, g.gamma3, g.gamma4) == (4.0, 4.0, 4.0, 4.0)

    def test_zero_channels(self):
        ch = ChannelSet(np.zeros(2, complex), np.zeros(2, complex),
                        np.zeros((2, 3), complex), np.zeros(3, complex),
                        np.zeros(3, complex))
        g = link_gains(ch, identity_phase(3), identity_phase(3), 1.0, 1.0, 1.0)
        assert (g.gamma1, g.gamma2, g.gamma3, g.gamma4) == (0.0, 0.0, 0.0, 0.0)

    def test_quadratic_homogeneity(self):
        # gains are squared norms of the composite channel: doubling the
        # direct vectors and the cascade matrix doubles every composite
        # (the user-surface legs ride along inside the product), so gamma x4
        rng = np.random.default_rng(8)
        def cx(shape):
            return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        h1r, h2r, hir, h1i, h2i = cx((2,)), cx((2,)), cx((2, 3)), cx((3,)), cx((3,))
        t1, t2 = identity_phase(3), identity_phase(3)
        g = link_gains(ChannelSet(h1r, h2r, hir, h1i, h2i), t1, t2, 1.0, 1.0, 1.0)
        g2 = link_gains(ChannelSet(2 * h1r, 2 * h2r, 2 * hir, h1i, h2i),
                        t1, t2, 1.0, 1.0, 1.0)
        for name in ("gamma1", "gamma2", "gamma3", "gamma4"):
            assert getattr(g2, name) == pytest.approx(4.0 * getattr(g, name), rel=1e-12)

    def test_reciprocity_with_conjugate_phases(self):
        # theta2 = conj(theta1) makes the second-slot composites coincide with
        # the first-slot ones, so gamma2*noise2 == gamma3*noise_r exactly
        rng = np.random.default_rng(9)
        def cx(shape):
            return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        ch = ChannelSet(cx((3,)), cx((3,)), cx((3, 4)), cx((4,)), cx((4,)))
        from irsrelay import PhaseVector, random_phase, RngStream
        t1 = random_phase(4, RngStream(1, 0))
        t2 = PhaseVector(np.conj(t1.theta))
        g = link_gains(ch, t1, t2, 2.0, 3.0, 5.0)
        assert g.gamma2 * 5.0 == pytest.approx(g.gamma3 * 2.0, rel=1e-14)
        assert g.gamma4 * 3.0 == pytest.approx(g.gamma1 * 2.0, rel=1e-14)

    def test_rejects_nonpositive_noise(self):
        with pytest.raises(ValueError):
            link_gains(unit_channels(), identity_phase(1), identity_phase(1),
                       0.0, 1.0, 1.0)

    def test_gain_validation(self):
        with pytest.raises(ValueError):
            LinkGains(-1.0, 0.0, 0.0, 0.0)
        with pytest.raises(ValueError):
            LinkGains(math.nan, 0.0, 0.0, 0.0)


class TestPAFactors:
    def test_strictness(self):
        with pytest.raises(ValueError):
            PAFactors(0.0, 0.5, 0.5)
        with pytest.raises(ValueError):
            PAFactors(0.5, 0.5, 0.5)

    def test_from_pair(self):
        b = PAFactors.from_pair(0.2, 0.3)
        assert b.beta3 == pytest.approx(0.5, abs=1e-15)


class TestLinkRate:
    def test_examples(self):
        assert link_rate(3.0, 1.0, 1.0) == 1.0
        assert link_rate(0.0, 0.7, 9.0) == 0.0
        assert link_rate(1.0, 1.0 / 3.0, 3.0) == 0.5

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            link_rate(-1.0, 0.5, 1.0)


class TestMacRate:
    def test_symmetric_value(self):
        g = LinkGains(1, 1, 1, 1)
        assert mac_rate(g, PAFactors(1/3, 1/3, 1/3), 3.0) == pytest.approx(
            HALF_LOG2_3, abs=1e-12)

    def test_zero_gains(self):
        g = LinkGains(0, 1, 0, 1)
        assert mac_rate(g, PAFactors(1/3, 1/3, 1/3), 5.0) == 0.0

    def test_degenerate_single_user(self):
        g = LinkGains(2.5, 1, 0, 1)
        beta = PAFactors(0.4, 0.35, 0.25)
        assert mac_rate(g, beta, 7.0) == link_rate(2.5, 0.4, 7.0)


class TestSumRate:
    def test_symmetric_value(self):
        g = LinkGains(1, 1, 1, 1)
        assert sum_rate(g, PAFactors(1/3, 1/3, 1/3), 3.0) == pytest.approx(
            HALF_LOG2_3, abs=1e-12)

    def test_zero_power(self):
        g = LinkGains(3, 1, 4, 1)
        assert sum_rate(g, PAFactors(0.2, 0.3, 0.5), 0.0) == 0.0

    def test_dead_relay_to_user2_leg(self):
        g = LinkGains(2, 0, 3, 1.5)
        beta = PAFactors(0.3, 0.3, 0.4)
        p = 2.0
        r21 = min(link_rate(3, 0.3, p), link_rate(1.5, 0.4, p))
        assert sum_rate(g, beta, p) == min(r21, mac_rate(g, beta, p))

    def test_equals_expanded_on_random_tuples(self):
        rng = np.random.default_rng(1234)
        worst = 0.0
        for _ in range(10_000):
            g, beta, p = random_tuple(rng)
            worst = max(worst, abs(sum_rate(g, beta, p)
                                   - sum_rate_expanded(g, beta, p)))
        assert worst <= 1e-12

    def test_mac_inequality_on_random_tuples(self):
        # uplink rate sum always dominates the MAC bound
        rng = np.random.default_rng(4321)
        for _ in range(10_000):
            g, beta, p = random_tuple(rng)
            lhs = (link_rate(g.gamma1, beta.beta1, p)
                   + link_rate(g.gamma3, beta.beta2, p))
            assert lhs >= mac_rate(g, beta, p) - 1e-12

    def test_monotone_in_power_and_gains(self):
        rng = np.random.default_rng(77)
        for _ in range(200):
            g, beta, p = random_tuple(rng)
            assert sum_rate(g, beta, 2.0 * p) >= sum_rate(g, beta, p) - 1e-12
            for name in ("gamma1", "gamma2", "gamma3", "gamma4"):
                kwargs = {k: getattr(g, k) for k in
                          ("gamma1", "gamma2", "gamma3", "gamma4")}
                kwargs[name] *= 3.0
                assert sum_rate(LinkGains(**kwargs), beta, p) >= \
                    sum_rate(g, beta, p) - 1e-12

    def test_expanded_structural_gamma4_zero(self):
        g = LinkGains(2, 3, 4, 0)
        beta = PAFactors(0.25, 0.25, 0.5)
        p = 1.0
        # with a dead relay-to-U1 leg the direction-1 branch is R_1ir + 0
        assert sum_rate_expanded(g, beta, p) == min(
            link_rate(2, 0.25, p),
            link_rate(3, 0.5, p) + link_rate(4, 0.25, p),
            link_rate(3, 0.5, p),
            mac_rate(g, beta, p))

    def test_rates_nonnegative_finite(self):
        rng = np.random.default_rng(55)
        for _ in range(500):
            g, beta, p = random_tuple(rng)
            r = sum_rate(g, beta, p)
            assert math.isfinite(r) and r >= 0.0
