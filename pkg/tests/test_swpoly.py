import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from swigert.errors import (
    BadTau,
    DomainTooLarge,
    IndexOutOfRange,
    PeakOverflow,
    ZeroArgument,
)
from swigert.qcore import qpoch_infinite, qq_infinity
from swigert.scaling import RealParam, Scaling
from swigert.swpoly import (
    log_normalizer,
    log_theta_normalizer,
    poch_tail_ratio_e,
    poch_tail_ratio_f,
    scaled_argument,
    sw_direct,
    sw_normalized,
    sw_theta_normalized,
)

from _oracles import normalized_reference, qpoch_product, sw_sum

GRID_Q = (0.3, 0.5, 0.8)
GRID_Z = (1.0 + 0j, 2.0 + 0j, 0.5 + 1.0j, cmath.exp(1j * math.pi / 3.0))
GRID_TAU = ("-3/2", "-1/2", "0", "1/2")
GRID_THETA = ("0", "1/4", "sqrt2-1")


def make_scaling(tau: str, theta: str) -> Scaling:
    return Scaling.make(tau, theta)


class TestSwDirect:
    def test_degree_zero(self):
        assert sw_direct(0, 123.0 + 4j, 0.5) == 1.0

    def test_degree_one_root(self):
        assert sw_direct(1, 2.0, 0.5) == pytest.approx(0.0, abs=1e-15)

    def test_at_origin(self):
        assert sw_direct(3, 0.0, 0.5).real == pytest.approx(3.0476190476190474, rel=1e-14)

    def test_matches_oracle(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            n = int(rng.integers(0, 16))
            x = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            q = rng.choice(GRID_Q)
            assert sw_direct(n, x, q) == pytest.approx(sw_sum(n, x, q), rel=1e-11, abs=1e-13)

    def test_degree_cap(self):
        with pytest.raises(DomainTooLarge):
            sw_direct(31, 1.0, 0.5)

    def test_polynomial_degree_via_finite_differences(self):
        # the (n+1)-th forward difference of a degree-n polynomial vanishes
        n, h, q = 5, 0.25, 0.5
        vals = [sw_direct(n, 1.0 + j * h, q) for j in range(n + 2)]
        diff = sum((-1) ** j * math.comb(n + 1, j) * vals[n + 1 - j] for j in range(n + 2))
        scale = max(abs(v) for v in vals)
        assert abs(diff) <= 1e-9 * scale


class TestSwNormalized:
    def test_hand_expansion_degree_one(self):
        sc = make_scaling("1", "0")
        assert sw_normalized(1, 1.0, sc, 0.5) == pytest.approx(1.5, rel=1e-14)

    def test_decaying_regime_limit(self):
        sc = make_scaling("1", "3/10")
        val = sw_normalized(50, 1.0, sc, 0.5) * qq_infinity(0.5)
        assert abs(val - 1.0) < 1e-14

    def test_zero_argument(self):
        with pytest.raises(ZeroArgument):
            sw_normalized(3, 0.0, make_scaling("1", "0"), 0.5)

    def test_peak_overflow_guard(self):
        sc = make_scaling("-3/2", "0")
        with pytest.raises(PeakOverflow):
            sw_normalized(2000, 1.0, sc, 0.3)

    def test_matches_small_degree_reference(self):
        for q in GRID_Q:
            for z in GRID_Z:
                for tau in GRID_TAU:
                    sc = make_scaling(tau, "1/4")
                    for n in (1, 5, 12):
                        ref = normalized_reference(n, z, sc.tau.value, 0.25, q)
                        val = sw_normalized(n, z, sc, q)
                        assert val == pytest.approx(ref, rel=1e-9)

    def test_library_normalizer_matches_direct_route(self):
        sc = make_scaling("-1/2", "sqrt2-1")
        q = 0.5
        for n in (2, 7, 11):
            x = scaled_argument(1.0 + 0.5j, n, sc, q)
            ref = sw_direct(n, x, q) * cmath.exp(-log_normalizer(n, 1.0 + 0.5j, sc, q))
            assert sw_normalized(n, 1.0 + 0.5j, sc, q) == pytest.approx(ref, rel=1e-9)


class TestSplitSum:
    def test_requires_strip_tau(self):
        with pytest.raises(BadTau):
            sw_theta_normalized(5, 1.0, make_scaling("1/2", "0"), 0.5)
        with pytest.raises(BadTau):
            sw_theta_normalized(5, 1.0, make_scaling("-2", "0"), 0.5)

    def test_bookkeeping(self):
        sc = make_scaling("-1/2", "1/4")
        for n in (1, 2, 3, 10, 11, 101):
            res = sw_theta_normalized(n, 1.0 + 0.5j, sc, 0.5)
            assert res.m == math.floor(0.5 * n)
            assert res.m + res.c_n == pytest.approx(0.5 * n, abs=1e-12)
            assert res.d_n == (Fraction(1, 4) * n) % 1
            assert res.chi_m == res.m % 2
            assert res.value == res.s1 + res.s2
            assert 0.0 <= res.c_n < 1.0

    def test_degenerate_small_m(self):
        # for n = 1, m = 0: the ascending half is the single k = 0 term
        sc = make_scaling("-1/2", "1/4")
        res = sw_theta_normalized(1, 2.0, sc, 0.5)
        assert res.m == 0 and res.half_m == 0
        e00 = poch_tail_ratio_e(0, 1, 0, 0.5)
        assert res.s1 == pytest.approx(complex(e00), rel=1e-13)

    def test_matches_reversed_sum_after_renormalization(self):
        for q in GRID_Q:
            for z in GRID_Z:
                for tau in ("-3/2", "-1/2"):
                    for theta in GRID_THETA:
                        sc = make_scaling(tau, theta)
                        for n in (1, 4, 9, 12):
                            base = sw_normalized(n, z, sc, q)
                            lifted = base * cmath.exp(log_theta_normalizer(n, z, sc, q))
                            split = sw_theta_normalized(n, z, sc, q)
                            assert split.value == pytest.approx(lifted, rel=1e-8)

    def test_explicit_m_decomposition(self):
        # a witness decomposition with its own m shifts the bookkeeping but
        # still reproduces the same underlying polynomial value
        sc = Scaling.make(RealParam.irrational(-(math.sqrt(2.0) - 1.0)), "1/4")
        q, z, n = 0.5, 1.0 + 0.5j, 12
        m_floor, _ = sc.minus_tau_split(n)
        for m in (m_floor, m_floor + 1):
            split = sw_theta_normalized(n, z, sc, q, m=m)
            lifted = sw_normalized(n, z, sc, q) * cmath.exp(log_theta_normalizer(n, z, sc, q, m=m))
            assert split.value == pytest.approx(lifted, rel=1e-8)
            assert split.m == m

    def test_converges_to_theta_wing_sum(self):
        # along n = 0 (mod 4) the split evaluation settles on the bilateral
        # series at -z (both fractional targets vanish and m stays even)
        from swigert.qspecial import theta_series

        sc = make_scaling("-1/2", "1/4")
        z, q = 1.0 + 0.5j, 0.5
        limit = theta_series(-z, q, 1e-13).value
        gaps = []
        for n in (40, 80, 160):
            res = sw_theta_normalized(n, z, sc, q)
            assert res.chi_m == 0 and res.c_n == 0.0 and res.d_n == 0.0
            gaps.append(abs(res.value - limit))
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[-1] < 1e-10

    def test_zero_argument(self):
        with pytest.raises(ZeroArgument):
            sw_theta_normalized(3, 0.0, make_scaling("-1/2", "0"), 0.5)


class TestPochTailRatios:
    def test_always_in_unit_interval(self):
        rng = np.random.default_rng(32)
        for _ in range(300):
            q = rng.choice(GRID_Q)
            n = int(rng.integers(1, 200))
            m = int(rng.integers(0, n))
            half = m // 2
            k_e = int(rng.integers(0, half + 1))
            assert 0.0 < poch_tail_ratio_e(k_e, n, m, q) <= 1.0
            if n - half >= 1:
                k_f = int(rng.integers(1, n - half + 1))
                assert 0.0 < poch_tail_ratio_f(k_f, n, m, q) <= 1.0

    def test_e_limit_at_full_offset(self):
        # k = m//2 collapses the first factor; the ratio tends to (q;q)_inf
        q = 0.5
        for n in (50, 200, 800):
            m = n // 2
            val = poch_tail_ratio_e(m // 2, n, m, q)
            assert val == pytest.approx(qq_infinity(q), rel=1e-10)

    def test_f_boundary_value(self):
        q, n, m = 0.5, 40, 20
        val = poch_tail_ratio_f(n - m // 2, n, m, q)
        expected = qq_infinity(q) ** 2 / qpoch_product(q, q, n)
        assert val == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("q", GRID_Q)
    def test_near_one_window(self, q):
        # both ratios stay within the certified distance of 1 while the
        # index is at least nu away from either edge of its window
        growth = qpoch_infinite(-(q**3), q, 1e-13).real
        for tau in (-0.5, -1.0):
            for n in (40, 120, 400):
                m = math.floor(-tau * n)
                nu = min(math.floor((2.0 + tau) * n / 8.0), math.floor(-tau * n / 8.0))
                if nu < 1:
                    continue
                cap = 3.0 * growth**2 * q ** (nu + 2) / (1.0 - q) ** 2
                for k in range(0, nu):
                    assert abs(poch_tail_ratio_e(k, n, m, q) - 1.0) <= cap
                for k in range(1, nu):
                    assert abs(poch_tail_ratio_f(k, n, m, q) - 1.0) <= cap

    def test_index_windows(self):
        with pytest.raises(IndexOutOfRange):
            poch_tail_ratio_e(6, 20, 10, 0.5)
        with pytest.raises(IndexOutOfRange):
            poch_tail_ratio_f(0, 20, 10, 0.5)
        with pytest.raises(IndexOutOfRange):
            poch_tail_ratio_f(16, 20, 10, 0.5)


class TestScaledArgument:
    def test_small_degree_value(self):
        sc = make_scaling("1", "0")
        x = scaled_argument(1.0, 3, sc, 0.5)
        assert x == pytest.approx(0.5 ** (-9), rel=1e-13)

    def test_overflow_guard(self):
        sc = make_scaling("1", "0")
        with pytest.raises(PeakOverflow):
            scaled_argument(1.0, 10**4, sc, 0.5)
