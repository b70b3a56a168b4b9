import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fswcalc import (BundleClass, KahlerFamilyData, Route, fsw_general, fsw_terms, gamma,
                     gamma_closed, gamma_pushforward, gamma_triple_sum, gbinom, line_bundle,
                     point_ring, projective_space, pushforward_power, recursion_residual,
                     segre_of, sw_rewritten, sw_unparametrised, trivial)
from helpers import kahler_data, random_bundle, random_kahler, random_ring

ROUTES = (gamma_closed, gamma_triple_sum, gamma_pushforward)


class TestGbinom:
    @pytest.mark.parametrize("a, b, expected", [
        (5, 2, 10), (-1, 3, -1), (3, -1, 0), (0, 0, 1), (-2, 0, 1), (2, 5, 0), (-3, 2, 6),
    ])
    def test_values(self, a, b, expected):
        assert gbinom(a, b) == expected

    def test_negation_identity(self):
        for a in range(-10, 11):
            for b in range(0, 11):
                assert gbinom(a, b) == (-1) ** b * gbinom(b - a - 1, b)

    def test_vandermonde_chu_contraction(self):
        # sum_p C(-h2-j, p) C(h1-delta+i, m-delta+i-j-p) = C(h1-h2-delta+i-j, m-delta+i-j)
        for h1 in range(0, 5):
            for h2 in range(0, 5):
                for m in range(0, 5):
                    for delta in range(0, 4):
                        for i in range(max(delta - m, 0), delta + 1):
                            for j in range(0, i + 1):
                                top = m - delta + i - j
                                if top < 0:
                                    continue
                                lhs = sum(gbinom(-h2 - j, p) * gbinom(h1 - delta + i, top - p)
                                          for p in range(top + 1))
                                assert lhs == gbinom(h1 - h2 - delta + i - j, top)


class TestKahlerFamilyData:
    def test_rank_mismatch(self):
        R = projective_space(1)
        with pytest.raises(ValueError, match="V1"):
            KahlerFamilyData(R, 1, 2, 0, 0, trivial(R, 1), trivial(R, 1), trivial(R, 0),
                             trivial(R, 0))

    def test_other_ring(self):
        R = projective_space(1)
        with pytest.raises(ValueError, match="ring"):
            KahlerFamilyData(R, 1, 0, 0, 0, trivial(projective_space(2), 1), trivial(R, 0),
                             trivial(R, 0), trivial(R, 0))

    def test_trivial_constructor(self):
        R = projective_space(2)
        d = KahlerFamilyData.trivial(R, 2, 1, 0, 1)
        assert d.obstruction_rank == 2 and d.chi == 1 and d.delta(1, 3) == 3

    def test_negative_indices(self):
        d = KahlerFamilyData.trivial(point_ring(), 1, 0, 0, 0)
        with pytest.raises(ValueError):
            gamma_closed(d, -1, 0)
        with pytest.raises(ValueError):
            fsw_general(d, -1)


class TestGammaExamples:
    @pytest.mark.parametrize("route", ROUTES)
    def test_h0_zero(self, route):
        d = KahlerFamilyData.trivial(projective_space(2), 0, 2, 1, 1)
        for m in range(3):
            for n in range(4):
                assert route(d, m, n).value == 0

    @pytest.mark.parametrize("route", ROUTES)
    def test_point_base_delta_zero(self, route):
        for h0, h1, h2, m in [(3, 2, 0, 2), (1, 0, 2, 0), (4, 1, 3, 2), (2, 4, 1, 1)]:
            d = KahlerFamilyData.trivial(point_ring(), h0, h1, h2, 1)
            n = h0 - 1 - m
            if n < 0:
                continue
            assert route(d, m, n).value == (-1) ** n * gbinom(h1 - h2, m)

    @pytest.mark.parametrize("route", ROUTES)
    def test_projectivisation_case(self, route):
        R = projective_space(3)
        t = R.gen("t")
        V0 = BundleClass(R, 2, [R.one, 3 * t, -t * t])
        d = KahlerFamilyData.trivial(R, 2, 0, 0, 0, V0=V0)
        s = segre_of(V0)
        for n in range(6):
            assert route(d, 0, n).value == (-1) ** n * s[n - 1]

    def test_pushforward_trivial_v0(self):
        for h0 in range(1, 5):
            d = KahlerFamilyData.trivial(projective_space(2), h0, 0, 0, 0)
            assert gamma_pushforward(d, 0, h0 - 1).value == (-1) ** (h0 - 1)

    def test_result_metadata(self):
        d = KahlerFamilyData.trivial(projective_space(2), 2, 1, 0, 0)
        g = gamma(d, 1, 2, "triple")
        assert g.route is Route.TRIPLE_SUM and g.delta == 2


class TestPushforwardPower:
    def test_rules(self):
        R = projective_space(3)
        t = R.gen("t")
        V = BundleClass(R, 3, [R.one, 2 * t, t * t])
        assert pushforward_power(V, 1) == 0
        assert pushforward_power(V, 2) == 1
        assert pushforward_power(V, 3) == -V.c(1)
        assert pushforward_power(V, 4) == segre_of(V)[2]

    def test_empty_projectivisation(self):
        with pytest.raises(ValueError):
            pushforward_power(trivial(point_ring(), 0), 0)


@settings(max_examples=120, deadline=None)
@given(kahler_data())
def test_three_routes_agree(data):
    M = data.obstruction_rank
    for m in range(0, max(M, -1) + 1):
        for n in range(0, data.h0 + 4):
            vals = [r(data, m, n).value for r in ROUTES]
            assert vals[0] == vals[1] == vals[2]


@settings(max_examples=120, deadline=None)
@given(kahler_data())
def test_recursion_relation(data):
    M = data.obstruction_rank
    for m in range(0, max(M, -1) + 1):
        for n in range(0, data.h0 + 4):
            assert recursion_residual(data, m, n).is_zero()
            assert recursion_residual(data, m, n, Route.PUSHFORWARD).is_zero()


@settings(max_examples=120, deadline=None)
@given(kahler_data())
def test_gamma_homogeneous(data):
    M = data.obstruction_rank
    for m in range(0, max(M, -1) + 1):
        for n in range(0, data.h0 + 4):
            g = gamma_pushforward(data, m, n)
            if not g.value.is_zero():
                assert g.value.is_homogeneous(2 * g.delta)


class TestFswGeneral:
    def test_below_range_vanishes(self):
        rng = random.Random(11)
        for _ in range(30):
            d = random_kahler(rng)
            M = d.obstruction_rank
            for n in range(0, max(0, d.h0 - 1 - M)):
                assert fsw_general(d, n) == 0

    def test_negative_upper_bound(self):
        d = KahlerFamilyData.trivial(projective_space(2), 2, 0, 3, 1)
        assert d.obstruction_rank < 0
        assert fsw_terms(d, 1) == []
        assert all(fsw_general(d, n) == 0 for n in range(5))

    def test_point_base(self):
        for h0 in range(1, 7):
            for h1 in range(5):
                for h2 in range(5):
                    for rho in range(4):
                        d = KahlerFamilyData.trivial(point_ring(), h0, h1, h2, rho)
                        M = d.obstruction_rank
                        for n in range(0, h0 + 4):
                            expected = 0
                            if M >= 0 and n == h0 - 1 - M:
                                expected = (-1) ** n * gbinom(h1 - h2, M)
                            assert fsw_general(d, n) == expected

    def test_projectivisation_data(self):
        rng = random.Random(3)
        R = projective_space(3)
        for _ in range(10):
            V0 = random_bundle(rng, R, rng.randint(1, 4))
            d = KahlerFamilyData.trivial(R, V0.rank, 0, 0, 0, V0=V0)
            for n in range(0, V0.rank + 3):
                assert fsw_general(d, n) == (-1) ** n * segre_of(V0)[n - V0.rank + 1]

    def test_h20_weights(self):
        R = projective_space(2)
        t = R.gen("t")
        d = KahlerFamilyData.trivial(R, 2, 1, 0, 1, H20=line_bundle(2 * t))
        assert d.obstruction_rank == 2
        for n in range(4):
            # c_2(H20) = 0 for a line bundle, so only m = 1, 2 contribute
            expected = d.H20.c(1) * gamma_closed(d, 1, n).value + gamma_closed(d, 2, n).value
            assert fsw_general(d, n) == expected
        assert fsw_general(d, 0) != 0

    @pytest.mark.parametrize("route", list(Route))
    def test_routes_agree_on_random_data(self, route):
        rng = random.Random(5)
        for _ in range(25):
            d = random_kahler(rng, random_ring(rng))
            for n in range(0, d.h0 + 3):
                assert fsw_general(d, n, route) == fsw_general(d, n)


class TestUnparametrised:
    def test_kahler_chamber(self):
        assert sw_unparametrised(1, 0, 0, 0) == (1, True)
        assert sw_unparametrised(2, 1, 0, 0).value == 1

    def test_binomial_case(self):
        v = sw_unparametrised(1, 0, 2, 2, chi=3)
        assert v == (1, False)
        assert sw_rewritten(1, 2) == 1
        assert sw_unparametrised(3, 0, 3, 2).value == gbinom(-3, -1)

    def test_zero_cases(self):
        assert sw_unparametrised(0, 1, 0, 2).value == 0
        assert sw_unparametrised(1, 3, 0, 0).value == 0  # chi < 1

    def test_chi_consistency(self):
        with pytest.raises(ValueError, match="chi"):
            sw_unparametrised(1, 0, 0, 0, chi=5)

    def test_rewritten_form_agrees(self):
        for h0 in range(1, 8):
            for rho in range(1, 6):
                for h2 in range(0, 8):
                    h1 = h0 + h2 - rho - 1  # chi = rho + 1
                    if h1 < 0 or h1 - h2 >= 0:
                        continue
                    assert sw_unparametrised(h0, h1, h2, rho).value == sw_rewritten(h0, rho)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 6), st.integers(0, 4), st.integers(0, 4), st.integers(0, 3))
def test_point_base_magnitude(h0, h1, h2, rho):
    d = KahlerFamilyData.trivial(point_ring(), h0, h1, h2, rho)
    n = h0 - 1 - d.obstruction_rank
    if h0 == 0 or rho == 0 or n < 0:
        return
    assert abs(fsw_general(d, n).constant()) == abs(sw_unparametrised(h0, h1, h2, rho).value)
