"""Digit-string field model: parameters, scales, norms, distances, coordinates."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padiclab import (
    Center,
    FieldParams,
    count_g,
    dist,
    from_lg,
    norm,
    pi_power,
    to_lg,
)

P211 = FieldParams(2, 1, 1)
P311 = FieldParams(3, 1, 1)
P221 = FieldParams(2, 2, 1)
P212 = FieldParams(2, 1, 2)
ALL_PARAMS = [P211, P311, P221, P212]


class TestFieldParams:
    def test_prime_validation(self):
        with pytest.raises(ValueError):
            FieldParams(6, 1, 1)
        with pytest.raises(ValueError):
            FieldParams(1, 1, 1)
        with pytest.raises(ValueError):
            FieldParams(2, 0, 1)
        with pytest.raises(ValueError):
            FieldParams(2, 1, 0)

    def test_derived_quantities(self):
        assert P211.q_res == 2
        assert P212.q_res == 4
        assert P211.ef == 1
        assert P221.ef == 2
        assert P211.q == 0.25
        assert P211.Q == 4.0
        assert P221.q == 0.5
        assert P311.Q == 9.0

    def test_scale_exactness(self):
        s = P221.scale(1)
        assert s.to_float() == pytest.approx(2**0.5, rel=1e-15)
        assert P211.scale_float(-3) == 0.125


class TestScaleOrdering:
    def test_ordering(self):
        assert P211.scale(-2) < P211.scale(-1) < P211.scale(0)
        assert P211.scale(0).to_float() == 1.0

    def test_zero_scale_from_norm(self):
        z = norm(Center(P211, 0, (0, 0)))
        assert z.is_zero
        assert z.to_float() == 0.0
        assert z < P211.scale(-100)

    def test_incompatible_comparison_rejected(self):
        with pytest.raises(ValueError):
            _ = P211.scale(0) < P311.scale(0)


class TestNorm:
    def test_frozen_values(self):
        # |pi| = p**(-1/e)
        assert norm(Center(P211, 0, (0, 1))).to_float() == 0.5
        assert norm(Center(P221, 0, (0, 1))).to_float() == pytest.approx(
            2**-0.5, rel=1e-15
        )
        # A leading nonzero digit is a unit: norm 1, whatever p, e, f.
        assert norm(Center(P221, 0, (1,))).to_float() == 1.0
        assert norm(Center(P211, 0, (1, 0, 1))).to_float() == 1.0
        assert norm(Center(P311, 0, (0, 0, 2))).to_float() == pytest.approx(1 / 9)

    def test_negative_start(self):
        # Element pi**(-1) * unit has norm p**(1/e).
        c = Center(P211, -1, (1, 0))
        assert norm(c).to_float() == 2.0

    def test_trailing_zeros_do_not_matter(self):
        assert norm(Center(P211, 0, (0, 1))) == norm(Center(P211, 0, (0, 1, 0, 0)))


class TestDist:
    def test_frozen_values(self):
        assert dist(Center(P211, 0, (1, 0)), Center(P211, 0, (1, 1))).to_float() == 0.5
        assert dist(Center(P311, 0, (1, 0)), Center(P311, 0, (1, 2))).to_float() == (
            pytest.approx(1 / 3)
        )

    def test_same_center_distance_zero(self):
        c = Center(P211, 0, (1, 0))
        assert dist(c, c).is_zero

    def test_mismatched_windows_rejected(self):
        with pytest.raises(ValueError):
            dist(Center(P211, 0, (1,)), Center(P211, 0, (1, 0)))
        with pytest.raises(ValueError):
            dist(Center(P211, 0, (1, 0)), Center(P211, 1, (1, 0)))

    @settings(max_examples=200, deadline=None)
    @given(
        data=st.data(),
        depth=st.integers(min_value=1, max_value=6),
    )
    def test_ultrametric_inequality(self, data, depth):
        params = data.draw(st.sampled_from(ALL_PARAMS))
        digit = st.integers(min_value=0, max_value=params.q_res - 1)
        xs = data.draw(st.tuples(*[digit] * depth))
        ys = data.draw(st.tuples(*[digit] * depth))
        zs = data.draw(st.tuples(*[digit] * depth))
        x, y, z = (Center(params, 0, d) for d in (xs, ys, zs))
        dxz = dist(x, z)
        bound = max(dist(x, y), dist(y, z))
        assert dxz <= bound or dxz == bound


class TestLGCoordinates:
    def test_frozen_example(self):
        lg = to_lg(Center(P211, 0, (0, 1, 0)))
        assert (lg.l, lg.m, lg.g_tail) == (1, 2, (1, 0))

    def test_zero_ball(self):
        lg = to_lg(Center(P211, 0, (0, 0, 0)))
        assert (lg.l, lg.m, lg.g_tail) == (3, 0, ())

    def test_nonzero_start_rejected(self):
        with pytest.raises(ValueError):
            to_lg(Center(P211, -1, (1, 0)))

    @settings(max_examples=200, deadline=None)
    @given(data=st.data(), depth=st.integers(min_value=1, max_value=6))
    def test_round_trip(self, data, depth):
        params = data.draw(st.sampled_from(ALL_PARAMS))
        digit = st.integers(min_value=0, max_value=params.q_res - 1)
        digits = data.draw(st.tuples(*[digit] * depth))
        x = Center(params, 0, digits)
        back = from_lg(params, depth, to_lg(x))
        assert back == x


class TestCountG:
    def test_frozen_values(self):
        assert count_g(P211, 0) == 1
        assert count_g(P211, 1) == 1
        assert count_g(P211, 2) == 2
        assert count_g(P311, 1) == 2
        assert count_g(P212, 1) == 3
        assert count_g(P212, 2) == 12

    @pytest.mark.parametrize("params", ALL_PARAMS)
    @pytest.mark.parametrize("M", [0, 1, 2, 3, 4])
    def test_total_count_is_ball_count(self, params, M):
        # Tail classes of length <= M partition the depth-M balls.
        assert sum(count_g(params, m) for m in range(M + 1)) == params.q_res**M


class TestPiPower:
    @pytest.mark.parametrize("params", ALL_PARAMS)
    @pytest.mark.parametrize("n", [0, 1, 3])
    def test_norm_of_pi_power(self, params, n):
        c = pi_power(params, n, n + 1)
        assert norm(c) == params.scale(-n)

    def test_digit_layout(self):
        c = pi_power(P211, 2, 4)
        assert c.digits == (0, 0, 1, 0)
        assert c.start == 0
