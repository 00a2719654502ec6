import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mqshape import (
    CriterionKind,
    Mode,
    ProblemSpec,
    Regime,
    SpecError,
    derive_constants,
    kind_for,
    log_h_beta_neg1_multid,
    log_h_beta_neg1_oned,
    log_h_beta_pos,
    log_h_general,
    log_h_unified,
    log_lambda_pow,
    regime_for,
    sample_curve,
    xi_star,
)
from mqshape.criterion import (
    case2_sq_derivative,
    log_h_beta_neg1_multid_simplified,
    oned_threshold,
)

ONE_D_ARGMIN_SIGMA1 = 0.5166224878150684  # bounded-search oracle


def _spec(n=1, beta=-1.0, sigma=1.0, delta=0.01, b0=None, mode=Mode.PRACTICAL):
    return ProblemSpec(n=n, beta=beta, sigma=sigma, delta=delta, b0=b0, mode=mode)


class TestXiStar:
    def test_perfect_square_discriminant(self):
        assert xi_star(1.0, 1.0, 2.0) == pytest.approx(1.0, rel=1e-15)

    def test_zero_q_collapses_radical(self):
        assert xi_star(2.0, 1.0, 0.0) == pytest.approx(1.0, rel=1e-15)

    def test_branch_point_identity(self):
        # at c = 2/sqrt(3 sigma) with q = 1 the critical point equals 1/c
        c = 2.0 / math.sqrt(3.0)
        assert xi_star(c, 1.0, 1.0) == pytest.approx(math.sqrt(3.0) / 2.0, rel=1e-14)
        for sigma in (0.25, 1.0, 4.0):
            c = oned_threshold(sigma)
            assert xi_star(c, sigma, 1.0) == pytest.approx(1.0 / c, rel=1e-13)

    @given(
        st.floats(min_value=1e-8, max_value=1e8),
        st.floats(min_value=1e-4, max_value=1e4),
        st.floats(min_value=0.0, max_value=50.0),
    )
    def test_solves_defining_quadratic(self, c, sigma, q):
        xs = xi_star(c, sigma, q)
        resid = q / 2.0 + c * xs - 2.0 * xs * xs / sigma
        scale = max(q / 2.0, c * xs, 2.0 * xs * xs / sigma)
        assert abs(resid) <= 1e-10 * scale

    def test_huge_c_does_not_overflow(self):
        assert math.isfinite(xi_star(1e160, 1.0, 5.0))

    def test_rejects_bad_inputs(self):
        with pytest.raises(SpecError):
            xi_star(0.0, 1.0, 1.0)
        with pytest.raises(SpecError):
            xi_star(1.0, -1.0, 1.0)
        with pytest.raises(SpecError):
            xi_star(1.0, 1.0, -0.5)


class TestMultiDimCriterion:
    def test_two_forms_agree_at_reference_point(self):
        a = log_h_beta_neg1_multid(1.0, 2, 1.0)
        b = log_h_beta_neg1_multid_simplified(1.0, 2, 1.0)
        assert a == pytest.approx(b, abs=1e-12)
        assert a == pytest.approx(math.log(2.0), rel=1e-14)

    def test_two_forms_agree_over_random_draws(self):
        rng = np.random.default_rng(11)
        worst = 0.0
        for _ in range(1000):
            c = float(10.0 ** rng.uniform(-3, 3))
            n = int(rng.integers(2, 7))
            sigma = float(rng.uniform(0.1, 10.0))
            a = log_h_beta_neg1_multid(c, n, sigma)
            b = log_h_beta_neg1_multid_simplified(c, n, sigma)
            worst = max(worst, abs(a - b) / max(1.0, abs(a)))
        assert worst < 1e-10

    def test_blows_up_at_both_ends(self):
        mid = log_h_beta_neg1_multid(1.0, 2, 1.0)
        assert log_h_beta_neg1_multid(1e-6, 2, 1.0) > mid
        assert log_h_beta_neg1_multid(1e3, 2, 1.0) > mid

    def test_rejects_dimension_one(self):
        with pytest.raises(SpecError):
            log_h_beta_neg1_multid(1.0, 1, 1.0)


class TestOneDimCriterion:
    @pytest.mark.parametrize("sigma", [0.25, 1.0, 4.0])
    def test_branch_continuity(self, sigma):
        t = oned_threshold(sigma)
        below = log_h_beta_neg1_oned(t, sigma)
        above = log_h_beta_neg1_oned(t * (1.0 + 1e-14), sigma)
        assert abs(below - above) < 1e-10

    def test_minimum_near_heuristic_location(self):
        cs = np.geomspace(0.05, 20.0, 4001)
        vals = [log_h_beta_neg1_oned(float(c), 1.0) for c in cs]
        c_star = float(cs[int(np.argmin(vals))])
        assert 0.4 < c_star < 0.8
        assert c_star == pytest.approx(ONE_D_ARGMIN_SIGMA1, rel=2e-3)

    def test_nondecreasing_beyond_branch_point(self):
        cs = np.geomspace(oned_threshold(1.0), 1e3, 100)
        vals = [log_h_beta_neg1_oned(float(c), 1.0) for c in cs]
        assert all(vals[i + 1] >= vals[i] for i in range(len(vals) - 1))

    def test_small_branch_derivative_expression(self):
        # the closed-form derivative of H^2 matches a central difference
        for sigma in (0.5, 1.0, 2.0):
            c = 1.0 / math.sqrt(3.0 * sigma)
            h = 1e-6 * c

            def h_sq(x):
                return math.exp(2.0 * log_h_beta_neg1_oned(x, sigma))

            fd = (h_sq(c + h) - h_sq(c - h)) / (2.0 * h)
            expr = case2_sq_derivative(c, sigma)
            assert expr == pytest.approx(fd, rel=1e-6)
            # at this c the expression collapses to a fixed multiple of sigma
            closed = (
                (-3.0 * math.e ** 2 + 30.0 * math.sqrt(3.0) * math.log(2.0))
                * sigma
                / (math.e ** 2 * math.log(2.0))
            )
            assert expr == pytest.approx(closed, rel=1e-12)

    def test_rejects_nonpositive_c(self):
        with pytest.raises(SpecError):
            log_h_beta_neg1_oned(0.0, 1.0)

    def test_finite_below_square_underflow(self):
        # c^2 underflows to zero here; only the constant term survives
        v = log_h_beta_neg1_oned(1e-200, 1.0)
        expected = -0.5 * math.log(1e-200) + 0.5 * math.log(1.0 / math.log(2.0))
        assert v == pytest.approx(expected, rel=1e-13)


class TestPositiveBetaCriterion:
    def test_interior_critical_point(self):
        # n=3, beta=1, sigma=1: the curve dips exactly at 1/sqrt(6)
        c0 = 1.0 / math.sqrt(6.0)
        below = log_h_beta_pos(c0 * 0.999, 3, 1.0, 1.0)
        above = log_h_beta_pos(c0 * 1.001, 3, 1.0, 1.0)
        at = log_h_beta_pos(c0, 3, 1.0, 1.0)
        assert at < below and at < above
        assert log_h_beta_pos(1e-6, 3, 1.0, 1.0) > at
        assert log_h_beta_pos(1e3, 3, 1.0, 1.0) > at

    def test_nondecreasing_when_no_interior_point(self):
        # n=1, beta=1: 1+beta-n >= 0, curve never descends
        spec = _spec(n=1, beta=1.0, delta=0.01)
        dc = derive_constants(spec)
        cs = np.geomspace(dc.log_c_min.value, 1e3, 100)
        vals = [log_h_beta_pos(float(c), 1, 1.0, 1.0) for c in cs]
        assert all(vals[i + 1] >= vals[i] for i in range(len(vals) - 1))

    def test_rejects_negative_beta(self):
        with pytest.raises(SpecError):
            log_h_beta_pos(1.0, 1, -1.0, 1.0)


class TestGeneralCore:
    def test_offset_from_specialized_form(self):
        # the core and the beta=-1 multidim criterion differ by the exact
        # constant (n/4) log(4/sigma), independent of c
        rng = np.random.default_rng(12)
        for _ in range(300):
            c = float(10.0 ** rng.uniform(-3, 3))
            n = int(rng.integers(2, 7))
            sigma = float(rng.uniform(0.1, 10.0))
            core = log_h_general(c, n, -1.0, sigma)
            special = log_h_beta_neg1_multid(c, n, sigma)
            offset = 0.25 * n * math.log(4.0 / sigma)
            assert core + offset == pytest.approx(special, abs=1e-10 * max(1.0, abs(special)))

    def test_exact_match_at_sigma_four(self):
        rng = np.random.default_rng(13)
        for _ in range(200):
            c = float(10.0 ** rng.uniform(-3, 3))
            n = int(rng.integers(2, 7))
            a = log_h_general(c, n, -1.0, 4.0)
            b = log_h_beta_neg1_multid(c, n, 4.0)
            assert a == pytest.approx(b, abs=1e-10 * max(1.0, abs(b)))

    def test_matches_positive_beta_form(self):
        assert log_h_general(0.7, 2, 1.5, 1.0) == log_h_beta_pos(0.7, 2, 1.5, 1.0)

    def test_rejects_uncovered_combination(self):
        with pytest.raises(SpecError):
            log_h_general(1.0, 1, -1.5, 1.0)  # |n+beta| < 1


class TestRegimeSelection:
    def test_most_specific_regime(self):
        assert regime_for(2, -1.0) is Regime.BETA_NEG1_MULTI
        assert regime_for(1, -1.0) is Regime.BETA_NEG1_1D
        assert regime_for(1, 1.0) is Regime.BETA_POS
        assert regime_for(1, -2.0) is Regime.GENERAL
        assert regime_for(3, -1.5) is Regime.GENERAL

    def test_unsupported_combination(self):
        with pytest.raises(SpecError):
            regime_for(1, -2.5)  # n + beta + 1 < 0
        with pytest.raises(SpecError):
            regime_for(2, -2.0)  # |n + beta| = 0


class TestLambdaFactor:
    def test_practical_mode_refuses(self):
        spec = _spec(b0=1.0)
        dc = derive_constants(spec)
        with pytest.raises(SpecError):
            log_lambda_pow(1.0, spec, dc)

    def test_value_at_knee(self):
        spec = _spec(b0=1.0, mode=Mode.FIXED_B0)
        dc = derive_constants(spec)
        c0 = dc.log_c0.value
        expected = 12.5 * math.log(2.0 / 3.0)  # b0/(4 gamma_n delta) = 12.5
        assert log_lambda_pow(c0, spec, dc) == pytest.approx(expected, rel=1e-13)

    def test_continuity_at_knee_random_specs(self):
        rng = np.random.default_rng(14)
        for _ in range(100):
            n = int(rng.integers(1, 4))
            beta = float(rng.choice([-1.0, 1.0, 3.0, -0.5]))
            spec = ProblemSpec(
                n=n,
                beta=beta,
                sigma=float(rng.uniform(0.2, 5.0)),
                delta=float(10.0 ** rng.uniform(-8, -1)),
                b0=float(rng.uniform(0.5, 4.0)),
                mode=Mode.FIXED_B0,
            )
            dc = derive_constants(spec)
            c0 = dc.log_c0.value
            below = log_lambda_pow(c0 * (1.0 - 1e-13), spec, dc)
            at = log_lambda_pow(c0, spec, dc)
            assert below == pytest.approx(at, rel=1e-12)

    def test_constant_beyond_knee(self):
        spec = _spec(n=2, b0=1.5, delta=1e-3, mode=Mode.FIXED_B0)
        dc = derive_constants(spec)
        c0 = dc.log_c0.value
        v1 = log_lambda_pow(2.0 * c0, spec, dc)
        v2 = log_lambda_pow(10.0 * c0, spec, dc)
        assert v1 == pytest.approx(v2, rel=1e-14)

    def test_nonincreasing_in_c(self):
        spec = _spec(b0=1.0, delta=0.05, mode=Mode.FIXED_B0)
        dc = derive_constants(spec)
        cs = np.geomspace(1e-3, 10.0 * dc.log_c0.value, 300)
        vals = [log_lambda_pow(float(c), spec, dc) for c in cs]
        assert all(vals[i + 1] <= vals[i] + 1e-15 for i in range(len(vals) - 1))

    def test_dilation_invariant_is_pure_exponential(self):
        spec = _spec(delta=0.02, mode=Mode.DILATION_INVARIANT)
        dc = derive_constants(spec)
        eta = math.log(2.0 / 3.0) / (12.0 * math.exp(4.0) * 2.0 * spec.delta)
        rng = np.random.default_rng(15)
        for _ in range(50):
            c = float(10.0 ** rng.uniform(-3, 6))
            assert log_lambda_pow(c, spec, dc) == pytest.approx(eta * c, rel=1e-12)


class TestUnified:
    def test_practical_dispatch(self):
        spec = _spec(n=2, delta=1e-3)
        dc = derive_constants(spec)
        kind = kind_for(spec)
        assert kind.regime is Regime.BETA_NEG1_MULTI
        assert log_h_unified(0.8, spec, dc, kind) == log_h_beta_neg1_multid(0.8, 2, 1.0)

    def test_fixed_b0_equals_practical_plus_constant_beyond_knee(self):
        spec_fb = _spec(b0=1.0, delta=0.01, mode=Mode.FIXED_B0)
        spec_pr = _spec(b0=1.0, delta=0.01, mode=Mode.PRACTICAL)
        dc_fb = derive_constants(spec_fb)
        dc_pr = derive_constants(spec_pr)
        c0 = dc_fb.log_c0.value
        shift = math.log(2.0 / 3.0) * spec_fb.b0 / (4.0 * dc_fb.gamma_n * spec_fb.delta)
        for c in (c0, 2.0 * c0, 7.3 * c0):
            base = log_h_unified(c, spec_pr, dc_pr, kind_for(spec_pr))
            diff = log_h_unified(c, spec_fb, dc_fb, kind_for(spec_fb)) - base
            # cancellation in the two large core values bounds the accuracy
            assert diff == pytest.approx(shift, abs=1e-12 * max(1.0, abs(base)))

    def test_general_core_kind_accepted_for_specialized_spec(self):
        spec = _spec(n=2, delta=1e-3)
        dc = derive_constants(spec)
        kind = CriterionKind(Regime.GENERAL, Mode.PRACTICAL)
        assert log_h_unified(1.0, spec, dc, kind) == log_h_general(1.0, 2, -1.0, 1.0)

    def test_mode_mismatch_rejected(self):
        spec = _spec(b0=1.0)
        dc = derive_constants(spec)
        with pytest.raises(SpecError):
            log_h_unified(1.0, spec, dc, CriterionKind(Regime.BETA_NEG1_1D, Mode.FIXED_B0))

    def test_regime_mismatch_rejected(self):
        spec = _spec(n=1, beta=-1.0)
        dc = derive_constants(spec)
        with pytest.raises(SpecError):
            log_h_unified(1.0, spec, dc, CriterionKind(Regime.BETA_POS, Mode.PRACTICAL))

    @pytest.mark.parametrize(
        "n, beta, mode",
        [
            (1, -1.0, Mode.PRACTICAL),
            (1, -1.0, Mode.FIXED_B0),
            (1, -1.0, Mode.DILATION_INVARIANT),
            (2, -1.0, Mode.FIXED_B0),
            (3, 1.0, Mode.FIXED_B0),
            (1, 1.0, Mode.DILATION_INVARIANT),
            (4, -1.0, Mode.FIXED_B0),
            (4, 1.0, Mode.PRACTICAL),
            (1, -2.0, Mode.FIXED_B0),
        ],
    )
    def test_finite_over_wide_range(self, n, beta, mode):
        spec = ProblemSpec(n=n, beta=beta, sigma=1.0, delta=0.01, b0=1.0, mode=mode)
        dc = derive_constants(spec)
        kind = kind_for(spec)
        lo = 1e-300
        if dc.log_c_min.log_value < math.log(1e10):
            lo = max(lo, dc.log_c_min.value * 1e-3)
        for c in np.geomspace(lo, 1e10, 60):
            assert math.isfinite(log_h_unified(float(c), spec, dc, kind))


class TestSampleCurve:
    def test_two_samples_hit_endpoints(self):
        spec = _spec(n=2, delta=1e-3)
        dc = derive_constants(spec)
        samples = sample_curve(spec, dc, kind_for(spec), 0.5, 7.0, 2)
        assert [s.c for s in samples] == [0.5, 7.0]

    def test_strictly_increasing_in_c(self):
        spec = _spec(n=2, delta=1e-3)
        dc = derive_constants(spec)
        samples = sample_curve(spec, dc, kind_for(spec), 0.1, 100.0, 257)
        cs = [s.c for s in samples]
        assert all(cs[i + 1] > cs[i] for i in range(len(cs) - 1))

    def test_fixed_b0_curve_argmin_left_of_knee(self):
        # classic setup: small delta pushes the optimum to the admissible
        # left endpoint, which sits below the knee c0
        spec = _spec(b0=1.0, delta=0.1, mode=Mode.FIXED_B0)
        dc = derive_constants(spec)
        c_min, c0 = dc.log_c_min.value, dc.log_c0.value
        samples = sample_curve(spec, dc, kind_for(spec), c_min, 10.0 * c0, 4000)
        best = min(samples, key=lambda s: s.log_h)
        assert best.c < c0

    def test_invalid_ranges_rejected(self):
        spec = _spec(n=2, delta=1e-3)
        dc = derive_constants(spec)
        with pytest.raises(SpecError):
            sample_curve(spec, dc, kind_for(spec), 1.0, 0.5, 10)
        with pytest.raises(SpecError):
            sample_curve(spec, dc, kind_for(spec), 0.5, 1.0, 1)
