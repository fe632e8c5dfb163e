"""Lyapunov estimators: rational formula, Birkhoff averages, convergent
sweeps, and the trace-coefficient surrogate."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cocyclelab import (
    Cocycle,
    CocycleMap,
    NoConvergents,
    RationalInput,
    TorusFunction,
    TraceProfile,
    convergents,
    lyapunov_ergodic,
    lyapunov_from_trace,
    lyapunov_irrational,
    lyapunov_rational,
    schrodinger,
    trace_fourier_profile,
)
from cocyclelab.oracles import GOLDEN, amo_cocycle, amo_L, free_laplacian_L
from cocyclelab.torusfn import cosine

TWO_PI = 2.0 * math.pi


class TestConvergents:
    def test_golden_is_fibonacci(self):
        out = convergents(GOLDEN, q_max=100)
        qs = [ra.q for ra in out]
        assert qs == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
        ps = [ra.p for ra in out]
        assert ps == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]

    def test_approximation_quality(self):
        # |alpha - p/q| < 1/q^2 for every convergent
        for ra in convergents(0.123456789012, q_max=10_000):
            assert ra.err < 1.0 / ra.q**2

    def test_rational_input_detected(self):
        with pytest.raises(RationalInput):
            convergents(0.5)

    def test_no_convergents(self):
        with pytest.raises(NoConvergents):
            convergents(GOLDEN, q_max=0)

    @given(st.floats(1e-4, 1.0 - 1e-4))
    @settings(max_examples=40, deadline=None)
    def test_errors_decrease(self, alpha):
        try:
            out = convergents(alpha, q_max=10_000)
        except RationalInput:
            return
        errs = [ra.err for ra in out if ra.err > 0]
        assert all(b < a for a, b in zip(errs, errs[1:]))


class TestRationalFormula:
    def test_identity_map(self):
        c = Cocycle(0.0, CocycleMap.constant(np.eye(2)), rational=Fraction(1, 3))
        assert lyapunov_rational(c) == pytest.approx(0.0, abs=1e-14)

    def test_constant_diagonal(self):
        c = Cocycle(0.0, CocycleMap.constant(np.diag([2.0, 0.5])), rational=Fraction(1, 4))
        assert lyapunov_rational(c) == pytest.approx(math.log(2.0), rel=1e-12)

    def test_free_laplacian_rational(self):
        v = TorusFunction.constant(0.0)
        c = schrodinger(v, 3.0, rational=Fraction(2, 7))
        assert lyapunov_rational(c) == pytest.approx(free_laplacian_L(3.0), rel=1e-10)

    def test_rescaling_identity(self):
        # L(n alpha, A(x)) = L(alpha, A(n x))
        v = cosine(0.8)
        alpha = Fraction(5, 89)
        n = 3
        base = schrodinger(v, 0.5, rational=n * alpha)
        dil = schrodinger(v.dilate(n), 0.5, rational=alpha)
        a = lyapunov_rational(base, M=256)
        b = lyapunov_rational(dil, M=256)
        assert a == pytest.approx(b, abs=1e-8)


class TestErgodic:
    def test_identity(self):
        c = Cocycle(GOLDEN, CocycleMap.constant(np.eye(2)))
        assert lyapunov_ergodic(c, n=500) == 0.0

    def test_constant_diagonal(self):
        c = Cocycle(GOLDEN, CocycleMap.constant(np.diag([2.0, 0.5])))
        assert lyapunov_ergodic(c, n=2000) == pytest.approx(math.log(2.0), rel=1e-10)

    def test_agrees_with_irrational_estimator(self):
        c = amo_cocycle(2.0, 0.0)
        a = lyapunov_ergodic(c, n=20_000)
        b = lyapunov_irrational(c)
        assert a == pytest.approx(b, abs=1e-2)


class TestIrrational:
    def test_free_laplacian(self):
        v = TorusFunction.constant(0.0)
        c = schrodinger(v, 3.0, alpha=GOLDEN)
        assert lyapunov_irrational(c) == pytest.approx(free_laplacian_L(3.0), abs=1e-6)

    def test_amo_complexified(self):
        c = amo_cocycle(2.0, 0.0)
        got = lyapunov_irrational(c, eps=0.2)
        assert got == pytest.approx(amo_L(2.0, 0.2, L0=math.log(2.0)), abs=1e-2)

    def test_spread_reported(self):
        c = amo_cocycle(2.0, 0.0)
        val, spread = lyapunov_irrational(c, full_output=True)
        assert spread < 1e-3
        assert val == pytest.approx(math.log(2.0), abs=1e-2)


class TestTraceProfile:
    def test_identity_map(self):
        c = Cocycle(0.0, CocycleMap.constant(np.eye(2)), rational=Fraction(0, 1))
        tp = trace_fourier_profile(c)
        assert dict(tp.modes) == pytest.approx({0: math.log(2.0)})

    def test_constant_diagonal(self):
        c = Cocycle(0.0, CocycleMap.constant(np.diag([2.0, 0.5])), rational=Fraction(1, 1))
        tp = trace_fourier_profile(c)
        assert dict(tp.modes)[0] == pytest.approx(math.log(2.5), rel=1e-12)

    def test_surrogate_arithmetic(self):
        tp = TraceProfile(((0, 0.1), (-1, 0.05)), q=1)
        assert lyapunov_from_trace(tp, 0.0) == pytest.approx(0.1)
        assert lyapunov_from_trace(tp, 0.1) == pytest.approx(0.05 + 0.2 * math.pi)

    def test_surrogate_clamps_at_zero(self):
        tp = TraceProfile(((1, 0.01),), q=5)
        assert lyapunov_from_trace(tp, 0.5) == 0.0

    def test_matches_rational_formula_amo(self):
        q = 55
        c = amo_cocycle(2.0, 0.0, rational=Fraction(34, 55))
        tp = trace_fourier_profile(c)
        for delta in (0.0, 0.1, 0.2):
            direct = lyapunov_rational(c, eps=delta)
            assert lyapunov_from_trace(tp, delta) == pytest.approx(
                direct, abs=max(5e-3, 10 * math.exp(-q))
            )


class TestConvexityAndSymmetry:
    def test_profile_convex_in_eps(self):
        c = amo_cocycle(2.0, 4.5, rational=Fraction(34, 55))
        eps = np.linspace(-0.2, 0.2, 9)
        L = [lyapunov_rational(c, eps=e, M=128, refine=False) for e in eps]
        for i in range(1, len(L) - 1):
            assert L[i] <= 0.5 * (L[i - 1] + L[i + 1]) + 1e-9

    def test_even_in_eps_for_real_symmetric(self):
        c = amo_cocycle(2.0, 0.7, rational=Fraction(34, 55))
        for e in (0.05, 0.1, 0.2):
            up = lyapunov_rational(c, eps=e, M=128, refine=False)
            dn = lyapunov_rational(c, eps=-e, M=128, refine=False)
            assert up == pytest.approx(dn, abs=1e-10)
