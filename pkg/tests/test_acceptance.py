"""Acceptance gate: twelve criteria, one printed pass/fail line each.

Every tolerance is stated inline; derived anchors (the submersion witness)
were frozen after first computation and act as regression guards."""

import math
from fractions import Fraction

import numpy as np
import pytest

from cocyclelab import (
    TorusFunction,
    acceleration_at,
    conjugation,
    convergents,
    derivative_coefficients,
    directional_derivative,
    lyapunov_ergodic,
    lyapunov_from_trace,
    lyapunov_irrational,
    lyapunov_rational,
    potential_gradient,
    schrodinger,
    splitting,
    thouless_residual,
    trace_fourier_profile,
)
from cocyclelab.cli import EXIT_OK, main as cli_main
from cocyclelab.cocycle import Cocycle, perturb_exponential
from cocyclelab.oracles import (
    GOLDEN,
    amo_L,
    amo_cocycle,
    amo_in_spectrum_energy,
    diagonal_exponential,
    diagonal_exponential_L,
    free_laplacian_L,
    rotation_cocycle,
)
from cocyclelab.torusfn import cosine

TWO_PI = 2.0 * math.pi

# frozen after first computation (criterion 9); guards against regressions
WITNESS_ANCHOR = 0.34217094737845916


_CAPSYS = None


@pytest.fixture(autouse=True)
def _live_report(capsys):
    # let the per-criterion pass/fail lines reach the terminal even under
    # pytest's output capture
    global _CAPSYS
    _CAPSYS = capsys
    yield
    _CAPSYS = None


def report(num: int, label: str, ok: bool) -> None:
    line = f"CRITERION {num:02d} {label}: {'PASS' if ok else 'FAIL'}"
    if _CAPSYS is not None:
        with _CAPSYS.disabled():
            print(line, flush=True)
    else:
        print(line, flush=True)
    assert ok, f"criterion {num} ({label}) failed"


def random_potential_cocycle(rng, alpha=None, rational=None):
    """Random real-symmetric trigonometric-polynomial cocycle, degree <= 3,
    coefficients bounded by 2."""
    d = {0: complex(rng.uniform(-2, 2))}
    for k in (1, 2, 3):
        ck = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
        d[k] = ck
        d[-k] = np.conj(ck)
    v = TorusFunction.from_coeff_dict(d, real_symmetric=True)
    E = float(rng.uniform(-3, 3))
    return schrodinger(v, E, alpha=alpha, rational=rational)


def test_criterion_01_free_laplacian():
    v = TorusFunction.constant(0.0)
    point = lyapunov_irrational(schrodinger(v, 3.0, alpha=GOLDEN))
    ok = abs(point - free_laplacian_L(3.0)) < 1e-6
    sup = 0.0
    for E in np.linspace(2.1, 6.0, 14):
        got = lyapunov_irrational(schrodinger(v, float(E), alpha=GOLDEN))
        sup = max(sup, abs(got - free_laplacian_L(float(E))))
    ok = ok and sup < 1e-5
    report(1, "free-laplacian closed form", ok)


def test_criterion_02_amo_supercritical():
    E = amo_in_spectrum_energy(2.0, N=4096)
    c = amo_cocycle(2.0, E)
    L0 = lyapunov_irrational(c)
    ok = abs(L0 - math.log(2.0)) < 2e-2
    sup = 0.0
    for eps in np.linspace(0.0, 0.3, 7):
        got = lyapunov_irrational(c, eps=float(eps))
        sup = max(sup, abs(got - amo_L(2.0, float(eps), math.log(2.0))))
    ok = ok and sup < 2e-2
    fit = acceleration_at(c, 0.0)
    ok = ok and fit.omega == 1 and fit.defect < 0.05
    report(2, "almost-Mathieu supercritical", ok)


def test_criterion_03_amo_subcritical_critical():
    E = amo_in_spectrum_energy(0.5, N=4096)
    c = amo_cocycle(0.5, E)
    fit = acceleration_at(c, 0.0)
    ok = lyapunov_irrational(c) <= 2e-3 and fit.omega == 0
    E = amo_in_spectrum_energy(1.0, N=4096)
    c = amo_cocycle(1.0, E)
    fit = acceleration_at(c, 0.0)
    ok = ok and lyapunov_irrational(c) <= 5e-3 and fit.omega == 1
    report(3, "almost-Mathieu subcritical/critical", ok)


def test_criterion_04_quantization_suite():
    rng = np.random.default_rng(7)
    flagged = []
    total = 50
    for _ in range(total):
        c = random_potential_cocycle(rng, alpha=GOLDEN)
        eps0 = float(rng.uniform(0.05, 0.2))
        fit = acceleration_at(c, eps0)
        if fit.defect > 0.05:
            flagged.append((c, eps0))
    ok = len(flagged) <= total // 10
    # every flagged point must sit within 0.02 of a slope breakpoint
    for c, eps0 in flagged:
        lo = max(eps0 - 0.04, 0.005)
        grid = np.linspace(lo, eps0 + 0.04, 9)
        L = np.array([lyapunov_irrational(c, eps=float(e)) for e in grid])
        slopes = np.round(np.diff(L) / np.diff(grid) / TWO_PI).astype(int)
        breakpoints = [
            grid[k + 1] for k in range(len(slopes) - 1) if slopes[k + 1] != slopes[k]
        ]
        ok = ok and breakpoints and min(abs(b - eps0) for b in breakpoints) <= 0.02
    report(4, "acceleration quantization (50 random cocycles)", bool(ok))


def test_criterion_05_rotation_degrees():
    ok = True
    for k in range(4):
        fit = acceleration_at(rotation_cocycle(k), 0.1)
        ok = ok and fit.omega == k and fit.defect < 0.05
    report(5, "rotation cocycle degrees 0..3", ok)


def test_criterion_06_diagonal_exponential():
    c = diagonal_exponential(2, 0.5, rational=Fraction(1, 2))
    ok = True
    for eps in (0.0, 0.05, 0.1):
        got = lyapunov_rational(c, eps=eps)
        ok = ok and abs(got - diagonal_exponential_L(2, 2, eps)) < 1e-6
    c = diagonal_exponential(2, 0.6, rational=Fraction(3, 5))
    ok = ok and abs(lyapunov_rational(c)) < 1e-6
    report(6, "diagonal exponential at rational frequencies", ok)


def _uh_suite():
    return [
        amo_cocycle(2.0, 4.6),
        amo_cocycle(2.0, 5.0),
        amo_cocycle(2.0, 5.5),
        amo_cocycle(2.0, 6.5),
        amo_cocycle(2.0, -4.6),
        amo_cocycle(2.0, -5.5),
        schrodinger(cosine(0.3), 2.8, alpha=GOLDEN),
        schrodinger(cosine(0.3), 3.5, alpha=GOLDEN),
        schrodinger(TorusFunction.constant(0.0), 3.0, alpha=GOLDEN),
        schrodinger(cosine(0.5), -3.2, alpha=GOLDEN),
    ]


def test_criterion_07_derivative_formula():
    ra = convergents(GOLDEN, q_max=1000)[-1]

    def L_fixed(c):
        # same convergent and grid on both sides of the difference, so the
        # rational-approximation bias cancels in the quotient
        return lyapunov_rational(
            Cocycle(0.0, c.map, rational=ra.fraction), M=512, refine=False
        )

    rng = np.random.default_rng(3)
    ok = True
    for c in _uh_suite():
        sp = splitting(c)
        dc = derivative_coefficients(sp)
        ws = []
        for _ in range(3):
            ck = rng.normal(scale=0.3) + 1j * rng.normal(scale=0.3)
            ws.append(
                TorusFunction.from_coeff_dict(
                    {0: rng.normal(scale=0.3), 1: ck, -1: np.conj(ck)}
                )
            )
        deriv = directional_derivative(dc, *ws)
        t = 1e-4
        fd = (
            L_fixed(perturb_exponential(c, *ws, t))
            - L_fixed(perturb_exponential(c, *ws, -t))
        ) / (2 * t)
        ok = ok and abs(deriv - fd) / max(abs(fd), 1e-12) < 1e-4
        # gauge invariance: column rescaling t(x), 1/t(x) leaves q_i fixed
        from cocyclelab.hyperbolic import _basis

        tt = 0.5 + rng.random(sp.grid.size)
        B = _basis(sp.u, sp.s)
        a, b = B[:, 0, 0] * tt, B[:, 0, 1] / tt
        cc, d = B[:, 1, 0] * tt, B[:, 1, 1] / tt
        ok = ok and float(np.max(np.abs(a * d + b * cc - dc.q1_samples))) < 1e-12
        ok = ok and float(np.max(np.abs(cc * d - dc.q2_samples))) < 1e-12
        ok = ok and float(np.max(np.abs(-b * a - dc.q3_samples))) < 1e-12
        # the diagonal factor integrates back to the exponent
        cj = conjugation(sp)
        L = lyapunov_irrational(c)
        ok = ok and abs(cj.mean_log_abs - L) < 1e-5
    report(7, "derivative formula on 10 UH cocycles", bool(ok))


def test_criterion_08_schrodinger_symmetry():
    cases = [
        (amo_cocycle(2.0, 5.0), 0.0),
        (schrodinger(cosine(0.3), 2.8, alpha=GOLDEN), 0.0),
        (schrodinger(TorusFunction.constant(0.0), 3.0, alpha=GOLDEN), 0.0),
        (amo_cocycle(2.0, amo_in_spectrum_energy(2.0, N=4096)), 0.1),
    ]
    worst = 0.0
    for c, eps in cases:
        from cocyclelab.cocycle import complexify

        sp = splitting(complexify(c, eps) if eps else c)
        dc = derivative_coefficients(sp)
        shifted = dc.q3.shift(-c.alpha)
        x = sp.grid
        worst = max(worst, float(np.max(np.abs(dc.q2.eval(x) + shifted.eval(x)))))
    report(8, "Schrodinger symmetry q2(x) = -q3(x-a)", worst < 1e-8)


def test_criterion_09_submersion_witness():
    E = amo_in_spectrum_energy(2.0, N=4096)
    g = potential_gradient(amo_cocycle(2.0, E), 1, 0.1, K=4)
    ok = g.witness > 0.01
    ok = ok and abs(g.witness - WITNESS_ANCHOR) < 1e-9
    report(9, "submersion witness (frozen anchor)", ok)


def test_criterion_10_thouless():
    v = TorusFunction.constant(0.0)
    grid = np.concatenate([np.linspace(2.2, 5.0, 10), -np.linspace(2.2, 5.0, 10)])
    r1 = thouless_residual(v, GOLDEN, grid, N=4096, q_max=200)
    r2 = thouless_residual(v, GOLDEN, grid, N=8192, q_max=200)
    ok = r1 <= 5e-3 and 1.0 <= r1 / r2 <= 4.0
    report(10, "Thouless residual and N-halving", ok)


def test_criterion_11_cross_estimators():
    rng = np.random.default_rng(21)
    ok = True
    for frac in (Fraction(233, 377), Fraction(377, 610)):
        tol = max(5e-3, 10 * math.exp(-frac.denominator))
        for _ in range(6):
            c = random_potential_cocycle(rng, rational=frac)
            tp = trace_fourier_profile(c)
            a = lyapunov_rational(c)
            b = lyapunov_from_trace(tp, 0.0)
            ok = ok and abs(a - b) < tol
    c = amo_cocycle(2.0, amo_in_spectrum_energy(2.0, N=4096))
    ok = ok and abs(lyapunov_ergodic(c, n=20_000) - lyapunov_irrational(c)) < 1e-2
    report(11, "cross-estimator agreement", bool(ok))


def test_criterion_12_scan_determinism(tmp_path):
    pot = tmp_path / "zero.pot"
    pot.write_text("0 0.0 0.0\n")
    outs = []
    for threads in (1, 4):
        out = tmp_path / f"scan{threads}.csv"
        code = cli_main(
            [
                "classify",
                "--potential", str(pot),
                "--E_min", "-4",
                "--E_max", "4",
                "--E_pts", "5",
                "--q_max", "500",
                "--threads", str(threads),
                "--csv", str(out),
            ]
        )
        assert code == EXIT_OK
        outs.append(out.read_bytes())
    report(12, "classification scan byte-determinism", outs[0] == outs[1])
