"""Lyapunov exponent estimators.

Three routes are provided: the exact rational-frequency formula
L(p/q, A) = (1/q) int ln rho(A_{(p/q)}(x)) dx, a Birkhoff-average
estimator for long orbits, and an irrational-frequency estimator that
evaluates the rational formula along continued-fraction convergents.
A fourth route reads L off the Fourier modes of the periodic trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from .cocycle import Cocycle, transfer_products
from .errors import (
    EmptyProfile,
    NoConvergents,
    NonCoprime,
    RationalInput,
)

TWO_PI = 2.0 * math.pi

#: default cap on convergent denominators used by lyapunov_irrational
DEFAULT_QMAX = 1000


@dataclass(frozen=True)
class RationalApprox:
    p: int
    q: int
    err: float

    def __post_init__(self):
        if math.gcd(self.p, self.q) != 1:
            raise NonCoprime(f"{self.p}/{self.q}")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)


def convergents(alpha: float, q_max: int = 10**6) -> List[RationalApprox]:
    """Continued-fraction convergents p/q of alpha with q <= q_max,
    in increasing q.  Raises RationalInput when alpha is a rational
    number to within 1e-15 (doubles cannot support deeper expansion)."""
    alpha = float(alpha) % 1.0
    frac = Fraction(alpha).limit_denominator(max_denominator=1 << 60)
    p, q = frac.numerator, frac.denominator
    out: List[RationalApprox] = []
    h0, k0 = 0, 1  # h_{-2}/k_{-2}
    h1, k1 = 1, 0  # h_{-1}/k_{-1}
    while q != 0:
        a = p // q
        p, q = q, p - a * q
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > q_max:
            break
        err = abs(alpha - h1 / k1)
        if err < 1e-15:
            raise RationalInput(
                f"alpha={alpha} is {h1}/{k1} to within 1e-15; treat it as rational"
            )
        out.append(RationalApprox(h1, k1, err))
    if not out:
        raise NoConvergents(f"no convergent with q <= {q_max}")
    return out


def lyapunov_rational(
    c: Cocycle,
    eps: float = 0.0,
    M: int = 512,
    refine: bool = True,
    tol: float = 1e-6,
    M_max: int = 4096,
) -> float:
    """L(p/q, A_eps) by the spectral-radius formula, averaging over a
    uniform grid on [0, 1/q) (the monodromy trace is 1/q-periodic).
    With refine=True the grid doubles until the value moves < tol."""
    if not c.is_rational:
        raise NonCoprime("lyapunov_rational requires a rational frequency")
    q = c.rational.denominator
    val = _rational_average(c, q, eps, M)
    while refine and M < M_max:
        M *= 2
        nxt = _rational_average(c, q, eps, M)
        if abs(nxt - val) < tol:
            return nxt
        val = nxt
    return val


def _rational_average(c: Cocycle, q: int, eps: float, M: int) -> float:
    x = np.arange(M) / (M * q)
    mats, logs = transfer_products(c, q, x, eps=eps)
    a = mats[:, 0, 0]
    b = mats[:, 0, 1]
    cc = mats[:, 1, 0]
    d = mats[:, 1, 1]
    det = a * d - b * cc  # = e^{-2 logs} up to rounding, for unimodular A
    t = (a + d) / 2.0
    root = np.sqrt(t * t - det)
    mu = np.maximum(np.abs(t + root), np.abs(t - root))
    lnrho = logs + np.log(np.maximum(mu, 1e-300))
    lnrho = np.maximum(lnrho, 0.0)  # rho >= 1 for unimodular matrices
    return float(np.mean(lnrho) / q)


def lyapunov_ergodic(c: Cocycle, eps: float = 0.0, n: int = 1000, phases: int = 4) -> float:
    """Birkhoff-average estimator (1/n) <ln ||A_n(x + i eps)||> over a few
    equidistributed starting phases."""
    if n < 1:
        raise ValueError("n must be positive")
    x0 = (np.arange(phases) + 0.5) / phases
    mats, logs = transfer_products(c, n, x0, eps=eps)
    lognorm = logs + np.log(np.max(np.abs(mats), axis=(-2, -1)))
    val = float(np.mean(lognorm) / n)
    if abs(val) < 1e-6:
        return 0.0
    return max(val, 0.0)


def lyapunov_irrational(
    c: Cocycle,
    eps: float = 0.0,
    q_max: int = DEFAULT_QMAX,
    M: int = 128,
    full_output: bool = False,
):
    """L(alpha, A_eps) for irrational alpha: evaluate the rational formula
    at the three largest convergents with q <= q_max and return the last
    value; the spread of the three serves as an error estimate."""
    if c.is_rational:
        val = lyapunov_rational(c, eps=eps, M=M)
        return (val, 0.0) if full_output else val
    convs = convergents(c.alpha, q_max=q_max)
    tail = convs[-3:]
    vals = []
    for ra in tail:
        approx = Cocycle(0.0, c.map, rational=ra.fraction)
        # the q-approximation error dominates; a fine grid buys nothing
        vals.append(lyapunov_rational(approx, eps=eps, M=M, tol=1e-5, M_max=512))
    value = vals[-1]
    spread = max(vals) - min(vals)
    if full_output:
        return value, spread
    return value


@dataclass(frozen=True)
class TraceProfile:
    """Fourier modes of the 1/q-periodic monodromy trace, stored as
    (k, (1/q) ln |a_k|) so that complexifying by delta shifts mode k by
    -2 pi k delta."""

    modes: Tuple[Tuple[int, float], ...]
    q: int


def trace_fourier_profile(c: Cocycle, M: int | None = None) -> TraceProfile:
    """Sample tr A_{(p/q)}(x) on an M-grid of [0,1) and extract the
    coefficients a_k of e^{2 pi i k q x}, in an overflow-safe way."""
    if not c.is_rational:
        raise NonCoprime("trace profile requires a rational frequency")
    q = c.rational.denominator
    deg = max(
        f.degree for f in (c.map.a, c.map.b, c.map.c, c.map.d)
    )
    if M is None:
        M = max(4 * q * max(deg, 1), 4 * q)
    x = np.arange(M) / M
    mats, logs = transfer_products(c, q, x)
    shift = float(np.max(logs))
    tr = np.exp(logs - shift) * (mats[:, 0, 0] + mats[:, 1, 1])
    fhat = np.fft.fft(tr) / M
    # entries of degree n give a monodromy trace of x-degree <= q n, so
    # only |k| <= n can carry signal; higher bins hold rounding noise
    kmax = min(M // (2 * q), max(deg, 1))
    raw = {}
    for k in range(-kmax, kmax + 1):
        idx = (k * q) % M
        raw[k] = abs(fhat[idx])
    top = max(raw.values())
    if top == 0.0:
        raise EmptyProfile("monodromy trace vanished on the grid")
    modes = []
    for k in sorted(raw):
        if raw[k] >= 1e-15 * top:
            lnak = shift + math.log(raw[k])
            modes.append((k, lnak / q))
    return TraceProfile(tuple(modes), q)


def lyapunov_from_trace(tp: TraceProfile, delta: float = 0.0) -> float:
    """Convex piecewise-linear surrogate: max_k max{value_k - 2 pi k delta, 0}."""
    if not tp.modes:
        raise EmptyProfile("empty trace profile")
    best = 0.0
    for k, val in tp.modes:
        best = max(best, val - TWO_PI * k * delta)
    return best
