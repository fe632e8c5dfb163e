"""Acceleration: slopes of eps -> L(alpha, A_eps) and their quantization.

For irrational frequencies the right slope at 0+, divided by 2 pi, is an
integer; the profile is convex piecewise affine.  Fitting those slopes
gives the acceleration, a regularity test, and the stratified exponent
L_{delta,j} read off an affine piece of slope j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cocycle import Cocycle
from .errors import WrongStratum
from .lyapunov import DEFAULT_QMAX, TWO_PI, lyapunov_irrational, lyapunov_rational


def _L(c: Cocycle, eps: float, q_max: int = DEFAULT_QMAX, M: int = 256) -> float:
    if c.is_rational:
        return lyapunov_rational(c, eps=eps, M=M)
    return lyapunov_irrational(c, eps=eps, q_max=q_max, M=M)


@dataclass(frozen=True)
class LyapunovProfile:
    eps_grid: np.ndarray
    L_values: np.ndarray
    slopes: np.ndarray  # centered differences / 2 pi, one per interior point
    omega: int  # nearest integer to the right slope at the left end
    defect: float

    @property
    def convexity_defect(self) -> float:
        d2 = np.diff(self.L_values, 2)
        return float(-min(np.min(d2), 0.0)) if d2.size else 0.0


def epsilon_profile(
    c: Cocycle,
    eps_min: float,
    eps_max: float,
    n_pts: int = 13,
    q_max: int = DEFAULT_QMAX,
    M: int = 256,
) -> LyapunovProfile:
    if n_pts < 5:
        raise ValueError("need at least 5 grid points")
    grid = np.linspace(eps_min, eps_max, n_pts)
    L = np.array([_L(c, e, q_max=q_max, M=M) for e in grid])
    h = grid[1] - grid[0]
    slopes = (L[2:] - L[:-2]) / (2.0 * h) / TWO_PI
    right0 = (L[1] - L[0]) / h / TWO_PI
    omega = int(round(right0))
    return LyapunovProfile(grid, L, slopes, omega, abs(right0 - omega))


@dataclass(frozen=True)
class AccelerationFit:
    omega: int
    defect: float
    slope: float
    non_quantized: bool  # defect > 0.2: estimator failure or a piece boundary


def acceleration_at(
    c: Cocycle,
    eps0: float,
    h: float = 0.02,
    slope_tol: float = 0.02,
    q_max: int = DEFAULT_QMAX,
    M: int = 256,
) -> AccelerationFit:
    """One-sided slope of L on [eps0, eps0 + h], with h halved until two
    consecutive fits agree within slope_tol."""
    L0 = _L(c, eps0, q_max=q_max, M=M)
    prev = None
    slope = 0.0
    for _ in range(6):
        slope = (_L(c, eps0 + h, q_max=q_max, M=M) - L0) / h / TWO_PI
        if prev is not None and abs(slope - prev) < slope_tol:
            break
        prev = slope
        h *= 0.5
    omega = int(round(slope))
    defect = abs(slope - omega)
    return AccelerationFit(omega, defect, slope, non_quantized=defect > 0.2)


def is_regular(
    c: Cocycle,
    h: float = 0.02,
    affine_tol: float = 3e-3,
    q_max: int = DEFAULT_QMAX,
    M: int = 256,
) -> bool:
    """Real-symmetric maps are regular iff the acceleration at 0 vanishes;
    otherwise test two-sided affineness of the profile on [-h, h]."""
    if c.map.real_symmetric:
        return acceleration_at(c, 0.0, h=h, q_max=q_max, M=M).omega == 0
    Lm = _L(c, -h, q_max=q_max, M=M)
    L0 = _L(c, 0.0, q_max=q_max, M=M)
    Lp = _L(c, h, q_max=q_max, M=M)
    return abs(Lp + Lm - 2.0 * L0) <= affine_tol


def stratified_L(
    c: Cocycle,
    j: int,
    delta: float,
    n_pts: int = 13,
    q_max: int = DEFAULT_QMAX,
    M: int = 256,
    consistency_tol: float = 1e-3,
) -> float:
    """L restricted to the stratum of acceleration j: find an affine piece
    of slope j inside (0, delta) and return L(alpha, A_{d}) - 2 pi j d at
    its midpoint.  The value is checked at a second point of the piece."""
    lo = delta / n_pts
    grid = np.linspace(lo, delta, n_pts)
    L = np.array([_L(c, e, q_max=q_max, M=M) for e in grid])
    slopes = np.diff(L) / np.diff(grid) / TWO_PI
    hits = [i for i, s in enumerate(slopes) if abs(s - j) < 0.2]
    if not hits:
        raise WrongStratum(f"no affine piece with slope {j} found in (0, {delta})")
    # midpoint of the longest contiguous run of matching intervals
    runs = []
    start = hits[0]
    prevI = hits[0]
    for i in hits[1:] + [None]:
        if i is None or i != prevI + 1:
            runs.append((start, prevI))
            start = i
        prevI = i if i is not None else prevI
    i0, i1 = max(runs, key=lambda r: r[1] - r[0])
    d_mid = 0.5 * (grid[i0] + grid[i1 + 1])
    d_alt = grid[i0] + 0.25 * (grid[i1 + 1] - grid[i0])
    v_mid = _L(c, d_mid, q_max=q_max, M=M) - TWO_PI * j * d_mid
    v_alt = _L(c, d_alt, q_max=q_max, M=M) - TWO_PI * j * d_alt
    if abs(v_mid - v_alt) > consistency_tol:
        raise WrongStratum(
            f"stratified value not stable across the detected piece "
            f"({v_mid} vs {v_alt}); the slope-{j} stratum is spurious"
        )
    return v_mid
