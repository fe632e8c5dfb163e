"""Finite-volume spectra, density of states, Thouless check, and the
classification of Schrodinger energies into the four strata."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .acceleration import acceleration_at, epsilon_profile, stratified_L
from .cocycle import schrodinger
from .errors import WrongStratum
from .lyapunov import DEFAULT_QMAX, lyapunov_irrational
from .torusfn import TorusFunction

#: estimator noise floor separating "zero" from "positive" exponents
L_THRESHOLD = 1e-3
_BORDERLINE = (5e-4, 2e-3)


@dataclass(frozen=True)
class IdsTable:
    energies: np.ndarray  # sorted eigenvalues of the N x N truncation
    N: int


def finite_spectrum(
    v: TorusFunction, alpha: float, theta: float = 0.0, N: int = 1024
) -> IdsTable:
    """Eigenvalues of the Dirichlet truncation: diagonal v(theta + n alpha),
    off-diagonal 1."""
    n = np.arange(N)
    diag = v.eval(theta + n * alpha).real
    off = np.ones(N - 1)
    evals = eigvalsh_tridiagonal(diag, off)
    return IdsTable(np.sort(evals), N)


def ids(table: IdsTable, E: float) -> float:
    """Integrated density of states: fraction of eigenvalues <= E."""
    return float(np.searchsorted(table.energies, E, side="right")) / table.N


def thouless_residual(
    v: TorusFunction,
    alpha: float,
    E_grid,
    N: int = 4096,
    q_max: int = DEFAULT_QMAX,
) -> float:
    """max_E | L(E) - (1/N) sum_j ln |lambda_j - E| | over the grid."""
    table = finite_spectrum(v, alpha, N=N)
    worst = 0.0
    for E in np.asarray(E_grid, dtype=float):
        gaps = np.abs(table.energies - E)
        if np.min(gaps) < 1e-9:
            raise ValueError(f"E={E} collides with an eigenvalue")
        thouless = float(np.mean(np.log(gaps)))
        c = schrodinger(v, E, alpha=alpha)
        L = lyapunov_irrational(c, q_max=q_max)
        worst = max(worst, abs(L - thouless))
    return worst


class EnergyTag(Enum):
    UNIFORMLY_HYPERBOLIC = "UH"
    SUPERCRITICAL = "supercritical"
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"


@dataclass(frozen=True)
class EnergyClass:
    tag: EnergyTag
    omega: int
    L: float
    defect: float
    borderline: bool
    evidence: Optional[object] = None  # eps-profile when requested


def classify_energy(
    v: TorusFunction,
    alpha: float,
    E: float,
    q_max: int = DEFAULT_QMAX,
    M: int = 256,
    with_profile: bool = False,
) -> EnergyClass:
    """Map (L, omega) at eps=0 to the four strata.

    L > threshold with omega = 0 is uniformly hyperbolic (off-spectrum);
    L > threshold with omega >= 1 is supercritical; L ~ 0 splits into
    subcritical (omega = 0) and critical (omega >= 1)."""
    if not v.real_symmetric:
        raise ValueError("classification requires a real-symmetric potential")
    c = schrodinger(v, E, alpha=alpha)
    L = lyapunov_irrational(c, q_max=q_max, M=M)
    fit = acceleration_at(c, 0.0, q_max=q_max, M=M)
    positive = L > L_THRESHOLD
    if positive and fit.omega == 0:
        tag = EnergyTag.UNIFORMLY_HYPERBOLIC
    elif positive:
        tag = EnergyTag.SUPERCRITICAL
    elif fit.omega == 0:
        tag = EnergyTag.SUBCRITICAL
    else:
        tag = EnergyTag.CRITICAL
    profile = None
    if with_profile:
        profile = epsilon_profile(c, 0.0, 0.1, n_pts=6, q_max=q_max, M=M)
    return EnergyClass(
        tag,
        fit.omega,
        L,
        fit.defect,
        borderline=_BORDERLINE[0] <= L <= _BORDERLINE[1],
        evidence=profile,
    )


@dataclass(frozen=True)
class ScanRow:
    E: float
    L: float
    omega: int
    defect: float
    tag: EnergyTag
    boundary: bool  # adjacent row belongs to a different stratum
    stratum_fit_residual: float  # |L - stratified fit|, nan when unavailable


def scan(
    v: TorusFunction,
    alpha: float,
    E_grid,
    q_max: int = DEFAULT_QMAX,
    M: int = 256,
    stratum_delta: float = 0.15,
) -> List[ScanRow]:
    """Per-energy classification over a grid, with stratum boundaries
    flagged and the stratified-exponent fit residual reported inside
    positive-acceleration strata."""
    E_grid = np.asarray(E_grid, dtype=float)
    classes = [classify_energy(v, alpha, E, q_max=q_max, M=M) for E in E_grid]
    rows: List[ScanRow] = []
    for i, (E, cl) in enumerate(zip(E_grid, classes)):
        neighbors = []
        if i > 0:
            neighbors.append(classes[i - 1].tag)
        if i + 1 < len(classes):
            neighbors.append(classes[i + 1].tag)
        boundary = any(t != cl.tag for t in neighbors)
        resid = math.nan
        if cl.tag in (EnergyTag.SUPERCRITICAL, EnergyTag.CRITICAL) and cl.omega > 0:
            c = schrodinger(v, float(E), alpha=alpha)
            try:
                fit = stratified_L(c, cl.omega, stratum_delta, q_max=q_max, M=M)
                resid = abs(cl.L - fit)
            except WrongStratum:
                resid = math.nan
        rows.append(
            ScanRow(float(E), cl.L, cl.omega, cl.defect, cl.tag, boundary, resid)
        )
    return rows
