"""Uniform hyperbolicity: invariant splittings and the derivative of L.

The unstable/stable directions are approximated by singular directions of
long transfer products, certified by the invariance residual
dist(A(x) u(x), u(x + alpha)).  From a det-1 conjugation built on those
directions we obtain the diagonal factor lambda(x) and the gauge-invariant
coefficients q1 = ad + bc, q2 = cd, q3 = -ab that give the derivative of
the Lyapunov exponent along perturbations A e^{t w}.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .acceleration import acceleration_at
from .cocycle import Cocycle, transfer_products
from .errors import (
    DegenerateSplitting,
    Inconclusive,
    NotHyperbolic,
    WrongStratum,
)
from .lyapunov import DEFAULT_QMAX, TWO_PI, lyapunov_irrational, lyapunov_rational
from .torusfn import TorusFunction, from_samples

_ACCEPT_RESIDUAL = 1e-6


def proj_distance(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Sine of the angle between complex lines C u and C v in C^2."""
    cross = u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]
    nu = np.linalg.norm(u, axis=-1)
    nv = np.linalg.norm(v, axis=-1)
    return np.abs(cross) / (nu * nv)


def _directions(c: Cocycle, eps: float, n: int, phases: np.ndarray):
    """Unit vectors spanning the approximate unstable/stable lines at the
    given phases: s = most contracted right singular direction of A_n(x),
    u = A_n(x - n alpha) applied to the least contracted one there."""
    mats, _ = transfer_products(c, n, phases, eps=eps)
    _, _, vh = np.linalg.svd(mats)
    s = np.conj(vh[:, 1, :])  # right singular vector, smallest sigma
    base = phases - n * c.alpha
    mats_b, _ = transfer_products(c, n, base, eps=eps)
    _, _, vh_b = np.linalg.svd(mats_b)
    v_top = np.conj(vh_b[:, 0, :])
    u = np.einsum("jab,jb->ja", mats_b, v_top)
    u = u / np.linalg.norm(u, axis=-1, keepdims=True)
    return u, s


@dataclass(frozen=True)
class Splitting:
    cocycle: Cocycle
    eps: float
    n: int
    grid: np.ndarray  # (M,) real phases x_j = j/M
    u: np.ndarray  # (M,2) unit vectors at x_j + i eps
    s: np.ndarray
    u_shift: np.ndarray  # same at x_j + alpha + i eps
    s_shift: np.ndarray
    min_angle: float
    inv_residual: float
    section_jump: float  # max neighbor-to-neighbor projective jump


def _section_jump(u: np.ndarray, s: np.ndarray) -> float:
    ju = proj_distance(u, np.roll(u, -1, axis=0))
    js = proj_distance(s, np.roll(s, -1, axis=0))
    return float(max(np.max(ju), np.max(js)))


def splitting(
    c: Cocycle,
    eps: float = 0.0,
    n: int = 64,
    M: int = 256,
    n_max: int = 1 << 14,
) -> Splitting:
    """Invariant splitting at A_eps over an M-point grid; n doubles until
    the certificate holds, else NotHyperbolic.

    Acceptance needs two things: the invariance residual below 1e-6, and
    grid continuity of the direction fields (neighbor jumps O(1/M)).  The
    residual alone cannot rule out nonuniform hyperbolicity: Oseledets
    directions are invariant too, but only measurable, and show up here
    as O(1) jumps between adjacent grid points."""
    grid = np.arange(M) / M
    A = c.map.sample(grid + 1j * eps)
    jump_cap = 50.0 / M
    while True:
        u, s = _directions(c, eps, n, grid.astype(complex))
        u_sh, s_sh = _directions(c, eps, n, grid + c.alpha + 0j)
        Au = np.einsum("jab,jb->ja", A, u)
        As = np.einsum("jab,jb->ja", A, s)
        res = max(
            float(np.max(proj_distance(Au, u_sh))),
            float(np.max(proj_distance(As, s_sh))),
        )
        angle = min(
            float(np.min(proj_distance(u, s))),
            float(np.min(proj_distance(u_sh, s_sh))),
        )
        jump = _section_jump(u, s)
        if res <= _ACCEPT_RESIDUAL and jump <= jump_cap and angle > 0.0:
            return Splitting(c, eps, n, grid, u, s, u_sh, s_sh, angle, res, jump)
        if n >= n_max:
            raise NotHyperbolic(
                f"no uniform splitting: residual {res:.2e}, section jump "
                f"{jump:.2e} (cap {jump_cap:.2e}) at n={n}"
            )
        n *= 2


def _align_periodic(vectors: np.ndarray) -> np.ndarray:
    """Choose phases making a projective section continuous along the grid
    and periodic across the wrap-around."""
    out = vectors.copy()
    M = out.shape[0]
    for j in range(1, M):
        ip = np.vdot(out[j - 1], out[j])
        if ip != 0:
            out[j] *= np.conj(ip) / abs(ip)
    ip = np.vdot(out[-1], out[0])
    psi = cmath.phase(ip / abs(ip)) if ip != 0 else 0.0
    out *= np.exp(1j * psi * np.arange(M) / M)[:, None]
    return out


def _align_to_section(raw: np.ndarray, section: np.ndarray, shift: float) -> np.ndarray:
    """Phase-align raw vectors at grid + shift to the nearest section point."""
    M = section.shape[0]
    out = raw.copy()
    for j in range(M):
        k = int(np.floor(((j / M + shift) % 1.0) * M)) % M
        ip = np.vdot(section[k], out[j])
        if ip != 0:
            out[j] *= np.conj(ip) / abs(ip)
    return out


def _basis(u: np.ndarray, s: np.ndarray) -> np.ndarray:
    """det-1 matrices with first column u (unit) and second along s."""
    det = u[:, 0] * s[:, 1] - u[:, 1] * s[:, 0]
    small = np.abs(det) < 1e-8
    if np.any(small):
        raise DegenerateSplitting("u and s nearly collinear on the grid")
    B = np.empty(u.shape[:1] + (2, 2), dtype=complex)
    B[:, :, 0] = u
    B[:, :, 1] = s / det[:, None]
    return B


def _inv_det1(B: np.ndarray) -> np.ndarray:
    inv = np.empty_like(B)
    inv[:, 0, 0] = B[:, 1, 1]
    inv[:, 1, 1] = B[:, 0, 0]
    inv[:, 0, 1] = -B[:, 0, 1]
    inv[:, 1, 0] = -B[:, 1, 0]
    return inv


@dataclass(frozen=True)
class Conjugation:
    B: np.ndarray  # (M,2,2), det 1, columns along u and s
    lam: np.ndarray  # (M,) diagonal factor lambda(x_j)
    Dlam: TorusFunction
    mean_log_abs: float  # int Re ln lambda, should equal L
    winding: int
    off_diag_residual: float


def conjugation(sp: Splitting) -> Conjugation:
    u = _align_periodic(sp.u)
    s = _align_periodic(sp.s)
    u_sh = _align_to_section(sp.u_shift, u, sp.cocycle.alpha)
    s_sh = _align_to_section(sp.s_shift, s, sp.cocycle.alpha)
    B = _basis(u, s)
    B_sh = _basis(u_sh, s_sh)
    A = sp.cocycle.map.sample(sp.grid + 1j * sp.eps)
    D = _inv_det1(B_sh) @ A @ B
    lam = D[:, 0, 0]
    off = float(np.max(np.abs(D[:, 0, 1])) + np.max(np.abs(D[:, 1, 0])))
    dphi = np.angle(lam[np.r_[1 : lam.size, 0]] / lam)
    winding = int(round(float(np.sum(dphi)) / TWO_PI))
    return Conjugation(
        B=B,
        lam=lam,
        Dlam=from_samples(lam),
        mean_log_abs=float(np.mean(np.log(np.abs(lam)))),
        winding=winding,
        off_diag_residual=off,
    )


@dataclass(frozen=True)
class DerivativeCoefficients:
    grid: np.ndarray
    eps: float
    q1_samples: np.ndarray
    q2_samples: np.ndarray
    q3_samples: np.ndarray
    q1: TorusFunction
    q2: TorusFunction
    q3: TorusFunction


def derivative_coefficients(sp: Splitting) -> DerivativeCoefficients:
    """q1 = ad + bc, q2 = cd, q3 = -ab from any det-1 column choice; the
    result is invariant under the column rescaling gauge."""
    B = _basis(sp.u, sp.s)
    a = B[:, 0, 0]
    b = B[:, 0, 1]
    cc = B[:, 1, 0]
    d = B[:, 1, 1]
    q1 = a * d + b * cc
    q2 = cc * d
    q3 = -b * a
    return DerivativeCoefficients(
        sp.grid,
        sp.eps,
        q1,
        q2,
        q3,
        from_samples(q1),
        from_samples(q2),
        from_samples(q3),
    )


def directional_derivative(
    dc: DerivativeCoefficients,
    w1: TorusFunction,
    w2: TorusFunction,
    w3: TorusFunction,
) -> float:
    """d/dt L(alpha, A e^{t w}) at t=0 for traceless w = ((w1, w2), (w3, -w1)),
    evaluated as Re of the grid integral of sum q_i w_i."""
    z = dc.grid + 1j * dc.eps
    total = (
        dc.q1_samples * w1.eval(z)
        + dc.q2_samples * w2.eval(z)
        + dc.q3_samples * w3.eval(z)
    )
    return float(np.mean(total).real)


@dataclass(frozen=True)
class HyperbolicityCertificate:
    by_splitting: bool
    by_L_and_omega: bool
    L: float
    agree: bool


def is_uniformly_hyperbolic(
    c: Cocycle,
    eps: float = 0.0,
    q_max: int = DEFAULT_QMAX,
    M: int = 256,
) -> HyperbolicityCertificate:
    """Cross-check the two characterizations: an accepted splitting, and
    positive L with zero acceleration (regularity)."""
    if c.is_rational:
        L = lyapunov_rational(c, eps=eps, M=M)
    else:
        L = lyapunov_irrational(c, eps=eps, q_max=q_max, M=M)
    if L <= 1e-3:
        raise Inconclusive(f"L = {L:.2e} is below the noise floor")
    try:
        splitting(c, eps=eps, M=min(M, 128), n_max=1 << 12)
        by_split = True
    except NotHyperbolic:
        by_split = False
    fit = acceleration_at(c, eps, q_max=q_max, M=M)
    by_lo = (L > 1e-3) and fit.omega == 0 and not fit.non_quantized
    return HyperbolicityCertificate(by_split, by_lo, L, by_split == by_lo)


@dataclass(frozen=True)
class PotentialGradient:
    modes: Tuple[Tuple[int, float, float], ...]  # (k, d/dcos, d/dsin)
    witness: float  # max |entry|: nonzero certifies a submersion direction


def potential_gradient(
    c: Cocycle,
    j: int,
    eps: float,
    K: int,
    q_max: int = DEFAULT_QMAX,
    M: int = 256,
) -> PotentialGradient:
    """Derivatives of the stratified exponent L_{delta,j} along potential
    perturbations w = cos(2 pi k x), sin(2 pi k x): each equals
    Re int -w(x + i eps) q3(x + i eps) dx on the acceleration-j stratum."""
    if j <= 0:
        raise WrongStratum("the gradient is defined on strata with j > 0")
    fit = acceleration_at(c, eps, q_max=q_max, M=M)
    if fit.omega != j or fit.non_quantized:
        raise WrongStratum(
            f"acceleration at eps={eps} is {fit.omega} (defect {fit.defect:.3f}), not {j}"
        )
    sp = splitting(c, eps=eps, M=M)
    dc = derivative_coefficients(sp)
    z = sp.grid + 1j * eps
    rows = []
    worst = 0.0
    for k in range(0, K + 1):
        wc = np.cos(TWO_PI * k * z)
        ws = np.sin(TWO_PI * k * z)
        dcos = float(np.mean(-wc * dc.q3_samples).real)
        dsin = float(np.mean(-ws * dc.q3_samples).real)
        rows.append((k, dcos, dsin))
        worst = max(worst, abs(dcos), abs(dsin))
    return PotentialGradient(tuple(rows), worst)
