"""SL(2,C) cocycles over circle rotations.

A cocycle is a pair (alpha, A) acting by (x, w) -> (x + alpha, A(x) w).
Products of many steps are kept as a 2x2 matrix with entries of moderate
size plus a separate log-scale, so norms like e^{n L} never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import NonCoprime, NotUnimodular, StripExceeded
from .torusfn import TorusFunction, _as_torusfn, from_samples

_RENORM_LO = 0.5
_RENORM_HI = 2.0


@dataclass(frozen=True)
class Mat2:
    m: np.ndarray  # (2,2) complex

    def __post_init__(self):
        object.__setattr__(self, "m", np.asarray(self.m, dtype=complex).reshape(2, 2))

    @property
    def det(self) -> complex:
        a, b, c, d = self.m.ravel()
        return a * d - b * c

    @property
    def trace(self) -> complex:
        return self.m[0, 0] + self.m[1, 1]


def spectral_radius(m) -> float:
    """Spectral radius of an SL(2,C) matrix, |t/2 + sqrt(t^2/4 - 1)| with
    the branch making the result >= 1."""
    mat = m.m if isinstance(m, Mat2) else np.asarray(m, dtype=complex)
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    if abs(det - 1.0) > 1e-6:
        raise NotUnimodular(f"det = {det}")
    t = (mat[0, 0] + mat[1, 1]) / 2.0
    root = np.sqrt(t * t - 1.0)
    rho = max(abs(t + root), abs(t - root))
    return max(float(rho), 1.0)


@dataclass(frozen=True)
class ScaledMatrix:
    m: np.ndarray  # (2,2) complex with max-abs norm in [1/2, 2]
    logscale: float

    def __post_init__(self):
        object.__setattr__(self, "m", np.asarray(self.m, dtype=complex).reshape(2, 2))

    @staticmethod
    def identity() -> "ScaledMatrix":
        return ScaledMatrix(np.eye(2, dtype=complex), 0.0)

    @property
    def represented(self) -> np.ndarray:
        return math.exp(self.logscale) * self.m

    @property
    def det(self) -> complex:
        a, b, c, d = self.m.ravel()
        return (a * d - b * c) * math.exp(2.0 * self.logscale)

    @property
    def log_norm(self) -> float:
        return self.logscale + math.log(float(np.max(np.abs(self.m))))

    def log_spectral_radius(self) -> float:
        """ln rho of the represented matrix, computed without forming it.
        Assumes the represented matrix is (numerically) unimodular."""
        a, b, c, d = self.m.ravel()
        det = a * d - b * c  # = e^{-2 logscale} for a unimodular product
        t = (a + d) / 2.0
        root = np.sqrt(t * t - det)
        mu = max(abs(t + root), abs(t - root))
        if mu == 0.0:
            return 0.0
        return max(self.logscale + math.log(float(mu)), 0.0)

    def inverse(self) -> "ScaledMatrix":
        # inverse of e^s m with det(e^s m) = 1 is e^s adj(m)
        a, b, c, d = self.m.ravel()
        adj = np.array([[d, -b], [-c, a]], dtype=complex)
        nrm = float(np.max(np.abs(adj)))
        return ScaledMatrix(adj / nrm, self.logscale + math.log(nrm))


@dataclass(frozen=True)
class CocycleMap:
    """A 2x2 matrix of TorusFunctions with unit determinant on R/Z."""

    a: TorusFunction
    b: TorusFunction
    c: TorusFunction
    d: TorusFunction
    real_symmetric: bool = False
    degree: Optional[int] = None  # topological degree, when known

    @property
    def delta_max(self) -> float:
        return min(f.delta_max for f in (self.a, self.b, self.c, self.d))

    def det_defect(self, grid: int = 256) -> float:
        x = np.arange(grid) / grid
        det = self.a.eval(x) * self.d.eval(x) - self.b.eval(x) * self.c.eval(x)
        return float(np.max(np.abs(det - 1.0)))

    def sample(self, z) -> np.ndarray:
        """Evaluate the matrix at phases z (array shape S) -> (S, 2, 2)."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.empty(z.shape + (2, 2), dtype=complex)
        out[..., 0, 0] = self.a.eval(z)
        out[..., 0, 1] = self.b.eval(z)
        out[..., 1, 0] = self.c.eval(z)
        out[..., 1, 1] = self.d.eval(z)
        return out

    def shift(self, alpha: float) -> "CocycleMap":
        return CocycleMap(
            self.a.shift(alpha),
            self.b.shift(alpha),
            self.c.shift(alpha),
            self.d.shift(alpha),
            real_symmetric=False,
            degree=self.degree,
        )

    @staticmethod
    def constant(mat, real_symmetric=None) -> "CocycleMap":
        mat = np.asarray(mat, dtype=complex).reshape(2, 2)
        if real_symmetric is None:
            real_symmetric = bool(np.max(np.abs(mat.imag)) == 0.0)
        return CocycleMap(
            TorusFunction.constant(mat[0, 0]),
            TorusFunction.constant(mat[0, 1]),
            TorusFunction.constant(mat[1, 0]),
            TorusFunction.constant(mat[1, 1]),
            real_symmetric=real_symmetric,
        )


@dataclass(frozen=True)
class Cocycle:
    alpha: float
    map: CocycleMap
    rational: Optional[Fraction] = None  # set when alpha is exactly p/q

    def __post_init__(self):
        a = float(self.alpha) % 1.0
        object.__setattr__(self, "alpha", a)
        if self.rational is not None:
            frac = Fraction(self.rational) % 1
            object.__setattr__(self, "rational", frac)
            object.__setattr__(self, "alpha", float(frac))

    @property
    def is_rational(self) -> bool:
        return self.rational is not None


def schrodinger(v: TorusFunction, E: float, alpha=None, rational=None):
    """Schrodinger cocycle map x -> ((E - v(x), -1), (1, 0))."""
    top = _as_torusfn(E) - v
    cmap = CocycleMap(
        top,
        TorusFunction.constant(-1.0),
        TorusFunction.constant(1.0),
        TorusFunction.constant(0.0),
        real_symmetric=bool(v.real_symmetric),
    )
    if alpha is None and rational is None:
        return cmap
    return Cocycle(float(alpha if alpha is not None else rational), cmap, rational=rational)


def complexify(c: Cocycle, eps: float) -> Cocycle:
    """The cocycle with map x -> A(x + i eps)."""
    if abs(eps) > c.map.delta_max:
        raise StripExceeded(f"eps={eps} outside the band of the map")
    if eps == 0.0:
        return c
    cm = c.map
    shifted = CocycleMap(
        cm.a.shift(1j * eps),
        cm.b.shift(1j * eps),
        cm.c.shift(1j * eps),
        cm.d.shift(1j * eps),
        real_symmetric=False,
        degree=cm.degree,
    )
    return Cocycle(c.alpha, shifted, rational=c.rational)


def _renormalize(mats: np.ndarray, logs: np.ndarray) -> None:
    """In place: rescale points whose max-abs norm left [1/2, 2]."""
    nrm = np.max(np.abs(mats), axis=(-2, -1))
    bad = (nrm > _RENORM_HI) | (nrm < _RENORM_LO)
    if np.any(bad):
        factor = np.where(bad, nrm, 1.0)
        mats /= factor[..., None, None]
        logs += np.log(factor)


def transfer_products(c: Cocycle, n: int, z0, eps: float = 0.0):
    """n-step transfer products at base phases z0 (array), returned as a
    pair (mats (S,2,2), logscales (S,)) with per-point renormalization."""
    z0 = np.atleast_1d(np.asarray(z0, dtype=complex)) + 1j * eps
    if np.any(np.abs(z0.imag) > c.map.delta_max):
        raise StripExceeded("phase outside the band of the map")
    S = z0.shape
    mats = np.broadcast_to(np.eye(2, dtype=complex), S + (2, 2)).copy()
    logs = np.zeros(S)
    for j in range(n):
        Aj = c.map.sample(z0 + j * c.alpha)
        mats = Aj @ mats
        _renormalize(mats, logs)
    return mats, logs


def iterate(c: Cocycle, n: int, z) -> ScaledMatrix:
    """n-step transfer matrix at phase z; n < 0 uses A_{-n}(x) = A_n(x - n alpha)^{-1}."""
    if n == 0:
        return ScaledMatrix.identity()
    if n < 0:
        mats, logs = transfer_products(c, -n, complex(z) + n * c.alpha)
        return ScaledMatrix(mats[0], float(logs[0])).inverse()
    mats, logs = transfer_products(c, n, complex(z))
    return ScaledMatrix(mats[0], float(logs[0]))


def monodromy_products(c: Cocycle, z0):
    """Transfer over one rational period q at phases z0; requires rational alpha."""
    if not c.is_rational:
        raise NonCoprime("monodromy requires a rational frequency")
    q = c.rational.denominator
    return transfer_products(c, q, z0)


def perturb_exponential(c: Cocycle, w1, w2, w3, t: float, M: int = 256) -> Cocycle:
    """The cocycle with map x -> A(x) e^{t w(x)} for traceless
    w = ((w1, w2), (w3, -w1)), built by sampling and Fourier-fitting.
    Uses the closed form e^W = cosh(mu) I + (sinh(mu)/mu) W, mu^2 = -det W."""
    x = np.arange(M) / M
    A = c.map.sample(x.astype(complex))
    W = np.empty((M, 2, 2), dtype=complex)
    W[:, 0, 0] = t * w1.eval(x)
    W[:, 0, 1] = t * w2.eval(x)
    W[:, 1, 0] = t * w3.eval(x)
    W[:, 1, 1] = -W[:, 0, 0]
    mu = np.sqrt(W[:, 0, 0] ** 2 + W[:, 0, 1] * W[:, 1, 0])
    mu = np.where(mu == 0, 1e-300, mu)
    expW = np.cosh(mu)[:, None, None] * np.eye(2) + (np.sinh(mu) / mu)[
        :, None, None
    ] * W
    return cocycle_from_matrix_samples(c.alpha, A @ expW, rational=c.rational)


def cocycle_from_matrix_samples(alpha, samples, real_symmetric=False, rational=None):
    """Fourier-fit a cocycle map from matrix values on the uniform grid x_j = j/M."""
    samples = np.asarray(samples, dtype=complex)
    entries = [
        from_samples(samples[:, i, j], real_symmetric=False)
        for i in range(2)
        for j in range(2)
    ]
    cmap = CocycleMap(*entries, real_symmetric=real_symmetric)
    return Cocycle(float(alpha), cmap, rational=rational)
