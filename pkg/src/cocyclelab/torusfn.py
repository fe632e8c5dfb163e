"""Truncated Fourier series on R/Z, evaluable on a complex strip.

A TorusFunction stores coefficients c_k for modes k in [-K, K] and
evaluates sum_k c_k e^{2 pi i k z}.  Finite series are entire, so the
default band is infinite; a finite band can be attached to model inputs
loaded from files with a stated strip of analyticity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DuplicateMode, EmptyInput, StripExceeded

_TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class TorusFunction:
    coeffs: np.ndarray  # complex, length 2K+1; index i holds mode i-K
    delta_max: float = math.inf
    real_symmetric: bool = False

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 == 0:
            raise ValueError("coeffs must be a 1-d array of odd length 2K+1")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    def coeff(self, k: int) -> complex:
        K = self.degree
        if abs(k) > K:
            return 0j
        return complex(self.coeffs[k + K])

    @staticmethod
    def from_coeff_dict(d, delta_max=math.inf, real_symmetric=False):
        if not d:
            return TorusFunction(np.zeros(1, dtype=complex), delta_max, real_symmetric)
        K = max(abs(k) for k in d)
        c = np.zeros(2 * K + 1, dtype=complex)
        for k, v in d.items():
            c[k + K] = v
        return TorusFunction(c, delta_max, real_symmetric)

    @staticmethod
    def constant(value, delta_max=math.inf):
        return TorusFunction(
            np.array([value], dtype=complex),
            delta_max,
            real_symmetric=(abs(complex(value).imag) == 0.0),
        )

    def __call__(self, z):
        return self.eval(z)

    def eval(self, z):
        """Evaluate at complex z (scalar or array), pairing (k,-k) modes
        in ascending |k| for a deterministic summation order."""
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z.imag) > self.delta_max):
            raise StripExceeded(
                f"|Im z| exceeds the stated band delta_max={self.delta_max}"
            )
        K = self.degree
        out = np.full(z.shape, self.coeffs[K], dtype=complex)
        if K > 0:
            w = np.exp(_TWO_PI_I * z)
            wk = np.ones_like(w)
            for k in range(1, K + 1):
                wk = wk * w
                out = out + self.coeffs[K + k] * wk + self.coeffs[K - k] / wk
        if out.ndim == 0:
            return complex(out)
        return out

    def shift(self, alpha: float) -> "TorusFunction":
        """Translate the argument: shift(f, a)(z) == f(z + a)."""
        K = self.degree
        ks = np.arange(-K, K + 1)
        return TorusFunction(
            self.coeffs * np.exp(_TWO_PI_I * ks * alpha),
            self.delta_max,
            real_symmetric=False,
        )

    def dilate(self, n: int) -> "TorusFunction":
        """The function x -> f(n x): mode k moves to mode n k."""
        if n < 1:
            raise ValueError("n must be a positive integer")
        K = self.degree
        c = np.zeros(2 * n * K + 1, dtype=complex)
        c[::n] = self.coeffs
        return TorusFunction(c, self.delta_max / n, self.real_symmetric)

    def conj_reflect(self) -> "TorusFunction":
        """The function z -> conj(f(conj(z)))."""
        return TorusFunction(
            np.conj(self.coeffs)[::-1].copy(), self.delta_max, self.real_symmetric
        )

    def __add__(self, other):
        other = _as_torusfn(other)
        K = max(self.degree, other.degree)
        c = np.zeros(2 * K + 1, dtype=complex)
        c[K - self.degree : K + self.degree + 1] += self.coeffs
        c[K - other.degree : K + other.degree + 1] += other.coeffs
        return TorusFunction(
            c,
            min(self.delta_max, other.delta_max),
            self.real_symmetric and other.real_symmetric,
        )

    def __sub__(self, other):
        return self + (-1.0) * _as_torusfn(other)

    def __rsub__(self, other):
        return _as_torusfn(other) - self

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, TorusFunction):
            # exact product: degree K1 + K2
            c = np.convolve(self.coeffs, other.coeffs)
            return TorusFunction(
                c,
                min(self.delta_max, other.delta_max),
                self.real_symmetric and other.real_symmetric,
            )
        return TorusFunction(
            self.coeffs * other,
            self.delta_max,
            self.real_symmetric and complex(other).imag == 0.0,
        )

    __rmul__ = __mul__


def _as_torusfn(x):
    if isinstance(x, TorusFunction):
        return x
    return TorusFunction.constant(x)


def from_samples(
    samples, delta_max=math.inf, real_symmetric=False, prune=1e-14
) -> TorusFunction:
    """Discrete Fourier analysis of values on the uniform grid x_j = j/M,
    modes folded to [-floor(M/2), floor(M/2)].

    Coefficients below prune * max|c| are zeroed: FFT rounding noise in
    high modes would otherwise blow up when the function is evaluated off
    the real line.  The stored degree shrinks to the last surviving mode."""
    samples = np.asarray(samples, dtype=complex)
    M = samples.size
    if M == 0:
        raise EmptyInput("no samples")
    fhat = np.fft.fft(samples) / M
    K = M // 2
    c = np.zeros(2 * K + 1, dtype=complex)
    for m in range(M):
        k = m if m <= M // 2 else m - M
        if -K <= k <= K:
            c[k + K] += fhat[m]
    top = float(np.max(np.abs(c)))
    if prune and top > 0.0:
        c[np.abs(c) < prune * top] = 0.0
        nz = np.nonzero(c)[0]
        keep = max(abs(int(i) - K) for i in nz) if nz.size else 0
        c = c[K - keep : K + keep + 1]
    return TorusFunction(c, delta_max, real_symmetric)


def sup_band_norm(f: TorusFunction, delta: float, grid: int = 1024) -> float:
    """Grid approximation of sup |f| on the boundary lines Im z = +-delta.
    Not a certified bound."""
    if delta > f.delta_max:
        raise StripExceeded("delta exceeds the stated band")
    x = np.arange(grid) / grid
    top = np.abs(f.eval(x + 1j * delta))
    if delta == 0.0:
        return float(np.max(top))
    bot = np.abs(f.eval(x - 1j * delta))
    return float(max(np.max(top), np.max(bot)))


def cosine(amplitude=1.0, mode: int = 1) -> TorusFunction:
    """amplitude * 2cos(2 pi * mode * x) when amplitude real."""
    return TorusFunction.from_coeff_dict(
        {mode: amplitude, -mode: np.conj(amplitude)}, real_symmetric=True
    )


def real_symmetry_defect(f: TorusFunction) -> float:
    K = f.degree
    scale = float(np.sum(np.abs(f.coeffs))) or 1.0
    worst = 0.0
    for k in range(0, K + 1):
        worst = max(worst, abs(f.coeffs[K + k] - np.conj(f.coeffs[K - k])))
    return worst / scale


def load_potential(path) -> TorusFunction:
    """Read the text format: one line per mode, `k re(c_k) im(c_k)`.
    Modes may come in any order; duplicates are an error."""
    seen = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected `k re im`, got {raw!r}")
            k = int(parts[0])
            if k in seen:
                raise DuplicateMode(f"{path}:{lineno}: mode {k} appears twice")
            seen[k] = float(parts[1]) + 1j * float(parts[2])
    if not seen:
        raise EmptyInput(f"{path}: no modes")
    f = TorusFunction.from_coeff_dict(seen)
    return TorusFunction(
        f.coeffs, f.delta_max, real_symmetric=(real_symmetry_defect(f) < 1e-12)
    )


def save_potential(f: TorusFunction, path) -> None:
    K = f.degree
    with open(path, "w") as fh:
        for k in range(-K, K + 1):
            c = f.coeff(k)
            if c != 0:
                fh.write(f"{k} {c.real!r} {c.imag!r}\n")
