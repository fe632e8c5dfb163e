"""Closed-form reference cocycles and exponents used to anchor tests."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .cocycle import Cocycle, CocycleMap, cocycle_from_matrix_samples, schrodinger
from .spectral import finite_spectrum
from .torusfn import TorusFunction, cosine

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def amo_L(lam: float, eps: float, L0: float) -> float:
    """Almost-Mathieu exponent on the complexified strip:
    max{L0, ln(lam) + 2 pi eps}."""
    return max(L0, math.log(lam) + 2.0 * math.pi * eps)


def amo_cocycle(lam: float, E: float, alpha: float = GOLDEN, rational=None) -> Cocycle:
    """Schrodinger cocycle for v(x) = 2 lam cos(2 pi x) at energy E."""
    return schrodinger(cosine(lam), E, alpha=alpha, rational=rational)


def amo_in_spectrum_energy(lam: float, alpha: float = GOLDEN, N: int = 4096) -> float:
    """A concrete in-spectrum energy: the median eigenvalue of a large
    Dirichlet truncation (membership by proximity, not assumption)."""
    table = finite_spectrum(cosine(lam), alpha, N=N)
    return float(np.median(table.energies))


def rotation_cocycle(k: int, alpha: float = GOLDEN) -> Cocycle:
    """x -> rotation by angle 2 pi k x; topological degree k, L(0) = 0."""
    ck = TorusFunction.from_coeff_dict({k: 0.5, -k: 0.5}, real_symmetric=True)
    sk = TorusFunction.from_coeff_dict({k: -0.5j, -k: 0.5j}, real_symmetric=True)
    cmap = CocycleMap(ck, -1.0 * sk, sk, ck, real_symmetric=True, degree=k)
    return Cocycle(alpha, cmap)


def diagonal_exponential(q0: int, alpha, rational=None, M: int = 256) -> Cocycle:
    """diag(e^{lam(x)}, e^{-lam(x)}) with lam(x) = e^{2 pi i q0 x}, built by
    Fourier-fitting the entries (coefficients decay like 1/n!)."""
    M = max(M, 32 * q0)
    x = np.arange(M) / M
    lam = np.exp(2j * np.pi * q0 * x)
    samples = np.zeros((M, 2, 2), dtype=complex)
    samples[:, 0, 0] = np.exp(lam)
    samples[:, 1, 1] = np.exp(-lam)
    a = float(alpha) if rational is None else float(Fraction(rational))
    return cocycle_from_matrix_samples(a, samples, rational=rational)


def diagonal_exponential_L(q0: int, q: int, eps: float) -> float:
    """Reference value (2/pi) e^{-2 pi q0 eps} when q divides q0, else 0."""
    if q0 % q == 0:
        return (2.0 / math.pi) * math.exp(-2.0 * math.pi * q0 * eps)
    return 0.0


def free_laplacian_L(E: float) -> float:
    """L(E) = max{0, ln((|E| + sqrt(E^2 - 4)) / 2)}; zero on the band [-2, 2]."""
    if abs(E) <= 2.0:
        return 0.0
    a = abs(E)
    return math.log((a + math.sqrt(a * a - 4.0)) / 2.0)
