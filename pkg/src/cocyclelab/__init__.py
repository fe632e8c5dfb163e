"""Numerics for one-frequency SL(2,C) cocycles: Lyapunov exponents on a
complexified strip, quantized accelerations, uniform hyperbolicity
certificates, and energy-stratum classification for quasiperiodic
Schrodinger operators."""

from .acceleration import (
    AccelerationFit,
    LyapunovProfile,
    acceleration_at,
    epsilon_profile,
    is_regular,
    stratified_L,
)
from .cocycle import (
    Cocycle,
    CocycleMap,
    Mat2,
    ScaledMatrix,
    complexify,
    iterate,
    schrodinger,
    spectral_radius,
    transfer_products,
)
from .errors import (
    CocycleLabError,
    DegenerateSplitting,
    DuplicateMode,
    EmptyInput,
    EmptyProfile,
    Inconclusive,
    NoConvergents,
    NonCoprime,
    NotHyperbolic,
    NotUnimodular,
    RationalInput,
    StripExceeded,
    WrongStratum,
)
from .hyperbolic import (
    Conjugation,
    DerivativeCoefficients,
    HyperbolicityCertificate,
    PotentialGradient,
    Splitting,
    conjugation,
    derivative_coefficients,
    directional_derivative,
    is_uniformly_hyperbolic,
    potential_gradient,
    proj_distance,
    splitting,
)
from .lyapunov import (
    RationalApprox,
    TraceProfile,
    convergents,
    lyapunov_ergodic,
    lyapunov_from_trace,
    lyapunov_irrational,
    lyapunov_rational,
    trace_fourier_profile,
)
from .oracles import (
    GOLDEN,
    amo_L,
    amo_cocycle,
    amo_in_spectrum_energy,
    diagonal_exponential,
    diagonal_exponential_L,
    free_laplacian_L,
    rotation_cocycle,
)
from .spectral import (
    EnergyClass,
    EnergyTag,
    IdsTable,
    classify_energy,
    finite_spectrum,
    ids,
    scan,
    thouless_residual,
)
from .torusfn import TorusFunction, cosine, from_samples, load_potential, sup_band_norm

__version__ = "0.1.0"
