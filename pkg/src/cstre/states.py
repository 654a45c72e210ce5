"""Noisy GHZ family of N-qudit states and its closed-form spectra.

The family interpolates between white noise and the generalized GHZ projector,

    rho(x) = (1 - x)/d^N * I + x |phi><phi|,   |phi> = d^{-1/2} sum_k |k...k>,

with d-level parties A_1..A_N and mixing parameter x in [0, 1].  Party 1 plays
the role of A; the remaining N-1 parties form B.  All spectra below are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionCapExceeded, SingularNegativePower
from .linalg import DensityMatrix, Spectrum, eig_hermitian, frac_power, kron, partial_trace

DEFAULT_DIMENSION_CAP = 10_000


def _check_cap(dim: int, cap: int) -> None:
    if dim > cap:
        raise DimensionCapExceeded(
            "dense construction of dimension %d exceeds cap %d" % (dim, cap)
        )


@dataclass(frozen=True)
class WernerPopescuParams:
    """Parameters (d, N, x): local dimension, party count, mixing weight."""

    d: int
    N: int
    x: float

    def __post_init__(self) -> None:
        if int(self.d) != self.d or self.d < 2:
            raise ValueError("d must be an integer >= 2, got %r" % (self.d,))
        if int(self.N) != self.N or self.N < 2:
            raise ValueError("N must be an integer >= 2, got %r" % (self.N,))
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "x", float(self.x))
        if not 0.0 <= self.x <= 1.0:
            raise ValueError("x must lie in [0, 1], got %g" % self.x)

    @property
    def total_dim(self) -> int:
        return self.d**self.N


def ghz_vector(d: int, N: int, cap: int = DEFAULT_DIMENSION_CAP) -> np.ndarray:
    """Generalized GHZ vector d^{-1/2} sum_k |k>^{tensor N} of length d^N."""
    if int(d) != d or d < 2 or int(N) != N or N < 2:
        raise ValueError("need integers d >= 2 and N >= 2, got d=%r N=%r" % (d, N))
    d, N = int(d), int(N)
    dim = d**N
    _check_cap(dim, cap)
    v = np.zeros(dim)
    # |k...k> sits at index k * (d^{N-1} + ... + d + 1)
    stride = (dim - 1) // (d - 1)
    v[np.arange(d) * stride] = 1.0 / np.sqrt(d)
    return v


def werner_popescu(
    params: WernerPopescuParams, cap: int = DEFAULT_DIMENSION_CAP
) -> DensityMatrix:
    """Dense density matrix of the family member at ``params``."""
    dim = params.total_dim
    _check_cap(dim, cap)
    phi = ghz_vector(params.d, params.N, cap)
    m = (1.0 - params.x) / dim * np.eye(dim) + params.x * np.outer(phi, phi)
    return DensityMatrix(m, (params.d,) * params.N)


@dataclass(frozen=True)
class StateSpectrum:
    """Exact eigenvalues of rho and of its marginal rho_B = Tr_A rho.

    rho has lambda1 with multiplicity d^N - 1 and a simple lambda2.  rho_B has
    eta1 with multiplicity d^{N-1} - d (empty for N = 2) and eta2 with
    multiplicity d.  The other single-party marginal rho_A is I_d / d for
    every x.
    """

    d: int
    N: int
    x: float
    lambda1: float
    lambda2: float
    eta1: float
    eta2: float

    @property
    def lambda1_mult(self) -> int:
        return self.d**self.N - 1

    @property
    def eta1_mult(self) -> int:
        return self.d ** (self.N - 1) - self.d

    @property
    def eta2_mult(self) -> int:
        return self.d

    def state_pairs(self) -> Spectrum:
        return Spectrum.from_pairs([(self.lambda1, self.lambda1_mult), (self.lambda2, 1)])

    def marginal_pairs(self) -> Spectrum:
        return Spectrum.from_pairs(
            [(self.eta1, self.eta1_mult), (self.eta2, self.eta2_mult)]
        )


def state_spectrum(params: WernerPopescuParams) -> StateSpectrum:
    """Closed-form spectra of rho(x) and rho_B(x)."""
    d, N, x = params.d, params.N, params.x
    dim = d**N
    return StateSpectrum(
        d=d,
        N=N,
        x=x,
        lambda1=(1.0 - x) / dim,
        lambda2=(1.0 + (dim - 1) * x) / dim,
        eta1=(1.0 - x) / d ** (N - 1),
        eta2=(1.0 + (d ** (N - 2) - 1) * x) / d ** (N - 1),
    )


@dataclass(frozen=True)
class SandwichSpectrum:
    """Eigenvalues of Gamma = sigma^{(1-q)/2q} rho sigma^{(1-q)/2q}, sigma = I_A x rho_B.

    With e = (1-q)/q the three levels are

        gamma1 = lambda1 * eta1^e   (multiplicity d^N - d^2, empty for N = 2),
        gamma2 = lambda1 * eta2^e   (multiplicity d^2 - 1),
        gamma3 = lambda2 * eta2^e   (simple).

    ``gamma1`` always carries the formula value; a zero multiplicity marks the
    level as absent.
    """

    d: int
    N: int
    x: float
    q: float
    gamma1: float
    gamma2: float
    gamma3: float

    @property
    def gamma1_mult(self) -> int:
        return self.d**self.N - self.d**2

    @property
    def gamma2_mult(self) -> int:
        return self.d**2 - 1

    @property
    def gamma3_mult(self) -> int:
        return 1

    def as_spectrum(self) -> Spectrum:
        """Non-empty levels as a Spectrum, coincident values merged."""
        return Spectrum.from_pairs(
            [
                (self.gamma1, self.gamma1_mult),
                (self.gamma2, self.gamma2_mult),
                (self.gamma3, self.gamma3_mult),
            ]
        )


def sandwich_spectrum(params: WernerPopescuParams, q: float) -> SandwichSpectrum:
    """Closed-form spectrum of the sandwiched operator at order q.

    Requires q > 0, q != 1.  For q > 1 the marginal enters with a negative
    power, so a singular marginal (x = 1 with N >= 3) is rejected; restrict to
    the support explicitly via the dense route if that case is needed.
    """
    if not q > 0 or q == 1:
        raise ValueError("q must be positive and != 1, got %g" % q)
    spec = state_spectrum(params)
    e = (1.0 - q) / q
    if params.x == 1.0 and q > 1 and params.N >= 3:
        raise SingularNegativePower(
            "marginal is singular at x = 1; sandwich power %g is undefined" % e
        )
    # eta1 == 0 only at x == 1; then either N == 2 (level empty, value unused
    # downstream) or e > 0 so 0^e == 0.
    eta1_pow = spec.eta1**e if spec.eta1 > 0 else 0.0
    return SandwichSpectrum(
        d=params.d,
        N=params.N,
        x=params.x,
        q=q,
        gamma1=spec.lambda1 * eta1_pow,
        gamma2=spec.lambda1 * spec.eta2**e,
        gamma3=spec.lambda2 * spec.eta2**e,
    )


def sandwich_matrix(
    params: WernerPopescuParams,
    q: float,
    support_restricted: bool = False,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> np.ndarray:
    """Dense sandwiched operator, built from the state with no closed forms.

    Independent cross-check route for :func:`sandwich_spectrum`: the marginal
    comes from a partial trace and the powers from an eigendecomposition.
    """
    if not q > 0 or q == 1:
        raise ValueError("q must be positive and != 1, got %g" % q)
    rho = werner_popescu(params, cap)
    rho_b = partial_trace(rho, range(2, params.N + 1))
    half = frac_power(rho_b.matrix, (1.0 - q) / (2.0 * q), support_restricted)
    emb = kron(np.eye(params.d), half)
    gamma = emb @ rho.matrix @ emb
    # symmetrize away the last-bit asymmetry from the two matrix products
    return 0.5 * (gamma + gamma.conj().T)


def sandwich_matrix_spectrum(
    params: WernerPopescuParams,
    q: float,
    support_restricted: bool = False,
    cap: int = DEFAULT_DIMENSION_CAP,
    merge_tol: float = 1e-10,
) -> Spectrum:
    """Numerically diagonalize the dense sandwiched operator."""
    w, _ = eig_hermitian(sandwich_matrix(params, q, support_restricted, cap))
    return Spectrum.from_eigenvalues(w, merge_tol)
