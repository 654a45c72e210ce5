"""Entropy functionals built on the sandwiched Tsallis relative entropy.

Two sign conventions coexist and both are kept exactly as defined:

* relative entropies divide by (q - 1):
      D_q(rho||sigma)  = (Tr[rho^q sigma^{1-q}] - 1) / (q - 1)
      Dt_q(rho||sigma) = (Tr[(sigma^{(1-q)/2q} rho sigma^{(1-q)/2q})^q] - 1) / (q - 1)
* conditional forms divide by (1 - q):
      CSTRE(A|B) = (Qt_q - 1) / (1 - q),  Qt_q the sandwiched trace with
                   sigma = I_A x rho_B (or rho_A x I_B when conditioning on A)
      AR S_q(A|B) = (1/(q-1)) [1 - Tr rho^q / Tr rho_B^q]

Negativity of a conditional form signals entanglement.  q = 1 is always routed
to the von Neumann limits, never evaluated through the generic formulas.

Every functional has a generic dense path over DensityMatrix inputs and a
closed-form path over the noisy-GHZ family spectra; for q > 30 the closed
forms switch to log-domain summation, clamping to the largest finite float
when the true magnitude exceeds double precision.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from .linalg import DensityMatrix, eig_hermitian, frac_power, kron, partial_trace, partial_transpose
from .states import (
    DEFAULT_DIMENSION_CAP,
    WernerPopescuParams,
    sandwich_spectrum,
    state_spectrum,
    werner_popescu,
)

Q_LOG_DOMAIN = 30.0
# ln of the largest double; exponents beyond this saturate instead of overflowing
_EXP_MAX = math.log(sys.float_info.max)


class EntropyCriterion(Enum):
    """Separability criteria on the 1 : N-1 partition (party 1 = A, rest = B)."""

    CSTRE_VS_B = "cstre-vs-b"
    CSTRE_VS_A = "cstre-vs-a"
    AR_A_GIVEN_B = "ar-a-given-b"
    AR_B_GIVEN_A = "ar-b-given-a"
    VON_NEUMANN = "von-neumann"
    PPT = "ppt"

    @property
    def conditioning(self) -> Optional[str]:
        """Which marginal the criterion conditions on ('A', 'B', or None for PPT)."""
        return _CONDITIONING[self]

    @classmethod
    def from_cli_name(cls, name: str) -> "EntropyCriterion":
        try:
            return _CLI_NAMES[name]
        except KeyError:
            raise ValueError(
                "unknown criterion %r; choose from %s" % (name, sorted(_CLI_NAMES))
            ) from None


_CONDITIONING = {
    EntropyCriterion.CSTRE_VS_B: "B",
    EntropyCriterion.CSTRE_VS_A: "A",
    EntropyCriterion.AR_A_GIVEN_B: "B",
    EntropyCriterion.AR_B_GIVEN_A: "A",
    EntropyCriterion.VON_NEUMANN: "B",
    EntropyCriterion.PPT: None,
}

_CLI_NAMES = {
    "cstre": EntropyCriterion.CSTRE_VS_B,
    "ar": EntropyCriterion.AR_A_GIVEN_B,
    "vn": EntropyCriterion.VON_NEUMANN,
    "ppt": EntropyCriterion.PPT,
}


@dataclass(frozen=True)
class EntropyQuery:
    """What to evaluate: entropic order q (may be math.inf) and the criterion."""

    q: float
    criterion: EntropyCriterion

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", float(self.q))
        if self.criterion not in (EntropyCriterion.VON_NEUMANN, EntropyCriterion.PPT):
            if not self.q > 0:
                raise ValueError("q must be positive, got %g" % self.q)

    @property
    def conditioning(self) -> Optional[str]:
        return self.criterion.conditioning


@dataclass(frozen=True)
class EntropyValue:
    """Evaluation result plus which route produced it."""

    value: float
    q: float
    method: str  # "closed-form" | "dense" | "log-domain"


def _check_q(q: float) -> float:
    q = float(q)
    if math.isinf(q):
        raise ValueError("q = INFINITY has no pointwise value; use the asymptotic threshold")
    if not q > 0:
        raise ValueError("q must be positive, got %g" % q)
    if q == 1:
        raise ValueError("q = 1 is the von Neumann limit; call the von Neumann form")
    return q


def _check_conditioning(conditioning: str) -> str:
    if conditioning not in ("A", "B"):
        raise ValueError("conditioning must be 'A' or 'B', got %r" % (conditioning,))
    return conditioning


def _split_marginal(rho_AB: DensityMatrix, conditioning: str) -> DensityMatrix:
    """Marginal the criterion conditions on: rho_A = party 1, rho_B = the rest."""
    if rho_AB.n_subsystems < 2:
        raise ValueError("need at least two subsystems for a 1 : N-1 partition")
    if conditioning == "A":
        return partial_trace(rho_AB, {1})
    return partial_trace(rho_AB, range(2, rho_AB.n_subsystems + 1))


def _psd_eigenvalues(m: np.ndarray) -> np.ndarray:
    w, _ = eig_hermitian(m)
    return np.clip(w, 0.0, None)


def _power_trace(w: np.ndarray, q: float) -> float:
    w = w[w > 0]
    return float(np.sum(w**q))


def _log_power_sum(pairs, q: float) -> float:
    """ln sum_i m_i v_i^q over (value, multiplicity) pairs with v > 0."""
    logs = [math.log(m) + q * math.log(v) for v, m in pairs if m > 0 and v > 0]
    if not logs:
        return -math.inf
    return float(logsumexp(logs))


def _expm1_over(log_arg: float, denom: float) -> float:
    """(e^log_arg - 1)/denom, clamped to the largest finite float on overflow."""
    if log_arg > _EXP_MAX:
        return math.copysign(sys.float_info.max, denom)
    return math.expm1(log_arg) / denom


def tsallis_relative(
    rho: DensityMatrix, sigma: DensityMatrix, q: float, support_restricted: bool = False
) -> float:
    """Tsallis relative entropy D_q(rho||sigma) = (Tr[rho^q sigma^{1-q}] - 1)/(q - 1)."""
    q = _check_q(q)
    if rho.dim != sigma.dim:
        raise ValueError("rho and sigma must share one dimension")
    rho_q = frac_power(rho.matrix, q)
    sigma_p = frac_power(sigma.matrix, 1.0 - q, support_restricted)
    tr = float(np.trace(rho_q @ sigma_p).real)
    return (tr - 1.0) / (q - 1.0)


def sandwiched_tsallis_relative(
    rho: DensityMatrix, sigma: DensityMatrix, q: float, support_restricted: bool = False
) -> float:
    """Sandwiched form: (Tr[(sigma^{(1-q)/2q} rho sigma^{(1-q)/2q})^q] - 1)/(q - 1)."""
    q = _check_q(q)
    if rho.dim != sigma.dim:
        raise ValueError("rho and sigma must share one dimension")
    half = frac_power(sigma.matrix, (1.0 - q) / (2.0 * q), support_restricted)
    gamma = half @ rho.matrix @ half
    w = _psd_eigenvalues(0.5 * (gamma + gamma.conj().T))
    return (_power_trace(w, q) - 1.0) / (q - 1.0)


def cstre(
    rho_AB: DensityMatrix,
    conditioning: str,
    q: float,
    support_restricted: bool = False,
) -> float:
    """Conditional sandwiched Tsallis relative entropy, dense route.

    Sandwiches rho_AB between powers of I_A x rho_B (conditioning 'B') or
    rho_A x I_B (conditioning 'A').  Mind the sign: (Qt_q - 1)/(1 - q).
    """
    q = _check_q(q)
    _check_conditioning(conditioning)
    marg = _split_marginal(rho_AB, conditioning)
    half_marg = frac_power(marg.matrix, (1.0 - q) / (2.0 * q), support_restricted)
    other_dim = rho_AB.dim // marg.dim
    if conditioning == "B":
        half = kron(np.eye(other_dim), half_marg)
    else:
        half = kron(half_marg, np.eye(other_dim))
    gamma = half @ rho_AB.matrix @ half
    w = _psd_eigenvalues(0.5 * (gamma + gamma.conj().T))
    return (_power_trace(w, q) - 1.0) / (1.0 - q)


def ar_conditional(rho_AB: DensityMatrix, conditioning: str, q: float) -> float:
    """Abe-Rajagopal q-conditional entropy (1/(q-1))[1 - Tr rho^q / Tr marg^q]."""
    q = _check_q(q)
    _check_conditioning(conditioning)
    marg = _split_marginal(rho_AB, conditioning)
    num = _power_trace(_psd_eigenvalues(rho_AB.matrix), q)
    den = _power_trace(_psd_eigenvalues(marg.matrix), q)
    return (1.0 - num / den) / (q - 1.0)


def _vn_entropy(w: np.ndarray) -> float:
    # 0 ln 0 := 0
    w = w[w > 0]
    return float(-np.sum(w * np.log(w)))


def von_neumann_conditional(rho_AB: DensityMatrix, conditioning: str) -> float:
    """q -> 1 limit S(rho_AB) - S(marginal)."""
    _check_conditioning(conditioning)
    marg = _split_marginal(rho_AB, conditioning)
    return _vn_entropy(_psd_eigenvalues(rho_AB.matrix)) - _vn_entropy(
        _psd_eigenvalues(marg.matrix)
    )


# ---------------------------------------------------------------------------
# closed forms over the noisy-GHZ family


def cstre_wp_closed_form(params: WernerPopescuParams, q: float, conditioning: str = "B") -> float:
    """CSTRE from the three-level sandwich spectrum; log-domain for q > 30.

    Conditioning on A hits the maximally mixed party-1 marginal, where the
    sandwich commutes and the value coincides with the AR form exactly.
    """
    q = _check_q(q)
    if _check_conditioning(conditioning) == "A":
        return ar_wp_closed_form(params, q, "A")
    sw = sandwich_spectrum(params, q)
    pairs = [
        (sw.gamma1, sw.gamma1_mult),
        (sw.gamma2, sw.gamma2_mult),
        (sw.gamma3, sw.gamma3_mult),
    ]
    if q > Q_LOG_DOMAIN:
        return _expm1_over(_log_power_sum(pairs, q), 1.0 - q)
    total = sum(m * v**q for v, m in pairs if m > 0 and v > 0)
    return (total - 1.0) / (1.0 - q)


def ar_wp_closed_form(params: WernerPopescuParams, q: float, conditioning: str = "B") -> float:
    """AR conditional entropy from the state and marginal spectra."""
    q = _check_q(q)
    _check_conditioning(conditioning)
    spec = state_spectrum(params)
    num_pairs = [(spec.lambda1, spec.lambda1_mult), (spec.lambda2, 1)]
    if conditioning == "B":
        den_pairs = [(spec.eta1, spec.eta1_mult), (spec.eta2, spec.eta2_mult)]
    else:
        den_pairs = [(1.0 / params.d, params.d)]
    if q > Q_LOG_DOMAIN:
        z = _log_power_sum(num_pairs, q) - _log_power_sum(den_pairs, q)
        return _expm1_over(z, 1.0 - q)
    num = sum(m * v**q for v, m in num_pairs if m > 0 and v > 0)
    den = sum(m * v**q for v, m in den_pairs if m > 0 and v > 0)
    return (1.0 - num / den) / (q - 1.0)


def von_neumann_wp_closed_form(params: WernerPopescuParams, conditioning: str = "B") -> float:
    """q -> 1 limit from closed-form spectra."""
    _check_conditioning(conditioning)
    spec = state_spectrum(params)

    def ent(pairs) -> float:
        return -sum(m * v * math.log(v) for v, m in pairs if m > 0 and v > 0)

    s_state = ent([(spec.lambda1, spec.lambda1_mult), (spec.lambda2, 1)])
    if conditioning == "B":
        s_marg = ent([(spec.eta1, spec.eta1_mult), (spec.eta2, spec.eta2_mult)])
    else:
        s_marg = math.log(params.d)
    return s_state - s_marg


def ppt_min_eigenvalue(params: WernerPopescuParams, cap: int = DEFAULT_DIMENSION_CAP) -> float:
    """Smallest eigenvalue of the partial transpose over party 1, dense route.

    Negative value certifies entanglement; kept numeric on purpose as an
    oracle independent of every closed form above.
    """
    rho = werner_popescu(params, cap)
    w, _ = eig_hermitian(partial_transpose(rho, {1}))
    return float(w[0])


def evaluate_wp(
    query: EntropyQuery, params: WernerPopescuParams, cap: int = DEFAULT_DIMENSION_CAP
) -> EntropyValue:
    """Evaluate a criterion on a family member, picking the right route.

    Closed forms for the entropic criteria (log-domain above q = 30), the
    dense partial-transpose eigensolve for PPT.  q = 1 routes every entropic
    criterion to its von Neumann limit.
    """
    crit = query.criterion
    q = query.q
    if crit is EntropyCriterion.PPT:
        return EntropyValue(ppt_min_eigenvalue(params, cap), q, "dense")
    cond = crit.conditioning
    if crit is EntropyCriterion.VON_NEUMANN or q == 1:
        return EntropyValue(von_neumann_wp_closed_form(params, cond), q, "closed-form")
    if math.isinf(q):
        raise ValueError("q = INFINITY has no pointwise value; use the asymptotic threshold")
    if crit in (EntropyCriterion.CSTRE_VS_B, EntropyCriterion.CSTRE_VS_A):
        value = cstre_wp_closed_form(params, q, cond)
    else:
        value = ar_wp_closed_form(params, q, cond)
    method = "log-domain" if q > Q_LOG_DOMAIN else "closed-form"
    return EntropyValue(value, q, method)
