"""Self-contained verification suite.

Each check pins one headline result of the library against an independent
route: frozen reference values, a brute-force dense diagonalization, a
polynomial root, or the partial-transpose oracle.  The CLI ``verify``
subcommand and the acceptance tests both run these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .entropies import (
    EntropyCriterion,
    cstre,
    cstre_wp_closed_form,
    ar_wp_closed_form,
    von_neumann_wp_closed_form,
)
from .separability import asymptotic_threshold, find_threshold, ppt_threshold
from .states import WernerPopescuParams, sandwich_matrix_spectrum, sandwich_spectrum, werner_popescu

# Reference values the suite pins, kept at their quoted 4-decimal rounding.
THRESHOLD_TABLE = {
    (3, 2): 0.25, (3, 3): 0.1, (3, 4): 0.0357, (3, 5): 0.0121,
    (4, 2): 0.2, (4, 3): 0.0588, (4, 4): 0.0153, (4, 5): 0.0039,
    (5, 2): 0.1666, (5, 3): 0.0384, (5, 4): 0.0079, (5, 5): 0.0016,
    (6, 2): 0.1428, (6, 3): 0.0270, (6, 4): 0.0046, (6, 5): 0.0007,
}

Q2_CSTRE_TABLE = {
    (3, 3): 0.3837, (3, 4): 0.3114, (3, 5): 0.2744,
    (4, 3): 0.3108, (4, 4): 0.2396, (4, 5): 0.2116,
    (5, 3): 0.2610, (5, 4): 0.1943, (5, 5): 0.1730,
}

Q2_AR_TABLE = {
    (3, 3): 0.3162, (3, 4): 0.1889, (3, 5): 0.1104,
    (4, 3): 0.2425, (4, 4): 0.1240, (4, 5): 0.0623,
    (5, 3): 0.1961, (5, 4): 0.0890, (5, 5): 0.0399,
}

VON_NEUMANN_BOUND_D3N4 = 0.5633

PPT_CASES = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, failures: list[str], summary: str) -> CheckResult:
    if failures:
        shown = "; ".join(failures[:4])
        if len(failures) > 4:
            shown += "; ... %d more" % (len(failures) - 4)
        return CheckResult(name, False, shown)
    return CheckResult(name, True, summary)


def check_threshold_law() -> CheckResult:
    """Asymptotic thresholds equal 1/(1 + d^{N-1}) exactly and match the table."""
    failures: list[str] = []
    worst = 0.0
    for (d, N), reference in THRESHOLD_TABLE.items():
        got = asymptotic_threshold(d, N, EntropyCriterion.CSTRE_VS_B)
        exact = 1.0 / (1.0 + d ** (N - 1))
        if got != exact:
            failures.append("(%d,%d): %r != exact %r" % (d, N, got, exact))
        dev = abs(got - reference)
        worst = max(worst, dev)
        if dev > 5e-4:
            failures.append("(%d,%d): |%g - reference %g| = %.2g" % (d, N, got, reference, dev))
    return _result(
        "threshold-law", failures, "16 pairs exact; max |x - reference| = %.2g" % worst
    )


def _ar_q2_polynomial_root(d: int, N: int) -> float:
    """Positive root of the cleared-denominator quadratic for Tr rho^2 = Tr rho_B^2."""
    a = d**N - 1
    b = d ** (N - 2) - 1
    k2 = d * d * (d ** (N - 1) - d)
    k3 = d**3
    c2 = (d**N - 1) + a * a - k2 * 1 - k3 * b * b
    c1 = -2 * (d**N - 1) + 2 * a + 2 * k2 - 2 * k3 * b
    c0 = (d**N - 1) + 1 - k2 - k3
    roots = np.roots([c2, c1, c0])
    admissible = [float(r.real) for r in roots if abs(r.imag) < 1e-12 and 0.0 < r.real < 1.0]
    if len(admissible) != 1:
        raise ValueError("expected one root in (0,1) for d=%d N=%d, got %r" % (d, N, roots))
    return admissible[0]


def check_q2_crossings() -> CheckResult:
    """q = 2 crossings match the reference table; AR also matches its polynomial root."""
    failures: list[str] = []
    worst = 0.0
    for (d, N), reference in Q2_CSTRE_TABLE.items():
        x = find_threshold(d, N, EntropyCriterion.CSTRE_VS_B, 2.0).x_star
        dev = abs(x - reference)
        worst = max(worst, dev)
        if dev > 1e-3:
            failures.append("CSTRE (%d,%d): |%g - %g| = %.2g" % (d, N, x, reference, dev))
    for (d, N), reference in Q2_AR_TABLE.items():
        x = find_threshold(d, N, EntropyCriterion.AR_A_GIVEN_B, 2.0).x_star
        dev = abs(x - reference)
        worst = max(worst, dev)
        if dev > 1e-3:
            failures.append("AR (%d,%d): |%g - %g| = %.2g" % (d, N, x, reference, dev))
        poly = _ar_q2_polynomial_root(d, N)
        if abs(x - poly) > 1e-8:
            failures.append(
                "AR (%d,%d) vs polynomial root: |%g - %g| = %.2g"
                % (d, N, x, poly, abs(x - poly))
            )
    return _result(
        "q2-crossings", failures, "18 crossings; max |x - reference| = %.2g" % worst
    )


def check_von_neumann_bound() -> CheckResult:
    """von Neumann conditional entropy for d=3, N=4 crosses zero at 0.5633."""
    x = find_threshold(3, 4, EntropyCriterion.VON_NEUMANN, 1.0).x_star
    dev = abs(x - VON_NEUMANN_BOUND_D3N4)
    failures = [] if dev <= 5e-4 else ["|%.6f - 0.5633| = %.2g" % (x, dev)]
    return _result("von-neumann-bound", failures, "crossing %.6f, dev %.2g" % (x, dev))


def _small_cases(max_dim: int = 256):
    for d in range(2, 17):
        N = 2
        while d**N <= max_dim:
            yield d, N
            N += 1


def check_sandwich_spectrum() -> CheckResult:
    """Dense sandwich spectra equal the closed-form levels with exact multiplicities."""
    failures: list[str] = []
    cells = 0
    for d, N in _small_cases():
        for x in (0.1, 0.5, 0.9):
            params = WernerPopescuParams(d, N, x)
            for q in (0.5, 2.0, 5.0):
                cells += 1
                closed = sandwich_spectrum(params, q).as_spectrum()
                dense = sandwich_matrix_spectrum(params, q)
                if not closed.matches(dense, tol=1e-9):
                    failures.append(
                        "(d=%d,N=%d,x=%g,q=%g): %s != %s"
                        % (d, N, x, q, dense.pairs, closed.pairs)
                    )
    return _result(
        "sandwich-spectrum", failures, "%d dense spectra match closed form" % cells
    )


def check_ppt_oracle() -> CheckResult:
    """PPT crossing agrees with the analytic threshold to 1e-8."""
    failures: list[str] = []
    worst = 0.0
    for d, N in PPT_CASES:
        got = ppt_threshold(d, N).x_star
        want = asymptotic_threshold(d, N, EntropyCriterion.CSTRE_VS_B)
        dev = abs(got - want)
        worst = max(worst, dev)
        if dev > 1e-8:
            failures.append("(%d,%d): |%.10f - %.10f| = %.2g" % (d, N, got, want, dev))
    return _result(
        "ppt-oracle", failures, "%d cases; max deviation %.2g" % (len(PPT_CASES), worst)
    )


def check_limits_and_conventions() -> CheckResult:
    """q -> 1 continuity, AR/CSTRE agreement under A-conditioning, curve shape."""
    failures: list[str] = []
    # continuity across the q = 1 seam
    for d in (2, 3, 4):
        for N in (2, 3):
            for x in (0.2, 0.6):
                params = WernerPopescuParams(d, N, x)
                vn = von_neumann_wp_closed_form(params, "B")
                for q in (1.0 - 1e-4, 1.0 + 1e-4):
                    dev = abs(cstre_wp_closed_form(params, q, "B") - vn)
                    if dev > 1e-3:
                        failures.append(
                            "continuity (d=%d,N=%d,x=%g,q=%g): dev %.2g" % (d, N, x, q, dev)
                        )
    # conditioning on the maximally mixed party-1 marginal: dense CSTRE == AR
    for d, N in ((2, 2), (3, 3)):
        for x in (0.3, 0.7):
            params = WernerPopescuParams(d, N, x)
            rho = werner_popescu(params)
            for q in (0.5, 2.0, 3.0):
                dev = abs(cstre(rho, "A", q) - ar_wp_closed_form(params, q, "A"))
                if dev > 1e-10:
                    failures.append(
                        "A-conditioning (d=%d,N=%d,x=%g,q=%g): dev %.2g" % (d, N, x, q, dev)
                    )
    # x*(q) non-increasing, converging to the analytic limit
    q_grid = [1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 50.0, 1e3]
    for d in (3, 4, 5, 6):
        for N in (2, 3, 4, 5):
            limit = asymptotic_threshold(d, N, EntropyCriterion.CSTRE_VS_B)
            for crit in (EntropyCriterion.CSTRE_VS_B, EntropyCriterion.AR_A_GIVEN_B):
                xs = [find_threshold(d, N, crit, q).x_star for q in q_grid]
                if any(b > a + 1e-12 for a, b in zip(xs, xs[1:])):
                    failures.append("monotonicity (%d,%d,%s): %r" % (d, N, crit.value, xs))
                tail = find_threshold(d, N, crit, 1e6).x_star
                if abs(tail - limit) > 1e-4:
                    failures.append(
                        "convergence (%d,%d,%s): |%g - %g| = %.2g"
                        % (d, N, crit.value, tail, limit, abs(tail - limit))
                    )
    return _result(
        "limits-and-conventions",
        failures,
        "continuity, A-conditioning equivalence, 32 monotone curves",
    )


def check_large_q_stability() -> CheckResult:
    """Closed forms stay finite at q = 1e6 and change sign across the threshold."""
    failures: list[str] = []
    q = 1e6
    for d in (3, 4, 5, 6):
        for N in (2, 3, 4, 5):
            limit = asymptotic_threshold(d, N, EntropyCriterion.CSTRE_VS_B)
            for label, f in (
                ("cstre", lambda p: cstre_wp_closed_form(p, q, "B")),
                ("ar", lambda p: ar_wp_closed_form(p, q, "B")),
            ):
                below = f(WernerPopescuParams(d, N, 0.5 * limit))
                above = f(WernerPopescuParams(d, N, 1.5 * limit))
                if not (math.isfinite(below) and math.isfinite(above)):
                    failures.append(
                        "%s (%d,%d): non-finite values (%r, %r)" % (label, d, N, below, above)
                    )
                elif not (below > 0 > above):
                    failures.append(
                        "%s (%d,%d): expected sign change, got (%g, %g)"
                        % (label, d, N, below, above)
                    )
    return _result(
        "large-q-stability", failures, "finite with correct signs for 16 pairs x 2 criteria"
    )


CHECKS: list[tuple[str, Callable[[], CheckResult]]] = [
    ("threshold-law", check_threshold_law),
    ("q2-crossings", check_q2_crossings),
    ("von-neumann-bound", check_von_neumann_bound),
    ("sandwich-spectrum", check_sandwich_spectrum),
    ("ppt-oracle", check_ppt_oracle),
    ("limits-and-conventions", check_limits_and_conventions),
    ("large-q-stability", check_large_q_stability),
]


def run_all(verbose: bool = True) -> list[CheckResult]:
    """Run every check; optionally print one status line per check."""
    results = []
    for i, (name, fn) in enumerate(CHECKS, start=1):
        try:
            res = fn()
        except Exception as exc:  # a crashed check is a failed check
            res = CheckResult(name, False, "raised %s: %s" % (type(exc).__name__, exc))
        results.append(res)
        if verbose:
            status = "PASS" if res.passed else "FAIL"
            print("[%d/%d] %s: %s (%s)" % (i, len(CHECKS), name, status, res.detail))
    return results
