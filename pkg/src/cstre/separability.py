"""Separability thresholds: where each criterion crosses zero in x.

Every criterion here is positive at x = 0, negative near x = 1 once q is
large enough, and monotone through its single crossing, so plain bisection is
both sufficient and unconditionally robust.  The q -> infinity thresholds are
evaluated analytically instead of by extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .entropies import EntropyCriterion, EntropyQuery, evaluate_wp
from .errors import NoSignChange, ToleranceNotReached
from .states import DEFAULT_DIMENSION_CAP, WernerPopescuParams

X_TOL = 1e-10
MAX_BISECT_ITER = 200
# stay off x = 1, where marginal powers for q > 1 blow up
BRACKET_HI = 1.0 - 1e-9


@dataclass(frozen=True)
class ThresholdResult:
    """Zero crossing of a criterion at fixed q.

    ``bracket`` is the final bisection interval (width <= x_tol on success);
    ``residual`` is |criterion(x_star)|.  Analytic q = infinity results carry
    a degenerate bracket and zero iterations.
    """

    criterion: EntropyCriterion
    q: float
    x_star: float
    bracket: tuple[float, float]
    iterations: int
    residual: float


@dataclass(frozen=True)
class CurvePoint:
    """One sample of the x*(q) curve; ``error`` marks a failed point."""

    q: float
    x_star: float
    error: Optional[str] = None


def criterion_value(
    d: int,
    N: int,
    criterion: EntropyCriterion,
    q: float,
    x: float,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> float:
    """Criterion value at one (d, N, x); positive means no entanglement detected."""
    params = WernerPopescuParams(d, N, x)
    return evaluate_wp(EntropyQuery(q, criterion), params, cap).value


def _bisect(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    x_tol: float,
    max_iter: int,
) -> tuple[float, float, float, int]:
    """Root bracketing by halving; returns (lo, hi, f_lo, iterations)."""
    f_lo = f(lo)
    f_hi = f(hi)
    if f_lo == 0.0:
        return lo, lo, f_lo, 0
    if f_hi == 0.0:
        return hi, hi, f_hi, 0
    if (f_lo > 0) == (f_hi > 0):
        raise NoSignChange(
            "criterion keeps sign %s on [%g, %g]; no crossing to bracket"
            % ("+" if f_lo > 0 else "-", lo, hi)
        )
    iterations = 0
    while hi - lo > x_tol:
        if iterations >= max_iter:
            raise ToleranceNotReached(
                "bracket still %g wide after %d iterations (tol %g)"
                % (hi - lo, iterations, x_tol)
            )
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break  # interval no longer representable; as converged as floats get
        f_mid = f(mid)
        iterations += 1
        if f_mid == 0.0:
            return mid, mid, f_mid, iterations
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return lo, hi, f_lo, iterations


def asymptotic_threshold(d: int, N: int, criterion: EntropyCriterion) -> float:
    """Exact q -> infinity threshold, no numerics.

    CSTRE vs B: the largest sandwich eigenvalue gamma3 -> lambda2/eta2 must
    stay <= 1, giving x <= (d - 1)/(d^N - d^{N-1} + d - 1) = 1/(1 + d^{N-1}).
    AR A|B: lambda_max(rho) <= lambda_max(rho_B), the same linear equation.
    Conditioning on A instead compares lambda_max(rho) with 1/d.
    """
    if d < 2 or N < 2:
        raise ValueError("need d >= 2 and N >= 2, got d=%r N=%r" % (d, N))
    if criterion is EntropyCriterion.CSTRE_VS_B:
        return (d - 1) / (d**N - d ** (N - 1) + d - 1)
    if criterion is EntropyCriterion.AR_A_GIVEN_B:
        # lambda2 = eta2: d^{N-1} (1 + (d^N - 1) x) = d^N (1 + (d^{N-2} - 1) x)
        num = d**N - d ** (N - 1)
        den = d ** (N - 1) * (d**N - 1) - d**N * (d ** (N - 2) - 1)
        return num / den
    if criterion in (EntropyCriterion.CSTRE_VS_A, EntropyCriterion.AR_B_GIVEN_A):
        # lambda2 = 1/d
        return (d ** (N - 1) - 1) / (d**N - 1)
    raise ValueError("no q -> infinity threshold for criterion %s" % criterion.value)


def find_threshold(
    d: int,
    N: int,
    criterion: EntropyCriterion,
    q: float,
    x_tol: float = X_TOL,
    max_iter: int = MAX_BISECT_ITER,
    bracket: Optional[tuple[float, float]] = None,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> ThresholdResult:
    """Zero crossing x* of the criterion at fixed q by bisection on [0, 1).

    q = math.inf routes to the analytic asymptotic threshold; q = 1 to the
    von Neumann crossing; PPT ignores q entirely.
    """
    if criterion is EntropyCriterion.PPT:
        return ppt_threshold(d, N, cap=cap, x_tol=x_tol, max_iter=max_iter)
    q = float(q)
    if math.isinf(q):
        x = asymptotic_threshold(d, N, criterion)
        return ThresholdResult(criterion, q, x, (x, x), 0, 0.0)
    if not q > 0:
        raise ValueError("q must be positive or infinity, got %g" % q)

    def f(x: float) -> float:
        return criterion_value(d, N, criterion, q, x, cap)

    lo0, hi0 = bracket if bracket is not None else (0.0, BRACKET_HI)
    lo, hi, _, iterations = _bisect(f, lo0, hi0, x_tol, max_iter)
    x_star = 0.5 * (lo + hi)
    return ThresholdResult(criterion, q, x_star, (lo, hi), iterations, abs(f(x_star)))


def ppt_threshold(
    d: int,
    N: int,
    cap: int = DEFAULT_DIMENSION_CAP,
    x_tol: float = X_TOL,
    max_iter: int = MAX_BISECT_ITER,
) -> ThresholdResult:
    """Where the partial transpose over party 1 loses positivity.

    Dense eigensolve per evaluation; the independent numerical oracle for the
    analytic thresholds.  q is reported as infinity since the answer is
    q-free.
    """

    def f(x: float) -> float:
        return criterion_value(d, N, EntropyCriterion.PPT, math.inf, x, cap)

    lo, hi, _, iterations = _bisect(f, 0.0, BRACKET_HI, x_tol, max_iter)
    x_star = 0.5 * (lo + hi)
    return ThresholdResult(
        EntropyCriterion.PPT, math.inf, x_star, (lo, hi), iterations, abs(f(x_star))
    )


def trace_curve(
    d: int,
    N: int,
    criterion: EntropyCriterion,
    q_grid: Sequence[float],
    x_tol: float = X_TOL,
    max_iter: int = MAX_BISECT_ITER,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> list[CurvePoint]:
    """Sample x*(q) over an ascending q grid, warm-starting from the last x*.

    The crossings shrink as q grows, so the previous x* (plus slack) bounds
    the next bracket from above.  Failed points are marked, not fatal.
    """
    grid = [float(q) for q in q_grid]
    if any(not q > 0 for q in grid):
        raise ValueError("every q in the grid must be positive")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("q grid must be ascending")
    points: list[CurvePoint] = []
    prev: Optional[float] = None
    for q in grid:
        bracket = None
        if prev is not None:
            bracket = (0.0, min(prev + 1e-6, BRACKET_HI))
        try:
            try:
                res = find_threshold(
                    d, N, criterion, q, x_tol=x_tol, max_iter=max_iter, bracket=bracket, cap=cap
                )
            except NoSignChange:
                if bracket is None:
                    raise
                # warm bracket too tight for this q; fall back to the full interval
                res = find_threshold(
                    d, N, criterion, q, x_tol=x_tol, max_iter=max_iter, cap=cap
                )
        except (NoSignChange, ToleranceNotReached) as exc:
            points.append(CurvePoint(q, math.nan, type(exc).__name__))
            continue
        prev = res.x_star
        points.append(CurvePoint(q, res.x_star))
    return points
