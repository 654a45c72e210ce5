"""Dense Hermitian linear algebra on tensor-product spaces.

Matrices are plain complex ``numpy.ndarray``; subsystems of a multipartite
density matrix are indexed 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable

import numpy as np

from .errors import (
    BadSubsystemIndex,
    NoConvergence,
    NotHermitian,
    SingularNegativePower,
)

TOL_HERM = 1e-12
PSD_TOL = 1e-10
SUPPORT_TOL = 1e-12
MERGE_TOL = 1e-10
TRACE_TOL = 1e-12


def is_hermitian(m: np.ndarray, tol: float = TOL_HERM) -> bool:
    """Check Hermiticity entrywise: max |M - M^dag| <= tol."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def eig_hermitian(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (w, V) with real eigenvalues w ascending and orthonormal columns
    V[:, i] such that M = V diag(w) V^dag.
    """
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m):
        raise NotHermitian("matrix is not Hermitian within %g" % TOL_HERM)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return w, v


def frac_power(m: np.ndarray, p: float, support_restricted: bool = False) -> np.ndarray:
    """Real power M^p of a Hermitian PSD matrix via its eigendecomposition.

    With ``support_restricted`` eigenvalues below SUPPORT_TOL are treated as
    exact zeros and mapped to zero, giving the power on the support only.
    Otherwise a negative ``p`` on a singular matrix raises.
    """
    w, v = eig_hermitian(m)
    if np.min(w) < -PSD_TOL:
        raise ValueError("matrix has a negative eigenvalue beyond %g" % PSD_TOL)
    w = np.clip(w, 0.0, None)
    small = w <= SUPPORT_TOL
    if support_restricted:
        powered = np.zeros_like(w)
        powered[~small] = w[~small] ** p
    else:
        if p < 0 and np.any(small):
            raise SingularNegativePower(
                "negative power %g of a singular matrix; pass support_restricted=True "
                "to work on the support" % p
            )
        powered = w**p
    return (v * powered) @ v.conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, row-major ordering."""
    return np.kron(np.asarray(a), np.asarray(b))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, PSD matrix over subsystems A_1 x ... x A_N.

    ``dims`` lists the local dimensions in order; their product must equal the
    matrix dimension.  Validation runs on construction.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        if any(d < 1 for d in dims) or prod(dims) != m.shape[0]:
            raise ValueError(
                "subsystem dimensions %r do not factor dimension %d" % (dims, m.shape[0])
            )
        if not is_hermitian(m):
            raise NotHermitian("density matrix is not Hermitian within %g" % TOL_HERM)
        if abs(m.trace() - 1.0) > TRACE_TOL:
            raise ValueError("trace must be 1 within %g, got %r" % (TRACE_TOL, m.trace()))
        if np.linalg.eigvalsh(m).min() < -PSD_TOL:
            raise ValueError("density matrix has an eigenvalue below -%g" % PSD_TOL)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)


def _validate_subsystems(which: Iterable[int], n: int) -> set[int]:
    chosen = {int(k) for k in which}
    if not chosen:
        raise BadSubsystemIndex("subsystem selection is empty")
    if not chosen <= set(range(1, n + 1)):
        raise BadSubsystemIndex(
            "subsystem indices must lie in 1..%d, got %r" % (n, sorted(chosen))
        )
    return chosen


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Trace out all subsystems not in ``keep`` (1-based indices)."""
    n = rho.n_subsystems
    chosen = _validate_subsystems(keep, n)
    t = rho.matrix.reshape(rho.dims + rho.dims)
    row = list(range(n))
    col = [n + i if i + 1 in chosen else i for i in range(n)]
    out = [i for i in range(n) if i + 1 in chosen]
    out += [n + i for i in range(n) if i + 1 in chosen]
    reduced = np.einsum(t, row + col, out)
    kept_dims = tuple(rho.dims[i] for i in range(n) if i + 1 in chosen)
    dim = prod(kept_dims)
    return DensityMatrix(reduced.reshape(dim, dim), kept_dims)


def partial_transpose(rho: DensityMatrix, part: Iterable[int]) -> np.ndarray:
    """Transpose the subsystems in ``part`` (1-based); returns a plain array.

    The result is generally not positive semidefinite, so no DensityMatrix.
    """
    n = rho.n_subsystems
    chosen = _validate_subsystems(part, n)
    t = rho.matrix.reshape(rho.dims + rho.dims)
    for p in sorted(chosen):
        t = np.swapaxes(t, p - 1, n + p - 1)
    return np.ascontiguousarray(t.reshape(rho.dim, rho.dim))


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicities, ascending.

    ``pairs`` holds (value, multiplicity) tuples; nearby eigenvalues are
    coalesced at construction so degenerate levels appear once.
    """

    pairs: tuple[tuple[float, int], ...]

    @classmethod
    def from_eigenvalues(cls, values: np.ndarray, merge_tol: float = MERGE_TOL) -> "Spectrum":
        """Group a sorted-or-not array of eigenvalues into degenerate levels.

        Adjacent values closer than ``merge_tol`` join the same level; the
        level value is the mean of its members.
        """
        vals = np.sort(np.asarray(values, dtype=float))
        groups: list[list[float]] = []
        for v in vals:
            if groups and v - groups[-1][-1] <= merge_tol:
                groups[-1].append(float(v))
            else:
                groups.append([float(v)])
        return cls(tuple((float(np.mean(g)), len(g)) for g in groups))

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[float, int]], merge_tol: float = MERGE_TOL
    ) -> "Spectrum":
        """Build from (value, multiplicity) pairs, merging coincident values."""
        items = sorted((float(v), int(m)) for v, m in pairs if int(m) > 0)
        merged: list[list[float]] = []
        for v, m in items:
            if merged and v - merged[-1][0] <= merge_tol:
                prev_v, prev_m = merged[-1]
                tot = prev_m + m
                merged[-1] = [(prev_v * prev_m + v * m) / tot, tot]
            else:
                merged.append([v, m])
        return cls(tuple((v, int(m)) for v, m in merged))

    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.pairs])

    def multiplicities(self) -> np.ndarray:
        return np.array([m for _, m in self.pairs], dtype=int)

    def total_multiplicity(self) -> int:
        return int(sum(m for _, m in self.pairs))

    def matches(self, other: "Spectrum", tol: float = 1e-10) -> bool:
        """Same level structure and values within ``tol``."""
        if len(self.pairs) != len(other.pairs):
            return False
        return all(
            m1 == m2 and abs(v1 - v2) <= tol
            for (v1, m1), (v2, m2) in zip(self.pairs, other.pairs)
        )
