"""Tests for the noisy GHZ family and its closed-form spectra."""

import numpy as np
import pytest

from cstre.errors import DimensionCapExceeded, SingularNegativePower
from cstre.linalg import Spectrum, partial_trace
from cstre.states import (
    SandwichSpectrum,
    WernerPopescuParams,
    ghz_vector,
    sandwich_matrix,
    sandwich_matrix_spectrum,
    sandwich_spectrum,
    state_spectrum,
    werner_popescu,
)


def test_ghz_vector_qubit_case():
    v = ghz_vector(2, 3)
    expected = np.zeros(8)
    expected[0] = expected[7] = 1.0 / np.sqrt(2.0)
    np.testing.assert_allclose(v, expected, atol=1e-15)


@pytest.mark.parametrize("d,N", [(3, 2), (3, 3), (4, 2), (5, 3)])
def test_ghz_vector_support_and_norm(d, N):
    v = ghz_vector(d, N)
    assert np.count_nonzero(v) == d
    np.testing.assert_allclose(np.linalg.norm(v), 1.0, atol=1e-15)
    # nonzero amplitudes sit exactly at the all-k basis indices
    for k in range(d):
        index = sum(k * d**j for j in range(N))
        assert v[index] == pytest.approx(1.0 / np.sqrt(d))


def test_ghz_vector_validation_and_cap():
    with pytest.raises(ValueError):
        ghz_vector(1, 3)
    with pytest.raises(ValueError):
        ghz_vector(3, 1)
    with pytest.raises(DimensionCapExceeded):
        ghz_vector(10, 5)  # 10^5 over the default cap


def test_params_validation():
    for bad in [dict(d=1, N=2, x=0.5), dict(d=2, N=1, x=0.5), dict(d=2, N=2, x=-0.1), dict(d=2, N=2, x=1.1)]:
        with pytest.raises(ValueError):
            WernerPopescuParams(**bad)


def test_werner_popescu_limits():
    mixed = werner_popescu(WernerPopescuParams(3, 2, 0.0))
    np.testing.assert_allclose(mixed.matrix, np.eye(9) / 9.0, atol=1e-15)
    pure = werner_popescu(WernerPopescuParams(3, 2, 1.0))
    w = np.linalg.eigvalsh(pure.matrix)
    np.testing.assert_allclose(w[-1], 1.0, atol=1e-12)
    np.testing.assert_allclose(w[:-1], 0.0, atol=1e-12)


def test_werner_popescu_spectrum_d3_n2():
    # eigensolve against the two-level closed form at x = 0.5
    rho = werner_popescu(WernerPopescuParams(3, 2, 0.5))
    w = np.linalg.eigvalsh(rho.matrix)
    np.testing.assert_allclose(w[:8], 0.5 / 9.0, atol=1e-12)
    np.testing.assert_allclose(w[8], (1.0 + 8 * 0.5) / 9.0, atol=1e-12)


def test_state_spectrum_values_d3_n3():
    spec = state_spectrum(WernerPopescuParams(3, 3, 0.1))
    assert spec.lambda1 == pytest.approx(0.9 / 27.0)
    assert spec.lambda1_mult == 26
    assert spec.lambda2 == pytest.approx(3.6 / 27.0)
    assert spec.eta1 == pytest.approx(0.1)
    assert spec.eta1_mult == 6
    assert spec.eta2 == pytest.approx(1.2 / 9.0)
    assert spec.eta2_mult == 3


@pytest.mark.parametrize("d,N,x", [(2, 2, 0.3), (3, 3, 0.85), (4, 2, 0.0), (3, 4, 1.0)])
def test_state_spectrum_normalization(d, N, x):
    spec = state_spectrum(WernerPopescuParams(d, N, x))
    total_state = spec.lambda1_mult * spec.lambda1 + spec.lambda2
    total_marginal = spec.eta1_mult * spec.eta1 + spec.eta2_mult * spec.eta2
    assert total_state == pytest.approx(1.0, abs=1e-14)
    assert total_marginal == pytest.approx(1.0, abs=1e-14)


def test_state_spectrum_pure_limit():
    spec = state_spectrum(WernerPopescuParams(4, 3, 1.0))
    assert spec.lambda1 == 0.0
    assert spec.lambda2 == 1.0
    assert spec.eta1 == 0.0
    assert spec.eta2 == pytest.approx(0.25)


@pytest.mark.parametrize("d,N", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_marginal_consistency(d, N):
    params = WernerPopescuParams(d, N, 0.37)
    rho = werner_popescu(params)
    spec = state_spectrum(params)
    marginal_b = partial_trace(rho, range(2, N + 1))
    got = Spectrum.from_eigenvalues(np.linalg.eigvalsh(marginal_b.matrix))
    want = spec.marginal_pairs()
    assert got.matches(want, tol=1e-10)
    marginal_a = partial_trace(rho, {1})
    np.testing.assert_allclose(marginal_a.matrix, np.eye(d) / d, atol=1e-12)


def test_sandwich_spectrum_formula_d3_n3():
    x, q = 0.25, 2.0
    sw = sandwich_spectrum(WernerPopescuParams(3, 3, x), q)
    e = (1.0 - q) / q
    assert sw.gamma1 == pytest.approx(((1 - x) / 27.0) * ((1 - x) / 9.0) ** e)
    assert sw.gamma2 == pytest.approx(((1 - x) / 27.0) * ((1 + 2 * x) / 9.0) ** e)
    assert sw.gamma3 == pytest.approx(((1 + 26 * x) / 27.0) * ((1 + 2 * x) / 9.0) ** e)
    assert (sw.gamma1_mult, sw.gamma2_mult, sw.gamma3_mult) == (18, 8, 1)


@pytest.mark.parametrize("d,N", [(3, 2), (4, 2), (3, 3), (4, 3)])
def test_sandwich_multiplicities_fill_dimension(d, N):
    sw = sandwich_spectrum(WernerPopescuParams(d, N, 0.3), 2.0)
    assert sw.gamma1_mult + sw.gamma2_mult + sw.gamma3_mult == d**N
    if N == 2:
        assert sw.gamma1_mult == 0


def test_sandwich_spectrum_near_q1_approaches_state_spectrum():
    params = WernerPopescuParams(3, 3, 0.1)
    spec = state_spectrum(params)
    sw = sandwich_spectrum(params, 1.0 + 1e-9)
    assert sw.gamma1 == pytest.approx(spec.lambda1, rel=1e-6)
    assert sw.gamma2 == pytest.approx(spec.lambda1, rel=1e-6)
    assert sw.gamma3 == pytest.approx(spec.lambda2, rel=1e-6)


def test_sandwich_spectrum_rejects_bad_q():
    params = WernerPopescuParams(3, 2, 0.5)
    with pytest.raises(ValueError):
        sandwich_spectrum(params, 1.0)
    with pytest.raises(ValueError):
        sandwich_spectrum(params, 0.0)
    with pytest.raises(ValueError):
        sandwich_spectrum(params, -2.0)


def test_sandwich_spectrum_singular_marginal():
    with pytest.raises(SingularNegativePower):
        sandwich_spectrum(WernerPopescuParams(3, 3, 1.0), 2.0)
    # N = 2 marginal is I/d for every x, so x = 1 stays regular
    sw = sandwich_spectrum(WernerPopescuParams(3, 2, 1.0), 2.0)
    assert sw.gamma3 == pytest.approx(np.sqrt(3.0))


def test_as_spectrum_drops_empty_block_and_merges_at_x0():
    sw = sandwich_spectrum(WernerPopescuParams(4, 2, 0.3), 2.0)
    assert sw.as_spectrum().multiplicities().tolist() == [15, 1]
    # x = 0: all three gamma levels coincide at the maximally mixed value
    flat = sandwich_spectrum(WernerPopescuParams(3, 3, 0.0), 2.0)
    assert flat.as_spectrum().pairs == ((pytest.approx(flat.gamma3), 27),)


def test_sandwich_matrix_x0_is_scalar():
    d, N, q = 3, 3, 2.0
    gamma = sandwich_matrix(WernerPopescuParams(d, N, 0.0), q)
    scale = d ** ((N - 1) * (q - 1) / q) / d**N
    np.testing.assert_allclose(gamma, scale * np.eye(d**N), atol=1e-12)


def test_sandwich_matrix_trace_one_near_q1():
    gamma = sandwich_matrix(WernerPopescuParams(3, 2, 0.4), 1.0 + 1e-9)
    assert np.trace(gamma).real == pytest.approx(1.0, abs=1e-7)


def test_sandwich_matrix_spectrum_d3_n2():
    # brute-force eigenvalues against hand-evaluated level formulas at x=0.3, q=2
    got = sandwich_matrix_spectrum(WernerPopescuParams(3, 2, 0.3), 2.0)
    root3 = np.sqrt(3.0)
    want = Spectrum.from_pairs([((0.7 / 9.0) * root3, 8), ((3.4 / 9.0) * root3, 1)])
    assert got.matches(want, tol=1e-12)


@pytest.mark.parametrize("d,N", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)])
@pytest.mark.parametrize("q", [0.5, 2.0, 5.0])
def test_dense_sandwich_matches_closed_form(d, N, q):
    for x in (0.1, 0.5, 0.9):
        params = WernerPopescuParams(d, N, x)
        dense = sandwich_matrix_spectrum(params, q)
        closed = sandwich_spectrum(params, q).as_spectrum()
        assert closed.matches(dense, tol=1e-9)


def test_sandwich_spectrum_is_frozen_record():
    sw = sandwich_spectrum(WernerPopescuParams(3, 2, 0.3), 2.0)
    assert isinstance(sw, SandwichSpectrum)
    with pytest.raises(AttributeError):
        sw.gamma1 = 0.0
