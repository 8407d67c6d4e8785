import json
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonflow.boson import BosonPolynomial, ModeMonomial
from bosonflow.cyclo import sigma_power
from bosonflow.fock import (
    NonHermitianError,
    SectorViolationError,
    SparseOperator,
    enumerate_basis,
    hermitian_eigenvalues,
    operator_matrix,
    site_flow_deviation,
    spectra_match,
    spectrum,
)
from bosonflow.hamiltonian import HamiltonianParams, build_flow, build_site


def mono(cr, an):
    return ModeMonomial(tuple(cr), tuple(an))


def test_basis_examples():
    assert enumerate_basis(2, 2).states == ((0, 2), (1, 1), (2, 0))
    assert len(enumerate_basis(3, 2)) == 6
    assert len(enumerate_basis(3, 6)) == 28
    assert enumerate_basis(4, 0).states == ((0, 0, 0, 0),)


@pytest.mark.parametrize("n, N", [(2, 4), (3, 3), (3, 6), (4, 4), (5, 3)])
def test_basis_size_and_order(n, N):
    basis = enumerate_basis(n, N)
    assert len(basis) == comb(N + n - 1, n - 1)
    assert list(basis.states) == sorted(basis.states)
    assert all(sum(s) == N for s in basis.states)


def test_basis_rejects():
    with pytest.raises(ValueError):
        enumerate_basis(1, 2)
    with pytest.raises(ValueError):
        enumerate_basis(2, -1)


def test_number_operator_matrix():
    basis = enumerate_basis(2, 2)
    num = BosonPolynomial(2, {mono([1, 0], [1, 0]): 1})
    assert np.allclose(operator_matrix(num, basis).to_dense(), np.diag([0, 1, 2]))
    pair = BosonPolynomial(2, {mono([2, 0], [2, 0]): 1})
    assert np.allclose(operator_matrix(pair, basis).to_dense(), np.diag([0, 0, 2]))


def test_hop_matrix():
    basis = enumerate_basis(2, 1)  # (0,1), (1,0)
    hop = BosonPolynomial(2, {mono([0, 1], [1, 0]): 1})
    m = operator_matrix(hop, basis)
    assert m.entries == {(0, 1): 1 + 0j}


def test_sector_violation():
    with pytest.raises(SectorViolationError):
        operator_matrix(BosonPolynomial(2, {mono([1, 0], [0, 0]): 1}), enumerate_basis(2, 1))


def test_eigenvalue_examples():
    assert np.allclose(hermitian_eigenvalues(SparseOperator.from_dense(np.diag([2.0, 0, 1]))), [0, 1, 2])
    assert np.allclose(hermitian_eigenvalues(SparseOperator.from_dense([[0, 1], [1, 0]])), [-1, 1])
    site = build_site(HamiltonianParams(2, 1, 0))
    assert np.allclose(spectrum(site, 1), [-2, 2], atol=1e-12)


def test_non_hermitian_rejected():
    with pytest.raises(NonHermitianError):
        hermitian_eigenvalues(SparseOperator.from_dense([[0, 1], [0, 0]]))


def test_spectra_match_examples():
    assert spectra_match([1, 2, 3], [3, 2, 1]) == (True, 0.0)
    ok, dev = spectra_match([0, 1], [0, 1.5])
    assert not ok and dev == 0.5
    with pytest.raises(ValueError):
        spectra_match([1], [1, 2])


def test_sparse_pruning_and_export():
    op = SparseOperator(3, {(0, 1): 1e-16, (2, 0): 1 - 2j, (0, 0): 0.5})
    assert set(op.entries) == {(0, 0), (2, 0)}
    assert op.to_coo_text() == "0 0 0.5 0.0\n2 0 1.0 -2.0\n"
    data = json.loads(json.dumps(op.to_json()))
    assert data == {"dim": 3, "entries": [[0, 0, 0.5, 0.0], [2, 0, 1.0, -2.0]]}
    assert SparseOperator.from_json(data) == op
    with pytest.raises(IndexError):
        SparseOperator(2, {(2, 0): 1})


def _random_conserving(draw, n):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        cr = draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
        an = draw(st.permutations(cr))  # same total keeps the sector
        coeff = sigma_power(3, draw(st.integers(0, 2))).scale(draw(st.integers(-3, 3)))
        terms[mono(cr, an)] = coeff
    return BosonPolynomial(n, terms, order=3)


@st.composite
def conserving_pair(draw):
    n = draw(st.integers(2, 3))
    return _random_conserving(draw, n), _random_conserving(draw, n), draw(st.integers(0, 4))


@settings(max_examples=40, deadline=None)
@given(conserving_pair())
def test_matrix_is_a_representation(data):
    p, q, N = data
    basis = enumerate_basis(p.n_modes, N)
    mp, mq = operator_matrix(p, basis).to_dense(), operator_matrix(q, basis).to_dense()
    assert np.allclose(operator_matrix(p.adjoint(), basis).to_dense(), mp.conj().T, atol=1e-12)
    assert np.allclose(operator_matrix(p * q, basis).to_dense(), mp @ mq, atol=1e-10)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("N", range(1, 7))
@pytest.mark.parametrize("J, U", [(1, Fraction(7, 10)), (Fraction(3, 2), 0), (0, 1)])
def test_spectral_equivalence(n, N, J, U):
    assert site_flow_deviation(HamiltonianParams(n, J, U), N) < 1e-9


@pytest.mark.parametrize("n, N", [(3, 4), (4, 3)])
def test_eigenvalue_sum_is_trace(n, N):
    op = operator_matrix(build_flow(HamiltonianParams(n, 1, Fraction(7, 10))), enumerate_basis(n, N))
    assert abs(hermitian_eigenvalues(op).sum() - np.trace(op.to_dense()).real) < 1e-9
