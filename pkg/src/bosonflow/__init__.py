"""Exact flow (discrete Fourier) representation of the Bose-Hubbard ring."""

from .boson import BosonPolynomial, ModeMonomial, adjoint, commutator, monomial_product, substitute_even, total_number
from .cyclo import CycloScalar, cyclotomic_polynomial, sigma_power, to_complex
from .hamiltonian import (
    HamiltonianParams,
    Representation,
    VerificationReport,
    build_flow,
    build_flow_hopping,
    build_flow_interaction,
    build_site,
    flow_to_site,
    paper_special_case,
    verify_flow_representation,
    verify_fundamental_formula,
)
from .xmatrix import ExactMatrix, fourier_unnormalized, quadratic_form, reversal_permutation, sigma1, sigma3

__version__ = "0.1.0"
