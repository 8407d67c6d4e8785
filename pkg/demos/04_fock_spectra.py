"""
Spectra in fixed particle-number sectors
========================================

Numerical cross-check: the site and flow Hamiltonians are unitarily
equivalent, so their spectra in every N-particle sector coincide.
"""

from fractions import Fraction

import numpy as np

from bosonflow.fock import enumerate_basis, operator_matrix, site_flow_deviation, spectrum
from bosonflow.hamiltonian import HamiltonianParams, build_flow, build_site

params = HamiltonianParams(3, J=1, U=Fraction(7, 10))
basis = enumerate_basis(3, 3)
print(f"{len(basis)} states:", basis.states)

h = operator_matrix(build_site(params), basis)
print("nonzero entries:", len(h.entries))
print(h.to_coo_text()[:200], "...")

np.set_printoptions(precision=6, suppress=True)
print("site spectrum:", spectrum(build_site(params), 3))
print("flow spectrum:", spectrum(build_flow(params), 3))

for n, N in [(2, 4), (3, 3), (3, 6), (4, 4)]:
    dim = len(enumerate_basis(n, N))
    dev = site_flow_deviation(HamiltonianParams(n, 1, Fraction(7, 10)), N)
    print(f"n={n} N={N} dim={dim}: max deviation {dev:.2e}")
