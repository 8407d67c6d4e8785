"""
Site and flow Hamiltonians
==========================

Build the ring Hamiltonian both ways, push the flow form back to site modes
and compare exactly.  Also compares with the closed forms for 3, 4 and 5 sites.
"""

from fractions import Fraction

from bosonflow.hamiltonian import (
    HamiltonianParams,
    build_flow,
    build_flow_hopping,
    build_site,
    flow_to_site,
    verify_flow_representation,
    verify_golden,
)

params = HamiltonianParams(3, J=1, U=Fraction(7, 10))

print("site Hamiltonian, 3 sites:")
print(build_site(params).to_string("a"))

# The hopping part is diagonal in flow modes b_k.
print("\nflow hopping:")
print(build_flow_hopping(params).to_string("b"))

flow = build_flow(params)
print(f"\nflow Hamiltonian has {len(flow)} terms")
print("substituted back equals the site form:", flow_to_site(flow) == build_site(params))

for n in range(2, 7):
    print(verify_flow_representation(HamiltonianParams(n, Fraction(2, 3), Fraction(5, 7))).summary())

for n in (3, 4, 5):
    print(verify_golden(HamiltonianParams(n, Fraction(2, 3), Fraction(5, 7))).summary())
