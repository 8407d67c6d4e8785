"""
The on-site interaction in flow modes
=====================================

sum_i a_i^dag^2 a_i^2 equals (1/n) sum_j Q_j^dag Q_j with
Q_j = b^T K S1^j b.  We check it exactly, ring size by ring size, and show
that a tiny corruption of one coefficient is caught and located.
"""

import time
from fractions import Fraction

from bosonflow.hamiltonian import flow_quadratics, fundamental_sum, perturb_coefficient, verify_fundamental_formula

for q in flow_quadratics(4):
    print("Q_j =", q.to_string("b"))

for n in range(2, 9):
    start = time.perf_counter()
    report = verify_fundamental_formula(n)
    print(f"{report.summary()}  [{time.perf_counter() - start:.2f}s]")

# Negative control: shift one coefficient by 1/1000.
bad = perturb_coefficient(fundamental_sum(5), 7, Fraction(1, 1000))
print(verify_fundamental_formula(5, bad).summary())
