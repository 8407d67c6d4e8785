"""
Roots of unity and the generalized Pauli matrices
=================================================

Exact arithmetic in Q(zeta_n), then the shift/clock matrices and the
unnormalized Fourier matrix that diagonalizes the shift.
"""

from bosonflow.cyclo import CycloScalar, cyclotomic_polynomial, sigma_power
from bosonflow.xmatrix import fourier_unnormalized, identity, reversal_permutation, sigma1, sigma3

# Scalars are reduced modulo the cyclotomic polynomial, so relations such as
# 1 + s + s^2 = 0 hold on the nose.
n = 3
print("Phi_3 coefficients:", cyclotomic_polynomial(n))
s = sigma_power(n, 1)
print("s^2 =", s * s)
print("1 + s + s^2 =", CycloScalar.one(n) + s + s * s)
print("conj(s) =", s.conjugate(), " complex value:", complex(s))

# 2 cos(72 deg) lives in Q(zeta_5) as s + s^4.
golden = sigma_power(5, 1) + sigma_power(5, 4)
print("s + s^4 in Q(zeta_5):", golden, "~", complex(golden).real)

# The Fourier matrix F = sqrt(n) W turns the clock into the shift and squares
# to n times the index reversal.
for n in (2, 3, 4, 5):
    f = fourier_unnormalized(n)
    fd = f.adjoint()
    print(
        f"n={n}:",
        "F F^dag = nI" if f @ fd == identity(n).scale(n) else "FAIL",
        "| F S3 F^dag = n S1" if f @ sigma3(n) @ fd == sigma1(n).scale(n) else "| FAIL",
        "| F^2 = nK" if f @ f == reversal_permutation(n).scale(n) else "| FAIL",
    )

print(fourier_unnormalized(3))
