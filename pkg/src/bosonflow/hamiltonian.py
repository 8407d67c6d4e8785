"""Bose-Hubbard ring Hamiltonian in the site and flow representations.

Site form::

    H = -J * sum_i (a_{i+1}^dag a_i + h.c.) + U/2 * sum_i a_i^dag^2 a_i^2

with ``a_{n+1} = a_1``.  Flow modes are ``alpha = W^dag a`` with ``W`` the
normalized discrete Fourier matrix; in them the hopping is diagonal and the
on-site interaction becomes

    (1/n) * sum_j Q_j^dag Q_j,   Q_j = alpha^T K Sigma_1^j alpha,

where ``K = W**2`` is the reversal permutation.  Everything here is exact;
``J`` and ``U`` are rationals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .boson import BosonPolynomial, ModeMonomial, substitute_even
from .cyclo import CycloScalar, sigma_power
from .xmatrix import (
    ExactMatrix,
    fourier_unnormalized,
    quadratic_form,
    reversal_permutation,
    sigma1,
)

__all__ = [
    "HamiltonianParams",
    "Representation",
    "VerificationReport",
    "build_flow",
    "build_flow_hopping",
    "build_flow_interaction",
    "build_site",
    "build_site_explicit",
    "compare_polynomials",
    "flow_quadratics",
    "flow_to_site",
    "fundamental_sum",
    "hamiltonian_to_json",
    "onsite_pair_sum",
    "paper_special_case",
    "perturb_coefficient",
    "verify_flow_hopping",
    "verify_flow_representation",
    "verify_fundamental_formula",
    "verify_golden",
]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or an integer; floats are rejected to keep results exact."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        raise ValueError(f"float {text!r} is not an exact rational; pass 'p/q'")
    s = str(text).strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"expected an integer or 'p/q', got {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def _format_rational(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


class Representation(str, enum.Enum):
    SITE = "site"
    FLOW = "flow"


@dataclass(frozen=True)
class HamiltonianParams:
    n: int
    J: Fraction = Fraction(1)
    U: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"ring size must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "J", parse_rational(self.J))
        object.__setattr__(self, "U", parse_rational(self.U))

    def to_json(self) -> dict:
        return {"n": self.n, "J": _format_rational(self.J), "U": _format_rational(self.U)}


@dataclass(frozen=True)
class VerificationReport:
    identity_name: str
    n: int
    passed: bool
    first_mismatch: tuple[ModeMonomial, CycloScalar, CycloScalar] | None = None
    term_counts: tuple[int, int] = (0, 0)
    elapsed: float = field(default=0.0, compare=False)

    def __post_init__(self) -> None:
        if self.passed != (self.first_mismatch is None):
            raise ValueError("a report passes exactly when it has no mismatch")

    def to_json(self) -> dict:
        mismatch = None
        if self.first_mismatch is not None:
            mono, lhs, rhs = self.first_mismatch
            mismatch = {
                "creators": list(mono.creators),
                "annihilators": list(mono.annihilators),
                "lhs": lhs.to_json(),
                "rhs": rhs.to_json(),
            }
        return {
            "identity": self.identity_name,
            "n": self.n,
            "passed": self.passed,
            "mismatch": mismatch,
        }

    def summary(self) -> str:
        status = "passed" if self.passed else "FAILED"
        line = f"{self.identity_name} n={self.n}: {status} (terms {self.term_counts[0]} vs {self.term_counts[1]})"
        if self.first_mismatch is not None:
            mono, lhs, rhs = self.first_mismatch
            line += f"; first mismatch at {mono.label()}: {lhs} != {rhs}"
        return line


def hamiltonian_to_json(poly: BosonPolynomial, rep: Representation | str, params: HamiltonianParams) -> dict:
    rep = Representation(rep)
    data = poly.to_json(rep.value)
    data["params"] = params.to_json()
    return data


# site representation


def _hopping_sandwich(n: int, matrix: ExactMatrix) -> BosonPolynomial:
    # sum_{ij} M_ij a_i^dag a_j
    terms = {}
    for i, row in enumerate(matrix.rows):
        for j, c in enumerate(row):
            if c.is_zero():
                continue
            cr = tuple(int(k == i) for k in range(n))
            an = tuple(int(k == j) for k in range(n))
            terms[ModeMonomial(cr, an)] = c
    return BosonPolynomial(n, terms, order=n)


def onsite_pair_sum(n: int) -> BosonPolynomial:
    """``sum_i a_i^dag^2 a_i^2``."""
    terms = {}
    for i in range(n):
        sq = tuple(2 * int(k == i) for k in range(n))
        terms[ModeMonomial(sq, sq)] = 1
    return BosonPolynomial(n, terms, order=n)


def build_site(params: HamiltonianParams) -> BosonPolynomial:
    """Site Hamiltonian from the shift-matrix sandwich ``a^dag Sigma_1 a + h.c.``."""
    n = params.n
    hop = _hopping_sandwich(n, sigma1(n))
    hop = hop + hop.adjoint()
    return hop.scale(-params.J) + onsite_pair_sum(n).scale(params.U / 2)


def build_site_explicit(params: HamiltonianParams) -> BosonPolynomial:
    """Same operator as :func:`build_site`, summed bond by bond.

    At ``n = 2`` both bonds join the same pair of sites and are kept twice.
    """
    n = params.n
    total = BosonPolynomial.zero(n, order=n)
    for i in range(1, n + 1):
        nxt = i % n + 1
        bond = BosonPolynomial.ladder(nxt, n, dagger=True, order=n) * BosonPolynomial.ladder(i, n, order=n)
        total = total + bond + bond.adjoint()
    return total.scale(-params.J) + onsite_pair_sum(n).scale(params.U / 2)


# flow representation


def build_flow_hopping(params: HamiltonianParams) -> BosonPolynomial:
    """``-2J sum_k cos(2 pi k / n) alpha_{k+1}^dag alpha_{k+1}``, cosines held exactly."""
    n = params.n
    terms = {}
    for k in range(n):
        two_cos = sigma_power(n, k) + sigma_power(n, n - k)
        unit = tuple(int(i == k) for i in range(n))
        terms[ModeMonomial(unit, unit)] = two_cos.scale(-params.J)
    return BosonPolynomial(n, terms, order=n)


def flow_quadratics(n: int) -> list[BosonPolynomial]:
    """``Q_j = alpha^T K Sigma_1^j alpha`` for ``j = 0..n-1``."""
    k = reversal_permutation(n)
    shift = sigma1(n)
    out = []
    power = k
    for _ in range(n):
        out.append(quadratic_form(power))
        power = power @ shift
    return out


def fundamental_sum(n: int) -> BosonPolynomial:
    """``(1/n) sum_j Q_j^dag Q_j`` in flow modes."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"ring size must be an integer >= 2, got {n!r}")
    total = BosonPolynomial.zero(n, order=n)
    for q in flow_quadratics(n):
        total = total + q.adjoint() * q
    return total.scale(Fraction(1, n))


def build_flow_interaction(params: HamiltonianParams) -> BosonPolynomial:
    return fundamental_sum(params.n).scale(params.U / 2)


def build_flow(params: HamiltonianParams) -> BosonPolynomial:
    return build_flow_hopping(params) + build_flow_interaction(params)


def flow_to_site(p: BosonPolynomial) -> BosonPolynomial:
    """Rewrite a flow-mode polynomial in site modes via ``alpha = W^dag a``.

    ``alpha_k = n**-1/2 * sum_i sigma**(k*i) a_i`` (0-based), i.e. the rows of
    ``F^dag`` with scale ``1/n`` per pair of ladder operators.
    """
    n = p.n_modes
    return substitute_even(p, fourier_unnormalized(n).adjoint(), Fraction(1, n))


# verification


def compare_polynomials(name: str, n: int, lhs: BosonPolynomial, rhs: BosonPolynomial) -> VerificationReport:
    """Exact comparison; reports the lexicographically first differing monomial."""
    mismatch = None
    lt, rt = lhs.terms, rhs.terms
    for mono in sorted(set(lt) | set(rt)):
        a, b = lhs.coefficient(mono), rhs.coefficient(mono)
        if a != b:
            mismatch = (mono, a, b)
            break
    return VerificationReport(
        identity_name=name,
        n=n,
        passed=mismatch is None,
        first_mismatch=mismatch,
        term_counts=(len(lt), len(rt)),
    )


def verify_fundamental_formula(n: int, interaction: BosonPolynomial | None = None) -> VerificationReport:
    """Check ``sum_i a_i^dag^2 a_i^2 == flow_to_site((1/n) sum_j Q_j^dag Q_j)``.

    ``interaction`` overrides the flow-side polynomial (used by negative controls).
    """
    flow = fundamental_sum(n) if interaction is None else interaction
    return compare_polynomials("fundamental-formula", n, flow_to_site(flow), onsite_pair_sum(n))


def verify_flow_hopping(params: HamiltonianParams) -> VerificationReport:
    site = build_site(HamiltonianParams(params.n, params.J, 0))
    flow = build_flow_hopping(params)
    return compare_polynomials("flow-hopping", params.n, flow_to_site(flow), site)


def verify_flow_representation(params: HamiltonianParams, flow: BosonPolynomial | None = None) -> VerificationReport:
    flow = build_flow(params) if flow is None else flow
    return compare_polynomials("flow-representation", params.n, flow_to_site(flow), build_site(params))


# transcribed n = 3, 4, 5 closed forms


def _flow_ops(n: int):
    def a(k: int) -> BosonPolynomial:
        return BosonPolynomial.ladder(k, n, order=n)

    def ad(k: int) -> BosonPolynomial:
        return BosonPolynomial.ladder(k, n, dagger=True, order=n)

    return a, ad


def _golden_3(J: Fraction, U: Fraction) -> BosonPolynomial:
    a, ad = _flow_ops(3)
    hop = (ad(1) * a(1) * 2 - ad(2) * a(2) - ad(3) * a(3)).scale(-J)
    inter = (
        (ad(1) ** 2 + ad(2) * ad(3) * 2) * (a(1) ** 2 + a(2) * a(3) * 2)
        + (ad(2) ** 2 + ad(1) * ad(3) * 2) * (a(2) ** 2 + a(1) * a(3) * 2)
        + (ad(3) ** 2 + ad(1) * ad(2) * 2) * (a(3) ** 2 + a(1) * a(2) * 2)
    )
    return hop + inter.scale(U / 6)


def _golden_4(J: Fraction, U: Fraction) -> BosonPolynomial:
    a, ad = _flow_ops(4)
    hop = (ad(1) * a(1) - ad(3) * a(3)).scale(-2 * J)
    inter = (
        (ad(1) ** 2 + ad(2) * ad(4) * 2 + ad(3) ** 2) * (a(1) ** 2 + a(2) * a(4) * 2 + a(3) ** 2)
        + (ad(2) ** 2 + ad(1) * ad(3) * 2 + ad(4) ** 2) * (a(2) ** 2 + a(1) * a(3) * 2 + a(4) ** 2)
        + (ad(1) * ad(2) + ad(3) * ad(4)) * (a(1) * a(2) + a(3) * a(4)) * 4
        + (ad(1) * ad(4) + ad(2) * ad(3)) * (a(1) * a(4) + a(2) * a(3)) * 4
    )
    return hop + inter.scale(U / 8)


def sqrt5_forms() -> tuple[CycloScalar, CycloScalar]:
    """``(sqrt5 - 1, sqrt5 + 1)`` as elements of Q(zeta_5).

    ``sigma + sigma**4 = 2 cos(72deg) = (sqrt5 - 1)/2`` and
    ``sigma**2 + sigma**3 = 2 cos(144deg) = -(sqrt5 + 1)/2``.
    """
    s = lambda k: sigma_power(5, k)  # noqa: E731
    return (s(1) + s(4)).scale(2), (s(2) + s(3)).scale(-2)


def _golden_5(J: Fraction, U: Fraction) -> BosonPolynomial:
    a, ad = _flow_ops(5)
    r5m1, r5p1 = sqrt5_forms()
    hop = (
        ad(1) * a(1) * 4
        + (ad(2) * a(2) + ad(5) * a(5)).scale(r5m1)
        - (ad(3) * a(3) + ad(4) * a(4)).scale(r5p1)
    ).scale(-J / 2)
    inter = (
        (ad(1) ** 2 + ad(2) * ad(5) * 2 + ad(3) * ad(4) * 2) * (a(1) ** 2 + a(2) * a(5) * 2 + a(3) * a(4) * 2)
        + (ad(3) ** 2 + ad(1) * ad(5) * 2 + ad(2) * ad(4) * 2) * (a(3) ** 2 + a(1) * a(5) * 2 + a(2) * a(4) * 2)
        + (ad(5) ** 2 + ad(1) * ad(4) * 2 + ad(2) * ad(3) * 2) * (a(5) ** 2 + a(1) * a(4) * 2 + a(2) * a(3) * 2)
        + (ad(2) ** 2 + ad(1) * ad(3) * 2 + ad(4) * ad(5) * 2) * (a(2) ** 2 + a(1) * a(3) * 2 + a(4) * a(5) * 2)
        + (ad(4) ** 2 + ad(1) * ad(2) * 2 + ad(3) * ad(5) * 2) * (a(4) ** 2 + a(1) * a(2) * 2 + a(3) * a(5) * 2)
    )
    return hop + inter.scale(U / 10)


_GOLDEN = {3: _golden_3, 4: _golden_4, 5: _golden_5}


def paper_special_case(n: int, J=1, U=1) -> BosonPolynomial:
    """Hand-transcribed closed-form flow Hamiltonians for rings of 3, 4 and 5 sites."""
    if n not in _GOLDEN:
        raise ValueError(f"closed forms exist only for n in {sorted(_GOLDEN)}, got {n}")
    return _GOLDEN[n](parse_rational(J), parse_rational(U))


def verify_golden(params: HamiltonianParams) -> VerificationReport:
    golden = paper_special_case(params.n, params.J, params.U)
    return compare_polynomials("golden", params.n, build_flow(params), golden)


def perturb_coefficient(
    p: BosonPolynomial, index: int, delta=Fraction(1, 1000), *, hermitian: bool = False
) -> BosonPolynomial:
    """Add ``delta`` to the ``index``-th coefficient in canonical order.

    With ``hermitian=True`` the adjoint monomial receives the same shift, so
    the result stays self-adjoint and still has a real spectrum.
    """
    monos = list(p)
    if not 0 <= index < len(monos):
        raise IndexError(f"term index {index} outside 0..{len(monos) - 1}")
    mono = monos[index]
    bump = BosonPolynomial(p.n_modes, {mono: delta}, order=p.order)
    if hermitian and mono.dagger() != mono:
        bump = bump + bump.adjoint()
    return p + bump
