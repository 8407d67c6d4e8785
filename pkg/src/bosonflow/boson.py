"""Normal-ordered polynomials in bosonic ladder operators.

A monomial ``prod_i a_i^dag**p_i * prod_i a_i**q_i`` is stored as the pair of
exponent tuples ``(p, q)``.  Polynomials map monomials to nonzero
:class:`~bosonflow.cyclo.CycloScalar` coefficients and are always kept in
normal order, so equality of operators is equality of dictionaries.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, NamedTuple

from .cyclo import CycloScalar, OrderMismatchError

__all__ = [
    "BosonPolynomial",
    "EvenDegreeError",
    "ModeMismatchError",
    "ModeMonomial",
    "adjoint",
    "commutator",
    "monomial_product",
    "poly_add",
    "poly_mul",
    "substitute_even",
    "total_number",
]


class ModeMismatchError(ValueError):
    """Raised when operands act on different numbers of modes."""


class EvenDegreeError(ValueError):
    """Raised when substitute_even meets an odd-degree monomial."""


class ModeMonomial(NamedTuple):
    """``prod a_i^dag**creators[i] * prod a_i**annihilators[i]``.

    Tuple ordering gives the lexicographic order on (creators, annihilators)
    used for canonical iteration.
    """

    creators: tuple[int, ...]
    annihilators: tuple[int, ...]

    @property
    def n_modes(self) -> int:
        return len(self.creators)

    @property
    def degree(self) -> int:
        return sum(self.creators) + sum(self.annihilators)

    @classmethod
    def identity(cls, n_modes: int) -> ModeMonomial:
        return cls((0,) * n_modes, (0,) * n_modes)

    def dagger(self) -> ModeMonomial:
        return ModeMonomial(self.annihilators, self.creators)

    def label(self, symbol: str = "a") -> str:
        parts = []
        for i, p in enumerate(self.creators, 1):
            if p:
                parts.append(f"{symbol}{i}^+" + (f"^{p}" if p > 1 else ""))
        for i, q in enumerate(self.annihilators, 1):
            if q:
                parts.append(f"{symbol}{i}" + (f"^{q}" if q > 1 else ""))
        return " ".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def _reorder_one_mode(q: int, p: int) -> tuple[tuple[int, int, int], ...]:
    # a**q a^dag**p = sum_k k! C(q,k) C(p,k) a^dag**(p-k) a**(q-k)
    return tuple(
        (factorial(k) * comb(q, k) * comb(p, k), p - k, q - k)
        for k in range(min(p, q) + 1)
    )


@lru_cache(maxsize=1 << 16)
def _monomial_product(m1: ModeMonomial, m2: ModeMonomial) -> tuple[tuple[ModeMonomial, int], ...]:
    if len(m1.creators) != len(m2.creators):
        raise ModeMismatchError(
            f"monomials on {len(m1.creators)} and {len(m2.creators)} modes"
        )
    # partial results: (integer coefficient, creators, annihilators)
    partial: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = [(1, (), ())]
    for p1, q1, p2, q2 in zip(m1.creators, m1.annihilators, m2.creators, m2.annihilators):
        if q1 == 0 or p2 == 0:
            partial = [(c, cr + (p1 + p2,), an + (q1 + q2,)) for c, cr, an in partial]
            continue
        expansion = _reorder_one_mode(q1, p2)
        partial = [
            (c * w, cr + (p1 + p,), an + (q + q2,))
            for c, cr, an in partial
            for w, p, q in expansion
        ]
    return tuple((ModeMonomial(cr, an), c) for c, cr, an in partial)


def monomial_product(m1: ModeMonomial, m2: ModeMonomial, order: int = 2) -> BosonPolynomial:
    """Normal-ordered expansion of the operator product ``m1 * m2``."""
    terms = {m: CycloScalar.rational(order, c) for m, c in _monomial_product(m1, m2)}
    return BosonPolynomial(len(m1.creators), terms, order=order)


class BosonPolynomial:
    """Immutable linear combination of normal-ordered monomials.

    ``order`` is the cyclotomic order of the coefficient field Q(zeta_order);
    plain rationals may be passed anywhere a coefficient is expected.
    """

    __slots__ = ("_n_modes", "_order", "_terms")

    def __init__(
        self,
        n_modes: int,
        terms: Mapping[ModeMonomial, object] | None = None,
        *,
        order: int = 2,
    ) -> None:
        if n_modes < 1:
            raise ValueError(f"n_modes must be positive, got {n_modes}")
        self._n_modes = n_modes
        self._order = order
        clean: dict[ModeMonomial, CycloScalar] = {}
        for mono, coeff in (terms or {}).items():
            mono = ModeMonomial(tuple(mono[0]), tuple(mono[1]))
            if len(mono.creators) != n_modes or len(mono.annihilators) != n_modes:
                raise ModeMismatchError(f"monomial {mono} does not act on {n_modes} modes")
            if min(mono.creators + mono.annihilators, default=0) < 0:
                raise ValueError(f"negative exponent in {mono}")
            coeff = self._as_scalar(coeff)
            if mono in clean:
                coeff = clean[mono] + coeff
            clean[mono] = coeff
        self._terms = {m: c for m, c in sorted(clean.items()) if not c.is_zero()}

    @classmethod
    def _trusted(cls, n_modes: int, order: int, terms: dict) -> BosonPolynomial:
        obj = cls.__new__(cls)
        obj._n_modes = n_modes
        obj._order = order
        obj._terms = {m: terms[m] for m in sorted(terms) if not terms[m].is_zero()}
        return obj

    def _as_scalar(self, coeff) -> CycloScalar:
        if isinstance(coeff, CycloScalar):
            if coeff.order != self._order:
                raise OrderMismatchError(
                    f"coefficient in Q(zeta_{coeff.order}) for a polynomial over Q(zeta_{self._order})"
                )
            return coeff
        return CycloScalar.rational(self._order, coeff)

    # constructors

    @classmethod
    def zero(cls, n_modes: int, order: int = 2) -> BosonPolynomial:
        return cls(n_modes, order=order)

    @classmethod
    def identity(cls, n_modes: int, order: int = 2) -> BosonPolynomial:
        return cls(n_modes, {ModeMonomial.identity(n_modes): 1}, order=order)

    @classmethod
    def monomial(
        cls,
        creators: Iterable[int],
        annihilators: Iterable[int],
        coeff=1,
        order: int = 2,
    ) -> BosonPolynomial:
        creators, annihilators = tuple(creators), tuple(annihilators)
        return cls(len(creators), {ModeMonomial(creators, annihilators): coeff}, order=order)

    @classmethod
    def ladder(cls, mode: int, n_modes: int, *, dagger: bool = False, order: int = 2) -> BosonPolynomial:
        """Single ladder operator on ``mode`` (1-based)."""
        if not 1 <= mode <= n_modes:
            raise ValueError(f"mode {mode} outside 1..{n_modes}")
        unit = tuple(int(i == mode - 1) for i in range(n_modes))
        zero = (0,) * n_modes
        return cls.monomial(unit if dagger else zero, zero if dagger else unit, order=order)

    # accessors

    @property
    def n_modes(self) -> int:
        return self._n_modes

    @property
    def order(self) -> int:
        return self._order

    @property
    def terms(self) -> Mapping[ModeMonomial, CycloScalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, mono) -> CycloScalar:
        mono = ModeMonomial(tuple(mono[0]), tuple(mono[1]))
        return self._terms.get(mono, CycloScalar.zero(self._order))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_number_conserving(self) -> bool:
        return all(sum(m.creators) == sum(m.annihilators) for m in self._terms)

    # arithmetic

    def _check(self, other: BosonPolynomial) -> None:
        if other._n_modes != self._n_modes:
            raise ModeMismatchError(
                f"polynomials on {self._n_modes} and {other._n_modes} modes"
            )
        if other._order != self._order:
            raise OrderMismatchError(
                f"polynomials over Q(zeta_{self._order}) and Q(zeta_{other._order})"
            )

    def __add__(self, other) -> BosonPolynomial:
        if not isinstance(other, BosonPolynomial):
            other = BosonPolynomial.identity(self._n_modes, self._order).scale(other)
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return BosonPolynomial._trusted(self._n_modes, self._order, out)

    __radd__ = __add__

    def __neg__(self) -> BosonPolynomial:
        return self.scale(-1)

    def __sub__(self, other) -> BosonPolynomial:
        return self + (-other)

    def __rsub__(self, other) -> BosonPolynomial:
        return (-self) + other

    def scale(self, s) -> BosonPolynomial:
        s = self._as_scalar(s)
        if s.is_zero():
            return BosonPolynomial.zero(self._n_modes, self._order)
        return BosonPolynomial._trusted(
            self._n_modes, self._order, {m: c * s for m, c in self._terms.items()}
        )

    def __mul__(self, other) -> BosonPolynomial:
        if not isinstance(other, BosonPolynomial):
            return self.scale(other)
        self._check(other)
        out: dict[ModeMonomial, CycloScalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                c12 = c1 * c2
                for m, w in _monomial_product(m1, m2):
                    term = c12 if w == 1 else c12.scale(w)
                    out[m] = out[m] + term if m in out else term
        return BosonPolynomial._trusted(self._n_modes, self._order, out)

    def __rmul__(self, other) -> BosonPolynomial:
        return self.scale(other)

    def __pow__(self, k: int) -> BosonPolynomial:
        result = BosonPolynomial.identity(self._n_modes, self._order)
        for _ in range(k):
            result = result * self
        return result

    def adjoint(self) -> BosonPolynomial:
        return BosonPolynomial._trusted(
            self._n_modes,
            self._order,
            {m.dagger(): c.conjugate() for m, c in self._terms.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, BosonPolynomial):
            return NotImplemented
        return (
            self._n_modes == other._n_modes
            and self._order == other._order
            and self._terms == other._terms
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"BosonPolynomial(n_modes={self._n_modes}, order={self._order}, terms={len(self)})"

    def to_string(self, symbol: str = "a") -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c}) {m.label(symbol)}" for m, c in self._terms.items())

    # serialization

    def to_json(self, rep: str = "site") -> dict:
        if rep not in ("site", "flow"):
            raise ValueError(f"rep must be 'site' or 'flow', got {rep!r}")
        return {
            "n_modes": self._n_modes,
            "rep": rep,
            "terms": [
                {
                    "creators": list(m.creators),
                    "annihilators": list(m.annihilators),
                    "coeff": c.to_json(),
                }
                for m, c in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> BosonPolynomial:
        terms = data["terms"]
        order = terms[0]["coeff"]["n"] if terms else data.get("order", 2)
        return cls(
            data["n_modes"],
            {
                ModeMonomial(tuple(t["creators"]), tuple(t["annihilators"])): CycloScalar.from_json(t["coeff"])
                for t in terms
            },
            order=order,
        )


def adjoint(p: BosonPolynomial) -> BosonPolynomial:
    return p.adjoint()


def poly_add(p: BosonPolynomial, q: BosonPolynomial) -> BosonPolynomial:
    return p + q


def poly_mul(p: BosonPolynomial, q: BosonPolynomial) -> BosonPolynomial:
    return p * q


def commutator(p: BosonPolynomial, q: BosonPolynomial) -> BosonPolynomial:
    return p * q - q * p


def total_number(n: int, order: int | None = None) -> BosonPolynomial:
    """Total particle number ``sum_i a_i^dag a_i`` on ``n`` modes."""
    if n < 2:
        raise ValueError(f"ring size must be >= 2, got {n}")
    order = n if order is None else order
    terms = {}
    for i in range(n):
        unit = tuple(int(j == i) for j in range(n))
        terms[ModeMonomial(unit, unit)] = 1
    return BosonPolynomial(n, terms, order=order)


def _linear_power(row: tuple[CycloScalar, ...], power: int) -> dict[tuple[int, ...], CycloScalar]:
    """Expand ``(sum_j row[j] b_j)**power`` for mutually commuting ``b_j``."""
    n = len(row)
    out = {(0,) * n: CycloScalar.one(row[0].order)}
    for _ in range(power):
        nxt: dict[tuple[int, ...], CycloScalar] = {}
        for expo, c in out.items():
            for j, r in enumerate(row):
                if r.is_zero():
                    continue
                e = expo[:j] + (expo[j] + 1,) + expo[j + 1 :]
                t = c * r
                nxt[e] = nxt[e] + t if e in nxt else t
        out = nxt
    return out


def _product_of_powers(rows, exponents) -> dict[tuple[int, ...], CycloScalar]:
    n = len(rows)
    acc: dict[tuple[int, ...], CycloScalar] | None = None
    for row, k in zip(rows, exponents):
        if k == 0:
            continue
        piece = _linear_power(row, k)
        if acc is None:
            acc = piece
            continue
        nxt: dict[tuple[int, ...], CycloScalar] = {}
        for e1, c1 in acc.items():
            for e2, c2 in piece.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                t = c1 * c2
                nxt[e] = nxt[e] + t if e in nxt else t
        acc = nxt
    if acc is None:
        return {(0,) * n: CycloScalar.one(rows[0][0].order)}
    return acc


def substitute_even(p: BosonPolynomial, matrix, s) -> BosonPolynomial:
    """Image of ``p`` under ``a_i -> sqrt(s) * sum_j matrix[i][j] * b_j``.

    Creation operators map with conjugated entries.  Every monomial must have
    even degree ``d``; its image is scaled by ``s**(d/2)`` so no square root
    ever appears.  Unitarity of ``sqrt(s) * matrix`` is the caller's
    responsibility.

    Within a normal-ordered monomial the creators already sit left of the
    annihilators, so each block expands as a commutative polynomial and the
    block product is normal-ordered as it stands.
    """
    rows = [tuple(r) for r in getattr(matrix, "rows", matrix)]
    n = p.n_modes
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ModeMismatchError(f"substitution matrix is not {n}x{n}")
    if any(c.order != p.order for r in rows for c in r):
        raise OrderMismatchError("substitution matrix and polynomial use different fields")
    conj_rows = [tuple(c.conjugate() for c in r) for r in rows]
    s = Fraction(s)

    out: dict[ModeMonomial, CycloScalar] = {}
    for mono, coeff in p.items():
        d = mono.degree
        if d % 2:
            raise EvenDegreeError(f"monomial {mono.label()} has odd degree {d}")
        coeff = coeff.scale(s ** (d // 2))
        cre = _product_of_powers(conj_rows, mono.creators)
        ann = _product_of_powers(rows, mono.annihilators)
        for ec, cc in cre.items():
            cc = cc * coeff
            for ea, ca in ann.items():
                m = ModeMonomial(ec, ea)
                t = cc * ca
                out[m] = out[m] + t if m in out else t
    return BosonPolynomial._trusted(n, p.order, out)
