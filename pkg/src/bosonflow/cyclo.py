"""Exact arithmetic in the cyclotomic field Q(zeta_n).

An element is a rational polynomial in ``sigma = exp(2*pi*i/n)`` reduced
modulo the n-th cyclotomic polynomial, so two scalars are equal exactly when
their coefficient vectors are equal.

Internally a scalar stores integer numerators over one common positive
denominator; the public ``coeffs`` view hands out :class:`fractions.Fraction`.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

__all__ = [
    "CycloScalar",
    "OrderMismatchError",
    "Rational",
    "cyclotomic_polynomial",
    "sigma_power",
    "to_complex",
]

Rational = Fraction


class OrderMismatchError(ValueError):
    """Raised when scalars of different cyclotomic orders are combined."""


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic; coefficients are stored low degree first
    num = list(num)
    dq = len(den) - 1
    if len(num) <= dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            quot[i - dq] = c
            for j in range(dq + 1):
                num[i - dq + j] -= c * den[j]
    return quot, num[:dq]


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Return the integer coefficients of Phi_n, constant term first.

    Computed by exact division of ``x**n - 1`` by every ``Phi_d`` with ``d``
    a proper divisor of ``n``.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem), "cyclotomic division left a remainder"
    return tuple(poly)


class _Field:
    """Per-order reduction tables, shared by every scalar of that order."""

    def __init__(self, n: int) -> None:
        self.n = n
        phi = cyclotomic_polynomial(n)
        self.degree = deg = len(phi) - 1
        # powers[k] = sigma**k reduced, for 0 <= k < max(n, 2*deg - 1)
        size = max(n, 2 * deg - 1)
        powers = []
        cur = [1] + [0] * (deg - 1)
        for _ in range(size):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(deg):
                    cur[j] -= top * phi[j]
        self.powers = tuple(powers)
        # exp(2 pi i k / n), built from exact angles to keep round-off per term
        self.roots = tuple(cmath.exp(2j * math.pi * k / n) for k in range(n))


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


def _check_order(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"cyclotomic order must be an integer >= 2, got {n!r}")


class CycloScalar:
    """Immutable element of Q(zeta_n) in canonical (reduced) form."""

    __slots__ = ("_n", "_nums", "_den", "_hash")

    def __init__(self, n: int, coeffs=()) -> None:
        _check_order(n)
        deg = _field(n).degree
        fracs = [Fraction(c) for c in coeffs]
        if len(fracs) > deg:
            raise ValueError(
                f"{len(fracs)} coefficients given but Q(zeta_{n}) has degree {deg}; "
                "use CycloScalar.from_powers for unreduced input"
            )
        fracs += [Fraction(0)] * (deg - len(fracs))
        den = math.lcm(*(f.denominator for f in fracs))
        self._set(n, [f.numerator * (den // f.denominator) for f in fracs], den)

    def _set(self, n: int, nums: list[int], den: int) -> None:
        g = math.gcd(den, *nums)
        if g > 1:
            nums = [x // g for x in nums]
            den //= g
        if not any(nums):
            den = 1
        self._n = n
        self._nums = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, n: int, nums: list[int], den: int) -> CycloScalar:
        obj = cls.__new__(cls)
        obj._set(n, nums, den)
        return obj

    @classmethod
    def from_powers(cls, n: int, coeffs) -> CycloScalar:
        """Build ``sum_k coeffs[k] * sigma**k`` for any number of terms, then reduce."""
        _check_order(n)
        total = cls.zero(n)
        for k, c in enumerate(coeffs):
            if c:
                total = total + sigma_power(n, k).scale(c)
        return total

    @classmethod
    def zero(cls, n: int) -> CycloScalar:
        _check_order(n)
        return cls._raw(n, [0] * _field(n).degree, 1)

    @classmethod
    def rational(cls, n: int, value) -> CycloScalar:
        _check_order(n)
        f = Fraction(value)
        nums = [0] * _field(n).degree
        nums[0] = f.numerator
        return cls._raw(n, nums, f.denominator)

    @classmethod
    def one(cls, n: int) -> CycloScalar:
        return cls.rational(n, 1)

    @property
    def order(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._nums)

    def is_zero(self) -> bool:
        return not any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._nums[0], self._den)

    # ring operations

    def _coerce(self, other) -> CycloScalar:
        if isinstance(other, CycloScalar):
            if other._n != self._n:
                raise OrderMismatchError(
                    f"cannot combine Q(zeta_{self._n}) with Q(zeta_{other._n})"
                )
            return other
        if isinstance(other, (int, _RationalABC)):
            return CycloScalar.rational(self._n, other)
        return NotImplemented

    def __add__(self, other) -> CycloScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            nums = [x + y for x, y in zip(self._nums, other._nums)]
            return CycloScalar._raw(self._n, nums, d1)
        den = d1 * d2 // math.gcd(d1, d2)
        f1, f2 = den // d1, den // d2
        nums = [x * f1 + y * f2 for x, y in zip(self._nums, other._nums)]
        return CycloScalar._raw(self._n, nums, den)

    __radd__ = __add__

    def __neg__(self) -> CycloScalar:
        return CycloScalar._raw(self._n, [-x for x in self._nums], self._den)

    def __sub__(self, other) -> CycloScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> CycloScalar:
        return (-self) + other

    def __mul__(self, other) -> CycloScalar:
        if isinstance(other, (int, _RationalABC)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._nums, other._nums
        powers = _field(self._n).powers
        deg = len(a)
        out = [0] * deg
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        for k, c in enumerate(conv):
            if c:
                if k < deg:
                    out[k] += c
                else:
                    for j, r in enumerate(powers[k]):
                        if r:
                            out[j] += c * r
        return CycloScalar._raw(self._n, out, self._den * other._den)

    __rmul__ = __mul__

    def scale(self, r) -> CycloScalar:
        """Multiply by a rational number."""
        f = Fraction(r)
        return CycloScalar._raw(
            self._n, [x * f.numerator for x in self._nums], self._den * f.denominator
        )

    def __truediv__(self, r) -> CycloScalar:
        if isinstance(r, CycloScalar):
            if not r.is_rational():
                raise TypeError("division is only defined by rational scalars")
            r = r.as_rational()
        f = Fraction(r)
        if f == 0:
            raise ZeroDivisionError("division of a cyclotomic scalar by zero")
        return self.scale(1 / f)

    def __pow__(self, k: int) -> CycloScalar:
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = CycloScalar.one(self._n), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> CycloScalar:
        """Complex conjugate: the automorphism sigma -> sigma**(n-1)."""
        n = self._n
        powers = _field(n).powers
        out = [0] * len(self._nums)
        for k, x in enumerate(self._nums):
            if x:
                for j, r in enumerate(powers[(n - k) % n]):
                    if r:
                        out[j] += x * r
        return CycloScalar._raw(n, out, self._den)

    def __complex__(self) -> complex:
        roots = _field(self._n).roots
        total = 0j
        for k, x in enumerate(self._nums):
            if x:
                total += (x / self._den) * roots[k]
        return total

    # comparison and display

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloScalar):
            return (
                self._n == other._n
                and self._den == other._den
                and self._nums == other._nums
            )
        if isinstance(other, (int, _RationalABC)):
            return self.is_rational() and Fraction(self._nums[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._nums, self._den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"CycloScalar({self._n}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "s" if k == 1 else f"s^{k}"
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"({c})*{mono}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    # serialization

    def to_json(self) -> dict:
        return {
            "n": self._n,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> CycloScalar:
        return cls(data["n"], [Fraction(int(p), int(q)) for p, q in data["coeffs"]])


@lru_cache(maxsize=4096)
def sigma_power(n: int, k: int) -> CycloScalar:
    """Return ``sigma**k`` in Q(zeta_n); ``k`` is taken modulo ``n``."""
    _check_order(n)
    return CycloScalar._raw(n, list(_field(n).powers[k % n]), 1)


def to_complex(a: CycloScalar) -> complex:
    return complex(a)
