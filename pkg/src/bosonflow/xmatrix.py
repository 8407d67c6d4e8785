"""Exact n x n matrices over Q(zeta_n).

Holds the generalized Pauli matrices (cyclic shift and clock), the
unnormalized discrete Fourier matrix ``F = sqrt(n) * W`` and the index
reversal permutation ``K = W**2``.  The normalized ``W`` never appears here
because ``sqrt(n)`` is not kept in the field.
"""

from __future__ import annotations

from .boson import BosonPolynomial, ModeMonomial
from .cyclo import CycloScalar, OrderMismatchError, sigma_power

__all__ = [
    "DimensionMismatchError",
    "ExactMatrix",
    "fourier_unnormalized",
    "identity",
    "mat_adjoint",
    "mat_equal",
    "mat_mul",
    "quadratic_form",
    "reversal_permutation",
    "sigma1",
    "sigma3",
]


class DimensionMismatchError(ValueError):
    pass


def _check_size(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"matrix size must be an integer >= 2, got {n!r}")


class ExactMatrix:
    """Square matrix of :class:`CycloScalar` entries, all of order ``n``.

    Rows are stored 0-based; the docstrings of the builders quote 1-based
    positions to match the usual displayed form.
    """

    __slots__ = ("_n", "_rows")

    def __init__(self, n: int, rows) -> None:
        _check_size(n)
        built = []
        for row in rows:
            row = tuple(
                c if isinstance(c, CycloScalar) else CycloScalar.rational(n, c) for c in row
            )
            if len(row) != n:
                raise DimensionMismatchError(f"row of length {len(row)} in a {n}x{n} matrix")
            if any(c.order != n for c in row):
                raise OrderMismatchError(f"entries of a {n}x{n} matrix must lie in Q(zeta_{n})")
            built.append(row)
        if len(built) != n:
            raise DimensionMismatchError(f"{len(built)} rows in a {n}x{n} matrix")
        self._n = n
        self._rows = tuple(built)

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[tuple[CycloScalar, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> CycloScalar:
        i, j = ij
        return self._rows[i][j]

    def _other(self, other: ExactMatrix) -> None:
        if other._n != self._n:
            raise DimensionMismatchError(f"{self._n}x{self._n} vs {other._n}x{other._n}")

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        self._other(other)
        n = self._n
        cols = list(zip(*other._rows))
        rows = []
        for row in self._rows:
            out = []
            for col in cols:
                acc = CycloScalar.zero(n)
                for x, y in zip(row, col):
                    if x and y:
                        acc = acc + x * y
                out.append(acc)
            rows.append(out)
        return ExactMatrix(n, rows)

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._other(other)
        return ExactMatrix(
            self._n, [[x + y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        )

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + other.scale(-1)

    def scale(self, s) -> ExactMatrix:
        return ExactMatrix(self._n, [[c * s for c in r] for r in self._rows])

    def __pow__(self, k: int) -> ExactMatrix:
        result = identity(self._n)
        for _ in range(k):
            result = result @ self
        return result

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self._n, list(zip(*self._rows)))

    def adjoint(self) -> ExactMatrix:
        return ExactMatrix(self._n, [[c.conjugate() for c in col] for col in zip(*self._rows)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    __hash__ = None

    def to_complex(self):
        import numpy as np

        return np.array([[complex(c) for c in r] for r in self._rows])

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(str(c) for c in r) + "]" for r in self._rows)
        return f"ExactMatrix({self._n},\n{body})"

    def to_json(self) -> dict:
        return {"n": self._n, "rows": [[c.to_json() for c in r] for r in self._rows]}

    @classmethod
    def from_json(cls, data: dict) -> ExactMatrix:
        return cls(data["n"], [[CycloScalar.from_json(c) for c in r] for r in data["rows"]])


def identity(n: int) -> ExactMatrix:
    return ExactMatrix(n, [[int(i == j) for j in range(n)] for i in range(n)])


def sigma1(n: int) -> ExactMatrix:
    """Cyclic shift: entry (i, j) is 1 iff i = j + 1 mod n (1 in the top-right corner)."""
    _check_size(n)
    return ExactMatrix(n, [[int(i == (j + 1) % n) for j in range(n)] for i in range(n)])


def sigma3(n: int) -> ExactMatrix:
    """Clock matrix ``diag(1, sigma, ..., sigma**(n-1))``."""
    _check_size(n)
    zero = CycloScalar.zero(n)
    return ExactMatrix(n, [[sigma_power(n, i) if i == j else zero for j in range(n)] for i in range(n)])


def fourier_unnormalized(n: int) -> ExactMatrix:
    """``F[j][k] = sigma**(-j*k)`` (0-based), so that ``W = F / sqrt(n)``."""
    _check_size(n)
    return ExactMatrix(n, [[sigma_power(n, -j * k) for k in range(n)] for j in range(n)])


def reversal_permutation(n: int) -> ExactMatrix:
    """Permutation fixing the first index and reversing the rest; equals ``W**2``."""
    _check_size(n)
    return ExactMatrix(n, [[int((i + j) % n == 0) for j in range(n)] for i in range(n)])


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b


def mat_adjoint(a: ExactMatrix) -> ExactMatrix:
    return a.adjoint()


def mat_equal(a: ExactMatrix, b: ExactMatrix) -> bool:
    if a.n != b.n:
        raise DimensionMismatchError(f"{a.n}x{a.n} vs {b.n}x{b.n}")
    return a == b


def quadratic_form(p: ExactMatrix) -> BosonPolynomial:
    """``sum_{k,l} P[k][l] * b_k * b_l`` as an annihilator-only polynomial on n modes."""
    n = p.n
    zero = (0,) * n
    terms: dict[ModeMonomial, CycloScalar] = {}
    for k, row in enumerate(p.rows):
        for l, c in enumerate(row):
            if c.is_zero():
                continue
            expo = [0] * n
            expo[k] += 1
            expo[l] += 1
            m = ModeMonomial(zero, tuple(expo))
            terms[m] = terms[m] + c if m in terms else c
    return BosonPolynomial(n, terms, order=n)

