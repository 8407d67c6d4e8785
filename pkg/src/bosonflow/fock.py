"""Fixed-particle-number Fock sectors and numerical spectra.

Only number-conserving polynomials are turned into matrices, so a sector
with ``N`` particles is closed under the operator and no occupation cutoff
is involved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb, sqrt

import numpy as np

from .boson import BosonPolynomial
from .hamiltonian import HamiltonianParams, build_flow, build_site

__all__ = [
    "FockBasis",
    "NonHermitianError",
    "SectorViolationError",
    "SparseOperator",
    "enumerate_basis",
    "hermitian_eigenvalues",
    "operator_matrix",
    "spectra_match",
    "spectrum",
    "site_flow_deviation",
]

PRUNE = 1e-14


class SectorViolationError(ValueError):
    """The operator changes the particle number and leaves the sector."""


class NonHermitianError(ValueError):
    pass


def _compositions(n: int, total: int):
    # all length-n vectors of non-negative ints summing to total, lexicographic
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest


@dataclass(frozen=True)
class FockBasis:
    n_modes: int
    total_particles: int
    states: tuple[tuple[int, ...], ...]
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.states)})

    def __len__(self) -> int:
        return len(self.states)

    def index(self, state) -> int:
        return self._index[tuple(state)]


def enumerate_basis(n: int, N: int) -> FockBasis:
    """All occupation vectors of ``n`` modes holding ``N`` bosons, in lexicographic order."""
    if n < 2:
        raise ValueError(f"need at least 2 modes, got {n}")
    if N < 0:
        raise ValueError(f"particle number must be non-negative, got {N}")
    states = tuple(_compositions(n, N))
    assert len(states) == comb(N + n - 1, n - 1)
    return FockBasis(n, N, states)


@dataclass(frozen=True)
class SparseOperator:
    """Complex matrix stored as ``{(row, col): value}``; zeros are never stored."""

    dimension: int
    entries: dict

    def __post_init__(self) -> None:
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.dimension and 0 <= c < self.dimension):
                raise IndexError(f"entry ({r}, {c}) outside dimension {self.dimension}")
            v = complex(v)
            if abs(v) >= PRUNE:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, a) -> SparseOperator:
        a = np.asarray(a, dtype=complex)
        rows, cols = np.nonzero(a)
        return cls(a.shape[0], {(int(r), int(c)): a[r, c] for r, c in zip(rows, cols)})

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dimension, self.dimension), dtype=complex)
        for (r, c), v in self.entries.items():
            out[r, c] = v
        return out

    def adjoint(self) -> SparseOperator:
        return SparseOperator(self.dimension, {(c, r): v.conjugate() for (r, c), v in self.entries.items()})

    def __matmul__(self, other: SparseOperator) -> SparseOperator:
        return SparseOperator.from_dense(self.to_dense() @ other.to_dense())

    def to_coo_text(self) -> str:
        lines = [f"{r} {c} {v.real!r} {v.imag!r}" for (r, c), v in sorted(self.entries.items())]
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json(self) -> dict:
        return {
            "dim": self.dimension,
            "entries": [[r, c, v.real, v.imag] for (r, c), v in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> SparseOperator:
        return cls(data["dim"], {(r, c): complex(re, im) for r, c, re, im in data["entries"]})


def _apply_monomial(mono, state):
    """Act with a normal-ordered monomial on an occupation vector: (new state, amplitude)."""
    amp = 1.0
    occ = list(state)
    for i, q in enumerate(mono.annihilators):
        for _ in range(q):
            if occ[i] == 0:
                return None, 0.0
            amp *= sqrt(occ[i])
            occ[i] -= 1
    for i, p in enumerate(mono.creators):
        for _ in range(p):
            occ[i] += 1
            amp *= sqrt(occ[i])
    return tuple(occ), amp


def operator_matrix(p: BosonPolynomial, basis: FockBasis) -> SparseOperator:
    """Matrix of ``p`` on a fixed-N sector; column ``j`` is the image of ``basis.states[j]``."""
    if p.n_modes != basis.n_modes:
        raise ValueError(f"polynomial on {p.n_modes} modes, basis on {basis.n_modes}")
    terms = []
    for mono, coeff in p.items():
        if sum(mono.creators) != sum(mono.annihilators):
            raise SectorViolationError(f"monomial {mono.label()} does not conserve particle number")
        terms.append((mono, complex(coeff)))
    entries: dict[tuple[int, int], complex] = {}
    for col, state in enumerate(basis.states):
        for mono, c in terms:
            target, amp = _apply_monomial(mono, state)
            if target is None:
                continue
            key = (basis.index(target), col)
            entries[key] = entries.get(key, 0) + c * amp
    return SparseOperator(len(basis), entries)


def hermitian_eigenvalues(a: SparseOperator, *, tol: float = 1e-12, with_vectors: bool = False):
    """Ascending eigenvalues of a Hermitian operator via LAPACK ``eigh``.

    Raises :class:`NonHermitianError` when ``max|A - A^dag|`` exceeds ``tol``
    (relative to ``max(1, |A|)``), and ``ArithmeticError`` if any eigenpair
    has residual above ``1e-9 * |A|``.
    """
    dense = a.to_dense()
    if dense.size == 0:
        return (np.zeros(0), np.zeros((0, 0))) if with_vectors else np.zeros(0)
    norm = np.linalg.norm(dense, 2)
    skew = np.abs(dense - dense.conj().T).max()
    if skew > tol * max(1.0, norm):
        raise NonHermitianError(f"operator deviates from Hermitian by {skew:.3e}")
    vals, vecs = np.linalg.eigh(dense)
    resid = np.linalg.norm(dense @ vecs - vecs * vals, axis=0).max()
    if resid > 1e-9 * max(norm, 1e-300):
        raise ArithmeticError(f"eigenpair residual {resid:.3e} exceeds tolerance")
    return (vals, vecs) if with_vectors else vals


def spectra_match(s1, s2, tol: float = 1e-9) -> tuple[bool, float]:
    """Compare two spectra after sorting; returns ``(max deviation < tol, max deviation)``."""
    s1, s2 = np.sort(np.asarray(s1, dtype=float)), np.sort(np.asarray(s2, dtype=float))
    if s1.shape != s2.shape:
        raise ValueError(f"spectra of lengths {len(s1)} and {len(s2)}")
    dev = float(np.max(np.abs(s1 - s2))) if len(s1) else 0.0
    return dev < tol, dev


def spectrum_json(values) -> str:
    return json.dumps([float(v) for v in values])


def spectrum(p: BosonPolynomial, N: int) -> np.ndarray:
    """Sorted spectrum of ``p`` in the ``N``-particle sector."""
    return hermitian_eigenvalues(operator_matrix(p, enumerate_basis(p.n_modes, N)))


def site_flow_deviation(params: HamiltonianParams, N: int, flow: BosonPolynomial | None = None) -> float:
    """Max deviation between site and flow spectra in the ``N``-particle sector.

    Both sectors share the same basis shape; the flow one is labelled by flow
    modes.  ``flow`` overrides the flow Hamiltonian (negative controls).
    """
    flow = build_flow(params) if flow is None else flow
    _, dev = spectra_match(spectrum(build_site(params), N), spectrum(flow, N))
    return dev
