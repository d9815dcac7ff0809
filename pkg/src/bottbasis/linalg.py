"""Exact linear algebra over the rationals: echelon forms, rank, kernels, sums.

Vectors are tuples of ``Fraction``.  All bases returned here are in reduced
row echelon form with pivots in increasing column order, so they are
canonical for the subspace they span.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .errors import UsageError

Vector = Tuple[Fraction, ...]


class Echelon:
    """Incrementally maintained reduced row echelon basis of a row space."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows = {}  # pivot column -> row (list), row[pivot] == 1

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def full(self) -> bool:
        return len(self._rows) == self.ncols

    def reduce(self, vec) -> list:
        # entries may be int or Fraction; both stay exact under the updates below
        v = list(vec)
        if len(v) != self.ncols:
            raise UsageError(f"vector of length {len(v)} in a space of dimension {self.ncols}")
        for piv, row in self._rows.items():
            c = v[piv]
            if c:
                for j in range(self.ncols):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def add(self, vec) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        v = self.reduce(vec)
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = Fraction(1) / v[piv]
        v = [x * inv for x in v]
        for row in self._rows.values():
            c = row[piv]
            if c:
                for j in range(self.ncols):
                    if v[j]:
                        row[j] -= c * v[j]
        self._rows[piv] = v
        return True

    def copy(self) -> "Echelon":
        new = Echelon(self.ncols)
        new._rows = {p: list(r) for p, r in self._rows.items()}
        return new

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def basis(self) -> Tuple[Vector, ...]:
        return tuple(tuple(self._rows[p]) for p in sorted(self._rows))


def rref(rows: Iterable[Sequence], ncols: int) -> Tuple[Tuple[Vector, ...], List[int]]:
    ech = Echelon(ncols)
    for r in rows:
        if ech.full:
            break
        ech.add(r)
    return ech.basis(), ech.pivots


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: Tuple[Vector, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise UsageError("matrix entries do not match the stated dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int = None) -> "RationalMatrix":
        rows = [tuple(Fraction(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise UsageError("column count needed for an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    def rref(self) -> "RationalMatrix":
        basis, _ = rref(self.entries, self.cols)
        padded = basis + tuple((Fraction(0),) * self.cols for _ in range(self.rows - len(basis)))
        return RationalMatrix(self.rows, self.cols, padded)

    def pivots(self) -> List[int]:
        return rref(self.entries, self.cols)[1]

    def rank(self) -> int:
        return len(self.pivots())

    def kernel(self) -> Tuple[Vector, ...]:
        return kernel(self)


def _as_matrix(m) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix.from_rows(m)


def rank(m) -> int:
    return _as_matrix(m).rank()


def kernel_from_rref(basis: Sequence[Vector], pivots: Sequence[int], ncols: int) -> Tuple[Vector, ...]:
    """Null-space basis read off a reduced echelon form, one vector per free column."""
    pivset = set(pivots)
    out = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, piv in zip(basis, pivots):
            v[piv] = -row[free]
        out.append(tuple(v))
    # rows are reported in echelon order so the kernel basis is canonical too
    return tuple(subspace_sum([out], ncols)) if out else ()


def kernel(m) -> Tuple[Vector, ...]:
    m = _as_matrix(m)
    basis, pivots = rref(m.entries, m.cols)
    return kernel_from_rref(basis, pivots, m.cols)


def subspace_sum(bases: Iterable[Iterable[Sequence]], dim: int) -> Tuple[Vector, ...]:
    """Reduced echelon basis of the sum of the spans of ``bases``."""
    ech = Echelon(dim)
    for b in bases:
        for v in b:
            if ech.full:
                return ech.basis()
            ech.add(v)
    return ech.basis()


def is_subspace(small: Iterable[Sequence], big: Iterable[Sequence], dim: int) -> bool:
    ech = Echelon(dim)
    for v in big:
        ech.add(v)
    return all(ech.contains(v) for v in small)


def complement_in(big: Sequence[Vector], small: Sequence[Vector], dim: int) -> Tuple[Vector, ...]:
    """Echelon complement of span(small) inside span(big).

    Every vector of ``big`` is reduced against the echelon form of ``small``;
    the nonzero results, put in reduced echelon form, have pivots disjoint from
    those of ``small`` and span a complement.
    """
    ech_small = Echelon(dim)
    for v in small:
        ech_small.add(v)
    rest = Echelon(dim)
    for v in big:
        r = ech_small.reduce(v)
        if any(r):
            rest.add(r)
    return rest.basis()


def express(vectors: Sequence[Sequence], target: Sequence):
    """Coefficients ``c`` with ``sum c_i vectors[i] == target``, or None.

    ``vectors`` must be linearly independent; the solution is then unique.
    """
    k = len(vectors)
    rows = [[Fraction(v[r]) for v in vectors] + [Fraction(target[r])] for r in range(len(target))]
    basis, pivots = rref(rows, k + 1)
    if k in pivots:
        return None
    sol = [Fraction(0)] * k
    for row, piv in zip(basis, pivots):
        sol[piv] = row[k]
    return tuple(sol)
