"""Exact lattice polytopes and type-A crystal string coordinates.

Polytopes are stored by their vertex sets.  Hulls are computed by
extreme-point filtering: a point is a vertex iff it is not a convex
combination of the other points, which is decided by an exact phase-one
simplex over ``Fraction`` with Bland's rule.

The crystal ``B(lam)`` is modelled by semistandard tableaux of shape
``lam`` with the usual signature rule on the row reading word.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import UsageError
from .lie_data import Weight, check_word, is_reduced_w0, weyl_dim

Point = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]


# ---------------------------------------------------------------- simplex

def _feasible(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> bool:
    """Is ``target`` in the cone ``{sum x_i columns[i] : x >= 0}``?

    Phase one of the simplex method with one artificial variable per row,
    pivoting by Bland's rule so the procedure terminates.
    """
    rows = len(target)
    ncol = len(columns)
    # tableau rows: [x_0..x_{ncol-1}, art_0..art_{rows-1} | rhs]
    tab = []
    for r in range(rows):
        sign = -1 if target[r] < 0 else 1
        row = [Fraction(sign * columns[c][r]) for c in range(ncol)]
        row += [Fraction(1 if k == r else 0) for k in range(rows)]
        row.append(Fraction(sign * target[r]))
        tab.append(row)
    width = ncol + rows
    basis = [ncol + r for r in range(rows)]
    # objective: minimise the sum of artificials, expressed in non-basic terms
    cost = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(width + 1):
            cost[j] -= row[j]
    for j in range(ncol, width):
        cost[j] = Fraction(0)
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for r in range(rows):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:  # unbounded direction; cannot happen for phase one
            break
        r = best[1]
        piv = tab[r][enter]
        tab[r] = [x / piv for x in tab[r]]
        for rr in range(rows):
            if rr != r and tab[rr][enter]:
                f = tab[rr][enter]
                tab[rr] = [x - f * y for x, y in zip(tab[rr], tab[r])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[r])]
        basis[r] = enter
    return cost[-1] == 0


def in_convex_hull(point: Sequence[int], points: Sequence[Sequence[int]]) -> bool:
    """Exact membership of ``point`` in the convex hull of ``points``."""
    if not points:
        return False
    columns = [tuple(Fraction(x) for x in p) + (Fraction(1),) for p in points]
    target = tuple(Fraction(x) for x in point) + (Fraction(1),)
    return _feasible(columns, target)


# ---------------------------------------------------------------- polytopes

@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many lattice points, stored by its vertices (sorted)."""

    dimension: int
    vertices: Tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(sorted(set(tuple(int(x) for x in v) for v in self.vertices)))
        if not verts:
            raise UsageError("a polytope needs at least one vertex")
        if any(len(v) != self.dimension for v in verts):
            raise UsageError("vertex of the wrong dimension")
        object.__setattr__(self, "vertices", verts)

    def contains(self, point: Sequence[int]) -> bool:
        if len(point) != self.dimension:
            raise UsageError("point of the wrong dimension")
        return in_convex_hull(point, self.vertices)

    def bounding_box(self) -> Tuple[Point, Point]:
        lo = tuple(min(v[k] for v in self.vertices) for k in range(self.dimension))
        hi = tuple(max(v[k] for v in self.vertices) for k in range(self.dimension))
        return lo, hi

    def lattice_points(self) -> Tuple[Point, ...]:
        """All integer points of the hull, by scanning the bounding box."""
        lo, hi = self.bounding_box()
        verts = set(self.vertices)
        out = []
        for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            if p in verts or self.contains(p):
                out.append(p)
        return tuple(out)

    def interior_point(self, point: Sequence[int]) -> bool:
        """In the hull but not a vertex."""
        return tuple(point) not in self.vertices and self.contains(point)


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if not pts:
        raise UsageError("convex hull of an empty point set")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise UsageError("points of mixed dimension")
    verts = [p for i, p in enumerate(pts)
             if not in_convex_hull(p, pts[:i] + pts[i + 1:])]
    return LatticePolytope(dim, tuple(verts))


def _det(a: Sequence[Sequence[int]]) -> int:
    # fraction-free Bareiss on integers
    m = [list(map(int, r)) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(A: Sequence[Sequence[int]]) -> bool:
    A = [list(r) for r in A]
    if any(len(r) != len(A) for r in A):
        return False
    return abs(_det(A)) == 1


def is_upper_triangular(A: Sequence[Sequence[int]]) -> bool:
    return all(A[i][j] == 0 for i in range(len(A)) for j in range(i))


@dataclass(frozen=True)
class AffineLatticeMap:
    """``x -> A x + b`` with integer ``A`` and ``b``."""

    A: Matrix
    b: Point

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in r) for r in self.A)
        b = tuple(int(x) for x in self.b)
        if any(len(r) != len(A) for r in A) or len(b) != len(A):
            raise UsageError("A must be square and match the length of b")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def dimension(self) -> int:
        return len(self.b)

    @classmethod
    def identity(cls, n: int) -> "AffineLatticeMap":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), (0,) * n)

    def __call__(self, x: Sequence[int]) -> Point:
        if len(x) != self.dimension:
            raise UsageError("point dimension does not match the map")
        return tuple(sum(a * v for a, v in zip(row, x)) + c for row, c in zip(self.A, self.b))

    def is_unimodular(self) -> bool:
        return is_unimodular(self.A)


def affine_image(P: LatticePolytope, f: AffineLatticeMap) -> LatticePolytope:
    if P.dimension != f.dimension:
        raise UsageError(f"map of dimension {f.dimension} applied to a polytope of dimension {P.dimension}")
    images = [f(v) for v in P.vertices]
    if f.is_unimodular():
        return LatticePolytope(P.dimension, tuple(images))
    return convex_hull(images)


def polytope_equal(P: LatticePolytope, Q: LatticePolytope) -> bool:
    return P.dimension == Q.dimension and P.vertices == Q.vertices


# ---------------------------------------------------------------- crystals

@dataclass(frozen=True)
class CrystalElement:
    """Semistandard tableau in English notation; ``rows[r]`` is row r+1."""

    n: int
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows if len(r))
        for r, row in enumerate(rows):
            if any(not 1 <= x <= self.n for x in row):
                raise UsageError(f"tableau entry outside 1..{self.n}")
            if any(row[c] > row[c + 1] for c in range(len(row) - 1)):
                raise UsageError("tableau rows must weakly increase")
            if r:
                above = rows[r - 1]
                if len(row) > len(above) or any(row[c] <= above[c] for c in range(len(row))):
                    raise UsageError("tableau columns must strictly increase")
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def reading_word(self) -> List[int]:
        """Rows from bottom to top, each left to right."""
        return [x for row in reversed(self.rows) for x in row]

    def content(self) -> Weight:
        c = [0] * self.n
        for row in self.rows:
            for x in row:
                c[x - 1] += 1
        return Weight(tuple(c))

    def _unmatched(self, i: int):
        """Reading-word slots of the unmatched ``i`` and ``i+1`` letters.

        An ``i+1`` followed later by an ``i`` cancel; what survives is a run of
        unmatched ``i`` letters followed by a run of unmatched ``i+1`` letters.
        """
        word = self.reading_word()
        stack, lone_i = [], []
        for pos, x in enumerate(word):
            if x == i + 1:
                stack.append(pos)
            elif x == i:
                if stack:
                    stack.pop()
                else:
                    lone_i.append(pos)
        return word, lone_i, stack

    def _replace(self, pos: int, value: int) -> "CrystalElement":
        rows = [list(r) for r in reversed(self.rows)]
        for row in rows:
            if pos < len(row):
                row[pos] = value
                break
            pos -= len(row)
        return CrystalElement(self.n, tuple(tuple(r) for r in reversed(rows)))

    def e(self, i: int) -> Optional["CrystalElement"]:
        """Raising operator: the leftmost unmatched ``i+1`` becomes ``i``."""
        self._check_index(i)
        _, _, lone_up = self._unmatched(i)
        return self._replace(lone_up[0], i) if lone_up else None

    def f(self, i: int) -> Optional["CrystalElement"]:
        """Lowering operator: the rightmost unmatched ``i`` becomes ``i+1``."""
        self._check_index(i)
        _, lone_i, _ = self._unmatched(i)
        return self._replace(lone_i[-1], i + 1) if lone_i else None

    def epsilon(self, i: int) -> int:
        return len(self._unmatched(i)[2])

    def phi(self, i: int) -> int:
        return len(self._unmatched(i)[1])

    def _check_index(self, i: int):
        if not 1 <= i <= self.n - 1:
            raise UsageError(f"crystal operator index {i} out of range for n={self.n}")

    def string(self, word: Sequence[int]) -> Point:
        """Raise maximally along ``word`` in order, recording each count."""
        b, out = self, []
        for i in word:
            k = 0
            while True:
                nxt = b.e(i)
                if nxt is None:
                    break
                b, k = nxt, k + 1
            out.append(k)
        return tuple(out)


def _shape(n: int, lam) -> Tuple[int, ...]:
    if not isinstance(lam, Weight):
        lam = Weight.from_fundamental(n, lam)
    if lam.n != n:
        raise UsageError(f"weight {lam} does not belong to SL({n})")
    if not lam.is_dominant():
        raise UsageError(f"weight {lam} is not dominant")
    return tuple(lam.coords)


def highest_weight_element(n: int, lam) -> CrystalElement:
    shape = _shape(n, lam)
    return CrystalElement(n, tuple((r + 1,) * length for r, length in enumerate(shape)))


def crystal_elements(n: int, lam) -> List[CrystalElement]:
    """``B(lam)`` by breadth-first search with lowering operators from the top."""
    top = highest_weight_element(n, lam)
    seen = {top}
    order = [top]
    queue = deque([top])
    while queue:
        b = queue.popleft()
        for i in range(1, n):
            c = b.f(i)
            if c is not None and c not in seen:
                seen.add(c)
                order.append(c)
                queue.append(c)
    return order


def crystal_string_points(n: int, lam, word: Sequence[int]) -> List[Point]:
    """String coordinates of every element of ``B(lam)`` along a reduced word of w0."""
    word = check_word(word, n)
    if not is_reduced_w0(word, n):
        raise UsageError("word is not a reduced expression of w0")
    return sorted(b.string(word) for b in crystal_elements(n, lam))


def string_polytope(n: int, lam, word: Sequence[int]) -> LatticePolytope:
    return convex_hull(crystal_string_points(n, lam, word))


# ---------------------------------------------------------------- equivalence search

ADJOINT_STRING_MAP = AffineLatticeMap(((1, 1, 1), (0, 1, 1), (0, 0, 1)), (-2, -2, -1))


@dataclass(frozen=True)
class Equivalence:
    status: str                         # "EQUIVALENT" or "NOT-FOUND"
    witness: Optional[AffineLatticeMap]
    lattice_points_match: Optional[bool]
    candidates_tried: int


def _offset(A: Matrix, source: Sequence[Point], target: Sequence[Point]) -> Optional[Point]:
    # vertices go to vertices, so vertex centroids correspond
    k = len(source)
    dim = len(A)
    num = [sum(t[c] for t in target) * 1 for c in range(dim)]
    img = [sum(sum(A[r][c] * s[c] for c in range(dim)) for s in source) for r in range(dim)]
    b = []
    for r in range(dim):
        val = Fraction(num[r] - img[r], k)
        if val.denominator != 1:
            return None
        b.append(int(val))
    return tuple(b)


def _upper_triangular(dim: int, bound: int):
    off = [(i, j) for i in range(dim) for j in range(i + 1, dim)]
    for diag in itertools.product((1, -1), repeat=dim):
        for vals in itertools.product(range(-bound, bound + 1), repeat=len(off)):
            A = [[0] * dim for _ in range(dim)]
            for k in range(dim):
                A[k][k] = diag[k]
            for (i, j), v in zip(off, vals):
                A[i][j] = v
            yield tuple(tuple(r) for r in A)


def find_equivalence(source: LatticePolytope, target: LatticePolytope,
                     source_points: Sequence[Point] = None, target_points: Sequence[Point] = None,
                     preferred: Sequence[AffineLatticeMap] = (), bound: int = 1,
                     max_candidates: int = 200_000) -> Equivalence:
    """Search an upper-triangular unimodular ``x -> Ax+b`` carrying ``source`` onto ``target``.

    ``preferred`` maps are tried first, then the identity and the all-ones
    upper-triangular matrix, then every upper-triangular matrix with
    diagonal entries ``+-1`` and off-diagonal entries in ``[-bound, bound]``.
    The offset is forced by matching vertex centroids.  Failure within the
    budget yields NOT-FOUND, which is not a proof of inequivalence.
    """
    dim = source.dimension
    if target.dimension != dim:
        raise UsageError("polytopes of different dimension")

    def lattice_match(f):
        if source_points is None or target_points is None:
            return None
        return sorted(set(f(p) for p in source_points)) == sorted(set(map(tuple, target_points)))

    tried = 0
    if len(source.vertices) == len(target.vertices):
        ones = tuple(tuple(int(j >= i) for j in range(dim)) for i in range(dim))
        seeds = [f.A for f in preferred if f.dimension == dim]
        seeds += [AffineLatticeMap.identity(dim).A, ones]
        for A in itertools.chain(seeds, _upper_triangular(dim, bound)):
            if tried >= max_candidates:
                break
            tried += 1
            if not is_upper_triangular(A) or not is_unimodular(A):
                continue
            b = _offset(A, source.vertices, target.vertices)
            if b is None:
                continue
            f = AffineLatticeMap(A, b)
            if polytope_equal(affine_image(source, f), target):
                return Equivalence("EQUIVALENT", f, lattice_match(f), tried)
    return Equivalence("NOT-FOUND", None, None, tried)


def string_compare(n: int, lam, word: Sequence[int], l_vectors: Sequence[Sequence[int]],
                   affine_map: AffineLatticeMap = None, bound: int = 1) -> Dict:
    """Compare the string polytope of ``B(lam)`` with the hull of the given l-vectors."""
    string_pts = crystal_string_points(n, lam, word)
    lpts = sorted(set(tuple(v) for v in l_vectors))
    src, tgt = convex_hull(string_pts), convex_hull(lpts)
    preferred = []
    if affine_map is not None:
        preferred.append(affine_map)
    elif n == 3 and tuple(word) == (1, 2, 1) and _shape(n, lam) == (2, 1, 0):
        preferred.append(ADJOINT_STRING_MAP)
    eq = None
    if affine_map is not None:
        if affine_map.dimension != src.dimension:
            raise UsageError("configured map does not match the word length")
        ok = polytope_equal(affine_image(src, affine_map), tgt)
        match = sorted(set(affine_map(p) for p in string_pts)) == lpts
        eq = Equivalence("EQUIVALENT" if ok else "NOT-FOUND", affine_map if ok else None,
                         match if ok else None, 1)
    if eq is None or eq.status != "EQUIVALENT":
        eq = find_equivalence(src, tgt, string_pts, lpts, preferred, bound)
    return {
        "status": eq.status,
        "witness": None if eq.witness is None else {"A": [list(r) for r in eq.witness.A],
                                                     "b": list(eq.witness.b)},
        "lattice_points_match": eq.lattice_points_match,
        "candidates_tried": eq.candidates_tried,
        "string_points": [list(p) for p in string_pts],
        "l_vectors": [list(p) for p in lpts],
        "string_vertices": [list(v) for v in src.vertices],
        "l_vector_vertices": [list(v) for v in tgt.vertices],
        "crystal_size": len(string_pts),
        "expected_size": weyl_dim(n, Weight(_shape(n, lam))),
    }
