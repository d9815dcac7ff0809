"""Symbolic section calculus on Bott-Samelson data for SL(n).

A word ``(i_1, ..., i_N)`` gives one generic parabolic matrix per position;
a tableau picks, for every position k, a multiset of ``m_k`` row subsets of
size ``i_k``.  Its section is the product, over positions and chosen
subsets B, of the minor of ``P_1 ... P_k`` on rows B and columns ``1..i_k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from .errors import UsageError
from .laurent import LaurentPoly, VarTable, matmul, poly_det
from .lie_data import OneParamSubgroup, Weight, check_word

Column = Tuple[int, ...]

# Sections are plain entry-variable polynomials and sweeps are Laurent
# polynomials in the same table; the aliases only document intent.
SectionPoly = LaurentPoly
SweptSection = LaurentPoly


def parabolic_pattern(n: int, i: int) -> List[Tuple[int, int]]:
    """1-based positions of the free entries of P_{alpha_i}: upper triangle plus (i+1, i)."""
    if not 1 <= i <= n - 1:
        raise UsageError(f"root index {i} out of range for n={n}")
    return [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)
            if a <= b or (a, b) == (i + 1, i)]


def make_vartable(n: int, word: Sequence[int]) -> VarTable:
    word = check_word(word, n)
    names = [(k, a, b) for k, i in enumerate(word, 1) for a, b in parabolic_pattern(n, i)]
    return VarTable(len(word), tuple(names))


@dataclass(frozen=True)
class GenericParabolic:
    n: int
    root_index: int
    block: int
    entries: Tuple[Tuple[LaurentPoly, ...], ...]

    def pattern(self) -> List[List[int]]:
        """0/1 matrix marking the free entries."""
        return [[0 if e.is_zero() else 1 for e in row] for row in self.entries]


def generic_parabolic(vartable: VarTable, n: int, i: int, k: int) -> GenericParabolic:
    """Patterned matrix for root ``i`` at word position ``k`` (1-based)."""
    free = set(parabolic_pattern(n, i))
    rows = []
    for a in range(1, n + 1):
        row = []
        for b in range(1, n + 1):
            if (a, b) in free:
                row.append(LaurentPoly.entry(vartable, (k, a, b)))
            else:
                row.append(LaurentPoly.zero(vartable))
        rows.append(tuple(row))
    return GenericParabolic(n, i, k, tuple(rows))


def partial_products(parabolics: Sequence) -> List[list]:
    """``[P_1, P_1 P_2, ..., P_1 ... P_N]`` as lists of rows."""
    out = []
    acc = None
    for p in parabolics:
        mat = [list(r) for r in (p.entries if isinstance(p, GenericParabolic) else p)]
        acc = mat if acc is None else matmul(acc, mat)
        out.append(acc)
    return out


@dataclass(frozen=True)
class Tableau:
    """Per-position multisets of columns; each column is a sorted tuple of rows."""

    columns: Tuple[Tuple[Column, ...], ...]

    def __post_init__(self):
        cols = tuple(tuple(sorted(tuple(sorted(c)) for c in pos)) for pos in self.columns)
        object.__setattr__(self, "columns", cols)

    def sort_key(self):
        # later positions are more significant
        return tuple(reversed(self.columns))

    def label(self) -> str:
        """Concatenated entries in position order, e.g. ``(121)``."""
        return "(" + "".join(str(a) for pos in self.columns for col in pos for a in col) + ")"

    def to_json(self):
        return [[list(col) for col in pos] for pos in self.columns]

    @classmethod
    def from_json(cls, data) -> "Tableau":
        return cls(tuple(tuple(tuple(int(a) for a in col) for col in pos) for pos in data))

    def __str__(self):
        return self.label()


def check_tableau(t: Tableau, n: int, word: Sequence[int], m: Sequence[int]) -> None:
    if len(t.columns) != len(word):
        raise UsageError("tableau has the wrong number of positions")
    for k, (pos, i, mk) in enumerate(zip(t.columns, word, m), 1):
        if len(pos) != mk:
            raise UsageError(f"position {k} holds {len(pos)} columns, expected {mk}")
        for col in pos:
            if len(col) != i or len(set(col)) != i or not all(1 <= a <= n for a in col):
                raise UsageError(f"column {col} at position {k} is not a {i}-subset of 1..{n}")


def enumerate_tableaux(word: Sequence[int], m: Sequence[int], n: int) -> List[Tableau]:
    word = check_word(word, n)
    m = tuple(m)
    if len(m) != len(word):
        raise UsageError("m-vector and word lengths differ")
    if any(x < 0 for x in m):
        raise UsageError("m-vector entries must be non-negative")
    per_pos = []
    for i, mk in zip(word, m):
        cols = list(itertools.combinations(range(1, n + 1), i))
        per_pos.append(list(itertools.combinations_with_replacement(cols, mk)))
    tabs = [Tableau(choice) for choice in itertools.product(*per_pos)]
    return sorted(tabs, key=Tableau.sort_key)


def tableau_weight(t: Tableau, n: int) -> Weight:
    coords = [0] * n
    for pos in t.columns:
        for col in pos:
            for a in col:
                coords[a - 1] += 1
    return Weight(tuple(coords))


class BottSamelson:
    """Symbolic data for one ``(n, word)``: variables, parabolics, partial products."""

    def __init__(self, n: int, word: Sequence[int]):
        self.n = n
        self.word = check_word(word, n)
        self.vartable = make_vartable(n, self.word)
        self.parabolics = [generic_parabolic(self.vartable, n, i, k)
                           for k, i in enumerate(self.word, 1)]
        self._products = None
        self._minors: Dict[Tuple[int, Column], LaurentPoly] = {}

    @property
    def products(self):
        if self._products is None:
            self._products = partial_products(self.parabolics)
        return self._products

    def minor(self, k: int, rows: Column) -> LaurentPoly:
        """Minor of ``P_1 ... P_k`` on ``rows`` and columns ``1..i_k`` (k 1-based)."""
        key = (k, rows)
        if key not in self._minors:
            mat = self.products[k - 1]
            size = self.word[k - 1]
            sub = [[mat[r - 1][c] for c in range(size)] for r in rows]
            self._minors[key] = poly_det(sub)
        return self._minors[key]

    def section(self, t: Tableau) -> SectionPoly:
        return section_of_tableau(t, self)

    def block_positions(self, k: int) -> List[int]:
        """Entry-variable positions belonging to block ``k`` (1-based)."""
        return [pos for pos, name in enumerate(self.vartable.entry_vars) if name[0] == k]

    def multidegree(self, s: SectionPoly) -> Tuple[frozenset, ...]:
        """Per-block sets of term degrees; singletons iff ``s`` is multihomogeneous."""
        return tuple(frozenset(s.degree_in(self.block_positions(k)))
                     for k in range(1, len(self.word) + 1))


def section_of_tableau(t: Tableau, data: BottSamelson) -> SectionPoly:
    if len(t.columns) != len(data.word):
        raise UsageError("tableau does not match the word")
    out = LaurentPoly.const(data.vartable, 1)
    for k, pos in enumerate(t.columns, 1):
        for col in pos:
            if len(col) != data.word[k - 1]:
                raise UsageError(f"column {col} has the wrong size for position {k}")
            out = out * data.minor(k, col)
    return out


def expected_multidegree(word: Sequence[int], m: Sequence[int]) -> Tuple[int, ...]:
    """Degree of a tableau section in block k: ``sum_{k' >= k} m_{k'} i_{k'}``."""
    return tuple(sum(mk * i for mk, i in zip(m[k:], word[k:])) for k in range(len(word)))


@lru_cache(maxsize=64)
def _sweep_rules(vartable: VarTable, a: Tuple[int, ...]) -> Dict[int, Tuple[int, int]]:
    # block k row r is multiplied by t_k ** (-a_r)
    return {pos: (name[0] - 1, -a[name[1] - 1]) for pos, name in enumerate(vartable.entry_vars)}


def sweep(s: SectionPoly, S: OneParamSubgroup) -> SweptSection:
    """Replace every block ``P_k`` by ``S(t_k)^{-1} P_k``."""
    return s.scale_variables(_sweep_rules(s.vartable, S.a))


def isotropy_weights_at_base(word: Sequence[int], j: int,
                             q: Union[int, Sequence[int], Mapping[int, int]]) -> Tuple[int, ...]:
    """Isotropy weights of the j-th circle factor at the base point of the special fibre.

    Zero for the first ``j-1`` positions, then ``-q_{i_k}`` for ``k >= j``.
    ``q`` is a single integer, a sequence indexed by simple root, or a mapping.
    """
    word = tuple(word)
    if not 1 <= j <= len(word):
        raise UsageError(f"index j={j} out of range 1..{len(word)}")
    if isinstance(q, int):
        qi = lambda i: q  # noqa: E731
    elif isinstance(q, Mapping):
        qi = q.__getitem__
    else:
        seq = tuple(q)
        qi = lambda i: seq[i - 1]  # noqa: E731
    return tuple(0 if k < j else -qi(i) for k, i in enumerate(word, 1))
