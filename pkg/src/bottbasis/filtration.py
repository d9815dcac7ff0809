"""Filtration of a section space by l-vectors, its leaves, and the canonical basis.

A section ``s`` lies in ``F_ell`` iff every parameter exponent vector in the
support of its sweep dominates ``ell`` componentwise.  Because the sweep
multiplies each entry monomial by a fixed parameter monomial, these are linear
conditions on the coordinates of ``s``: the coefficients of all entry
monomials whose parameter weight does not dominate ``ell`` must vanish.

``F_{>ell}`` is the sum of ``F_{ell + e_j}`` over j, and the leaf at ``ell`` is
``F_ell / F_{>ell}``.  All computations are blocked by H-weight.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .bott_samelson import (BottSamelson, SectionPoly, SweptSection, Tableau, check_tableau,
                            enumerate_tableaux, sweep, tableau_weight)
from .errors import UndefinedLVectorError, UsageError
from .laurent import LaurentPoly
from .lie_data import (OneParamSubgroup, Weight, check_word, is_reduced_w0, mu_from_lambda,
                       one_param_subgroup, weyl_dim)
from .linalg import Echelon, Vector, complement_in, express, kernel_from_rref, subspace_sum

Combination = Mapping[Tableau, object]


@dataclass(frozen=True)
class LVector:
    """Element of Z^N under the product partial order."""

    coords: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def _check(self, other):
        if len(other.coords) != len(self.coords):
            raise UsageError("l-vectors of different length")

    def __le__(self, other: "LVector"):
        self._check(other)
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def __ge__(self, other: "LVector"):
        return other <= self

    def __lt__(self, other: "LVector"):
        return self <= other and self != other

    def __gt__(self, other: "LVector"):
        return other < self

    def bump(self, j: int) -> "LVector":
        """``self + e_j`` (0-based j)."""
        c = list(self.coords)
        c[j] += 1
        return LVector(tuple(c))

    def meet(self, other: "LVector") -> "LVector":
        """Componentwise minimum."""
        self._check(other)
        return LVector(tuple(min(a, b) for a, b in zip(self.coords, other.coords)))

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


def l_vector(sw: SweptSection) -> LVector:
    if sw.is_zero():
        raise UndefinedLVectorError("the l-vector of the zero section is undefined")
    return LVector(tuple(sw.min_exponent(j) for j in range(sw.vartable.parameter_count)))


def _dominates(m: Sequence[int], ell: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(m, ell))


@dataclass
class WeightBlock:
    """Sections of one H-weight: basis columns and the monomial coefficient rows.

    ``F_ell`` is the intersection over j of the single-coordinate spaces
    ``{s : ell_{s,j} >= ell_j}``, so its condition rows are the sum over j of
    the rows with ``w_j < ell_j``.  Those sums are precomputed per coordinate
    as nested echelon bases (the "ladder"), each of rank at most ``dim``.
    """

    weight: Weight
    members: List[int]                     # global basis coordinates, in tableau order
    row_weights: List[Tuple[int, ...]]     # parameter exponent vector of each row
    rows: List[Vector]                     # coefficients over ``members``
    values: Tuple[Tuple[int, ...], ...]    # sorted distinct row_weights per coordinate
    _cache: Dict[Tuple, Tuple[Vector, ...]] = field(default_factory=dict, repr=False)
    _ladder: List = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.members)

    def ladder(self):
        """``ladder[j][i]``: echelon basis of rows with ``w_j < values[j][i]``."""
        if self._ladder is None:
            ladder = []
            for j, vals in enumerate(self.values):
                pos = {v: i for i, v in enumerate(vals)}
                buckets = [[] for _ in vals]
                for w, row in zip(self.row_weights, self.rows):
                    buckets[pos[w[j]]].append(row)
                ech = Echelon(self.dim)
                rungs = [()]
                for bucket in buckets:
                    for row in bucket:
                        if ech.full:
                            break
                        ech.add(row)
                    rungs.append(ech.basis())
                ladder.append(rungs)
            self._ladder = ladder
        return self._ladder

    def rung_index(self, j: int, e: int) -> int:
        return bisect_left(self.values[j], e)

    def f_space_at(self, idx: Tuple[int, ...]) -> Tuple[Vector, ...]:
        hit = self._cache.get(idx)
        if hit is not None:
            return hit
        ladder = self.ladder()
        ech = Echelon(self.dim)
        for j, i in enumerate(idx):
            for row in ladder[j][i]:
                if ech.full:
                    break
                ech.add(row)
        basis = kernel_from_rref(ech.basis(), ech.pivots, self.dim)
        self._cache[idx] = basis
        return basis

    def f_space(self, ell: Sequence[int]) -> Tuple[Vector, ...]:
        """Local-coordinate echelon basis of ``F_ell`` inside this block."""
        return self.f_space_at(tuple(self.rung_index(j, e) for j, e in enumerate(ell)))

    def f_greater(self, ell: Sequence[int]) -> Tuple[Vector, ...]:
        ell = LVector(tuple(ell))
        return subspace_sum([self.f_space(ell.bump(j).coords) for j in range(len(ell))],
                            self.dim)


@dataclass
class SectionSpaceContext:
    """Everything needed to evaluate the filtration for one ``(n, word, m)``."""

    n: int
    word: Tuple[int, ...]
    m: Tuple[int, ...]
    subgroup: OneParamSubgroup
    data: BottSamelson
    tableaux: List[Tableau]
    sections: Dict[Tableau, SectionPoly]
    swept: Dict[Tableau, SweptSection]
    basis: List[Tableau]
    blocks: List[WeightBlock]
    relations: Dict[Tableau, Dict[Tableau, Fraction]]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def parameter_count(self) -> int:
        return len(self.word)

    def basis_index(self, t: Tableau) -> int:
        return self._index[t]

    def __post_init__(self):
        self._index = {t: i for i, t in enumerate(self.basis)}

    def swept_of(self, t: Tableau) -> SweptSection:
        if t not in self.swept:
            check_tableau(t, self.n, self.word, self.m)
            s = self.data.section(t)
            self.sections[t] = s
            self.swept[t] = sweep(s, self.subgroup)
        return self.swept[t]

    def sweep_combination(self, combo: Combination) -> SweptSection:
        out = LaurentPoly.zero(self.data.vartable)
        for t, c in _items(combo):
            if c:
                out = out + self.swept_of(t).scale(Fraction(c))
        return out

    def coordinates(self, combo: Combination) -> Vector:
        """Basis coordinates of a tableau combination (dependent tableaux are rewritten)."""
        v = [Fraction(0)] * self.dim
        for t, c in _items(combo):
            c = Fraction(c)
            if t in self._index:
                v[self._index[t]] += c
            elif t in self.relations:
                for b, d in self.relations[t].items():
                    v[self._index[b]] += c * d
            else:
                raise UsageError(f"tableau {t} does not belong to this section space")
        return tuple(v)

    def combination(self, vec: Sequence) -> Tuple[Tuple[Tableau, Fraction], ...]:
        return tuple((self.basis[i], Fraction(c)) for i, c in enumerate(vec) if c)

    def block_of(self, weight: Weight) -> Optional[WeightBlock]:
        return next((b for b in self.blocks if b.weight == weight), None)


def _items(combo):
    if isinstance(combo, Mapping):
        return combo.items()
    return combo


def build_context(n: int, word: Sequence[int], m: Sequence[int]) -> SectionSpaceContext:
    """Enumerate tableaux, compute sections and sweeps, and reduce to a basis per weight."""
    word = check_word(word, n)
    m = tuple(int(x) for x in m)
    if len(m) != len(word):
        raise UsageError("m-vector and word lengths differ")
    if any(x < 0 for x in m):
        raise UsageError("m-vector entries must be non-negative")
    S = one_param_subgroup(n)
    data = BottSamelson(n, word)
    tabs = enumerate_tableaux(word, m, n)
    sections = {t: data.section(t) for t in tabs}
    swept = {t: sweep(s, S) for t, s in sections.items()}

    groups: Dict[Weight, List[Tableau]] = {}
    for t in tabs:
        groups.setdefault(tableau_weight(t, n), []).append(t)

    vt = data.vartable
    basis: List[Tableau] = []
    relations: Dict[Tableau, Dict[Tableau, Fraction]] = {}
    raw_blocks = []
    for wt in sorted(groups):
        members = groups[wt]
        keys = sorted({k for t in members for k, _ in swept[t].items()})
        pos = {k: r for r, k in enumerate(keys)}
        cols = []
        for t in members:
            col = [0] * len(keys)
            for k, c in swept[t].items():
                col[pos[k]] = c
            cols.append(col)
        ech = Echelon(len(keys))
        chosen = []
        for t, col in zip(members, cols):
            if ech.add(col):
                chosen.append((t, col))
        chosen_cols = [c for _, c in chosen]
        for t, col in zip(members, cols):
            if any(t is u for u, _ in chosen):
                continue
            coeffs = express(chosen_cols, col)
            relations[t] = {u: c for (u, _), c in zip(chosen, coeffs) if c}
        raw_blocks.append((wt, chosen, keys, pos))
        basis.extend(t for t, _ in chosen)

    basis.sort(key=Tableau.sort_key)
    index = {t: i for i, t in enumerate(basis)}
    blocks = []
    for wt, chosen, keys, pos in raw_blocks:
        chosen.sort(key=lambda tc: index[tc[0]])
        row_weights = [vt.param_part(k) for k in keys]
        rows = [tuple(Fraction(col[r]) for _, col in chosen) for r in range(len(keys))]
        values = tuple(tuple(sorted({w[j] for w in row_weights})) for j in range(len(word)))
        blocks.append(WeightBlock(wt, [index[t] for t, _ in chosen], row_weights, rows, values))
    return SectionSpaceContext(n, word, m, S, data, tabs, sections, swept, basis, blocks,
                               relations)


def _embed(block: WeightBlock, local: Sequence[Vector], dim: int) -> Tuple[Vector, ...]:
    out = []
    for v in local:
        g = [Fraction(0)] * dim
        for c, i in zip(v, block.members):
            g[i] = c
        out.append(tuple(g))
    return tuple(out)


def f_space(ell, ctx: SectionSpaceContext) -> Tuple[Vector, ...]:
    """Echelon basis (in basis coordinates) of ``F_ell``."""
    ell = tuple(ell)
    if len(ell) != ctx.parameter_count:
        raise UsageError("l-vector has the wrong length")
    parts = [_embed(b, b.f_space(ell), ctx.dim) for b in ctx.blocks]
    return subspace_sum(parts, ctx.dim)


def f_greater(ell, ctx: SectionSpaceContext) -> Tuple[Vector, ...]:
    """Echelon basis of ``F_{>ell} = sum_j F_{ell + e_j}``."""
    ell = LVector(tuple(ell))
    return subspace_sum([f_space(ell.bump(j), ctx) for j in range(len(ell))], ctx.dim)


def leaf_dim(ell, ctx: SectionSpaceContext) -> int:
    return len(f_space(ell, ctx)) - len(f_greater(ell, ctx))


def in_filtration(combo: Combination, ell, ctx: SectionSpaceContext) -> bool:
    """Membership in ``F_ell`` read directly from the sweep's support.

    The zero section belongs to every ``F_ell``.
    """
    sw = ctx.sweep_combination(combo)
    if sw.is_zero():
        return True
    ell = tuple(ell)
    return all(_dominates(mvec, ell) for mvec in sw.parameter_support())


def combination_l_vector(combo: Combination, ctx: SectionSpaceContext) -> LVector:
    return l_vector(ctx.sweep_combination(combo))


def initial_form(combo: Combination, ctx: SectionSpaceContext) -> LaurentPoly:
    """Coefficient of ``t**ell_s`` in the sweep of ``s``; may be zero."""
    sw = ctx.sweep_combination(combo)
    return sw.graded_piece(l_vector(sw).coords)


def check_prevaluation(s1: Combination, s2: Combination, ctx: SectionSpaceContext,
                       alpha=Fraction(-3, 2)) -> bool:
    """``ell(s1 + s2) >= min(ell(s1), ell(s2))`` and ``ell(alpha s) = ell(s)``."""
    alpha = Fraction(alpha)
    if not alpha:
        raise UsageError("scaling factor must be nonzero")
    w1 = ctx.sweep_combination(s1)
    w2 = ctx.sweep_combination(s2)
    total = w1 + w2
    if w1.is_zero() or w2.is_zero() or total.is_zero():
        raise UndefinedLVectorError("prevaluation check needs s1, s2 and s1 + s2 nonzero")
    l1, l2 = l_vector(w1), l_vector(w2)
    ok_sum = l_vector(total) >= l1.meet(l2)
    ok_scale = l_vector(w1.scale(alpha)) == l1 and l_vector(w2.scale(alpha)) == l2
    return ok_sum and ok_scale


@dataclass(frozen=True)
class LeafRecord:
    ell: LVector
    dim: int
    weight: Weight
    representatives: Tuple[Tuple[Tuple[Tableau, Fraction], ...], ...]
    initial_forms: Tuple[LaurentPoly, ...]

    @property
    def representative(self):
        return self.representatives[0] if self.representatives else None

    @property
    def initial_form(self):
        return self.initial_forms[0] if self.initial_forms else None


@dataclass(frozen=True)
class Diagnostics:
    total_dim: int
    dim_v: int
    expected_dim: Optional[int]
    max_leaf_dim: int
    zero_initial_forms: Tuple[LVector, ...]

    @property
    def graded_count_ok(self) -> bool:
        return self.total_dim == self.dim_v and \
            (self.expected_dim is None or self.expected_dim == self.dim_v)

    @property
    def conjecture_status(self) -> str:
        return "consistent" if self.graded_count_ok and self.max_leaf_dim <= 1 else "violated"


@dataclass(frozen=True)
class CanonicalBasis:
    n: int
    word: Tuple[int, ...]
    m: Tuple[int, ...]
    lam: Optional[Weight]
    leaves: Tuple[LeafRecord, ...]
    diagnostics: Diagnostics

    def l_vectors(self) -> List[LVector]:
        return [leaf.ell for leaf in self.leaves]


def _axes(block: WeightBlock, padding: int):
    axes = []
    for vals in block.values:
        if padding and vals:
            vals = tuple(sorted(set(vals) | set(range(vals[0] - padding, vals[-1] + padding + 1))))
        axes.append(vals)
    return axes


def block_leaves(block: WeightBlock, ctx: SectionSpaceContext = None, padding: int = 0):
    """Leaves of one weight block: ``(ell, dim F, dim F_>, complement)`` for dim F > 0.

    Grid points are visited depth-first over coordinates; once the
    accumulated conditions have full rank, ``F`` vanishes on every larger
    point, so the remaining values of that coordinate are skipped.
    """
    axes = _axes(block, padding)
    ladder = block.ladder()
    nparams = len(axes)
    out = []

    def walk(k, ech, prefix):
        if k == nparams:
            ell = tuple(prefix)
            F = block.f_space(ell)
            G = block.f_greater(ell)
            comp = complement_in(F, G, block.dim) if len(F) > len(G) else ()
            out.append((LVector(ell), len(F), len(G), comp))
            return
        for v in axes[k]:
            nxt = ech.copy()
            for row in ladder[k][block.rung_index(k, v)]:
                if nxt.full:
                    break
                nxt.add(row)
            if nxt.full:
                break
            walk(k + 1, nxt, prefix + [v])

    if block.dim:
        walk(0, Echelon(block.dim), [])
    return out


def resolve_m(n: int, word: Sequence[int], lam=None, m=None):
    """Validate a (lambda | m) request; return ``(word, m, lam)``."""
    word = check_word(word, n)
    if (lam is None) == (m is None):
        raise UsageError("give exactly one of lambda or m")
    if lam is not None:
        if not isinstance(lam, Weight):
            lam = Weight.from_fundamental(n, lam)
        if lam.n != n:
            raise UsageError(f"weight {lam} does not belong to SL({n})")
        if not lam.is_dominant():
            raise UsageError(f"weight {lam} is not dominant")
        if not is_reduced_w0(word, n):
            raise UsageError("word is not a reduced expression of w0")
        return word, mu_from_lambda(word, lam), lam
    m = tuple(int(x) for x in m)
    if len(m) != len(word):
        raise UsageError("m-vector and word lengths differ")
    if any(x < 0 for x in m):
        raise UsageError("m-vector entries must be non-negative")
    return word, m, None


def canonical_basis(n: int, word: Sequence[int], lam=None, m=None, grid_padding: int = 0,
                    context: SectionSpaceContext = None) -> CanonicalBasis:
    """Leaf decomposition of the section space for ``(n, word)`` and ``lam`` or ``m``."""
    word, m, lam = resolve_m(n, word, lam, m)
    if context is not None and (context.n, context.word, context.m) != (n, word, m):
        raise UsageError("supplied context was built for a different (n, word, m)")
    ctx = context if context is not None else build_context(n, word, m)
    leaves = []
    zero_forms = []
    for block in ctx.blocks:
        for ell, _, _, comp in block_leaves(block, ctx, grid_padding):
            if not comp:
                continue
            reps = []
            forms = []
            for vec in _embed(block, comp, ctx.dim):
                combo = ctx.combination(vec)
                reps.append(combo)
                form = initial_form(combo, ctx)
                forms.append(form)
                if form.is_zero():
                    zero_forms.append(ell)
            leaves.append(LeafRecord(ell, len(comp), block.weight, tuple(reps), tuple(forms)))
    leaves.sort(key=lambda lf: (lf.ell.coords, lf.weight.coords))
    total = sum(lf.dim for lf in leaves)
    diag = Diagnostics(
        total_dim=total,
        dim_v=ctx.dim,
        expected_dim=weyl_dim(n, lam) if lam is not None else None,
        max_leaf_dim=max((lf.dim for lf in leaves), default=0),
        zero_initial_forms=tuple(zero_forms),
    )
    return CanonicalBasis(n, word, m, lam, tuple(leaves), diag)


def filtration_dims(ctx: SectionSpaceContext, padding: int = 0):
    """``(ell, dim F_ell, dim F_>ell)`` at every grid point where some block has ``F_ell != 0``.

    Since ``F_ell`` splits over weight blocks, global dimensions are block sums.
    """
    points = set()
    for block in ctx.blocks:
        points.update(rec[0].coords for rec in block_leaves(block, ctx, padding))
    out = []
    for ell in sorted(points):
        f = sum(len(b.f_space(ell)) for b in ctx.blocks)
        g = sum(len(b.f_greater(ell)) for b in ctx.blocks)
        out.append((LVector(ell), f, g))
    return out
