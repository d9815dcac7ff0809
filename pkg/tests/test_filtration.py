import itertools
from fractions import Fraction

import pytest
import sympy

from bottbasis.acceptance import EXAMPLE_TABLE, example_context
from bottbasis.bott_samelson import tableau_weight
from bottbasis.errors import UndefinedLVectorError, UsageError
from bottbasis.filtration import (LVector, canonical_basis, check_prevaluation,
                                  combination_l_vector, f_greater, f_space, filtration_dims,
                                  in_filtration, initial_form, l_vector, leaf_dim)
from bottbasis.laurent import LaurentPoly
from bottbasis.lie_data import Weight, one_param_subgroup, weight_multiplicities, weyl_dim
from bottbasis.linalg import is_subspace

from conftest import sym_vars, to_sympy

CTX = example_context()
TABS = {x.label(): x for x in CTX.tableaux}


def s(label):
    return {TABS[label]: 1}


def test_lvector_order():
    a, b = LVector((0, 1)), LVector((1, 1))
    assert a <= b and a < b and b >= a and not b <= a
    c = LVector((1, 0))
    assert not a <= c and not c <= a
    assert a.meet(c) == LVector((0, 0))
    assert a.bump(0) == b


def test_l_vector_examples():
    assert l_vector(CTX.swept_of(TABS["(121)"])).coords == (-2, -2, -1)
    assert l_vector(CTX.swept_of(TABS["(233)"])).coords == (2, 1, 0)
    assert combination_l_vector({TABS["(231)"]: 1, TABS["(132)"]: -1}, CTX).coords == (0, 0, 0)
    with pytest.raises(UndefinedLVectorError):
        l_vector(LaurentPoly.zero(CTX.data.vartable))


def test_in_filtration_examples():
    assert in_filtration(s("(231)"), (0, -1, -1), CTX)
    assert not in_filtration(s("(231)"), (0, 0, 0), CTX)
    assert in_filtration({TABS["(231)"]: 1, TABS["(132)"]: -1}, (0, 0, 0), CTX)
    assert all(in_filtration(s(lab), (-10, -10, -10), CTX) for lab in TABS)
    assert in_filtration({}, (99, 99, 99), CTX)


def test_f_space_examples():
    assert len(f_space((0, -1, -1), CTX)) == 5
    assert len(f_space((-10, -10, -10), CTX)) == 8
    assert len(f_space((10, 10, 10), CTX)) == 0
    assert len(f_greater((0, -1, -1), CTX)) == 4
    assert leaf_dim((0, -1, -1), CTX) == 1
    assert len(f_greater((5, 5, 5), CTX)) == 0
    with pytest.raises(UsageError):
        f_space((0, 0), CTX)


def _sympy_dims(ctx, points):
    """dim F_ell from sympy expansions of the sweeps, independent of the block machinery."""
    vt = ctx.data.vartable
    params, entries = sym_vars(vt)
    polys = [sympy.Poly(to_sympy(ctx.swept_of(t)) * sympy.prod([x ** 10 for x in params]),
                        *(params + entries)) for t in ctx.basis]
    monos = sorted({m for P in polys for m in P.monoms()})
    table = [[P.coeff_monomial(m) for P in polys] for m in monos]
    out = {}
    for ell in points:
        rows = [row for m, row in zip(monos, table)
                if any(m[j] - 10 < ell[j] for j in range(len(params)))]
        rank = sympy.Matrix(rows).rank() if rows else 0
        out[ell] = len(ctx.basis) - rank
    return out


def test_f_space_against_sympy_oracle():
    grid = list(itertools.product(range(-3, 3), range(-3, 2), range(-2, 1)))
    oracle = _sympy_dims(CTX, grid)
    for ell in grid:
        assert len(f_space(ell, CTX)) == oracle[ell], ell


def test_monotonicity_and_containment():
    pts = list(itertools.product(range(-2, 2), repeat=3))
    for a in pts:
        Fa = f_space(a, CTX)
        assert is_subspace(f_greater(a, CTX), Fa, CTX.dim)
        for j in range(3):
            b = LVector(a).bump(j).coords
            assert is_subspace(f_space(b, CTX), Fa, CTX.dim)


def test_initial_form_of_121():
    vt = CTX.data.vartable

    def e(block, a, b):
        return LaurentPoly.entry(vt, (block, a, b))

    want = e(2, 1, 1) * e(2, 2, 2) * (e(1, 1, 1) * e(1, 2, 2) - e(1, 1, 2) * e(1, 2, 1)) * \
        e(1, 1, 1) * e(2, 1, 1) * e(3, 1, 1)
    assert initial_form(s("(121)"), CTX) == want


def test_example_canonical_basis():
    cb = canonical_basis(3, (1, 2, 1), lam=(1, 1))
    ells = [leaf.ell.coords for leaf in cb.leaves]
    assert len(ells) == 8 and len(set(ells)) == 8
    assert set(ells) == set(EXAMPLE_TABLE.values()) | {(0, 0, 0)}
    by_ell = {leaf.ell.coords: leaf for leaf in cb.leaves}
    rep = by_ell[(0, 0, 0)].representative
    assert [(x.label(), c) for x, c in rep] == [("(231)", 1), ("(132)", -1)]
    assert [(x.label(), c) for x, c in by_ell[(0, -1, -1)].representative] == [("(132)", 1)]
    for leaf in cb.leaves:
        combo = dict(leaf.representative)
        assert in_filtration(combo, leaf.ell, CTX)
        assert combination_l_vector(combo, CTX) == leaf.ell
        assert not leaf.initial_form.is_zero()
        lead = leaf.representative[0][1]
        assert lead == 1
    d = cb.diagnostics
    assert (d.total_dim, d.dim_v, d.expected_dim, d.max_leaf_dim) == (8, 8, 8, 1)
    assert d.conjecture_status == "consistent"


def test_leaf_representatives_single_weight():
    cb = canonical_basis(3, (1, 2, 1), lam=(2, 1))
    for leaf in cb.leaves:
        assert {tableau_weight(x, 3) for x, _ in leaf.representative} == {leaf.weight}
    assert cb.diagnostics.total_dim == weyl_dim(3, Weight.from_fundamental(3, (2, 1)))


def test_trivial_weight():
    cb = canonical_basis(3, (1, 2, 1), lam=(0, 0))
    assert len(cb.leaves) == 1
    leaf = cb.leaves[0]
    assert leaf.ell.coords == (0, 0, 0)
    assert [c for _, c in leaf.representative] == [1]


def test_sl2_standard_rep():
    S = one_param_subgroup(2)
    assert (S.q, S.a) == (2, (1, -1))
    cb = canonical_basis(2, (1,), lam=(1,))
    ells = sorted(leaf.ell.coords for leaf in cb.leaves)
    assert len(ells) == 2 and ells[0] != ells[1]
    # row 1 entry scales by t^-a_1 = t^-1, row 2 entry by t^-a_2 = t^1
    assert ells == [(-1,), (1,)]


def test_usage_errors():
    with pytest.raises(UsageError, match="word is not a reduced expression of w0"):
        canonical_basis(3, (1, 1, 2), lam=(1, 1))
    with pytest.raises(UsageError):
        canonical_basis(3, (1, 2, 1), lam=(1, 1), m=(0, 1, 1))
    with pytest.raises(UsageError):
        canonical_basis(3, (1, 2, 1), m=(0, -1, 1))
    with pytest.raises(UsageError):
        canonical_basis(3, (2, 1, 2), m=(0, 1, 1), context=CTX)
    # a non-reduced word is fine in m-mode
    cb = canonical_basis(3, (1, 1, 2), m=(1, 0, 1))
    assert cb.diagnostics.expected_dim is None


def test_prevaluation_examples():
    assert check_prevaluation(s("(231)"), {TABS["(132)"]: -1}, CTX)
    assert check_prevaluation(s("(121)"), s("(121)"), CTX, alpha=2)
    with pytest.raises(UndefinedLVectorError):
        check_prevaluation(s("(121)"), {TABS["(121)"]: -1}, CTX)
    with pytest.raises(UsageError):
        check_prevaluation(s("(121)"), s("(131)"), CTX, alpha=0)


def test_relation_of_nonstandard_tableau():
    dep = [x for x in CTX.tableaux if x not in CTX.basis]
    assert [x.label() for x in dep] == ["(123)"]
    rel = CTX.relations[dep[0]]
    combo = {x: c for x, c in rel.items()}
    combo[dep[0]] = combo.get(dep[0], 0) - 1
    assert CTX.sweep_combination(combo).is_zero()
    assert CTX.coordinates({dep[0]: Fraction(1)}) == CTX.coordinates(rel)


def test_filtration_dims_table():
    rows = filtration_dims(CTX)
    leaves = {e.coords: f - g for e, f, g in rows if f - g}
    assert set(leaves) == set(EXAMPLE_TABLE.values()) | {(0, 0, 0)}
    assert sum(leaves.values()) == 8


@pytest.mark.parametrize("word", [(1, 2, 1), (2, 1, 2)])
@pytest.mark.parametrize("lam", [(1, 0), (0, 1), (2, 0), (1, 1), (2, 1)])
def test_surjectivity_and_character(word, lam):
    cb = canonical_basis(3, word, lam=lam)
    W = Weight.from_fundamental(3, lam)
    assert cb.diagnostics.total_dim == weyl_dim(3, W) == cb.diagnostics.dim_v
    counts = {}
    for leaf in cb.leaves:
        counts[leaf.weight] = counts.get(leaf.weight, 0) + leaf.dim
    assert counts == weight_multiplicities(3, W)


def test_boundedness():
    maxima = [max(sw.min_exponent(j) for sw in (CTX.swept_of(x) for x in CTX.basis)) for j in range(3)]
    cb = canonical_basis(3, (1, 2, 1), lam=(1, 1), context=CTX)
    for j in range(3):
        assert max(e.coords[j] for e in cb.l_vectors()) <= max(
            m[j] for x in CTX.basis for m in CTX.swept_of(x).parameter_support())
    assert maxima == [2, 1, 0]
