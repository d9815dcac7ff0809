import random
from fractions import Fraction

import pytest
import sympy

from bottbasis.errors import UndefinedLVectorError, UsageError
from bottbasis.laurent import (LaurentPoly, VarTable, _det_bareiss, _det_cofactor, divide_exact,
                               graded_piece, min_exponent, parameter_support, poly_add, poly_det,
                               poly_mul, scale_variable)

from conftest import sym_vars, to_sympy

VT = VarTable(3, ("x", "y", "z"))


def t(j, k=1):
    return LaurentPoly.param(VT, j, k)


def v(name, k=1):
    return LaurentPoly.entry(VT, name, k)


def test_add_cancellation_identity_like_terms():
    assert poly_add(t(0) + 1, -t(0)) == 1
    p = v("x") * t(1, -2) + 3
    assert poly_add(p, LaurentPoly.zero(VT)) == p
    assert poly_add(t(0, -1), t(0, -1)) == LaurentPoly.monomial(VT, (-1, 0, 0), c=2)
    assert (t(0) - t(0)).is_zero() and len(t(0) - t(0)) == 0


def test_mismatched_tables_rejected():
    other = VarTable(1, ("x",))
    with pytest.raises(UsageError):
        poly_add(v("x"), LaurentPoly.entry(other, "x"))
    with pytest.raises(UsageError):
        poly_mul(v("x"), LaurentPoly.entry(other, "x"))


def test_mul_examples():
    assert poly_mul(t(0, -1), t(0)) == 1
    x, y = v("x"), v("y")
    assert (x + y) * (x - y) == x * x - y * y
    p = t(0) * x + t(1, -1) * y
    q = t(2, 2) + x
    supp = {tuple(a + b for a, b in zip(m1, m2)) for m1 in parameter_support(p) for m2 in parameter_support(q)}
    assert parameter_support(p * q) == supp


def _random_poly(rng, vt=VT, terms=4):
    p = LaurentPoly.zero(vt)
    for _ in range(terms):
        exps = [rng.randint(-2, 2) for _ in range(vt.parameter_count)]
        exps += [rng.randint(0, 2) for _ in range(vt.entry_count)]
        p = p + LaurentPoly.from_terms(vt, {tuple(exps): Fraction(rng.randint(-5, 5), rng.randint(1, 3))})
    return p


def test_mul_against_sympy():
    rng = random.Random(1)
    for _ in range(30):
        a, b = _random_poly(rng), _random_poly(rng)
        assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
        assert to_sympy(a + b) == sympy.expand(to_sympy(a) + to_sympy(b))


def test_pow_and_ring_axioms():
    rng = random.Random(2)
    a, b, c = (_random_poly(rng, terms=3) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a ** 3 == a * a * a
    assert a ** 0 == 1


def test_det_examples():
    vt = VarTable(0, ("y11", "y12", "y21", "y22"))
    y = {n: LaurentPoly.entry(vt, n) for n in vt.entry_vars}
    assert poly_det([[y["y11"], y["y12"]], [y["y21"], y["y22"]]]) == \
        y["y11"] * y["y22"] - y["y12"] * y["y21"]
    z = LaurentPoly.zero(vt)
    assert poly_det([[y["y11"], z, z], [z, y["y12"], z], [z, z, y["y22"]]]) == \
        y["y11"] * y["y12"] * y["y22"]
    assert poly_det([[y["y11"], y["y12"]], [y["y11"], y["y12"]]]).is_zero()
    with pytest.raises(UsageError):
        poly_det([[y["y11"], y["y12"]]])


@pytest.mark.parametrize("size", [4, 5])
def test_bareiss_matches_cofactor_and_sympy(size):
    names = [(i, j) for i in range(size) for j in range(size)]
    vt = VarTable(1, tuple(names))
    rng = random.Random(size)
    m = []
    for i in range(size):
        row = []
        for j in range(size):
            if rng.random() < 0.3:
                row.append(LaurentPoly.zero(vt))
            else:
                e = LaurentPoly.entry(vt, (i, j)) * LaurentPoly.param(vt, 0, rng.randint(-1, 1))
                row.append(e + rng.randint(-2, 2))
        m.append(row)
    bareiss = _det_bareiss(m)
    assert bareiss == _det_cofactor(m)
    assert poly_det(m) == bareiss
    sm = sympy.Matrix([[to_sympy(x) for x in row] for row in m])
    assert to_sympy(bareiss) == sympy.expand(sm.det(method="berkowitz"))


def test_divide_exact():
    rng = random.Random(3)
    a, b = _random_poly(rng), _random_poly(rng)
    assert divide_exact(a * b, b) == a
    with pytest.raises(UsageError):
        divide_exact(v("x") + 1, v("y"))


def test_scale_variable():
    vt = VarTable(2, ("p11", "q11"))
    p11, q11 = LaurentPoly.entry(vt, "p11"), LaurentPoly.entry(vt, "q11")
    out = scale_variable(p11 * q11, "p11", -1, 0)
    assert out == LaurentPoly.param(vt, 0, -1) * p11 * q11
    assert scale_variable(p11 * q11, "p11", 0, 0) == p11 * q11
    assert scale_variable(q11 + 1, "p11", 3, 1) == q11 + 1
    assert scale_variable(p11 ** 2, "p11", 1, 1) == LaurentPoly.param(vt, 1, 2) * p11 ** 2
    with pytest.raises(UsageError):
        scale_variable(p11, "nope", 1, 0)


def test_min_exponent():
    p = t(0, -1) * t(2, 2)
    assert [min_exponent(p, j) for j in range(3)] == [-1, 0, 2]
    five = LaurentPoly.const(VT, 5)
    assert [min_exponent(five, j) for j in range(3)] == [0, 0, 0]
    with pytest.raises(UndefinedLVectorError):
        min_exponent(LaurentPoly.zero(VT), 0)
    lead = t(0, -2) * t(1, -2) * t(2, -1)
    q = lead * (v("x") + t(1) * v("y") + t(0) * t(2) * v("z"))
    assert [min_exponent(q, j) for j in range(3)] == [-2, -2, -1]


def test_graded_piece_and_support():
    lead = t(0, -2) * t(1, -2) * t(2, -1)
    c = v("x") * v("y") - v("z").scale(2)
    q = lead * (c + t(1) * v("y"))
    assert graded_piece(q, (-2, -2, -1)) == c
    assert graded_piece(q, (5, 5, 5)).is_zero()
    rebuilt = LaurentPoly.zero(VT)
    for ell, piece in q.graded_pieces().items():
        rebuilt = rebuilt + piece.times_parameter_monomial(ell)
    assert rebuilt == q
    assert parameter_support(t(0, -1) * v("x") + t(0, -1) * v("y")) == {(-1, 0, 0)}
    assert parameter_support(LaurentPoly.zero(VT)) == frozenset()


def test_entry_exponents_nonnegative_and_overflow():
    with pytest.raises(UsageError):
        LaurentPoly.from_terms(VT, {(0, 0, 0, -1, 0, 0): 1})
    with pytest.raises(OverflowError):
        LaurentPoly.monomial(VT, (1 << 15, 0, 0))


def test_non_exact_coefficients_rejected():
    with pytest.raises(TypeError):
        LaurentPoly.const(VT, 0.5)


def test_str_is_canonical():
    p = v("x") * t(0, -1) + 3
    assert str(p) == str(3 + t(0, -1) * v("x"))
    params, entries = sym_vars(VT)
    assert len(params) == 3 and len(entries) == 3
