import random
from fractions import Fraction

import pytest
import sympy

from bottbasis.errors import UsageError
from bottbasis.linalg import (Echelon, RationalMatrix, complement_in, express, is_subspace, kernel,
                              rank, subspace_sum)


def test_kernel_of_single_row():
    assert kernel([[1, 1]]) == ((Fraction(1), Fraction(-1)),)


def test_rank_identity():
    for k in range(1, 6):
        assert rank([[int(i == j) for j in range(k)] for i in range(k)]) == k


def test_subspace_sum_with_itself():
    b = ((1, 2, 3), (0, 1, 1))
    assert len(subspace_sum([b, b], 3)) == 2


def test_dimension_mismatch():
    with pytest.raises(UsageError):
        RationalMatrix(2, 2, ((Fraction(1),), (Fraction(1), Fraction(2))))
    with pytest.raises(UsageError):
        Echelon(3).add((1, 2))


def _random_matrix(rng, r, c):
    return [[Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2])) if rng.random() < 0.7 else 0
             for _ in range(c)] for _ in range(r)]


def test_against_sympy():
    rng = random.Random(7)
    for _ in range(40):
        r, c = rng.randint(1, 5), rng.randint(1, 6)
        m = _random_matrix(rng, r, c)
        sm = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                            for x in row] for row in m])
        assert rank(m) == sm.rank()
        ker = kernel(m)
        assert rank(m) + len(ker) == c
        for vec in ker:
            assert all(sum(a * b for a, b in zip(row, vec)) == 0 for row in m)
        mat = RationalMatrix.from_rows(m)
        assert mat.rref().rref() == mat.rref()
        ours = [list(row) for row in mat.rref().entries[:rank(m)]]
        theirs = sm.rref()[0]
        assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in ours] == \
            [list(theirs.row(i)) for i in range(rank(m))]


def test_complement_and_express():
    big = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    small = ((1, 1, 0),)
    comp = complement_in(big, small, 3)
    assert len(comp) == 2
    assert len(subspace_sum([comp, small], 3)) == 3
    assert is_subspace(small, big, 3) and not is_subspace(big, small, 3)
    assert express([(1, 0), (1, 1)], (3, 2)) == (Fraction(1), Fraction(2))
    assert express([(1, 1)], (1, 0)) is None
