import itertools
import random
from collections import Counter

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from bottbasis.acceptance import EXAMPLE_TABLE
from bottbasis.errors import UsageError
from bottbasis.lie_data import Weight, weight_multiplicities, weyl_dim
from bottbasis.polytopes import (ADJOINT_STRING_MAP, AffineLatticeMap, CrystalElement, LatticePolytope,
                                 affine_image, convex_hull, crystal_elements, crystal_string_points,
                                 find_equivalence, highest_weight_element, in_convex_hull,
                                 is_unimodular, polytope_equal, string_compare)

L_VECTORS = sorted(set(EXAMPLE_TABLE.values()) | {(0, 0, 0)})


def test_hull_examples():
    assert len(convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]).vertices) == 4
    assert convex_hull([(0, 0), (1, 1), (2, 2), (3, 3)]).vertices == ((0, 0), (3, 3))
    with pytest.raises(UsageError):
        convex_hull([])


def _qhull_vertices(points):
    arr = np.array(points, dtype=float)
    return sorted(tuple(points[i]) for i in ConvexHull(arr).vertices)


def test_hull_of_example_against_qhull():
    hull = convex_hull(L_VECTORS)
    assert list(hull.vertices) == _qhull_vertices(L_VECTORS)
    # the zero vector is tested, not presumed
    assert hull.contains((0, 0, 0))
    assert hull.interior_point((0, 0, 0)) == ((0, 0, 0) not in _qhull_vertices(L_VECTORS))
    assert hull.interior_point((0, -1, -1))


def test_random_hulls_against_qhull():
    rng = random.Random(5)
    for _ in range(25):
        dim = rng.choice([2, 3])
        pts = sorted({tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(12)})
        try:
            want = _qhull_vertices(pts)
        except Exception:  # degenerate for qhull
            continue
        assert list(convex_hull(pts).vertices) == want


def test_hull_idempotent_and_membership():
    hull = convex_hull(L_VECTORS)
    assert convex_hull(hull.vertices) == hull
    assert not in_convex_hull((5, 5, 5), hull.vertices)
    assert in_convex_hull((1, 1), [(0, 0), (2, 2)])


def test_unimodular_and_maps():
    assert is_unimodular([[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    assert not is_unimodular([[2, 0], [0, 1]])
    assert is_unimodular([[0, 1], [1, 0]])
    square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert polytope_equal(square, square)
    assert polytope_equal(affine_image(square, AffineLatticeMap.identity(2)), square)
    shift = AffineLatticeMap(((1, 0), (0, 1)), (2, -1))
    moved = affine_image(square, shift)
    assert moved.vertices == tuple(sorted(shift(v) for v in square.vertices))
    assert not polytope_equal(square, moved)
    with pytest.raises(UsageError):
        affine_image(square, AffineLatticeMap.identity(3))


def test_unimodular_images_preserve_lattice_counts():
    rng = random.Random(9)
    for _ in range(10):
        pts = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(6)]
        P = convex_hull(pts)
        A = [[1, rng.randint(-1, 1), rng.randint(-1, 1)], [0, 1, rng.randint(-1, 1)], [0, 0, -1]]
        f = AffineLatticeMap(A, tuple(rng.randint(-2, 2) for _ in range(3)))
        assert len(affine_image(P, f).lattice_points()) == len(P.lattice_points())


def test_crystal_element_validation():
    with pytest.raises(UsageError):
        CrystalElement(3, ((2, 1),))
    with pytest.raises(UsageError):
        CrystalElement(3, ((1, 2), (1,)))
    b = CrystalElement(3, ((1, 1), (2,)))
    assert b.reading_word() == [2, 1, 1]
    assert b.e(1) is None and b.e(2) is None


def test_crystal_operators_are_inverse():
    for b in crystal_elements(3, (2, 1)):
        for i in (1, 2):
            c = b.f(i)
            if c is not None:
                assert c.e(i) == b
            d = b.e(i)
            if d is not None:
                assert d.f(i) == b
            # string lengths agree with the weight pairing
            assert b.phi(i) - b.epsilon(i) == b.content().pairing(i)


@pytest.mark.parametrize("n,coeffs", [(2, (1,)), (2, (3,)), (3, (1, 0)), (3, (1, 1)), (3, (2, 1)),
                                      (3, (0, 3)), (4, (1, 0, 0)), (4, (0, 1, 0)), (4, (1, 1, 0)),
                                      (4, (1, 0, 1))])
def test_crystal_against_freudenthal(n, coeffs):
    lam = Weight.from_fundamental(n, coeffs)
    els = crystal_elements(n, lam)
    assert len(els) == weyl_dim(n, lam)
    assert Counter(b.content() for b in els) == Counter(weight_multiplicities(n, lam))


def test_string_points():
    assert crystal_string_points(2, (1,), (1,)) == [(0,), (1,)]
    pts = crystal_string_points(3, (1, 1), (1, 2, 1))
    assert len(set(pts)) == 8
    assert highest_weight_element(3, (1, 1)).string((1, 2, 1)) == (0, 0, 0)
    for n, word, lam in [(3, (2, 1, 2), (2, 1)), (4, (1, 2, 1, 3, 2, 1), (1, 1, 0))]:
        pts = crystal_string_points(n, lam, word)
        assert len(set(pts)) == len(pts)
        assert all(x >= 0 for p in pts for x in p)
    with pytest.raises(UsageError, match="reduced"):
        crystal_string_points(3, (1, 1), (1, 1, 2))


def test_adjoint_map_sends_string_points_to_l_vectors():
    pts = crystal_string_points(3, (1, 1), (1, 2, 1))
    assert sorted(ADJOINT_STRING_MAP(p) for p in pts) == L_VECTORS
    assert polytope_equal(affine_image(convex_hull(pts), ADJOINT_STRING_MAP), convex_hull(L_VECTORS))


def test_string_compare():
    res = string_compare(3, (1, 1), (1, 2, 1), L_VECTORS)
    assert res["status"] == "EQUIVALENT"
    assert res["witness"] == {"A": [[1, 1, 1], [0, 1, 1], [0, 0, 1]], "b": [-2, -2, -1]}
    assert res["lattice_points_match"] is True
    zero = string_compare(3, (0, 0), (1, 2, 1), [(0, 0, 0)])
    assert zero["status"] == "EQUIVALENT"
    assert zero["witness"]["A"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_search_failure_is_not_found():
    P = convex_hull([(0, 0), (1, 0), (0, 1)])
    Q = convex_hull([(0, 0), (5, 0), (0, 1)])
    eq = find_equivalence(P, Q, bound=1)
    assert eq.status == "NOT-FOUND" and eq.witness is None
    eq = find_equivalence(P, Q, bound=1, max_candidates=3)
    assert eq.candidates_tried <= 3


def test_search_finds_shear():
    P = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    f = AffineLatticeMap(((1, -1), (0, 1)), (3, 4))
    eq = find_equivalence(P, affine_image(P, f))
    assert eq.status == "EQUIVALENT"
    assert polytope_equal(affine_image(P, eq.witness), affine_image(P, f))


def test_lattice_points_of_square():
    sq = LatticePolytope(2, ((0, 0), (2, 0), (0, 2), (2, 2)))
    assert len(sq.lattice_points()) == 9
    assert list(itertools.chain(sq.bounding_box())) == [(0, 0), (2, 2)]
