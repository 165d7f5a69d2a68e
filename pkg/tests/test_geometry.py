import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hilbtrees.errors import BadRank, DegenerateSpan, NotOnQuadric
from hilbtrees.geometry import (Line, ProjPoint, gram_matrix, line_intersection, line_section,
                                line_through, multiple_hyperplane, quadric_normal_form,
                                random_hypersurface, random_point, rational_point_on_quadric,
                                segre_coords, segre_point, transform_line, transform_point)
from hilbtrees.polyspace import Form, restrict_form_to_line
from oracles import rank_gf

P = 32003
coords = st.lists(st.integers(0, P - 1), min_size=4, max_size=4).filter(any)


def test_point_canonical_scaling():
    assert ProjPoint((0, 3, 6, 9), P) == ProjPoint((0, 1, 2, 3), P)
    assert ProjPoint((0, 3, 6, 9), P).coords[1] == 1
    with pytest.raises(ValueError):
        ProjPoint((0, 0, 0, 0), P)


def test_line_through_examples():
    L = line_through(ProjPoint((1, 0, 0, 0), P), ProjPoint((0, 1, 0, 0), P))
    assert L.basis == ((1, 0, 0, 0), (0, 1, 0, 0))
    assert L.contains((5, 7, 0, 0)) and not L.contains((0, 0, 1, 0))
    with pytest.raises(DegenerateSpan):
        Line.through((1, 2, 3, 4), (2, 4, 6, 8), P)


@given(coords, coords)
def test_line_is_canonical(a, b):
    try:
        L = Line.through(a, b, P)
    except DegenerateSpan:
        return
    apb = [(x + y) % P for x, y in zip(a, b)]
    assert L == Line.through(b, a, P) == Line.through(a, apb, P)
    assert L.contains(a) and L.contains(b)


def test_line_intersection():
    L = Line.through((1, 0, 0, 0), (0, 1, 0, 0), P)
    M = Line.through((1, 1, 0, 0), (0, 0, 1, 0), P)
    N = Line.through((0, 0, 1, 0), (0, 0, 0, 1), P)
    assert line_intersection(L, M) == ProjPoint((1, 1, 0, 0), P)
    assert line_intersection(L, N) is None


@pytest.mark.parametrize("n,rank", [(3, 4), (4, 4), (4, 5), (3, 3), (5, 6), (6, 5)])
def test_quadric_normal_forms_have_their_rank(n, rank):
    Q = quadric_normal_form(n, rank, P)
    assert rank_gf(gram_matrix(Q.W.form).tolist(), P) == rank


def test_quadric_normal_form_examples():
    seg = quadric_normal_form(3, 4, P).W.form
    assert seg.terms() == {(1, 0, 0, 1): 1, (0, 1, 1, 0): P - 1}
    q44 = quadric_normal_form(4, 4, P).W.form
    assert q44.terms() == {(1, 0, 0, 1, 0): 1, (0, 1, 1, 0, 0): P - 1}
    q45 = quadric_normal_form(4, 5, P).W.form
    assert q45.terms() == {(1, 0, 0, 1, 0): 1, (0, 1, 1, 0, 0): P - 1, (0, 0, 0, 0, 2): 1}
    for bad in (2, 6):
        with pytest.raises(BadRank):
            quadric_normal_form(4, bad, P)


def test_segre_examples():
    assert segre_coords(ProjPoint((1, 0, 0, 0), P)) == ((1, 0), (1, 0))
    assert segre_coords(ProjPoint((1, 1, 1, 1), P)) == ((1, 1), (1, 1))
    assert segre_coords(ProjPoint((0, 0, 0, 1), P)) == ((0, 1), (0, 1))
    with pytest.raises(NotOnQuadric):
        segre_coords(ProjPoint((1, 0, 0, 1), P))


def test_segre_round_trip_on_random_points():
    rng = np.random.default_rng(7)
    Q = quadric_normal_form(3, 4, P)
    for _ in range(100):
        pt = rational_point_on_quadric(Q, rng)
        u, v = segre_coords(pt)
        assert segre_point(u, v, P) == pt


def test_line_section_examples():
    W = quadric_normal_form(3, 4, P).W
    inside = line_section(Line.through((1, 0, 0, 0), (0, 1, 0, 0), P), W)
    assert inside.contained and inside.restriction.is_zero()
    cross = line_section(Line.through((1, 0, 0, 0), (0, 0, 0, 1), P), W, want_points=True)
    assert not cross.contained and cross.transversal
    assert {pt for pt, _ in cross.points()} == {ProjPoint((1, 0, 0, 0), P), ProjPoint((0, 0, 0, 1), P)}
    assert restrict_form_to_line(W.form, (1, 0, 0, 0), (0, 0, 0, 1)).coeffs == (0, 1, 0)
    assert cross.rational_points.rational_degree == 2
    # (1:0:0:0) has tangent plane x3 = 0; a line inside it through the point is tangent
    tangent = line_section(Line.through((1, 0, 0, 0), (0, 1, 1, 0), P), W)
    assert not tangent.contained and not tangent.transversal


def test_sections_count_rational_points():
    rng = np.random.default_rng(11)
    W = random_hypersurface(3, 3, rng, P)
    split = 0
    for _ in range(60):
        L = Line.through(tuple(random_point(3, rng, P)), tuple(random_point(3, rng, P)), P)
        sec = line_section(L, W, want_points=True)
        deg = sec.rational_points.rational_degree
        assert deg <= 3
        split += deg == 3
        for pt, _ in sec.points():
            assert W.contains(pt) and L.contains(pt)
    assert split > 0


def test_hypersurface_constructors():
    x0 = Form.linear([1, 0, 0, 0], P)
    assert multiple_hyperplane(x0, 3).form.terms() == {(3, 0, 0, 0): 1}
    s = multiple_hyperplane(Form.linear([1, 1, 0, 0], P), 2).form.terms()
    assert s == {(2, 0, 0, 0): 1, (1, 1, 0, 0): 2, (0, 2, 0, 0): 1}
    a = random_hypersurface(3, 3, np.random.default_rng(42), P)
    b = random_hypersurface(3, 3, np.random.default_rng(42), P)
    assert a == b


def test_rational_points_on_quadrics():
    rng = np.random.default_rng(3)
    seg = quadric_normal_form(3, 4, P)
    pts = {rational_point_on_quadric(seg, rng) for _ in range(100)}
    assert len(pts) > 95 and all(seg.W.contains(x) for x in pts)
    q45 = quadric_normal_form(4, 5, P)
    assert q45.W.contains(rational_point_on_quadric(q45, rng))


def test_coordinate_change_moves_lines_and_points_together():
    rng = np.random.default_rng(9)
    M = rng.integers(0, P, (4, 4))
    L = Line.through(tuple(random_point(3, rng, P)), tuple(random_point(3, rng, P)), P)
    pt = L.point(3, 5)
    assert transform_line(M, L).contains(transform_point(M, pt))
