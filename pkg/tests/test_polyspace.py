import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hilbtrees.errors import BasePoint, DegenerateSpan, LeadingZero, ZeroForm
from hilbtrees.polyspace import (BiDegreeForm, BinaryForm, Form, RationalCurveParam,
                                 base_point_free, binary_divrem, binary_roots, evaluate_biform,
                                 evaluate_monomials, is_squarefree,
                                 line_coords, monomial_basis, num_monomials, poly_divmod,
                                 poly_gcd, poly_mul, quotient_block, restrict_form_to_line,
                                 restrict_form_to_param_curve, restriction_matrix)
from oracles import brute_roots, monomials_glex, poly_gf, restriction_oracle

P = 32003


def bf(coeffs, p=P):
    return BinaryForm(tuple(coeffs), p)


def forms(n, t, p=P):
    return st.lists(st.integers(0, p - 1), min_size=num_monomials(n, t),
                    max_size=num_monomials(n, t)).map(lambda c: Form(n, t, tuple(c), p))


points = st.lists(st.integers(0, P - 1), min_size=4, max_size=4)


@pytest.mark.parametrize("n,t,size", [(3, 1, 4), (3, 3, 20), (4, 2, 15)])
def test_monomial_counts(n, t, size):
    assert len(monomial_basis(n, t)) == size == num_monomials(n, t)


@pytest.mark.parametrize("n,t", [(1, 4), (2, 3), (3, 3), (4, 2)])
def test_monomial_order_is_graded_lex(n, t):
    assert list(monomial_basis(n, t)) == monomials_glex(n, t)


Q = Form.from_terms(3, 2, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1}, P)


def test_restrict_to_line_examples():
    e0, e1, e3 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)
    assert restrict_form_to_line(Q, e0, e3).coeffs == (0, 1, 0)      # uv
    assert restrict_form_to_line(Q, e0, e1).is_zero()
    sq = Form.from_terms(3, 2, {(2, 0, 0, 0): 1}, P)
    assert restrict_form_to_line(sq, e0, e3).coeffs == (0, 0, 1)     # u^2
    with pytest.raises(DegenerateSpan):
        restrict_form_to_line(Q, e0, (5, 0, 0, 0))


@given(forms(3, 3), points, points)
def test_restriction_matches_symbolic_expansion(g, A, B):
    assume(np.linalg.matrix_rank(np.array([A, B], dtype=float)) == 2)
    try:
        got = restrict_form_to_line(g, A, B)
    except DegenerateSpan:
        return
    assert list(got.coeffs) == restriction_oracle(g.coeffs, 3, 3, A, B, P)


@given(forms(3, 2), forms(3, 2), st.integers(0, P - 1), points, points)
def test_restriction_is_linear(g1, g2, c, A, B):
    try:
        lhs = restrict_form_to_line(g1 + g2.scale(c), A, B)
    except DegenerateSpan:
        return
    assert lhs == restrict_form_to_line(g1, A, B) + restrict_form_to_line(g2, A, B).scale(c)


def test_restrict_to_param_curve_examples():
    conic = RationalCurveParam((bf([0, 0, 1]), bf([0, 1, 0]), bf([1, 0, 0]), bf([0, 0, 0])))
    x0 = Form.linear([1, 0, 0, 0], P)
    assert restrict_form_to_param_curve(x0, conic).coeffs == (0, 0, 1)
    C = Form.from_terms(3, 2, {(1, 0, 1, 0): 1, (0, 2, 0, 0): -1}, P)
    assert restrict_form_to_param_curve(C, conic).is_zero()
    with pytest.raises(BasePoint):
        RationalCurveParam((bf([0, 1]), bf([0, 2]), bf([0, 3]), bf([0, 0])))


def test_generic_linear_form_on_twisted_cubic():
    # (v^3, u v^2, u^2 v, u^3) and g = 3x0 + 5x1 + 7x2 + 11x3 give 3 v^3 + 5 u v^2 + 7 u^2 v + 11 u^3
    tc = RationalCurveParam(tuple(bf(c) for c in ([1, 0, 0, 0], [0, 1, 0, 0],
                                                   [0, 0, 1, 0], [0, 0, 0, 1])))
    out = restrict_form_to_param_curve(Form.linear([3, 5, 7, 11], P), tc)
    assert out.coeffs == (3, 5, 7, 11)


def test_divrem_examples():
    q, r = binary_divrem(bf([0, 0, 0, 1], 7), bf([-1, 0, 1], 7))     # u^3 / (u^2 - v^2)
    assert q.coeffs == (0, 1) and r.coeffs == (0, 1, 0, 0)
    q, r = binary_divrem(bf([0, -1, 1, 0]), bf([-1, 1]))                # (u^2 v - u v^2) / (u - v)
    assert q.coeffs == (0, 1, 0) and r.is_zero()
    q, r = binary_divrem(bf([1, 0, 0, 0]), bf([0, 1]))               # v^3 / u
    assert q.is_zero() and r.coeffs == (1, 0, 0, 0)
    with pytest.raises(LeadingZero):
        binary_divrem(bf([0, 1, 0]), bf([1, 0]))


@given(st.lists(st.integers(0, P - 1), min_size=1, max_size=9),
       st.lists(st.integers(0, P - 1), min_size=1, max_size=5))
def test_divrem_reconstruction_and_oracle(g, f):
    assume(f[-1] != 0 and len(g) >= len(f))
    q, r = binary_divrem(bf(g), bf(f))
    assert q * bf(f) + BinaryForm.zero(q.degree + len(f) - 1, P) == bf(g) - r
    assert max((j for j, c in enumerate(r.coeffs) if c), default=-1) < len(f) - 1
    oq, orr = poly_gf(g, P).div(poly_gf(f, P))
    assert poly_gf(q.coeffs, P) == oq and poly_gf(r.coeffs, P) == orr


def test_roots_examples():
    rep = binary_roots(bf([0, -1, 1, 0]))                            # uv(u - v)
    assert sorted(rep.roots) == [((0, 1), 1), ((1, 0), 1), ((1, 1), 1)] and rep.squarefree
    rep = binary_roots(bf([0, 0, 1]))
    assert rep.roots == (((0, 1), 2),) and not rep.squarefree
    rep = binary_roots(bf([1, 0, 1], 7))
    assert rep.roots == () and rep.squarefree
    with pytest.raises(ZeroForm):
        binary_roots(BinaryForm.zero(2, P))


@given(st.lists(st.integers(0, 12), min_size=2, max_size=5))
def test_roots_match_exhaustive_search(c):
    p = 13
    assume(any(x % p for x in c))
    rep = binary_roots(bf(c, p))
    want = brute_roots(c, p)
    got = {((u % p, v % p) if v else (1, 0)): m for (u, v), m in rep.roots}
    assert got == want
    assert rep.rational_degree <= len(c) - 1


@given(st.lists(st.integers(0, 30), min_size=2, max_size=6))
def test_squarefree_matches_discriminant(c):
    p = 31
    assume(c[-1] % p)
    f = poly_gf(c, p)
    assert is_squarefree(bf(c, p)) == (f.gcd(f.diff()).degree() == 0)


def test_polynomial_helpers_agree_with_sympy():
    rng = np.random.default_rng(5)
    for _ in range(50):
        a = [int(x) for x in rng.integers(0, P, rng.integers(1, 8))]
        b = [int(x) for x in rng.integers(0, P, rng.integers(1, 6))]
        b[-1] = b[-1] or 1
        q, r = poly_divmod(a, b, P)
        oq, orr = poly_gf(a, P).div(poly_gf(b, P))
        assert poly_gf(q, P) == oq and poly_gf(r, P) == orr
        assert poly_gf(poly_mul(a, b, P), P) == poly_gf(a, P) * poly_gf(b, P)
        g = poly_gcd(a, b, P)
        assert poly_gf(g, P).monic() == poly_gf(a, P).gcd(poly_gf(b, P)).monic()


def test_biform_examples():
    F = BiDegreeForm.from_terms(1, 1, {(1, 1): 1}, P)                 # u0 v0
    assert evaluate_biform(F, ((1, 0), (1, 0))) == 1
    assert evaluate_biform(F, ((0, 1), (1, 0))) == 0
    G = BiDegreeForm.from_terms(1, 1, {(1, 0): 1, (0, 1): -1}, P)     # u0 v1 - u1 v0
    assert evaluate_biform(G, ((1, 1), (1, 1))) == 0
    assert len(BiDegreeForm.from_terms(3, 2, {}, P).coeffs) == 12


def test_evaluate_monomials_matches_form_evaluation():
    rng = np.random.default_rng(2)
    pts = rng.integers(0, P, (6, 4))
    g = Form(3, 3, tuple(int(x) for x in rng.integers(0, P, 20)), P)
    E = evaluate_monomials(3, 3, pts, P)
    assert [int(x) for x in (E @ g.array()) % P] == [g(pt) for pt in pts]


def test_form_algebra():
    ell = Form.linear([1, 1, 0, 0], P)
    assert ell.power(2).terms() == {(2, 0, 0, 0): 1, (1, 1, 0, 0): 2, (0, 2, 0, 0): 1}
    M = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    assert Q.substitute(M) == Q.scale(1)
    pt = (3, 4, 5, 6)
    Mx = [sum(M[i][j] * pt[j] for j in range(4)) for i in range(4)]
    g = Form(3, 3, tuple(range(20)), P)
    assert g.substitute(M)(pt) == g(Mx)


def test_quotient_images_match_division():
    rng = np.random.default_rng(3)
    A, B = rng.integers(0, P, 4), rng.integers(0, P, 4)
    coords = line_coords(A, B, P)
    f = bf([int(x) for x in rng.integers(0, P, 3)] + [1])
    for t in range(0, 6):
        M = quotient_block(3, t, coords, list(f.coeffs), P)
        R = restriction_matrix(3, t, coords, P)
        for j in range(0, num_monomials(3, t), 3):
            gL = bf([int(x) for x in R[:, j]])
            if t >= 3:
                want = list(binary_divrem(gL, f)[1].coeffs[:3])
            else:
                want = list(gL.coeffs)
            assert [int(x) for x in M[:, j]] == want


def test_base_point_detection():
    assert base_point_free((bf([1, 0]), bf([0, 1])))
    assert not base_point_free((bf([0, 1, 0]), bf([0, 0, 1])))       # common root u = 0
    assert not base_point_free((bf([1, 0, 0]), bf([0, 1, 0])))       # common root at infinity
    assert not base_point_free((bf([0, 0]), bf([0, 0])))
