"""Independent reference computations built on sympy, sharing no code with the package."""

from __future__ import annotations

import itertools
from math import comb

import sympy
from sympy import GF, Poly
from sympy.polys.matrices import DomainMatrix

u, v = sympy.symbols("u v")


def rank_gf(M, p: int) -> int:
    rows = [[int(x) % p for x in r] for r in M]
    if not rows or not rows[0]:
        return 0
    K = GF(p)
    return DomainMatrix([[K(x) for x in r] for r in rows], (len(rows), len(rows[0])), K).rank()


def poly_gf(coeffs_low_to_high, p: int) -> Poly:
    return Poly(list(reversed([int(c) % p for c in coeffs_low_to_high])) or [0], u, modulus=p)


def binary_expr(coeffs) -> sympy.Expr:
    t = len(coeffs) - 1
    return sum(int(c) * u**j * v**(t - j) for j, c in enumerate(coeffs))


def p1_points(p: int):
    yield (1, 0)
    for x in range(p):
        yield (x, 1)


def brute_roots(coeffs, p: int) -> dict:
    """Rational roots of a binary form with multiplicity, by exhaustive search on P^1(F_p)."""
    t = len(coeffs) - 1
    out = {}
    for (a, b) in p1_points(p):
        # multiplicity: largest m with (b u - a v)^m dividing the form
        expr = sympy.expand(binary_expr(coeffs))
        m = 0
        while True:
            q, r = sympy.div(Poly(expr, u, v, modulus=p), Poly(b * u - a * v, u, v, modulus=p))
            if not r.is_zero or expr == 0:
                break
            m += 1
            expr = q.as_expr()
            if m > t:
                break
        if m:
            out[(a, b)] = m
    return out


def monomials_glex(n: int, t: int):
    """Exponent tuples of degree t in n+1 variables, descending lexicographic."""
    exps = [e for e in itertools.product(range(t + 1), repeat=n + 1) if sum(e) == t]
    return sorted(exps, reverse=True)


def restriction_oracle(coeffs, n: int, t: int, A, B, p: int) -> list[int]:
    """Coefficients (u^0 v^t .. u^t v^0) of g(uA + vB) by symbolic expansion."""
    xs = [u * a + v * b for a, b in zip(A, B)]
    g = 0
    for c, e in zip(coeffs, monomials_glex(n, t)):
        term = c
        for x, k in zip(xs, e):
            term *= x**k
        g += term
    P = Poly(sympy.expand(g), u, v, modulus=p) if g != 0 else None
    out = []
    for j in range(t + 1):
        out.append(int(P.coeff_monomial(u**j * v**(t - j))) % p if P is not None else 0)
    return out


def sections_of_OW(n: int, k: int, t: int) -> int:
    return comb(n + t, n) - (comb(n + t - k, n) if t >= k else 0)


def point_pair(W_coeffs, n: int, k: int, points, t: int, p: int) -> tuple[int, int]:
    """(h0, h1) of I_S on a hypersurface from the evaluation matrix at explicit points."""
    mons = monomials_glex(n, t)
    E = [[_mono_val(pt, e, p) for e in mons] for pt in points]
    r = rank_gf(E, p)
    h0 = comb(n + t, n) - r - (comb(n + t - k, n) if t >= k else 0)
    return h0, len(points) - r


def _mono_val(pt, e, p):
    out = 1
    for x, k in zip(pt, e):
        out = out * pow(int(x), k, p) % p
    return out
