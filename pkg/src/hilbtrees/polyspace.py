"""Homogeneous forms over F_p and the restriction maps the cohomology core uses.

Conventions
-----------
* Forms of degree t on P^n are coefficient vectors over the graded-lex
  monomial basis: exponent vectors in descending lexicographic order, so
  ``x0**t`` comes first and ``xn**t`` last.
* A binary form of degree t stores ``c[j]`` as the coefficient of
  ``u**j * v**(t-j)``.  Setting ``v = 1`` turns the same list into an
  ordinary polynomial in ``u`` written low degree first; all univariate
  helpers here use that low-to-high layout.
* A bidegree (a, b) form on P^1 x P^1 stores the coefficient of
  ``u0**i u1**(a-i) v0**j v1**(b-j)`` at index ``i*(b+1) + j``.

The workhorse is :func:`iter_quotient_images`: for a curve parametrized by
binary forms ``phi_i`` and a divisor ``D(u)`` on it, it produces, degree after
degree, the matrix sending a degree-t form g to ``g(phi) mod D``.  Each degree
is obtained from the previous one by multiplying by one coordinate, so the
whole sweep costs one small matrix product per monomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .exactfield import matrix_rank
from .errors import BasePoint, DegenerateSpan, LeadingZero, ZeroForm

Monomial = tuple[int, ...]


def num_monomials(n: int, t: int) -> int:
    """``C(n+t, n)``, the number of degree-t monomials in n+1 variables."""
    return comb(n + t, n) if t >= 0 else 0


@lru_cache(maxsize=None)
def monomial_basis(n: int, t: int) -> tuple[Monomial, ...]:
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    out = []
    for combo in itertools.combinations_with_replacement(range(n + 1), t):
        e = [0] * (n + 1)
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, t: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(n, t))}


@lru_cache(maxsize=None)
def _recursion_table(n: int, t: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """For every variable i: (columns of degree-t monomials whose first
    nonzero exponent is at i, index of that monomial divided by x_i)."""
    prev = monomial_index(n, t - 1)
    var = np.empty(num_monomials(n, t), dtype=np.int64)
    parent = np.empty_like(var)
    for j, m in enumerate(monomial_basis(n, t)):
        i = next(k for k, e in enumerate(m) if e)
        q = list(m)
        q[i] -= 1
        var[j] = i
        parent[j] = prev[tuple(q)]
    out = []
    for i in range(n + 1):
        cols = np.flatnonzero(var == i)
        out.append((cols, parent[cols]))
    return tuple(out)


@lru_cache(maxsize=64)
def exponent_matrix(n: int, t: int) -> np.ndarray:
    return np.array(monomial_basis(n, t), dtype=np.int64).reshape(-1, n + 1)


# --------------------------------------------------------------------------
# univariate polynomials, low degree first


def poly_trim(a) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a, b, p):
    m = max(len(a), len(b))
    return poly_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                      for i in range(m)])


def poly_sub(a, b, p):
    return poly_add(a, [(-x) % p for x in b], p)


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim([c % p for c in out])


def poly_divmod(a, b, p):
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = [x % p for x in poly_trim(a)]
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        c = r[-1] * inv % p
        s = len(r) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            r[s + i] = (r[s + i] - c * y) % p
        r = poly_trim(r)
    return poly_trim(q), r


def poly_monic(a, p):
    a = poly_trim(a)
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [x * inv % p for x in a]


def poly_gcd(a, b, p):
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    return poly_monic(a, p)


def poly_powmod(base, e, mod, p):
    result = [1]
    base = poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, p), mod, p)[1]
        base = poly_divmod(poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def poly_eval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def poly_deriv(a, p):
    return poly_trim([i * a[i] % p for i in range(1, len(a))])


def _split_linear_factors(h, p) -> list[int]:
    """Roots of a monic h known to be a product of distinct linear factors."""
    h = poly_monic(h, p)
    if len(h) <= 1:
        return []
    if len(h) == 2:
        return [(-h[0]) % p]
    # equal-degree splitting with a deterministic shift sequence
    for a in itertools.count(0):
        w = poly_powmod([a % p, 1], (p - 1) // 2, h, p)
        g = poly_gcd(poly_sub(w, [1], p), h, p)
        if 1 < len(g) < len(h):
            return (_split_linear_factors(g, p)
                    + _split_linear_factors(poly_divmod(h, g, p)[0], p))


def poly_rational_roots(a, p) -> list[int]:
    """Distinct roots in F_p of a nonzero polynomial, ascending."""
    a = poly_trim(a)
    if not a:
        raise ZeroForm("the zero polynomial has every point as a root")
    if len(a) == 1:
        return []
    xp = poly_powmod([0, 1], p, a, p)
    g = poly_gcd(poly_sub(xp, [0, 1], p), a, p)
    return sorted(_split_linear_factors(g, p))


# --------------------------------------------------------------------------
# binary forms


@dataclass(frozen=True)
class BinaryForm:
    """Binary form of formal degree ``degree``; ``coeffs[j]`` multiplies u^j v^(t-j)."""

    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) % self.p for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a binary form needs degree + 1 coefficients")

    @classmethod
    def from_poly(cls, poly, degree: int, p: int) -> BinaryForm:
        poly = poly_trim(poly)
        if len(poly) > degree + 1:
            raise ValueError("polynomial degree exceeds the formal degree")
        return cls(tuple(poly) + (0,) * (degree + 1 - len(poly)), p)

    @classmethod
    def zero(cls, degree: int, p: int) -> BinaryForm:
        return cls((0,) * (degree + 1), p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def dehomogenize(self) -> list[int]:
        """``f(u, 1)`` as a trimmed low-to-high list."""
        return poly_trim(self.coeffs)

    def __call__(self, u: int, v: int) -> int:
        acc = 0
        t = self.degree
        for j, c in enumerate(self.coeffs):
            if c:
                acc += c * pow(u, j, self.p) * pow(v, t - j, self.p)
        return acc % self.p

    def __add__(self, other: BinaryForm) -> BinaryForm:
        if other.degree != self.degree:
            raise ValueError("degrees differ")
        return BinaryForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.p)

    def __sub__(self, other: BinaryForm) -> BinaryForm:
        return self + other.scale(-1)

    def scale(self, c: int) -> BinaryForm:
        return BinaryForm(tuple(c * a for a in self.coeffs), self.p)

    def __mul__(self, other: BinaryForm) -> BinaryForm:
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(tuple(out), self.p)

    def d_du(self) -> BinaryForm:
        if self.degree == 0:
            return BinaryForm((0,), self.p)
        return BinaryForm(tuple(j * self.coeffs[j] for j in range(1, self.degree + 1)), self.p)

    def d_dv(self) -> BinaryForm:
        if self.degree == 0:
            return BinaryForm((0,), self.p)
        t = self.degree
        return BinaryForm(tuple((t - j) * self.coeffs[j] for j in range(t)), self.p)


def binary_divrem(g: BinaryForm, f: BinaryForm) -> tuple[BinaryForm, BinaryForm]:
    """``g = q*f + r`` with r of u-degree below ``deg f``.

    The coefficient of ``u**deg f`` in f must be nonzero: then f has no root
    at (1:0) and dividing after setting v = 1 is exact.  ``q`` has degree
    ``deg g - deg f`` and ``r`` keeps the formal degree of g.
    """
    if g.p != f.p:
        raise ValueError("forms over different fields")
    k, t = f.degree, g.degree
    if t < k:
        raise ValueError("deg g must be at least deg f")
    if f.coeffs[k] == 0:
        raise LeadingZero("coefficient of u^deg(f) vanishes")
    q, r = poly_divmod(list(g.coeffs), list(f.coeffs), g.p)
    return BinaryForm.from_poly(q, t - k, g.p), BinaryForm.from_poly(r, t, g.p)


def _p1_canonical(u: int, v: int, p: int) -> tuple[int, int]:
    if u % p:
        inv = pow(u, p - 2, p)
        return (1, v * inv % p)
    return (0, 1)


def is_squarefree(f: BinaryForm) -> bool:
    """No repeated root over the algebraic closure (needs p > deg f).

    A repeated root of f is a common root of both partial derivatives.
    """
    if f.is_zero():
        raise ZeroForm("the zero form is not squarefree")
    if f.degree <= 1:
        return True
    fu, fv = f.d_du(), f.d_dv()
    top = f.degree - 1
    if fu.coeffs[top] == 0 and fv.coeffs[top] == 0:
        return False  # common root at (1:0)
    g = poly_gcd(fu.dehomogenize(), fv.dehomogenize(), f.p)
    return len(g) <= 1


@dataclass(frozen=True)
class RootReport:
    roots: tuple[tuple[tuple[int, int], int], ...]  # ((u, v), multiplicity)
    squarefree: bool

    @property
    def rational_degree(self) -> int:
        return sum(m for _, m in self.roots)


def binary_roots(f: BinaryForm) -> RootReport:
    """F_p-rational roots of f on P^1 with multiplicities.

    Finite roots are listed as ``(r, 1)`` in increasing r, then ``(1, 0)``
    if present.  Root points are therefore *not* in first-nonzero-equals-one
    scaling; use :func:`_p1_canonical` when that is needed.
    """
    if f.is_zero():
        raise ZeroForm("the zero form has no isolated roots")
    p = f.p
    poly = f.dehomogenize()
    at_infinity = f.degree - (len(poly) - 1)
    roots = []
    for r in poly_rational_roots(poly, p):
        mult, rest = 0, poly
        while True:
            q, rem = poly_divmod(rest, [(-r) % p, 1], p)
            if rem:
                break
            mult += 1
            rest = q
        roots.append(((r, 1), mult))
    if at_infinity:
        roots.append(((1, 0), at_infinity))
    return RootReport(tuple(roots), is_squarefree(f))


# --------------------------------------------------------------------------
# forms on P^n


@dataclass(frozen=True)
class Form:
    """A degree-t form on P^n, coefficients aligned with ``monomial_basis(n, t)``."""

    n: int
    degree: int
    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) % self.p for c in self.coeffs))
        if len(self.coeffs) != num_monomials(self.n, self.degree):
            raise ValueError("coefficient vector does not match the monomial basis")

    @classmethod
    def from_terms(cls, n: int, degree: int, terms: dict, p: int) -> Form:
        idx = monomial_index(n, degree)
        c = [0] * len(idx)
        for m, v in terms.items():
            c[idx[tuple(m)]] = (c[idx[tuple(m)]] + v) % p
        return cls(n, degree, tuple(c), p)

    @classmethod
    def linear(cls, coeffs, p: int) -> Form:
        return cls(len(coeffs) - 1, 1, tuple(coeffs), p)

    @classmethod
    def zero(cls, n: int, degree: int, p: int) -> Form:
        return cls(n, degree, (0,) * num_monomials(n, degree), p)

    def terms(self) -> dict[Monomial, int]:
        return {m: c for m, c in zip(monomial_basis(self.n, self.degree), self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __call__(self, point) -> int:
        x = [int(c) % self.p for c in point]
        acc = 0
        for m, c in self.terms().items():
            term = c
            for xi, e in zip(x, m):
                if e:
                    term = term * pow(xi, e, self.p) % self.p
            acc += term
        return acc % self.p

    def __add__(self, other: Form) -> Form:
        if (other.n, other.degree) != (self.n, self.degree):
            raise ValueError("forms of different shape")
        return Form(self.n, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.p)

    def scale(self, c: int) -> Form:
        return Form(self.n, self.degree, tuple(c * a for a in self.coeffs), self.p)

    def __mul__(self, other: Form) -> Form:
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms().items():
            for m2, c2 in other.terms().items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = (out.get(m, 0) + c1 * c2) % self.p
        return Form.from_terms(self.n, self.degree + other.degree, out, self.p)

    def power(self, k: int) -> Form:
        out = Form.from_terms(self.n, 0, {(0,) * (self.n + 1): 1}, self.p)
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, M) -> Form:
        """The form ``x -> self(M x)`` for an (n+1)x(n+1) matrix M."""
        M = [[int(v) % self.p for v in row] for row in M]
        n, p = self.n, self.p
        rows = [Form.linear(row, p) for row in M]
        cache: dict[tuple[int, int], Form] = {}

        def pw(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = rows[i].power(e)
            return cache[(i, e)]

        acc = Form.zero(n, self.degree, p)
        one = Form.from_terms(n, 0, {(0,) * (n + 1): 1}, p)
        for m, c in self.terms().items():
            term = one
            for i, e in enumerate(m):
                if e:
                    term = term * pw(i, e)
            acc = acc + term.scale(c)
        return acc


def evaluate_monomials(n: int, t: int, points, p: int) -> np.ndarray:
    """Matrix of every degree-t monomial evaluated at every point (points x N_t)."""
    pts = np.asarray(points, dtype=np.int64) % p
    E = exponent_matrix(n, t)
    out = np.ones((pts.shape[0], E.shape[0]), dtype=np.int64)
    for i in range(n + 1):
        table = np.ones((pts.shape[0], t + 1), dtype=np.int64)
        for e in range(1, t + 1):
            table[:, e] = table[:, e - 1] * pts[:, i] % p
        out = out * table[:, E[:, i]] % p
    return out


# --------------------------------------------------------------------------
# restriction to curves


def _mul_by_binary(X: np.ndarray, c: np.ndarray, p: int) -> np.ndarray:
    """Columns of X are binary forms (low u-power first); multiply each by c."""
    e = len(c) - 1
    out = np.zeros((X.shape[0] + e, X.shape[1]), dtype=np.int64)
    for s, cs in enumerate(c):
        if cs:
            out[s:s + X.shape[0]] += cs * X
            out %= p
    return out


def iter_restriction_images(n: int, coords: np.ndarray, p: int):
    """Yield ``(t, R_t)`` for t = 0, 1, ..., with R_t the (t*e+1) x N_t matrix
    whose column j is the binary form ``m_j(phi)`` for the j-th monomial."""
    coords = np.asarray(coords, dtype=np.int64) % p
    images = np.ones((1, 1), dtype=np.int64)
    yield 0, images
    for t in itertools.count(1):
        e = coords.shape[1] - 1
        new = np.zeros((t * e + 1, num_monomials(n, t)), dtype=np.int64)
        for i, (cols, parents) in enumerate(_recursion_table(n, t)):
            if cols.size:
                new[:, cols] = _mul_by_binary(images[:, parents], coords[i], p)
        images = new
        yield t, images


def restriction_matrix(n: int, t: int, coords, p: int) -> np.ndarray:
    for s, R in iter_restriction_images(n, coords, p):
        if s == t:
            return R


def line_coords(A, B, p: int) -> np.ndarray:
    """Coordinate forms of the parametrization ``(u, v) -> u*A + v*B``."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    return np.stack([B, A], axis=1)  # x_i = B_i v + A_i u


def _proportional(A, B, p) -> bool:
    M = np.array([A, B], dtype=np.int64) % p
    return matrix_rank(M, p) < 2


def restrict_form_to_line(g: Form, A, B) -> BinaryForm:
    if _proportional(A, B, g.p):
        raise DegenerateSpan("A and B are proportional")
    R = restriction_matrix(g.n, g.degree, line_coords(A, B, g.p), g.p)
    return BinaryForm(tuple((R @ g.array()) % g.p), g.p)


@dataclass(frozen=True)
class RationalCurveParam:
    """n+1 binary forms of common degree d without common root."""

    coords: tuple[BinaryForm, ...]

    def __post_init__(self):
        ds = {c.degree for c in self.coords}
        if len(ds) != 1:
            raise ValueError("coordinates need a common degree")
        if not base_point_free(self.coords):
            raise BasePoint("coordinate forms share a root")

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @property
    def degree(self) -> int:
        return self.coords[0].degree

    @property
    def p(self) -> int:
        return self.coords[0].p

    def array(self) -> np.ndarray:
        return np.array([c.coeffs for c in self.coords], dtype=np.int64)

    def __call__(self, u: int, v: int) -> tuple[int, ...]:
        return tuple(c(u, v) for c in self.coords)

    def reparametrize(self, a: int, b: int, c: int, d: int) -> RationalCurveParam:
        """Compose with ``(u, v) -> (a u + b v, c u + d v)``."""
        p = self.p
        U = BinaryForm((b, a), p)
        V = BinaryForm((d, c), p)
        out = []
        for f in self.coords:
            t = f.degree
            acc = BinaryForm.zero(t, p)
            for j, cj in enumerate(f.coeffs):
                if cj:
                    term = BinaryForm((cj,), p)
                    for _ in range(j):
                        term = term * U
                    for _ in range(t - j):
                        term = term * V
                    acc = acc + term
            out.append(acc)
        return RationalCurveParam(tuple(out))


def base_point_free(coords) -> bool:
    p = coords[0].p
    if all(c.coeffs[-1] == 0 for c in coords):
        return False  # all vanish at (1:0)
    g: list[int] = []
    for c in coords:
        g = poly_gcd(g, c.dehomogenize(), p) if g else poly_monic(c.dehomogenize(), p)
        if g and len(g) == 1:
            return True
    return len(g) == 1


def restrict_form_to_param_curve(g: Form, phi: RationalCurveParam) -> BinaryForm:
    R = restriction_matrix(g.n, g.degree, phi.array(), g.p)
    return BinaryForm(tuple((R @ g.array()) % g.p), g.p)


def _companion_powers(divisor, count: int, p: int) -> list[np.ndarray]:
    """[C^0, ..., C^(count-1)] for the multiplication-by-u matrix modulo D."""
    D = poly_monic(divisor, p)
    m = len(D) - 1
    C = np.zeros((m, m), dtype=np.int64)
    for j in range(m - 1):
        C[j + 1, j] = 1
    C[:, m - 1] = [(-D[i]) % p for i in range(m)]
    out = [np.eye(m, dtype=np.int64)]
    for _ in range(count - 1):
        out.append(C @ out[-1] % p)
    return out


def iter_quotient_images(n: int, coords, divisor, p: int):
    """Yield ``(t, B_t)``: B_t maps degree-t forms g to ``g(phi) mod D``.

    ``coords`` are the coordinate binary forms of the parametrization
    (shape (n+1, e+1)), ``divisor`` the polynomial ``D(u)`` (low to high) of
    a divisor avoiding (1:0).  While ``t*e < deg D`` the reduction is the
    identity on ``g(phi)``, and only its ``t*e + 1`` coefficients are
    returned; afterwards the block has ``deg D`` rows.
    """
    coords = np.asarray(coords, dtype=np.int64) % p
    D = poly_trim([int(x) % p for x in divisor])
    m = len(D) - 1
    if m < 1:
        raise ValueError("divisor must have positive degree")
    e = coords.shape[1] - 1
    powers = _companion_powers(D, e + 1, p)
    mult = []
    for i in range(n + 1):
        M = np.zeros((m, m), dtype=np.int64)
        for s, cs in enumerate(coords[i]):
            if cs:
                M = (M + int(cs) * powers[s]) % p
        mult.append(M)
    images = np.zeros((m, 1), dtype=np.int64)
    images[0, 0] = 1
    yield 0, images[:1]
    for t in itertools.count(1):
        new = np.empty((m, num_monomials(n, t)), dtype=np.int64)
        for i, (cols, parents) in enumerate(_recursion_table(n, t)):
            if cols.size:
                new[:, cols] = mult[i] @ images[:, parents] % p
        images = new
        yield t, images[:min(m, t * e + 1)]


def quotient_block(n: int, t: int, coords, divisor, p: int) -> np.ndarray:
    for s, B in iter_quotient_images(n, coords, divisor, p):
        if s == t:
            return B


# --------------------------------------------------------------------------
# bidegree forms on P^1 x P^1


@dataclass(frozen=True)
class BiDegreeForm:
    a: int
    b: int
    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) % self.p for c in self.coeffs))
        if len(self.coeffs) != (self.a + 1) * (self.b + 1):
            raise ValueError("need (a+1)(b+1) coefficients")

    @classmethod
    def from_terms(cls, a: int, b: int, terms: dict, p: int) -> BiDegreeForm:
        c = [0] * ((a + 1) * (b + 1))
        for (i, j), v in terms.items():
            c[i * (b + 1) + j] = v
        return cls(a, b, tuple(c), p)


def bimonomial_values(a: int, b: int, pt, p: int) -> np.ndarray:
    (u0, u1), (v0, v1) = pt
    us = [pow(u0, i, p) * pow(u1, a - i, p) % p for i in range(a + 1)]
    vs = [pow(v0, j, p) * pow(v1, b - j, p) % p for j in range(b + 1)]
    return np.array([x * y % p for x in us for y in vs], dtype=np.int64)


def evaluate_biform(F: BiDegreeForm, pt) -> int:
    (u0, u1), (v0, v1) = pt
    if (u0 % F.p, u1 % F.p) == (0, 0) or (v0 % F.p, v1 % F.p) == (0, 0):
        raise ValueError("both factors must be nonzero points of P^1")
    vals = bimonomial_values(F.a, F.b, pt, F.p)
    return int(np.dot(vals, np.array(F.coeffs, dtype=np.int64)) % F.p)
