"""Points, lines and hypersurfaces of P^n over F_p.

Points are stored with their first nonzero coordinate scaled to 1 and lines
by the reduced row-echelon form of any two spanning points, so equality of
geometric objects is plain tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadRank, DegenerateSpan, NotOnQuadric, RetryExhausted
from .exactfield import kernel_basis, row_reduce
from .polyspace import (BinaryForm, Form, RootReport, binary_roots, is_squarefree,
                        num_monomials, restrict_form_to_line)


def _normalize(coords, p: int) -> tuple[int, ...]:
    c = [int(x) % p for x in coords]
    for x in c:
        if x:
            inv = pow(x, p - 2, p)
            return tuple(y * inv % p for y in c)
    raise ValueError("the zero vector is not a projective point")


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coords", _normalize(self.coords, self.p))

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


def rank_small(rows, p: int) -> int:
    """Rank of a handful of short integer rows (pure Python, no numpy overhead)."""
    M = [[int(x) % p for x in r] for r in rows]
    rank, cols = 0, len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], p - 2, p)
        for i in range(rank + 1, len(M)):
            if M[i][c]:
                f = M[i][c] * inv % p
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


@dataclass(frozen=True)
class Line:
    """A line of P^n stored as the RREF of two spanning points."""

    basis: tuple[tuple[int, ...], tuple[int, ...]]
    p: int

    @classmethod
    def through(cls, A, B, p: int) -> Line:
        R, piv = row_reduce([list(A), list(B)], p, reduced=True)
        if len(piv) < 2:
            raise DegenerateSpan("points are proportional")
        return cls((tuple(int(x) for x in R[0]), tuple(int(x) for x in R[1])), p)

    @property
    def n(self) -> int:
        return len(self.basis[0]) - 1

    def point(self, u: int, v: int) -> ProjPoint:
        r0, r1 = self.basis
        return ProjPoint(tuple(u * a + v * b for a, b in zip(r0, r1)), self.p)

    def contains(self, point) -> bool:
        return rank_small([*self.basis, tuple(point)], self.p) == 2

    def meets(self, other: Line) -> bool:
        return rank_small([*self.basis, *other.basis], self.p) < 4


def line_through(A, B, p: int | None = None) -> Line:
    if p is None:
        p = A.p
    return Line.through(tuple(A), tuple(B), p)


def line_intersection(L: Line, M: Line) -> ProjPoint | None:
    """The common point of two distinct lines, or None when disjoint."""
    if L == M:
        raise ValueError("identical lines meet in a line")
    p = L.p
    cols = np.array([*L.basis, *M.basis], dtype=np.int64).T
    K = kernel_basis(cols, p)
    if K.shape[0] == 0:
        return None
    a, b = int(K[0, 0]), int(K[0, 1])
    return L.point(a, b)


def hyperplane_meet(ell: Form, L: Line) -> ProjPoint:
    """Intersection of a line with the hyperplane ``ell = 0`` (line not inside)."""
    r0, r1 = L.basis
    a, b = ell(r0), ell(r1)
    if a == 0 and b == 0:
        raise ValueError("line lies in the hyperplane")
    return L.point(b, -a)


@dataclass(frozen=True)
class Hypersurface:
    form: Form

    def __post_init__(self):
        if self.form.is_zero():
            raise ValueError("a hypersurface needs a nonzero form")

    @property
    def n(self) -> int:
        return self.form.n

    @property
    def degree(self) -> int:
        return self.form.degree

    @property
    def p(self) -> int:
        return self.form.p

    def contains(self, point) -> bool:
        return self.form(tuple(point)) == 0


def random_point(n: int, rng: np.random.Generator, p: int) -> ProjPoint:
    while True:
        c = rng.integers(0, p, size=n + 1)
        if c.any():
            return ProjPoint(tuple(int(x) for x in c), p)


def random_point_on_line(L: Line, rng: np.random.Generator) -> ProjPoint:
    t = int(rng.integers(0, L.p + 1))
    if t == L.p:
        return L.point(0, 1)
    return L.point(1, t)


def random_point_on_hyperplane(ell: Form, rng: np.random.Generator) -> ProjPoint:
    p, h = ell.p, ell.coeffs
    j = next(i for i, c in enumerate(h) if c)
    while True:
        x = [int(v) for v in rng.integers(0, p, size=len(h))]
        x[j] = 0
        x[j] = -sum(a * b for a, b in zip(h, x)) * pow(h[j], p - 2, p) % p
        if any(x):
            return ProjPoint(tuple(x), p)


def random_hypersurface(n: int, k: int, rng: np.random.Generator, p: int) -> Hypersurface:
    while True:
        c = rng.integers(0, p, size=num_monomials(n, k))
        if c.any():
            return Hypersurface(Form(n, k, tuple(int(x) for x in c), p))


def multiple_hyperplane(ell: Form, k: int) -> Hypersurface:
    if ell.degree != 1:
        raise ValueError("expected a linear form")
    return Hypersurface(ell.power(k))


# --------------------------------------------------------------------------
# quadrics


def gram_matrix(q: Form) -> np.ndarray:
    """Symmetric B with ``q(x) = x^T B x`` (needs p odd)."""
    if q.degree != 2:
        raise ValueError("expected a quadratic form")
    p, n = q.p, q.n
    half = pow(2, p - 2, p)
    B = np.zeros((n + 1, n + 1), dtype=np.int64)
    for m, c in q.terms().items():
        idx = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = idx
        if i == j:
            B[i, i] = c
        else:
            B[i, j] = B[j, i] = c * half % p
    return B


@dataclass(frozen=True)
class QuadricSpec:
    n: int
    rank: int
    W: Hypersurface
    # x[solve] * x[partner] is the only term containing x[solve]
    solve: int = 0
    partner: int = 3


def quadric_normal_form(n: int, rank: int, p: int) -> QuadricSpec:
    """``x0 x3 - x1 x2`` plus further hyperbolic pairs and at most one square.

    Rank 3 uses ``x0 x2 - x1^2``.  The class of a quadric over F_p (split or
    not) never affects a rank computation, so one representative per rank
    suffices.
    """
    if not 3 <= rank <= n + 1:
        raise BadRank(f"rank {rank} outside [3, {n + 1}]")
    terms: dict = {}

    def mono(*idx):
        e = [0] * (n + 1)
        for i in idx:
            e[i] += 1
        return tuple(e)

    if rank == 3:
        terms[mono(0, 2)] = 1
        terms[mono(1, 1)] = p - 1
        return QuadricSpec(n, rank, Hypersurface(Form.from_terms(n, 2, terms, p)), 0, 2)
    terms[mono(0, 3)] = 1
    terms[mono(1, 2)] = p - 1
    i = 4
    while i + 1 < rank:
        terms[mono(i, i + 1)] = 1
        i += 2
    if i < rank:
        terms[mono(i, i)] = 1
    return QuadricSpec(n, rank, Hypersurface(Form.from_terms(n, 2, terms, p)), 0, 3)


def rational_point_on_quadric(Q: QuadricSpec, rng: np.random.Generator,
                              budget: int = 100) -> ProjPoint:
    """Random F_p-point: draw every coordinate but one, solve the hyperbolic pair."""
    f, p = Q.W.form, Q.W.p
    for _ in range(budget):
        x = [int(v) for v in rng.integers(0, p, size=Q.n + 1)]
        if x[Q.partner] == 0:
            continue
        x[Q.solve] = 0
        rest = f(x)
        x[Q.solve] = (-rest) * pow(x[Q.partner], p - 2, p) % p
        if any(x) and f(x) == 0:
            return ProjPoint(tuple(x), p)
    raise RetryExhausted("no rational point found on the quadric")


def segre_point(u, v, p: int) -> ProjPoint:
    (u0, u1), (v0, v1) = u, v
    return ProjPoint((u0 * v0, u0 * v1, u1 * v0, u1 * v1), p)


def segre_coords(pt: ProjPoint) -> tuple[tuple[int, int], tuple[int, int]]:
    """Inverse of :func:`segre_point` on ``x0 x3 = x1 x2``; P^1 points in
    first-nonzero-is-one scaling."""
    p = pt.p
    x0, x1, x2, x3 = pt.coords
    if (x0 * x3 - x1 * x2) % p:
        raise NotOnQuadric(f"{pt.coords} is not on x0*x3 = x1*x2")
    u = (x0, x2) if (x0, x2) != (0, 0) else (x1, x3)
    v = (x0, x1) if (x0, x1) != (0, 0) else (x2, x3)
    return _normalize(u, p), _normalize(v, p)


def segre_line(p: int, u=None, v=None) -> Line:
    """The ruling line with fixed first factor ``u`` (class (1,0)) or fixed
    second factor ``v`` (class (0,1))."""
    if (u is None) == (v is None):
        raise ValueError("fix exactly one factor")
    if u is not None:
        return Line.through(tuple(segre_point(u, (1, 0), p)), tuple(segre_point(u, (0, 1), p)), p)
    return Line.through(tuple(segre_point((1, 0), v, p)), tuple(segre_point((0, 1), v, p)), p)


# --------------------------------------------------------------------------
# line sections


def section_parametrization(L: Line, W: Hypersurface) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Spanning points (A, B) of L with ``f(A) != 0``, or None if L lies in W.

    Tries ``A = r0 + j*r1`` for j = 0..k and ``B = r1``; a line not inside W
    has at most k points on W, so one of these k+1 candidates works.
    """
    r0, r1 = L.basis
    p = L.p
    for j in range(W.degree + 1):
        A = tuple((a + j * b) % p for a, b in zip(r0, r1))
        if W.form(A):
            return A, r1
    return None


@dataclass(frozen=True)
class LineSection:
    line: Line
    restriction: BinaryForm
    param: tuple[tuple[int, ...], tuple[int, ...]] | None
    contained: bool
    transversal: bool
    rational_points: RootReport | None = field(default=None, compare=False)

    def points(self) -> list[tuple[ProjPoint, int]]:
        """The rational intersection points as points of P^n."""
        if self.rational_points is None or self.param is None:
            return []
        A, B = self.param
        return [(ProjPoint(tuple(u * a + v * b for a, b in zip(A, B)), self.line.p), m)
                for (u, v), m in self.rational_points.roots]


def line_section(L: Line, W: Hypersurface, want_points: bool = False) -> LineSection:
    param = section_parametrization(L, W)
    if param is None:
        zero = BinaryForm.zero(W.degree, W.p)
        return LineSection(L, zero, None, True, False, None)
    A, B = param
    fL = restrict_form_to_line(W.form, A, B)
    roots = binary_roots(fL) if want_points else None
    sq = roots.squarefree if roots is not None else is_squarefree(fL)
    return LineSection(L, fL, param, False, sq, roots)


def transform_point(M, pt) -> ProjPoint:
    M = np.asarray(M, dtype=np.int64)
    p = pt.p
    x = np.array(pt.coords, dtype=np.int64)
    return ProjPoint(tuple(int(v) for v in (M @ x) % p), p)


def transform_line(M, L: Line) -> Line:
    A = transform_point(M, ProjPoint(L.basis[0], L.p))
    B = transform_point(M, ProjPoint(L.basis[1], L.p))
    return Line.through(tuple(A), tuple(B), L.p)
