"""Explicit degenerate configurations with known vanishing.

Each construction is a function of an RNG (and a few parameters) returning a
validated :class:`TreeCurve` or :class:`Forest`.  Constructions on a quadric
use the Segre quadric ``x0 x3 = x1 x2`` with ``(u, v) -> (u0 v0, u0 v1,
u1 v0, u1 v1)``; a ruling line of class (1,0) has fixed ``u``, one of class
(0,1) fixed ``v``.
"""

from __future__ import annotations

from .errors import NotATree, RetryExhausted, UnknownConstruction
from .geometry import (Line, QuadricSpec, hyperplane_meet, line_section, quadric_normal_form,
                       random_point, random_point_on_hyperplane, random_point_on_line,
                       segre_coords, segre_line)
from .polyspace import Form
from .trees import Forest, TreeConstraints, TreeCurve, TreeType, random_tree


def _p1(rng, p, avoid=()):
    while True:
        t = int(rng.integers(0, p + 1))
        pt = (0, 1) if t == p else (1, t)
        if pt not in avoid:
            return pt


def _random_plane(rng, p) -> Form:
    while True:
        c = rng.integers(0, p, size=4)
        if c.any():
            return Form.linear([int(x) for x in c], p)


def _retry(build, rng, budget=100):
    for _ in range(budget):
        try:
            return build(rng)
        except (NotATree, ValueError):
            continue
    raise RetryExhausted("construction kept degenerating")


def be4_nonbamboo(rng, p: int) -> TreeCurve:
    """One (1,0) line and three distinct (0,1) lines on the Segre quadric:
    a degree 4 spreading tree whose only quadric is Q itself."""
    def build(rng):
        L1 = segre_line(p, u=_p1(rng, p))
        vs = []
        while len(vs) < 3:
            vs.append(_p1(rng, p, avoid=vs))
        return TreeCurve.from_lines([L1] + [segre_line(p, v=v) for v in vs], (1, 1, 1))
    return _retry(build, rng)


def be4_bamboo(rng, p: int) -> TreeCurve:
    """Bamboo L1-L2-L3-L4 with L1, L2 in a plane H and L3, L4 in a plane M;
    L3 passes through L2 ∩ M.  The only quadric containing it is H ∪ M."""
    def build(rng):
        H, M = _random_plane(rng, p), _random_plane(rng, p)
        L1 = Line.through(tuple(random_point_on_hyperplane(H, rng)),
                          tuple(random_point_on_hyperplane(H, rng)), p)
        L2 = Line.through(tuple(random_point_on_hyperplane(H, rng)),
                          tuple(random_point_on_hyperplane(H, rng)), p)
        L4 = Line.through(tuple(random_point_on_hyperplane(M, rng)),
                          tuple(random_point_on_hyperplane(M, rng)), p)
        c = hyperplane_meet(M, L2)
        L3 = Line.through(tuple(c), tuple(random_point_on_line(L4, rng)), p)
        return TreeCurve.from_lines([L1, L2, L3, L4], (1, 2, 3))
    return _retry(build, rng)


def be41_claim(rng, p: int) -> TreeCurve:
    """Bamboo L1..L5 with L1, L3, L5 in the (1,0) ruling of the Segre quadric,
    L2 a general line meeting L1 and L3, L4 one meeting L3 and L5."""
    def build(rng):
        us = []
        while len(us) < 3:
            us.append(_p1(rng, p, avoid=us))
        L1, L3, L5 = (segre_line(p, u=u) for u in us)
        L2 = Line.through(tuple(random_point_on_line(L1, rng)), tuple(random_point_on_line(L3, rng)), p)
        L4 = Line.through(tuple(random_point_on_line(L3, rng)), tuple(random_point_on_line(L5, rng)), p)
        return TreeCurve.from_lines([L1, L2, L3, L4, L5], (1, 2, 3, 4))
    return _retry(build, rng)


def be5(rng, p: int) -> TreeCurve:
    """Degree 6 bamboo whose last two lines form a reducible conic in a plane H,
    the other four lines being general (the chain ends at a point of L5)."""
    def build(rng):
        H = _random_plane(rng, p)
        P, A, B = (random_point_on_hyperplane(H, rng) for _ in range(3))
        L6 = Line.through(tuple(P), tuple(A), p)
        L5 = Line.through(tuple(P), tuple(B), p)
        lines = [L6, L5]
        for _ in range(4):
            o = random_point_on_line(lines[-1], rng)
            lines.append(Line.through(tuple(o), tuple(random_point(3, rng, p)), p))
        return TreeCurve.from_lines(lines, (1, 2, 3, 4, 5))
    return _retry(build, rng)


def general_lines(rng, p: int, count: int = 3, n: int = 3, Q: QuadricSpec | None = None) -> Forest:
    """``count`` general pairwise disjoint lines (each through a rational
    point of Q when given)."""
    cons = TreeConstraints(through_rational_points_of=Q)
    return _retry(lambda rng: Forest(tuple(random_tree(TreeType(1), n, rng, p, cons)
                                           for _ in range(count))), rng)


def _segre_section_points(L: Line, Q: QuadricSpec) -> list[tuple]:
    sec = line_section(L, Q.W, want_points=True)
    return [segre_coords(pt) for pt, _ in sec.points()]


def efb1(rng, p: int) -> TreeCurve:
    """Degree 10 tree: three general lines E1, E2, E3 plus F in |O_Q(1,6)|,
    a (1,0) line crossed by six (0,1) lines, three of which pass through a
    point of E1, E2, E3 on Q respectively."""
    Q = quadric_normal_form(3, 4, p)

    def build(rng):
        E = general_lines(rng, p, 3, Q=Q).lines
        on_q = [_segre_section_points(L, Q) for L in E]
        if any(len(s) < 1 for s in on_q):
            raise ValueError("a line of E has no rational point on Q")
        all_u = [u for s in on_q for u, _ in s]
        all_v = [v for s in on_q for _, v in s]
        hooks = [s[0][1] for s in on_q]
        if len(set(hooks)) < 3:
            raise ValueError("hooks share a ruling line")
        ell = segre_line(p, u=_p1(rng, p, avoid=all_u))
        vs = list(hooks)
        while len(vs) < 6:
            vs.append(_p1(rng, p, avoid=vs + all_v))
        ms = [segre_line(p, v=v) for v in vs]
        lines = [ell] + ms + list(E)
        tau = (1,) * 6 + (2, 3, 4)
        return TreeCurve.from_lines(lines, tau)
    return _retry(build, rng)


def eeb4_step(Y: TreeCurve, t: int, rng, p: int) -> TreeCurve:
    """Y plus E in |O_Q(1, 2t-2)|: a (1,0) line through a rational point o of
    Y ∩ Q and 2t-2 lines of class (0,1) missing Y ∩ Q."""
    Q = quadric_normal_form(3, 4, p)
    hits = []
    for i, L in enumerate(Y.lines):
        sec = line_section(L, Q.W, want_points=True)
        if sec.contained:
            raise ValueError("a line of Y lies on Q")
        hits.extend((i, pt) for pt, _ in sec.points())
    if not hits:
        raise RetryExhausted("Y meets Q in no rational point")
    coords = [segre_coords(pt) for _, pt in hits]
    all_v = [v for _, v in coords]

    def build(rng):
        j = int(rng.integers(0, len(hits)))
        i, o = hits[j]
        u_o, v_o = coords[j]
        ell = segre_line(p, u=u_o)
        vs = []
        while len(vs) < 2 * t - 2:
            vs.append(_p1(rng, p, avoid=vs + all_v))
        lines = list(Y.lines) + [ell] + [segre_line(p, v=v) for v in vs]
        e = Y.degree + 1
        tau = Y.type.tau + (i + 1,) + (e,) * (2 * t - 2)
        return TreeCurve.from_lines(lines, tau)
    return _retry(build, rng)


GALLERY = {
    "be4_nonbamboo": be4_nonbamboo,
    "be4_bamboo": be4_bamboo,
    "be41_claim": be41_claim,
    "be5": be5,
    "efb1": efb1,
    "efb1_lines": general_lines,
    "eeb4_step": eeb4_step,
}


def named_construction(name: str, **params):
    """Dispatch to a gallery construction by name.

    ``eeb4_step`` needs ``Y`` and ``t``; every construction needs ``rng`` and
    ``p``.
    """
    try:
        fn = GALLERY[name]
    except KeyError:
        raise UnknownConstruction(name) from None
    return fn(**params)
