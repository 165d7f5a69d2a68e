"""Cohomology of ideal sheaves of curve sections of a hypersurface.

For a curve Y (tree, forest or rational curve) and a hypersurface W = {f = 0}
of degree k, the scheme Z = Y ∩ W is cut out on each component C by the
divisor of ``f|_C``.  A degree-t form g vanishes on Z exactly when ``f|_C``
divides ``g|_C`` on every component, so

    rank   = rank of  g -> (g|_C mod f|_C)_C    on degree-t forms,
    h0     = h0(O_W(t)) - rank,
    h1     = deg Z - rank,

where h0, h1 are those of I_{Z,W}(t).  The second line uses that W is a
hypersurface: H0(O_P(t)) -> H0(O_W(t)) is onto with kernel f * H0(O_P(t-k)),
and that kernel always lies in the kernel of the condition map.  The third
line uses h1(O_W(t)) = 0, so h1 of the ideal is the cokernel of the
restriction map.  Neither needs transversality: non-reduced divisors such as
those of ``ell**k`` are handled the same way.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from .errors import ComponentContained, DuplicatePoint, InvariantViolation, PointNotOnW
from .exactfield import matrix_rank
from .geometry import Hypersurface, Line, section_parametrization
from .polyspace import (RationalCurveParam, bimonomial_values, evaluate_monomials,
                        iter_quotient_images, iter_restriction_images, line_coords,
                        num_monomials, poly_divmod, poly_trim, restrict_form_to_line,
                        restrict_form_to_param_curve)

MAXIMAL = "MaximalRank"
DEFECTIVE = "Defective"


def sections_of_OW(n: int, k: int, t: int) -> int:
    """h0(O_W(t)) = C(n+t, n) - C(n+t-k, n) for a degree-k hypersurface."""
    if t < 0:
        return 0
    return num_monomials(n, t) - num_monomials(n, t - k)


def critical_degree(t: int, n: int = 3, k: int = 3) -> int:
    """``floor(h0(O_W(t)) / k)``: the largest d with k*d <= h0(O_W(t))."""
    return sections_of_OW(n, k, t) // k


def expected_pair(h0_OW: int, length: int) -> tuple[int, int]:
    return max(0, h0_OW - length), max(0, length - h0_OW)


@dataclass(frozen=True)
class CohomologyPair:
    h0: int
    h1: int
    rank: int
    h0_sheaf_of_OW: int

    @property
    def maximal_rank(self) -> bool:
        return self.h0 == 0 or self.h1 == 0

    def pair(self) -> tuple[int, int]:
        return self.h0, self.h1


# --------------------------------------------------------------------------
# components of the condition map


@dataclass
class _Component:
    """One irreducible component: its parametrization and its divisor on P^1."""

    coords: np.ndarray     # (n+1, e+1) coordinate binary forms
    divisor: list[int]     # D(u), low to high, deg D = length of the section
    label: str = ""


def _line_component(W: Hypersurface, L: Line, label: str) -> _Component:
    param = section_parametrization(L, W)
    if param is None:
        raise ComponentContained(f"{label} lies in W")
    A, B = param
    fL = restrict_form_to_line(W.form, A, B)
    return _Component(line_coords(A, B, W.p), list(fL.coeffs), label)


def _param_component(W: Hypersurface, phi: RationalCurveParam) -> _Component:
    F = restrict_form_to_param_curve(W.form, phi)
    if F.is_zero():
        raise ComponentContained("the curve lies in W")
    c = 0
    while F.coeffs[-1] == 0:
        # move the parameter so that no point of Z sits at (1:0)
        c += 1
        phi = phi.reparametrize(1, 0, c, 1)
        F = restrict_form_to_param_curve(W.form, phi)
    return _Component(phi.array(), list(F.coeffs), "curve")


def curve_lines(C) -> tuple[Line, ...]:
    if isinstance(C, Line):
        return (C,)
    if isinstance(C, (list, tuple)):
        return tuple(C)
    return tuple(C.lines)


def components_of(W: Hypersurface, C) -> list[_Component]:
    if isinstance(C, RationalCurveParam):
        return [_param_component(W, C)]
    return [_line_component(W, L, f"L{i + 1}") for i, L in enumerate(curve_lines(C))]


def curve_degree(C) -> int:
    if isinstance(C, RationalCurveParam):
        return C.degree
    return len(curve_lines(C))


def _remove_root(comp: _Component, root: int, p: int) -> _Component:
    """Same component with one point (u, v) = (root, 1) taken off its divisor."""
    q, r = poly_divmod(comp.divisor, [(-root) % p, 1], p)
    if poly_trim(r):
        raise ValueError("point is not on the divisor")
    return _Component(comp.coords, q, comp.label + f"-({root}:1)")


def _iter_stacked(n: int, comps: list[_Component], p: int):
    """Yield (t, condition matrix) for t = 0, 1, 2, ..."""
    its = [iter_quotient_images(n, c.coords, c.divisor, p) for c in comps]
    while True:
        blocks = [next(it) for it in its]
        t = blocks[0][0]
        yield t, np.vstack([b for _, b in blocks])


def _pair_from_rank(n: int, k: int, t: int, length: int, rank: int) -> CohomologyPair:
    h0_OW = sections_of_OW(n, k, t)
    if rank > h0_OW or rank > length:
        raise InvariantViolation(f"rank {rank} exceeds h0(O_W({t}))={h0_OW} or deg Z={length}")
    h0, h1 = h0_OW - rank, length - rank
    if h0 - h1 != h0_OW - length:
        raise InvariantViolation("Euler characteristic identity failed")
    return CohomologyPair(h0, h1, rank, h0_OW)


def condition_matrix(W: Hypersurface, C, t: int) -> np.ndarray:
    """Stacked per-component blocks; columns indexed by the degree-t monomials."""
    comps = components_of(W, C)
    for s, M in _iter_stacked(W.n, comps, W.p):
        if s == t:
            return M


def _cohomology_from_components(W, comps, t) -> CohomologyPair:
    length = sum(len(c.divisor) - 1 for c in comps)
    M = next(M for s, M in _iter_stacked(W.n, comps, W.p) if s == t)
    return _pair_from_rank(W.n, W.degree, t, length, matrix_rank(M, W.p))


def intersection_cohomology(W: Hypersurface, C, t: int) -> CohomologyPair:
    """(h0, h1) of I_{C∩W, W}(t)."""
    return _cohomology_from_components(W, components_of(W, C), t)


# --------------------------------------------------------------------------
# profiles


@dataclass(frozen=True)
class ProfileRow:
    t: int
    N_t: int
    h0_OW: int
    expected_h0: int
    expected_h1: int
    h0: int
    h1: int
    rank: int
    verdict: str

    @property
    def pair(self) -> tuple[int, int]:
        return self.h0, self.h1


@dataclass(frozen=True)
class IntersectionProfile:
    n: int
    k: int
    degree: int
    length: int
    t_cap: int
    rows: tuple[ProfileRow, ...]

    @property
    def verdict(self) -> str:
        return MAXIMAL if all(r.verdict == MAXIMAL for r in self.rows) else DEFECTIVE

    @property
    def defective_t(self) -> list[int]:
        return [r.t for r in self.rows if r.verdict == DEFECTIVE]

    def at(self, t: int) -> ProfileRow:
        return next(r for r in self.rows if r.t == t)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rows"] = [asdict(r) for r in self.rows]
        d["verdict"] = self.verdict
        return d

    @classmethod
    def from_dict(cls, d: dict) -> IntersectionProfile:
        rows = tuple(ProfileRow(**r) for r in d["rows"])
        return cls(d["n"], d["k"], d["degree"], d["length"], d["t_cap"], rows)


def profile_from_components(W: Hypersurface, comps, degree: int,
                            t_min: int = 1, t_max: int | None = None) -> IntersectionProfile:
    n, k, p = W.n, W.degree, W.p
    length = sum(len(c.divisor) - 1 for c in comps)
    t_cap = length - 1
    if t_max is None:
        t_max = t_cap
    rows = []
    if t_max >= t_min:
        for t, M in _iter_stacked(n, comps, p):
            if t < t_min:
                continue
            pair = _pair_from_rank(n, k, t, length, matrix_rank(M, p))
            e0, e1 = expected_pair(pair.h0_sheaf_of_OW, length)
            if t >= t_cap and pair.h1 != 0:
                raise InvariantViolation(f"h1 = {pair.h1} at t = {t} >= deg Z - 1")
            rows.append(ProfileRow(t, num_monomials(n, t), pair.h0_sheaf_of_OW, e0, e1,
                                   pair.h0, pair.h1, pair.rank,
                                   MAXIMAL if pair.maximal_rank else DEFECTIVE))
            if t >= t_max:
                break
    return IntersectionProfile(n, k, degree, length, t_cap, tuple(rows))


def profile(W: Hypersurface, C, t_min: int = 1, t_max: int | None = None) -> IntersectionProfile:
    """Per-t table of (h0, h1) with verdicts; defaults to t in [1, deg Z - 1]."""
    return profile_from_components(W, components_of(W, C), curve_degree(C), t_min, t_max)


def linking_cohomology(W: Hypersurface, C, t: int, line_index: int, root: int) -> CohomologyPair:
    """Cohomology after deleting the point ``(root:1)`` of the section of line
    ``line_index`` (0-based, in the parametrization used by ``components_of``)."""
    comps = components_of(W, C)
    comps[line_index] = _remove_root(comps[line_index], root, W.p)
    return _cohomology_from_components(W, comps, t)


# --------------------------------------------------------------------------
# ideal of the curve itself in P^n


def _chi(C, t: int) -> int:
    # chi(O_T(t)) = d*t + 1 for each tree component (arithmetic genus 0)
    comps = getattr(C, "components", None)
    count = len(comps) if comps is not None else len(curve_lines(C))
    return curve_degree(C) * t + count


def curve_ideal_cohomology(C, t: int) -> CohomologyPair:
    """(h0, h1) of I_C(t) in P^n for a tree, forest, or plain list of
    pairwise disjoint lines.  ``h0_sheaf_of_OW`` holds N_t here."""
    lines = curve_lines(C)
    n, p = lines[0].n, lines[0].p
    blocks = []
    for L in lines:
        R = next(M for s, M in iter_restriction_images(n, line_coords(*L.basis, p), p) if s == t)
        blocks.append(R)
    M = np.vstack(blocks)
    rank = matrix_rank(M, p)
    N_t = num_monomials(n, t)
    h0 = N_t - rank
    h1 = h0 - N_t + _chi(C, t)
    if h1 < 0:
        raise InvariantViolation("negative h1: the curve is not a genus-0 union of lines")
    return CohomologyPair(h0, h1, rank, N_t)


# --------------------------------------------------------------------------
# points


def bigraded_cohomology(points, a: int, b: int, p: int) -> CohomologyPair:
    """(h0, h1) of I_S(a, b) on P^1 x P^1 for points given in Segre coordinates.
    ``h0_sheaf_of_OW`` holds (a+1)(b+1)."""
    pts = [tuple(map(tuple, pt)) for pt in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoint("points must be distinct")
    dim = (a + 1) * (b + 1)
    if not pts:
        return CohomologyPair(dim, 0, 0, dim)
    M = np.array([bimonomial_values(a, b, pt, p) for pt in pts], dtype=np.int64)
    r = matrix_rank(M, p)
    return CohomologyPair(dim - r, len(pts) - r, r, dim)


def point_evaluation_oracle(W: Hypersurface, points, t: int) -> CohomologyPair:
    """(h0, h1) of I_{S,W}(t) from the evaluation matrix at explicit points."""
    n, k, p = W.n, W.degree, W.p
    pts = [tuple(pt) for pt in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoint("points must be distinct")
    for pt in pts:
        if not W.contains(pt):
            raise PointNotOnW(f"{pt} is not on W")
    E = evaluate_monomials(n, t, pts, p)
    r = matrix_rank(E, p)
    h0 = num_monomials(n, t) - r - num_monomials(n, t - k)
    h1 = len(pts) - r
    return CohomologyPair(h0, h1, r, sections_of_OW(n, k, t))


def fe1_bounds(n: int, k: int, t: int) -> tuple[int, int]:
    """(largest d forcing h1 = 0, smallest d forcing h0 = 0)."""
    lo = comb(n + t - k, n - 1) if n + t - k >= 0 else 0
    return lo, comb(n + t + k - 2, n - 1)
