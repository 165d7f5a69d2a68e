"""Trees, bamboos and forests of lines.

A tree of degree d comes with an admissible ordering L_1, ..., L_d and its
type ``tau``: for i >= 2, ``tau[i]`` is the unique earlier index whose line
meets L_i.  Types are stored as tuples ``(tau(2), ..., tau(d))`` of 1-based
indices, matching the way they are written by hand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .errors import BasePoint, Infeasible, NotATree, RetryExhausted
from .geometry import (Hypersurface, Line, ProjPoint, QuadricSpec, line_intersection,
                       line_section, random_point, random_point_on_line,
                       rational_point_on_quadric)
from .polyspace import BinaryForm, RationalCurveParam, base_point_free


@dataclass(frozen=True)
class TreeType:
    d: int
    tau: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tau", tuple(int(x) for x in self.tau))
        if self.d < 1 or len(self.tau) != self.d - 1:
            raise ValueError("a degree d type has d - 1 entries")
        for i, t in enumerate(self.tau, start=2):
            if not 1 <= t < i:
                raise ValueError(f"tau({i}) = {t} violates 1 <= tau(i) < i")

    def parent(self, i: int) -> int:
        return self.tau[i - 2]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, self.parent(i)) for i in range(2, self.d + 1)]

    def degrees(self) -> list[int]:
        deg = [0] * (self.d + 1)
        for i, j in self.edges():
            deg[i] += 1
            deg[j] += 1
        return deg[1:]

    def final_lines(self) -> list[int]:
        if self.d == 1:
            return [1]
        return [i + 1 for i, g in enumerate(self.degrees()) if g == 1]

    @property
    def is_bamboo(self) -> bool:
        return all(t == i - 1 for i, t in enumerate(self.tau, start=2))

    @property
    def is_spreading(self) -> bool:
        return all(t == 1 for t in self.tau)

    def label(self) -> str:
        return "(" + ",".join(map(str, self.tau)) + ")"


def bamboo_type(d: int) -> TreeType:
    return TreeType(d, tuple(range(1, d)))


def spreading_type(d: int) -> TreeType:
    return TreeType(d, (1,) * (d - 1))


def enumerate_types(d: int):
    """All (d-1)! types in lexicographic order of ``tau``."""
    for tau in itertools.product(*(range(1, i) for i in range(2, d + 1))):
        yield TreeType(d, tau)


def count_types(d: int) -> int:
    return factorial(d - 1)


def random_type(d: int, rng: np.random.Generator) -> TreeType:
    return TreeType(d, tuple(int(rng.integers(1, i)) for i in range(2, d + 1)))


def canonical_shape(edges: list[tuple[int, int]], d: int) -> str:
    """Isomorphism invariant of an unrooted tree (AHU encoding, min over roots)."""
    adj = {v: [] for v in range(1, d + 1)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)

    def enc(v, parent):
        return "(" + "".join(sorted(enc(w, v) for w in adj[v] if w != parent)) + ")"

    return min(enc(r, 0) for r in adj)


def same_shape(a: TreeType, b: TreeType) -> bool:
    return a.d == b.d and canonical_shape(a.edges(), a.d) == canonical_shape(b.edges(), b.d)


# --------------------------------------------------------------------------
# realized curves


@dataclass(frozen=True)
class TreeCurve:
    lines: tuple[Line, ...]
    nodes: tuple[ProjPoint, ...]
    type: TreeType

    @property
    def degree(self) -> int:
        return len(self.lines)

    @property
    def p(self) -> int:
        return self.lines[0].p

    @property
    def n(self) -> int:
        return self.lines[0].n

    @property
    def components(self) -> tuple[TreeCurve, ...]:
        return (self,)

    def node(self, i: int) -> ProjPoint:
        """The point ``L_i ∩ L_tau(i)``, for i in 2..d."""
        return self.nodes[i - 2]

    @classmethod
    def from_lines(cls, lines, tau) -> TreeCurve:
        lines = tuple(lines)
        ttype = tau if isinstance(tau, TreeType) else TreeType(len(lines), tuple(tau))
        if len(set(lines)) != len(lines):
            raise NotATree("repeated line")
        nodes = []
        for i, j in ttype.edges():
            pt = line_intersection(lines[i - 1], lines[j - 1])
            if pt is None:
                raise NotATree(f"L{i} and L{j} should meet but are disjoint")
            nodes.append(pt)
        curve = cls(lines, tuple(nodes), ttype)
        validate_tree(curve)
        return curve


@dataclass(frozen=True)
class Forest:
    trees: tuple[TreeCurve, ...]

    def __post_init__(self):
        for a, b in itertools.combinations(self.trees, 2):
            for L in a.lines:
                for M in b.lines:
                    if L.meets(M):
                        raise NotATree("forest components must be disjoint")

    @property
    def components(self) -> tuple[TreeCurve, ...]:
        return self.trees

    @property
    def lines(self) -> tuple[Line, ...]:
        return tuple(L for T in self.trees for L in T.lines)

    @property
    def degree(self) -> int:
        return sum(T.degree for T in self.trees)

    @property
    def p(self) -> int:
        return self.trees[0].p

    @property
    def n(self) -> int:
        return self.trees[0].n


def validate_tree(T: TreeCurve) -> None:
    """Raise NotATree unless T is a nodal connected genus-0 union of lines
    realizing its recorded type and nodes."""
    d = T.degree
    if len(set(T.lines)) != d:
        raise NotATree("repeated line")
    adjacent = {frozenset(e) for e in T.type.edges()}
    for i, j in itertools.combinations(range(1, d + 1), 2):
        meets = T.lines[i - 1].meets(T.lines[j - 1])
        if frozenset((i, j)) in adjacent:
            if not meets:
                raise NotATree(f"L{i}, L{j} should meet")
        elif meets:
            raise NotATree(f"L{i}, L{j} should be disjoint")
    for (i, j), pt in zip(T.type.edges(), T.nodes):
        if not (T.lines[i - 1].contains(pt) and T.lines[j - 1].contains(pt)):
            raise NotATree(f"recorded node of L{i}, L{j} is not on both lines")
    if len(set(T.nodes)) != len(T.nodes):
        raise NotATree("two nodes coincide (triple point)")


def intersection_graph(lines) -> list[tuple[int, int]]:
    return [(i, j) for i, j in itertools.combinations(range(len(lines)), 2)
            if lines[i].meets(lines[j])]


def type_of(lines) -> tuple[list[int], TreeType]:
    """An admissible ordering (as original 0-based indices) and its type.

    The ordering is a depth-first traversal, neighbours by increasing index,
    rooted at the lowest-index vertex of maximal degree; when the dual graph
    is a path the root is instead its lowest-index end.  Paths thus come out
    as bamboo types and stars as spreading types.
    """
    lines = list(lines)
    d = len(lines)
    edges = intersection_graph(lines)
    if len(edges) != d - 1:
        raise NotATree(f"{len(edges)} intersecting pairs among {d} lines")
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            raise NotATree("intersection graph has a cycle")
        parent[ra] = rb
    if len({find(v) for v in range(d)}) != 1:
        raise NotATree("intersection graph is disconnected")
    points = [line_intersection(lines[a], lines[b]) for a, b in edges]
    if len(set(points)) != len(points):
        raise NotATree("three lines through one point")

    adj = {v: [] for v in range(d)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    deg = [len(adj[v]) for v in range(d)]
    if d == 1:
        root = 0
    elif max(deg) <= 2:
        root = min(v for v in range(d) if deg[v] == 1)
    else:
        root = min(v for v in range(d) if deg[v] == max(deg))
    order, pos, tau = [], {}, []
    stack = [(root, None)]
    while stack:
        v, par = stack.pop()
        pos[v] = len(order)
        order.append(v)
        if par is not None:
            tau.append(pos[par] + 1)
        for w in sorted(adj[v], reverse=True):
            if w != par:
                stack.append((w, v))
    return order, TreeType(d, tuple(tau))


def tree_from_unordered(lines) -> TreeCurve:
    order, ttype = type_of(lines)
    return TreeCurve.from_lines([lines[i] for i in order], ttype)


# --------------------------------------------------------------------------
# random generation


@dataclass
class TreeConstraints:
    """Conditions imposed on a generated tree.

    ``transversal_to``: every line meets W in a squarefree divisor and every
    node is off W.  ``proper_to``: only the weaker requirement that no line
    lies in W and no node is on W (for non-reduced W such as ``ell**k``).
    ``split_rationally``: with ``transversal_to``, every line section also
    splits into F_p-rational points (enforced by resampling).
    ``through_rational_points_of``: every line passes through a fresh
    rational point of the quadric, so all its intersections with it are
    rational.  ``node_points``: points that must be nodes of the tree.
    """

    transversal_to: Hypersurface | None = None
    proper_to: Hypersurface | None = None
    split_rationally: bool = False
    through_rational_points_of: QuadricSpec | None = None
    node_points: list[ProjPoint] = field(default_factory=list)


def _max_matching(ttype: TreeType) -> list[tuple[int, int]]:
    """Maximum matching of the dual tree (greedy from the leaves)."""
    used: set[int] = set()
    out = []
    for i in range(ttype.d, 1, -1):
        j = ttype.parent(i)
        if i not in used and j not in used:
            used.update((i, j))
            out.append((i, j))
    return sorted(out)


def prescribed_node_capacity(ttype: TreeType) -> int:
    """How many nodes can be prescribed independently (no line through two)."""
    return len(_max_matching(ttype))


def _line_ok(L: Line, cons: TreeConstraints) -> bool:
    if cons.transversal_to is not None:
        sec = line_section(L, cons.transversal_to, want_points=cons.split_rationally)
        if sec.contained or not sec.transversal:
            return False
        if cons.split_rationally and sec.rational_points.rational_degree != cons.transversal_to.degree:
            return False
    if cons.proper_to is not None:
        if line_section(L, cons.proper_to).contained:
            return False
    return True


def _point_ok(pt: ProjPoint, cons: TreeConstraints) -> bool:
    for W in (cons.transversal_to, cons.proper_to):
        if W is not None and W.contains(pt):
            return False
    return True


def random_tree(ttype: TreeType, n: int, rng: np.random.Generator, p: int,
                constraints: TreeConstraints | None = None,
                budget: int = 100, line_budget: int = 200) -> TreeCurve:
    """A random tree of the given type, validated, honoring ``constraints``.

    L_1 is spanned by two fresh points; L_i by a point of L_tau(i) and a
    fresh point.  Each line is resampled until it satisfies the per-line
    constraints, and the whole tree is redrawn if final validation fails.
    """
    cons = constraints or TreeConstraints()
    Q = cons.through_rational_points_of
    prescribed: dict[tuple[int, int], ProjPoint] = {}
    if cons.node_points:
        matching = _max_matching(ttype)
        if len(cons.node_points) > len(matching):
            raise Infeasible(f"{len(cons.node_points)} prescribed nodes but a type "
                             f"{ttype.label()} tree admits at most {len(matching)}")
        prescribed = dict(zip(matching, cons.node_points))
    child_point = {j: pt for (i, j), pt in prescribed.items()}

    def fresh():
        return rational_point_on_quadric(Q, rng) if Q is not None else random_point(n, rng, p)

    for _ in range(budget):
        lines: list[Line] = []
        nodes: list[ProjPoint] = []
        used_nodes: set[ProjPoint] = set()
        ok = True
        for i in range(1, ttype.d + 1):
            for _ in range(line_budget):
                if i == 1:
                    node = None
                    first = child_point.get(1) or fresh()
                else:
                    j = ttype.parent(i)
                    node = prescribed.get((i, j)) or random_point_on_line(lines[j - 1], rng)
                    if node in used_nodes or not _point_ok(node, cons):
                        continue
                    first = node
                second = child_point.get(i) if i != 1 else fresh()
                if second is None:
                    second = fresh()
                try:
                    L = Line.through(tuple(first), tuple(second), p)
                except ValueError:
                    continue
                if L in lines or not _line_ok(L, cons):
                    continue
                break
            else:
                ok = False
                break
            lines.append(L)
            if node is not None:
                nodes.append(node)
                used_nodes.add(node)
        if not ok:
            continue
        T = TreeCurve(tuple(lines), tuple(nodes), ttype)
        try:
            validate_tree(T)
        except NotATree:
            continue
        return T
    raise RetryExhausted(f"no valid type {ttype.label()} tree in {budget} attempts")


def random_forest(types, n: int, rng: np.random.Generator, p: int,
                  constraints: TreeConstraints | None = None, budget: int = 100) -> Forest:
    for _ in range(budget):
        trees = tuple(random_tree(t, n, rng, p, constraints) for t in types)
        try:
            return Forest(trees)
        except NotATree:
            continue
    raise RetryExhausted("no disjoint forest found")


def random_rational_curve(n: int, d: int, rng: np.random.Generator, p: int,
                          budget: int = 100) -> RationalCurveParam:
    for _ in range(budget):
        coords = tuple(BinaryForm(tuple(int(x) for x in rng.integers(0, p, size=d + 1)), p)
                       for _ in range(n + 1))
        if base_point_free(coords):
            return RationalCurveParam(coords)
    raise BasePoint("could not draw a base-point-free parametrization")


def sub_bamboo(T: TreeCurve, d: int) -> TreeCurve:
    """The first d lines of an admissibly ordered tree (again a tree)."""
    return TreeCurve(T.lines[:d], T.nodes[:d - 1], TreeType(d, T.type.tau[:d - 1]))
