"""Parametrized tropical curves in a tropical torus.

A curve is a metric graph mapped into R^2 / Lambda with integer edge slopes,
balanced at every vertex.  Marked points ride on contracted legs.  Positions
are derived data: edges without a winding form a spanning tree rooted at the
base vertex, and each remaining edge carries the integer winding of its
fundamental cycle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .core import IMat2, det2, is_integral, m_T, m_inv, m_int
from .errors import (
    FlatVertexError,
    InvalidCurveError,
    NonIntegralDegreeError,
    NotDivisibleError,
    NotTrivalentError,
    WallDegeneracyError,
)
from .surface import TropicalTorus, Vec2

IVec = tuple[int, int]


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    length: Fraction


@dataclass(frozen=True)
class Leg:
    vertex: int
    marker: int


@dataclass(frozen=True)
class AbstractCurve:
    """Metric graph with legs; genus is the first Betti number."""

    num_vertices: int
    edges: tuple[Edge, ...]
    legs: tuple[Leg, ...]

    @property
    def genus(self) -> int:
        return len(self.edges) - self.num_vertices + 1


@dataclass(frozen=True)
class ParamCurve:
    """Curve plus map data: slopes per oriented edge, windings off the tree."""

    curve: AbstractCurve
    torus: TropicalTorus
    base_vertex: int
    base_position: Vec2
    slopes: tuple[IVec, ...]
    windings: tuple[IVec | None, ...]

    @property
    def genus(self) -> int:
        return self.curve.genus

    def tree_edges(self) -> list[int]:
        return [i for i, w in enumerate(self.windings) if w is None]

    def nontree_edges(self) -> list[int]:
        return [i for i, w in enumerate(self.windings) if w is not None]


@dataclass(frozen=True)
class Multiplicity:
    """gcd factor, per-vertex determinant factors and their product."""

    gcd: int
    vertex_factors: tuple[tuple[int, int], ...]
    total: int


def _tree_positions(pc: ParamCurve) -> dict[int, Vec2] | None:
    """Vertex positions from the base through the tree; None if not a tree."""
    c = pc.curve
    tree = pc.tree_edges()
    if len(tree) != c.num_vertices - 1:
        return None
    adj: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(c.num_vertices)}
    for i in tree:
        e = c.edges[i]
        adj[e.u].append((e.v, i, +1))
        adj[e.v].append((e.u, i, -1))
    pos = {pc.base_vertex: pc.base_position}
    stack = [pc.base_vertex]
    while stack:
        v = stack.pop()
        for w, i, sign in adj[v]:
            if w in pos:
                continue
            n = pc.slopes[i]
            l = c.edges[i].length
            p = pos[v]
            pos[w] = (p[0] + sign * l * n[0], p[1] + sign * l * n[1])
            stack.append(w)
    if len(pos) != c.num_vertices:
        return None
    return pos


def positions(pc: ParamCurve) -> dict[int, Vec2]:
    pos = _tree_positions(pc)
    if pos is None:
        raise InvalidCurveError("windings do not leave a spanning tree")
    return pos


def validate(pc: ParamCurve) -> list[str]:
    """Empty list iff all curve invariants hold; otherwise named violations."""
    diags: list[str] = []
    c = pc.curve
    nv = c.num_vertices
    if nv < 1:
        return ["empty vertex set"]
    for i, e in enumerate(c.edges):
        if not (0 <= e.u < nv and 0 <= e.v < nv):
            diags.append(f"edge {i} has endpoint out of range")
        if e.length <= 0:
            diags.append(f"edge {i} has non-positive length {e.length}")
    for leg in c.legs:
        if not 0 <= leg.vertex < nv:
            diags.append(f"leg {leg.marker} attached to missing vertex")
    if len({leg.marker for leg in c.legs}) != len(c.legs):
        diags.append("duplicate leg markers")
    if len(pc.slopes) != len(c.edges) or len(pc.windings) != len(c.edges):
        return diags + ["slope/winding tables do not match edge list"]
    for i, n in enumerate(pc.slopes):
        if n == (0, 0):
            diags.append(f"edge {i} has zero slope")

    # connectivity of the whole graph
    adj: dict[int, set[int]] = {v: set() for v in range(nv)}
    for e in c.edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != nv:
        diags.append("graph is not connected")

    # balancing: legs are contracted and contribute nothing
    for v in range(nv):
        total = [0, 0]
        for i, e in enumerate(c.edges):
            n = pc.slopes[i]
            if e.u == v:
                total[0] += n[0]
                total[1] += n[1]
            if e.v == v:
                total[0] -= n[0]
                total[1] -= n[1]
        if total != [0, 0]:
            diags.append(f"unbalanced at vertex {v}: residue {tuple(total)}")

    if diags:
        return diags

    pos = _tree_positions(pc)
    if pos is None:
        return ["windingless edges do not form a spanning tree"]
    for i in pc.nontree_edges():
        e = c.edges[i]
        n = pc.slopes[i]
        lam = pc.windings[i]
        lat = pc.torus.lattice_point(lam)
        got = (
            e.length * n[0] - (pos[e.v][0] - pos[e.u][0]),
            e.length * n[1] - (pos[e.v][1] - pos[e.u][1]),
        )
        if got != lat:
            diags.append(
                f"cycle of edge {i} closes to {got}, winding says {lat}"
            )
    return diags


def _require_valid(pc: ParamCurve) -> None:
    diags = validate(pc)
    if diags:
        raise InvalidCurveError("; ".join(diags))


def weight(n: IVec) -> int:
    """Lattice length of an integer vector."""
    return math.gcd(abs(n[0]), abs(n[1]))


def curve_gcd(pc: ParamCurve) -> int:
    """gcd of the lattice lengths of all edge slopes."""
    _require_valid(pc)
    return math.gcd(*(weight(n) for n in pc.slopes))


def degree(pc: ParamCurve) -> IMat2:
    """Degree matrix from the length-weighted second moment of the slopes.

    B = (sum_e l_e n_e n_e^T) S^{-T}; the entries must come out integral.
    """
    _require_valid(pc)
    m = [[Fraction(0)] * 2 for _ in range(2)]
    for e, n in zip(pc.curve.edges, pc.slopes):
        for i in range(2):
            for j in range(2):
                m[i][j] += e.length * n[i] * n[j]
    s_inv_t = m_T(m_inv(pc.torus.S))
    b = tuple(
        tuple(sum(m[i][k] * s_inv_t[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )
    if not is_integral(b):
        raise NonIntegralDegreeError(f"degree {b} is not integral")
    return m_int(b)


_WALL_SHIFTS = (Fraction(0), Fraction(1, 2 * 10007 + 3), Fraction(1, 3 * 10007 + 4))


def degree_by_crossing(pc: ParamCurve) -> IMat2:
    """Degree read off from signed wall crossings of the fundamental domain.

    Works in lattice coordinates, counting how often each edge crosses the
    integer translates of the domain walls; retries a few wall shifts when an
    endpoint lies exactly on a wall.
    """
    _require_valid(pc)
    pos = positions(pc)
    t = pc.torus
    segments = []
    for e, n in zip(pc.curve.edges, pc.slopes):
        start = t.lattice_coords(pos[e.u])
        disp = t.lattice_coords((e.length * n[0], e.length * n[1]))
        end = (start[0] + disp[0], start[1] + disp[1])
        segments.append((start, end, n))
    for eps in _WALL_SHIFTS:
        degenerate = False
        cols = [[0, 0], [0, 0]]
        for start, end, n in segments:
            for j in range(2):
                a, b = start[j] - eps, end[j] - eps
                if a.denominator == 1 or b.denominator == 1:
                    degenerate = True
                    break
                net = math.floor(b) - math.floor(a)
                cols[j][0] += n[0] * net
                cols[j][1] += n[1] * net
            if degenerate:
                break
        if not degenerate:
            return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
    raise WallDegeneracyError("curve meets every shifted wall family degenerately")


def _outgoing_slopes(pc: ParamCurve, v: int) -> list[IVec]:
    out = []
    for e, n in zip(pc.curve.edges, pc.slopes):
        if e.u == v:
            out.append(n)
        if e.v == v:
            out.append((-n[0], -n[1]))
    return out


def mikhalkin_multiplicity(pc: ParamCurve) -> Multiplicity:
    """gcd times the product of vertex determinants at unmarked vertices."""
    _require_valid(pc)
    c = pc.curve
    legs_at: dict[int, int] = {}
    for leg in c.legs:
        legs_at[leg.vertex] = legs_at.get(leg.vertex, 0) + 1
    factors = []
    total = curve_gcd(pc)
    for v in range(c.num_vertices):
        out = _outgoing_slopes(pc, v)
        marked = legs_at.get(v, 0)
        if len(out) + marked != 3:
            raise NotTrivalentError(f"vertex {v} has valence {len(out) + marked}")
        if marked:
            continue
        m_v = abs(det2((out[0], out[1])))
        if m_v == 0:
            raise FlatVertexError(f"flat unmarked vertex {v}")
        factors.append((v, m_v))
        total *= m_v
    return Multiplicity(
        gcd=curve_gcd(pc), vertex_factors=tuple(factors), total=total
    )


def dilate(pc: ParamCurve, k: int) -> ParamCurve:
    """Multiply edge weights by k keeping the image pointwise fixed.

    Slopes scale by k and lengths by 1/k, so every vertex position, every
    marked point and every winding is unchanged while the degree and the
    gcd are multiplied by k.
    """
    if k < 1:
        raise ValueError("dilation factor must be positive")
    if k == 1:
        return pc
    edges = tuple(replace(e, length=e.length / k) for e in pc.curve.edges)
    slopes = tuple((k * n[0], k * n[1]) for n in pc.slopes)
    return replace(
        pc,
        curve=replace(pc.curve, edges=edges),
        slopes=slopes,
    )


def contract(pc: ParamCurve, k: int) -> ParamCurve:
    """Inverse of dilate; requires k to divide every slope."""
    if k < 1:
        raise ValueError("contraction factor must be positive")
    if k == 1:
        return pc
    for n in pc.slopes:
        if n[0] % k or n[1] % k:
            raise NotDivisibleError(f"{k} does not divide slope {n}")
    edges = tuple(replace(e, length=e.length * k) for e in pc.curve.edges)
    slopes = tuple((n[0] // k, n[1] // k) for n in pc.slopes)
    return replace(
        pc,
        curve=replace(pc.curve, edges=edges),
        slopes=slopes,
    )


def _reduced_lattice_coords(pc: ParamCurve, pos: dict[int, Vec2]) -> dict[int, Vec2]:
    out = {}
    for v, p in pos.items():
        y = pc.torus.lattice_coords(p)
        out[v] = (y[0] - math.floor(y[0]), y[1] - math.floor(y[1]))
    return out


def canonical_key(pc: ParamCurve):
    """Hashable key identifying the curve modulo reparametrization.

    Built from reduced vertex positions, leg markers, slopes and lengths; it
    does not depend on vertex numbering, edge order, edge orientation or the
    choice of spanning tree.
    """
    pos = _reduced_lattice_coords(pc, positions(pc))
    c = pc.curve
    legs_at: dict[int, list[int]] = {v: [] for v in range(c.num_vertices)}
    for leg in c.legs:
        legs_at[leg.vertex].append(leg.marker)
    records = {}
    for v in range(c.num_vertices):
        y = pos[v]
        records[v] = (
            y[0].numerator, y[0].denominator,
            y[1].numerator, y[1].denominator,
            tuple(sorted(legs_at[v])),
        )
    order = sorted(range(c.num_vertices), key=lambda v: records[v])
    groups = []
    for _, grp in itertools.groupby(order, key=lambda v: records[v]):
        groups.append(list(grp))

    def key_for(perm: dict[int, int]):
        vrec = tuple(records[v] for v in sorted(perm, key=perm.get))
        erec = []
        for e, n in zip(c.edges, pc.slopes):
            a, b = perm[e.u], perm[e.v]
            fwd = (a, b, n[0], n[1])
            rev = (b, a, -n[0], -n[1])
            best = fwd if fwd <= rev else rev
            erec.append(best + (e.length.numerator, e.length.denominator))
        return (vrec, tuple(sorted(erec)))

    best = None
    for arrangement in itertools.product(*(itertools.permutations(g) for g in groups)):
        perm = {}
        idx = 0
        for g in arrangement:
            for v in g:
                perm[v] = idx
                idx += 1
        k = key_for(perm)
        if best is None or k < best:
            best = k
    return best
