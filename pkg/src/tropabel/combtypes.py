"""Trivalent combinatorial types of marked tropical curves.

A genus-g type with g labeled legs has 3g-2 vertices and 4g-3 edges once
every vertex is trivalent counting legs; leg i sits at vertex i.  Types are
generated as connected multigraphs with the forced degree sequence and
deduplicated up to isomorphisms preserving the leg labels.

Each type precomputes the data the enumerator consumes: a spanning tree,
fundamental cycle coefficients, tree paths from the base leg, and the flow
coefficients expressing every edge slope through the non-tree slopes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import UnsupportedGenusError

EdgePair = tuple[int, int]


def _multisets(degrees: tuple[int, ...]):
    """All edge multisets (loops allowed) realizing the degree sequence."""
    n = len(degrees)

    def rec(rem: list[int], edges: list[EdgePair], min_v: int):
        u = next((i for i in range(n) if rem[i] > 0), None)
        if u is None:
            yield tuple(edges)
            return
        for v in range(max(u, min_v), n):
            if v == u:
                if rem[u] < 2:
                    continue
                rem[u] -= 2
            else:
                if rem[v] < 1:
                    continue
                rem[u] -= 1
                rem[v] -= 1
            edges.append((u, v))
            nxt = next((i for i in range(n) if rem[i] > 0), None)
            yield from rec(rem, edges, v if nxt == u else 0)
            edges.pop()
            if v == u:
                rem[u] += 2
            else:
                rem[u] += 1
                rem[v] += 1

    yield from rec(list(degrees), [], 0)


def _connected(nv: int, edges: tuple[EdgePair, ...]) -> bool:
    if nv == 0:
        return False
    adj = {v: set() for v in range(nv)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == nv


def _canonical(nv: int, edges: tuple[EdgePair, ...], fixed: int):
    """Minimal relabeling over permutations fixing vertices < fixed."""
    movable = list(range(fixed, nv))
    best = None
    for perm in itertools.permutations(movable):
        mapping = list(range(fixed)) + list(perm)
        relabeled = tuple(
            sorted(
                (min(mapping[u], mapping[v]), max(mapping[u], mapping[v]))
                for u, v in edges
            )
        )
        if best is None or relabeled < best:
            best = relabeled
    return best


def _generate(nv: int, degrees: tuple[int, ...], fixed: int):
    seen = set()
    out = []
    for edges in _multisets(degrees):
        if not _connected(nv, edges):
            continue
        canon = _canonical(nv, edges, fixed)
        if canon in seen:
            continue
        seen.add(canon)
        out.append(canon)
    out.sort()
    return out


@dataclass(frozen=True)
class CombType:
    """One marked combinatorial type with its precomputed solver data."""

    num_vertices: int
    edges: tuple[EdgePair, ...]
    num_legs: int
    tree: tuple[int, ...]
    nontree: tuple[int, ...]
    # per edge, the coefficient of each non-tree slope vector in its slope
    slope_rows: tuple[tuple[int, ...], ...]
    # per non-tree edge, the signed edges of its fundamental cycle
    cycle_rows: tuple[tuple[tuple[int, int], ...], ...]
    # per leg 1..g-1, the signed tree path from vertex 0 to the leg vertex
    leg_rows: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def genus(self) -> int:
        return len(self.edges) - self.num_vertices + 1


def _tree_paths(nv: int, edges: tuple[EdgePair, ...]):
    """BFS spanning tree from vertex 0; returns (tree set, path table).

    path[v] is the signed edge list from 0 to v, sign +1 when the edge is
    traversed in its stored orientation.
    """
    adj: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(nv)}
    for i, (u, v) in enumerate(edges):
        adj[u].append((v, i, +1))
        adj[v].append((u, i, -1))
    path: dict[int, tuple[tuple[int, int], ...]] = {0: ()}
    tree: list[int] = []
    queue = [0]
    while queue:
        x = queue.pop(0)
        for y, i, sign in sorted(adj[x], key=lambda t: t[1]):
            if y in path:
                continue
            path[y] = path[x] + ((i, sign),)
            tree.append(i)
            queue.append(y)
    return sorted(tree), path


def _combine(*signed_lists):
    coeffs: dict[int, int] = {}
    for lst, factor in signed_lists:
        for e, s in lst:
            coeffs[e] = coeffs.get(e, 0) + factor * s
    return tuple(sorted((e, c) for e, c in coeffs.items() if c != 0))


def _build_type(nv: int, edges: tuple[EdgePair, ...], num_legs: int) -> CombType:
    tree, path = _tree_paths(nv, edges)
    tree_set = set(tree)
    nontree = [i for i in range(len(edges)) if i not in tree_set]
    cycle_rows = []
    for f in nontree:
        u, v = edges[f]
        cycle_rows.append(_combine(((((f, 1),), 1)), (path[u], 1), (path[v], -1)))
    slope_rows = []
    for e in range(len(edges)):
        row = []
        for k, f in enumerate(nontree):
            coeff = dict(cycle_rows[k]).get(e, 0)
            row.append(coeff)
        slope_rows.append(tuple(row))
    leg_rows = [path[i] for i in range(1, num_legs)]
    return CombType(
        num_vertices=nv,
        edges=edges,
        num_legs=num_legs,
        tree=tuple(tree),
        nontree=tuple(nontree),
        slope_rows=tuple(slope_rows),
        cycle_rows=tuple(cycle_rows),
        leg_rows=tuple(leg_rows),
    )


def trivalent_base_graphs(genus: int) -> list[tuple[EdgePair, ...]]:
    """Connected trivalent multigraphs of the given genus, no legs."""
    if genus < 2:
        raise UnsupportedGenusError("base graphs need genus >= 2")
    nv = 2 * genus - 2
    degrees = tuple([3] * nv)
    return _generate(nv, degrees, fixed=0)


def generate_comb_types(genus: int) -> tuple[CombType, ...]:
    """All marked trivalent types of the given genus with genus legs."""
    if genus not in (1, 2, 3):
        raise UnsupportedGenusError(f"genus {genus} is not supported")
    nv = 3 * genus - 2
    degrees = tuple([2] * genus + [3] * (nv - genus))
    graphs = _generate(nv, degrees, fixed=genus)
    return tuple(_build_type(nv, edges, genus) for edges in graphs)
