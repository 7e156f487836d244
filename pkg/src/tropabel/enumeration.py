"""Exhaustive search for genus-g curves of fixed degree through g points.

Balanced slope assignments are parametrized by free slope vectors on the
non-tree edges of each combinatorial type (balancing is the flow condition,
so the cycle space carries exactly the free choices).  The degree pins the
windings through the identity B = sum_f n_f lambda_f^T over non-tree edges,
which leaves an exact rational linear system for the base point and the edge
lengths.  Solutions are kept when unique with strictly positive lengths,
deduplicated by the canonical curve key.

No a priori bound on slopes or windings is available, so completeness within
the search box is certified empirically: a result is bounds-stable when
doubling both bounds reproduces exactly the same curve set.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

import multiprocessing

from .combtypes import CombType, generate_comb_types
from .core import IMat2, comatrix, det2, solve_affine, solve_linear
from .curve import (
    AbstractCurve,
    Edge,
    Leg,
    Multiplicity,
    ParamCurve,
    canonical_key,
    degree,
    degree_by_crossing,
    dilate,
    mikhalkin_multiplicity,
    validate,
)
from .errors import (
    DegenerateDegreeError,
    FlatVertexError,
    NonGenericConfigError,
    NoTropicalPolarizationError,
)
from .surface import PointConfig, TropicalTorus, check_tropical_polarization, reduce_point


@dataclass(frozen=True)
class SearchBounds:
    slope_bound: int
    winding_bound: int

    def __post_init__(self):
        if self.slope_bound < 1 or self.winding_bound < 1:
            raise ValueError("bounds must be positive")

    def doubled(self) -> "SearchBounds":
        return SearchBounds(2 * self.slope_bound, 2 * self.winding_bound)


def default_bounds(B: IMat2) -> SearchBounds:
    sb = max(abs(B[i][j]) for i in range(2) for j in range(2)) + 1
    return SearchBounds(slope_bound=sb, winding_bound=2)


def divisibility(B: IMat2) -> int:
    return math.gcd(*(abs(B[i][j]) for i in range(2) for j in range(2)))


@dataclass(frozen=True)
class EnumerationResult:
    torus: TropicalTorus
    B: IMat2
    genus: int
    config: PointConfig
    bounds: SearchBounds
    curves: tuple[tuple[ParamCurve, Multiplicity], ...]
    keys: tuple
    by_gcd: dict[int, tuple[int, ...]]
    saturation: dict[str, int]
    bounds_stable: bool | None = None

    @property
    def saturated(self) -> bool:
        return any(self.saturation.values())


def _solve_windings(ms, B, wb, pivot, saturation):
    """Integer winding vectors with sum_k m_k lambda_k^T = B, per column."""
    a, b = pivot
    det = ms[a][0] * ms[b][1] - ms[a][1] * ms[b][0]
    free = [k for k in range(len(ms)) if k not in (a, b)]
    per_column = []
    for j in range(2):
        target = (B[0][j], B[1][j])
        solutions = []
        for values in itertools.product(range(-wb, wb + 1), repeat=len(free)):
            r0 = target[0] - sum(ms[k][0] * x for k, x in zip(free, values))
            r1 = target[1] - sum(ms[k][1] * x for k, x in zip(free, values))
            num_a = r0 * ms[b][1] - r1 * ms[b][0]
            num_b = ms[a][0] * r1 - ms[a][1] * r0
            if num_a % det or num_b % det:
                continue
            la, lb = num_a // det, num_b // det
            if abs(la) > wb or abs(lb) > wb:
                saturation["winding"] += 1
                continue
            col = [0] * len(ms)
            col[a], col[b] = la, lb
            for k, x in zip(free, values):
                col[k] = x
            solutions.append(tuple(col))
        per_column.append(solutions)
    for c0 in per_column[0]:
        for c1 in per_column[1]:
            yield tuple((c0[k], c1[k]) for k in range(len(ms)))


def _search_unit(payload):
    """Search one (type, first slope coordinate) slice of the space."""
    (ct, s_mat, b_mat, points, sb, wb, first_x) = payload
    torus = TropicalTorus(S=s_mat)
    g = ct.genus
    n_free = len(ct.nontree)
    n_edges = len(ct.edges)
    saturation = {"slope": 0, "winding": 0}
    found: list[tuple] = []

    s_cols = [torus.lattice_point((1, 0)), torus.lattice_point((0, 1))]

    def lattice_vec(v):
        return (
            s_cols[0][0] * v[0] + s_cols[1][0] * v[1],
            s_cols[0][1] * v[0] + s_cols[1][1] * v[1],
        )

    coords = list(range(-sb, sb + 1))
    rest_dims = 2 * n_free - 1
    for rest in itertools.product(coords, repeat=rest_dims):
        flat = (first_x,) + rest
        ms = [(flat[2 * k], flat[2 * k + 1]) for k in range(n_free)]
        if any(m == (0, 0) for m in ms):
            continue
        pivot = None
        for a in range(n_free):
            for b in range(a + 1, n_free):
                if ms[a][0] * ms[b][1] - ms[a][1] * ms[b][0] != 0:
                    pivot = (a, b)
                    break
            if pivot:
                break
        if pivot is None:
            continue
        slopes = []
        ok = True
        for e in range(n_edges):
            row = ct.slope_rows[e]
            nx = sum(row[k] * ms[k][0] for k in range(n_free))
            ny = sum(row[k] * ms[k][1] for k in range(n_free))
            if nx == 0 and ny == 0:
                ok = False
                break
            if abs(nx) > sb or abs(ny) > sb:
                saturation["slope"] += 1
                ok = False
                break
            slopes.append((nx, ny))
        if not ok:
            continue
        all_lambdas = list(_solve_windings(ms, b_mat, wb, pivot, saturation))
        if not all_lambdas:
            continue

        # joint system over (lengths, leg shifts); matrix depends on the
        # slopes only, the windings enter through the right-hand side
        n_mu = 2 * (g - 1)
        rows = []
        for k in range(n_free):
            for comp in range(2):
                row = [Fraction(0)] * (n_edges + n_mu)
                for e, coeff in ct.cycle_rows[k]:
                    row[e] = Fraction(coeff * slopes[e][comp])
                rows.append(row)
        for i, legpath in enumerate(ct.leg_rows):
            for comp in range(2):
                row = [Fraction(0)] * (n_edges + n_mu)
                for e, coeff in legpath:
                    row[e] += Fraction(coeff * slopes[e][comp])
                row[n_edges + 2 * i] = -s_cols[0][comp]
                row[n_edges + 2 * i + 1] = -s_cols[1][comp]
                rows.append(row)
        leg_rhs = []
        for i in range(1, g):
            leg_rhs.append(points[i][0] - points[0][0])
            leg_rhs.append(points[i][1] - points[0][1])

        for lambdas in all_lambdas:
            rhs = []
            for k in range(n_free):
                rhs.extend(lattice_vec(lambdas[k]))
            rhs.extend(leg_rhs)
            consistent, part, basis = solve_affine(rows, rhs)
            if not consistent:
                continue
            for lengths in _length_solutions(
                part, basis, n_edges, n_mu, wb, saturation, rows, rhs
            ):
                windings: list = [None] * n_edges
                for k, f in enumerate(ct.nontree):
                    windings[f] = lambdas[k]
                pc = ParamCurve(
                    curve=AbstractCurve(
                        num_vertices=ct.num_vertices,
                        edges=tuple(
                            Edge(u, v, lengths[e])
                            for e, (u, v) in enumerate(ct.edges)
                        ),
                        legs=tuple(Leg(vertex=i, marker=i) for i in range(g)),
                    ),
                    torus=torus,
                    base_vertex=0,
                    base_position=points[0],
                    slopes=tuple(slopes),
                    windings=tuple(windings),
                )
                try:
                    mult = mikhalkin_multiplicity(pc)
                except FlatVertexError as exc:
                    raise NonGenericConfigError(
                        f"flat vertex in a solution: {exc}"
                    ) from exc
                found.append((canonical_key(pc), pc, mult))
    return found, saturation


def _pivot_rows(mu_dirs, n_mu, nu):
    """Indices of nu independent rows of the shift part, or None if rank < nu."""
    work = [list(mu_dirs[j]) for j in range(n_mu)]
    chosen = []
    for col in range(nu):
        piv = next(
            (j for j in range(n_mu) if j not in chosen and work[j][col] != 0),
            None,
        )
        if piv is None:
            return None
        chosen.append(piv)
        for j in range(n_mu):
            if j != piv and work[j][col] != 0:
                f = work[j][col] / work[piv][col]
                work[j] = [a - f * b for a, b in zip(work[j], work[piv])]
    return chosen


def _length_solutions(part, basis, n_edges, n_mu, wb, saturation, rows, rhs):
    """Positive length vectors with integral in-box leg shifts.

    The affine solution space of the joint system is walked through the
    integer values of independent shift coordinates; a solution just outside
    the box counts as a saturation event.  A shift the system cannot pin
    down is a genericity failure.
    """
    nu = len(basis)
    if nu == 0:
        mu = part[n_edges:]
        if any(x.denominator != 1 for x in mu):
            return
        lengths = part[:n_edges]
        if any(l <= 0 for l in lengths):
            return
        if all(abs(x) <= wb for x in mu):
            yield lengths
        elif all(abs(x) <= wb + 1 for x in mu):
            saturation["winding"] += 1
        return

    mu_dirs = [
        tuple(basis[v][n_edges + j] for v in range(nu)) for j in range(n_mu)
    ]
    pivots = _pivot_rows(mu_dirs, n_mu, nu)
    if pivots is None:
        # some null direction moves lengths with every shift fixed, so any
        # admissible shift makes the length system non-unique
        if _integral_shift_in_box(part[n_edges:], mu_dirs, n_mu, nu, wb):
            raise NonGenericConfigError(
                "length system solvable but not unique; configuration is degenerate"
            )
        return
    others = [j for j in range(n_mu) if j not in pivots]

    # invert the pivot block so every quantity becomes affine in the
    # integer values k of the pivot shift coordinates
    minv = []
    for i in range(nu):
        unit = [Fraction(int(r == i)) for r in range(nu)]
        status, col = solve_linear(
            [[mu_dirs[j][v] for v in range(nu)] for j in pivots], unit
        )
        assert status == "unique"
        minv.append(col)  # column i of the inverse

    def affine(coeff_by_v, const):
        # returns (constant, per-k coefficients) for const + coeff . t(k)
        row = [
            sum(coeff_by_v[v] * minv[i][v] for v in range(nu))
            for i in range(nu)
        ]
        c0 = const - sum(row[i] * part[n_edges + pivots[i]] for i in range(nu))
        return c0, row

    len_maps = [
        affine([basis[v][e] for v in range(nu)], part[e])
        for e in range(n_edges)
    ]
    other_maps = [
        affine([mu_dirs[j][v] for v in range(nu)], part[n_edges + j])
        for j in others
    ]

    for k_vals in itertools.product(range(-wb - 1, wb + 2), repeat=nu):
        lengths = []
        ok = True
        for c0, row in len_maps:
            l = c0 + sum(row[i] * k_vals[i] for i in range(nu))
            if l <= 0:
                ok = False
                break
            lengths.append(l)
        if not ok:
            continue
        mu_extra = []
        for c0, row in other_maps:
            val = c0 + sum(row[i] * k_vals[i] for i in range(nu))
            if val.denominator != 1:
                ok = False
                break
            mu_extra.append(val)
        if not ok:
            continue
        in_box = all(abs(k) <= wb for k in k_vals) and all(
            abs(x) <= wb for x in mu_extra
        )
        if in_box:
            yield tuple(lengths)
        elif all(abs(x) <= wb + 1 for x in mu_extra):
            saturation["winding"] += 1


def _integral_shift_in_box(mu0, mu_dirs, n_mu, nu, wb):
    """Whether the affine image of the shift map meets the integer box.

    Used only when the shift map is rank-deficient; walks the image through
    the integer values of independent image coordinates.
    """
    cols = [tuple(mu_dirs[j][v] for j in range(n_mu)) for v in range(nu)]
    # column-space basis by elimination
    basis_cols = []
    work = [list(c) for c in cols]
    for vec in work:
        v = list(vec)
        for b in basis_cols:
            lead = next(j for j in range(n_mu) if b[j] != 0)
            if v[lead] != 0:
                f = v[lead] / b[lead]
                v = [x - f * y for x, y in zip(v, b)]
        if any(x != 0 for x in v):
            basis_cols.append(v)
    r = len(basis_cols)
    if r == 0:
        return all(x.denominator == 1 and abs(x) <= wb for x in mu0)
    dirs = [tuple(basis_cols[i][j] for i in range(r)) for j in range(n_mu)]
    pivots = _pivot_rows(dirs, n_mu, r)
    assert pivots is not None
    minv = []
    for i in range(r):
        unit = [Fraction(int(k == i)) for k in range(r)]
        status, col = solve_linear(
            [[dirs[j][v] for v in range(r)] for j in pivots], unit
        )
        assert status == "unique"
        minv.append(col)
    others = [j for j in range(n_mu) if j not in pivots]
    for k_vals in itertools.product(range(-wb, wb + 1), repeat=r):
        diffs = [k_vals[i] - mu0[pivots[i]] for i in range(r)]
        t = [
            sum(minv[i][v] * diffs[i] for i in range(r)) for v in range(r)
        ]
        ok = True
        for j in others:
            val = mu0[j] + sum(dirs[j][v] * t[v] for v in range(r))
            if val.denominator != 1 or abs(val) > wb:
                ok = False
                break
        if ok:
            return True
    return False


def _resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        env = os.environ.get("TROPABEL_JOBS")
        if env:
            jobs = int(env)
        else:
            jobs = os.cpu_count() or 1
    return max(1, jobs)


def enumerate_curves(
    t: TropicalTorus,
    B: IMat2,
    g: int,
    cfg: PointConfig,
    bounds: SearchBounds | None = None,
    jobs: int | None = None,
) -> EnumerationResult:
    """All genus-g degree-B curves through the configuration, within bounds."""
    if det2(B) <= 0:
        raise DegenerateDegreeError(f"degree {B} must have positive determinant")
    if not check_tropical_polarization(t, comatrix(B)):
        raise NoTropicalPolarizationError(
            "comatrix of the degree is not a polarization of this torus"
        )
    if len(cfg.points) != g:
        raise ValueError(f"need {g} points, got {len(cfg.points)}")
    if bounds is None:
        bounds = default_bounds(B)
    jobs = _resolve_jobs(jobs)
    types = generate_comb_types(g)
    # a type with an everywhere-zero slope row admits no immersed curve
    live_types = [
        ct for ct in types if all(any(row) for row in ct.slope_rows)
    ]
    points = tuple(p.coords for p in cfg.points)
    units = [
        (ct, t.S, B, points, bounds.slope_bound, bounds.winding_bound, x)
        for ct in live_types
        for x in range(-bounds.slope_bound, bounds.slope_bound + 1)
    ]
    if jobs == 1:
        outputs = [_search_unit(u) for u in units]
    else:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
            outputs = list(pool.map(_search_unit, units, chunksize=4))

    merged: dict = {}
    saturation = {"slope": 0, "winding": 0}
    for found, sat in outputs:
        for key, pc, mult in found:
            if key in merged:
                assert merged[key][1].total == mult.total
            else:
                merged[key] = (pc, mult)
        for k, v in sat.items():
            saturation[k] += v

    keys = tuple(sorted(merged))
    curves = tuple(merged[k] for k in keys)
    by_gcd: dict[int, list[int]] = {}
    for idx, (pc, mult) in enumerate(curves):
        by_gcd.setdefault(mult.gcd, []).append(idx)

    # re-validate everything that leaves the search
    for idx, (pc, mult) in enumerate(curves):
        diags = validate(pc)
        assert not diags, diags
        assert degree(pc) == B
        assert degree_by_crossing(pc) == B
        for i, p in enumerate(cfg.points):
            vert = pc.curve.legs[i].vertex
            from .curve import positions as _positions

            got = reduce_point(t, _positions(pc)[vert])
            assert got.coords == reduce_point(t, p.coords).coords

    return EnumerationResult(
        torus=t,
        B=B,
        genus=g,
        config=cfg,
        bounds=bounds,
        curves=curves,
        keys=keys,
        by_gcd={k: tuple(v) for k, v in sorted(by_gcd.items())},
        saturation=saturation,
    )


def certify_bounds_stability(
    t: TropicalTorus,
    B: IMat2,
    g: int,
    cfg: PointConfig,
    bounds: SearchBounds | None = None,
    jobs: int | None = None,
) -> EnumerationResult:
    """Enumerate, then re-enumerate at doubled bounds and compare curve sets."""
    if bounds is None:
        bounds = default_bounds(B)
    res = enumerate_curves(t, B, g, cfg, bounds, jobs)
    wide = enumerate_curves(t, B, g, cfg, bounds.doubled(), jobs)
    stable = res.keys == wide.keys and all(
        a[1].total == b[1].total for a, b in zip(res.curves, wide.curves)
    )
    return replace(res, bounds_stable=stable)


def tropical_invariant(res: EnumerationResult, k: int) -> int:
    """Multiplicity-weighted count of the gcd-k stratum."""
    d = divisibility(res.B)
    if k < 1 or d % k:
        raise ValueError(f"stratum {k} does not divide the divisibility {d}")
    return sum(res.curves[i][1].total for i in res.by_gcd.get(k, ()))


@dataclass(frozen=True)
class BijectionReport:
    ok: bool
    k: int
    factor: int
    matched: int
    missing: tuple
    extra: tuple
    mismatched: tuple


def stratum_bijection_check(
    res_big: EnumerationResult, res_small: EnumerationResult, k: int
) -> BijectionReport:
    """Check that dilation by k maps the small primitive stratum onto the
    gcd-k stratum of the big result, multiplicities scaling by k^(4g-3)."""
    if res_big.torus.S != res_small.torus.S:
        raise ValueError("results live on different tori")
    if res_big.config.points != res_small.config.points:
        raise ValueError("results use different configurations")
    g = res_big.genus
    factor = k ** (4 * g - 3)
    big = {
        res_big.keys[i]: res_big.curves[i][1].total
        for i in res_big.by_gcd.get(k, ())
    }
    image = {}
    for i in res_small.by_gcd.get(1, ()):
        pc, mult = res_small.curves[i]
        image[canonical_key(dilate(pc, k))] = factor * mult.total
    missing = tuple(sorted(key for key in image if key not in big))
    extra = tuple(sorted(key for key in big if key not in image))
    mismatched = tuple(
        sorted(key for key in image if key in big and big[key] != image[key])
    )
    ok = not (missing or extra or mismatched)
    return BijectionReport(
        ok=ok,
        k=k,
        factor=factor,
        matched=len(image) - len(missing) - len(mismatched),
        missing=missing,
        extra=extra,
        mismatched=mismatched,
    )
