"""Fundamental-domain drawings of enumerated curves (plot output only)."""

from __future__ import annotations

import math
import os
from fractions import Fraction

from .curve import ParamCurve, positions
from .enumeration import EnumerationResult


def _fmt(x) -> str:
    return f"{float(x):.6f}"


def _split_segment(y0, disp):
    """Split a lattice-coordinate segment at integer walls.

    Yields (start, end) pieces translated into the unit square.
    """
    cuts = {Fraction(0), Fraction(1)}
    for j in range(2):
        if disp[j] == 0:
            continue
        a, b = y0[j], y0[j] + disp[j]
        lo, hi = min(a, b), max(a, b)
        m = math.floor(lo) + 1
        while m < hi:
            cuts.add((Fraction(m) - a) / disp[j])
            m += 1
    ts = sorted(t for t in cuts if 0 <= t <= 1)
    for t0, t1 in zip(ts, ts[1:]):
        if t0 == t1:
            continue
        mid = ((t0 + t1) / 2)
        midpt = [y0[j] + mid * disp[j] for j in range(2)]
        shift = [math.floor(c) for c in midpt]
        start = [y0[j] + t0 * disp[j] - shift[j] for j in range(2)]
        end = [y0[j] + t1 * disp[j] - shift[j] for j in range(2)]
        yield start, end


def curve_svg(pc: ParamCurve, label: str = "") -> str:
    """SVG drawing of one curve inside its fundamental parallelogram."""
    t = pc.torus
    corners = [t.ambient((x, y)) for x in (0, 1) for y in (0, 1)]
    xs = [c[0] for c in corners]
    ys = [c[1] for c in corners]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    pad = max(maxx - minx, maxy - miny) / 20

    def pt(ambient):
        return (_fmt(ambient[0]), _fmt(maxy - ambient[1] + miny))

    lines = []
    lines.append(
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="%s %s %s %s">'
        % (
            _fmt(minx - pad),
            _fmt(miny - pad),
            _fmt(maxx - minx + 2 * pad),
            _fmt(maxy - miny + 2 * pad),
        )
    )
    domain = [t.ambient((0, 0)), t.ambient((1, 0)), t.ambient((1, 1)), t.ambient((0, 1))]
    path = " ".join(",".join(pt(c)) for c in domain)
    lines.append(
        f'<polygon points="{path}" fill="none" stroke="#999" stroke-width="{_fmt(pad / 6)}"/>'
    )
    pos = positions(pc)
    width = _fmt(pad / 3)
    for e, n in zip(pc.curve.edges, pc.slopes):
        y0 = t.lattice_coords(pos[e.u])
        disp = t.lattice_coords((e.length * n[0], e.length * n[1]))
        for start, end in _split_segment(y0, disp):
            a = pt(t.ambient(tuple(start)))
            b = pt(t.ambient(tuple(end)))
            lines.append(
                f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" '
                f'stroke="#136" stroke-width="{width}" stroke-linecap="round"/>'
            )
    for leg in pc.curve.legs:
        y = t.lattice_coords(pos[leg.vertex])
        y = tuple(c - math.floor(c) for c in y)
        a = pt(t.ambient(y))
        lines.append(
            f'<circle cx="{a[0]}" cy="{a[1]}" r="{_fmt(pad / 2)}" fill="#a31"/>'
        )
    if label:
        lines.append(
            f'<text x="{_fmt(minx)}" y="{_fmt(miny - pad / 4 + (maxy - miny))}" '
            f'font-size="{_fmt(pad)}">{label}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_result(res: EnumerationResult, directory: str) -> list[str]:
    """Write one SVG per counted curve; returns the file names."""
    os.makedirs(directory, exist_ok=True)
    names = []
    for idx, (pc, mult) in enumerate(res.curves):
        name = f"curve_{idx:03d}.svg"
        label = f"gcd {mult.gcd}, multiplicity {mult.total}"
        with open(os.path.join(directory, name), "w", encoding="utf-8") as fh:
            fh.write(curve_svg(pc, label))
        names.append(name)
    return names
