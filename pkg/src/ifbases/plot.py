"""Deterministic SVG pictures of 2-D lattice sets, bases and function bases."""
from __future__ import annotations

CELL = 24
MARGIN = 28
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _xy(x, y, lo, hi):
    return MARGIN + (x - lo[0]) * CELL, MARGIN + (hi[1] - y) * CELL


def render_svg(S, lo, hi, highlight=(), families=None, param_bound=None) -> str:
    """Dots for the box, filled where ``S`` holds; basis points ringed; family members coloured."""
    w = 2 * MARGIN + (hi[0] - lo[0]) * CELL
    h = 2 * MARGIN + (hi[1] - lo[1]) * CELL
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">',
           f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>']
    x0, y0 = _xy(lo[0], lo[1], lo, hi)
    x1, y1 = _xy(hi[0], hi[1], lo, hi)
    out.append(f'<path d="M{x0} {y0}H{x1}M{x0} {y0}V{y1}" stroke="#999" stroke-width="1"/>')
    for y in range(lo[1], hi[1] + 1):
        for x in range(lo[0], hi[0] + 1):
            cx, cy = _xy(x, y, lo, hi)
            if S.contains((x, y)):
                out.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="#444"/>')
            else:
                out.append(f'<circle cx="{cx}" cy="{cy}" r="2" fill="#ccc"/>')
    if families is not None:
        bound = param_bound if param_bound is not None else max(max(map(abs, lo)), max(map(abs, hi)))
        for i, T in enumerate(families.families):
            colour = PALETTE[i % len(PALETTE)]
            seen = set()
            for _, p in T.members(bound):
                if p in seen or not all(a <= v <= b for v, a, b in zip(p, lo, hi)):
                    continue
                seen.add(p)
                if not S.contains(p):
                    continue
                cx, cy = _xy(p[0], p[1], lo, hi)
                r = 6 + 2 * i
                out.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" '
                           f'stroke="{colour}" stroke-width="1.5"/>')
    for p in sorted(set(tuple(q) for q in highlight)):
        if all(a <= v <= b for v, a, b in zip(p, lo, hi)):
            cx, cy = _xy(p[0], p[1], lo, hi)
            out.append(f'<circle cx="{cx}" cy="{cy}" r="7" fill="none" stroke="#d62728" stroke-width="2.5"/>')
    out.append(f'<text x="{x0}" y="{y0 + 18}" font-size="11" font-family="monospace">'
               f'[{lo[0]},{hi[0]}]x[{lo[1]},{hi[1]}]</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
