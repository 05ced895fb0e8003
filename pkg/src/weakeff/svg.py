"""Static SVG figures: polygons with their hull and chains, and lasso fronts."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .geom2d import PolygonAnalysis

SIZE = 360
PAD = 36
CHAIN_STYLE = {
    "WM": ("#1f77b4", 7.0),
    "M": ("#d62728", 4.0),
    "M_1": ("#2ca02c", 2.0),
    "M_2": ("#9467bd", 2.0),
}


class _Frame:
    def __init__(self, lo, hi):
        self.lo = [float(v) for v in lo]
        span = max(float(hi[0]) - self.lo[0], float(hi[1]) - self.lo[1], 1e-12)
        self.scale = (SIZE - 2 * PAD) / span

    def __call__(self, p) -> tuple:
        x = PAD + (float(p[0]) - self.lo[0]) * self.scale
        y = SIZE - PAD - (float(p[1]) - self.lo[1]) * self.scale
        return round(x, 2), round(y, 2)


def _poly(points, fill, stroke="none", opacity=1.0) -> str:
    pts = " ".join(f"{x},{y}" for x, y in points)
    return f'<polygon points="{pts}" fill="{fill}" stroke="{stroke}" fill-opacity="{opacity}"/>'


def _marker(p, color, closed: bool, r=4) -> str:
    fill = color if closed else "white"
    return f'<circle cx="{p[0]}" cy="{p[1]}" r="{r}" fill="{fill}" stroke="{color}" stroke-width="1.5"/>'


def polygon_figure(P, title: str = "") -> str:
    """Y in dark gray over its free disposal hull in light gray, with chains.

    The viewport is the polygon's bounding box grown by one unit each way, so
    the same example always renders with the same layout.
    """
    an = P if isinstance(P, PolygonAnalysis) else PolygonAnalysis(P)
    xmin, ymin, xmax, ymax = an.polygon.bbox
    lo = (xmin - 1, ymin - 1)
    hi = (xmax + 1, ymax + 1)
    fr = _Frame(lo, hi)
    st = an.staircase
    hull = [(st.start[0], hi[1])] + list(st.chain) + [(hi[0], st.end[1]), hi]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
        _poly([fr(p) for p in hull], "#d9d9d9"),
        _poly([fr(v) for v in an.polygon.vertices], "#595959"),
    ]
    for name in ("WM", "M", "M_1", "M_2"):
        chain = {"WM": an.weak, "M": an.eff, "M_1": an.eff_1, "M_2": an.eff_2}[name]
        color, width = CHAIN_STYLE[name]
        for pc in chain.pieces():
            if pc["kind"] == "point":
                out.append(_marker(fr(pc["at"]), color, True, r=width / 2 + 2))
                continue
            a, b = fr(pc["start"]), fr(pc["end"])
            out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" stroke="{color}" '
                       f'stroke-width="{width}" stroke-opacity="0.85" stroke-linecap="butt"/>')
            out.append(_marker(a, color, pc["start_closed"]))
            out.append(_marker(b, color, pc["end_closed"]))
    for k, v in enumerate(an.polygon.vertices, 1):
        x, y = fr(v)
        out.append(f'<text x="{x + 5}" y="{y - 5}" font-size="11" font-family="sans-serif">v{k}</text>')
    legend_y = 14
    for name, (color, _) in CHAIN_STYLE.items():
        out.append(f'<text x="{SIZE - 60}" y="{legend_y}" font-size="11" fill="{color}" '
                   f'font-family="sans-serif">{name}</text>')
        legend_y += 13
    if title:
        out.append(f'<text x="{PAD}" y="16" font-size="13" font-family="sans-serif">{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def front_figure(points, title: str = "") -> str:
    """Scatter of objective pairs (first objective horizontal)."""
    pts = [(float(a), float(b)) for a, b in points]
    if not pts:
        pts = [(0.0, 0.0)]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    lo = (min(xs), min(ys))
    hi = (max(xs) if max(xs) > lo[0] else lo[0] + 1, max(ys) if max(ys) > lo[1] else lo[1] + 1)
    # independent axis scaling: fronts are rarely square
    sx = (SIZE - 2 * PAD) / (hi[0] - lo[0])
    sy = (SIZE - 2 * PAD) / (hi[1] - lo[1])
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{PAD}" y1="{SIZE - PAD}" x2="{SIZE - PAD}" y2="{SIZE - PAD}" stroke="black"/>',
        f'<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{SIZE - PAD}" stroke="black"/>',
    ]
    for x, y in pts:
        cx = round(PAD + (x - lo[0]) * sx, 2)
        cy = round(SIZE - PAD - (y - lo[1]) * sy, 2)
        out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="#d62728"/>')
    if title:
        out.append(f'<text x="{PAD}" y="16" font-size="13" font-family="sans-serif">{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
