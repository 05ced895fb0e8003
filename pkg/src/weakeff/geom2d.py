"""Exact efficient sets and free disposal hulls of planar polygons.

All arithmetic is on ``fractions.Fraction``. The boundary of ``P + R^2_{>=0}``
is a monotone staircase (x nondecreasing, y nonincreasing) closed off by an
upward ray at its first vertex and a rightward ray at its last. Along that
curve ``s = x - y`` is strictly increasing, so every subset of the staircase
is stored as a union of ``s``-intervals (via ``portion``), which makes
half-open pieces and set comparisons exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import portion

from .effset import TheoremVerdict
from .order import IndexLike, IndexSet, InvalidArgument, as_index_set


class DegeneratePolygon(InvalidArgument):
    """Fewer than three distinct vertices, zero area, spikes or self-intersection."""


def frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


def as_pt(p) -> tuple:
    x, y = p
    return (frac(x), frac(y))


def num_json(v: Fraction):
    """Exact JSON encoding: ints stay ints, other rationals become ``"p/q"``."""
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def pt_json(p) -> list:
    return [num_json(p[0]), num_json(p[1])]


def cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p, a, b) -> bool:
    return (
        cross(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _segments_touch(a, b, c, d) -> bool:
    d1, d2 = cross(c, d, a), cross(c, d, b)
    d3, d4 = cross(a, b, c), cross(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return _on_segment(a, c, d) or _on_segment(b, c, d) or _on_segment(c, a, b) or _on_segment(d, a, b)


class Polygon2:
    """Simple polygon with exact vertices, normalized to counterclockwise order.

    Repeated vertices and vertices lying inside a straight edge are dropped.
    """

    def __init__(self, vertices: Iterable):
        pts = [as_pt(v) for v in vertices]
        changed = True
        while changed and len(pts) >= 3:
            changed = False
            n = len(pts)
            for i in range(n):
                a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
                if a == b:
                    del pts[i]
                    changed = True
                    break
                if cross(a, b, c) == 0:
                    if (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) < 0:
                        raise DegeneratePolygon(f"spike at vertex {b}")
                    del pts[i]
                    changed = True
                    break
        if len(pts) < 3:
            raise DegeneratePolygon("polygon needs at least three non-collinear vertices")
        area2 = sum(pts[i - 1][0] * pts[i][1] - pts[i][0] * pts[i - 1][1] for i in range(len(pts)))
        if area2 == 0:
            raise DegeneratePolygon("polygon has zero area")
        if area2 < 0:
            pts.reverse()
        self.vertices = tuple(pts)
        self._check_simple()

    def _check_simple(self) -> None:
        E = self.edges
        n = len(E)
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                if _segments_touch(*E[i], *E[j]):
                    raise DegeneratePolygon(f"edges {E[i]} and {E[j]} intersect")

    @property
    def edges(self) -> list:
        V = self.vertices
        return [(V[i], V[(i + 1) % len(V)]) for i in range(len(V))]

    @property
    def bbox(self) -> tuple:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def contains(self, p) -> bool:
        """Closed point-in-polygon test (boundary counts as inside)."""
        p = as_pt(p)
        inside = False
        for a, b in self.edges:
            if _on_segment(p, a, b):
                return True
            if (a[1] > p[1]) != (b[1] > p[1]):
                x_at = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
                if p[0] < x_at:
                    inside = not inside
        return inside

    def to_dict(self) -> dict:
        return {"vertices": [pt_json(v) for v in self.vertices]}

    def __repr__(self) -> str:
        return f"Polygon2({[(str(x), str(y)) for x, y in self.vertices]})"


def _phi(P: Polygon2, x: Fraction) -> Fraction:
    """min{ p_y : p in P, p_x <= x } for x >= min x of P."""
    best = None
    for a, b in P.edges:
        L, R = (a, b) if a[0] <= b[0] else (b, a)
        if L[0] > x:
            continue
        if L[0] == R[0]:
            v = min(L[1], R[1])
        else:
            xe = min(x, R[0])
            v = min(L[1], L[1] + (R[1] - L[1]) * (xe - L[0]) / (R[0] - L[0]))
        if best is None or v < best:
            best = v
    return best


@dataclass(frozen=True)
class Staircase2:
    """Lower-left boundary of the free disposal hull of a planar set.

    ``chain`` runs from the top-left vertex (where the upward ray starts) to
    the bottom-right vertex (where the rightward ray starts). Consecutive
    pieces never share a direction.
    """

    chain: tuple

    @staticmethod
    def s(p) -> Fraction:
        return p[0] - p[1]

    @property
    def start(self):
        return self.chain[0]

    @property
    def end(self):
        return self.chain[-1]

    @property
    def corners(self) -> list:
        return [self.s(p) for p in self.chain]

    def pieces(self) -> list:
        return list(zip(self.chain, self.chain[1:]))

    @staticmethod
    def kind(a, b) -> str:
        if a[0] == b[0]:
            return "vertical"
        if a[1] == b[1]:
            return "horizontal"
        return "sloped"

    def point_at(self, s) -> tuple:
        s = frac(s)
        x0, y0 = self.start
        if s <= self.s(self.start):
            return (x0, x0 - s)
        x1, y1 = self.end
        if s >= self.s(self.end):
            return (s + y1, y1)
        for a, b in self.pieces():
            sa, sb = self.s(a), self.s(b)
            if sa <= s <= sb:
                t = (s - sa) / (sb - sa)
                return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        raise AssertionError("unreachable: s inside chain range")

    def phi(self, x) -> Optional[Fraction]:
        """Lowest y of the hull above abscissa x; ``None`` left of the staircase."""
        x = frac(x)
        if x < self.start[0]:
            return None
        best = self.end[1] if x >= self.end[0] else None
        for a, b in self.pieces():
            if a[0] <= x <= b[0]:
                if a[0] == b[0]:
                    v = b[1]
                else:
                    v = a[1] + (b[1] - a[1]) * (x - a[0]) / (b[0] - a[0])
                best = v if best is None else min(best, v)
        return best

    def fdh_contains(self, p) -> bool:
        x, y = as_pt(p)
        v = self.phi(x)
        return v is not None and y >= v

    def on_boundary(self, p) -> bool:
        p = as_pt(p)
        return self.point_at(self.s(p)) == p

    def to_dict(self) -> dict:
        return {
            "chain": [pt_json(p) for p in self.chain],
            "up_ray_from": pt_json(self.start),
            "right_ray_from": pt_json(self.end),
        }


def _simplify(chain: list) -> list:
    out = []
    for p in chain:
        if out and out[-1] == p:
            continue
        if len(out) >= 2 and cross(out[-2], out[-1], p) == 0:
            out[-1] = p
        else:
            out.append(p)
    return out


def lower_envelope(P: Polygon2) -> Staircase2:
    """Boundary staircase of ``P + R^2_{>=0}``.

    phi(x) = min{ p_y : p in P, p_x <= x } is right-continuous and piecewise
    linear with breakpoints among the vertex abscissae and the abscissae where
    an edge crosses a vertex ordinate (edges of a simple polygon never cross
    each other). Downward jumps of phi become vertical pieces.
    """
    if not isinstance(P, Polygon2):
        P = Polygon2(P)
    levels = sorted({v[1] for v in P.vertices})
    xs = {v[0] for v in P.vertices}
    for a, b in P.edges:
        if a[0] == b[0] or a[1] == b[1]:
            continue
        lo, hi = sorted((a[1], b[1]))
        for lev in levels:
            if lo < lev < hi:
                xs.add(a[0] + (lev - a[1]) * (b[0] - a[0]) / (b[1] - a[1]))
    xs = sorted(xs)
    chain = [(xs[0], _phi(P, xs[0]))]
    for x0, x1 in zip(xs, xs[1:]):
        v0 = _phi(P, x0)
        vmid = _phi(P, (x0 + x1) / 2)
        left = v0 + 2 * (vmid - v0)
        chain.append((x1, left))
        v1 = _phi(P, x1)
        if v1 < left:
            chain.append((x1, v1))
    while len(chain) >= 2 and chain[-2][1] == chain[-1][1]:
        chain.pop()
    return Staircase2(tuple(_simplify(chain)))


def fdh_is_convex(P: Polygon2) -> bool:
    """Whether ``P + R^2_{>=0}`` is convex: no vertical steps and slopes nondecreasing."""
    st = P if isinstance(P, Staircase2) else lower_envelope(P)
    prev = None
    for a, b in st.pieces():
        if a[0] == b[0]:
            return False
        slope = (b[1] - a[1]) / (b[0] - a[0])
        if prev is not None and slope < prev:
            return False
        prev = slope
    return True


class SegmentChain:
    """A subset of a staircase, kept as an exact union of ``s``-intervals."""

    def __init__(self, staircase: Staircase2, intervals=None):
        self.staircase = staircase
        self.intervals = intervals if intervals is not None else portion.empty()

    def _same(self, other: "SegmentChain") -> None:
        if self.staircase != other.staircase:
            raise InvalidArgument("chains live on different staircases")

    def __or__(self, other):
        self._same(other)
        return SegmentChain(self.staircase, self.intervals | other.intervals)

    def __and__(self, other):
        self._same(other)
        return SegmentChain(self.staircase, self.intervals & other.intervals)

    def __sub__(self, other):
        self._same(other)
        return SegmentChain(self.staircase, self.intervals - other.intervals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SegmentChain):
            return NotImplemented
        return self.staircase == other.staircase and self.intervals == other.intervals

    def __hash__(self):
        return hash((self.staircase, str(self.intervals)))

    def issubset(self, other: "SegmentChain") -> bool:
        self._same(other)
        return (self.intervals - other.intervals).empty

    @property
    def empty(self) -> bool:
        return self.intervals.empty

    def contains(self, p) -> bool:
        p = as_pt(p)
        st = self.staircase
        s = st.s(p)
        return st.point_at(s) == p and s in self.intervals

    def pieces(self) -> list:
        """Closed/half-open segments and isolated points, split at staircase corners.

        Each item is ``{"kind": "point", "at": p}`` or
        ``{"kind": "segment", "start": a, "end": b, "start_closed": .., "end_closed": ..}``
        with ``a`` before ``b`` along the staircase.
        """
        st = self.staircase
        corners = st.corners
        out = []
        for atom in self.intervals:
            if atom.empty:
                continue
            lo, hi = atom.lower, atom.upper
            if lo == hi:
                out.append({"kind": "point", "at": st.point_at(lo)})
                continue
            cuts = [lo] + [c for c in corners if lo < c < hi] + [hi]
            for k, (u, v) in enumerate(zip(cuts, cuts[1:])):
                out.append({
                    "kind": "segment",
                    "start": st.point_at(u),
                    "end": st.point_at(v),
                    "start_closed": atom.left == portion.CLOSED if k == 0 else True,
                    "end_closed": atom.right == portion.CLOSED if k == len(cuts) - 2 else True,
                })
        return out

    def to_dict(self) -> dict:
        items = []
        for pc in self.pieces():
            if pc["kind"] == "point":
                items.append({"kind": "point", "at": pt_json(pc["at"])})
            else:
                items.append({
                    "kind": "segment",
                    "start": pt_json(pc["start"]),
                    "end": pt_json(pc["end"]),
                    "start_closed": pc["start_closed"],
                    "end_closed": pc["end_closed"],
                })
        return {"pieces": items}

    def describe(self) -> str:
        parts = []
        for pc in self.pieces():
            if pc["kind"] == "point":
                parts.append("{" + _fmt(pc["at"]) + "}")
            else:
                lb = "[" if pc["start_closed"] else "("
                rb = "]" if pc["end_closed"] else ")"
                parts.append(f"{lb}{_fmt(pc['start'])}, {_fmt(pc['end'])}{rb}")
        return " u ".join(parts) if parts else "{}"

    def __repr__(self) -> str:
        return f"SegmentChain({self.describe()})"


def _fmt(p) -> str:
    return "(" + ", ".join(str(num_json(c)) for c in p) + ")"


def _clip(a, b, lo_pt, hi_pt):
    """Overlap of two collinear closed segments, or None."""
    def key(p):
        return (p[0], p[1]) if a[0] != b[0] else (p[1], p[0])

    lo = max(min(a, b, key=key), min(lo_pt, hi_pt, key=key), key=key)
    hi = min(max(a, b, key=key), max(lo_pt, hi_pt, key=key), key=key)
    if key(lo) > key(hi):
        return None
    return lo, hi


def _segment_meet(a, b, c, d):
    """Intersection of closed segments ab and cd: None, a point, or a segment (pair)."""
    r = (b[0] - a[0], b[1] - a[1])
    q = (d[0] - c[0], d[1] - c[1])
    den = r[0] * q[1] - r[1] * q[0]
    if den == 0:
        if cross(a, b, c) != 0:
            return None
        hit = _clip(a, b, c, d)
        if hit is None:
            return None
        return hit[0] if hit[0] == hit[1] else hit
    t = ((c[0] - a[0]) * q[1] - (c[1] - a[1]) * q[0]) / den
    u = ((c[0] - a[0]) * r[1] - (c[1] - a[1]) * r[0]) / den
    if 0 <= t <= 1 and 0 <= u <= 1:
        return (a[0] + t * r[0], a[1] + t * r[1])
    return None


class PolygonAnalysis:
    """All exact efficient-set objects of one polygon, computed once."""

    def __init__(self, P: Polygon2):
        if not isinstance(P, Polygon2):
            P = Polygon2(P)
        self.polygon = P
        self.staircase = st = lower_envelope(P)
        s0, s1 = st.s(st.start), st.s(st.end)
        xmin, ymin, xmax, ymax = P.bbox
        # finite stand-ins for the rays; P never reaches beyond its bbox
        pieces = [((st.start[0], ymax), st.start)] + st.pieces() + [(st.end, (xmax, st.end[1]))]
        wm = portion.empty()
        for a, b in P.edges:
            for c, d in pieces:
                hit = _segment_meet(a, b, c, d)
                if hit is None:
                    continue
                if isinstance(hit[0], tuple):
                    u, v = sorted((st.s(hit[0]), st.s(hit[1])))
                    wm |= portion.closed(u, v)
                else:
                    wm |= portion.singleton(st.s(hit))
        self.weak = SegmentChain(st, wm)
        admissible = portion.closed(s0, s1)
        for a, b in st.pieces():
            kind = st.kind(a, b)
            if kind == "vertical":
                admissible -= portion.closedopen(st.s(a), st.s(b))
            elif kind == "horizontal":
                admissible -= portion.openclosed(st.s(a), st.s(b))
        self.admissible = SegmentChain(st, admissible)
        self.eff = self.weak & self.admissible
        self.eff_1 = SegmentChain(st, wm & portion.closed(-portion.inf, s0))
        self.eff_2 = SegmentChain(st, wm & portion.closed(s1, portion.inf))
        self.fdh_convex = fdh_is_convex(st)

    def chain(self, I: IndexLike) -> SegmentChain:
        I = as_index_set(I)
        if I.members == (1,):
            return self.eff_1
        if I.members == (2,):
            return self.eff_2
        if I.members == (1, 2):
            return self.eff
        raise InvalidArgument(f"unsupported index set {I} for a planar polygon")

    def verdict(self) -> TheoremVerdict:
        alpha = self.weak == self.eff
        violations = []
        for I in (IndexSet((1,)), IndexSet((2,))):
            extra = self.chain(I) - self.eff
            if not extra.empty:
                violations.append((I, extra))
        return TheoremVerdict(
            fdh_convex=self.fdh_convex,
            alpha_holds=alpha,
            beta_holds=not violations,
            beta_violations=violations,
            alpha_witnesses=[] if alpha else [self.weak - self.eff],
        )

    def to_dict(self) -> dict:
        return {
            "polygon": self.polygon.to_dict(),
            "staircase": self.staircase.to_dict(),
            "fdh_convex": self.fdh_convex,
            "M_1": self.eff_1.to_dict(),
            "M_2": self.eff_2.to_dict(),
            "M": self.eff.to_dict(),
            "WM": self.weak.to_dict(),
        }


def efficient_chain(P, I: IndexLike) -> SegmentChain:
    """M_I P for I in {{1}, {2}, {1,2}}."""
    return PolygonAnalysis(P).chain(I)


def weakly_efficient_chain(P) -> SegmentChain:
    """WM P: every point of P on the hull boundary, all pieces closed."""
    return PolygonAnalysis(P).weak


def verdict_polygon(P) -> TheoremVerdict:
    """(alpha)/(beta) by exact chain comparison; raises on a theorem contradiction."""
    return PolygonAnalysis(P).verdict()


# Independent pointwise oracles ------------------------------------------------

def _feasible_t(a, b, bounds, strict: bool):
    """Parameters t in [0, 1] with a + t (b - a) below ``bounds`` in both coordinates."""
    T = portion.closed(Fraction(0), Fraction(1))
    for k in (0, 1):
        c0 = a[k] - bounds[k]
        c1 = b[k] - a[k]
        if c1 == 0:
            ok = c0 < 0 if strict else c0 <= 0
            if not ok:
                return portion.empty()
            continue
        r = -c0 / c1
        if c1 > 0:
            T &= portion.open(-portion.inf, r) if strict else portion.openclosed(-portion.inf, r)
        else:
            T &= portion.open(r, portion.inf) if strict else portion.closedopen(r, portion.inf)
    return T


def point_is_weakly_efficient(P: Polygon2, p) -> bool:
    """Brute-force definition: p in P and the open south-west quadrant misses P."""
    p = as_pt(p)
    if not P.contains(p):
        return False
    return all(_feasible_t(a, b, p, strict=True).empty for a, b in P.edges)


def point_is_efficient(P: Polygon2, p, I: IndexLike = (1, 2)) -> bool:
    """Brute-force definition of membership in M_I P, by clipping edges to a quadrant."""
    p = as_pt(p)
    if not P.contains(p):
        return False
    I = as_index_set(I)
    if len(I) == 1:
        k = I.zero_based[0]
        return all(min(a[k], b[k]) >= p[k] for a, b in P.edges)
    for a, b in P.edges:
        T = _feasible_t(a, b, p, strict=False)
        for atom in T:
            if atom.empty:
                continue
            if atom.lower != atom.upper:
                return False
            t = atom.lower
            q = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
            if q != p:
                return False
    return True


# Illustrative polygons ---------------------------------------------------------

EXAMPLES = {
    "3.1": [(0, 1), (1, 0), (2, 1), (1, 2)],
    "3.2": [(0, 2), (0, 1), (1, 0), (2, 0)],
    "3.3": [(0, 3), (1, 2), (1, 1), (2, 0), (2, 3)],
    "3.4": [(0, 3), (2, 2), (3, 0), (3, 3)],
}


def example_polygon(name: str) -> Polygon2:
    try:
        return Polygon2(EXAMPLES[str(name)])
    except KeyError:
        raise InvalidArgument(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None


def example_points(name: str) -> list:
    """Labelled vertices p1, p2, ... in the order they are listed for the example."""
    return [as_pt(v) for v in EXAMPLES[str(name)]]
