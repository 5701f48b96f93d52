"""Static SVG drawings of two-dimensional unit balls."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .errors import UnsupportedDimension
from .exact import format_vector
from .polyspace import PolyhedralSpace

SIZE = 520
CENTER = 240
RADIUS = 160
INSET = (440, 80)
INSET_RADIUS = 50


def _ccw(points):
    return sorted(points, key=lambda p: math.atan2(float(p[1]), float(p[0])))


def _extent(points):
    return max(max(abs(float(a)) for a in p) for p in points)


def _polygon(points, cx, cy, r, style):
    s = r / _extent(points)
    coords = " ".join("%.3f,%.3f" % (cx + s * float(p[0]), cy - s * float(p[1])) for p in _ccw(points))
    return '<polygon points="%s" %s/>' % (coords, style), s


def render_svg(X: PolyhedralSpace) -> str:
    """Primal unit ball with vertex and facet labels, plus the dual ball as an inset."""
    if X.dim != 2:
        raise UnsupportedDimension("only two-dimensional spaces can be drawn, got dimension %d" % X.dim)
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d" font-family="monospace" font-size="11">'
        % (SIZE, SIZE, SIZE, SIZE),
        '<rect width="100%" height="100%" fill="white"/>',
        '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="#ccc"/>' % (CENTER - RADIUS - 30, CENTER, CENTER + RADIUS + 30, CENTER),
        '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="#ccc"/>' % (CENTER, CENTER - RADIUS - 30, CENTER, CENTER + RADIUS + 30),
    ]
    poly, s = _polygon(X.primal_vertices, CENTER, CENTER, RADIUS, 'fill="#dde8f5" stroke="#1f4e8c" stroke-width="2"')
    out.append(poly)
    for v in X.primal_vertices:
        x, y = CENTER + s * float(v[0]), CENTER - s * float(v[1])
        out.append('<circle cx="%.3f" cy="%.3f" r="3" fill="#1f4e8c"/>' % (x, y))
        dx, dy = float(v[0]), float(v[1])
        norm = math.hypot(dx, dy) or 1.0
        out.append('<text x="%.3f" y="%.3f" text-anchor="middle">(%s)</text>'
                   % (x + 22 * dx / norm, y - 14 * dy / norm + 4, escape(format_vector(v))))
    for j in range(X.n_signed_duals):
        F = X.facet(j)
        m = F.barycenter()
        mx, my = float(m[0]), float(m[1])
        norm = math.hypot(mx, my) or 1.0
        out.append('<text x="%.3f" y="%.3f" text-anchor="middle" fill="#a33">[%s]</text>'
                   % (CENTER + s * mx + 30 * mx / norm, CENTER - s * my - 16 * my / norm + 4, escape(format_vector(X.signed_dual(j)))))
    dpoly, _ = _polygon(X.signed_duals, INSET[0], INSET[1], INSET_RADIUS, 'fill="#f5e6dd" stroke="#a33" stroke-width="1.5"')
    out.append('<text x="%d" y="%d" text-anchor="middle">dual ball</text>' % (INSET[0], INSET[1] - INSET_RADIUS - 8))
    out.append(dpoly)
    out.append('<text x="12" y="%d">%s</text>' % (SIZE - 12, escape(X.name or "unnamed space")))
    out.append("</svg>")
    return "\n".join(out) + "\n"
