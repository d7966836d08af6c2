"""SVG rendering of a signature map.

Faces are filled by how many points they see. With ``n`` points the top three
classes use fixed colours and the rest follow a fixed ramp that ends in white:

==========  =========  ==========
count       colour     hex
==========  =========  ==========
n           red        ``#d7191c``
n - 1       brown      ``#8c510a``
n - 2       light green ``#a6d96a``
n - 3       sky blue   ``#74add1``
n - 4       gold       ``#fee090``
n - 5       lavender   ``#c2a5cf``
n - 6 ...   light grey ``#e0e0e0``
0           white      ``#ffffff``
==========  =========  ==========

Zero always wins, so a face that sees nothing is white even when ``n`` is
small. Output is a pure function of the decomposition: coordinates are
printed with a fixed number of decimals and elements come in face order.
"""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

from .decomposition import FaceDecomposition, PointSet

TOP = ("#d7191c", "#8c510a", "#a6d96a")
RAMP = ("#74add1", "#fee090", "#c2a5cf", "#e0e0e0")
WHITE = "#ffffff"

WIDTH = 800
MARGIN = 20


def fill_for(count: int, n: int) -> str:
    if count <= 0:
        return WHITE
    drop = n - count
    if drop < len(TOP):
        return TOP[drop]
    return RAMP[min(drop - len(TOP), len(RAMP) - 1)]


class _View:
    def __init__(self, dec: FaceDecomposition):
        x0, y0, x1, y1 = dec.polygon.bbox()
        self.x0, self.y1 = x0, y1
        span = max(x1 - x0, y1 - y0)
        self.k = (WIDTH - 2 * MARGIN) / float(span)
        self.w = float(x1 - x0) * self.k + 2 * MARGIN
        self.h = float(y1 - y0) * self.k + 2 * MARGIN

    def xy(self, p) -> str:
        # flip y so that north is up
        x = float(p[0] - self.x0) * self.k + MARGIN
        y = float(self.y1 - p[1]) * self.k + MARGIN
        return f"{x:.3f},{y:.3f}"


def _sig_text(sig) -> str:
    return "{" + ",".join(str(l) for l in sorted(sig)) + "}"


def render_svg(dec: FaceDecomposition, points: PointSet, labels: bool = True) -> str:
    if any(f.signature is None for f in dec.faces):
        raise ValueError("signatures have not been computed")
    view = _View(dec)
    n = len(points)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{view.w:.0f}" height="{view.h:.0f}" '
        f'viewBox="0 0 {view.w:.3f} {view.h:.3f}">',
        '<g id="faces" stroke="#808080" stroke-width="0.5">',
    ]
    for k, face in enumerate(dec.faces):
        pts = " ".join(view.xy(p) for p in face.boundary.vertices)
        fill = fill_for(len(face.signature), n)
        out.append(f'<polygon id="face-{k}" points="{pts}" fill="{fill}"><title>{_sig_text(face.signature)}</title></polygon>')
    out.append("</g>")
    out.append('<g id="cuts" stroke="#202020" stroke-width="1" stroke-dasharray="4,3" fill="none">')
    for ch in dec.chords:
        a, b = ch.segment
        out.append(f'<polyline points="{view.xy(a)} {view.xy(b)}"/>')
    out.append("</g>")
    outline = " ".join(view.xy(p) for p in dec.polygon.vertices)
    out.append(f'<polygon id="boundary" points="{outline}" fill="none" stroke="#000000" stroke-width="2"/>')
    if labels:
        out.append('<g id="signatures" font-family="sans-serif" font-size="8" text-anchor="middle">')
        for k, face in enumerate(dec.faces):
            x, y = view.xy(face.representative).split(",")
            out.append(f'<text x="{x}" y="{y}">{escape(_sig_text(face.signature))}</text>')
        out.append("</g>")
    out.append('<g id="points" font-family="sans-serif" font-size="12">')
    for label, p in points.items():
        x, y = view.xy(p).split(",")
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="#000000"/>')
        out.append(f'<text x="{float(x) + 6:.3f}" y="{float(y) - 6:.3f}">{label}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(dec: FaceDecomposition, points: PointSet, path, labels: bool = True) -> None:
    Path(path).write_text(render_svg(dec, points, labels))
