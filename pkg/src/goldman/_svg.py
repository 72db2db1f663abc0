"""SVG figures of zigzag curves, drawn in a disk-like chart of the upper half-plane.

Chart coordinates are sent through ``w = (z - 1) / (z + 1)``, which keeps the
upper half-plane but turns L into the unit semicircle with ``M_0`` on top,
so far-away vertices stay on the page.  Geodesics are half-circles centred on
the real axis (or verticals).
"""

from __future__ import annotations

import math

DEFAULT_STYLE = {
    "width": 800,
    "alpha": "#c0392b",
    "beta": "#2471a3",
    "axis": "#222222",
    "mirror": "#7d3c98",
    "companion_opacity": 0.45,
    "stroke": 2.0,
    "labels": True,
}


def _w(z: complex) -> complex:
    return (z - 1) / (z + 1)


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


class _Canvas:
    def __init__(self, pts, style):
        self.style = style
        xs = [p.real for p in pts] + [-1.0, 1.0]
        ys = [p.imag for p in pts] + [0.0, 1.0]
        x0, x1 = min(xs), max(xs)
        y0, y1 = 0.0, max(ys)
        mx, my = 0.1 * (x1 - x0), 0.1 * (y1 - y0)
        self.x0, self.x1, self.y0, self.y1 = x0 - mx, x1 + mx, y0 - my, y1 + my
        self.W = float(style["width"])
        self.scale = self.W / (self.x1 - self.x0)
        self.H = self.scale * (self.y1 - self.y0)

    def xy(self, w: complex) -> tuple[str, str]:
        return _fmt((w.real - self.x0) * self.scale), _fmt((self.y1 - w.imag) * self.scale)

    def arc(self, p: complex, q: complex) -> str:
        """Path of the geodesic segment from ``p`` to ``q`` (displayed coordinates)."""
        x1, y1 = self.xy(p)
        x2, y2 = self.xy(q)
        if abs(p.real - q.real) < 1e-12 * max(1.0, abs(p), abs(q)):
            return f"M {x1} {y1} L {x2} {y2}"
        c = (abs(q) ** 2 - abs(p) ** 2) / (2 * (q.real - p.real))
        r = abs(p - c) * self.scale
        # Moving from p to q: clockwise on screen iff p is left of q.
        sweep = 1 if p.real < q.real else 0
        return f"M {x1} {y1} A {_fmt(r)} {_fmt(r)} 0 0 {sweep} {x2} {y2}"

    def line(self, e0: complex | None, e1: complex | None) -> str:
        """Full geodesic with real endpoints in displayed coordinates (None for infinity)."""
        if e0 is None or e1 is None:
            x = e1 if e0 is None else e0
            return self.arc(complex(x, 0), complex(x, self.y1))
        lo, hi = sorted((e0, e1))
        return self.arc(complex(lo, 0), complex(hi, 0))


def _end(x) -> float | None:
    # Displayed endpoint of a chart endpoint (float or INF).
    if not isinstance(x, (int, float)) or math.isinf(x):
        return 1.0
    if x == -1.0:
        return None
    return _w(complex(x, 0)).real


def render(curve, config=None, style=None) -> str:
    st = dict(DEFAULT_STYLE)
    if style:
        st.update(style)
    pts = [_w(p) for p in list(curve.P1.values()) + list(curve.P2.values())]
    if config is not None:
        pts += [_w(p) for p in list(config.Q1.values()) + list(config.Q2.values())]
    cv = _Canvas(pts, st)
    sw = _fmt(st["stroke"])
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(cv.W)}" height="{_fmt(cv.H)}" '
        f'viewBox="0 0 {_fmt(cv.W)} {_fmt(cv.H)}">',
        f'<title>zigzag of {curve.alpha.letters} and {curve.beta.letters}</title>',
        "<style>"
        f".alpha{{stroke:{st['alpha']};fill:none;stroke-width:{sw}}}"
        f".beta{{stroke:{st['beta']};fill:none;stroke-width:{sw}}}"
        f".axis{{stroke:{st['axis']};fill:none;stroke-width:1;stroke-dasharray:6 4}}"
        f".mirror{{stroke:{st['mirror']};fill:none;stroke-width:1}}"
        f".companion{{opacity:{st['companion_opacity']}}}"
        ".pt{fill:#000}.lbl{font:12px sans-serif}</style>",
    ]
    x0, y0 = cv.xy(complex(cv.x0, 0))
    x1, _ = cv.xy(complex(cv.x1, 0))
    out.append(f'<path class="boundary" stroke="#999" d="M {x0} {y0} L {x1} {y0}"/>')
    out.append(f'<path class="axis" d="{cv.line(-1.0, 1.0)}"/>')
    for p, q in curve.alpha_segments():
        out.append(f'<path class="alpha" d="{cv.arc(_w(p), _w(q))}"/>')
    for p, q in curve.beta_segments():
        out.append(f'<path class="beta" d="{cv.arc(_w(p), _w(q))}"/>')
    if config is not None:
        if config.mode == "reflect":
            for g in (config.mirrorU, config.mirrorV):
                out.append(f'<path class="mirror" d="{cv.line(_end(g.source), _end(g.target))}"/>')
        al, be = config.reflected_segments()
        for p, q in al:
            out.append(f'<path class="alpha companion" d="{cv.arc(_w(p), _w(q))}"/>')
        for p, q in be:
            out.append(f'<path class="beta companion" d="{cv.arc(_w(p), _w(q))}"/>')
    labels = [(f"P{i}'", curve.P1[i]) for i in (-1, 0, 1)] + [(f"P{i}''", curve.P2[i]) for i in (-1, 0)]
    labels += [(f"M{j}", curve.M[j]) for j in (0, 1)]
    if config is not None:
        labels += [(f"Q{i}'", config.Q1[i]) for i in (0, 1)] + [(f"Q{i}''", config.Q2[i]) for i in (-1, 0)]
    for name, z in labels:
        x, y = cv.xy(_w(z))
        out.append(f'<circle class="pt" cx="{x}" cy="{y}" r="2.5"/>')
        if st["labels"]:
            out.append(f'<text class="lbl" x="{_fmt(float(x) + 4)}" y="{_fmt(float(y) - 4)}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(obj, style=None) -> str:
    """SVG text for a ZigzagCurve or a ZigzagConfig (curve, companion and mirrors)."""
    from .zigzag import ZigzagConfig

    if isinstance(obj, ZigzagConfig):
        return render(obj.curve, obj, style)
    return render(obj, None, style)
