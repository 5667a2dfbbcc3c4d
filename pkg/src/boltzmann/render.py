"""SVG rendering of trajectories, caustics and the circle of second foci."""
from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import quoteattr

import numpy as np

from .errors import DegenerateArc
from .geometry import caustics
from .kepler import SystemParams, WallState, arc_from_state

DEFAULT_STYLES = {
    "wall": "stroke:#000000;stroke-width:2;fill:none",
    "arc": "stroke:#1f77b4;stroke-width:1.2;fill:none",
    "caustic_plus": "stroke:#d62728;stroke-width:1;stroke-dasharray:6,3;fill:none",
    "caustic_minus": "stroke:#2ca02c;stroke-width:1;stroke-dasharray:6,3;fill:none",
    "circle": "stroke:#7f7f7f;stroke-width:0.8;stroke-dasharray:2,2;fill:none",
    "point": "fill:#000000;stroke:none",
}


@dataclass
class RenderSpec:
    viewport: tuple | None = None  # (xmin, xmax, ymin, ymax); None = fit the arcs
    samples_per_arc: int = 64
    width: int = 800
    styles: dict = field(default_factory=lambda: dict(DEFAULT_STYLES))
    output: str | None = None

    def __post_init__(self):
        if self.samples_per_arc < 2:
            raise ValueError("samples_per_arc must be at least 2")
        if self.viewport is not None:
            xmin, xmax, ymin, ymax = self.viewport
            if not (xmax > xmin and ymax > ymin):
                raise ValueError("viewport must be nonempty")


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _fit_viewport(polylines, p: SystemParams) -> tuple:
    pts = [pl for pl in polylines if len(pl)]
    if pts:
        allp = np.vstack(pts)
        xmin, ymin = allp.min(axis=0)
        xmax, ymax = allp.max(axis=0)
    else:
        half = -1.0 / float(p.E) if float(p.E) < 0 else 2.0
        xmin, xmax, ymin, ymax = -half, half, 0.0, max(2.0, half)
    ymin = min(ymin, 0.0)
    xmin, xmax = min(xmin, -1.0), max(xmax, 1.0)
    pad = 0.05 * max(xmax - xmin, ymax - ymin)
    return (xmin - pad, xmax + pad, ymin - pad, ymax + pad)


def render_svg(p: SystemParams, states: list[WallState], spec: RenderSpec | None = None,
               show_caustics: bool = True, show_circle: bool = True) -> str:
    """SVG document with the wall, the arcs leaving each of ``states[:-1]``,
    and optionally both caustics and the circle of second foci."""
    spec = spec or RenderSpec()
    pf = p.as_float()
    arcs = []
    for s in states[:-1]:
        try:
            arcs.append(arc_from_state(s, pf, spec.samples_per_arc).samples)
        except DegenerateArc as exc:
            arcs.append(np.array(exc.segment))
    viewport = spec.viewport or _fit_viewport(arcs, pf)
    xmin, xmax, ymin, ymax = viewport
    height = int(round(spec.width * (ymax - ymin) / (xmax - xmin)))
    extent = 2 * max(abs(xmin), abs(xmax), abs(ymin), abs(ymax))

    def path(points) -> str:
        return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)

    body = [f'<line x1="{_fmt(xmin)}" y1="1" x2="{_fmt(xmax)}" y2="1" '
            f'style={quoteattr(spec.styles["wall"])} vector-effect="non-scaling-stroke"/>']
    if show_caustics and float(pf.E) < 0 and pf.R is not None:
        for key, conic in zip(("caustic_plus", "caustic_minus"), caustics(pf)):
            for line in conic.sample(512, extent):
                body.append(f'<polyline class="{key}" points="{path(line)}" '
                            f'style={quoteattr(spec.styles[key])} vector-effect="non-scaling-stroke"/>')
    if show_circle and pf.R is not None and float(pf.E) < 0:
        radius = float(pf.R) / abs(float(pf.E))
        body.append(f'<circle class="circle" cx="0" cy="2" r="{_fmt(radius)}" '
                    f'style={quoteattr(spec.styles["circle"])} vector-effect="non-scaling-stroke"/>')
    for k, pts in enumerate(arcs):
        body.append(f'<polyline class="arc" data-step="{k}" points="{path(pts)}" '
                    f'style={quoteattr(spec.styles["arc"])} vector-effect="non-scaling-stroke"/>')
    dot = 0.006 * (xmax - xmin)
    for cx, cy in ((0.0, 0.0), (0.0, 2.0)):
        body.append(f'<circle class="focus" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(dot)}" '
                    f'style={quoteattr(spec.styles["point"])}/>')

    # flip the y axis so that x2 grows upwards
    transform = f"matrix(1 0 0 -1 0 {_fmt(ymax + ymin)})"
    title = f"Boltzmann billiard E={float(p.E):.6g} D={float(p.D):.6g}"
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" '
        f'height="{height}" viewBox="{_fmt(xmin)} {_fmt(ymin)} {_fmt(xmax - xmin)} {_fmt(ymax - ymin)}">',
        f"<title>{title}</title>",
        f'<defs><clipPath id="view"><rect x="{_fmt(xmin)}" y="{_fmt(ymin)}" '
        f'width="{_fmt(xmax - xmin)}" height="{_fmt(ymax - ymin)}"/></clipPath></defs>',
        f'<g transform="{transform}" clip-path="url(#view)">',
        *body,
        "</g>",
        "</svg>",
    ]
    return "\n".join(lines) + "\n"

