"""Charts of one coweight line: x = stem s, y = slice filtration q.

Dots are order-2 generators, squares are Z_2 generators.  Solid lines are
nonzero rho (horizontal) and h1 (diagonal) products between drawn
generators, arrows mark infinite rho h1-towers, and dashed lines are
hidden extensions (red rho, black eta, orange omega).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .coeff_f2 import NC
from .coeff_z2 import NCEven, TauEven, ThetaOdd
from .e1 import H1, RHO, E1Element, ZPart, e1_multiply
from .grading import TriDegree
from .pages import Page, UncertifiedWindow, divisible_by, homology, is_certified

CELL = 40  # svg pixels per grid unit
HIDDEN_STYLE = {"rho": ("red", "hidden rho"), "eta": ("black", "hidden eta"), "omega": ("orange", "hidden omega")}


@dataclass(frozen=True)
class Glyph:
    s: int
    q: int
    index: int
    name: str
    square: bool
    label: Optional[str] = None


@dataclass(frozen=True)
class Line:
    kind: str  # rho, h1, hidden-rho, hidden-eta, hidden-omega
    a: tuple
    b: tuple


@dataclass
class ChartData:
    coweight: int
    page: str
    glyphs: list[Glyph] = field(default_factory=list)
    lines: list[Line] = field(default_factory=list)
    arrows: list[tuple] = field(default_factory=list)  # (s, q, index) tops of towers

    def is_empty(self) -> bool:
        return not self.glyphs

    def counts(self) -> dict[tuple[int, int], int]:
        out: dict = {}
        for g in self.glyphs:
            out[(g.s, g.q)] = out.get((g.s, g.q), 0) + 1
        return out


def _negative(x: E1Element) -> bool:
    for b, _ in x.items():
        if isinstance(b, ZPart):
            return isinstance(b.z, (NCEven, ThetaOdd))
        return isinstance(b.c, NC)
    return False


def tau_inverse_torsion(t: TriDegree, j: int, w_max: int) -> Optional[int]:
    """1 + the largest k with generator j at t divisible by tau^4k, or None
    when it stays divisible up to the window edge."""
    k = 0
    while t.w + 4 * (k + 1) <= w_max:
        if not divisible_by(t, j, E1Element.of(ZPart(TauEven(2 * (k + 1)), 0))):
            return k + 1
        k += 1
    return None


def _products(t: TriDegree, x: E1Element, factor) -> list[int]:
    y = e1_multiply(E1Element.of(factor), x)
    if y.is_zero():
        return []
    (u,) = y.tridegrees()
    g = homology(u)
    coords = g.coordinates(y)
    return [i for i, (c, o) in enumerate(zip(coords, g.orders())) if (c if o is None else c % o)]


def chart_data(coweight: int, page: Page, which: str = "e2", table=None) -> ChartData:
    """Collect glyphs and lines for a coweight line of ``page``.

    ``which`` is e1, e2 or homotopy; the homotopy chart is the E-infinity
    page with the hidden extensions of ``table`` drawn dashed.
    """
    if which not in ("e1", "e2", "homotopy"):
        raise ValueError(f"unknown page {which!r}")
    if which != "e1" and page.flags and not is_certified(page.flags.values()):
        raise UncertifiedWindow("window is not certified")
    data = ChartData(coweight, which)
    win = page.window
    drawn: dict[TriDegree, int] = {}
    for s in range(win.s_min, win.s_max + 1):
        w = s - coweight
        if not win.contains(s, w):
            continue
        for q, grp in page.column(s, w):
            t = TriDegree(s, q, w)
            drawn[t] = len(grp.generators)
            for j, g in enumerate(grp.generators):
                label = None
                if which != "e1" and coweight % 4 == 0 and g.order is not None and _negative(g.rep):
                    n = tau_inverse_torsion(t, j, win.w_max)
                    label = None if n is None else str(n)
                data.glyphs.append(Glyph(s, q, j, g.name, g.order is None, label))
            if page.has_tower(s, w) and q == page.q_top(s, w):
                data.arrows.extend((s, q, j) for j in range(len(grp.generators)))
    if which == "e1":
        # E1 products are not classes; only the grid is drawn
        return data
    for t, n in drawn.items():
        grp = page.group(t)
        for j in range(n):
            x = grp.generators[j].rep
            for factor, kind, shift in ((RHO, "rho", TriDegree(-1, 0, -1)), (H1, "h1", TriDegree(1, 1, 1))):
                u = t + shift
                if u not in drawn:
                    continue
                for k in _products(t, x, factor):
                    data.lines.append(Line(kind, (t.s, t.q, j), (u.s, u.q, k)))
    if which == "homotopy" and table is not None:
        for r in table:
            if r.kind not in HIDDEN_STYLE:
                continue
            a, b = r.source, r.target
            if a.t not in drawn or b.t not in drawn:
                continue
            ja = [i for i, c in enumerate(a.coords) if c]
            jb = [i for i, c in enumerate(b.coords) if c]
            data.lines.append(Line("hidden-" + r.kind, (a.t.s, a.t.q, ja[0]), (b.t.s, b.t.q, jb[0])))
    return data


# --- svg ------------------------------------------------------------------------


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _legend(x0: float, y0: float) -> list[str]:
    out = ['<g class="legend" font-family="monospace" font-size="11">']
    rows = [
        ("dot", "order 2"),
        ("square", "Z2"),
        ("rho", "rho multiplication"),
        ("h1", "h1 multiplication"),
        ("arrow", "infinite tower"),
    ] + [(k, v[1]) for k, v in HIDDEN_STYLE.items()]
    for i, (key, text) in enumerate(rows):
        y = y0 + 16 * i
        if key == "dot":
            out.append(f'<circle cx="{x0 + 10}" cy="{y}" r="3" fill="black"/>')
        elif key == "square":
            out.append(f'<rect x="{x0 + 7}" y="{y - 3}" width="6" height="6" fill="black"/>')
        elif key == "rho":
            out.append(f'<line x1="{x0}" y1="{y}" x2="{x0 + 20}" y2="{y}" stroke="black"/>')
        elif key == "h1":
            out.append(f'<line x1="{x0}" y1="{y + 5}" x2="{x0 + 20}" y2="{y - 5}" stroke="black"/>')
        elif key == "arrow":
            out.append(f'<line x1="{x0}" y1="{y + 5}" x2="{x0 + 20}" y2="{y - 5}" stroke="black" marker-end="url(#arrow)"/>')
        else:
            color = HIDDEN_STYLE[key][0]
            out.append(f'<line x1="{x0}" y1="{y}" x2="{x0 + 20}" y2="{y}" stroke="{color}" stroke-dasharray="4,3"/>')
        out.append(f'<text x="{x0 + 28}" y="{y + 4}">{_esc(text)}</text>')
    out.append("</g>")
    return out


def render_svg(data: ChartData) -> str:
    counts = data.counts()
    if data.glyphs:
        s_lo = min(g.s for g in data.glyphs)
        s_hi = max(g.s for g in data.glyphs)
        q_hi = max(g.q for g in data.glyphs)
    else:
        s_lo = s_hi = q_hi = 0
    width = (s_hi - s_lo + 2) * CELL + 220
    height = (q_hi + 2) * CELL + 20
    legend_h = 16 * (5 + len(HIDDEN_STYLE)) + 20
    height = max(height, legend_h)

    def pos(s: int, q: int, j: int) -> tuple[float, float]:
        n = counts.get((s, q), 1)
        off = (j - (n - 1) / 2) * min(8.0, CELL * 0.6 / max(n, 1))
        x = (s - s_lo + 1) * CELL + off
        y = height - (q + 1) * CELL
        return round(x, 2), round(y, 2)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="3" orient="auto">'
        '<path d="M0,0 L6,3 L0,6 z" fill="black"/></marker></defs>',
        f'<title>coweight {data.coweight} {data.page}</title>',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    # axes with stem labels
    base = height - CELL / 2
    out.append(f'<line x1="{CELL / 2}" y1="{base}" x2="{(s_hi - s_lo + 1.5) * CELL}" y2="{base}" stroke="#bbb"/>')
    for s in range(s_lo, s_hi + 1):
        x = (s - s_lo + 1) * CELL
        out.append(f'<text x="{x}" y="{base + 14}" font-size="10" text-anchor="middle">{s}</text>')
    for ln in data.lines:
        (x1, y1), (x2, y2) = pos(*ln.a), pos(*ln.b)
        if ln.kind.startswith("hidden-"):
            color = HIDDEN_STYLE[ln.kind[7:]][0]
            out.append(f'<line class="{ln.kind}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-dasharray="4,3"/>')
        else:
            out.append(f'<line class="{ln.kind}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>')
    for s, q, j in data.arrows:
        x, y = pos(s, q, j)
        out.append(f'<line class="tower" x1="{x}" y1="{y}" x2="{x + CELL * 0.6}" y2="{y - CELL * 0.6}" stroke="black" marker-end="url(#arrow)"/>')
    for g in data.glyphs:
        x, y = pos(g.s, g.q, g.index)
        title = f"<title>{_esc(g.name)}</title>"
        if g.square:
            out.append(f'<rect class="square" x="{x - 4}" y="{y - 4}" width="8" height="8" fill="black">{title}</rect>')
        else:
            out.append(f'<circle class="dot" cx="{x}" cy="{y}" r="3.5" fill="black">{title}</circle>')
        if g.label:
            out.append(f'<text x="{x + 5}" y="{y - 5}" font-size="9">{g.label}</text>')
    if data.is_empty():
        out.append(f'<text x="{CELL}" y="{CELL}" font-size="12">empty chart</text>')
    out.extend(_legend((s_hi - s_lo + 2) * CELL + 20, 20))
    out.append("</svg>")
    return "\n".join(out) + "\n"


# --- text -----------------------------------------------------------------------


def render_text(data: ChartData) -> str:
    """Fixed-width grid, top row = highest filtration.  Each cell lists its
    glyphs ("o" dot, "#" square); "-" joins rho-linked cells, "/" h1-linked."""
    head = f"coweight {data.coweight} ({data.page})"
    if data.is_empty():
        return f"{head}\nempty chart\n"
    counts = data.counts()
    s_lo = min(g.s for g in data.glyphs)
    s_hi = max(g.s for g in data.glyphs)
    q_hi = max(g.q for g in data.glyphs)
    width = max(counts.values())
    cells: dict[tuple[int, int], str] = {}
    for g in sorted(data.glyphs, key=lambda g: (g.s, g.q, g.index)):
        cells[(g.s, g.q)] = cells.get((g.s, g.q), "") + ("#" if g.square else "o")
    rho = {(ln.b[0], ln.b[1]) for ln in data.lines if ln.kind == "rho"}  # left end of the link
    h1 = {(ln.a[0], ln.a[1]) for ln in data.lines if ln.kind == "h1"}   # lower end
    tops = {(s, q) for s, q, _ in data.arrows}
    rows = []
    for q in range(q_hi, -1, -1):
        line = f"{q:>3} "
        for s in range(s_lo, s_hi + 1):
            cell = cells.get((s, q), ".")
            if (s, q) in tops:
                cell += "^"
            line += cell.ljust(width + 1)
            line += "-" if (s, q) in rho else " "
        rows.append(line.rstrip())
        if q > 0:
            gap = "    "
            for s in range(s_lo, s_hi + 1):
                gap += " " * (width + 1) + ("/" if (s, q - 1) in h1 else " ")
            rows.append(gap.rstrip())
    axis = "    " + "".join(str(s).ljust(width + 2) for s in range(s_lo, s_hi + 1))
    legend = "legend: o order 2, # Z2, - rho, / h1, ^ infinite tower"
    return "\n".join([head] + rows + [axis.rstrip(), legend]) + "\n"


def emit_chart(coweight: int, page: Page, which: str = "e2", fmt: str = "svg", table=None) -> str:
    data = chart_data(coweight, page, which, table)
    if fmt == "svg":
        return render_svg(data)
    if fmt == "text":
        return render_text(data)
    raise ValueError(f"unknown format {fmt!r}")
