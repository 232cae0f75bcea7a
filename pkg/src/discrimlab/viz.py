"""Deterministic SVG emitters for the classical discriminant plots:
canonical scatter with confidence ellipses, decision-region rasters,
Fisher-style discriminant histograms, stacked-rectangle mean displays,
scatter matrices, and the class-preserving (between-PCA) projection.

Every emitter formats coordinates with exactly four fractional digits
and builds elements in a fixed order, so identical inputs give
byte-identical documents — golden-file friendly.
"""

from dataclasses import dataclass

import numpy as np

from ._special import chi2_quantile_2df
from .dataset import LabeledDataset, GroupStats
from .discriminant import CanonicalBasis
from .errors import (DegenerateBinning, EmptyGroup, NonPositiveMeasurement,
                     SingularCovariance)
from .evaluate import DecisionGrid
from .linalg import sym_eigen

DEFAULT_COLORS = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02")
DEFAULT_GLYPHS = ("dot", "plus", "triangle")


@dataclass(frozen=True)
class PlotSpec:
    width: int = 640
    height: int = 480
    margin: int = 48
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    glyphs: tuple = DEFAULT_GLYPHS
    colors: tuple = DEFAULT_COLORS

    def glyph(self, j: int) -> str:
        return self.glyphs[j % len(self.glyphs)]

    def color(self, j: int) -> str:
        return self.colors[j % len(self.colors)]


@dataclass(frozen=True)
class Projection2D:
    """Two unit-norm directions and the centered scores along them."""
    basis: np.ndarray       # (p, 2), unit-norm columns
    scores: np.ndarray      # (n, 2)
    basis_origin: str       # "between_pca" | "canonical"


@dataclass(frozen=True)
class Ellipse:
    center: np.ndarray      # (2,)
    semi_axes: np.ndarray   # (2,) descending
    axes: np.ndarray        # (2, 2) unit columns matching semi_axes
    level: float


def _f(x: float) -> str:
    return f"{float(x):.4f}"


def class_preserving_projection(stats: GroupStats, ds: LabeledDataset) -> Projection2D:
    """Project onto the top-2 principal components of the between SSCP B.

    Keeps group separation visible in the plane even when total-variance
    PCA would wash it out.
    """
    if ds.p < 2:
        raise ValueError("need at least two variables to project")
    eig = sym_eigen(stats.b)
    basis = eig.vectors[:, :2]
    scores = (ds.observations - stats.grand_mean) @ basis
    return Projection2D(basis=basis, scores=scores, basis_origin="between_pca")


def canonical_projection(basis: CanonicalBasis, ds: LabeledDataset,
                         grand_mean=None) -> Projection2D:
    """Scores along the first two canonical variates, unit-normalized."""
    if basis.k < 2:
        raise ValueError("need two canonical variates for a 2-D projection")
    cols = []
    for i in range(2):
        a = basis.variates[i].coefficients
        cols.append(a / np.sqrt(a @ a))
    b = np.column_stack(cols)
    center = ds.observations.mean(axis=0) if grand_mean is None else grand_mean
    return Projection2D(basis=b, scores=(ds.observations - center) @ b,
                        basis_origin="canonical")


def confidence_ellipse(mean2d, cov2d, level: float) -> Ellipse:
    """Gaussian probability region: semi-axes sqrt(chi2_2(level) * eigvals)."""
    mean2d = np.asarray(mean2d, dtype=float)
    cov2d = np.asarray(cov2d, dtype=float)
    if cov2d.shape != (2, 2):
        raise ValueError("covariance must be 2x2")
    q = chi2_quantile_2df(level)
    eig = sym_eigen(cov2d)
    if eig.values[-1] <= 0.0:
        raise SingularCovariance("2-D score covariance is not positive definite")
    return Ellipse(center=mean2d, semi_axes=np.sqrt(q * eig.values),
                   axes=eig.vectors, level=level)


# --- pixel mapping ----------------------------------------------------------

class _Frame:
    """Affine data->pixel map for one plotting area (y axis flipped)."""

    def __init__(self, xs, ys, spec: PlotSpec, pad: float = 0.05):
        x0, x1 = float(np.min(xs)), float(np.max(xs))
        y0, y1 = float(np.min(ys)), float(np.max(ys))
        dx = (x1 - x0) or 1.0
        dy = (y1 - y0) or 1.0
        self.x0, self.x1 = x0 - pad * dx, x1 + pad * dx
        self.y0, self.y1 = y0 - pad * dy, y1 + pad * dy
        self.left, self.top = spec.margin, spec.margin
        self.right, self.bottom = spec.width - spec.margin, spec.height - spec.margin
        self.sx = (self.right - self.left) / (self.x1 - self.x0)
        self.sy = (self.bottom - self.top) / (self.y1 - self.y0)

    def px(self, x: float) -> float:
        return self.left + (x - self.x0) * self.sx

    def py(self, y: float) -> float:
        return self.bottom - (y - self.y0) * self.sy


def _marker(glyph: str, x: float, y: float, color: str, size: float = 3.0) -> str:
    if glyph == "dot":
        return (f'<circle class="pt" cx="{_f(x)}" cy="{_f(y)}" r="{_f(size)}" '
                f'fill="{color}"/>')
    if glyph == "plus":
        s = size + 1.0
        return (f'<path class="pt" d="M {_f(x - s)} {_f(y)} L {_f(x + s)} {_f(y)} '
                f'M {_f(x)} {_f(y - s)} L {_f(x)} {_f(y + s)}" '
                f'stroke="{color}" stroke-width="1.5" fill="none"/>')
    if glyph == "triangle":
        s = size + 1.5
        pts = (f"{_f(x)},{_f(y - s)} {_f(x - 0.866 * s)},{_f(y + 0.5 * s)} "
               f"{_f(x + 0.866 * s)},{_f(y + 0.5 * s)}")
        return f'<polygon class="pt" points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
    raise ValueError(f"unknown glyph {glyph!r}")


def _mean_square(x: float, y: float, color: str, side: float = 8.0) -> str:
    h = side / 2.0
    return (f'<rect class="mean" x="{_f(x - h)}" y="{_f(y - h)}" '
            f'width="{_f(side)}" height="{_f(side)}" fill="{color}" stroke="#000000"/>')


def _document(spec: PlotSpec, body: list) -> str:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
    ]
    if spec.title:
        parts.append(f"<title>{spec.title}</title>")
    parts.append(f'<rect class="bg" x="0" y="0" width="{spec.width}" '
                 f'height="{spec.height}" fill="#ffffff"/>')
    parts.extend(body)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _axis_labels(spec: PlotSpec) -> list:
    out = []
    if spec.x_label:
        out.append(f'<text class="axis" x="{spec.width // 2}" '
                   f'y="{spec.height - 10}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="12">{spec.x_label}</text>')
    if spec.y_label:
        out.append(f'<text class="axis" x="14" y="{spec.height // 2}" '
                   f'text-anchor="middle" font-family="sans-serif" font-size="12" '
                   f'transform="rotate(-90 14 {spec.height // 2})">{spec.y_label}</text>')
    return out


def _ellipse_element(ell: Ellipse, frame: _Frame, color: str) -> str:
    # Map the unit circle through (axes * semi_axes) then the pixel frame;
    # an SVG matrix transform keeps this a genuine <ellipse> element even
    # though x and y carry different scale factors.
    m = ell.axes @ np.diag(ell.semi_axes)
    a = m[0, 0] * frame.sx
    b = -m[1, 0] * frame.sy
    c = m[0, 1] * frame.sx
    d = -m[1, 1] * frame.sy
    e = frame.px(ell.center[0])
    f = frame.py(ell.center[1])
    return (f'<ellipse class="region" cx="0" cy="0" rx="1" ry="1" '
            f'transform="matrix({_f(a)} {_f(b)} {_f(c)} {_f(d)} {_f(e)} {_f(f)})" '
            f'fill="none" stroke="{color}" stroke-width="1.2"/>')


# --- emitters ---------------------------------------------------------------

def svg_scatter(proj: Projection2D, labels, spec: PlotSpec = PlotSpec(),
                ellipses: float = None) -> str:
    """Scatter of 2-D scores with group glyphs, mean squares and optional
    per-group probability ellipses at the given level."""
    scores = np.asarray(proj.scores, dtype=float)
    labels = np.asarray(labels, dtype=int)
    frame = _Frame(scores[:, 0], scores[:, 1], spec)
    body = []
    groups = sorted(set(int(v) for v in labels))
    if ellipses is not None:
        for j in groups:
            pts = scores[labels == j]
            if len(pts) < 2:
                continue
            cov = np.cov(pts.T, ddof=1)
            body.append(_ellipse_element(
                confidence_ellipse(pts.mean(axis=0), cov, ellipses),
                frame, spec.color(j)))
    for j in groups:
        for x, y in scores[labels == j]:
            body.append(_marker(spec.glyph(j), frame.px(x), frame.py(y), spec.color(j)))
    for j in groups:
        m = scores[labels == j].mean(axis=0)
        body.append(_mean_square(frame.px(m[0]), frame.py(m[1]), spec.color(j)))
    body.extend(_axis_labels(spec))
    return _document(spec, body)


def svg_decision_regions(grid: DecisionGrid, ds: LabeledDataset,
                         spec: PlotSpec = PlotSpec()) -> str:
    """Raster of classifier regions with the data and means overlaid.

    Horizontal runs of same-label cells merge into single rectangles to
    keep files small; region fill is translucent so markers stay visible.
    """
    frame = _Frame(np.array(grid.x_range), np.array(grid.y_range), spec, pad=0.0)
    res = grid.resolution
    dx = (grid.x_range[1] - grid.x_range[0]) / res
    dy = (grid.y_range[1] - grid.y_range[0]) / res
    body = []
    for iy in range(res):
        ix = 0
        while ix < res:
            j = int(grid.labels[iy, ix])
            run = ix
            while run + 1 < res and int(grid.labels[iy, run + 1]) == j:
                run += 1
            x_left = grid.x_range[0] + ix * dx
            x_right = grid.x_range[0] + (run + 1) * dx
            y_low = grid.y_range[0] + iy * dy
            y_high = y_low + dy
            body.append(
                f'<rect class="cell" x="{_f(frame.px(x_left))}" '
                f'y="{_f(frame.py(y_high))}" '
                f'width="{_f((x_right - x_left) * frame.sx)}" '
                f'height="{_f(dy * frame.sy)}" '
                f'fill="{spec.color(j)}" fill-opacity="0.35"/>')
            ix = run + 1
    if ds is not None:
        X = ds.observations
        if X.shape[1] != 2:
            raise ValueError("overlay dataset must have exactly 2 variables")
        for j in range(ds.s):
            for x, y in ds.group_rows(j):
                body.append(_marker(spec.glyph(j), frame.px(x), frame.py(y),
                                    spec.color(j)))
        for j in range(ds.s):
            m = ds.group_rows(j).mean(axis=0)
            body.append(_mean_square(frame.px(m[0]), frame.py(m[1]), spec.color(j)))
    body.extend(_axis_labels(spec))
    return _document(spec, body)


def svg_histogram_panels(scores, cell_width: float, spec: PlotSpec = PlotSpec(),
                         group_names=None) -> str:
    """Fisher-style stacked-square histograms of discriminant scores.

    One panel per group, vertically stacked, sharing the score axis; each
    observation is one square.  The first group's cells are drawn at half
    width and double height (the classical setosa convention; per-square
    area is preserved).  A top axis carries an arrow at each group mean
    and, for three groups, a thicker arrow at the hypothesis-implied
    middle mean (mean_1 + 2 mean_3) / 3.
    """
    if cell_width <= 0:
        raise DegenerateBinning("cell width must be positive")
    scores = [np.asarray(g, dtype=float) for g in scores]
    if any(len(g) == 0 for g in scores):
        raise EmptyGroup("every group needs at least one score")
    s = len(scores)
    allv = np.concatenate(scores)
    lo = np.floor(allv.min() / cell_width) * cell_width
    hi = np.ceil(allv.max() / cell_width) * cell_width
    if hi == lo:
        hi = lo + cell_width
    frame = _Frame(np.array([lo, hi]), np.array([0.0, 1.0]), spec, pad=0.02)
    axis_h = 34.0
    panel_h = (frame.bottom - frame.top - axis_h) / s
    side = cell_width * frame.sx          # regular square: side in px
    body = []

    means = [float(g.mean()) for g in scores]
    axis_y = frame.top + axis_h - 8.0
    body.append(f'<line class="axis" x1="{_f(frame.left)}" y1="{_f(axis_y)}" '
                f'x2="{_f(frame.right)}" y2="{_f(axis_y)}" stroke="#000000"/>')

    def arrow(x, color, thick):
        w = 2.5 if thick else 1.0
        return (f'<path class="arrow{" hyp" if thick else ""}" '
                f'd="M {_f(x)} {_f(axis_y - 14.0)} L {_f(x)} {_f(axis_y)} '
                f'M {_f(x - 3.0)} {_f(axis_y - 5.0)} L {_f(x)} {_f(axis_y)} '
                f'L {_f(x + 3.0)} {_f(axis_y - 5.0)}" stroke="{color}" '
                f'stroke-width="{_f(w)}" fill="none"/>')

    for j, m in enumerate(means):
        body.append(arrow(frame.px(m), spec.color(j), thick=False))
    if s == 3:
        hyp = (means[0] + 2.0 * means[2]) / 3.0
        body.append(arrow(frame.px(hyp), "#000000", thick=True))

    for j, g in enumerate(scores):
        base = frame.top + axis_h + (j + 1) * panel_h - 6.0
        half = j == 0  # classical convention: first group half-width cells
        w = side / 2.0 if half else side
        h = side * 2.0 if half else side
        body.append(f'<line class="base" x1="{_f(frame.left)}" y1="{_f(base)}" '
                    f'x2="{_f(frame.right)}" y2="{_f(base)}" stroke="#888888"/>')
        counts = {}
        for v in g:
            b = int(np.floor(v / cell_width))
            k = counts.get(b, 0)
            counts[b] = k + 1
            x_left = frame.px(b * cell_width)
            body.append(
                f'<rect class="sq" x="{_f(x_left)}" y="{_f(base - (k + 1) * h)}" '
                f'width="{_f(w)}" height="{_f(h)}" fill="{spec.color(j)}" '
                f'stroke="#ffffff" stroke-width="0.5"/>')
        if group_names:
            body.append(f'<text class="panel" x="{_f(frame.left + 4.0)}" '
                        f'y="{_f(base - panel_h + 18.0)}" font-family="sans-serif" '
                        f'font-size="11">{group_names[j]}</text>')
    body.extend(_axis_labels(spec))
    return _document(spec, body)


def svg_stacked_rectangles(means, overlay=None, overlay_group: int = 1,
                           spec: PlotSpec = PlotSpec()) -> str:
    """Stacked-rectangle display of 4-vector means (sepal over petal).

    For each group the sepal rectangle (width = sepal width, height =
    sepal length) sits on top and the petal rectangle (width = petal
    width, height = petal length) hangs below the shared edge.  An
    optional dashed overlay pair (e.g. hypothesis-implied means) is drawn
    at `overlay_group`'s position.  All rectangles share one scale.
    """
    means = [np.asarray(m, dtype=float) for m in means]
    for m in means:
        if m.shape != (4,) or np.any(m <= 0.0):
            raise NonPositiveMeasurement(
                "each mean must hold 4 positive measurements")
    if overlay is not None:
        overlay = np.asarray(overlay, dtype=float)
        if overlay.shape != (4,) or np.any(overlay <= 0.0):
            raise NonPositiveMeasurement("overlay must hold 4 positive measurements")
        if not 0 <= overlay_group < len(means):
            raise ValueError("overlay_group outside the group range")
    s = len(means)
    tallest = max(m[0] + m[2] for m in means)
    widest = max(max(m[1], m[3]) for m in means)
    if overlay is not None:
        tallest = max(tallest, overlay[0] + overlay[2])
        widest = max(widest, overlay[1], overlay[3])
    inner_w = spec.width - 2 * spec.margin
    inner_h = spec.height - 2 * spec.margin
    slot = inner_w / s
    scale = min(inner_h / tallest, (slot * 0.8) / widest)

    def pair(cx, m, cls, style):
        sep_w, sep_h = m[1] * scale, m[0] * scale
        pet_w, pet_h = m[3] * scale, m[2] * scale
        join = spec.margin + (tallest - (m[0] + m[2])) * scale / 2.0 + sep_h
        return [
            f'<rect class="{cls} sepal" x="{_f(cx - sep_w / 2.0)}" '
            f'y="{_f(join - sep_h)}" width="{_f(sep_w)}" height="{_f(sep_h)}" '
            f'{style}/>',
            f'<rect class="{cls} petal" x="{_f(cx - pet_w / 2.0)}" '
            f'y="{_f(join)}" width="{_f(pet_w)}" height="{_f(pet_h)}" '
            f'{style}/>',
        ]

    body = []
    for j, m in enumerate(means):
        cx = spec.margin + (j + 0.5) * slot
        style = f'fill="{spec.color(j)}" fill-opacity="0.45" stroke="#333333"'
        body.extend(pair(cx, m, "group", style))
    if overlay is not None:
        cx = spec.margin + (overlay_group + 0.5) * slot
        style = ('fill="none" stroke="#333333" stroke-width="1.5" '
                 'stroke-dasharray="6 4"')
        body.extend(pair(cx, overlay, "overlay", style))
    body.extend(_axis_labels(spec))
    return _document(spec, body)


def svg_scatter_matrix(ds: LabeledDataset, spec: PlotSpec = PlotSpec()) -> str:
    """p x p matrix of pairwise scatter panels; names on the diagonal."""
    if ds.p < 2:
        raise ValueError("need at least two variables for a scatter matrix")
    p = ds.p
    inner_w = spec.width - 2 * spec.margin
    inner_h = spec.height - 2 * spec.margin
    cell_w = inner_w / p
    cell_h = inner_h / p
    gap = 6.0
    X = ds.observations
    body = []
    for r in range(p):
        for c in range(p):
            left = spec.margin + c * cell_w
            top = spec.margin + r * cell_h
            body.append(f'<rect class="panel" x="{_f(left)}" y="{_f(top)}" '
                        f'width="{_f(cell_w)}" height="{_f(cell_h)}" '
                        f'fill="none" stroke="#cccccc"/>')
            if r == c:
                body.append(f'<text class="var" x="{_f(left + cell_w / 2.0)}" '
                            f'y="{_f(top + cell_h / 2.0)}" text-anchor="middle" '
                            f'font-family="sans-serif" font-size="11">'
                            f'{ds.variable_names[r]}</text>')
                continue
            xs, ys = X[:, c], X[:, r]
            x0, x1 = xs.min(), xs.max()
            y0, y1 = ys.min(), ys.max()
            dx = (x1 - x0) or 1.0
            dy = (y1 - y0) or 1.0
            for j in range(ds.s):
                rows = ds.labels == j
                for x, y in zip(xs[rows], ys[rows]):
                    px = left + gap + (x - x0) / dx * (cell_w - 2 * gap)
                    py = top + cell_h - gap - (y - y0) / dy * (cell_h - 2 * gap)
                    body.append(_marker(spec.glyph(j), px, py, spec.color(j),
                                        size=1.6))
    return _document(spec, body)


def plot_filename(kind: str, dataset: str, variant: str) -> str:
    """The package's file naming convention for emitted plots."""
    return f"{kind}-{dataset}-{variant}.svg"
