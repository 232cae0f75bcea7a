"""Resubstitution evaluation: confusion matrices, agreement counts, and
decision-region rasterization.

Confusion counts are indexed (predicted, actual) with column sums equal
to the true group sizes; misclassified observations are reported by
1-based row index in dataset order, matching the classical habit of
quoting individual iris observations by number.
"""

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch


@dataclass(frozen=True)
class ConfusionMatrix:
    counts: np.ndarray       # (s, s) ints, [predicted, actual]
    group_names: tuple
    misclassified: tuple     # of (1-based row index, actual name, predicted name)

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    def trace(self) -> int:
        return int(np.trace(self.counts))

    def misclassified_indices(self) -> tuple:
        return tuple(m[0] for m in self.misclassified)

    def to_text(self) -> str:
        """Aligned table in the classical predicted-by-actual layout."""
        names = list(self.group_names)
        label_w = max(len("predicted"), max(len(n) for n in names), len("total"))
        col_w = max(6, max(len(n) for n in names) + 2)
        lines = []
        header_pad = " " * label_w
        lines.append(header_pad + "  " + "actual".center(col_w * len(names)))
        lines.append("predicted".ljust(label_w) + "  "
                     + "".join(n.rjust(col_w) for n in names)
                     + "total".rjust(col_w))
        for i, name in enumerate(names):
            row = "".join(str(int(c)).rjust(col_w) for c in self.counts[i])
            lines.append(name.ljust(label_w) + "  " + row
                         + str(int(self.counts[i].sum())).rjust(col_w))
        col_tot = "".join(str(int(c)).rjust(col_w) for c in self.counts.sum(axis=0))
        lines.append("total".ljust(label_w) + "  " + col_tot
                     + str(self.n).rjust(col_w))
        return "\n".join(lines)

    def to_record(self) -> dict:
        return {
            "groups": list(self.group_names),
            "counts_predicted_by_actual": self.counts.astype(int).tolist(),
            "n": self.n,
            "correct": self.trace(),
            "misclassified": [
                {"index": i, "actual": a, "predicted": p}
                for i, a, p in self.misclassified],
        }


def confusion_matrix(actual, predicted, group_names) -> ConfusionMatrix:
    """Predicted-by-actual counts for integer label sequences."""
    actual = np.asarray(actual, dtype=int)
    predicted = np.asarray(predicted, dtype=int)
    if actual.shape != predicted.shape:
        raise LengthMismatch(
            f"label lengths differ: {actual.shape[0]} vs {predicted.shape[0]}")
    s = len(group_names)
    if actual.size and (min(actual.min(), predicted.min()) < 0
                        or max(actual.max(), predicted.max()) >= s):
        raise ValueError("labels must index into group_names")
    counts = np.zeros((s, s), dtype=int)
    miss = []
    for row, (a, p) in enumerate(zip(actual, predicted), start=1):
        counts[p, a] += 1
        if p != a:
            miss.append((row, group_names[a], group_names[p]))
    return ConfusionMatrix(counts=counts, group_names=tuple(group_names),
                           misclassified=tuple(miss))


def agreement_count(pred_a, pred_b) -> int:
    """How many positions two allocation sequences agree on."""
    a = np.asarray(pred_a)
    b = np.asarray(pred_b)
    if a.shape != b.shape:
        raise LengthMismatch(f"label lengths differ: {a.shape} vs {b.shape}")
    return int((a == b).sum())


def correct_count(cm: ConfusionMatrix) -> int:
    """Trace of the confusion matrix: correctly allocated observations."""
    return cm.trace()


@dataclass(frozen=True)
class DecisionGrid:
    """Classifier labels sampled at the centers of a regular 2-D raster.

    labels[iy, ix] is the label at x = x_range[0] + (ix + 0.5) dx,
    y = y_range[0] + (iy + 0.5) dy.
    """
    x_range: tuple
    y_range: tuple
    resolution: int
    labels: np.ndarray  # (resolution, resolution) ints

    def cell_center(self, iy: int, ix: int) -> tuple:
        dx = (self.x_range[1] - self.x_range[0]) / self.resolution
        dy = (self.y_range[1] - self.y_range[0]) / self.resolution
        return (self.x_range[0] + (ix + 0.5) * dx,
                self.y_range[0] + (iy + 0.5) * dy)

    def label_at(self, x: float, y: float) -> int:
        """Label of the cell containing (x, y), clamped to the raster."""
        dx = (self.x_range[1] - self.x_range[0]) / self.resolution
        dy = (self.y_range[1] - self.y_range[0]) / self.resolution
        ix = int(np.clip((x - self.x_range[0]) / dx, 0, self.resolution - 1))
        iy = int(np.clip((y - self.y_range[0]) / dy, 0, self.resolution - 1))
        return int(self.labels[iy, ix])


def decision_grid(classify, bounds, resolution: int) -> DecisionGrid:
    """Rasterize a 2-D classifier over the bounds ((x0,x1), (y0,y1))."""
    (x0, x1), (y0, y1) = bounds
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if not all(np.isfinite([x0, x1, y0, y1])) or x1 <= x0 or y1 <= y0:
        raise ValueError("bounds must be finite nonempty ranges")
    dx = (x1 - x0) / resolution
    dy = (y1 - y0) / resolution
    labels = np.empty((resolution, resolution), dtype=int)
    for iy in range(resolution):
        y = y0 + (iy + 0.5) * dy
        for ix in range(resolution):
            labels[iy, ix] = classify(np.array([x0 + (ix + 0.5) * dx, y]))
    return DecisionGrid(x_range=(x0, x1), y_range=(y0, y1),
                        resolution=resolution, labels=labels)
