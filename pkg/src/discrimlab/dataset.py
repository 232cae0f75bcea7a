"""Labeled multivariate data: ingestion, the embedded iris table, group
statistics, and derived-variable transforms (subsets, ratios, products).

Row order is significant everywhere: misclassification reports refer to
1-based global row indices in dataset order (for iris: setosa 1-50,
versicolor 51-100, virginica 101-150).
"""

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._iris import _IRIS_TABLE
from .errors import (DegenerateGroup, DivisionByZero, EmptyGroup,
                     IndexOutOfRange, MissingColumn, ParseError)


@dataclass(frozen=True)
class LabeledDataset:
    """n x p observations with a group label per row.

    labels hold integer indices into group_names (groups in first-appearance
    order).  Units ride along per variable ("cm" for iris, "" when unknown
    or dimensionless) so transforms can compose them.
    """
    observations: np.ndarray
    labels: np.ndarray
    variable_names: tuple
    group_names: tuple
    units: tuple = ()

    def __post_init__(self):
        obs = np.asarray(self.observations, dtype=float)
        lab = np.asarray(self.labels, dtype=int)
        object.__setattr__(self, "observations", obs)
        object.__setattr__(self, "labels", lab)
        if obs.ndim != 2 or obs.shape[0] < 1 or obs.shape[1] < 1:
            raise ValueError("observations must be a nonempty n x p matrix")
        if not np.all(np.isfinite(obs)):
            raise ValueError("observation entries must be finite")
        if lab.shape != (obs.shape[0],):
            raise ValueError("one label per row required")
        s = len(self.group_names)
        if s < 1:
            raise ValueError("at least one group required")
        if lab.min() < 0 or lab.max() >= s:
            raise ValueError("labels must index into group_names")
        for j in range(s):
            if not np.any(lab == j):
                raise EmptyGroup(f"group {self.group_names[j]!r} has no rows")
        if len(self.variable_names) != obs.shape[1]:
            raise ValueError("one name per variable required")
        if not self.units:
            object.__setattr__(self, "units", ("",) * obs.shape[1])
        elif len(self.units) != obs.shape[1]:
            raise ValueError("one unit per variable required")

    @property
    def n(self):
        return self.observations.shape[0]

    @property
    def p(self):
        return self.observations.shape[1]

    @property
    def s(self):
        return len(self.group_names)

    def group_rows(self, j: int) -> np.ndarray:
        """Observation rows of group j, in dataset order."""
        return self.observations[self.labels == j]


@dataclass(frozen=True)
class GroupStats:
    """Per-group counts, means and covariances plus the pooled W/B split.

    W is the within-group SSCP (about group means), B the between-group
    SSCP (about the grand mean); W + B equals the total SSCP.  Sj carries
    the covariance under the requested divisor policy; the raw SSCP of a
    group is recovered by group_sscp(), independent of policy.
    """
    counts: tuple
    means: np.ndarray        # (s, p)
    covariances: tuple       # s matrices (p, p)
    w: np.ndarray            # (p, p) within SSCP
    b: np.ndarray            # (p, p) between SSCP
    grand_mean: np.ndarray   # (p,)
    divisor_policy: str      # "ml" | "unbiased"
    group_names: tuple

    @property
    def n(self):
        return int(sum(self.counts))

    @property
    def s(self):
        return len(self.counts)

    @property
    def p(self):
        return self.means.shape[1]

    def group_sscp(self, j: int) -> np.ndarray:
        divisor = self.counts[j] if self.divisor_policy == "ml" else self.counts[j] - 1
        return self.covariances[j] * divisor

    def pooled_covariance(self) -> np.ndarray:
        """W / (n - s), the usual pooled (equal-covariance) estimate."""
        return self.w / (self.n - self.s)


# --- construction -----------------------------------------------------------

def embedded_iris() -> LabeledDataset:
    """The 150-row iris data in the standard published row order."""
    rows, labels, names = [], [], []
    for line in _IRIS_TABLE.strip().splitlines():
        parts = line.split()
        rows.append([float(v) for v in parts[:4]])
        if parts[4] not in names:
            names.append(parts[4])
        labels.append(names.index(parts[4]))
    return LabeledDataset(
        observations=np.array(rows),
        labels=np.array(labels),
        variable_names=("sepal length", "sepal width", "petal length", "petal width"),
        group_names=tuple(names),
        units=("cm", "cm", "cm", "cm"),
    )


def load_csv(source, label_column: str) -> LabeledDataset:
    """Read a labeled dataset from CSV (header row, comma, UTF-8).

    `source` may be a path or an open binary/text stream.  Rows keep file
    order; groups are numbered by first appearance.  All non-label columns
    must parse as numbers.
    """
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            raw = fh.read()
    else:
        raw = source.read()
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")

    reader = csv.reader(io.StringIO(raw))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty file: no header row")
    header = [h.strip() for h in header]
    if label_column not in header:
        raise MissingColumn(f"label column {label_column!r} not in header {header}")
    label_idx = header.index(label_column)
    var_names = tuple(h for i, h in enumerate(header) if i != label_idx)

    rows, labels, names = [], [], []
    for lineno, rec in enumerate(reader, start=2):
        if not rec:
            continue
        if len(rec) != len(header):
            raise ParseError(f"line {lineno}: expected {len(header)} fields, got {len(rec)}")
        vals = []
        for i, cell in enumerate(rec):
            if i == label_idx:
                continue
            try:
                vals.append(float(cell))
            except ValueError:
                raise ParseError(f"line {lineno}: {cell!r} is not numeric")
        g = rec[label_idx].strip()
        if g not in names:
            names.append(g)
        rows.append(vals)
        labels.append(names.index(g))
    if not rows:
        raise ParseError("no data rows")
    return LabeledDataset(np.array(rows), np.array(labels), var_names, tuple(names))


# --- group statistics -------------------------------------------------------

def group_stats(ds: LabeledDataset, divisor_policy: str = "unbiased") -> GroupStats:
    """Means, covariances and the W/B SSCP decomposition of a dataset.

    divisor_policy "ml" divides each group covariance by n_j, "unbiased"
    by n_j - 1.  W and B are divisor-free sums of squares either way.
    """
    if divisor_policy not in ("ml", "unbiased"):
        raise ValueError(f"unknown divisor policy {divisor_policy!r}")
    X = ds.observations
    grand = X.mean(axis=0)
    counts, means, covs = [], [], []
    W = np.zeros((ds.p, ds.p))
    B = np.zeros((ds.p, ds.p))
    for j in range(ds.s):
        G = ds.group_rows(j)
        nj = len(G)
        if nj < 2:
            raise DegenerateGroup(
                f"group {ds.group_names[j]!r} has {nj} row(s); need >= 2")
        m = G.mean(axis=0)
        C = G - m
        sscp = C.T @ C
        W += sscp
        d = m - grand
        B += nj * np.outer(d, d)
        counts.append(nj)
        means.append(m)
        covs.append(sscp / (nj if divisor_policy == "ml" else nj - 1))
    return GroupStats(
        counts=tuple(counts), means=np.array(means), covariances=tuple(covs),
        w=W, b=B, grand_mean=grand, divisor_policy=divisor_policy,
        group_names=ds.group_names)


# --- derived-variable transforms --------------------------------------------

@dataclass(frozen=True)
class Select:
    """Keep the 1-based variable indices, in the given order."""
    indices: tuple


@dataclass(frozen=True)
class Ratios:
    """New variables a/b from 1-based (numerator, denominator) index pairs."""
    pairs: tuple


@dataclass(frozen=True)
class Products:
    """New variables a*b from 1-based index pairs."""
    pairs: tuple


def _check_index(i: int, p: int):
    if not 1 <= i <= p:
        raise IndexOutOfRange(f"variable index {i} outside 1..{p}")


def _ratio_unit(ua: str, ub: str) -> str:
    if ua == ub:
        return ""  # dimensionless
    return f"{ua}/{ub}" if ua or ub else ""


def _product_unit(ua: str, ub: str) -> str:
    if ua == ub and ua:
        return f"{ua}^2"
    return f"{ua}*{ub}" if ua or ub else ""


def transform(ds: LabeledDataset, spec) -> LabeledDataset:
    """Build a derived-variable dataset: Select, Ratios or Products.

    Labels and row order are preserved; names compose as "a/b" or "a*b".
    Ratios raise DivisionByZero if any denominator entry is exactly 0.
    """
    X = ds.observations
    if isinstance(spec, Select):
        cols, names, units = [], [], []
        for i in spec.indices:
            _check_index(i, ds.p)
            cols.append(X[:, i - 1])
            names.append(ds.variable_names[i - 1])
            units.append(ds.units[i - 1])
    elif isinstance(spec, Ratios):
        cols, names, units = [], [], []
        for a, b in spec.pairs:
            _check_index(a, ds.p)
            _check_index(b, ds.p)
            den = X[:, b - 1]
            if np.any(den == 0.0):
                raise DivisionByZero(
                    f"denominator variable {ds.variable_names[b - 1]!r} has a zero entry")
            cols.append(X[:, a - 1] / den)
            names.append(f"{ds.variable_names[a - 1]}/{ds.variable_names[b - 1]}")
            units.append(_ratio_unit(ds.units[a - 1], ds.units[b - 1]))
    elif isinstance(spec, Products):
        cols, names, units = [], [], []
        for a, b in spec.pairs:
            _check_index(a, ds.p)
            _check_index(b, ds.p)
            cols.append(X[:, a - 1] * X[:, b - 1])
            names.append(f"{ds.variable_names[a - 1]}*{ds.variable_names[b - 1]}")
            units.append(_product_unit(ds.units[a - 1], ds.units[b - 1]))
    else:
        raise ValueError(f"unknown transform spec {spec!r}")
    return LabeledDataset(np.column_stack(cols), ds.labels.copy(),
                          tuple(names), ds.group_names, tuple(units))
