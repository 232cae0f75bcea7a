"""Nonparametric classifiers: a product-Gaussian kernel density rule and
a CART-style binary classification tree.

Both are deliberately plain.  The kernel uses per-group, per-variable
normal-reference bandwidths by default; the tree greedily minimizes
weighted Gini impurity over midpoint thresholds with fixed, documented
tie-breaks so that refitting is bit-for-bit reproducible.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .dataset import LabeledDataset
from .errors import DegenerateVariable, EmptyGroup
from .linalg import as_vector

_SQRT_2PI = math.sqrt(2.0 * math.pi)


# --- kernel classifier ------------------------------------------------------

@dataclass(frozen=True)
class KernelClassifier:
    groups: tuple        # per group: (n_j, p) training rows
    bandwidths: np.ndarray  # (s, p), all positive
    group_names: tuple

    @property
    def p(self) -> int:
        return self.groups[0].shape[1]


def reference_bandwidths(rows: np.ndarray) -> np.ndarray:
    """Normal-reference rule h_v = sd_v * (4 / ((p+2) n))^(1/(p+4))."""
    n, p = rows.shape
    sd = rows.std(axis=0, ddof=1)
    return sd * (4.0 / ((p + 2) * n)) ** (1.0 / (p + 4))


def kernel_fit(ds: LabeledDataset, bandwidth=None) -> KernelClassifier:
    """Fit the product-Gaussian kernel classifier.

    bandwidth None applies the normal-reference rule per group and
    variable; otherwise pass explicit positive values — a (p,) vector
    shared by all groups or an (s, p) matrix.
    """
    groups, hs = [], []
    for j in range(ds.s):
        G = ds.group_rows(j)
        if len(G) == 0:
            raise EmptyGroup(f"group {ds.group_names[j]!r} is empty")
        if len(G) < 2:
            raise EmptyGroup(
                f"group {ds.group_names[j]!r} needs >= 2 rows for a density")
        if bandwidth is None:
            h = reference_bandwidths(G)
        else:
            h = np.broadcast_to(np.asarray(bandwidth, dtype=float),
                                (ds.s, ds.p))[j].copy()
        if np.any(h <= 0.0) or not np.all(np.isfinite(h)):
            bad = ds.variable_names[int(np.argmin(h))]
            raise DegenerateVariable(
                f"nonpositive bandwidth for variable {bad!r} in group "
                f"{ds.group_names[j]!r} (zero spread?)")
        groups.append(G)
        hs.append(h)
    return KernelClassifier(groups=tuple(groups), bandwidths=np.array(hs),
                            group_names=ds.group_names)


def kernel_density(kc: KernelClassifier, j: int, x) -> float:
    """Density estimate of group j at x: mean of product-Gaussian kernels."""
    x = as_vector(x)
    G = kc.groups[j]
    h = kc.bandwidths[j]
    z = (x - G) / h
    kern = np.exp(-0.5 * (z * z)).prod(axis=1) / (_SQRT_2PI ** kc.p * h.prod())
    return float(kern.mean())


def kernel_classify(kc: KernelClassifier, x) -> int:
    """Allocate x to the group with the highest estimated density."""
    dens = np.array([kernel_density(kc, j, x) for j in range(len(kc.groups))])
    return int(np.argmax(dens))


# --- classification tree ----------------------------------------------------

@dataclass(frozen=True)
class TreeNode:
    counts: np.ndarray          # class counts of the training subset
    prediction: int             # majority class, ties to lowest index
    variable: int = -1          # split variable (-1 for a leaf)
    threshold: float = 0.0
    left: "TreeNode" = None     # subset with x[variable] <= threshold
    right: "TreeNode" = None

    @property
    def is_leaf(self) -> bool:
        return self.variable < 0


@dataclass(frozen=True)
class DecisionTree:
    root: TreeNode
    group_names: tuple
    max_depth: int   # None = unlimited
    min_leaf: int

    def to_dict(self) -> dict:
        def walk(node):
            if node.is_leaf:
                return {"class": self.group_names[node.prediction],
                        "counts": node.counts.astype(int).tolist()}
            return {"variable": node.variable + 1,  # 1-based, as reported
                    "threshold": node.threshold,
                    "left": walk(node.left),
                    "right": walk(node.right)}
        return walk(self.root)

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def depth(self) -> int:
        def d(node):
            return 0 if node.is_leaf else 1 + max(d(node.left), d(node.right))
        return d(self.root)


def _gini(counts: np.ndarray) -> float:
    n = counts.sum()
    if n == 0:
        return 0.0
    f = counts / n
    return float(1.0 - (f * f).sum())


def _best_split(X, y, s, min_leaf):
    """Lowest-impurity split, ties to lowest variable then lowest threshold."""
    n = len(y)
    parent = _gini(np.bincount(y, minlength=s)) * n
    best = None  # (weighted impurity, variable, threshold)
    for v in range(X.shape[1]):
        order = np.argsort(X[:, v], kind="stable")
        xs = X[order, v]
        ys = y[order]
        left = np.zeros(s)
        right = np.bincount(ys, minlength=s).astype(float)
        for i in range(n - 1):
            left[ys[i]] += 1
            right[ys[i]] -= 1
            if xs[i] == xs[i + 1]:
                continue
            nl = i + 1
            nr = n - nl
            if nl < min_leaf or nr < min_leaf:
                continue
            w = _gini(left) * nl + _gini(right) * nr
            if parent - w <= 1e-12:
                continue
            if best is None or w < best[0] - 1e-12:
                best = (w, v, (xs[i] + xs[i + 1]) / 2.0)
    return best


def tree_fit(ds: LabeledDataset, max_depth: int = 6, min_leaf: int = 5) -> DecisionTree:
    """Grow a Gini classification tree with midpoint thresholds.

    Splitting stops at max_depth (None for unlimited), when a child would
    fall under min_leaf, when a node is pure, or when no split improves
    impurity.  Deterministic for identical inputs.
    """
    if min_leaf < 1:
        raise ValueError("min_leaf must be >= 1")
    if ds.n < 2 * min_leaf:
        raise ValueError(f"need at least {2 * min_leaf} rows to attempt a split")
    s = ds.s

    def grow(X, y, depth):
        counts = np.bincount(y, minlength=s)
        node_pred = int(np.argmax(counts))  # argmax ties -> lowest index
        depth_ok = max_depth is None or depth < max_depth
        if not depth_ok or len(y) < 2 * min_leaf or _gini(counts) == 0.0:
            return TreeNode(counts=counts, prediction=node_pred)
        found = _best_split(X, y, s, min_leaf)
        if found is None:
            return TreeNode(counts=counts, prediction=node_pred)
        _, v, t = found
        mask = X[:, v] <= t
        return TreeNode(counts=counts, prediction=node_pred,
                        variable=v, threshold=t,
                        left=grow(X[mask], y[mask], depth + 1),
                        right=grow(X[~mask], y[~mask], depth + 1))

    root = grow(ds.observations, ds.labels, 0)
    return DecisionTree(root=root, group_names=ds.group_names,
                        max_depth=max_depth, min_leaf=min_leaf)


def tree_classify(t: DecisionTree, x) -> int:
    """Descend the tree: left iff x[variable] <= threshold; return leaf class."""
    x = as_vector(x)
    node = t.root
    while not node.is_leaf:
        node = node.left if x[node.variable] <= node.threshold else node.right
    return node.prediction
