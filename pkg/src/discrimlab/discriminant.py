"""Parametric discriminants: canonical variates, nearest-projected-mean
allocation (Rules I/II), Gaussian ML rules, the optimal mean contrast,
the genetic discriminant (a linear discriminant in a pre-specified
direction), the Anderson index, and direction comparison.

Conventions used throughout:

* canonical variates are eigenvectors of (B, W); the default scaling is
  a' (W/(n-s)) a = 1 ("within_variance_one"), signs fixed so the
  largest-magnitude coefficient is positive;
* the genetic discriminant uses the integer-scaled contrast and the raw
  within-group SSCP matrices, then reports coefficients multiplied by
  100 — the scaling under which the classical printed values live;
* every argmin/argmax tie breaks toward the lowest group index.
"""

from dataclasses import dataclass

import numpy as np

from .dataset import GroupStats
from .errors import (DegenerateConstraint, DivisionByZero,
                     NotPositiveDefinite, SingularCovariance, SingularWithin,
                     ZeroVector)
from .linalg import (as_vector, gen_eigen_spd, invert_spd, log_det_spd,
                     solve_spd, sym_eigen)

NORMALIZATIONS = ("within_variance_one", "unit_norm", "w_inverse_one",
                  "paper_scale_x100")


@dataclass(frozen=True)
class LinearDiscriminant:
    """A single linear score lambda' x with its per-group projections."""
    coefficients: np.ndarray          # (p,)
    projected_group_means: np.ndarray  # (s,)
    group_names: tuple
    normalization: str
    projected_group_sds: np.ndarray = None  # (s,), optional

    def project(self, x) -> float:
        return float(self.coefficients @ as_vector(x))

    def project_rows(self, rows) -> np.ndarray:
        return np.asarray(rows, dtype=float) @ self.coefficients

    def rescaled(self, factor: float, normalization: str) -> "LinearDiscriminant":
        sds = None if self.projected_group_sds is None \
            else self.projected_group_sds * abs(factor)
        return LinearDiscriminant(
            coefficients=self.coefficients * factor,
            projected_group_means=self.projected_group_means * factor,
            group_names=self.group_names, normalization=normalization,
            projected_group_sds=sds)

    def unit_norm(self) -> "LinearDiscriminant":
        """The same direction scaled to a unit coefficient vector."""
        norm = float(np.sqrt(self.coefficients @ self.coefficients))
        return self.rescaled(1.0 / norm, "unit_norm")


@dataclass(frozen=True)
class CanonicalBasis:
    """Canonical variates ordered by eigenvalue; k = min(p, s-1)."""
    variates: tuple            # of LinearDiscriminant
    eigenvalues: np.ndarray    # (k,) descending, nonnegative
    k: int

    @property
    def first(self) -> LinearDiscriminant:
        return self.variates[0]


@dataclass(frozen=True)
class Contrast:
    """Group-mean contrast alpha (sum 0, unit sum of squares)."""
    alpha: np.ndarray
    constraint_used: np.ndarray

    def integer_form(self) -> np.ndarray:
        """alpha rescaled so its smallest nonzero magnitude is 1."""
        nz = np.abs(self.alpha[np.abs(self.alpha) > 1e-12])
        return self.alpha / nz.min()


def _fix_sign_largest(v: np.ndarray) -> np.ndarray:
    return -v if v[np.argmax(np.abs(v))] < 0 else v


def canonical_variates(stats: GroupStats,
                       normalization: str = "within_variance_one") -> CanonicalBasis:
    """Eigenvectors of (B, W) as a basis of discriminant directions.

    normalization: "within_variance_one" scales each a so that
    a'(W/(n-s))a = 1; "unit_norm" to unit length; "w_inverse_one" to
    a' W^-1 a = 1 (the classical ratio-criterion side constraint).
    """
    if normalization not in ("within_variance_one", "unit_norm", "w_inverse_one"):
        raise ValueError(f"unknown normalization {normalization!r}")
    if stats.s < 2:
        raise ValueError("canonical variates need at least two groups")
    try:
        eig = gen_eigen_spd(stats.b, stats.w)
    except NotPositiveDefinite as exc:
        raise SingularWithin(f"within-group SSCP not positive definite: {exc}")
    k = min(stats.p, stats.s - 1)
    pooled = stats.w / (stats.n - stats.s)
    w_inv = invert_spd(stats.w) if normalization == "w_inverse_one" else None
    variates = []
    for i in range(k):
        a = eig.vectors[:, i]
        if normalization == "within_variance_one":
            a = a / np.sqrt(a @ pooled @ a)
        elif normalization == "w_inverse_one":
            a = a / np.sqrt(a @ w_inv @ a)
        a = _fix_sign_largest(a)
        variates.append(LinearDiscriminant(
            coefficients=a,
            projected_group_means=stats.means @ a,
            group_names=stats.group_names,
            normalization=normalization,
            projected_group_sds=np.array(
                [np.sqrt(a @ stats.covariances[j] @ a) for j in range(stats.s)])))
    return CanonicalBasis(variates=tuple(variates),
                          eigenvalues=eig.values[:k].copy(), k=k)


def nearest_projected_mean_classify(ld: LinearDiscriminant, x) -> int:
    """Rule I/II: allocate x to the group with the closest projected mean."""
    score = ld.project(x)
    return int(np.argmin(np.abs(score - ld.projected_group_means)))


def gaussian_ml_rule(stats: GroupStats, covariance: str = "equal"):
    """Build a classifier callable for the Gaussian ML rule.

    "equal" uses the pooled covariance W/(n-s) (linear boundaries);
    "unequal" uses each group's own covariance with its log-determinant
    penalty (quadratic boundaries).  Equal priors; ties to lowest index.
    """
    if covariance not in ("equal", "unequal"):
        raise ValueError(f"unknown covariance mode {covariance!r}")
    means = stats.means
    if covariance == "equal":
        try:
            pooled_inv = invert_spd(stats.pooled_covariance())
        except NotPositiveDefinite as exc:
            raise SingularCovariance(f"pooled covariance singular: {exc}")

        def classify(x):
            d = means - as_vector(x)
            scores = -0.5 * np.einsum("jk,kl,jl->j", d, pooled_inv, d)
            return int(np.argmax(scores))
    else:
        invs, logdets = [], []
        for j in range(stats.s):
            try:
                invs.append(invert_spd(stats.covariances[j]))
                logdets.append(log_det_spd(stats.covariances[j]))
            except NotPositiveDefinite as exc:
                raise SingularCovariance(
                    f"covariance of group {stats.group_names[j]!r} singular: {exc}")

        def classify(x):
            xv = as_vector(x)
            scores = np.array([
                -0.5 * logdets[j] - 0.5 * (xv - means[j]) @ invs[j] @ (xv - means[j])
                for j in range(stats.s)])
            return int(np.argmax(scores))

    return classify


def gaussian_ml_classify(stats: GroupStats, x, covariance: str = "equal") -> int:
    """One-shot Gaussian ML allocation (see gaussian_ml_rule)."""
    return gaussian_ml_rule(stats, covariance)(x)


def optimal_contrast(c) -> Contrast:
    """The contrast alpha with sum 0, unit length, orthogonal to c.

    `c` is one constraint row (three groups) or an (s-2) x s constraint
    matrix; together with the zero-sum condition it must pin alpha down
    to a single direction, otherwise DegenerateConstraint is raised.
    The sign is fixed so the last entry of alpha is positive.
    """
    c = np.asarray(c, dtype=float)
    if c.ndim == 1:
        c = c[None, :]
    s = c.shape[1]
    if c.shape[0] != s - 2:
        raise DegenerateConstraint(
            f"need {s - 2} constraint row(s) for {s} groups, got {c.shape[0]}")
    M = np.vstack([np.ones(s), c])
    # null space of M = eigenvectors of M'M with (near-)zero eigenvalue
    eig = sym_eigen(M.T @ M)
    tol = 1e-10 * max(eig.values[0], 1.0)
    null = [i for i in range(s) if eig.values[i] <= tol]
    if len(null) != 1:
        raise DegenerateConstraint(
            "constraints do not determine a unique contrast direction "
            f"(null space dimension {len(null)})")
    alpha = eig.vectors[:, null[0]]
    if alpha[-1] < 0:
        alpha = -alpha
    return Contrast(alpha=alpha, constraint_used=np.squeeze(c))


def genetic_discriminant(stats: GroupStats, contrast: Contrast) -> LinearDiscriminant:
    """The linear discriminant along a pre-specified mean contrast.

    With integer-scaled contrast a and per-group SSCP matrices A_j, the
    direction is (sum_j a_j^2 A_j)^-1 (sum_j a_j xbar_j); coefficients are
    reported at 100x that solution (the classical printed scale).  Use
    .rescaled()/.unit_norm() for other scalings; allocation is invariant.
    """
    a = contrast.alpha
    if a.shape[0] != stats.s:
        raise ValueError("contrast length must equal the number of groups")
    a_int = Contrast(alpha=a, constraint_used=contrast.constraint_used).integer_form()
    M = np.zeros((stats.p, stats.p))
    for j in range(stats.s):
        M += a_int[j] ** 2 * stats.group_sscp(j)
    delta = a_int @ stats.means
    try:
        lam = solve_spd(M, delta) * 100.0
    except NotPositiveDefinite as exc:
        raise SingularCovariance(f"contrast-weighted SSCP singular: {exc}")
    sds = np.array([np.sqrt(lam @ stats.group_sscp(j) @ lam / (stats.counts[j] - 1))
                    for j in range(stats.s)])
    return LinearDiscriminant(
        coefficients=lam,
        projected_group_means=stats.means @ lam,
        group_names=stats.group_names,
        normalization="paper_scale_x100",
        projected_group_sds=sds)


def anderson_index(x) -> float:
    """E. Anderson's shape index z_A = x1/x3 + x2/x4 for iris measurements."""
    x = as_vector(x)
    if x.shape[0] != 4:
        raise ValueError("the Anderson index needs the 4 iris variables")
    if x[2] == 0.0 or x[3] == 0.0:
        raise DivisionByZero("petal length and petal width must be nonzero")
    return float(x[0] / x[2] + x[1] / x[3])


def anderson_index_discriminant(ds) -> LinearDiscriminant:
    """Nearest-index-mean classifier scaffolding for the Anderson index.

    Computes z_A per row and packages the per-group index means so the
    usual Rule I machinery applies in index space.  Returned coefficients
    live in that 1-D space (identity), not in the original variables.
    """
    scores = np.array([anderson_index(row) for row in ds.observations])
    means = np.array([scores[ds.labels == j].mean() for j in range(ds.s)])
    return LinearDiscriminant(
        coefficients=np.array([1.0]),
        projected_group_means=means,
        group_names=ds.group_names,
        normalization="unit_norm",
        projected_group_sds=np.array(
            [scores[ds.labels == j].std(ddof=1) for j in range(ds.s)]))


def direction_cosine(u, v) -> float:
    """|u.v| / (|u||v|): direction agreement ignoring sign and scale."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape != v.shape:
        raise ValueError("vectors must have equal dimension")
    nu = float(np.sqrt(u @ u))
    nv = float(np.sqrt(v @ v))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("direction undefined for a zero vector")
    return float(abs(u @ v) / (nu * nv))
