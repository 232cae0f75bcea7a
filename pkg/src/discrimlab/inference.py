"""Hypothesis tests: the contrast test along a fitted discriminant and
Box's M test of covariance homogeneity.

The contrast test treats the discriminant coefficients as fixed — the
classical caveat that this makes the test approximate rather than exact
is inherited knowingly; no small-sample correction is applied.
"""

from dataclasses import dataclass

import numpy as np

from ._special import chi2_upper_tail, normal_two_sided_quantile
from .dataset import GroupStats, LabeledDataset, group_stats
from .discriminant import LinearDiscriminant
from .errors import DimensionMismatch, NotPositiveDefinite, SingularCovariance
from .linalg import log_det_spd


@dataclass(frozen=True)
class ContrastTestReport:
    projected_means: np.ndarray  # (s,) ubar_j = lambda' xbar_j
    contrast_value: float        # c . ubar
    variance: float
    se: float
    ci: tuple                    # (low, high) at `level`
    level: float
    z_multiplier: float
    reject: bool                 # True iff 0 lies outside the CI

    def oriented_ci(self) -> tuple:
        """CI flipped to the positive-contrast orientation.

        Group ordering flips the sign of a contrast and mirrors its CI;
        reporting the positively-oriented interval makes results
        comparable across orderings.
        """
        if self.contrast_value >= 0:
            return self.ci
        return (-self.ci[1], -self.ci[0])


@dataclass(frozen=True)
class BoxMReport:
    m_statistic: float
    chi2_approx: float
    df: int
    p_value: float


def genetic_contrast_test(ds: LabeledDataset, ld: LinearDiscriminant, c,
                          level: float = 0.95) -> ContrastTestReport:
    """Test H0: the contrast of projected group means is zero.

    With scores u = lambda' x, the estimate is sum_j c_j ubar_j and its
    variance sum_j c_j^2 var_j(u) / n_j with unbiased per-group variances;
    the CI uses the exact two-sided normal multiplier at `level`.
    """
    c = np.asarray(c, dtype=float)
    if c.shape != (ds.s,):
        raise DimensionMismatch(
            f"contrast needs {ds.s} entries, got {c.shape}")
    if ld.coefficients.shape[0] != ds.p:
        raise DimensionMismatch(
            f"discriminant has {ld.coefficients.shape[0]} coefficients "
            f"for {ds.p} variables")
    scores = ld.project_rows(ds.observations)
    ubar = np.array([scores[ds.labels == j].mean() for j in range(ds.s)])
    var = 0.0
    for j in range(ds.s):
        sj = scores[ds.labels == j]
        var += c[j] ** 2 * sj.var(ddof=1) / len(sj)
    value = float(c @ ubar)
    se = float(np.sqrt(var))
    z = normal_two_sided_quantile(level)
    ci = (value - z * se, value + z * se)
    return ContrastTestReport(
        projected_means=ubar, contrast_value=value, variance=float(var),
        se=se, ci=ci, level=level, z_multiplier=z,
        reject=not (ci[0] <= 0.0 <= ci[1]))


def box_m_test(stats: GroupStats) -> BoxMReport:
    """Box's M test of equal group covariance matrices.

    M = (n-s) log det Sp - sum_j (n_j - 1) log det S_j with unbiased S_j
    and pooled Sp = W/(n-s); the chi-square approximation applies the
    standard Box scale factor; df = (s-1) p (p+1) / 2.
    """
    n, s, p = stats.n, stats.s, stats.p
    try:
        log_det_pooled = log_det_spd(stats.pooled_covariance())
        log_dets = [log_det_spd(stats.group_sscp(j) / (stats.counts[j] - 1))
                    for j in range(s)]
    except NotPositiveDefinite as exc:
        raise SingularCovariance(f"singular covariance in Box M test: {exc}")
    m = (n - s) * log_det_pooled - sum(
        (stats.counts[j] - 1) * log_dets[j] for j in range(s))
    m = float(max(m, 0.0))
    correction = ((2 * p * p + 3 * p - 1) / (6.0 * (p + 1) * (s - 1))
                  * (sum(1.0 / (stats.counts[j] - 1) for j in range(s))
                     - 1.0 / (n - s)))
    chi2 = m * (1.0 - correction)
    df = (s - 1) * p * (p + 1) // 2
    return BoxMReport(m_statistic=m, chi2_approx=float(chi2), df=df,
                      p_value=chi2_upper_tail(float(chi2), df))


def box_m_from_dataset(ds: LabeledDataset) -> BoxMReport:
    """Convenience wrapper: Box M straight from a labeled dataset."""
    return box_m_test(group_stats(ds, "unbiased"))
