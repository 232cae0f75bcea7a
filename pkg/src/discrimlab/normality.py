"""Mardia's multivariate skewness and kurtosis with asymptotic tests.

For one group of n rows in p dimensions, with S the sample covariance
(divisor n) and g_rs = (x_r - xbar)' S^-1 (x_s - xbar):

    b1p = n^-2 sum_rs g_rs^3        U = n b1p / 6  ~  chi2_f,
    b2p = n^-1 sum_r g_rr^2         V = (b2p - p(p+2)) / sqrt(8p(p+2)/n),

with f = p(p+1)(p+2)/6.  Under normality the population values are
beta1p = 0 and beta2p = p(p+2).  Both measures are affine invariant.
"""

from dataclasses import dataclass

import numpy as np

from ._special import chi2_upper_tail, normal_two_sided
from .errors import NotPositiveDefinite, SingularCovariance, TooFewRows
from .linalg import as_matrix, invert_spd

__all__ = ["MardiaReport", "mardia", "chi2_upper_tail", "normal_two_sided"]


@dataclass(frozen=True)
class MardiaReport:
    b1p: float
    b2p: float
    U: float
    f: int
    V: float
    p_skew: float
    p_kurt: float
    n: int
    p: int
    small_sample: bool  # asymptotic tests get shaky below n = 50

    def significant_at(self, alpha: float = 0.05) -> bool:
        return self.p_skew < alpha or self.p_kurt < alpha


def mardia(x) -> MardiaReport:
    """Mardia skewness/kurtosis report for one group of observations."""
    x = as_matrix(x)
    n, p = x.shape
    if n <= p:
        raise TooFewRows(f"need n > p rows, got n={n}, p={p}")
    centered = x - x.mean(axis=0)
    S = centered.T @ centered / n
    try:
        S_inv = invert_spd(S)
    except NotPositiveDefinite as exc:
        raise SingularCovariance(f"sample covariance not invertible: {exc}")
    G = centered @ S_inv @ centered.T
    # b1p >= 0 in exact arithmetic (Schur product theorem); clamp the
    # cancellation noise that symmetric samples produce
    b1p = max(float((G ** 3).sum()) / n**2, 0.0)
    b2p = float((np.diag(G) ** 2).sum()) / n
    f = p * (p + 1) * (p + 2) // 6
    U = n * b1p / 6.0
    V = (b2p - p * (p + 2)) / np.sqrt(8.0 * p * (p + 2) / n)
    return MardiaReport(
        b1p=b1p, b2p=b2p, U=float(U), f=f, V=float(V),
        p_skew=chi2_upper_tail(U, f), p_kurt=normal_two_sided(float(V)),
        n=n, p=p, small_sample=n < 50)
