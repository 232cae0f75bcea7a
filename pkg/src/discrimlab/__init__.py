"""discrimlab: classical discriminant analysis on labeled multivariate data.

Canonical variates, Gaussian maximum-likelihood rules, the
pre-specified-direction (genetic) discriminant, kernel and tree
classifiers, Mardia normality measures, contrast and Box M tests, and
deterministic SVG plots — with the iris table embedded for instant use.
"""

from .dataset import (GroupStats, LabeledDataset, Products, Ratios, Select,
                      embedded_iris, group_stats, load_csv, transform)
from .discriminant import (CanonicalBasis, Contrast, LinearDiscriminant,
                           anderson_index, anderson_index_discriminant,
                           canonical_variates, direction_cosine,
                           gaussian_ml_classify, gaussian_ml_rule,
                           genetic_discriminant,
                           nearest_projected_mean_classify, optimal_contrast)
from .evaluate import (ConfusionMatrix, DecisionGrid, agreement_count,
                       confusion_matrix, correct_count, decision_grid)
from .inference import (BoxMReport, ContrastTestReport, box_m_from_dataset,
                        box_m_test, genetic_contrast_test)
from .linalg import (EigenResult, cholesky, gen_eigen_spd, invert_spd,
                     log_det_spd, solve_spd, sym_eigen)
from .nonparam import (DecisionTree, KernelClassifier, kernel_classify,
                       kernel_fit, tree_classify, tree_fit)
from .normality import MardiaReport, chi2_upper_tail, mardia, normal_two_sided
from .viz import (Ellipse, PlotSpec, Projection2D, canonical_projection,
                  class_preserving_projection, confidence_ellipse,
                  plot_filename, svg_decision_regions, svg_histogram_panels,
                  svg_scatter, svg_scatter_matrix, svg_stacked_rectangles)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
