"""Command-line surface: one subcommand per analysis, text or JSON out.

Exit codes: 0 success, 1 internal error, 2 user/data error.  The iris
table is embedded, so `discrimlab <cmd> --iris` needs no files; plots
land in --outdir (default: $DISCRIMLAB_OUTDIR, else the current
directory).
"""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import viz
from .dataset import (LabeledDataset, Products, Ratios, Select, embedded_iris,
                      group_stats, load_csv, transform)
from .discriminant import (anderson_index_discriminant, canonical_variates,
                           gaussian_ml_rule, genetic_discriminant,
                           nearest_projected_mean_classify, optimal_contrast)
from .errors import DiscrimlabError
from .evaluate import agreement_count, confusion_matrix, decision_grid
from .inference import genetic_contrast_test
from .nonparam import kernel_classify, kernel_fit, tree_classify, tree_fit
from .normality import mardia

METHODS = ("fisher", "ml-equal", "ml-unequal", "kernel", "tree", "index")
PLOT_KINDS = ("canonical", "regions", "histograms", "rectangles", "matrix",
              "dhillon")


# --- dataset plumbing -------------------------------------------------------

def _parse_pairs(text: str, sep: str):
    pairs = []
    for part in text.split(","):
        a, _, b = part.strip().partition(sep)
        pairs.append((int(a), int(b)))
    return tuple(pairs)


def _load_dataset(args) -> tuple:
    """(dataset, short name for file naming) from the input flags."""
    if args.iris and args.csv:
        raise DiscrimlabError("--iris and --csv are mutually exclusive")
    if args.iris:
        ds, name = embedded_iris(), "iris"
    else:
        if not args.csv:
            raise DiscrimlabError("provide --iris or --csv PATH")
        if not args.label:
            raise DiscrimlabError("--csv requires --label COLUMN")
        ds, name = load_csv(args.csv, args.label), Path(args.csv).stem
    if args.select:
        ds = transform(ds, Select(tuple(int(i) for i in args.select.split(","))))
    elif args.ratios:
        ds = transform(ds, Ratios(_parse_pairs(args.ratios, "/")))
    elif args.products:
        ds = transform(ds, Products(_parse_pairs(args.products, "*")))
    return ds, name


def _add_input_flags(p: argparse.ArgumentParser):
    p.add_argument("--iris", action="store_true",
                   help="use the embedded iris data")
    p.add_argument("--csv", help="CSV file with a header row")
    p.add_argument("--label", help="name of the label column in the CSV")
    p.add_argument("--select", help="keep 1-based variable indices, e.g. 1,2")
    p.add_argument("--ratios", help="ratio variables, e.g. 1/3,2/4")
    p.add_argument("--products", help="product variables, e.g. 1*2,3*4")
    p.add_argument("--format", choices=("text", "json"), default="text")


def _outdir(args) -> Path:
    out = args.outdir or os.environ.get("DISCRIMLAB_OUTDIR") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _emit(args, text_lines, record):
    if args.format == "json":
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _fit_predictions(ds: LabeledDataset, method: str):
    """Resubstitution predictions for one named method."""
    if method in ("fisher", "ml-equal", "ml-unequal"):
        stats = group_stats(ds, "unbiased")
    if method == "fisher":
        ld = canonical_variates(stats).first
        return [nearest_projected_mean_classify(ld, x) for x in ds.observations]
    if method in ("ml-equal", "ml-unequal"):
        rule = gaussian_ml_rule(stats, method.split("-")[1])
        return [rule(x) for x in ds.observations]
    if method == "kernel":
        kc = kernel_fit(ds)
        return [kernel_classify(kc, x) for x in ds.observations]
    if method == "tree":
        t = tree_fit(ds)
        return [tree_classify(t, x) for x in ds.observations]
    if method == "index":
        if ds.p != 4:
            raise DiscrimlabError("the index method needs the 4 iris variables")
        ld = anderson_index_discriminant(ds)
        from .discriminant import anderson_index
        return [nearest_projected_mean_classify(ld, [anderson_index(x)])
                for x in ds.observations]
    raise DiscrimlabError(f"unknown method {method!r}")


def _misrow_text(cm) -> str:
    idx = ", ".join(str(i) for i in cm.misclassified_indices())
    return f"misclassified rows: {idx}" if idx else "misclassified rows: none"


# --- subcommands ------------------------------------------------------------

def cmd_normality(args) -> int:
    ds, _ = _load_dataset(args)
    reports = [mardia(ds.group_rows(j)) for j in range(ds.s)]
    name_w = max(len(n) for n in ds.group_names) + 2
    lines = ["Mardia multivariate normality, per group",
             "group".ljust(name_w) + "b1p (U)".rjust(14) + "b2p (|V|)".rjust(14)]
    for name, r in zip(ds.group_names, reports):
        lines.append(name.ljust(name_w)
                     + f"{r.b1p:.1f} ({r.U:.1f})".rjust(14)
                     + f"{r.b2p:.1f} ({abs(r.V):.1f})".rjust(14))
    f = reports[0].f
    lines.append(f"5% criticals: U < chi2({f}) upper 5% point; |V| < 1.96")
    if any(r.small_sample for r in reports):
        lines.append("note: asymptotic tests; group sizes below 50 are flagged")
    record = {"command": "normality",
              "groups": [{"name": n, "n": r.n, "p": r.p, "b1p": r.b1p,
                          "b2p": r.b2p, "U": r.U, "f": r.f, "V": r.V,
                          "p_skew": r.p_skew, "p_kurt": r.p_kurt,
                          "small_sample": r.small_sample}
                         for n, r in zip(ds.group_names, reports)]}
    _emit(args, lines, record)
    return 0


def cmd_canonical(args) -> int:
    ds, name = _load_dataset(args)
    stats = group_stats(ds, "unbiased")
    basis = canonical_variates(stats)
    first = basis.first
    predicted = [nearest_projected_mean_classify(first, x)
                 for x in ds.observations]
    cm = confusion_matrix(ds.labels, predicted, ds.group_names)
    lines = ["Canonical variates (within-variance-one scaling)"]
    for i, ld in enumerate(basis.variates, start=1):
        coef = ", ".join(f"{c:.2f}" for c in ld.coefficients)
        lines.append(f"variate {i}: ({coef})   eigenvalue "
                     f"{basis.eigenvalues[i - 1]:.4f}")
    lines += ["", "Rule I allocation on the first variate:", cm.to_text(),
              f"correct: {cm.trace()} of {cm.n}", _misrow_text(cm)]
    record = {"command": "canonical",
              "variates": [list(map(float, ld.coefficients))
                           for ld in basis.variates],
              "eigenvalues": [float(v) for v in basis.eigenvalues],
              "confusion": cm.to_record()}
    if args.plot:
        out = _outdir(args)
        proj = viz.canonical_projection(basis, ds)
        spec = viz.PlotSpec(title="First two canonical variates",
                            x_label="canonical variate 1",
                            y_label="canonical variate 2")
        path = out / viz.plot_filename("canonical", name, "variates")
        path.write_text(viz.svg_scatter(proj, ds.labels, spec, ellipses=0.99))
        lines.append(f"plot written: {path}")
        record["plot"] = str(path)
    _emit(args, lines, record)
    return 0


def cmd_genetic(args) -> int:
    ds, _ = _load_dataset(args)
    c = np.array([float(v) for v in args.contrast.split(",")])
    contrast = optimal_contrast(c)
    stats = group_stats(ds, "unbiased")
    ld = genetic_discriminant(stats, contrast)
    predicted = [nearest_projected_mean_classify(ld, x) for x in ds.observations]
    cm = confusion_matrix(ds.labels, predicted, ds.group_names)
    test = genetic_contrast_test(ds, ld, c, level=args.level)
    alpha_int = ", ".join(f"{a:.0f}" for a in contrast.integer_form())
    coef = ", ".join(f"{v:.2f}" for v in ld.coefficients)
    means = ", ".join(f"{ds.group_names[j]} {ld.projected_group_means[j]:.2f}"
                      for j in range(ds.s))
    sds = ", ".join(f"{v:.2f}" for v in ld.projected_group_sds)
    lines = [
        "Genetic discriminant (pre-specified direction)",
        f"constraint c: {args.contrast}",
        f"contrast alpha (integer form): {alpha_int}",
        f"coefficients (x100 scale): ({coef})",
        f"projected group means: {means}",
        f"projected group SDs: {sds}",
        "",
        "Rule II allocation:",
        cm.to_text(),
        f"correct: {cm.trace()} of {cm.n}",
        _misrow_text(cm),
        "",
        f"Contrast test at level {args.level:.2f}:",
        f"  estimate: {test.contrast_value:.2f}",
        f"  SE: {test.se:.3f}   (z multiplier {test.z_multiplier:.6f})",
        f"  CI: ({test.ci[0]:.2f}, {test.ci[1]:.2f})",
        f"  decision: {'reject' if test.reject else 'accept'} H0",
    ]
    record = {"command": "genetic",
              "constraint": [float(v) for v in c],
              "alpha": [float(a) for a in contrast.alpha],
              "coefficients_x100": [float(v) for v in ld.coefficients],
              "projected_means": [float(v) for v in ld.projected_group_means],
              "projected_sds": [float(v) for v in ld.projected_group_sds],
              "confusion": cm.to_record(),
              "test": {"estimate": test.contrast_value, "se": test.se,
                       "variance": test.variance, "level": test.level,
                       "z_multiplier": test.z_multiplier,
                       "ci": [test.ci[0], test.ci[1]],
                       "decision": "reject" if test.reject else "accept"}}
    _emit(args, lines, record)
    return 0


def cmd_classify(args) -> int:
    ds, _ = _load_dataset(args)
    predicted = _fit_predictions(ds, args.method)
    cm = confusion_matrix(ds.labels, predicted, ds.group_names)
    lines = [f"method: {args.method}",
             "variables: " + ", ".join(ds.variable_names),
             cm.to_text(),
             f"correct: {cm.trace()} of {cm.n}",
             _misrow_text(cm)]
    record = {"command": "classify", "method": args.method,
              "variables": list(ds.variable_names),
              "confusion": cm.to_record()}
    _emit(args, lines, record)
    return 0


def cmd_compare(args) -> int:
    ds, _ = _load_dataset(args)
    pred_a = _fit_predictions(ds, args.method_a)
    pred_b = _fit_predictions(ds, args.method_b)
    agree = agreement_count(pred_a, pred_b)
    disagree = [i + 1 for i, (a, b) in enumerate(zip(pred_a, pred_b)) if a != b]
    lines = [f"methods: {args.method_a} vs {args.method_b}",
             f"agreement: {agree} of {ds.n}",
             "disagreeing rows: "
             + (", ".join(str(i) for i in disagree) if disagree else "none")]
    if {args.method_a, args.method_b} & {"kernel", "tree"}:
        lines.append("note: kernel/tree allocations depend on bandwidth and "
                     "tree settings; counts reflect this package's defaults")
    record = {"command": "compare", "method_a": args.method_a,
              "method_b": args.method_b, "agreement": agree, "n": ds.n,
              "disagreeing_rows": disagree}
    _emit(args, lines, record)
    return 0


def cmd_plot(args) -> int:
    ds, name = _load_dataset(args)
    out = _outdir(args)
    paths = []
    if args.kind == "canonical":
        stats = group_stats(ds, "unbiased")
        basis = canonical_variates(stats)
        proj = viz.canonical_projection(basis, ds)
        spec = viz.PlotSpec(title="First two canonical variates",
                            x_label="canonical variate 1",
                            y_label="canonical variate 2")
        path = out / viz.plot_filename("canonical", name, "variates")
        path.write_text(viz.svg_scatter(proj, ds.labels, spec, ellipses=0.99))
        paths.append(path)
    elif args.kind == "regions":
        if ds.p != 2:
            raise DiscrimlabError("regions plots need exactly 2 variables "
                                  "(use --select/--ratios/--products)")
        rule_pred = _region_rule(ds, args.method)
        X = ds.observations
        pad = 0.05
        spans = X.max(axis=0) - X.min(axis=0)
        bounds = ((X[:, 0].min() - pad * spans[0], X[:, 0].max() + pad * spans[0]),
                  (X[:, 1].min() - pad * spans[1], X[:, 1].max() + pad * spans[1]))
        grid = decision_grid(rule_pred, bounds, args.resolution)
        spec = viz.PlotSpec(title=f"Decision regions ({args.method})",
                            x_label=ds.variable_names[0],
                            y_label=ds.variable_names[1])
        path = out / viz.plot_filename("regions", name, args.method)
        path.write_text(viz.svg_decision_regions(grid, ds, spec))
        paths.append(path)
    elif args.kind == "histograms":
        stats = group_stats(ds, "unbiased")
        contrast = optimal_contrast(np.array([float(v) for v in
                                              args.contrast.split(",")]))
        ld = genetic_discriminant(stats, contrast)
        scores = [ld.project_rows(ds.group_rows(j)) for j in range(ds.s)]
        spec = viz.PlotSpec(title="Genetic discriminant scores",
                            x_label="discriminant score (x100 scale)")
        path = out / viz.plot_filename("histograms", name, "genetic")
        path.write_text(viz.svg_histogram_panels(scores, args.cell_width, spec,
                                                 group_names=ds.group_names))
        paths.append(path)
    elif args.kind == "rectangles":
        if ds.p != 4:
            raise DiscrimlabError("rectangle plots need the 4 iris-style variables")
        stats = group_stats(ds, "unbiased")
        means = [stats.means[j] for j in range(ds.s)]
        overlay = None
        if ds.s == 3:
            overlay = (stats.means[0] + 2.0 * stats.means[2]) / 3.0
        spec = viz.PlotSpec(title="Group means as stacked rectangles")
        path = out / viz.plot_filename("rectangles", name, "means")
        path.write_text(viz.svg_stacked_rectangles(means, overlay=overlay,
                                                   overlay_group=1, spec=spec))
        paths.append(path)
    elif args.kind == "matrix":
        spec = viz.PlotSpec(width=760, height=760,
                            title="Scatter matrix")
        path = out / viz.plot_filename("matrix", name, "all")
        path.write_text(viz.svg_scatter_matrix(ds, spec))
        paths.append(path)
    elif args.kind == "dhillon":
        stats = group_stats(ds, "unbiased")
        proj = viz.class_preserving_projection(stats, ds)
        spec = viz.PlotSpec(title="Class-preserving projection (between PCA)",
                            x_label="between PC 1", y_label="between PC 2")
        path = out / viz.plot_filename("dhillon", name, "between-pca")
        path.write_text(viz.svg_scatter(proj, ds.labels, spec, ellipses=0.99))
        paths.append(path)
    for p in paths:
        print(p)
    return 0


def _region_rule(ds: LabeledDataset, method: str):
    """A point-classifier callable for region plots."""
    if method in ("fisher", "ml-equal", "ml-unequal"):
        stats = group_stats(ds, "unbiased")
    if method == "fisher":
        ld = canonical_variates(stats).first
        return lambda x: nearest_projected_mean_classify(ld, x)
    if method == "ml-equal":
        return gaussian_ml_rule(stats, "equal")
    if method == "ml-unequal":
        return gaussian_ml_rule(stats, "unequal")
    if method == "kernel":
        kc = kernel_fit(ds)
        return lambda x: kernel_classify(kc, x)
    if method == "tree":
        t = tree_fit(ds)
        return lambda x: tree_classify(t, x)
    raise DiscrimlabError(f"method {method!r} cannot draw regions")


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discrimlab",
        description="Classical discriminant analysis on labeled data")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normality", help="Mardia skewness/kurtosis per group")
    _add_input_flags(p)
    p.set_defaults(func=cmd_normality)

    p = sub.add_parser("canonical", help="canonical variates + Rule I table")
    _add_input_flags(p)
    p.add_argument("--plot", action="store_true", help="emit the scatter SVG")
    p.add_argument("--outdir", help="plot output directory")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("genetic", help="pre-specified-direction discriminant")
    _add_input_flags(p)
    p.add_argument("--contrast", default="1,-3,2",
                   help="constraint row c (default 1,-3,2)")
    p.add_argument("--level", type=float, default=0.95,
                   help="confidence level for the contrast test")
    p.set_defaults(func=cmd_genetic)

    p = sub.add_parser("classify", help="fit one rule, report its confusion")
    _add_input_flags(p)
    p.add_argument("--method", choices=METHODS, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compare", help="agreement between two rules")
    _add_input_flags(p)
    p.add_argument("--method-a", choices=METHODS, required=True)
    p.add_argument("--method-b", choices=METHODS, required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("plot", help="emit one of the standard SVG plots")
    _add_input_flags(p)
    p.add_argument("--kind", choices=PLOT_KINDS, required=True)
    p.add_argument("--method", default="ml-equal",
                   help="rule for region plots (default ml-equal)")
    p.add_argument("--resolution", type=int, default=150,
                   help="raster cells per axis for region plots")
    p.add_argument("--cell-width", type=float, default=2.0,
                   help="histogram cell width in score units")
    p.add_argument("--contrast", default="1,-3,2",
                   help="constraint row for histogram scores")
    p.add_argument("--outdir", help="plot output directory")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DiscrimlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
