"""Shared fixtures: the embedded iris data and derived objects used across files.

Everything heavy is session-scoped so the suite stays fast (< 30 s).
"""
import numpy as np
import pytest

from discrimlab import (
    LabeledDataset,
    canonical_variates,
    embedded_iris,
    genetic_discriminant,
    group_stats,
    optimal_contrast,
)


@pytest.fixture(scope="session")
def iris():
    return embedded_iris()


@pytest.fixture(scope="session")
def iris_stats(iris):
    return group_stats(iris)


@pytest.fixture(scope="session")
def iris_basis(iris_stats):
    return canonical_variates(iris_stats)


@pytest.fixture(scope="session")
def genetic_ld(iris_stats):
    contrast = optimal_contrast(np.array([1.0, -3.0, 2.0]))
    return genetic_discriminant(iris_stats, contrast)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260823)


def make_dataset(rows, labels, names=None, variable_names=None):
    """Convenience constructor for small synthetic datasets."""
    rows = np.asarray(rows, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if names is None:
        names = tuple(f"g{j}" for j in range(int(labels.max()) + 1))
    if variable_names is None:
        variable_names = tuple(f"x{v + 1}" for v in range(rows.shape[1]))
    return LabeledDataset(
        observations=rows,
        labels=labels,
        variable_names=tuple(variable_names),
        group_names=tuple(names),
        units=("",) * rows.shape[1],
    )
