"""Dataset container, CSV loading, group statistics and variable transforms."""
import io

import numpy as np
import pytest

from conftest import make_dataset
from discrimlab import (
    LabeledDataset,
    Products,
    Ratios,
    Select,
    embedded_iris,
    group_stats,
    load_csv,
    transform,
)
from discrimlab.errors import (
    DegenerateGroup,
    DivisionByZero,
    EmptyGroup,
    IndexOutOfRange,
    MissingColumn,
    ParseError,
)


class TestEmbeddedIris:
    def test_shape_and_names(self, iris):
        assert iris.n == 150
        assert iris.p == 4
        assert iris.s == 3
        assert iris.group_names == ("setosa", "versicolor", "virginica")
        assert iris.variable_names == (
            "sepal length", "sepal width", "petal length", "petal width")
        assert iris.units == ("cm", "cm", "cm", "cm")

    def test_species_blocks(self, iris):
        assert np.array_equal(iris.labels[:50], np.zeros(50, dtype=int))
        assert np.array_equal(iris.labels[50:100], np.ones(50, dtype=int))
        assert np.array_equal(iris.labels[100:], np.full(50, 2, dtype=int))

    def test_sample_means_match_published_table(self, iris_stats):
        # resubstitution means, 3 decimals
        want = np.array([
            [5.006, 3.428, 1.462, 0.246],
            [5.936, 2.770, 4.260, 1.326],
            [6.588, 2.974, 5.552, 2.026],
        ])
        assert np.allclose(np.round(iris_stats.means, 3), want)

    def test_data_variant_cells(self, iris):
        # two cells distinguish historical printings of this table; these are
        # the values this build pins (row numbers 1-based over the full data)
        assert np.allclose(iris.observations[34], [4.9, 3.1, 1.5, 0.2])
        assert np.allclose(iris.observations[37], [4.9, 3.6, 1.4, 0.1])

    def test_first_and_last_rows(self, iris):
        assert np.allclose(iris.observations[0], [5.1, 3.5, 1.4, 0.2])
        assert np.allclose(iris.observations[149], [5.9, 3.0, 5.1, 1.8])

    def test_csv_roundtrip(self, iris, tmp_path):
        path = tmp_path / "iris.csv"
        header = [*iris.variable_names, "species"]
        lines = [",".join(header)]
        for row, lab in zip(iris.observations, iris.labels):
            lines.append(",".join([*(f"{v:g}" for v in row), iris.group_names[lab]]))
        path.write_text("\n".join(lines) + "\n")
        loaded = load_csv(path, label_column="species")
        assert np.array_equal(loaded.observations, iris.observations)
        assert np.array_equal(loaded.labels, iris.labels)
        assert loaded.group_names == iris.group_names


class TestLoadCsv:
    CSV = "a,b,kind\n1,2,x\n3,4,y\n5,6,x\n"

    def test_basic_parse(self):
        ds = load_csv(io.StringIO(self.CSV), label_column="kind")
        assert ds.n == 3 and ds.p == 2 and ds.s == 2
        assert ds.variable_names == ("a", "b")
        # groups ordered by first appearance
        assert ds.group_names == ("x", "y")
        assert np.array_equal(ds.labels, [0, 1, 0])
        assert np.allclose(ds.observations, [[1, 2], [3, 4], [5, 6]])

    def test_label_column_position_free(self):
        ds = load_csv(io.StringIO("kind,a\nx,1\ny,2\n"), label_column="kind")
        assert ds.variable_names == ("a",)
        assert np.allclose(ds.observations, [[1], [2]])

    def test_missing_label_column(self):
        with pytest.raises(MissingColumn):
            load_csv(io.StringIO(self.CSV), label_column="species")

    def test_non_numeric_cell(self):
        with pytest.raises(ParseError):
            load_csv(io.StringIO("a,kind\noops,x\n"), label_column="kind")

    def test_ragged_row(self):
        with pytest.raises(ParseError):
            load_csv(io.StringIO("a,b,kind\n1,x\n"), label_column="kind")

    def test_empty_body(self):
        with pytest.raises(ParseError):
            load_csv(io.StringIO("a,kind\n"), label_column="kind")


class TestLabeledDataset:
    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            LabeledDataset(
                observations=np.ones((3, 2)),
                labels=np.array([0, 1]),
                variable_names=("a", "b"),
                group_names=("g0", "g1"),
                units=("", ""),
            )

    def test_declared_empty_group_rejected(self):
        with pytest.raises(EmptyGroup):
            LabeledDataset(
                observations=np.ones((2, 1)),
                labels=np.array([0, 0]),
                variable_names=("a",),
                group_names=("g0", "ghost"),
                units=("",),
            )

    def test_group_rows(self):
        ds = make_dataset([[1.0], [2.0], [3.0]], [0, 1, 0])
        assert np.allclose(ds.group_rows(0), [[1.0], [3.0]])
        assert np.allclose(ds.group_rows(1), [[2.0]])


class TestGroupStats:
    def test_four_point_hand_oracle(self):
        # group 0: (0,0), (2,0); group 1: (1,2), (3,2)  -- worked by hand
        ds = make_dataset(
            [[0.0, 0.0], [2.0, 0.0], [1.0, 2.0], [3.0, 2.0]], [0, 0, 1, 1])
        st = group_stats(ds)
        assert np.allclose(st.means, [[1.0, 0.0], [2.0, 2.0]])
        assert np.allclose(st.grand_mean, [1.5, 1.0])
        # each group contributes deviations (-1,0),(1,0) -> [[2,0],[0,0]]
        assert np.allclose(st.w, [[4.0, 0.0], [0.0, 0.0]])
        # B: 2*(-.5,-1)(-.5,-1)' + 2*(.5,1)(.5,1)' = [[1,2],[2,4]]
        assert np.allclose(st.b, [[1.0, 2.0], [2.0, 4.0]])

    def test_w_plus_b_equals_total_sscp(self, iris, iris_stats):
        centered = iris.observations - iris.observations.mean(axis=0)
        total = centered.T @ centered
        assert np.allclose(iris_stats.w + iris_stats.b, total, atol=1e-8)

    def test_counts(self, iris_stats):
        assert np.array_equal(iris_stats.counts, [50, 50, 50])

    def test_row_permutation_invariance(self, iris, rng):
        order = rng.permutation(iris.n)
        shuffled = LabeledDataset(
            observations=iris.observations[order],
            labels=iris.labels[order],
            variable_names=iris.variable_names,
            group_names=iris.group_names,
            units=iris.units,
        )
        a, b = group_stats(iris), group_stats(shuffled)
        assert np.allclose(a.means, b.means)
        assert np.allclose(a.w, b.w, atol=1e-9)
        assert np.allclose(a.b, b.b, atol=1e-9)

    def test_divisor_policies(self):
        ds = make_dataset([[0.0], [2.0], [4.0], [1.0], [3.0]], [0, 0, 0, 1, 1])
        unb = group_stats(ds, divisor_policy="unbiased")
        ml = group_stats(ds, divisor_policy="ml")
        assert unb.covariances[0][0, 0] == pytest.approx(4.0)  # var of 0,2,4
        assert ml.covariances[0][0, 0] == pytest.approx(8.0 / 3.0)
        # SSCP about the group mean is policy-free
        assert unb.group_sscp(0)[0, 0] == pytest.approx(8.0)
        assert ml.group_sscp(0)[0, 0] == pytest.approx(8.0)
        # W is a raw SSCP either way
        assert np.allclose(unb.w, ml.w)

    def test_pooled_covariance(self, iris_stats):
        pooled = iris_stats.pooled_covariance()
        assert np.allclose(pooled, iris_stats.w / 147.0)

    def test_affine_equivariance(self, rng):
        rows = rng.normal(size=(40, 3))
        labels = rng.integers(0, 2, size=40)
        labels[:2] = [0, 1]
        ds = make_dataset(rows, labels)
        a = rng.normal(size=(3, 3)) + 3 * np.eye(3)
        shift = rng.normal(size=3)
        moved = make_dataset(rows @ a.T + shift, labels)
        st0, st1 = group_stats(ds), group_stats(moved)
        assert np.allclose(st1.means, st0.means @ a.T + shift, atol=1e-9)
        for j in range(2):
            assert np.allclose(
                st1.covariances[j], a @ st0.covariances[j] @ a.T, atol=1e-8)
        assert np.allclose(st1.w, a @ st0.w @ a.T, atol=1e-8)
        assert np.allclose(st1.b, a @ st0.b @ a.T, atol=1e-8)

    def test_single_row_group_rejected(self):
        ds = make_dataset([[1.0], [2.0], [3.0]], [0, 0, 1])
        with pytest.raises(DegenerateGroup):
            group_stats(ds)


class TestTransform:
    def test_select(self, iris):
        sub = transform(iris, Select((1, 2)))
        assert sub.variable_names == ("sepal length", "sepal width")
        assert sub.units == ("cm", "cm")
        assert np.allclose(sub.observations, iris.observations[:, :2])
        assert np.array_equal(sub.labels, iris.labels)

    def test_select_reorders(self, iris):
        sub = transform(iris, Select((4, 1)))
        assert sub.variable_names == ("petal width", "sepal length")
        assert np.allclose(sub.observations[:, 0], iris.observations[:, 3])

    def test_ratios(self, iris):
        shp = transform(iris, Ratios(((1, 3), (2, 4))))
        assert shp.variable_names == (
            "sepal length/petal length", "sepal width/petal width")
        # cm/cm cancels
        assert shp.units == ("", "")
        want = iris.observations[:, 0] / iris.observations[:, 2]
        assert np.allclose(shp.observations[:, 0], want)

    def test_products(self, iris):
        areas = transform(iris, Products(((1, 2), (3, 4))))
        assert areas.variable_names == (
            "sepal length*sepal width", "petal length*petal width")
        assert areas.units == ("cm^2", "cm^2")
        want = iris.observations[:, 0] * iris.observations[:, 1]
        assert np.allclose(areas.observations[:, 0], want)

    def test_index_out_of_range(self, iris):
        with pytest.raises(IndexOutOfRange):
            transform(iris, Select((5,)))
        with pytest.raises(IndexOutOfRange):
            transform(iris, Select((0,)))  # indices are 1-based
        with pytest.raises(IndexOutOfRange):
            transform(iris, Ratios(((1, 9),)))

    def test_ratio_by_zero(self):
        ds = make_dataset([[1.0, 0.0], [2.0, 1.0]], [0, 0])
        with pytest.raises(DivisionByZero):
            transform(ds, Ratios(((1, 2),)))
