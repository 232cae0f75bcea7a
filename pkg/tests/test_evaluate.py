"""Confusion matrices, agreement counts and the classification grid."""
import numpy as np
import pytest

from discrimlab import (
    agreement_count,
    confusion_matrix,
    correct_count,
    decision_grid,
)
from discrimlab.errors import LengthMismatch


class TestConfusionMatrix:
    def test_perfect_prediction(self):
        actual = [0, 0, 1, 1, 2]
        cm = confusion_matrix(actual, actual, ("a", "b", "c"))
        assert np.array_equal(cm.counts, np.diag([2, 2, 1]))
        assert cm.misclassified == ()
        assert cm.trace() == 5
        assert cm.n == 5

    def test_layout_predicted_rows_actual_columns(self):
        # one actual-b observation predicted as a: row a, column b
        cm = confusion_matrix([0, 1], [0, 0], ("a", "b"))
        assert np.array_equal(cm.counts, [[1, 1], [0, 0]])
        # column sums recover the group sizes
        assert np.array_equal(cm.counts.sum(axis=0), [1, 1])

    def test_misclassified_records(self):
        cm = confusion_matrix([0, 1, 1], [0, 0, 1], ("a", "b"))
        assert cm.misclassified == ((2, "b", "a"),)
        assert cm.misclassified_indices() == (2,)

    def test_indices_are_one_based_row_order(self):
        actual = [0] * 4
        predicted = [0, 1, 0, 1]
        cm = confusion_matrix(actual, predicted, ("a", "b"))
        assert cm.misclassified_indices() == (2, 4)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            confusion_matrix([0, 1], [0], ("a", "b"))

    def test_text_rendering(self):
        cm = confusion_matrix([0, 1, 1], [0, 0, 1], ("a", "b"))
        text = cm.to_text()
        assert "actual" in text and "predicted" in text
        assert "total" in text
        lines = text.splitlines()
        assert any("a" in ln and "b" in ln for ln in lines)
        # the totals row carries the group sizes then n
        assert lines[-1].split() == ["total", "1", "2", "3"]

    def test_record_roundtrip(self):
        cm = confusion_matrix([0, 1, 1], [0, 0, 1], ("a", "b"))
        rec = cm.to_record()
        assert rec["counts_predicted_by_actual"] == [[1, 1], [0, 1]]
        assert rec["correct"] == 2
        assert rec["n"] == 3
        assert rec["misclassified"] == [
            {"index": 2, "actual": "b", "predicted": "a"}]

    def test_correct_count_is_trace(self):
        cm = confusion_matrix([0, 1, 2, 2], [0, 2, 2, 1], ("a", "b", "c"))
        assert correct_count(cm) == cm.trace() == 2


class TestAgreement:
    def test_identical(self):
        assert agreement_count([0, 1, 2], [0, 1, 2]) == 3

    def test_disjoint(self):
        assert agreement_count([0, 0], [1, 1]) == 0

    def test_symmetric(self, rng):
        a = rng.integers(0, 3, size=40)
        b = rng.integers(0, 3, size=40)
        assert agreement_count(a, b) == agreement_count(b, a)

    def test_self_agreement_is_n(self, rng):
        a = rng.integers(0, 3, size=25)
        assert agreement_count(a, a) == 25

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            agreement_count([0, 1], [0, 1, 2])


class TestDecisionGrid:
    def test_constant_classifier(self):
        grid = decision_grid(lambda x: 2, ((0.0, 1.0), (0.0, 1.0)), 4)
        assert grid.labels.shape == (4, 4)
        assert np.all(grid.labels == 2)

    def test_cell_centers(self):
        # arguments follow the labels[iy, ix] raster convention
        grid = decision_grid(lambda x: 0, ((0.0, 4.0), (0.0, 2.0)), 2)
        assert grid.cell_center(0, 0) == pytest.approx((1.0, 0.5))
        assert grid.cell_center(1, 0) == pytest.approx((1.0, 1.5))
        assert grid.cell_center(0, 1) == pytest.approx((3.0, 0.5))

    def test_vertical_threshold(self):
        # classify by sign of x - 0.5 on [0,1]^2 with resolution 10: cells
        # with center < 0.5 go left
        grid = decision_grid(lambda x: int(x[0] > 0.5), ((0.0, 1.0), (0.0, 1.0)), 10)
        for ix in range(10):
            cx, _ = grid.cell_center(0, ix)
            want = int(cx > 0.5)
            assert np.all(grid.labels[:, ix] == want)

    def test_label_at_lookup(self):
        grid = decision_grid(lambda x: int(x[1] > 0.0), ((-1.0, 1.0), (-1.0, 1.0)), 8)
        assert grid.label_at(0.5, 0.9) == 1
        assert grid.label_at(0.5, -0.9) == 0

    def test_classifier_called_at_centers(self):
        seen = []
        decision_grid(lambda x: seen.append(tuple(x)) or 0,
                      ((0.0, 1.0), (2.0, 3.0)), 2)
        assert (0.25, 2.25) in seen and (0.75, 2.75) in seen
        assert len(seen) == 4

    def test_resolution_shape(self):
        grid = decision_grid(lambda x: 0, ((0.0, 1.0), (0.0, 1.0)), 7)
        assert grid.labels.shape == (7, 7)
        assert grid.resolution == 7
