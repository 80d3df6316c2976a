"""Layer tables of the worked examples and the discrepancy report."""

from fractions import Fraction

import pytest

from src.core.exceptions import ParameterError
from src.core.models import ExampleName
from src.pipeline.reproduction import (
    StepResult,
    _run_step,
    coset_label,
    layer_table,
    reproduce_table,
    run_discrepancy_checks,
)
from src.regularity.synthesis import choose_parameters


class TestCosetLabel:
    @pytest.mark.parametrize(
        ("value", "label"),
        [
            (Fraction(0), "10Z"),
            (Fraction(20), "10Z"),
            (Fraction(5), "5+10Z"),
            (Fraction(-5), "5+10Z"),
            (Fraction(6), "-4+10Z"),
            (Fraction(-11), "-1+10Z"),
            (Fraction(1, 2), "1/2+10Z"),
        ],
    )
    def test_residue_in_half_open_range(self, value, label):
        assert coset_label(value, Fraction(10)) == label


class TestLayerTable:
    @pytest.mark.parametrize("name", ["planar", "spatial"])
    def test_matches_golden(self, name, golden_dir):
        expected = (golden_dir / f"{name}.csv").read_text()
        assert reproduce_table(name) == expected

    def test_accepts_enum(self, golden_dir):
        assert reproduce_table(ExampleName.PLANAR) == (golden_dir / "planar.csv").read_text()

    def test_single_layer(self, planar):
        assert layer_table(planar, range(0, 1)) == (
            "layer,coset_1,height,shift_1,shift_2\n0,10Z,0,-1,24\n"
        )

    def test_irrational_unit(self):
        params = choose_parameters(2, Fraction(169), Fraction(4))
        with pytest.raises(ParameterError):
            layer_table(params)

    def test_unknown_example(self):
        with pytest.raises(ParameterError):
            reproduce_table("hexagonal")


class TestDiscrepancies:
    def test_errors_become_failed_steps(self):
        def compute() -> tuple[str, bool]:
            raise ParameterError("no")

        result = _run_step(compute)
        assert result == StepResult(success=False, message="ParameterError: no")

    @pytest.mark.slow
    def test_report(self):
        report = run_discrepancy_checks()
        items = {item.name: item for item in report.items}
        assert len(items) == 8
        assert items["planar N(48)"].agrees
        assert items["planar N(52)"].agrees
        assert items["spatial N(40)"].agrees
        assert items["spatial N(54)"].agrees
        assert items["spatial hypothesis eps=14"].agrees
        hypothesis = items["planar hypothesis eps=4"]
        assert not hypothesis.agrees
        assert hypothesis.computed.startswith("fails")
        assert hypothesis.note
        assert report.n_flags == sum(not item.agrees for item in report.items)
