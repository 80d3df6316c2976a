"""Parameter files, CSV and SVG output."""

import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.core.exceptions import ParameterError
from src.core.geometry import SplitVector
from src.engel.construct import EngelParams, generate_window
from src.engel.sequence import ShiftSequence
from src.formats.files import (
    dump_params,
    load_params,
    read_points_csv,
    window_csv,
    write_table_csv,
)
from src.formats.svg import render_window_svg


class TestParamFiles:
    def test_bundled_files_match_examples(self, params_dir, planar, spatial):
        assert load_params(params_dir / "planar.json") == planar
        assert load_params(params_dir / "spatial.json") == spatial

    def test_dump_and_load(self, tmp_path, spatial):
        path = tmp_path / "spatial.json"
        path.write_text(dump_params(spatial))
        assert load_params(path) == spatial
        assert json.loads(path.read_text())["b_sq"] == "49"

    def test_uneven_spacing_is_written_with_b(self, tmp_path, planar):
        uneven = EngelParams(planar.seq, Fraction(5), Fraction(144), Fraction(1), Fraction(81))
        data = json.loads(dump_params(uneven))
        assert (data["b"], data["b_prime"]) == ("12", "9")
        assert "b_sq" not in data
        path = tmp_path / "uneven.json"
        path.write_text(dump_params(uneven))
        assert load_params(path) == uneven

    @pytest.mark.parametrize(
        "change",
        [
            {"b": "12"},
            {"period": 2},
            {"abs_pattern": [1, 2]},
            {"a": "five"},
            {"b_prime": "9"},
        ],
    )
    def test_schema_errors(self, tmp_path, params_dir, change):
        data = json.loads((params_dir / "planar.json").read_text())
        data.update(change)
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        with pytest.raises(ValidationError):
            load_params(path)

    def test_construction_errors(self, tmp_path, params_dir):
        data = json.loads((params_dir / "planar.json").read_text())
        data["delta"] = "7"
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        with pytest.raises(ParameterError):
            load_params(path)


class TestCsv:
    def test_table(self):
        assert write_table_csv(["m", "x"], [[0, "1/2"], [1, "10Z"]]) == "m,x\n0,1/2\n1,10Z\n"

    def test_window(self, planar):
        text = window_csv(generate_window(planar, (0, 0), 1))
        assert text == "layer,horiz_1,vlevel\n0,-10,0\n0,0,0\n0,10,0\n"

    def test_empty_window(self, spatial):
        assert window_csv(generate_window(spatial, (1, 0), 1)) == "layer,horiz_1,horiz_2,vlevel\n"

    def test_read_window_layout(self, planar):
        window = generate_window(planar, (-1, 1), 1)
        assert read_points_csv(window_csv(window)) == [x for _, x in window.points]

    def test_read_coordinates(self):
        points = read_points_csv("x_1,x_2\n0,0\n5,12\n-1/2,-24\n", Fraction(12))
        assert points == [
            SplitVector.of([0], 0),
            SplitVector.of([5], 1),
            SplitVector.of([Fraction(-1, 2)], -2),
        ]

    def test_off_grid_vertical(self):
        with pytest.raises(ParameterError):
            read_points_csv("x_1,x_2\n0,5\n", Fraction(12))

    def test_bad_header(self):
        with pytest.raises(ParameterError):
            read_points_csv("a,b\n1,2\n")


class TestSvg:
    def test_planar(self, planar):
        svg = render_window_svg(generate_window(planar, (0, 1), 1))
        assert svg.startswith("<svg")
        assert svg.endswith("</svg>\n")
        assert svg.count("<circle") == 6
        assert svg.count("<line") == 2

    def test_deterministic(self, planar):
        window = generate_window(planar, (-2, 2), 2)
        assert render_window_svg(window) == render_window_svg(window)

    def test_spatial_projects(self, spatial):
        svg = render_window_svg(generate_window(spatial, (0, 0), 1))
        assert svg.count("<circle") == 3

    def test_empty(self, planar):
        svg = render_window_svg(generate_window(planar, (1, 0), 1))
        assert "<circle" not in svg

    def test_rejects_four_dimensions(self):
        params = EngelParams(ShiftSequence.all_plus(4), Fraction(1), Fraction(100), Fraction(1, 2))
        with pytest.raises(ParameterError):
            render_window_svg(generate_window(params, (0, 0), 1))


class TestSvgRadii:
    def test_one_family_per_radius(self, planar):
        window = generate_window(planar, (-6, 6), 2)
        svg = render_window_svg(window, [Fraction(48 * 48), Fraction(52 * 52)])
        assert svg.count('fill="black"') == 65
        assert svg.count('<g class="rho"') == 2
        # six layer representatives per family
        assert svg.count('fill="none"') == 12
        assert 'data-rho-sq="2304"' in svg
        assert 'data-rho-sq="2704"' in svg

    def test_no_radii_is_a_plain_scatter(self, planar):
        window = generate_window(planar, (-6, 6), 2)
        svg = render_window_svg(window, [])
        assert svg == render_window_svg(window)
        assert 'fill="none"' not in svg
        assert "<g" not in svg

    def test_only_representatives_inside_the_window(self, planar):
        svg = render_window_svg(generate_window(planar, (0, 1), 1), [Fraction(100)])
        assert svg.count('fill="none"') == 2

    def test_families_are_deterministic(self, spatial):
        window = generate_window(spatial, (-2, 2), 1)
        radii = [Fraction(324), Fraction(1600)]
        assert render_window_svg(window, radii) == render_window_svg(window, radii)

    def test_rejects_negative_radius(self, planar):
        with pytest.raises(ParameterError):
            render_window_svg(generate_window(planar, (0, 0), 1), [Fraction(-1)])
