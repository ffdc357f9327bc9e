"""SVG chart rendering."""

import xml.etree.ElementTree as ET

from actionvalue.charts import (
    HEIGHT,
    PALETTE,
    WIDTH,
    calibration_chart,
    line_chart,
    scatter_chart,
)
from actionvalue.metrics import calibration_bins

SVG_NS = "{http://www.w3.org/2000/svg}"


def _parse(svg_text):
    return ET.fromstring(svg_text)


def _tags(root, name):
    return root.findall(f".//{SVG_NS}{name}")


def test_line_chart_is_valid_xml_with_per_series_polylines():
    svg = line_chart(
        {"train": [(0.0, 1.0), (1.0, 0.5)], "test": [(0.0, 1.2), (1.0, 0.7)]},
        title="loss",
        x_label="epoch",
        y_label="loss",
    )
    root = _parse(svg)
    assert root.tag == f"{SVG_NS}svg"
    assert root.get("width") == str(WIDTH)
    assert root.get("height") == str(HEIGHT)
    polylines = _tags(root, "polyline")
    assert len(polylines) == 2
    # series drawn in sorted name order: "test" before "train"
    assert polylines[0].get("stroke") == PALETTE[0]
    assert polylines[1].get("stroke") == PALETTE[1]
    texts = [t.text for t in _tags(root, "text")]
    assert "test" in texts and "train" in texts and "loss" in texts


def test_line_chart_deterministic():
    series = {"a": [(0.0, 0.0), (2.0, 4.0)]}
    assert line_chart(series, "t", "x", "y") == line_chart(series, "t", "x", "y")


def test_line_chart_escapes_markup_in_title():
    svg = line_chart({"s": [(0.0, 1.0)]}, title="a < b & c", x_label="x",
                     y_label="y")
    root = _parse(svg)
    assert "a < b & c" in [t.text for t in _tags(root, "text")]
    assert "<b &" not in svg


def test_line_chart_handles_empty_series_dict():
    root = _parse(line_chart({}, "empty", "x", "y"))
    assert not _tags(root, "polyline")


def test_scatter_chart_points_and_labels():
    pts = [(0.1, 0.2, "alice"), (0.5, 0.9, "bob"), (0.7, 0.1, "carol")]
    svg = scatter_chart(pts, "players", "minutes", "rating", labeled=2)
    root = _parse(svg)
    assert len(_tags(root, "circle")) == 3
    texts = [t.text for t in _tags(root, "text")]
    assert "alice" in texts and "bob" in texts
    assert "carol" not in texts


def test_scatter_chart_constant_values_still_render():
    svg = scatter_chart([(1.0, 1.0, ""), (1.0, 1.0, "")], "t", "x", "y")
    assert len(_tags(_parse(svg), "circle")) == 2


def test_calibration_chart_from_real_bins():
    probs = [0.05, 0.12, 0.3, 0.34, 0.71, 0.88, 0.93]
    labels = [False, False, False, True, True, True, True]
    bins = calibration_bins(probs, labels, n_bins=10)
    svg = calibration_chart(bins)
    root = _parse(svg)
    # one marker circle per occupied bin, plus a count label for each
    assert len(_tags(root, "circle")) == len(bins)
    counts = {b.count for b in bins}
    texts = {t.text for t in _tags(root, "text")}
    assert {str(c) for c in counts} <= texts
    # diagonal reference line plus axes
    dashed = [ln for ln in _tags(root, "line") if ln.get("stroke-dasharray")]
    assert len(dashed) == 1


def test_calibration_chart_empty_bins_is_just_the_frame():
    root = _parse(calibration_chart([]))
    assert not _tags(root, "polyline")
    assert not _tags(root, "circle")
