# standard library
import json
from io import StringIO


# dependencies
import numpy as np
import pandas as pd
from magkern import GridSpec
from magkern.report import Format, flatten, to_csv, to_json, write_report
from pytest import raises


# constants
ROWS = [
    {"r": 0.1, "value": 1 / 3, "kernel": complex(0.1, -2 / 7)},
    {"r": 0.2, "value": np.float64(np.pi), "kernel": np.complex128(1e-300 + 1j)},
]


# test functions
def test_flatten():
    flat = flatten(ROWS[1])

    assert flat == {"r": 0.2, "value": np.pi, "re_kernel": 1e-300, "im_kernel": 1.0}
    assert type(flat["value"]) is float


def test_csv_round_trip():
    text = to_csv(ROWS)
    frame = pd.read_csv(StringIO(text), float_precision="round_trip")

    assert text.splitlines()[0] == "r,value,re_kernel,im_kernel"
    assert frame["value"].tolist() == [1 / 3, np.pi]
    assert frame["im_kernel"].tolist() == [-2 / 7, 1.0]
    assert frame["re_kernel"].tolist() == [0.1, 1e-300]


def test_csv_from_dataset():
    grid = GridSpec.parse(["r:0.1:1:3:lin", "eb0:0:1:2:lin"])
    values = [p["r"] + 1j * p["eb0"] for p in grid.points()]
    dataset = grid.to_dataarray(values, "value").to_dataset()
    frame = pd.read_csv(StringIO(to_csv(dataset)), float_precision="round_trip")

    assert list(frame.columns) == ["r", "eb0", "re_value", "im_value"]
    assert frame["re_value"].tolist() == [p["r"] for p in grid.points()]
    assert frame["im_value"].tolist() == [p["eb0"] for p in grid.points()]


def test_json_report():
    text = to_json("mehler", {"x": (0.0, 0.0, 0.0)}, ROWS, 1.5, {"pass": True})
    report = json.loads(text)

    assert list(report) == ["target", "params", "results", "certificate", "runtime_ms"]
    assert report["params"]["x"] == [0.0, 0.0, 0.0]
    assert report["results"][0]["im_kernel"] == -2 / 7
    assert report["results"][1]["value"] == np.pi
    assert report["certificate"] == {"pass": True}


def test_json_report_without_certificate():
    report = json.loads(to_json("free", {}, [], 0.0))

    assert "certificate" not in report


def test_write_report(tmp_path):
    path = tmp_path / "report.json"
    write_report("{}", path)
    stream = StringIO()
    write_report("a,b", stream=stream)

    assert path.read_text() == "{}"
    assert stream.getvalue() == "a,b\n"
    assert Format("csv") is Format.CSV

    with raises(ValueError):
        write_report("{}")
