# dependencies
import numpy as np
from magkern import Axis, DomainError, GridSpec, Spacing
from pytest import approx, mark, raises


# constants
AXES = ["r:0.05:10:4:log", "eb0:0:5:3:lin"]


# test functions
def test_axis_parse():
    axis = Axis.parse("r:0.05:10:60:log")

    assert axis == Axis("r", 0.05, 10.0, 60, Spacing.LOG)
    assert axis.values[0] == approx(0.05)
    assert axis.values[-1] == approx(10.0)
    assert np.allclose(np.diff(np.log(axis.values)), np.log(200) / 59)
    assert Axis.parse(str(axis)) == axis


@mark.parametrize(
    "text",
    [
        "r:1:2:3",
        "r:2:1:3:lin",
        "r:0:1:3:log",
        "r:0:1:1:lin",
        "r:0:1:3:cubic",
        "1r:0:1:3:lin",
        "r:a:1:3:lin",
    ],
)
def test_axis_invalid(text):
    with raises(DomainError):
        Axis.parse(text)


def test_grid_points_in_c_order():
    grid = GridSpec.parse(AXES)
    points = list(grid.points())

    assert grid.names == ["r", "eb0"]
    assert grid.shape == (4, 3)
    assert grid.size == len(points) == 12
    assert [p["eb0"] for p in points[:3]] == [0.0, 2.5, 5.0]
    assert points[0]["r"] == points[2]["r"] < points[3]["r"]


def test_grid_explicit_values():
    grid = GridSpec.of(Axis("t", 0.1, 1.0, 2), m=[0.5, 1, 2], spin=(1, -1))

    assert grid.shape == (2, 3, 2)
    assert list(grid.coords()["spin"]) == [1.0, -1.0]
    assert grid.meshgrid()["m"].shape == (2, 3, 2)


def test_grid_duplicate_names():
    with raises(DomainError):
        GridSpec.parse(["r:0:1:2:lin", "r:1:2:2:lin"])

    with raises(DomainError):
        GridSpec.of(Axis("m", 0.1, 1.0, 2), m=[1.0])


def test_grid_seed():
    a = GridSpec.parse(AXES, seed=7).rng().normal(size=5)
    b = GridSpec.parse(AXES, seed=7).rng().normal(size=5)
    c = GridSpec.parse(AXES, seed=8).rng().normal(size=5)

    assert (a == b).all()
    assert not (a == c).all()


def test_grid_to_dataarray():
    grid = GridSpec.parse(AXES)
    values = [p["r"] * p["eb0"] for p in grid.points()]
    array = grid.to_dataarray(values, "product")

    assert array.dims == ("r", "eb0")
    assert array.name == "product"
    assert float(array.isel(r=1, eb0=2)) == approx(grid.coords()["r"][1] * 5.0)


def test_grid_describe():
    grid = GridSpec.of(Axis("z", 1e-6, 50.0, 10, Spacing.LOG), k=(1, 2), seed=3)

    assert grid.describe() == {
        "axes": ["z:1e-06:50.0:10:log"],
        "values": {"k": [1.0, 2.0]},
        "seed": 3,
    }
