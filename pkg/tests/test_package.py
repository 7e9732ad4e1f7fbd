# dependencies
from magkern import __author__, __version__
from magkern import typing as hints


# test functions
def test_version():
    assert __version__ == "0.1.0"


def test_author():
    assert __author__ == "Akio Taniguchi"


def test_type_hints():
    assert set(hints.__all__) == {"Integrand", "Integrand2D", "Number", "Point"}

    for name in hints.__all__:
        assert hasattr(hints, name)
