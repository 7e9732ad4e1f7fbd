# standard library
import json


# dependencies
import toml
import yaml
from magkern import DomainError
from magkern.config import default_jobs, load_config
from pytest import mark, raises


# constants
CONFIG = {"eb0": 1.0, "m": 1.0, "grid": ["r:0.05:10:60:log"], "out-format": "csv"}


# test functions
@mark.parametrize("suffix", [".json", ".toml", ".yaml", ".yml"])
def test_load_config(tmp_path, suffix):
    path = tmp_path / f"run{suffix}"

    if suffix == ".json":
        path.write_text(json.dumps(CONFIG))
    elif suffix == ".toml":
        path.write_text(toml.dumps(CONFIG))
    else:
        path.write_text(yaml.safe_dump(CONFIG))

    config = load_config(path)

    assert config["eb0"] == 1.0
    assert config["grid"] == ["r:0.05:10:60:log"]
    assert config["out_format"] == "csv"


def test_load_config_invalid(tmp_path):
    with raises(DomainError):
        load_config(tmp_path / "run.ini")

    path = tmp_path / "run.yaml"
    path.write_text("- 1\n- 2\n")

    with raises(DomainError):
        load_config(path)


def test_default_jobs():
    assert default_jobs({}) == 1
    assert default_jobs({"MAGKERN_JOBS": "4"}) == 4

    with raises(DomainError):
        default_jobs({"MAGKERN_JOBS": "four"})

    with raises(DomainError):
        default_jobs({"MAGKERN_JOBS": "0"})
