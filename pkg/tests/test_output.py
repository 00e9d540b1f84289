import json
import math
from enum import Enum

import numpy as np
import pytest

import library.config as config
from library.errors import ConfigError
from library.output import ResultDocument, plain, render_csv, render_json, resolve_out_file, write_document


class Color(Enum):
    RED = "red"


def sample_document() -> ResultDocument:
    return ResultDocument(config={"n": 3, "p": "inf"},
                          results=[{"C": 8 / 3, "path": "closed-form"}, {"C": np.float64(0.1), "path": "disc-reduction"}],
                          diagnostics={"regime": "infinity", "passed": True})


def test_plain_values():
    assert plain({"a": np.int64(3), "b": np.array([0.5, 1.5]), "c": Color.RED, "d": np.bool_(True)}) == \
           {"a": 3, "b": [0.5, 1.5], "c": "red", "d": True}
    assert plain(math.nan) == "nan"
    assert plain(-math.inf) == "-inf"
    assert plain((1, None)) == [1, None]


def test_json_is_sorted_and_round_trips_floats():
    text = render_json(sample_document())
    assert text.endswith("}\n")
    data = json.loads(text)
    assert list(data) == ["config", "diagnostics", "results"]
    assert data["results"][0]["C"] == 8 / 3


def test_csv_header_block():
    lines = render_csv(sample_document()).splitlines()
    assert lines[:4] == ['# config.n: 3', '# config.p: inf', '# diagnostics.passed: true',
                         '# diagnostics.regime: infinity']
    assert lines[4] == "C,path"
    assert float(lines[5].split(",")[0]) == 8 / 3


def test_rendering_is_deterministic():
    assert render_csv(sample_document()) == render_csv(sample_document())
    assert render_json(sample_document()) == render_json(sample_document())


def test_relative_out_file_goes_to_the_output_directory(tmp_path, monkeypatch):
    monkeypatch.setenv(config.OUTPUT_DIR_ENV, str(tmp_path))
    assert resolve_out_file("r.json") == str(tmp_path / "r.json")
    assert resolve_out_file(str(tmp_path / "abs.json")) == str(tmp_path / "abs.json")


def test_write_document_creates_directories(tmp_path, monkeypatch):
    monkeypatch.setenv(config.OUTPUT_DIR_ENV, str(tmp_path))
    write_document(sample_document(), "csv", "nested/run.csv")
    assert (tmp_path / "nested" / "run.csv").read_text(encoding='utf8').startswith("# config.n: 3")


def test_write_document_to_stdout(capsys):
    write_document(sample_document(), "json")
    assert json.loads(capsys.readouterr().out)["config"]["p"] == "inf"


def test_write_document_errors(tmp_path):
    with pytest.raises(ConfigError):
        write_document(sample_document(), "xml")
    blocker = tmp_path / "file"
    blocker.write_text("", encoding='utf8')
    with pytest.raises(ConfigError):
        write_document(sample_document(), "json", str(blocker / "run.json"))
