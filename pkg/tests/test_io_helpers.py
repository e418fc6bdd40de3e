"""Testes de leitura/escrita de CSV e JSON e do gerenciador de arquivos."""

import math

import numpy as np
import pandas as pd
import pytest

from utils.csv_helpers import (
    frame_to_csv_text,
    read_numeric_csv,
    read_response_csv,
    select_column,
    write_csv,
)
from utils.errors import ParseError
from utils.file_manager import ResultFileManager
from utils.json_helpers import dumps_stable, load_json_file, safe_json_parse, to_jsonable


class TestReadCsv:
    def test_header_is_detected(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("a,b\n1,2.5\n3,-4e-1\n")
        values, header = read_numeric_csv(path)
        assert header == ["a", "b"]
        assert values.tolist() == [[1.0, 2.5], [3.0, -0.4]]

    def test_without_header(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1,2\n3,4\n")
        values, header = read_numeric_csv(path)
        assert header is None
        assert values.shape == (2, 2)

    def test_bad_cell_reports_line_and_column(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("a,b\n1,2\n3,x\n")
        with pytest.raises(ParseError) as excinfo:
            read_numeric_csv(path)
        assert (excinfo.value.line, excinfo.value.column) == (3, 2)
        assert "x.csv:3" in str(excinfo.value)

    def test_non_finite_cell(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1,inf\n")
        with pytest.raises(ParseError):
            read_numeric_csv(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("")
        with pytest.raises(ParseError):
            read_numeric_csv(path)

    def test_header_only(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("a,b\n")
        with pytest.raises(ParseError):
            read_numeric_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_numeric_csv(tmp_path / "missing.csv")

    def test_response_must_have_one_column(self, tmp_path):
        path = tmp_path / "y.csv"
        path.write_text("1,2\n")
        with pytest.raises(ParseError):
            read_response_csv(path)
        path.write_text("y\n1\n2\n")
        assert read_response_csv(path).tolist() == [1.0, 2.0]


class TestSelectColumn:
    def test_by_name_and_index(self):
        values = np.arange(6.0).reshape(2, 3)
        remaining, column, index = select_column(values, ["a", "y", "b"], "y", "x.csv")
        assert index == 1
        assert column.tolist() == [1.0, 4.0]
        assert remaining.tolist() == [[0.0, 2.0], [3.0, 5.0]]
        assert select_column(values, None, "2", "x.csv")[2] == 2

    @pytest.mark.parametrize("column", ["z", "7"])
    def test_unknown_column(self, column):
        with pytest.raises(ParseError):
            select_column(np.zeros((2, 3)), ["a", "b", "c"], column, "x.csv")


def test_csv_text_is_stable():
    frame = pd.DataFrame({"rep": [0, "mean"], "ee": [0.1, None]}, dtype=object)
    assert frame_to_csv_text(frame) == "rep,ee\n0,0.1\nmean,\n"


def test_write_csv_creates_parent(tmp_path):
    path = write_csv(pd.DataFrame({"a": [1]}), tmp_path / "sub" / "out.csv")
    assert path.read_text() == "a\n1\n"


class TestJson:
    def test_numpy_and_negative_zero(self):
        data = {"values": np.array([1.5, -0.0]), "k": np.int64(3), "ok": np.bool_(True), "z": -0.0}
        assert to_jsonable(data) == {"values": [1.5, 0.0], "k": 3, "ok": True, "z": 0.0}
        assert dumps_stable(data).endswith("\n")
        assert "-0.0" not in dumps_stable(data)

    def test_floats_round_trip(self):
        value = 0.1 + 0.2
        assert safe_json_parse(dumps_stable({"v": value}))["v"] == value

    def test_parse_error_location(self):
        with pytest.raises(ParseError) as excinfo:
            safe_json_parse('{\n  "a": 1,\n  "b": }', "groups.json")
        assert excinfo.value.line == 3
        assert excinfo.value.path == "groups.json"

    def test_infinity_is_preserved(self):
        assert math.isinf(safe_json_parse(dumps_stable({"v": math.inf}))["v"])


def test_result_file_manager(tmp_path):
    files = ResultFileManager(tmp_path / "output")
    saved = files.save_json({"a": [1, 2]}, "fit.json")
    assert saved == tmp_path / "output" / "fit.json"
    assert files.load_json("fit.json") == {"a": [1, 2]}
    files.save_csv(pd.DataFrame({"a": [1]}), "trace.csv")
    assert [p.name for p in files.list_files()] == ["fit.json", "trace.csv"]
    nested = files.save_json({}, tmp_path / "other" / "x.json")
    assert nested == tmp_path / "other" / "x.json"
    assert load_json_file(nested) == {}
