"""Tests for the JSON and CSV writers."""
import json

import pandas as pd

from src.repengine.analysis import character
from src.storage.csv_writer import CSVWriter, character_frame, graded_frame
from src.storage.json_writer import JSONWriter, render_payload
from src.weylfusion.models import GradedEntry, GradedTable


class TestRenderPayload:
    def test_sorted_with_schema(self):
        text = render_payload({"b": 1, "a": [2]})
        assert text.endswith("\n")
        assert list(json.loads(text)) == ["a", "b", "schema"]
        assert json.loads(text)["schema"] == 1

    def test_existing_schema_kept(self):
        assert json.loads(render_payload({"schema": 7}))["schema"] == 7

    def test_models_rendered(self, doublet):
        document = json.loads(render_payload(character(doublet)))
        assert document["module"] == doublet.descriptor()
        assert [w["weight"] for w in document["weights"]] == [["1", "0", "0"], ["-1", "0", "0"]]


class TestJSONWriter:
    def test_write_and_read(self, tmp_path):
        writer = JSONWriter(output_dir=str(tmp_path / "json"))
        path = writer.write({"value": 3}, "result.json")
        assert path.exists()
        assert not list(path.parent.glob("*.tmp"))
        assert writer.read("result.json") == {"schema": 1, "value": 3}

    def test_missing_file(self, tmp_path):
        assert JSONWriter(output_dir=str(tmp_path)).read("absent.json") is None


class TestCSVWriter:
    def test_character_frame(self, doublet):
        frame = character_frame(character(doublet))
        assert list(frame.columns) == ["h1", "c1", "d1", "dim", "exact"]
        assert frame["dim"].tolist() == [1, 1]

    def test_graded_frame_sorted(self):
        table = GradedTable(
            module="m",
            degrees=[1, 1],
            entries=[GradedEntry(degree=1, weight=["-1"], dim=1), GradedEntry(degree=0, weight=["1"], dim=1)],
        )
        frame = graded_frame(table)
        assert frame["degree"].tolist() == [0, 1]
        assert list(frame.columns) == ["degree", "w0", "dim"]

    def test_write_character(self, tmp_path, doublet):
        writer = CSVWriter(output_dir=str(tmp_path / "csv"))
        path = writer.write_character(character(doublet), "doublet.csv")
        assert not list(path.parent.glob("*.tmp"))
        assert len(pd.read_csv(path)) == 2
