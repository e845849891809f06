"""CSV output writer for character and graded tables."""
from pathlib import Path

import pandas as pd
import structlog

from src.repengine.models import CharacterTable, DecompositionTable
from src.weylfusion.models import GradedTable

logger = structlog.get_logger()


def character_frame(table: CharacterTable) -> pd.DataFrame:
    """One row per weight: lambda(h_i) columns, c1, d1, dim and exact."""
    rows = []
    for entry in table.weights:
        *fin, c1, d1 = entry.weight
        row = {f"h{i}": value for i, value in enumerate(fin, 1)}
        row.update({"c1": c1, "d1": d1, "dim": entry.dim, "exact": entry.exact})
        rows.append(row)
    return pd.DataFrame(rows)


def graded_frame(table: GradedTable) -> pd.DataFrame:
    """One row per (degree, weight) piece of the associated graded module."""
    rows = []
    for entry in table.entries:
        row = {"degree": entry.degree}
        row.update({f"w{i}": value for i, value in enumerate(entry.weight)})
        row["dim"] = entry.dim
        rows.append(row)
    frame = pd.DataFrame(rows)
    if not frame.empty:
        frame = frame.sort_values("degree", kind="stable")
    return frame


def decomposition_frame(table: DecompositionTable) -> pd.DataFrame:
    rows = [
        {"weight": " ".join(entry.weight), "multiplicity": entry.multiplicity, "exact": entry.exact}
        for entry in table.entries
    ]
    return pd.DataFrame(rows)


class CSVWriter:
    """Writer for outputting tables to CSV files."""

    def __init__(self, output_dir: str = "./data/csv"):
        """
        Initialize CSV writer.

        Args:
            output_dir: Directory to write CSV files to
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        logger.info("csv_writer_initialized", output_dir=str(self.output_dir))

    def write_frame(self, frame: pd.DataFrame, filename: str) -> Path:
        """
        Write a DataFrame atomically.

        Returns:
            Path to the written file
        """
        filepath = self.output_dir / filename
        temp_filepath = filepath.with_suffix(".tmp")
        try:
            frame.to_csv(temp_filepath, index=False)
            # Atomic rename
            temp_filepath.replace(filepath)
            logger.info("csv_file_written", filepath=str(filepath), rows=len(frame))
            return filepath
        except Exception as e:
            logger.error("csv_write_failed", filepath=str(filepath), error=str(e))
            if temp_filepath.exists():
                temp_filepath.unlink()
            raise

    def write_character(self, table: CharacterTable, filename: str) -> Path:
        return self.write_frame(character_frame(table), filename)

    def write_graded(self, table: GradedTable, filename: str) -> Path:
        return self.write_frame(graded_frame(table), filename)

    def write_decomposition(self, table: DecompositionTable, filename: str) -> Path:
        return self.write_frame(decomposition_frame(table), filename)
