"""JSON output writer for computation results."""
import json
from pathlib import Path
from typing import Any, Dict, Optional

import structlog
from pydantic import BaseModel

from src.harness.models import SCHEMA_VERSION

logger = structlog.get_logger()


def render_payload(payload: Any) -> str:
    """
    Deterministic JSON text: sorted keys, fixed indentation and a top-level schema field.

    Args:
        payload: A pydantic model or a JSON-ready dict

    Returns:
        The JSON document followed by a newline
    """
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json", by_alias=True)
    if isinstance(payload, dict) and "schema" not in payload:
        payload = {"schema": SCHEMA_VERSION, **payload}
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


class JSONWriter:
    """Writer for outputting result documents to JSON files."""

    def __init__(self, output_dir: str = "./data/json"):
        """
        Initialize JSON writer.

        Args:
            output_dir: Directory to write JSON files to
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        logger.info("json_writer_initialized", output_dir=str(self.output_dir))

    def write(self, payload: Any, filename: str) -> Path:
        """
        Write one result document.

        Args:
            payload: A pydantic model or a JSON-ready dict
            filename: File name inside the output directory

        Returns:
            Path to the written file
        """
        filepath = self.output_dir / filename
        temp_filepath = filepath.with_suffix(".tmp")
        try:
            # Write to temporary file first for atomic operation
            temp_filepath.write_text(render_payload(payload), encoding="utf-8")
            temp_filepath.replace(filepath)
            logger.info("json_file_written", filepath=str(filepath))
            return filepath
        except Exception as e:
            logger.error("json_write_failed", filepath=str(filepath), error=str(e))
            if temp_filepath.exists():
                temp_filepath.unlink()
            raise

    def read(self, filename: str) -> Optional[Dict[str, Any]]:
        """Load a previously written document, or None when it does not exist."""
        filepath = self.output_dir / filename
        if not filepath.exists():
            logger.warning("file_not_found", filepath=str(filepath))
            return None
        with open(filepath, "r", encoding="utf-8") as f:
            return json.load(f)
