# GDSettingsManager.py

from contextlib import contextmanager
import csv
import io
import json
import logging
import math
from pathlib import Path
import sys
from typing import Any, Dict, Iterator, Optional, Sequence, TextIO

from .GDConfig import Config
from .GDErrors import SettingsFileError

logger = logging.getLogger("GHZDecay.SettingsManager")


def format_value(value: Any) -> str:
    """Locale-independent CSV cell; floats keep 17 significant digits"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, f".{Config.CSV_SIGNIFICANT_DIGITS}g")
    if isinstance(value, (list, tuple)):
        return ";".join(format_value(item) for item in value)
    return str(value)


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(item) for item in value]
    return value


class SettingsFileManager:
    """Handles configuration files and result output"""

    @staticmethod
    def load_settings(file_path: Path) -> Dict[str, Any]:
        """Load a JSON object from file"""
        try:
            with open(file_path, 'r') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise SettingsFileError(f"Invalid JSON format in {file_path}: {e}")
        except OSError as e:
            raise SettingsFileError(f"Failed to load settings: {e}")
        if not isinstance(data, dict):
            raise SettingsFileError(f"{file_path} must contain a JSON object")
        return data

    @staticmethod
    def save_settings(file_path: Path, settings: Dict[str, Any]) -> None:
        """Save settings to a JSON file"""
        try:
            with open(file_path, 'w') as f:
                json.dump(_json_safe(settings), f, indent=4)
        except (OSError, TypeError) as e:
            raise SettingsFileError(f"Failed to save settings: {e}")

    @staticmethod
    @contextmanager
    def open_output(out: Optional[str]) -> Iterator[TextIO]:
        """Yield stdout when out is None, otherwise the opened file"""
        if out is None or out == "-":
            yield sys.stdout
            return
        try:
            handle = open(out, 'w', newline='')
        except OSError as e:
            raise SettingsFileError(f"Cannot write {out}: {e}")
        try:
            yield handle
        finally:
            handle.close()

    @staticmethod
    def render_rows(rows: Sequence[Dict[str, Any]], fieldnames: Sequence[str],
                    output_format: str = "csv") -> str:
        """
        Serialize result rows.

        Args:
            rows: one mapping per row, keyed by fieldnames
            fieldnames: column order (CSV header)
            output_format: "csv" or "json"
        Returns:
            The text, newline-terminated
        """
        if output_format == "json":
            records = [{name: _json_safe(row.get(name)) for name in fieldnames} for row in rows]
            return json.dumps(records, indent=2, allow_nan=False) + "\n"
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([format_value(row.get(name)) for name in fieldnames])
        return buffer.getvalue()

    @classmethod
    def write_rows(cls, rows: Sequence[Dict[str, Any]], fieldnames: Sequence[str],
                   output_format: str = "csv", out: Optional[str] = None) -> None:
        text = cls.render_rows(rows, fieldnames, output_format)
        with cls.open_output(out) as handle:
            handle.write(text)
        if out:
            logger.info(f"Wrote {len(rows)} rows to {out}")
