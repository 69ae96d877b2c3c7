"""
File targets for curve tables and run metadata.
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


class FileTarget:
    """
    Directory that curve CSVs and JSON sidecars are written into.

    Files are written relative to ``base_path`` with overwrite protection.
    Every failure is an ``OSError`` so the command line can report it as an
    I/O error.
    """

    def __init__(self, base_path: str, overwrite: bool = False):
        """
        Args:
            base_path: Directory to write into; must exist and be writable
            overwrite: Replace files that already exist

        Raises:
            FileNotFoundError: If the directory does not exist
            NotADirectoryError: If base_path is a file
            PermissionError: If the directory is not writable
        """
        self.base_path = os.path.abspath(base_path)
        self.overwrite = overwrite

        if not os.path.exists(self.base_path):
            raise FileNotFoundError(f"Directory does not exist: {self.base_path}")
        if not os.path.isdir(self.base_path):
            raise NotADirectoryError(f"Path is not a directory: {self.base_path}")
        if not os.access(self.base_path, os.W_OK):
            raise PermissionError(f"Directory is not writable: {self.base_path}")

    @classmethod
    def for_file(cls, path: str, overwrite: bool = False) -> "FileTarget":
        """Target rooted at the directory that contains ``path``."""
        return cls(os.path.dirname(os.path.abspath(path)), overwrite=overwrite)

    def full_path(self, file_path: str) -> str:
        return os.path.join(self.base_path, file_path)

    def ensure_directory_exists(self, file_path: str) -> None:
        directory = os.path.dirname(self.full_path(file_path))
        if directory and not os.path.exists(directory):
            os.makedirs(directory, exist_ok=True)

    def check_existing_files(self, file_paths: List[str]) -> List[str]:
        return [path for path in file_paths if os.path.exists(self.full_path(path))]

    def validate_overwrite(self, file_paths: List[str], overwrite: Optional[bool] = None) -> None:
        """
        Raises:
            FileExistsError: If any of the files exist and overwriting is off
        """
        use_overwrite = overwrite if overwrite is not None else self.overwrite
        if not use_overwrite:
            existing_files = self.check_existing_files(file_paths)
            if existing_files:
                raise FileExistsError(f"Files already exist: {existing_files}. Pass --overwrite to replace them.")

    def _write_text(self, file_path: str, text: str) -> str:
        self.ensure_directory_exists(file_path)
        self.validate_overwrite([file_path])
        full_path = self.full_path(file_path)
        # newline="" keeps LF endings on every platform
        with open(full_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        return full_path

    def write_csv(self, file_path: str, csv_data: str) -> Dict[str, Any]:
        """
        Write CSV text to a file.

        Returns:
            Dict with file_path, bytes_written and rows_written (header excluded)
        """
        full_path = self._write_text(file_path, csv_data)
        rows_written = max(csv_data.count("\n") - 1, 0)
        logger.debug("wrote %s (%d rows)", full_path, rows_written)
        return {"file_path": full_path, "bytes_written": os.path.getsize(full_path), "rows_written": rows_written}

    def write_json(self, file_path: str, record: Dict[str, Any]) -> Dict[str, Any]:
        """Write a flat JSON object, keys in insertion order, LF-terminated."""
        full_path = self._write_text(file_path, json.dumps(record, indent=2, allow_nan=False) + "\n")
        return {"file_path": full_path, "bytes_written": os.path.getsize(full_path)}
