"""
Persistent store of report records as JSON-lines files.
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, List, Union
import logging
import re

import aiofiles

logger = logging.getLogger(__name__)

_NAME_PATTERN = re.compile(r"^[A-Za-z0-9_.-]+$")


class ReportStore:
    """Save and load named reports under a base directory."""

    def __init__(self, base_path: Union[str, Path]):
        self.base_path = Path(base_path)
        self._cache: Dict[str, str] = {}

    def _path(self, name: str) -> Path:
        if not _NAME_PATTERN.match(name):
            raise ValueError(f"Invalid report name: {name}")
        return self.base_path / f"{name}.jsonl"

    async def save(self, name: str, records: List[Dict[str, Any]]) -> Path:
        """Write records, one JSON object per line, replacing any report of the same name."""
        path = self._path(name)
        os.makedirs(self.base_path, exist_ok=True)
        text = "".join(json.dumps(record) + "\n" for record in records)
        async with aiofiles.open(path, "w") as handle:
            await handle.write(text)
        self._cache[name] = text
        logger.info(f"saved report {name} with {len(records)} records")
        return path

    async def read_text(self, name: str) -> str:
        if name in self._cache:
            return self._cache[name]
        path = self._path(name)
        if not path.exists():
            raise FileNotFoundError(f"Report not found: {name}")
        async with aiofiles.open(path, "r") as handle:
            text = await handle.read()
        self._cache[name] = text
        return text

    async def load(self, name: str) -> List[Dict[str, Any]]:
        text = await self.read_text(name)
        return [json.loads(line) for line in text.splitlines() if line.strip()]

    def list_reports(self) -> List[str]:
        """Names of stored reports, sorted."""
        if not self.base_path.exists():
            return []
        return sorted(path.stem for path in self.base_path.glob("*.jsonl"))
