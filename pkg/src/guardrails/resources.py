"""Access to data files bundled with the package."""
from __future__ import annotations

import json
from importlib.resources import files
from pathlib import Path
from typing import Any


def data_path(name: str) -> Path:
    return Path(str(files("guardrails").joinpath("data", name)))


def load_data_json(name: str) -> Any:
    return json.loads(data_path(name).read_text("utf-8"))
