"""JSON serialization for reports.

Floats are written with Python's shortest round-trip repr, so a value read
back is bit-identical to the one written. NaN and infinities are rejected.
"""

import json
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def dumps(data: Any) -> str:
    """
    Serialize to an indented JSON string.

    Raises:
        ValueError: If data contains a non-finite float
    """
    return json.dumps(_plain(data), indent=2, allow_nan=False) + "\n"


def write_json(data: Any, output_path: Optional[Union[str, Path]] = None) -> str:
    """Serialize data and write it to output_path when given; returns the text."""
    text = dumps(data)
    if output_path is not None:
        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(text, encoding="utf-8")
    return text
