"""Plain-text matrix files.

Format: the first line holds "rows cols", each following line one row of
whitespace-separated decimals. Text after '#' is a comment; blank lines are
ignored.
"""

import math
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from ..errors import ParseError
from ..linalg.matcore import Matrix

PathLike = Union[str, Path]


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((number, content))
    return lines


def _parse_header(path: PathLike, number: int, content: str) -> Tuple[int, int]:
    tokens = content.split()
    if len(tokens) != 2:
        raise ParseError(f"header must be 'rows cols', got '{content}'", path, number)
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError(f"header must hold two integers, got '{content}'", path, number) from None
    if rows < 1 or cols < 1:
        raise ParseError(f"dimensions must be positive, got {rows} x {cols}", path, number)
    return rows, cols


def parse_matrix(text: str, path: PathLike = "<string>") -> Matrix:
    """
    Parse matrix text.

    Raises:
        ParseError: With the offending line for malformed headers, rows of the
            wrong length, non-numeric or non-finite entries, or a row count that
            does not match the header
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty matrix file", path)

    header_line, header = lines[0]
    rows, cols = _parse_header(path, header_line, header)
    body = lines[1:]

    data = np.empty((rows, cols), dtype=np.float64)
    for index, (number, content) in enumerate(body):
        if index >= rows:
            raise ParseError(f"more than {rows} rows", path, number)
        tokens = content.split()
        if len(tokens) != cols:
            raise ParseError(f"expected {cols} values, got {len(tokens)}", path, number)
        for j, token in enumerate(tokens):
            try:
                value = float(token)
            except ValueError:
                raise ParseError(f"invalid number '{token}'", path, number) from None
            if not math.isfinite(value):
                raise ParseError(f"non-finite value '{token}'", path, number)
            data[index, j] = value

    if len(body) < rows:
        last_line = body[-1][0] if body else header_line
        raise ParseError(f"expected {rows} rows, got {len(body)}", path, last_line)

    data.setflags(write=False)
    return data


def read_matrix(path: PathLike) -> Matrix:
    """
    Read a matrix file.

    Raises:
        ParseError: If the file cannot be read or parsed
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"not valid UTF-8 (byte {e.start})", path) from e
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror or e}", path) from e
    return parse_matrix(text, path)


def format_matrix(matrix: np.ndarray) -> str:
    """Render a matrix in the file format with 17 significant digits."""
    m = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
    rows = [" ".join(f"{value:.17g}" for value in row) for row in m]
    return "\n".join([f"{m.shape[0]} {m.shape[1]}"] + rows) + "\n"


def write_matrix(path: PathLike, matrix: np.ndarray) -> Path:
    """Write a matrix file; values round-trip exactly."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_matrix(matrix))
    return path
