"""Tests for matrix text files."""

import numpy as np
import pytest

from geptrace.errors import ParseError
from geptrace.gep.generate import make_instance
from geptrace.utils import format_matrix, parse_matrix, read_matrix, write_matrix


class TestParseMatrix:
    """Test parsing."""

    def test_comments_and_blank_lines(self):
        """Test that comments and blank lines are skipped."""
        text = "# header comment\n2 2\n\n1 2  # first row\n3 4\n"
        np.testing.assert_array_equal(parse_matrix(text), [[1.0, 2.0], [3.0, 4.0]])

    def test_read_only(self):
        """Test that parsed matrices are read-only."""
        assert not parse_matrix("1 1\n5\n").flags.writeable

    @pytest.mark.parametrize(
        "text,line",
        [
            ("2\n1 2\n", 1),
            ("x 2\n1 2\n", 1),
            ("2 2\n1 2\n3\n", 3),
            ("2 2\n1 two\n3 4\n", 2),
            ("1 2\n1 inf\n", 2),
            ("1 1\n1\n2\n", 3),
            ("2 1\n1\n", 2),
        ],
    )
    def test_errors_name_line(self, text, line):
        """Test that parse errors carry the offending line number."""
        with pytest.raises(ParseError) as exc:
            parse_matrix(text, "m.txt")
        assert exc.value.line == line
        assert str(exc.value).startswith(f"m.txt:{line}:")

    def test_empty(self):
        """Test that an empty file is rejected."""
        with pytest.raises(ParseError):
            parse_matrix("# nothing\n")


class TestMatrixFiles:
    """Test reading and writing files."""

    def test_round_trip_is_exact(self, tmp_path):
        """Test that written values read back bit-identically."""
        a = make_instance(5, "gap:0.3", b_cond=7.0, seed=4).A
        path = write_matrix(tmp_path / "a.txt", a)
        np.testing.assert_array_equal(read_matrix(path), a)

    def test_format(self):
        """Test the header and 17-digit values."""
        text = format_matrix(np.array([[0.1, 1.0]]))
        assert text == "1 2\n0.10000000000000001 1\n"

    def test_missing_file(self, tmp_path):
        """Test that an unreadable file raises ParseError with its path."""
        with pytest.raises(ParseError) as exc:
            read_matrix(tmp_path / "absent.txt")
        assert exc.value.line is None
        assert "absent.txt" in str(exc.value)

    def test_fixture_short_row(self, matrix_dir):
        """Test the short-row fixture fails on line 3."""
        with pytest.raises(ParseError) as exc:
            read_matrix(matrix_dir / "short_row.txt")
        assert exc.value.line == 3

    def test_invalid_utf8(self, tmp_path):
        """Test that undecodable bytes raise ParseError naming the file."""
        path = tmp_path / "binary.txt"
        path.write_bytes(b"\xff\xfe")
        with pytest.raises(ParseError) as exc:
            read_matrix(path)
        assert "binary.txt" in str(exc.value)
        assert "UTF-8" in exc.value.reason
