"""Tests for reading and writing matrix files."""
import json
import os

import numpy as np
import pytest

from formstab.errors import MatrixFileError
from formstab.matrix_io import MM_HEADER, format_from_path, format_matrix, read_matrix, write_matrix


class TestFormatMatrix:
    """Tests for the text formats."""

    def test_matrix_market_layout(self):
        """Header, size line, then entries column by column."""
        text = format_matrix(np.array([[1.0, 2.0], [3.0, 4.0]]), 'mm')
        assert text.splitlines() == [MM_HEADER, '2 2', '1', '3', '2', '4']

    def test_csv_layout(self):
        """One line per row."""
        assert format_matrix(np.array([[1.0, 2.0], [3.0, 4.0]]), 'csv') == '1,2\n3,4\n'

    def test_json_layout(self):
        """rows, cols and row-major data."""
        record = json.loads(format_matrix(np.array([[1.0, 2.0], [3.0, 4.0]]), 'json'))
        assert record == {'rows': 2, 'cols': 2, 'data': [[1.0, 2.0], [3.0, 4.0]]}

    def test_seventeen_digits(self):
        """Reals carry 17 significant digits."""
        assert format_matrix(np.array([[0.1]]), 'csv') == '0.10000000000000001\n'

    def test_unknown_format(self):
        """Unknown formats are rejected."""
        with pytest.raises(ValueError):
            format_matrix(np.eye(2), 'xml')


class TestReadWrite:
    """Tests for file round trips and read errors."""

    @pytest.mark.parametrize('ext', ['mtx', 'csv', 'json'])
    def test_bit_identical_round_trip(self, tmp_path, gen, ext):
        """Written matrices read back bit for bit."""
        M = gen.standard_normal((5, 5)) * 10.0 ** gen.integers(-20, 20, (5, 5))
        path = str(tmp_path / f"m.{ext}")
        write_matrix(path, M)
        assert np.array_equal(read_matrix(path), M)

    def test_read_fixture(self, fixture_matrix):
        """The column-major fixture holds [[0, 1], [-1, 0]]."""
        assert np.array_equal(read_matrix(fixture_matrix('omega1.mtx')), [[0.0, 1.0], [-1.0, 0.0]])

    def test_json_list_accepted(self, tmp_path):
        """A bare nested list is a valid JSON matrix."""
        path = tmp_path / 'm.json'
        path.write_text('[[1, 2], [3, 4]]')
        assert np.array_equal(read_matrix(str(path)), [[1.0, 2.0], [3.0, 4.0]])

    def test_json_shape_mismatch(self, tmp_path):
        """rows/cols must agree with data."""
        path = tmp_path / 'm.json'
        path.write_text('{"rows": 3, "cols": 2, "data": [[1, 2], [3, 4]]}')
        with pytest.raises(MatrixFileError):
            read_matrix(str(path))

    def test_missing_file(self, tmp_path):
        """A missing file is a matrix file error."""
        with pytest.raises(MatrixFileError, match="not found"):
            read_matrix(str(tmp_path / 'nope.mtx'))

    def test_garbage_csv(self, tmp_path):
        """Unparseable CSV is a matrix file error."""
        path = tmp_path / 'm.csv'
        path.write_text('1,x\n2,3\n')
        with pytest.raises(MatrixFileError):
            read_matrix(str(path))

    def test_unknown_extension(self):
        """The format cannot be inferred from .txt."""
        with pytest.raises(MatrixFileError):
            format_from_path('matrix.txt')

    def test_explicit_format(self, tmp_path):
        """An explicit format overrides the extension."""
        path = str(tmp_path / 'matrix.txt')
        write_matrix(path, np.eye(2), fmt='csv')
        assert np.array_equal(read_matrix(path, fmt='csv'), np.eye(2))
        assert os.path.getsize(path) > 0
