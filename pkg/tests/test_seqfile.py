import json

import pytest
from hypothesis import given, strategies as st

from dmorrey.core import SparseSequence
from dmorrey.seqfile import (SequenceFormatError, format_sequence, load_sequence,
                             parse_sequence, store_sequence)

values = st.floats(min_value=1e-300, max_value=1e300, allow_nan=False, allow_infinity=False)


@given(st.dictionaries(st.integers(-2**62, 2**62), values, max_size=30))
def test_round_trip_bit_identical(entries):
    x = SparseSequence.from_mapping(entries)
    y = parse_sequence(format_sequence(x, comment="roundtrip"))
    assert x == y
    assert x.values.tobytes() == y.values.tobytes()


def test_file_round_trip(tmp_path):
    x = SparseSequence.from_mapping({-3: 0.1, 0: 1 / 3, 7: 2.0})
    path = tmp_path / "x.txt"
    store_sequence(x, path)
    assert load_sequence(path) == x


def test_comments_and_blank_lines():
    x = parse_sequence("# header\n\n-1 2.5\n  # indented comment\n4 1\n")
    assert list(x.items()) == [(-1, 2.5), (4, 1.0)]


def test_json_variant():
    doc = json.dumps({"entries": [[-1, 2.5], [4, 1]]})
    assert parse_sequence(doc) == parse_sequence("-1 2.5\n4 1\n")


@pytest.mark.parametrize("text", [
    "1 2\n0 1\n",          # decreasing
    "1 2\n1 3\n",          # duplicate
    "0 -1\n",              # negative
    "0 0\n",               # zero
    "0\n",                 # missing value
    "a 1\n",               # bad index
    '{"entries": [[0]]}',  # bad JSON row
])
def test_malformed(text):
    with pytest.raises(SequenceFormatError):
        parse_sequence(text)


def test_missing_file(tmp_path):
    with pytest.raises(SequenceFormatError):
        load_sequence(tmp_path / "nope.txt")
