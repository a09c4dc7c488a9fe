import json
import random

import pytest
from hypothesis import given, strategies as st

from frobenius_descent import serialize
from frobenius_descent.checks import random_document_value
from frobenius_descent.field import Field, embedding
from frobenius_descent.serialize import MalformedDocument


@given(st.integers(0, 10**9))
def test_round_trip_random_values(seed):
    v = random_document_value(random.Random(seed))
    text = serialize.dumps(v)
    back = serialize.loads(text)
    assert back == v
    assert serialize.dumps(back) == text


def test_field_document_shape():
    doc = json.loads(serialize.dumps(Field.of(4, 1)))
    assert doc == {"type": "field", "p": 2, "q_exponent": 2, "m": 1, "modulus": [1, 1, 1]}


def test_element_is_little_endian():
    F = Field.of(3, 2)
    doc = json.loads(serialize.dumps(F.gen + F(2)))
    assert doc["coeffs"] == [2, 1]


def test_embedding_round_trip():
    emb = embedding(Field.of(2, 2), Field.of(2, 4))
    assert serialize.loads(serialize.dumps(emb)) is emb


@pytest.mark.parametrize("text", [
    "nope",
    '{"type": "mystery"}',
    '{"type": "field", "p": 4, "q_exponent": 1, "m": 1}',
    '{"type": "field", "p": 2, "q_exponent": 1, "m": 2, "modulus": [1, 0, 1]}',
    '{"type": "element", "field": {"p": 2, "q_exponent": 1, "m": 2}, "coeffs": [1]}',
    '{"type": "element", "field": {"p": 2, "q_exponent": 1, "m": 2}, "coeffs": [1, 2]}',
    '{"type": "matrix", "field": {"p": 2, "q_exponent": 1, "m": 1}, "rows": 2, "cols": 1, "entries": [[[1]]]}',
    '{"type": "laurent_unit", "field": {"p": 2, "q_exponent": 1, "m": 1}, "lambda": [0], "t": 0}',
    '{"type": "polynomial", "field": {"p": 2, "q_exponent": 1, "m": 1}, "nvars": 2, "terms": [[[1], [1]]]}',
])
def test_malformed_documents(text):
    with pytest.raises(MalformedDocument):
        serialize.loads(text)
