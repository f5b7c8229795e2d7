"""
Matrix serializers for reports and API payloads
"""

from typing import Any, Dict

import numpy as np
from rest_framework import serializers

from .exceptions import OpspaceError
from .linalg import as_matrix


def matrix_to_json(m: np.ndarray) -> Dict[str, Any]:
    """Row-major {"rows", "cols", "data": [[re, im], ...]}; floats keep their repr"""
    m = np.asarray(m, dtype=np.complex128)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_json(payload: Dict[str, Any]) -> np.ndarray:
    rows = payload["rows"]
    cols = payload["cols"]
    data = payload["data"]
    if len(data) != rows * cols:
        raise OpspaceError(f"Matrix payload has {len(data)} entries, expected {rows}x{cols}")
    values = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
    return as_matrix(values.reshape(rows, cols))


class MatrixField(serializers.Field):
    """A ComplexMatrix in the JSON matrix format"""

    default_error_messages = {
        "invalid": "Expected an object with integer rows, cols and a [[re, im], ...] data list.",
        "shape": "{detail}",
    }

    def to_representation(self, value):
        return matrix_to_json(value)

    def to_internal_value(self, data):
        if not isinstance(data, dict) or not {"rows", "cols", "data"} <= set(data):
            self.fail("invalid")
        try:
            rows = int(data["rows"])
            cols = int(data["cols"])
            entries = [(float(re), float(im)) for re, im in data["data"]]
        except (TypeError, ValueError):
            self.fail("invalid")
        if rows < 1 or cols < 1:
            self.fail("shape", detail=f"rows and cols must be positive, got {rows}x{cols}")
        try:
            return matrix_from_json({"rows": rows, "cols": cols, "data": entries})
        except OpspaceError as e:
            self.fail("shape", detail=str(e))


class ElementField(serializers.Field):
    """A matrix, or a list of matrices read as a tuple of blocks"""

    def __init__(self, **kwargs):
        self.matrix = MatrixField()
        super().__init__(**kwargs)

    def to_representation(self, value):
        if isinstance(value, tuple):
            return [self.matrix.to_representation(block) for block in value]
        return self.matrix.to_representation(value)

    def to_internal_value(self, data):
        if isinstance(data, list):
            if not data:
                raise serializers.ValidationError("A block tuple needs at least one block.")
            return tuple(self.matrix.to_internal_value(block) for block in data)
        return self.matrix.to_internal_value(data)
