"""JSON (de)serialization helpers.

Exact integer matrices travel as arrays of arrays of decimal strings so
arbitrary precision survives any JSON parser; rationals as [num, den]
pairs; numeric matrices as plain float arrays.  Grid fields are either
fully-JSON (small grids) or a JSON header pointing at a flat little-endian
binary64 payload in row-major node order.
"""

import json
import os
from fractions import Fraction

import numpy as np

from . import reduction3d


def int_matrix_to_json(A):
    return [[str(int(x)) for x in row] for row in A]


def int_matrix_from_json(data):
    return [[int(x) for x in row] for row in data]


def fraction_to_json(x):
    f = Fraction(x)
    return [str(f.numerator), str(f.denominator)]


def fraction_from_json(data):
    if isinstance(data, (int, str)):
        return Fraction(int(data))
    num, den = data
    return Fraction(int(num), int(den))


def rational_matrix_from_json(data):
    return [[fraction_from_json(x) for x in row] for row in data]


def rational_matrix_to_json(A):
    return [[fraction_to_json(x) for x in row] for row in A]


def float_matrix_to_json(A):
    return np.asarray(A, dtype=float).tolist()


def aff_to_json(g):
    return {"a": [fraction_to_json(x) for x in g.translation],
            "gamma": int_matrix_to_json(g.rotation.rows()),
            "type": list(g.rotation.type_ctx)}


def aff_from_json(data):
    from . import siegel
    rot = siegel.SiegelElement.make(int_matrix_from_json(data["gamma"]),
                                    tuple(data["type"]))
    return siegel.AffElement.make([fraction_from_json(x) for x in data["a"]], rot)


def period_to_json(N):
    return {"R": float_matrix_to_json(N.R), "I": float_matrix_to_json(N.I)}


def period_from_json(data):
    from . import taming
    return taming.PeriodMatrix(np.asarray(data["R"], dtype=float),
                               np.asarray(data["I"], dtype=float))


def two_form_to_json(V):
    V = np.asarray(V, dtype=float)
    return {"rank": V.shape[0], "coeffs": V.tolist()}


def two_form_from_json(data):
    V = np.asarray(data["coeffs"], dtype=float)
    if V.shape[0] != data["rank"]:
        raise ValueError("declared rank does not match coefficient count")
    return V


def grid_field_to_json(grid, fields, path=None, binary=False):
    """Serialize a grid plus named node fields.

    With binary=True, writes each field as <path>.<name>.f64 (little-endian
    float64, row-major) and records only shapes in the header.
    """
    header = {
        "shape": list(grid.shape),
        "spacing": list(grid.spacing),
        "origin": list(grid.origin),
        "metric": np.asarray(grid.metric, dtype=float).tolist(),
        "fields": {},
    }
    for name, arr in fields.items():
        arr = np.asarray(arr, dtype=float)
        if binary:
            if path is None:
                raise ValueError("binary payloads need a header path")
            fname = f"{path}.{name}.f64"
            arr.astype("<f8").tofile(fname)
            header["fields"][name] = {"file": os.path.basename(fname),
                                      "shape": list(arr.shape)}
        else:
            header["fields"][name] = {"data": arr.tolist(),
                                      "shape": list(arr.shape)}
    if path is not None:
        with open(path, "w") as fh:
            json.dump(header, fh)
    return header


def grid_field_from_json(header, base_dir="."):
    if isinstance(header, str):
        base_dir = os.path.dirname(header) or "."
        with open(header) as fh:
            header = json.load(fh)
    grid = reduction3d.Grid3(shape=tuple(header["shape"]),
                             spacing=tuple(header["spacing"]),
                             origin=tuple(header.get("origin", (0, 0, 0))),
                             metric=np.asarray(header.get("metric", np.eye(3))))
    fields = {}
    for name, spec in header["fields"].items():
        shape = tuple(spec["shape"])
        if "file" in spec:
            arr = np.fromfile(os.path.join(base_dir, spec["file"]),
                              dtype="<f8").reshape(shape)
        else:
            arr = np.asarray(spec["data"], dtype=float).reshape(shape)
        fields[name] = arr
    return grid, fields
