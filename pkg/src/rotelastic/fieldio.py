"""JSON field files shared by the command-line tools.

Layout: ``{"grid": {"n": [...], "L": [...]}, "kind": ..., "data": [...]}``.
``data`` lists every grid point in row-major order (time axis first when the
grid has four axes) and, within a point, the component axes row-major.
Complex entries are ``[re, im]`` pairs.  Floats are written with Python's
shortest round-trip repr, so reading a file back reproduces every double bit
for bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .grid import GridSpec

KINDS = {
    # kind: (component shape, complex)
    "spinor": ((2,), True),
    "coframe": ((3, 3), False),
    "coframe_density": ((10,), False),  # nine coframe entries (row j, column a) then rho
    "rank2": ((3, 3), False),
    "covector": ((3,), False),
    "scalar": ((), False),
}


class FieldFileError(ValueError):
    pass


@dataclass(frozen=True)
class FieldFile:
    grid: GridSpec
    kind: str
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FieldFileError(f"unknown field kind {self.kind!r}; expected one of {sorted(KINDS)}")
        comp, cplx = KINDS[self.kind]
        vals = np.asarray(self.values, dtype=complex if cplx else float)
        if vals.shape != self.grid.shape + comp:
            raise FieldFileError(f"{self.kind} field needs shape {self.grid.shape + comp}, got {vals.shape}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def coframe_density(cls, grid: GridSpec, theta, rho) -> "FieldFile":
        theta = np.asarray(theta, dtype=float)
        rho = np.asarray(rho, dtype=float)
        return cls(grid, "coframe_density", np.concatenate([theta.reshape(grid.shape + (9,)), rho[..., None]], axis=-1))

    def split_coframe_density(self) -> tuple[np.ndarray, np.ndarray]:
        if self.kind != "coframe_density":
            raise FieldFileError(f"expected a coframe_density field, got {self.kind}")
        return self.values[..., :9].reshape(self.grid.shape + (3, 3)), self.values[..., 9]

    def to_json(self) -> dict:
        comp, cplx = KINDS[self.kind]
        flat = self.values.reshape(-1)
        if cplx:
            data = [[float(z.real), float(z.imag)] for z in flat]
        else:
            data = [float(x) for x in flat]
        return {
            "grid": {"n": list(self.grid.n), "L": list(self.grid.L)},
            "kind": self.kind,
            "data": data,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FieldFile":
        try:
            g = doc["grid"]
            kind = doc["kind"]
            data = doc["data"]
            n, L = g["n"], g["L"]
        except (KeyError, TypeError) as exc:
            raise FieldFileError(f"field file is missing key {exc}") from None
        if len(n) not in (3, 4) or len(L) != len(n):
            raise FieldFileError("grid.n and grid.L must both have 3 (space) or 4 (time + space) entries")
        try:
            grid = GridSpec(tuple(n), tuple(L), time=len(n) == 4)
        except (ValueError, TypeError) as exc:
            raise FieldFileError(f"invalid grid: {exc}") from None
        if kind not in KINDS:
            raise FieldFileError(f"unknown field kind {kind!r}; expected one of {sorted(KINDS)}")
        comp, cplx = KINDS[kind]
        count = grid.size * math.prod(comp)
        if not isinstance(data, list) or len(data) != count:
            raise FieldFileError(f"{kind} data needs {count} entries, got {len(data) if isinstance(data, list) else type(data).__name__}")
        try:
            if cplx:
                arr = np.array(data, dtype=float)
                if arr.shape != (count, 2):
                    raise FieldFileError("complex entries must be [re, im] pairs")
                vals = arr[:, 0] + 1j * arr[:, 1]
            else:
                vals = np.array(data, dtype=float)
                if vals.shape != (count,):
                    raise FieldFileError("real field entries must be numbers")
        except (ValueError, TypeError):
            raise FieldFileError("data entries must be numbers") from None
        if not np.all(np.isfinite(vals)):
            raise FieldFileError("data contains non-finite values")
        return cls(grid, kind, vals.reshape(grid.shape + comp))


def dumps(ff: FieldFile) -> str:
    return json.dumps(ff.to_json(), allow_nan=False)


def loads(text: str) -> FieldFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FieldFileError(f"not valid JSON: {exc}") from None
    return FieldFile.from_json(doc)


def write_field(path, ff: FieldFile) -> None:
    Path(path).write_text(dumps(ff) + "\n")


def read_field(path) -> FieldFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FieldFileError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)
