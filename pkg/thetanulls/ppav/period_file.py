"""
Period-matrix file format.

A JSON object with three keys:

    {"g": 2, "re": [[0.0, 0.1], [0.1, 0.0]], "im": [[1.0, 0.0], [0.0, 2.0]]}

"re" and "im" hold Re(tau) and Im(tau) as g rows of g numbers (row-major).
Floats are written in shortest round-trip form, so dump followed by load
gives back the identical matrix.
"""
from pathlib import Path
from typing import List, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors import InvalidPeriodMatrixError
from ..theta import RiemannMatrix


class PeriodMatrixFile(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    g: int = Field(ge=1)
    re: List[List[float]]
    im: List[List[float]]

    @model_validator(mode="after")
    def _square(self) -> "PeriodMatrixFile":
        for name, rows in (("re", self.re), ("im", self.im)):
            if len(rows) != self.g or any(len(row) != self.g for row in rows):
                raise ValueError(f"'{name}' must be a {self.g}x{self.g} array")
        return self

    @classmethod
    def from_matrix(cls, tau: RiemannMatrix) -> "PeriodMatrixFile":
        re_rows, im_rows = tau.to_lists()
        return cls(g=tau.g, re=re_rows, im=im_rows)

    def to_matrix(self) -> RiemannMatrix:
        return RiemannMatrix(np.array(self.re) + 1j * np.array(self.im))


def parse_period_matrix(text: str) -> RiemannMatrix:
    try:
        document = PeriodMatrixFile.model_validate_json(text)
    except ValidationError as e:
        raise InvalidPeriodMatrixError(f"malformed period-matrix document: {e}") from None
    return document.to_matrix()


def load_period_matrix(path: Union[str, Path]) -> RiemannMatrix:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InvalidPeriodMatrixError(f"cannot read period-matrix file {path}: {e}") from None
    return parse_period_matrix(text)


def dump_period_matrix(tau: RiemannMatrix, path: Union[str, Path]) -> None:
    Path(path).write_text(PeriodMatrixFile.from_matrix(tau).model_dump_json(indent=2) + "\n")
