"""
Run configuration echoed into every report, and the builders that turn it
back into period matrices and points.
"""
import re
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..multmap import default_samples
from ..ppav import TorsionPoint, e8_ppav, load_period_matrix, parse_modulus, product_ppav, random_ppav
from ..theta import RiemannMatrix

OutputFormat = Literal["human", "csv", "json"]
RankMode = Literal["single", "scan-lemma-g2", "surjectivity-scan", "sweep", "torsion-kernels"]

_TORSION = re.compile(r"^\(([-\d,\s]*)\)\s*\+\s*tau\s*\(([-\d,\s]*)\)\s*/\s*(\d+)$")
_POINT_TAG = 7


class PeriodMatrixSource(BaseModel):
    """Where the period matrix of a run comes from.

    Attributes:
        kind: "product" (moduli), "random" (genus and seed), "file" (path) or "e8".
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["product", "random", "file", "e8"]
    moduli: Optional[List[str]] = None
    genus: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    path: Optional[str] = None

    @model_validator(mode="after")
    def _complete(self) -> "PeriodMatrixSource":
        required = {"product": ("moduli",), "random": ("genus", "seed"), "file": ("path",), "e8": ()}
        missing = [name for name in required[self.kind] if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.kind} source needs {', '.join(missing)}")
        return self

    def build(self) -> RiemannMatrix:
        if self.kind == "product":
            return product_ppav([parse_modulus(m) for m in self.moduli])
        if self.kind == "random":
            return random_ppav(self.genus, self.seed)
        if self.kind == "file":
            return load_period_matrix(self.path)
        return e8_ppav()


class RunConfig(BaseModel):
    """Effective configuration of one command, defaults resolved."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    command: str
    source: Optional[PeriodMatrixSource] = None
    eps: float = Field(default=1e-9, gt=0)
    vanish_tol: float = Field(default=1e-6, gt=0, lt=1)
    rel_tol: float = Field(default=1e-8, gt=0, lt=1)
    seed: int = 0
    trials: int = Field(default=20, ge=0)
    divisor_trials: int = Field(default=2, ge=0)
    n_samples: Optional[int] = Field(default=None, ge=1)
    order: int = Field(default=2, ge=1)
    x: str = "0"
    y: str = "0"
    mode: RankMode = "single"
    genus: Optional[int] = Field(default=None, ge=1)
    g_range: Optional[List[int]] = None
    m_range: Optional[List[int]] = None
    format: OutputFormat = "human"

    @model_validator(mode="after")
    def _tolerances(self) -> "RunConfig":
        if self.eps > self.vanish_tol / 10:
            raise ValueError(f"eps={self.eps:g} must be at most vanish_tol/10 = {self.vanish_tol / 10:g}")
        return self

    def resolved_samples(self, g: int) -> int:
        return self.n_samples or default_samples(g)


def parse_point(text: str, tau: RiemannMatrix, seed: int = 0, tag: int = 0) -> np.ndarray:
    """Parse a point of C^g.

    Accepted forms:
        "0"                          the origin
        "random"                     s + tau t, s, t uniform on [0,1)^g (seeded)
        "(m1,...,mg)+tau(k1,...,kg)/n"  the torsion point (m + tau k)/n
        "s1,...,sg;t1,...,tg"        s + tau t with real s, t
    """
    g = tau.g
    s = text.strip()
    if s == "0":
        return np.zeros(g, dtype=complex)
    if s == "random":
        rng = np.random.default_rng([seed, _POINT_TAG, tag])
        return rng.random(g) + tau.tau @ rng.random(g)
    match = _TORSION.match(s)
    if match:
        m, k, n = match.groups()
        m = [int(v) for v in m.split(",")]
        k = [int(v) for v in k.split(",")]
        n = int(n)
        if len(m) != g or len(k) != g or n < 1:
            raise ValueError(f"torsion point {text!r} does not fit genus {g}")
        point = TorsionPoint(m=tuple(v % n for v in m), k=tuple(v % n for v in k), order=n)
        return point.z(tau)
    if ";" in s:
        real, _, imag = s.partition(";")
        try:
            sv = np.array([float(v) for v in real.split(",")])
            tv = np.array([float(v) for v in imag.split(",")])
        except ValueError:
            raise ValueError(f"cannot parse point {text!r}") from None
        if sv.shape != (g,) or tv.shape != (g,):
            raise ValueError(f"point {text!r} does not fit genus {g}")
        return sv + tau.tau @ tv
    raise ValueError(f"cannot parse point {text!r}; expected 0, random, (m)+tau(k)/n or s;t")
