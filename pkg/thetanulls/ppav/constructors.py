"""
Period matrices: products of elliptic curves, generic random ones, and the
reserved genus-4 slot.
"""
import re
from typing import Sequence

import numpy as np

from .. import env
from ..errors import GenusRangeError, InvalidPeriodMatrixError, PeriodMatrixUnavailableError
from ..theta import RiemannMatrix

RANDOM_IMAG_PERTURBATION = 0.25
MAX_RANDOM_GENUS = 4

_BARE_I = re.compile(r"(?<![\d.])i")


def parse_modulus(text: str) -> complex:
    """Parse "i", "2i", "3i/2", "0.5+1.2i", "-0.5+i" into a complex number."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("j", "i")
    numerator, _, denominator = s.partition("/")
    numerator = _BARE_I.sub("1i", numerator).replace("i", "j")
    try:
        value = complex(numerator)
        if denominator:
            value /= float(denominator)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse elliptic modulus {text!r}") from None
    return value


def product_ppav(taus: Sequence[complex]) -> RiemannMatrix:
    """diag(tau_1, ..., tau_g): the product of the elliptic curves C / (Z + tau_i Z)."""
    taus = [complex(t) for t in taus]
    if not taus:
        raise GenusRangeError("a product needs at least one factor")
    bad = [t for t in taus if not t.imag > 0]
    if bad:
        raise InvalidPeriodMatrixError(f"elliptic moduli must have positive imaginary part, got {bad}")
    return RiemannMatrix(np.diag(taus))


def random_ppav(g: int, seed: int) -> RiemannMatrix:
    """tau = S + i (I + Q/4), S symmetric with entries in [-1/2, 1/2], Q PSD with ||Q|| <= 1.

    Deterministic in seed; off the diagonal (decomposable) locus with probability 1.
    """
    if not 1 <= g <= MAX_RANDOM_GENUS:
        raise GenusRangeError(f"random_ppav supports 1 <= g <= {MAX_RANDOM_GENUS}, got {g}")
    rng = np.random.default_rng(seed)
    s = rng.uniform(-0.5, 0.5, size=(g, g))
    s = (s + s.T) / 2
    b = rng.normal(size=(g, g))
    q = b @ b.T
    q = (q + q.T) / 2
    q /= max(np.linalg.norm(q, 2), 1.0e-300)
    return RiemannMatrix(s + 1j * (np.eye(g) + RANDOM_IMAG_PERTURBATION * q))


def e8_ppav() -> RiemannMatrix:
    """The irreducible non-Jacobian genus-4 ppav with Θ(2) = 130.

    The matrix has to come from the literature; point THETANULLS_E8_PERIOD_MATRIX
    at a period-matrix file holding it.
    """
    from .period_file import load_period_matrix

    path = env.THETANULLS_E8_PERIOD_MATRIX
    if not path:
        raise PeriodMatrixUnavailableError(
            "no sourced E8 period matrix configured; set THETANULLS_E8_PERIOD_MATRIX to a period-matrix file"
        )
    tau = load_period_matrix(path)
    if tau.g != 4:
        raise InvalidPeriodMatrixError(f"E8 period matrix must have genus 4, file has genus {tau.g}")
    return tau
