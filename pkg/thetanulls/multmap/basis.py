"""
Second-order theta functions: the basis f_σ(z) = θ[σ/2, 0](2z, 2τ), σ ∈ {0,1}^g,
of the sections of L² on A, and its translates f_σ(z + x).
"""
from typing import List, Optional

import numpy as np

from ..characteristics import Characteristic
from ..theta import AutomorphyDefect, RiemannMatrix, theta_batch


def second_order_characteristics(g: int) -> List[Characteristic]:
    """[σ; 0] for σ in lexicographic order (σ_1 most significant)."""
    return [Characteristic(g=g, a_mask=sigma, b_mask=0) for sigma in range(2 ** g)]


class SectionBasis:
    """
    The 2^g functions z ↦ f_σ(z + x) spanning the sections of t_x^* L².

    Values are returned in the normalized hermitian metric. The normalizing
    factor exp(-2π y^T (Im τ)^-1 y), y = Im(z + x), is shared by every σ at a
    given point, so it only rescales sample columns and leaves ranks alone.

    Attributes:
        tau: The period matrix of A.
        shift: The translation x.
        chars: The characteristics [σ; 0] used on the doubled period matrix.
    """

    def __init__(self, tau: RiemannMatrix, shift=None):
        self.tau = tau
        shift = np.zeros(tau.g) if shift is None else shift
        self.shift = np.asarray(shift, dtype=complex).reshape(-1)
        if self.shift.shape != (tau.g,):
            raise ValueError(f"shift has dimension {self.shift.shape[0]}, period matrix has genus {tau.g}")
        self.chars = second_order_characteristics(tau.g)

    def __len__(self) -> int:
        return len(self.chars)

    def evaluate(self, points, eps: float = 1e-9, threads: Optional[int] = None) -> np.ndarray:
        """(n_points x 2^g) array of f_σ(z_j + x), each to absolute error eps."""
        points = np.atleast_2d(np.asarray(points, dtype=complex))
        args = 2 * (points + self.shift)
        rows = theta_batch(list(args), self.tau.doubled(), self.chars, eps=eps, normalized=True, threads=threads)
        return np.array([[r.value for r in row] for row in rows], dtype=complex).reshape(len(points), len(self.chars))

    def parity_defect(self, z, eps: float = 1e-9) -> AutomorphyDefect:
        """max_σ |f_σ(z) - f_σ(-z)| against the combined evaluation error.

        Every f_σ is even, so at x = 0 the defect stays within the bound.
        """
        z = np.asarray(z, dtype=complex).reshape(-1)
        doubled = self.tau.doubled()
        plus, minus = theta_batch([2 * (z + self.shift), 2 * (-z + self.shift)], doubled, self.chars,
                                  eps=eps, normalized=True)
        defect = max(abs(p.value - m.value) for p, m in zip(plus, minus))
        bound = max(p.error_bound + m.error_bound for p, m in zip(plus, minus))
        return AutomorphyDefect(defect=float(defect), error_bound=float(bound))

    def __repr__(self) -> str:
        return f"SectionBasis(g={self.tau.g}, shift={self.shift.tolist()})"
