import numpy as np
from loguru import logger
from scipy.optimize import newton

from ..errors import ThetaPrecisionError
from ..theta import RiemannMatrix, theta

ON_DIVISOR_TOL = 1e-9
SEARCH_EPS = 1e-11


def theta_divisor_point(tau: RiemannMatrix, seed: int, attempts: int = 16) -> np.ndarray:
    """A point x with theta(x) = 0, found by a complex secant search along a random line.

    Each attempt draws a base point x0 = s + tau t with s in [0,1)^g and
    t in [-1/2,1/2)^g, and a unit direction v, then solves theta(x0 + lam v) = 0
    for lam. The result is accepted once its normalized |theta| plus error
    bound is below ON_DIVISOR_TOL.

    Raises:
        RuntimeError: No attempt converged.
    """
    g = tau.g
    rng = np.random.default_rng(seed)
    for attempt in range(attempts):
        x0 = rng.random(g) + tau.tau @ (rng.random(g) - 0.5)
        v = rng.normal(size=g) + 1j * rng.normal(size=g)
        v /= np.linalg.norm(v)

        def along(lam):
            return theta(x0 + lam * v, tau, eps=SEARCH_EPS).value

        try:
            lam, _ = newton(along, x0=0j, x1=0.1 + 0.1j, tol=1e-13, maxiter=200, full_output=True, disp=False)
            x = x0 + complex(lam) * v
            check = theta(x, tau, eps=SEARCH_EPS, normalized=True)
        except (ThetaPrecisionError, OverflowError, ZeroDivisionError) as e:
            logger.debug(f"divisor search attempt {attempt} failed: {e}")
            continue
        if abs(check.value) + check.error_bound < ON_DIVISOR_TOL:
            logger.debug(f"divisor point found on attempt {attempt}: |theta| = {abs(check.value):.3g}")
            return x
        logger.debug(f"divisor search attempt {attempt} stopped at |theta| = {abs(check.value):.3g}")
    raise RuntimeError(f"no point of the theta divisor found in {attempts} attempts (seed {seed})")
