from .lattice import ellipsoid_points, radius_for, shortest_vector_length, tail_bound
from .matrix import RiemannMatrix
from .riemann_theta import (
    AutomorphyDefect,
    ThetaResult,
    periodicity_defect,
    quasiperiodicity_check,
    quasiperiodicity_defect,
    theta,
    theta_batch,
)
