from .constructors import e8_ppav, parse_modulus, product_ppav, random_ppav
from .counting import theta2_count, theta_n_count, thetanull_verdicts, torsion_verdicts
from .divisor import theta_divisor_point
from .period_file import PeriodMatrixFile, dump_period_matrix, load_period_matrix, parse_period_matrix
from .torsion import TorsionPoint, VanishVerdict, classify, torsion_points
