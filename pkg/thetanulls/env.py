from dotenv import load_dotenv
import os

load_dotenv()

THETANULLS_THREADS = os.getenv("THETANULLS_THREADS", "1")
THETANULLS_LOG_LEVEL = os.getenv("THETANULLS_LOG_LEVEL", "WARNING")
THETANULLS_LATTICE_BUDGET = os.getenv("THETANULLS_LATTICE_BUDGET", "10000000")
THETANULLS_E8_PERIOD_MATRIX = os.getenv("THETANULLS_E8_PERIOD_MATRIX", None)


integer_env_vars = {
    "THETANULLS_THREADS": THETANULLS_THREADS,
    "THETANULLS_LATTICE_BUDGET": THETANULLS_LATTICE_BUDGET,
}

for var, value in integer_env_vars.items():
    if not value.strip().isdigit() or int(value) < 1:
        raise ValueError(f"Environment variable {var} must be a positive integer, got {value!r}")

THREADS = int(THETANULLS_THREADS)
LATTICE_BUDGET = int(THETANULLS_LATTICE_BUDGET)
LOG_LEVEL = THETANULLS_LOG_LEVEL.upper()
