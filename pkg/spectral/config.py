"""
Configuration for the spectral package
"""
import math
import os
import psutil
from dotenv import load_dotenv

load_dotenv()

# Parallelism (0 = all logical CPUs)
LPSCALAR_THREADS = int(os.getenv('LPSCALAR_THREADS', '0'))

# Grid limits
MIN_GRID_SIZE = 8
DOMAIN_LENGTH = 2.0 * math.pi

# Tolerances
SYMMETRY_TOLERANCE = 1e-10
GAUGE_TOLERANCE = 1e-12
PARTITION_TOLERANCE = 1e-12


def worker_count() -> int:
    """Number of FFT / pool workers honouring LPSCALAR_THREADS"""
    if LPSCALAR_THREADS > 0:
        return LPSCALAR_THREADS
    return psutil.cpu_count(logical=True) or 1
