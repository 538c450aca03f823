"""
Configuration for the runner package
"""
import os
from dotenv import load_dotenv

load_dotenv()

# Logging
LPSCALAR_LOG_LEVEL = os.getenv('LPSCALAR_LOG_LEVEL', 'INFO')

# Prometheus endpoint (0 = no HTTP endpoint, metrics.prom is still written)
LPSCALAR_METRICS_PORT = int(os.getenv('LPSCALAR_METRICS_PORT', '0'))
SYSTEM_METRICS_INTERVAL = float(os.getenv('LPSCALAR_SYSTEM_METRICS_INTERVAL', '5.0'))

# Output
LPSCALAR_OUTPUT_DIR = os.getenv('LPSCALAR_OUTPUT_DIR', 'data/runs')
CSV_FLOAT_FORMAT = '%.17g'

# Snapshot format
SNAPSHOT_MAGIC = b'LPS1'
SNAPSHOT_VERSION = 1
