"""
Prometheus Metrics for lpscalar runs
Exposes solver, verifier and artifact metrics, plus process resource gauges
"""
from prometheus_client import Counter, Histogram, Gauge, REGISTRY, start_http_server, write_to_textfile
import psutil
import os
import logging
import threading
import time

logger = logging.getLogger(__name__)

# Solver Metrics
rk4_steps_total = Counter(
    'lpscalar_rk4_steps_total',
    'Total RK4 steps taken'
)

rk4_step_duration = Histogram(
    'lpscalar_rk4_step_duration_seconds',
    'Wall time of one RK4 step',
    buckets=[0.0005, 0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0]
)

simulated_time = Gauge(
    'lpscalar_simulated_time',
    'Current simulated time'
)

time_step = Gauge(
    'lpscalar_dt',
    'Most recent time step'
)

critical_besov_norm = Gauge(
    'lpscalar_besov_norm',
    'Most recent B^{1+beta}_{2,1} norm of theta'
)

tail_fraction = Gauge(
    'lpscalar_tail_fraction',
    'Spectral tail fraction of the most recent advection product'
)

# Verifier Metrics
verify_cases_total = Counter(
    'lpscalar_verify_cases_total',
    'Verification cases evaluated',
    ['suite', 'outcome']  # outcome: ratio, degenerate, flagged
)

# Artifact Metrics
artifacts_written_total = Counter(
    'lpscalar_artifacts_written_total',
    'Files written by the runner',
    ['kind']  # snapshot, csv, parquet, summary
)

artifact_write_duration = Histogram(
    'lpscalar_artifact_write_duration_seconds',
    'Time taken to write one artifact',
    buckets=[0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0]
)

# System Metrics
process_cpu_usage = Gauge(
    'lpscalar_process_cpu_percent',
    'Process CPU usage percentage'
)

process_memory_usage = Gauge(
    'lpscalar_process_memory_mb',
    'Process memory usage in MB'
)


def start_metrics_server(port: int):
    """
    Start Prometheus metrics HTTP server

    Args:
        port: Port to expose metrics on (0 disables the endpoint)
    """
    if port <= 0:
        return
    try:
        start_http_server(port)
        logger.info(f"Prometheus metrics server started on port {port}")
    except Exception as e:
        logger.error(f"Failed to start metrics server: {e}")


def write_metrics_file(path: str):
    """Dump the default registry in Prometheus textfile format"""
    try:
        write_to_textfile(path, REGISTRY)
        logger.info(f"Metrics written to {path}")
    except OSError as e:
        logger.error(f"Failed to write metrics to {path}: {e}")


def update_system_metrics():
    """Update process CPU and memory gauges"""
    try:
        current_process = psutil.Process(os.getpid())
        process_cpu_usage.set(current_process.cpu_percent(interval=0.1))
        process_memory_usage.set(current_process.memory_info().rss / 1024 / 1024)
    except Exception as e:
        logger.debug(f"Error updating system metrics: {e}")


_metrics_thread = None
_stop_event = threading.Event()


def start_system_metrics_collection(interval: float = 5.0):
    """
    Start background thread to collect process metrics

    Args:
        interval: How often to update metrics (seconds)
    """
    global _metrics_thread

    if _metrics_thread is not None and _metrics_thread.is_alive():
        return
    _stop_event.clear()

    def collect_metrics():
        while not _stop_event.is_set():
            update_system_metrics()
            _stop_event.wait(interval)

    _metrics_thread = threading.Thread(target=collect_metrics, daemon=True)
    _metrics_thread.start()
    logger.debug(f"System metrics collection started (interval: {interval}s)")


def stop_system_metrics_collection():
    """Stop background metrics collection"""
    global _metrics_thread
    _stop_event.set()
    if _metrics_thread is not None:
        _metrics_thread.join(timeout=1.0)
        _metrics_thread = None
