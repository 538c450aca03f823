"""
Monitoring package for Prometheus metrics
"""
from .metrics import (
    start_metrics_server,
    write_metrics_file,
    start_system_metrics_collection,
    stop_system_metrics_collection,
    rk4_steps_total,
    rk4_step_duration,
    simulated_time,
    time_step,
    critical_besov_norm,
    tail_fraction,
    verify_cases_total,
    artifacts_written_total,
    artifact_write_duration,
    process_cpu_usage,
    process_memory_usage
)

__all__ = [
    'start_metrics_server',
    'write_metrics_file',
    'start_system_metrics_collection',
    'stop_system_metrics_collection',
    'rk4_steps_total',
    'rk4_step_duration',
    'simulated_time',
    'time_step',
    'critical_besov_norm',
    'tail_fraction',
    'verify_cases_total',
    'artifacts_written_total',
    'artifact_write_duration',
    'process_cpu_usage',
    'process_memory_usage'
]
