"""
Runner package: configuration, initial data, snapshots, result files and the command line
"""
from .run_config import InitialSpec, RunConfig, load_config, build_config, parse_override
from .initial import generate_initial
from .snapshot import SnapshotMeta, write_snapshot, read_snapshot, snapshot_size
from .results_writer import ResultsWriter
from .runner import SimulationRunner, run

__all__ = [
    'InitialSpec',
    'RunConfig',
    'load_config',
    'build_config',
    'parse_override',
    'generate_initial',
    'SnapshotMeta',
    'write_snapshot',
    'read_snapshot',
    'snapshot_size',
    'ResultsWriter',
    'SimulationRunner',
    'run'
]
