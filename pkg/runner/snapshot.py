"""
Snapshot files
Little-endian header (magic, u16 version, u32 nx, u32 ny, f64 beta, f64 time) followed by
nx·ny f64 physical samples in row-major order
"""
import logging
import os
import struct
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from spectral.exceptions import ConfigurationError, DataError
from spectral.grid import Grid2D, PhysicalField

from .config import SNAPSHOT_MAGIC, SNAPSHOT_VERSION
from .results_writer import atomic_write

logger = logging.getLogger(__name__)

HEADER = struct.Struct('<4sHIIdd')
HEADER_SIZE = HEADER.size  # 30 bytes
SAMPLE_DTYPE = np.dtype('<f8')


@dataclass(frozen=True)
class SnapshotMeta:
    beta: float
    time: float
    version: int = SNAPSHOT_VERSION


def snapshot_size(n: int) -> int:
    return HEADER_SIZE + SAMPLE_DTYPE.itemsize * n * n


def write_snapshot(f: PhysicalField, meta: SnapshotMeta, path: str) -> int:
    """
    Write a snapshot atomically (temporary file + rename)

    Args:
        f: Physical field
        meta: beta and time stored in the header
        path: Destination file

    Returns:
        Number of bytes written
    """
    n = f.grid.n
    header = HEADER.pack(SNAPSHOT_MAGIC, SNAPSHOT_VERSION, n, n, float(meta.beta), float(meta.time))
    payload = np.ascontiguousarray(f.values, dtype=SAMPLE_DTYPE).tobytes(order='C')
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)

    def write(tmp: str):
        with open(tmp, 'wb') as out:
            out.write(header)
            out.write(payload)

    atomic_write(path, write)
    logger.debug(f"Snapshot written: {path} (t = {meta.time:.6g})")
    return len(header) + len(payload)


def read_snapshot(path: str) -> Tuple[PhysicalField, SnapshotMeta]:
    """
    Read a snapshot written by write_snapshot

    Raises:
        DataError: bad magic, unsupported version, bad dimensions or a
            truncated/oversized payload; the message names the byte offset
    """
    with open(path, 'rb') as f:
        data = f.read()
    if len(data) < HEADER_SIZE:
        raise DataError(f"{path}: truncated header at offset {len(data)} (need {HEADER_SIZE} bytes)")
    magic, version, nx, ny, beta, time = HEADER.unpack_from(data, 0)
    if magic != SNAPSHOT_MAGIC:
        raise DataError(f"{path}: bad magic {magic!r} at offset 0")
    if version != SNAPSHOT_VERSION:
        raise DataError(f"{path}: unsupported version {version} at offset 4")
    if nx != ny:
        raise DataError(f"{path}: non-square grid {nx}x{ny} at offset 6")
    try:
        grid = Grid2D(nx)
    except ConfigurationError as e:
        raise DataError(f"{path}: invalid grid size at offset 6: {e}") from e
    expected = snapshot_size(nx)
    if len(data) < expected:
        raise DataError(f"{path}: truncated payload at offset {len(data)} (expected {expected} bytes)")
    if len(data) > expected:
        raise DataError(f"{path}: trailing bytes at offset {expected}")
    values = np.frombuffer(data, dtype=SAMPLE_DTYPE, count=nx * ny, offset=HEADER_SIZE).reshape(nx, ny)
    return PhysicalField(grid, values.astype(float)), SnapshotMeta(beta=beta, time=time, version=version)
