"""
Results Writer
Writes tables as CSV (17 significant digits) with optional Parquet mirrors, and text summaries
"""
import os
import logging
import tempfile
import time
from typing import Callable

import pandas as pd

from monitoring.metrics import artifact_write_duration, artifacts_written_total

from .config import CSV_FLOAT_FORMAT

logger = logging.getLogger(__name__)


def atomic_write(path: str, write: Callable[[str], None]):
    """Run write(tmp_path) and rename the result onto path"""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix='.', suffix='.tmp')
    os.close(fd)
    try:
        write(tmp_path)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


class ResultsWriter:
    """Writes run artifacts into one output directory, each file whole and atomic"""

    def __init__(self, output_dir: str, write_parquet: bool = False):
        """
        Initialize results writer

        Args:
            output_dir: Directory receiving every artifact
            write_parquet: Also mirror each table to <name>.parquet
        """
        self.output_dir = output_dir
        self.write_parquet = write_parquet

        os.makedirs(self.output_dir, exist_ok=True)

        logger.info(f"Initialized results writer - Path: {self.output_dir}, Parquet: {write_parquet}")

    def path(self, file_name: str) -> str:
        return os.path.join(self.output_dir, file_name)

    def write_table(self, df: pd.DataFrame, name: str) -> str:
        """
        Write a table as <name>.csv (and <name>.parquet when enabled)

        Args:
            df: Table to write
            name: File stem

        Returns:
            str: Path of the CSV file
        """
        csv_path = self.path(f"{name}.csv")
        start_time = time.perf_counter()
        atomic_write(csv_path, lambda tmp: df.to_csv(tmp, index=False, float_format=CSV_FLOAT_FORMAT))
        artifact_write_duration.observe(time.perf_counter() - start_time)
        artifacts_written_total.labels(kind='csv').inc()
        logger.info(f"Table written: {csv_path} ({len(df)} rows)")

        if self.write_parquet:
            parquet_path = self.path(f"{name}.parquet")
            start_time = time.perf_counter()
            atomic_write(
                parquet_path,
                lambda tmp: df.to_parquet(tmp, engine='pyarrow', compression='snappy', index=False),
            )
            artifact_write_duration.observe(time.perf_counter() - start_time)
            artifacts_written_total.labels(kind='parquet').inc()
            logger.info(f"Table written to Parquet: {parquet_path}")
        return csv_path

    def write_text(self, text: str, file_name: str) -> str:
        """Write a text artifact such as summary.txt"""
        text_path = self.path(file_name)

        def write(tmp: str):
            with open(tmp, 'w', encoding='utf-8') as f:
                f.write(text)

        atomic_write(text_path, write)
        artifacts_written_total.labels(kind='summary').inc()
        logger.info(f"Summary written: {text_path}")
        return text_path
