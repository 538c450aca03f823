"""
Simulation Runner
Dispatches a validated RunConfig to the solver, the norm report or a verify suite, and writes artifacts
"""
import logging
import math
import time
from typing import Dict, List

import pandas as pd

from dynamics.active_scalar import velocity_field
from dynamics.integrator import integrate
from dynamics.model import SimState
from monitoring.metrics import (
    artifacts_written_total,
    critical_besov_norm,
    rk4_step_duration,
    rk4_steps_total,
    simulated_time,
    start_metrics_server,
    start_system_metrics_collection,
    stop_system_metrics_collection,
    tail_fraction,
    time_step,
    verify_cases_total,
    write_metrics_file,
)
from spectral.exceptions import BlowUpError
from spectral.function_spaces import BesovParams, PairSampler, besov_norm, log_lipschitz_norm, lp_norm
from spectral.grid import Grid2D, SpectralField, forward_transform, inverse_transform, l2_norm_spectral
from spectral.littlewood_paley import default_family
from verify.commutator import commutator_suite
from verify.embedding import bernstein_suite, embedding_suite
from verify.models import VerifyReport
from verify.scaling import scaling_experiment

from .config import LPSCALAR_METRICS_PORT, SYSTEM_METRICS_INTERVAL
from .initial import generate_initial
from .results_writer import ResultsWriter
from .run_config import RunConfig
from .snapshot import SnapshotMeta, read_snapshot, write_snapshot

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_RESOLUTION = 3

BESOV_COLUMN = 'besov(1+beta,2,1)'
TIMESERIES_COLUMNS = ['t', 'l2', 'linf', BESOV_COLUMN, 'll0_u', 'dt', 'tail_fraction']


class SimulationRunner:
    """Runs one configuration: simulate, norms, a verify suite or the scaling experiment"""

    def __init__(self, config: RunConfig):
        """
        Initialize the runner

        Args:
            config: Validated run configuration
        """
        self.config = config
        self.family = default_family()
        self.writer = ResultsWriter(config.output_dir, write_parquet=config.write_parquet)
        self.critical = BesovParams(s=1.0 + config.beta, p=2.0, q=1.0)

        logger.info(f"Simulation runner initialized - mode: {config.mode}, output: {config.output_dir}")

    def _initial_field(self, grid: Grid2D) -> SpectralField:
        initial = self.config.initial
        return generate_initial(initial.kind, initial, initial.seed, grid)

    def _diagnostics(self, state: SimState, dt: float) -> Dict[str, float]:
        """One time-series row"""
        theta = state.theta
        physical = inverse_transform(theta)
        besov = besov_norm(theta, self.critical, self.family).total
        sampler = PairSampler(self.config.initial.seed, self.config.pair_budget)
        ll0_u = log_lipschitz_norm(velocity_field(theta, self.config.beta), 0.0, sampler)
        critical_besov_norm.set(besov)
        return {
            't': state.t,
            'l2': l2_norm_spectral(theta),
            'linf': lp_norm(physical, math.inf),
            BESOV_COLUMN: besov,
            'll0_u': ll0_u,
            'dt': dt,
            'tail_fraction': state.tail_fraction,
        }

    def _save_snapshot(self, state: SimState, file_name: str):
        write_snapshot(
            inverse_transform(state.theta),
            SnapshotMeta(beta=self.config.beta, time=state.t),
            self.writer.path(file_name),
        )
        artifacts_written_total.labels(kind='snapshot').inc()

    def simulate(self) -> int:
        """
        Evolve θ₀ to t_end

        Writes snapshot_<step>.lps and a time-series row every save_every steps,
        then snapshot_final.lps and timeseries.csv. Outputs written before a
        blow-up or resolution exhaustion are kept.

        Returns:
            int: EXIT_OK, or EXIT_RESOLUTION when the run stopped early
        """
        cfg = self.config
        grid = Grid2D(cfg.n)
        state = SimState(self._initial_field(grid), 0.0, cfg.model_params())
        rows: List[Dict[str, float]] = [self._diagnostics(state, 0.0)]
        self._save_snapshot(state, 'snapshot_0.lps')
        status = EXIT_OK

        steps = integrate(state, cfg.t_end, cfg.max_steps)
        try:
            while True:
                start_time = time.perf_counter()
                try:
                    state, dt = next(steps)
                except StopIteration:
                    break
                rk4_step_duration.observe(time.perf_counter() - start_time)
                rk4_steps_total.inc()
                simulated_time.set(state.t)
                time_step.set(dt)
                tail_fraction.set(state.tail_fraction)
                if state.step % cfg.save_every == 0:
                    rows.append(self._diagnostics(state, dt))
                    self._save_snapshot(state, f'snapshot_{state.step}.lps')
            if state.resolution_exhausted:
                logger.error(f"Resolution exhausted at t = {state.t:.6g}; outputs up to step {state.step} kept")
                status = EXIT_RESOLUTION
            elif state.t < cfg.t_end:
                logger.warning(f"Stopped at t = {state.t:.6g} before t_end = {cfg.t_end:g} (max_steps)")
        except BlowUpError as e:
            logger.error(f"Blow-up: {e}")
            status = EXIT_RESOLUTION
        finally:
            self._save_snapshot(state, 'snapshot_final.lps')
            self.writer.write_table(pd.DataFrame(rows, columns=TIMESERIES_COLUMNS), 'timeseries')

        logger.info(f"Simulation finished: {state.step} steps, t = {state.t:.6g}")
        return status

    def norms(self) -> int:
        """Besov block report of a snapshot, or of the configured initial data"""
        cfg = self.config
        if cfg.snapshot is not None:
            physical, meta = read_snapshot(cfg.snapshot)
            theta = forward_transform(physical)
            beta = meta.beta
            logger.info(f"Norms of {cfg.snapshot} (t = {meta.time:.6g}, beta = {beta:g})")
        else:
            theta = self._initial_field(Grid2D(cfg.n))
            physical = inverse_transform(theta)
            beta = cfg.beta
        prm = BesovParams(s=1.0 + beta if cfg.s is None else cfg.s, p=cfg.p, q=cfg.q)
        report = besov_norm(theta, prm, self.family)

        frame = pd.DataFrame(report.per_block, columns=['j', 'value'])
        self.writer.write_table(frame, 'norms')
        lines = [
            f"besov(s={prm.s:g}, p={prm.p:g}, q={prm.q:g}): {report.total:.17g}",
            f"l2: {lp_norm(physical, 2.0):.17g}",
            f"linf: {lp_norm(physical, math.inf):.17g}",
        ]
        self.writer.write_text("\n".join(lines) + "\n", 'summary.txt')
        return EXIT_OK

    def _write_report(self, report: VerifyReport):
        verify_cases_total.labels(suite=report.suite, outcome='ratio').inc(len(report.records))
        verify_cases_total.labels(suite=report.suite, outcome='degenerate').inc(len(report.degenerate))
        verify_cases_total.labels(suite=report.suite, outcome='flagged').inc(len(report.flagged))
        self.writer.write_table(report.to_frame(), 'report')
        self.writer.write_text(report.summary(), 'summary.txt')

    def verify(self) -> int:
        suites = {
            'verify-commutator': commutator_suite,
            'verify-embedding': embedding_suite,
            'verify-bernstein': bernstein_suite,
        }
        report = suites[self.config.mode](self.config.suite_config(), self.family)
        self._write_report(report)
        return EXIT_OK

    def scaling(self) -> int:
        cfg = self.config
        theta0 = self._initial_field(Grid2D(cfg.n))
        report = scaling_experiment(
            theta0,
            cfg.beta,
            cfg.lambdas,
            cfl=cfg.cfl,
            t_max=cfg.t_max,
            max_steps=cfg.max_steps,
            tail_threshold=cfg.tail_threshold,
            fam=self.family,
        )
        self._write_report(report)
        return EXIT_OK

    def run(self) -> int:
        """Run the configured mode; metrics are written to metrics.prom in every case"""
        start_metrics_server(LPSCALAR_METRICS_PORT)
        start_system_metrics_collection(interval=SYSTEM_METRICS_INTERVAL)
        try:
            if self.config.mode == 'simulate':
                return self.simulate()
            if self.config.mode == 'norms':
                return self.norms()
            if self.config.mode == 'scaling':
                return self.scaling()
            return self.verify()
        finally:
            stop_system_metrics_collection()
            write_metrics_file(self.writer.path('metrics.prom'))


def run(config: RunConfig) -> int:
    """Run one configuration and return its exit status"""
    return SimulationRunner(config).run()

