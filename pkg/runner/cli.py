"""
Command-line entry point
lpscalar <mode> --config <path> [--override key=value ...] [--output-dir DIR] [--seed N]
"""
import argparse
import logging
import sys
from typing import Dict, List, Optional

from spectral.exceptions import BlowUpError, ConfigurationError, DataError, LPScalarError

from .config import LPSCALAR_LOG_LEVEL
from .run_config import MODES, load_config, parse_override
from .runner import EXIT_CONFIG, EXIT_ERROR, EXIT_RESOLUTION, run

logger = logging.getLogger(__name__)


def configure_logging(level: str = LPSCALAR_LOG_LEVEL):
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='lpscalar',
        description='Pseudo-spectral active scalar simulator and Littlewood-Paley estimate verifier',
    )
    parser.add_argument('mode', choices=MODES, help='run mode')
    parser.add_argument('--config', help='JSON run configuration')
    parser.add_argument(
        '--override', action='append', default=[], metavar='KEY=VALUE',
        help='override a config key after parsing (repeatable; initial.KEY for the initial block)',
    )
    parser.add_argument('--output-dir', help='directory for all artifacts')
    parser.add_argument('--seed', type=int, help='seed for the initial data and the verify suites')
    return parser


def collect_overrides(args: argparse.Namespace) -> Dict[str, object]:
    """Mode, --override pairs, --output-dir and --seed as config overrides"""
    overrides: Dict[str, object] = {'mode': args.mode}
    for text in args.override:
        key, value = parse_override(text)
        overrides[key] = value
    if args.output_dir is not None:
        overrides['output_dir'] = args.output_dir
    if args.seed is not None:
        overrides['initial.seed'] = args.seed
        overrides['seeds'] = [args.seed]
    return overrides


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run, and map failures to exit statuses"""
    args = build_parser().parse_args(argv)
    configure_logging()
    try:
        config = load_config(args.config, collect_overrides(args))
        return run(config)
    except (ConfigurationError, DataError) as e:
        logger.error(f"{e}")
        return EXIT_CONFIG
    except BlowUpError as e:
        logger.error(f"Blow-up: {e}")
        return EXIT_RESOLUTION
    except LPScalarError as e:
        logger.error(f"Run failed: {e}")
        return EXIT_ERROR
    except KeyboardInterrupt:
        logger.info("Run interrupted by user")
        return EXIT_ERROR
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
