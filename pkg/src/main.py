"""
Main application entry point.
"""

import sys

from src.cli.app import main as run_cli
from src.config.logging import get_logger

logger = get_logger(__name__)

EXIT_INTERRUPTED = 130


def main() -> None:
    """Console script entry point."""
    try:
        code = run_cli(sys.argv[1:])
    except KeyboardInterrupt:
        logger.info("Interrupted, shutting down")
        code = EXIT_INTERRUPTED
    sys.exit(code)


if __name__ == "__main__":
    main()
