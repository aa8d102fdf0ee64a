#!/usr/bin/env python3
"""
partdist - Main Application Entry Point

Exact cycle-type distributions of uniform random permutations.
"""

import sys
from pathlib import Path

# Add src directory to path for development
if __name__ == "__main__":
    src_path = Path(__file__).parent
    if str(src_path) not in sys.path:
        sys.path.insert(0, str(src_path))


def main() -> None:
    """Main entry point for the command-line application."""
    # Set up logging before anything else
    from src.utils.logging_config import setup_logging, cleanup_old_logs
    import logging

    setup_logging()
    cleanup_old_logs()

    logger = logging.getLogger(__name__)
    logger.info(f"partdist invoked with {sys.argv[1:]}")

    try:
        from src.cli import run
        status = run(sys.argv[1:])
    except Exception:
        logger.exception("Fatal error in application")
        raise

    logger.info(f"Exit status {status}")
    sys.exit(status)


if __name__ == "__main__":
    main()
