import logging
import sys
from concurrent.futures import ProcessPoolExecutor

_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(debug: bool) -> None:
    """Configure logging based on debug flag. Results go to stdout, so logs stay on stderr."""
    if debug:
        logging.basicConfig(level=logging.DEBUG, format=_FORMAT, stream=sys.stderr)


def debug_enabled() -> bool:
    root = logging.getLogger()
    return bool(root.handlers) and root.isEnabledFor(logging.DEBUG)


def worker_pool(jobs: int) -> ProcessPoolExecutor:
    """Process pool whose workers log like the parent; spawned workers start unconfigured."""
    return ProcessPoolExecutor(max_workers=jobs, initializer=setup_logging, initargs=(debug_enabled(),))
