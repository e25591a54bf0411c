import sys
import logging
from typing import Union

from rich.logging import RichHandler
from rich.console import Console


def setup_logging(logToStdout: bool = False, level: Union[int, str] = logging.WARNING):
    """
    Install a rich handler on the root logger.

    Reports are written to stdout, so the command line keeps logs on stderr
    (logToStdout=False). Library callers that want log lines next to their own
    console output can pass logToStdout=True.
    """

    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    if logToStdout:
        logging.basicConfig(
            level=level,
            format='[%(filename)s:%(lineno)d] %(message)s',
            handlers=[RichHandler(rich_tracebacks=True, show_path=False, markup=True)],
            force=True
        )
    else:

        stderr_console = Console(file=sys.stderr)

        logging.basicConfig(
            level=level,
            format='[%(filename)s:%(lineno)d] %(message)s',
            handlers=[RichHandler(rich_tracebacks=True, show_path=False, markup=True, console=stderr_console)],
            force=True
        )
