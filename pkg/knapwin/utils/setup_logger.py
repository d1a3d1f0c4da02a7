#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Standard libs
import logging
import pathlib
import sys
from typing import Optional, Union

# User-defined libs
from knapwin.utils.raise_exception import raise_exception

# Verbosity levels of the knapwin command: 0 off, 1 warning, 2 info, 3 debug
LOG_LEVELS = {
    0: logging.CRITICAL,
    1: logging.WARNING,
    2: logging.INFO,
    3: logging.DEBUG,
}

SHORT_FORMAT = "knapwin: %(levelname)s: %(message)s"
DETAILED_FORMAT = "%(asctime)s - %(name)s:%(lineno)d - %(levelname)s - %(message)s"
DETAILED_DATE_FORMAT = "%d-%b-%y %H:%M:%S"

# Option validation in pyomo logs at INFO for every ConfigDict we build
_QUIET_LOGGERS = ("pyomo.common.config",)


def setup_logger(
    log_level: int = 2,
    log_to_console: bool = True,
    log_file: Optional[Union[str, pathlib.Path]] = None,
) -> None:
    """
    Configures the root logger for a knapwin run.

    Levels 0 to 2 print one short line per record. Level 3 adds timestamps,
    module names and line numbers so that checkpoint creation, expiry,
    pruning and grid refreshes can be traced back to their source.

    Parameters
    ----------
    log_level : int, default = 2
        0: off; 1: warning; 2: info; 3: debug

    log_to_console : bool, default = True
        If True, records are written to stdout

    log_file : str or pathlib.Path, optional
        New file receiving the records in addition to the console

    Raises
    ------
    ValueError
        If log_level is unsupported or log_file already exists
    """
    if log_level not in LOG_LEVELS:
        raise_exception(
            f"Invalid value for log_level: {log_level}. "
            f"Acceptable values are: {sorted(LOG_LEVELS)}",
            ValueError,
        )

    handlers = []
    if log_to_console:
        handlers.append(logging.StreamHandler(sys.stdout))
    if log_file is not None:
        log_file = pathlib.Path(log_file)
        if log_file.exists():
            raise_exception(
                f"Log file {log_file} already exists; runs never append to an "
                "earlier log.",
                ValueError,
            )
        handlers.append(logging.FileHandler(log_file))
    if not handlers:
        handlers.append(logging.NullHandler())

    detailed = LOG_LEVELS[log_level] == logging.DEBUG
    logging.basicConfig(
        level=LOG_LEVELS[log_level],
        format=DETAILED_FORMAT if detailed else SHORT_FORMAT,
        datefmt=DETAILED_DATE_FORMAT if detailed else None,
        handlers=handlers,
        force=True,
    )

    quiet_level = max(logging.WARNING, LOG_LEVELS[log_level])
    for name in _QUIET_LOGGERS:
        logging.getLogger(name).setLevel(quiet_level)
