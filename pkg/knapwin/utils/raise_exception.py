#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

# Standard libs
import logging
from typing import Type

LOGGER = logging.getLogger(__name__)


def raise_exception(msg: str, exception_type: Type[Exception], **kwargs) -> None:
    """
    Raises an exception with a message and logs the details.

    Parameters
    ----------
    msg : str
        Helpful informative message to be passed with the exception
    exception_type : Type[Exception]
        The exception type to be raised. Any of the classes defined in
        knapwin.utils.errors, or a builtin exception type
    **kwargs
        Additional keyword arguments forwarded to the exception constructor,
        e.g., line_number for MalformedRecordError

    Raises
    ------
    exception_type
        The specified exception with the provided message
    """
    try:
        raise exception_type(msg, **kwargs)
    except exception_type:
        # Capture the stack trace in the log file, if one is configured
        LOGGER.exception(msg)
        raise
