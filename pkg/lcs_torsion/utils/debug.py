"""
=========
Debugging
=========

Coloured console logging for long-running computations. Colour is only
used when ``colorama`` is installed (the ``dev`` extra); otherwise the
logger is returned untouched and the root configuration applies.

Classes
=======

    - LevelFormatter: Prefixes each record with the colour of its level.
"""

import logging
from typing import Dict, Optional

try:
    import colorama
except ImportError:
    colorama = None

LOG_FORMAT = "%(levelname)s|%(name)s|%(asctime)s: %(message)s"


########################################################################
class LevelFormatter(logging.Formatter):
    """One cached ``logging.Formatter`` per level, each with its own colour."""

    # ----------------------------------------------------------------------
    def __init__(self, fmt: str = LOG_FORMAT):
        super().__init__(fmt)
        colours = {
            logging.DEBUG: colorama.Fore.GREEN,
            logging.INFO: colorama.Fore.BLUE,
            logging.WARNING: colorama.Fore.YELLOW,
            logging.ERROR: colorama.Fore.RED,
            logging.CRITICAL: colorama.Fore.RED + colorama.Back.WHITE,
        }
        self._by_level: Dict[int, logging.Formatter] = {
            level: logging.Formatter(prefix + fmt) for level, prefix in colours.items()
        }

    # ----------------------------------------------------------------------
    def format(self, record: logging.LogRecord) -> str:
        formatter = self._by_level.get(record.levelno)
        if formatter is None:
            return super().format(record)
        return formatter.format(record)


# ----------------------------------------------------------------------
def styled_logger(logger: logging.Logger, level: Optional[int] = None) -> logging.Logger:
    """
    Attach a :class:`LevelFormatter` handler to ``logger``.

    Parameters
    ----------
    logger : logging.Logger
        A module logger, e.g. ``logging.getLogger("LcsEngine")``.
    level : int, optional
        Level for the logger itself. By default the effective level is
        inherited from the root, so ``--log-level`` still applies.

    Returns
    -------
    logging.Logger
        The same logger.
    """
    if level is not None:
        logger.setLevel(level)
    if colorama is None:
        return logger

    colorama.init(autoreset=True)

    # The handler below replaces the root one for this logger.
    logger.propagate = False
    logger.handlers.clear()

    handler = logging.StreamHandler()
    handler.setFormatter(LevelFormatter())
    logger.addHandler(handler)
    return logger
