"""
Defaults, budgets and logging setup
"""
import dataclasses
import logging
from fractions import Fraction

VERSION = '0.1.0'
CACHE_SIZE = 300
CELL_CACHE_SIZE = 4096
DEFAULT_HEIGHT = 24
LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


@dataclasses.dataclass(frozen=True)
class Budget:
    """
    Limits of a Vinberg run
    >>> Budget(max_roots=8).max_priority
    Fraction(1000000, 1)
    """
    max_roots: int = 64
    max_priority: Fraction = Fraction(10**6)

    def __post_init__(self):
        if self.max_roots < 1:
            raise ValueError(f'max_roots must be positive: {self.max_roots}')
        object.__setattr__(self, 'max_priority', Fraction(self.max_priority))
        if self.max_priority < 0:
            raise ValueError(f'max_priority must be non-negative: {self.max_priority}')

    def doubled(self):
        return Budget(2 * self.max_roots, 2 * self.max_priority)

    def as_dict(self):
        return {'max_roots': self.max_roots, 'max_priority': str(self.max_priority)}


DEFAULT_BUDGET = Budget()


def configure_logging(level=logging.WARNING):
    """
    Route package logs to stderr
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    logger = logging.getLogger('outermost')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger
