'''
Configuration module
Default parameters of the verification run and their environment overrides
'''

import os
from dataclasses import dataclass, field, replace
from typing import Tuple

from sympy import nextprime

TOOL_VERSION = '1.0.0'
REPORT_SCHEMA = 1

DEFAULT_SEED = 7
DEFAULT_ATTEMPTS = 40
DEFAULT_TRUNCATION = 120
DEFAULT_WORKERS = 1
COEFFICIENT_BOX = 20          # line coefficients drawn from [-20, 20]
PATTERN_PRIMES_PER_LINE = 4   # extra primes tried on one line before giving up on it
SPECIALIZATION_POINTS = 20
DEFAULT_CACHE_DIR = '.orthoforms-cache'

CACHE_DIR_ENV = 'ORTHOFORMS_CACHE_DIR'
WORKERS_ENV = 'ORTHOFORMS_WORKERS'
SEED_ENV = 'ORTHOFORMS_SEED'


def first_primes_above(bound: int, count: int) -> Tuple[int, ...]:
    primes = []
    p = bound
    while len(primes) < count:
        p = nextprime(p)
        primes.append(int(p))
    return tuple(primes)


DEFAULT_PRIMES = first_primes_above(10_000, 40)


@dataclass(frozen=True)
class Settings:
    '''Parameters of one verification run'''
    seed: int = DEFAULT_SEED
    attempts: int = DEFAULT_ATTEMPTS
    truncation: int = DEFAULT_TRUNCATION
    workers: int = DEFAULT_WORKERS
    cache_dir: str = DEFAULT_CACHE_DIR
    use_cache: bool = True
    allow_inconclusive: bool = False
    timings: bool = False
    primes: Tuple[int, ...] = field(default=DEFAULT_PRIMES)


def load_settings(**overrides) -> Settings:
    '''Defaults, then environment variables, then explicit (non-None) overrides'''
    settings = Settings(
        seed=int(os.environ.get(SEED_ENV, DEFAULT_SEED)),
        workers=int(os.environ.get(WORKERS_ENV, DEFAULT_WORKERS)),
        cache_dir=os.environ.get(CACHE_DIR_ENV, DEFAULT_CACHE_DIR),
    )
    overrides = {k: v for k, v in overrides.items() if v is not None}
    settings = replace(settings, **overrides)
    if settings.attempts < 1:
        raise ValueError('At least one attempt is required')
    if settings.workers < 1:
        raise ValueError('At least one worker is required')
    return settings
