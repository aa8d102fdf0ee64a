# partdist
"""
Exact cycle-type distributions of uniform random permutations.

Modules:
- partition_distributions: partitions, exact pmf and moments, MGF, X expectations, sampler
- core: Verification controller and chunked job execution
- utils: Configuration, logging, validation and platform helpers
- cli: Command-line interface
"""

from .utils.env_config import config

__version__ = config.APP_VERSION
__author__ = config.APP_AUTHOR
