"""Top-level package for scikit-malleable."""

import logging

__author__ = "scikit-malleable developers"
__version__ = '0.1.0'

logging.getLogger(__name__).addHandler(logging.NullHandler())
