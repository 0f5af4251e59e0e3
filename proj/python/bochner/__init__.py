"""Translation-invariant kernels, Hilbertian metrics and their spectral measures."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
