"""Flag-based fault-tolerant parity readout: simulator and shuttling compiler."""

from ._ftpcm import *  # noqa: F401,F403
from ._ftpcm import __doc__  # noqa: F401

__version__ = "0.1.0"
